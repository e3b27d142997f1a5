#ifndef SUBFIELDS_FIELD_SEARCH_HPP
#define SUBFIELDS_FIELD_SEARCH_HPP

/**
 * @file field_search.hpp
 * @brief Top-level drivers: the lattice test gating LLL calls, the field
 *        search loop, the index-2 final adjustment, starting-group
 *        construction with discriminant square-class refinement,
 *        short-coset counting, and the group-simulation harness that
 *        runs the same control flow against a block-system oracle.
 */

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "subfields/cycle_scan.hpp"
#include "subfields/group_specs.hpp"
#include "subfields/lll.hpp"
#include "subfields/subfield_records.hpp"
#include "subfields/wreath_meet.hpp"

namespace subfields {

// ---------------------------------------------------------------------------
// Known-subfield bookkeeping shared by the real driver and the simulator.

struct KnownSubfieldEntry {
    BlockSystem blocks;           // on splitting-side root indices
    std::set<std::size_t> delta;  // p-adic factor indices in the block of r1
    bool principal = false;
    std::optional<SubfieldRecord> record;
};

struct KnownSubfieldTable {
    std::vector<long> factor_degrees;  // factor 0 is the chosen linear one
    std::vector<KnownSubfieldEntry> entries;
    std::set<long> possible_block_sizes;
    Int order_divisor = 1;
    bool full_set_principal = false;  // the one-block system proven principal

    long degree() const {
        long n = 0;
        for (long d : factor_degrees) n += d;
        return n;
    }
    long delta_size(const std::set<std::size_t>& delta) const {
        long s = 0;
        for (std::size_t i : delta) s += factor_degrees[i];
        return s;
    }
    bool knows_blocks(const BlockSystem& b) const {
        for (const auto& e : entries)
            if (e.blocks == b) return true;
        return false;
    }
};

enum class LatticeVerdict { kDoFactor, kSkipFactor };

namespace detail {

inline bool is_prime_long(long v) {
    if (v < 2) return false;
    for (long d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

inline bool subset_sum_exact(const std::vector<long>& values, long target) {
    if (target < 0) return false;
    std::vector<char> reach(target + 1, 0);
    reach[0] = 1;
    for (long v : values) {
        if (v > target) continue;
        for (long s = target; s >= v; --s)
            if (reach[s - v]) reach[s] = 1;
    }
    return reach[target] != 0;
}

}  // namespace detail

struct LatticeTestReport {
    LatticeVerdict verdict = LatticeVerdict::kDoFactor;
    bool pq_rule_engaged = false;  // a kq/pq deletion or skip fired
};

/**
 * The thirteen-step lattice test: decides whether the factor with index j
 * can still contribute a new principal block system.
 */
inline LatticeTestReport lattice_test(const KnownSubfieldTable& table, std::size_t j) {
    if (j == 0 || j >= table.factor_degrees.size())
        throw std::invalid_argument("lattice_test: bad factor index");
    LatticeTestReport report;
    const std::size_t m = table.factor_degrees.size();

    // 1-2: smallest known first block containing j, else everything.
    std::set<std::size_t> delta;
    bool delta_is_full = true;
    bool delta_principal = false;
    long n0 = 0;
    for (const auto& e : table.entries) {
        if (!e.delta.count(j)) continue;
        long size = table.delta_size(e.delta);
        if (delta_is_full || size < n0) {
            delta = e.delta;
            n0 = size;
            delta_is_full = false;
            delta_principal = e.principal;
        }
    }
    if (delta_is_full) {
        for (std::size_t i = 0; i < m; ++i) delta.insert(i);
        n0 = table.degree();
        delta_principal = table.full_set_principal;
    }

    // 4: known refinements of delta.
    struct Refinement {
        long block_size;
        bool principal;
    };
    std::vector<Refinement> refinements;
    for (const auto& e : table.entries) {
        if (e.delta == delta) continue;
        bool subset = true;
        for (std::size_t i : e.delta)
            if (!delta.count(i)) {
                subset = false;
                break;
            }
        if (subset) refinements.push_back({table.delta_size(e.delta), e.principal});
    }

    // 5: the degree-4 rule.
    if (n0 == 4 && delta_principal && !refinements.empty()) {
        report.verdict = LatticeVerdict::kSkipFactor;
        return report;
    }
    // 6: the degree-8 rule.
    if (n0 == 8 && delta_principal) {
        bool has2 = false, has4p = false;
        for (const auto& r : refinements) {
            if (r.block_size == 2) has2 = true;
            if (r.block_size == 4 && r.principal) has4p = true;
        }
        if (has2 && has4p) {
            report.verdict = LatticeVerdict::kSkipFactor;
            return report;
        }
    }

    // 7: candidate sizes = possible sizes that properly divide n0.
    std::set<long> s_set;
    for (long k : table.possible_block_sizes)
        if (k < n0 && n0 % k == 0) s_set.insert(k);

    // 8: sizes must be 1 + deg f_j + a sum of other factor degrees in delta.
    {
        const long dj = table.factor_degrees[j];
        std::vector<long> others;
        for (std::size_t i : delta)
            if (i != 0 && i != j) others.push_back(table.factor_degrees[i]);
        for (auto it = s_set.begin(); it != s_set.end();) {
            if (!detail::subset_sum_exact(others, *it - 1 - dj))
                it = s_set.erase(it);
            else
                ++it;
        }
    }

    // 9: intersection-size constraint against each known refinement.
    {
        const long dj = table.factor_degrees[j];
        for (const auto& r : refinements) {
            for (auto it = s_set.begin(); it != s_set.end();) {
                if ((*it - dj) * (n0 / r.block_size) < *it)
                    it = s_set.erase(it);
                else
                    ++it;
            }
        }
    }

    // 10: n0 = k*q with prime q > k and a known size-q refinement.
    for (long q = 2; q <= n0; ++q) {
        if (n0 % q != 0 || !detail::is_prime_long(q) || q * q <= n0) continue;
        for (const auto& r : refinements)
            if (r.block_size == q && s_set.erase(q)) report.pq_rule_engaged = true;
    }

    // 11: n0 an odd prime square.
    {
        long root = 0;
        while ((root + 1) * (root + 1) <= n0) ++root;
        if (root * root == n0 && detail::is_prime_long(root) && root % 2 == 1 &&
            refinements.size() >= 2) {
            if (delta_principal) {
                report.verdict = LatticeVerdict::kSkipFactor;
                return report;
            }
            std::set<long> degrees;
            for (std::size_t i : delta)
                if (i != 0) degrees.insert(table.factor_degrees[i]);
            if (degrees.size() > 1) {
                report.verdict = LatticeVerdict::kSkipFactor;
                return report;
            }
        }
    }

    // 12: n0 = p*q with primes p < q.
    {
        long p = 0, q = 0;
        for (long d = 2; d * d <= n0; ++d) {
            if (n0 % d == 0 && detail::is_prime_long(d) && detail::is_prime_long(n0 / d) &&
                d < n0 / d) {
                p = d;
                q = n0 / d;
                break;
            }
        }
        if (p > 0) {
            bool has_p_refinement = false;
            for (const auto& r : refinements)
                if (r.block_size == p) has_p_refinement = true;
            if (q % p != 1 && has_p_refinement && s_set.erase(p))
                report.pq_rule_engaged = true;
            if (n0 != 21 && n0 != 55 && has_p_refinement) {
                bool irregular = false;
                for (std::size_t i : delta)
                    if (table.factor_degrees[i] > 1) irregular = true;
                if ((delta_principal || irregular) && s_set.erase(p))
                    report.pq_rule_engaged = true;
            }
            if ((n0 == 21 || n0 == 55) && refinements.size() >= 2 && delta_principal) {
                report.pq_rule_engaged = true;
                report.verdict = LatticeVerdict::kSkipFactor;
                return report;
            }
        }
    }

    // 13: verdict.
    report.verdict = s_set.empty() ? LatticeVerdict::kSkipFactor : LatticeVerdict::kDoFactor;
    return report;
}

// ---------------------------------------------------------------------------
// Field search.

struct SearchConfig {
    InspectionConfig inspection;
    PrincipalSubfieldConfig principal;
    long index2_budget = 1000000;
    long wreath_node_budget = 2000000;
    std::uint64_t seed = 0;
};

struct LllCallInfo {
    std::size_t factor_index;
    long factor_degree;
    LatticeVerdict verdict;
    bool produced_new_system = false;
    PrincipalSubfieldTrace precision_trace;
};

struct FieldSearchResult {
    bool no_subfields = false;
    std::optional<InspectionResult> inspection;
    std::vector<SubfieldRecord> records;  // one per nontrivial block system of `group`
    PermGroup group;
    long lll_calls = 0;
    std::vector<LllCallInfo> trace;
    KnownSubfieldTable table;
    std::optional<SplittingContext> ctx;
    std::optional<ModFactorization> factorization;  // mod the LLL prime, reordered
};

/// Budget or precision abort with the partial table attached.
struct FieldSearchAbort : std::runtime_error {
    KnownSubfieldTable partial_table;
    FieldSearchAbort(const std::string& message, KnownSubfieldTable table)
        : std::runtime_error(message), partial_table(std::move(table)) {}
};

namespace detail {

/// Factor-index set whose roots share the block of r1 (through h).
inline std::set<std::size_t> delta_for_record(const SubfieldRecord& rec,
                                              const ModFactorization& base,
                                              LiftedFactorCache& cache, long& pr_l) {
    while (true) {
        const ModFactorization& lifted = cache.at(base, pr_l);
        const Int m = lifted.modulus();
        const ModPoly& f1 = lifted.factors[0].first;
        const Int r1 = mod(-f1[0], m);
        std::set<std::size_t> delta;
        for (std::size_t i = 0; i < lifted.factors.size(); ++i)
            if (embedding_constant_on_factor(rec.h, lifted.factors[i].first, r1))
                delta.insert(i);
        long total = 0;
        for (std::size_t i : delta) total += lifted.factors[i].first.degree();
        if (delta.count(0) && total == rec.blocks.block_size()) return delta;
        pr_l *= 2;  // a coincidental congruence at low precision; retry sharper
        if (pr_l > (1 << 15))
            throw std::runtime_error("delta_for_record: precision ceiling exceeded");
    }
}

inline PermGroup group_from_systems(const std::vector<BlockSystem>& systems, int n,
                                    bool even_known, long node_budget) {
    PermGroup g = systems.empty() ? PermGroup::symmetric(n)
                                  : wreath_intersection(systems, node_budget);
    if (even_known) g = intersect_with_alternating(g);
    return g;
}

}  // namespace detail

/**
 * Final adjustment when ord(G) = 2 * divisor: look for the one missing
 * Galois-generating subfield among the transitive index-2 subgroups.
 * Returns the confirmed record and its system, or nothing.
 */
inline std::optional<std::pair<SubfieldRecord, BlockSystem>> final_adjust(
    const PermGroup& g, const KnownSubfieldTable& table, SplittingContext& ctx,
    const SearchConfig& config = {}) {
    const int n = g.degree();
    auto principal_set = [&](const PermGroup& grp) {
        std::set<BlockSystem> out;
        for (int j = 1; j < n; ++j) out.insert(principal_block_system(grp, j));
        return out;
    };
    std::set<BlockSystem> g_principal = principal_set(g);
    std::set<BlockSystem> g_systems;
    for (const auto& b : all_block_systems(g)) g_systems.insert(b);

    for (const auto& h : index2_transitive_subgroups(g, config.index2_budget)) {
        std::set<BlockSystem> h_principal = principal_set(h);
        if (h_principal == g_principal) continue;  // same principal partitions

        // A subgroup must keep every proven-principal subfield principal.
        bool ruled_out = false;
        for (const auto& e : table.entries) {
            if (!e.principal || e.blocks.is_trivial()) continue;
            bool still_principal = false;
            for (int x : e.blocks.block_containing(0)) {
                if (x == 0) continue;
                if (principal_block_system(h, x) == e.blocks) {
                    still_principal = true;
                    break;
                }
            }
            if (!still_principal) {
                ruled_out = true;
                break;
            }
        }
        if (ruled_out) continue;

        for (const auto& cand : h_principal) {
            if (cand.is_trivial() || g_systems.count(cand)) continue;
            auto rec = confirm_block_system(ctx, cand, config.principal.confirm);
            if (rec.has_value()) {
                rec->principal_proven = true;
                return std::make_pair(*rec, cand);
            }
            break;  // one candidate per subgroup, as in the source algorithm
        }
    }
    return std::nullopt;
}

/**
 * The complete field search: prime inspection, splitting context, the
 * per-factor loop gated by the lattice test, wreath-intersection updates,
 * divisor-based termination and the final adjustment, then records for
 * every nontrivial block system of the resulting group.
 */
inline FieldSearchResult field_search(const IntPoly& f, const SearchConfig& config = {}) {
    FieldSearchResult result;
    const long n = f.degree();
    if (n < 2) throw std::invalid_argument("field_search: degree must be >= 2");

    InspectionConfig icfg = config.inspection;
    icfg.seed = config.seed;
    result.inspection = prime_inspection(f, icfg);
    if (!result.inspection.has_value()) {
        result.no_subfields = true;
        result.group = PermGroup::symmetric(static_cast<int>(n));
        return result;
    }
    const InspectionResult& insp = *result.inspection;
    const bool even_known = insp.group_is_even == Evenness::kYes;
    const Int divisor = insp.order_divisor_found;

    SplittingContext ctx = build_splitting_context(
        f, insp.splitting_prime, default_initial_precision(f, insp.splitting_prime), config.seed);

    // Factorization at the LLL prime, reordered: chosen linear factor first,
    // then ascending (degree, canonical position).
    ModFactorization base = mod_factor(f, insp.lll_prime, config.seed);
    {
        std::size_t linear = 0;
        while (base.factors[linear].first.degree() != 1) ++linear;
        std::rotate(base.factors.begin(), base.factors.begin() + linear,
                    base.factors.begin() + linear + 1);
    }
    KnownSubfieldTable& table = result.table;
    for (const auto& [g, e] : base.factors) table.factor_degrees.push_back(g.degree());
    table.possible_block_sizes = insp.possible_block_sizes;
    table.order_divisor = divisor;

    LiftedFactorCache cache;
    std::vector<BlockSystem> known_systems;  // nontrivial only
    std::optional<PermGroup> group;

    auto add_entry = [&](const SubfieldRecord& rec, bool principal, long& pr_l) {
        if (rec.blocks.num_blocks() <= 1) {
            table.full_set_principal = table.full_set_principal || principal;
            return false;
        }
        for (auto& e : table.entries)
            if (e.blocks == rec.blocks) {
                e.principal = e.principal || principal;
                return false;
            }
        KnownSubfieldEntry entry;
        entry.blocks = rec.blocks;
        entry.delta = detail::delta_for_record(rec, base, cache, pr_l);
        entry.principal = principal;
        entry.record = rec;
        table.entries.push_back(std::move(entry));
        known_systems.push_back(rec.blocks);
        return true;
    };

    long pr_l_for_delta = initial_lll_precision(f, insp.lll_prime);
    bool done = false;
    try {
        for (std::size_t j = 1; j < base.factors.size() && !done; ++j) {
            LllCallInfo info;
            info.factor_index = j;
            info.factor_degree = base.factors[j].first.degree();
            LatticeTestReport lt = lattice_test(table, j);
            info.verdict = lt.verdict;
            if (lt.verdict == LatticeVerdict::kSkipFactor) {
                result.trace.push_back(std::move(info));
                continue;
            }
            SubfieldRecord rec = principal_subfield(f, ctx, base, 0, j, cache, config.principal,
                                                    &info.precision_trace);
            ++result.lll_calls;
            bool added = add_entry(rec, /*principal=*/true, pr_l_for_delta);
            info.produced_new_system = added;
            result.trace.push_back(std::move(info));
            if (!added) continue;

            group = detail::group_from_systems(known_systems, static_cast<int>(n), even_known,
                                               config.wreath_node_budget);

            // Adopt any principal systems of G that are not known yet.
            for (int x = 1; x < n; ++x) {
                BlockSystem cand = principal_block_system(*group, x);
                if (cand.is_trivial() || table.knows_blocks(cand)) continue;
                auto extra = confirm_block_system(ctx, cand, config.principal.confirm);
                if (!extra.has_value())
                    throw std::runtime_error("field_search: group block system failed confirmation");
                add_entry(*extra, /*principal=*/false, pr_l_for_delta);
            }

            if (group->order() == divisor) {
                done = true;
            } else if (group->order() == 2 * divisor) {
                auto missing = final_adjust(*group, table, ctx, config);
                if (missing.has_value()) {
                    add_entry(missing->first, /*principal=*/true, pr_l_for_delta);
                    group = detail::group_from_systems(known_systems, static_cast<int>(n), even_known,
                                                       config.wreath_node_budget);
                }
                done = true;
            }
        }

        result.group = group.has_value()
                           ? *group
                           : (even_known ? PermGroup::alternating(static_cast<int>(n))
                                         : PermGroup::symmetric(static_cast<int>(n)));

        // Records for every nontrivial block system of the final group.
        if (group.has_value()) {
            for (const auto& b : all_block_systems(*group)) {
                if (table.knows_blocks(b)) continue;
                auto rec = confirm_block_system(ctx, b, config.principal.confirm);
                if (!rec.has_value())
                    throw std::runtime_error("field_search: final block system failed confirmation");
                add_entry(*rec, /*principal=*/false, pr_l_for_delta);
            }
            for (const auto& e : table.entries)
                if (!e.blocks.is_trivial()) result.records.push_back(*e.record);
            std::sort(result.records.begin(), result.records.end(),
                      [](const SubfieldRecord& a, const SubfieldRecord& b) {
                          if (a.blocks.num_blocks() != b.blocks.num_blocks())
                              return a.blocks.num_blocks() < b.blocks.num_blocks();
                          return a.blocks < b.blocks;
                      });
        }
    } catch (const std::runtime_error& e) {
        throw FieldSearchAbort(e.what(), table);  // diagnostics keep the partial table
    }
    result.no_subfields = result.records.empty();
    result.ctx = std::move(ctx);
    result.factorization = std::move(base);
    return result;
}

// ---------------------------------------------------------------------------
// Starting group (steps before any descent engine).

struct SquareClassRefinement {
    std::vector<std::size_t> subset;  // indices into the record list
    Int order_before, order_after;
};

struct DescentPlanItem {
    long subfield_degree;
    Int projected_order;   // order of the block action of the refined group
    Int divisor_bound;     // the global divisor, for gap inspection
};

struct StartingGroupResult {
    FieldSearchResult search;
    PermGroup initial_group;
    PermGroup refined_group;
    std::vector<SquareClassRefinement> refinements;
    std::vector<DescentPlanItem> descent_plan;
    bool relative_disc_trigger = false;  // unique maximal subfield, [L:K] > 2
    long relative_disc_subfield_degree = 0;
};

/**
 * Starting group: the wreath intersection from the field search refined
 * by discriminant square classes.  For every subset of subfields whose
 * discriminant product is a rational square, the product of block-action
 * signs is even on the Galois group; the group is cut accordingly.
 */
inline StartingGroupResult starting_group(const IntPoly& f, const SearchConfig& config = {}) {
    StartingGroupResult out;
    out.search = field_search(f, config);
    out.initial_group = out.search.group;
    PermGroup g = out.search.group;

    const auto& records = out.search.records;
    std::vector<Int> discs;
    for (const auto& rec : records) discs.push_back(discriminant(rec.g));

    // Kernel vectors of the square-class matrix, found by greedy pivoting
    // with exact perfect-square tests on products.
    std::vector<std::size_t> pivots;
    std::vector<std::vector<std::size_t>> kernel_vectors;
    for (std::size_t i = 0; i < discs.size(); ++i) {
        bool dependent = false;
        for (std::size_t mask = 0; mask < (1u << pivots.size()); ++mask) {
            Int prod = discs[i];
            std::vector<std::size_t> subset{i};
            for (std::size_t t = 0; t < pivots.size(); ++t)
                if ((mask >> t) & 1) {
                    prod *= discs[pivots[t]];
                    subset.push_back(pivots[t]);
                }
            if (is_perfect_square(prod)) {
                kernel_vectors.push_back(std::move(subset));
                dependent = true;
                break;
            }
        }
        if (!dependent) pivots.push_back(i);
    }

    for (const auto& subset : kernel_vectors) {
        SquareClassRefinement ref;
        ref.subset = subset;
        ref.order_before = g.order();
        auto chi = [&](const Permutation& p) {
            int sign = 1;
            for (std::size_t i : subset) sign *= block_action_sign(p, records[i].blocks);
            return sign;
        };
        g = kernel_of_character(g, chi);
        ref.order_after = g.order();
        out.refinements.push_back(std::move(ref));
    }
    out.refined_group = g;

    // Descent plan for the out-of-scope downstream engine: ascending
    // subfield degrees with the projected block-action orders.
    std::vector<std::size_t> order_idx(records.size());
    for (std::size_t i = 0; i < order_idx.size(); ++i) order_idx[i] = i;
    std::sort(order_idx.begin(), order_idx.end(), [&](std::size_t a, std::size_t b) {
        return records[a].degree() < records[b].degree();
    });
    for (std::size_t i : order_idx) {
        std::vector<Permutation> proj;
        for (const auto& s : g.generators()) proj.push_back(block_action(s, records[i].blocks));
        PermGroup action(records[i].blocks.num_blocks(), std::move(proj));
        DescentPlanItem item;
        item.subfield_degree = records[i].degree();
        item.projected_order = action.order();
        item.divisor_bound = out.search.table.order_divisor;
        out.descent_plan.push_back(std::move(item));
    }

    // Relative-discriminant construction trigger: unique maximal subfield.
    std::vector<std::size_t> maximal;
    for (std::size_t i = 0; i < records.size(); ++i) {
        bool is_maximal = true;
        for (std::size_t j = 0; j < records.size() && is_maximal; ++j)
            if (j != i && records[j].blocks.refines(records[i].blocks) &&
                !(records[j].blocks == records[i].blocks))
                is_maximal = false;
        if (is_maximal && !records[i].blocks.is_trivial()) maximal.push_back(i);
    }
    if (maximal.size() == 1) {
        long m = records[maximal[0]].degree();
        if (f.degree() / m > 2) {
            out.relative_disc_trigger = true;
            out.relative_disc_subfield_degree = m;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Short cosets.

/**
 * Number of partitions of {1..n} into blocks of size k preserved by
 * sigma, by direct enumeration (exact for n <= 12).
 */
inline long count_short_cosets(const Permutation& sigma, long k) {
    const int n = sigma.degree();
    if (k <= 0 || n % k != 0) throw std::invalid_argument("count_short_cosets: k must divide n");
    std::vector<int> assignment(n, -1);
    long count = 0;
    std::function<void(int)> recurse = [&](int next_block) {
        int first = -1;
        for (int i = 0; i < n; ++i)
            if (assignment[i] < 0) {
                first = i;
                break;
            }
        if (first < 0) {
            // complete: check invariance
            BlockSystem b(n, assignment);
            if (b.invariant_under(sigma)) ++count;
            return;
        }
        // choose k-1 partners for `first` among the unassigned
        std::vector<int> free;
        for (int i = first + 1; i < n; ++i)
            if (assignment[i] < 0) free.push_back(i);
        std::vector<int> pick(k - 1);
        std::function<void(std::size_t, long)> choose = [&](std::size_t start, long depth) {
            if (depth == k - 1) {
                assignment[first] = next_block;
                for (int x : pick) assignment[x] = next_block;
                recurse(next_block + 1);
                assignment[first] = -1;
                for (int x : pick) assignment[x] = -1;
                return;
            }
            for (std::size_t t = start; t < free.size(); ++t) {
                pick[depth] = free[t];
                choose(t + 1, depth + 1);
            }
        };
        if (k == 1) {
            assignment[first] = next_block;
            recurse(next_block + 1);
            assignment[first] = -1;
        } else {
            choose(0, 0);
        }
    };
    recurse(0);
    return count;
}

// ---------------------------------------------------------------------------
// Simulation harness.

struct SimulationConfig {
    long sample_count = 0;  // 0: max(25, 2n)
    long fixed_point_budget = 0;  // 0: 4n
    std::uint64_t seed = 0;
    long index2_budget = 1000000;
    long wreath_node_budget = 2000000;
};

struct SimulationResult {
    bool sieve_emptied = false;
    long oracle_calls = 0;
    long oracle_calls_after_pq = 0;
    std::set<long> possible_block_sizes;
    Int order_divisor = 1;
    std::vector<BlockSystem> systems;  // all nontrivial systems of the final group
    Int final_order = 0;
    long frobenius_cycles = 0;
};

/**
 * Runs the field-search control flow against a simulated factorization:
 * random elements of g provide the cycle types, one fixed-point element
 * plays the Frobenius at the LLL prime with its cycles as the factors,
 * and the principal-subfield oracle returns the true principal system.
 * The lattice-test code path is shared with the real driver.
 */
inline SimulationResult simulate_from_group(const PermGroup& g, const SimulationConfig& config = {}) {
    if (!g.is_transitive()) throw std::invalid_argument("simulate_from_group: not transitive");
    const int n = g.degree();
    Rng rng(config.seed);
    SimulationResult result;

    const long samples = config.sample_count > 0 ? config.sample_count : std::max(25L, 2L * n);
    std::vector<CycleTypeReport> reports;
    bool all_even = true;
    for (long i = 0; i < samples; ++i) {
        Permutation e = g.random_element(rng);
        CycleTypeReport rep;
        rep.prime = 0;
        rep.cycle_type = e.cycle_type();
        rep.parity = e.sign();
        if (rep.parity < 0) all_even = false;
        reports.push_back(std::move(rep));
    }
    result.possible_block_sizes = sieve_block_sizes(reports, n);
    if (result.possible_block_sizes.empty()) {
        result.sieve_emptied = true;
        result.final_order = PermGroup::symmetric(n).order();
        return result;
    }
    Int divisor = 1;
    for (const auto& rep : reports) divisor = lcm(divisor, order_divisor(rep, n));
    divisor = lcm(divisor, pgroup_divisor(reports, n));
    result.order_divisor = divisor;

    // Evenness: the simulated discriminant test is the exact containment.
    bool even_known = all_even && intersect_with_alternating(g).order() == g.order();

    // Frobenius element with a fixed point; fall back to the identity.
    const long fp_budget = config.fixed_point_budget > 0 ? config.fixed_point_budget : 4L * n;
    Permutation frob(n);
    bool found_fp = false;
    for (long i = 0; i < fp_budget; ++i) {
        Permutation e = g.random_element(rng);
        bool has_fp = false;
        for (int x = 0; x < n; ++x)
            if (e[x] == x) has_fp = true;
        if (has_fp) {
            frob = e;
            found_fp = true;
            break;
        }
    }
    if (!found_fp) frob = Permutation(n);

    // Cycles of frob as simulated factors; a fixed point comes first.
    std::vector<std::vector<int>> cycles;
    {
        std::vector<bool> seen(n, false);
        for (int i = 0; i < n; ++i) {
            if (seen[i]) continue;
            std::vector<int> cyc;
            int x = i;
            while (!seen[x]) {
                seen[x] = true;
                cyc.push_back(x);
                x = frob[x];
            }
            cycles.push_back(std::move(cyc));
        }
        std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a[0] < b[0];
        });
        // first cycle must be a fixed point (always true after the sort)
    }
    result.frobenius_cycles = static_cast<long>(cycles.size());
    const int r1_point = cycles[0][0];

    KnownSubfieldTable table;
    for (const auto& c : cycles) table.factor_degrees.push_back(static_cast<long>(c.size()));
    table.possible_block_sizes = result.possible_block_sizes;
    table.order_divisor = divisor;

    auto delta_of_blocks = [&](const BlockSystem& b) {
        std::set<std::size_t> delta;
        const auto& blk = b.block_containing(r1_point);
        std::set<int> members(blk.begin(), blk.end());
        for (std::size_t i = 0; i < cycles.size(); ++i)
            if (members.count(cycles[i][0])) delta.insert(i);
        return delta;
    };

    std::vector<BlockSystem> known;
    std::optional<PermGroup> current;
    bool pq_engaged = false;

    auto add_system = [&](const BlockSystem& b, bool principal) {
        if (b.num_blocks() <= 1) {
            table.full_set_principal = table.full_set_principal || principal;
            return false;
        }
        for (auto& e : table.entries)
            if (e.blocks == b) {
                e.principal = e.principal || principal;
                return false;
            }
        KnownSubfieldEntry entry;
        entry.blocks = b;
        entry.delta = delta_of_blocks(b);
        entry.principal = principal;
        table.entries.push_back(std::move(entry));
        known.push_back(b);
        return true;
    };

    bool done = false;
    for (std::size_t j = 1; j < cycles.size() && !done; ++j) {
        LatticeTestReport lt = lattice_test(table, j);
        if (lt.pq_rule_engaged) pq_engaged = true;
        if (lt.verdict == LatticeVerdict::kSkipFactor) continue;
        ++result.oracle_calls;
        if (pq_engaged) ++result.oracle_calls_after_pq;
        BlockSystem truth = principal_block_system(g, r1_point, cycles[j][0]);
        if (!add_system(truth, /*principal=*/true)) continue;
        current = detail::group_from_systems(known, n, even_known, config.wreath_node_budget);
        for (int x = 1; x < n; ++x) {
            BlockSystem cand = principal_block_system(*current, x);
            if (!cand.is_trivial() && !table.knows_blocks(cand))
                add_system(cand, /*principal=*/false);
        }
        if (current->order() == divisor) {
            done = true;
        } else if (current->order() == 2 * divisor) {
            // final adjustment with the oracle as the confirmation step
            auto principal_set = [&](const PermGroup& grp) {
                std::set<BlockSystem> out;
                for (int x = 1; x < n; ++x) out.insert(principal_block_system(grp, x));
                return out;
            };
            std::set<BlockSystem> cur_principal = principal_set(*current);
            std::set<BlockSystem> cur_systems;
            for (const auto& b : all_block_systems(*current)) cur_systems.insert(b);
            for (const auto& h : index2_transitive_subgroups(*current, config.index2_budget)) {
                std::set<BlockSystem> h_principal = principal_set(h);
                if (h_principal == cur_principal) continue;
                bool ruled_out = false;
                for (const auto& e : table.entries) {
                    if (!e.principal || e.blocks.is_trivial()) continue;
                    bool still = false;
                    for (int x : e.blocks.block_containing(0))
                        if (x != 0 && principal_block_system(h, x) == e.blocks) still = true;
                    if (!still) ruled_out = true;
                }
                if (ruled_out) continue;
                for (const auto& cand : h_principal) {
                    if (cand.is_trivial() || cur_systems.count(cand)) continue;
                    if (cand.invariant_under(g)) {  // oracle confirmation
                        add_system(cand, /*principal=*/true);
                        current = detail::group_from_systems(known, n, even_known,
                                                             config.wreath_node_budget);
                    }
                    break;
                }
            }
            done = true;
        }
    }

    if (current.has_value()) {
        result.systems = all_block_systems(*current);
        result.final_order = current->order();
    } else {
        PermGroup fallback =
            even_known ? PermGroup::alternating(n) : PermGroup::symmetric(n);
        result.systems = all_block_systems(fallback);
        result.final_order = fallback.order();
    }
    return result;
}

}  // namespace subfields

#endif  // SUBFIELDS_FIELD_SEARCH_HPP
