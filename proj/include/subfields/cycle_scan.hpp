#ifndef SUBFIELDS_CYCLE_SCAN_HPP
#define SUBFIELDS_CYCLE_SCAN_HPP

/**
 * @file cycle_scan.hpp
 * @brief Everything learned from factoring f modulo many primes: cycle
 *        types of Frobenius elements, order divisors, block-size
 *        exclusion, parity, and the prime-inspection driver.
 */

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "subfields/factor_int.hpp"
#include "subfields/int_poly.hpp"
#include "subfields/mod_poly.hpp"

namespace subfields {

struct CycleTypeReport {
    Int prime;
    std::vector<long> cycle_type;  // ascending, fixed points included
    int parity = 1;                // (-1)^(n - #entries)

    long element_order() const {
        long l = 1;
        for (long c : cycle_type) l = std::lcm(l, c);
        return l;
    }
    bool has_fixed_point() const {
        return !cycle_type.empty() && cycle_type.front() == 1;
    }
};

/// Factor degrees of f mod p as a cycle type; p must not divide lc*disc.
inline CycleTypeReport cycle_type_at(const IntPoly& f, const Int& p, std::uint64_t seed = 0) {
    ModFactorization fac = mod_factor(f, p, seed);
    if (!fac.squarefree) throw std::invalid_argument("bad prime");
    CycleTypeReport rep;
    rep.prime = p;
    rep.cycle_type = fac.factor_degrees();
    long n = f.degree();
    rep.parity = (n - static_cast<long>(rep.cycle_type.size())) % 2 == 0 ? 1 : -1;
    return rep;
}

/// n * lcm(n_i) / gcd(n_i) divides the order of any transitive group
/// containing an element of this cycle type.
inline Int order_divisor(const CycleTypeReport& rep, long n) {
    long l = 1, g = 0;
    for (long c : rep.cycle_type) {
        l = std::lcm(l, c);
        g = std::gcd(g, c);
    }
    return Int(n) * Int(l) / Int(g);
}

namespace detail {

/// p^e when v is a prime power with e >= 1; (0,0) otherwise.
inline std::pair<long, long> prime_power_split(long v) {
    if (v < 2) return {0, 0};
    for (long p = 2; p * p <= v; ++p) {
        if (v % p != 0) continue;
        long e = 0, w = v;
        while (w % p == 0) {
            w /= p;
            ++e;
        }
        return w == 1 ? std::make_pair(p, e) : std::make_pair(0L, 0L);
    }
    return {v, 1};  // v itself prime
}

/// Points in orbits of full length (the element order) for a p^e-order type.
inline long trivial_stabilizer_points(const CycleTypeReport& rep) {
    long order = rep.element_order();
    long count = 0;
    for (long c : rep.cycle_type)
        if (c == order) count += c;
    return count;
}

}  // namespace detail

/**
 * Order divisor from pairs of p-power-order cycle types with differing
 * trivial-stabilizer counts: p^(e+f) divides the group order (both
 * elements lie in a common Sylow subgroup up to conjugacy); when both
 * types have a fixed point the pair sits inside a point stabilizer and
 * contributes n * p^(e+f).  Returns 1 when no pair applies.
 */
inline Int pgroup_divisor(const std::vector<CycleTypeReport>& reports, long n) {
    struct Entry {
        long p, e, trivial_points;
        bool fixed_point;
    };
    std::vector<Entry> entries;
    std::set<std::vector<long>> seen;
    for (const auto& rep : reports) {
        if (!seen.insert(rep.cycle_type).second) continue;
        auto [p, e] = detail::prime_power_split(rep.element_order());
        if (p == 0) continue;
        entries.push_back({p, e, detail::trivial_stabilizer_points(rep), rep.has_fixed_point()});
    }
    Int result = 1;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            const Entry& a = entries[i];
            const Entry& b = entries[j];
            if (a.p != b.p || a.trivial_points == b.trivial_points) continue;
            Int contribution = subfields::pow(Int(a.p), static_cast<unsigned long>(a.e + b.e));
            if (a.fixed_point && b.fixed_point) contribution *= n;
            result = lcm(result, contribution);
        }
    }
    return result;
}

namespace detail {

/**
 * Lemma witness: the type admits block size k iff for every orbit m there
 * are e | n_m and a subset I containing m with e | n_i for all i in I and
 * sum over I equal to e*k.
 */
inline bool admits_block_size(const std::vector<long>& type, long k) {
    for (std::size_t m = 0; m < type.size(); ++m) {
        bool witness = false;
        for (long e = 1; e * e <= type[m] && !witness; ++e) {
            if (type[m] % e != 0) continue;
            for (long ee : {e, type[m] / e}) {
                if (witness) break;
                long target = ee * k - type[m];
                if (target < 0) continue;
                // subset-sum over the other entries divisible by ee
                std::vector<char> reach(target + 1, 0);
                reach[0] = 1;
                for (std::size_t i = 0; i < type.size(); ++i) {
                    if (i == m || type[i] % ee != 0 || type[i] > target) continue;
                    for (long s = target; s >= type[i]; --s)
                        if (reach[s - type[i]]) reach[s] = 1;
                }
                if (reach[target]) witness = true;
            }
        }
        if (!witness) return false;
    }
    return true;
}

}  // namespace detail

/// Proper divisors of n (as block sizes) surviving every observed cycle type.
inline std::set<long> sieve_block_sizes(const std::vector<CycleTypeReport>& reports, long n) {
    std::set<long> sizes;
    for (long k : proper_divisors(n)) sizes.insert(k);
    for (const auto& rep : reports) {
        for (auto it = sizes.begin(); it != sizes.end();) {
            if (!detail::admits_block_size(rep.cycle_type, *it))
                it = sizes.erase(it);
            else
                ++it;
        }
        if (sizes.empty()) break;
    }
    return sizes;
}

enum class Evenness { kYes, kUnknown };

struct InspectionResult {
    std::set<long> possible_block_sizes;
    Int lll_prime;
    Int splitting_prime;
    Int order_divisor_found = 1;
    Evenness group_is_even = Evenness::kUnknown;
    std::vector<CycleTypeReport> reports;
    long splitting_degree = 1;  // lcm of factor degrees at splitting_prime
};

struct InspectionConfig {
    long sample_count = 0;      // 0: default max(25, 2n)
    long linear_budget = 0;     // 0: default 4n
    bool use_pgroup_rule = true;
    std::uint64_t seed = 0;
};

/**
 * Prime inspection: samples good primes, sieves block sizes, chooses the
 * LLL prime (linear factor present, fewest factors of degree below the
 * largest surviving block size) and the splitting prime (smallest
 * splitting field), and aggregates the order divisor.  Returns nothing
 * when no proper block size survives ("No subfields").
 */
inline std::optional<InspectionResult> prime_inspection(const IntPoly& f,
                                                        const InspectionConfig& config = {}) {
    const long n = f.degree();
    if (n < 1) throw std::invalid_argument("prime_inspection: constant polynomial");
    std::set<long> sizes;
    for (long k : proper_divisors(n)) sizes.insert(k);
    if (sizes.empty()) return std::nullopt;  // prime degree: no subfields

    const long sample_target = config.sample_count > 0 ? config.sample_count : std::max(25L, 2 * n);
    const long linear_budget = config.linear_budget > 0 ? config.linear_budget : 4 * n;

    Int disc = discriminant(f);
    if (disc == 0) throw std::invalid_argument("prime_inspection: f not squarefree");

    InspectionResult res;
    bool all_even = true;
    long sampled = 0;
    struct LinearPrime {
        Int p;
        std::vector<long> degrees;
    };
    std::vector<LinearPrime> linear_primes;
    struct SplitCandidate {
        Int p;
        long d;
    };
    std::vector<SplitCandidate> split_candidates;

    for (long pl : small_primes()) {
        if (sampled >= sample_target && !linear_primes.empty()) break;
        if (sampled >= linear_budget) break;
        Int p(pl);
        if (f.leading() % p == 0 || disc % p == 0) continue;
        CycleTypeReport rep = cycle_type_at(f, p, config.seed);
        ++sampled;
        if (rep.parity < 0) all_even = false;
        for (auto it = sizes.begin(); it != sizes.end();) {
            if (!detail::admits_block_size(rep.cycle_type, *it))
                it = sizes.erase(it);
            else
                ++it;
        }
        res.reports.push_back(rep);
        if (sizes.empty()) return std::nullopt;
        if (pl > 2) {
            if (rep.cycle_type.front() == 1) linear_primes.push_back({p, rep.cycle_type});
            long d = 1;
            for (long c : rep.cycle_type) d = std::lcm(d, c);
            split_candidates.push_back({p, d});
        }
    }
    if (linear_primes.empty())
        throw std::runtime_error("no linear-factor prime found within budget");

    res.possible_block_sizes = sizes;

    if (all_even && is_perfect_square(disc)) res.group_is_even = Evenness::kYes;

    Int divisor = 1;
    for (const auto& rep : res.reports) divisor = lcm(divisor, order_divisor(rep, n));
    if (config.use_pgroup_rule) divisor = lcm(divisor, pgroup_divisor(res.reports, n));
    res.order_divisor_found = divisor;

    const long largest_size = *sizes.rbegin();
    long best_count = -1;
    for (const auto& lp : linear_primes) {
        long count = 0;
        for (long d : lp.degrees)
            if (d < largest_size) ++count;
        if (best_count < 0 || count < best_count) {
            best_count = count;
            res.lll_prime = lp.p;
        }
    }
    long best_d = -1;
    for (const auto& sc : split_candidates) {
        if (best_d < 0 || sc.d < best_d) {
            best_d = sc.d;
            res.splitting_prime = sc.p;
            res.splitting_degree = sc.d;
        }
    }
    return res;
}

}  // namespace subfields

#endif  // SUBFIELDS_CYCLE_SCAN_HPP
