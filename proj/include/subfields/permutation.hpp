#ifndef SUBFIELDS_PERMUTATION_HPP
#define SUBFIELDS_PERMUTATION_HPP

/**
 * @file permutation.hpp
 * @brief Permutations and permutation groups with a deterministic
 *        Schreier-Sims stabilizer chain: exact order, membership by
 *        sifting, element enumeration, coset actions, normal closures
 *        and index-2 subgroup enumeration.
 *
 * Points are 0-based internally; the CLI and printed block systems are
 * 1-based.
 */

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "subfields/integers.hpp"

namespace subfields {

class Permutation {
public:
    Permutation() = default;
    explicit Permutation(int n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }
    explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
#ifndef NDEBUG
        std::vector<bool> seen(img_.size(), false);
        for (int v : img_) {
            assert(v >= 0 && v < static_cast<int>(img_.size()) && !seen[v]);
            seen[v] = true;
        }
#endif
    }

    /// Cycles given with 1-based labels, e.g. from_cycles(4, {{1,2},{3,4}}).
    static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        for (const auto& cyc : cycles) {
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                int from = cyc[i] - 1;
                int to = cyc[(i + 1) % cyc.size()] - 1;
                img[from] = to;
            }
        }
        return Permutation(std::move(img));
    }

    int degree() const { return static_cast<int>(img_.size()); }
    int operator[](int i) const { return img_[i]; }
    const std::vector<int>& images() const { return img_; }

    bool is_identity() const {
        for (int i = 0; i < degree(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    /// (a*b)(x) = a(b(x)).
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        assert(a.degree() == b.degree());
        std::vector<int> r(a.degree());
        for (int i = 0; i < a.degree(); ++i) r[i] = a.img_[b.img_[i]];
        return Permutation(std::move(r));
    }

    Permutation inverse() const {
        std::vector<int> r(degree());
        for (int i = 0; i < degree(); ++i) r[img_[i]] = i;
        return Permutation(std::move(r));
    }

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.img_ == b.img_;
    }
    friend bool operator<(const Permutation& a, const Permutation& b) {
        return a.img_ < b.img_;
    }

    std::vector<long> cycle_type() const {
        std::vector<long> type;
        std::vector<bool> seen(img_.size(), false);
        for (std::size_t i = 0; i < img_.size(); ++i) {
            if (seen[i]) continue;
            long len = 0;
            std::size_t j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = static_cast<std::size_t>(img_[j]);
                ++len;
            }
            type.push_back(len);
        }
        std::sort(type.begin(), type.end());
        return type;
    }

    /// +1 for even, -1 for odd.
    int sign() const {
        auto type = cycle_type();
        long transpositions = static_cast<long>(img_.size()) - static_cast<long>(type.size());
        return transpositions % 2 == 0 ? 1 : -1;
    }

    std::string to_cycle_string() const {
        std::string out;
        std::vector<bool> seen(img_.size(), false);
        for (std::size_t i = 0; i < img_.size(); ++i) {
            if (seen[i] || img_[i] == static_cast<int>(i)) {
                seen[i] = true;
                continue;
            }
            out += "(";
            std::size_t j = i;
            bool first = true;
            while (!seen[j]) {
                seen[j] = true;
                if (!first) out += " ";
                out += std::to_string(j + 1);
                first = false;
                j = static_cast<std::size_t>(img_[j]);
            }
            out += ")";
        }
        return out.empty() ? "()" : out;
    }

private:
    std::vector<int> img_;
};

/**
 * Permutation group with a stabilizer chain built by the deterministic
 * Schreier-Sims procedure.  Immutable after construction.
 */
class PermGroup {
public:
    PermGroup() : n_(0) {}
    PermGroup(int n, std::vector<Permutation> gens) : n_(n), gens_(std::move(gens)) {
        for (const auto& g : gens_)
            if (g.degree() != n) throw std::invalid_argument("PermGroup: degree mismatch");
        gens_.erase(std::remove_if(gens_.begin(), gens_.end(),
                                   [](const Permutation& g) { return g.is_identity(); }),
                    gens_.end());
        build_chain();
    }

    static PermGroup trivial(int n) { return PermGroup(n, {}); }

    static PermGroup symmetric(int n) {
        std::vector<Permutation> gens;
        if (n >= 2) gens.push_back(Permutation::from_cycles(n, {{1, 2}}));
        if (n >= 3) {
            std::vector<int> cyc(n);
            std::iota(cyc.begin(), cyc.end(), 1);
            gens.push_back(Permutation::from_cycles(n, {cyc}));
        }
        return PermGroup(n, std::move(gens));
    }

    static PermGroup alternating(int n) {
        std::vector<Permutation> gens;
        if (n >= 3) gens.push_back(Permutation::from_cycles(n, {{1, 2, 3}}));
        if (n >= 4) {
            std::vector<int> cyc;
            if (n % 2 == 1) {
                for (int i = 1; i <= n; ++i) cyc.push_back(i);
            } else {
                for (int i = 2; i <= n; ++i) cyc.push_back(i);
            }
            gens.push_back(Permutation::from_cycles(n, {cyc}));
        }
        return PermGroup(n, std::move(gens));
    }

    static PermGroup cyclic(int n) {
        std::vector<int> cyc(n);
        std::iota(cyc.begin(), cyc.end(), 1);
        return PermGroup(n, {Permutation::from_cycles(n, {cyc})});
    }

    static PermGroup dihedral(int n) {
        std::vector<int> cyc(n);
        std::iota(cyc.begin(), cyc.end(), 1);
        std::vector<std::vector<int>> refl;
        for (int i = 1; i < n + 1 - i; ++i) refl.push_back({i + 1, n + 1 - i});
        return PermGroup(n, {Permutation::from_cycles(n, {cyc}),
                             Permutation::from_cycles(n, refl)});
    }

    int degree() const { return n_; }
    const std::vector<Permutation>& generators() const { return gens_; }
    const Int& order() const { return order_; }

    bool contains(const Permutation& g) const {
        if (g.degree() != n_) return false;
        auto [residue, level] = strip(g);
        return residue.is_identity();
    }

    bool is_transitive() const {
        if (n_ == 0) return false;
        return orbit_of(0).size() == static_cast<std::size_t>(n_);
    }

    std::vector<int> orbit_of(int point) const {
        std::vector<int> orb{point};
        std::vector<bool> seen(n_, false);
        seen[point] = true;
        for (std::size_t i = 0; i < orb.size(); ++i)
            for (const auto& g : gens_) {
                int im = g[orb[i]];
                if (!seen[im]) {
                    seen[im] = true;
                    orb.push_back(im);
                }
            }
        return orb;
    }

    /// Uniformly random element (product of random transversal elements).
    Permutation random_element(Rng& rng) const {
        Permutation g(n_);
        for (const auto& level : chain_) {
            std::size_t pick = rng.next_below(level.orbit.size());
            g = g * level.transversal[level.orbit[pick]];
        }
        return g;
    }

    /// Visit every element once; stop early if the callback returns false.
    bool enumerate_elements(const std::function<bool(const Permutation&)>& fn) const {
        return enumerate_rec(static_cast<long>(chain_.size()) - 1, Permutation(n_), fn);
    }

    std::vector<int> base_points() const {
        std::vector<int> b;
        for (const auto& level : chain_) b.push_back(level.base_point);
        return b;
    }

private:
    struct Level {
        int base_point = 0;
        std::vector<Permutation> gens;          // strong generators fixing earlier base points
        std::vector<int> orbit;                 // orbit of base_point under gens
        std::vector<Permutation> transversal;   // indexed by point; maps base_point -> point
        std::vector<bool> in_orbit;
    };

    void compute_orbit(Level& level) const {
        level.orbit.assign(1, level.base_point);
        level.in_orbit.assign(n_, false);
        level.in_orbit[level.base_point] = true;
        level.transversal.assign(n_, Permutation());
        level.transversal[level.base_point] = Permutation(n_);
        for (std::size_t i = 0; i < level.orbit.size(); ++i) {
            int pt = level.orbit[i];
            for (const auto& g : level.gens) {
                int im = g[pt];
                if (!level.in_orbit[im]) {
                    level.in_orbit[im] = true;
                    level.orbit.push_back(im);
                    level.transversal[im] = g * level.transversal[pt];
                }
            }
        }
    }

    /// Sift g through the chain starting at `from`; returns residue and stop level.
    std::pair<Permutation, std::size_t> strip_from(const Permutation& g, std::size_t from) const {
        Permutation h = g;
        for (std::size_t i = from; i < chain_.size(); ++i) {
            int im = h[chain_[i].base_point];
            if (!chain_[i].in_orbit[im]) return {h, i};
            h = chain_[i].transversal[im].inverse() * h;
        }
        return {h, chain_.size()};
    }

    std::pair<Permutation, std::size_t> strip(const Permutation& g) const {
        return strip_from(g, 0);
    }

    void append_base_point_for(const Permutation& h) {
        for (int i = 0; i < n_; ++i) {
            if (h[i] != i) {
                Level level;
                level.base_point = i;
                chain_.push_back(std::move(level));
                return;
            }
        }
        assert(false && "append_base_point_for called with identity");
    }

    // Deterministic Schreier-Sims: establish the strong generator property
    // at level k assuming it holds below.
    void schreier_sims_at(std::size_t k) {
        while (true) {
            compute_orbit(chain_[k]);
            bool violation = false;
            Level& level = chain_[k];
            for (std::size_t oi = 0; oi < level.orbit.size() && !violation; ++oi) {
                int pt = level.orbit[oi];
                for (const auto& g : level.gens) {
                    Permutation sg =
                        level.transversal[g[pt]].inverse() * (g * level.transversal[pt]);
                    if (sg.is_identity()) continue;
                    auto [h, j] = strip_from(sg, k + 1);
                    if (h.is_identity()) continue;
                    if (j == chain_.size()) append_base_point_for(h);
                    for (std::size_t l = k + 1; l <= j && l < chain_.size(); ++l)
                        chain_[l].gens.push_back(h);
                    for (std::size_t l = std::min(j, chain_.size() - 1); l >= k + 1; --l) {
                        schreier_sims_at(l);
                        if (l == k + 1) break;
                    }
                    violation = true;
                    break;
                }
            }
            if (!violation) return;
        }
    }

    void build_chain() {
        chain_.clear();
        order_ = 1;
        if (gens_.empty()) return;
        // Initial base: make every generator move some base point.
        std::vector<Permutation> pending = gens_;
        for (const auto& g : gens_) {
            bool moved = false;
            for (const auto& level : chain_)
                if (g[level.base_point] != level.base_point) {
                    moved = true;
                    break;
                }
            if (!moved) {
                for (int i = 0; i < n_; ++i)
                    if (g[i] != i) {
                        Level level;
                        level.base_point = i;
                        chain_.push_back(std::move(level));
                        break;
                    }
            }
        }
        // Distribute generators: level l gets gens fixing base[0..l-1].
        for (const auto& g : gens_) {
            for (std::size_t l = 0; l < chain_.size(); ++l) {
                chain_[l].gens.push_back(g);
                if (g[chain_[l].base_point] != chain_[l].base_point) break;
            }
        }
        for (auto& level : chain_) compute_orbit(level);
        schreier_sims_at(0);
        // Re-establish every level top-down once more (safety pass).
        for (std::size_t l = chain_.size(); l-- > 0;) schreier_sims_at(l);
        order_ = 1;
        for (const auto& level : chain_) order_ *= static_cast<long>(level.orbit.size());
    }

    bool enumerate_rec(long level, const Permutation& suffix,
                       const std::function<bool(const Permutation&)>& fn) const {
        if (level < 0) return fn(suffix);
        for (int pt : chain_[level].orbit) {
            if (!enumerate_rec(level - 1, chain_[level].transversal[pt] * suffix, fn))
                return false;
        }
        return true;
    }

    int n_;
    std::vector<Permutation> gens_;
    std::vector<Level> chain_;
    Int order_ = 1;
};

// ---------------------------------------------------------------------------
// Derived constructions.

/// Kernel of a +-1 character (index <= 2); chi must be a homomorphism.
inline PermGroup kernel_of_character(const PermGroup& g,
                                     const std::function<int(const Permutation&)>& chi) {
    std::vector<Permutation> even, odd;
    for (const auto& s : g.generators()) (chi(s) == 1 ? even : odd).push_back(s);
    if (odd.empty()) return g;
    const Permutation& t = odd.front();
    const Permutation tinv = t.inverse();
    std::vector<Permutation> gens;
    for (const auto& s : even) {
        gens.push_back(s);
        gens.push_back(t * s * tinv);
    }
    for (const auto& s : odd) {
        gens.push_back(s * tinv);
        gens.push_back(t * s);
    }
    return PermGroup(g.degree(), std::move(gens));
}

/// Subgroup of even permutations (equals g when all generators are even).
inline PermGroup intersect_with_alternating(const PermGroup& g) {
    return kernel_of_character(g, [](const Permutation& p) { return p.sign(); });
}

/// Smallest normal subgroup of g containing the given elements.
inline PermGroup normal_closure(const PermGroup& g, std::vector<Permutation> seed) {
    seed.erase(std::remove_if(seed.begin(), seed.end(),
                              [](const Permutation& p) { return p.is_identity(); }),
               seed.end());
    PermGroup h(g.degree(), seed);
    std::vector<Permutation> work = seed;
    while (!work.empty()) {
        Permutation x = work.back();
        work.pop_back();
        for (const auto& s : g.generators()) {
            Permutation c = s * x * s.inverse();
            if (!h.contains(c)) {
                seed.push_back(c);
                work.push_back(c);
                h = PermGroup(g.degree(), seed);
            }
        }
    }
    return h;
}

/// Right coset representatives of u in g (BFS over generators); id first.
inline std::vector<Permutation> coset_representatives(const PermGroup& g, const PermGroup& u,
                                                      long index_cap = 1 << 20) {
    std::vector<Permutation> reps{Permutation(g.degree())};
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (const auto& s : g.generators()) {
            Permutation cand = s * reps[i];
            bool known = false;
            for (const auto& r : reps)
                if (u.contains(r.inverse() * cand)) {  // same left coset cand*U ... r*U
                    known = true;
                    break;
                }
            if (!known) {
                reps.push_back(cand);
                if (static_cast<long>(reps.size()) > index_cap)
                    throw std::runtime_error("coset_representatives: index cap exceeded");
            }
        }
    }
    return reps;
}

/// Permutation action of g on the left cosets of u; degree = index.
inline PermGroup coset_action(const PermGroup& g, const PermGroup& u) {
    std::vector<Permutation> reps = coset_representatives(g, u);
    const int index = static_cast<int>(reps.size());
    auto locate = [&](const Permutation& x) {
        for (int i = 0; i < index; ++i)
            if (u.contains(reps[i].inverse() * x)) return i;
        throw std::logic_error("coset_action: coset not found");
    };
    std::vector<Permutation> images;
    for (const auto& s : g.generators()) {
        std::vector<int> img(index);
        for (int i = 0; i < index; ++i) img[i] = locate(s * reps[i]);
        images.emplace_back(std::move(img));
    }
    return PermGroup(index, std::move(images));
}

/// Left-regular representation: degree = order (enumeration-order labels).
inline PermGroup regular_representation(const PermGroup& g, long order_cap = 200000) {
    if (g.order() > order_cap)
        throw std::runtime_error("regular_representation: order cap exceeded");
    std::vector<Permutation> elements;
    g.enumerate_elements([&](const Permutation& e) {
        elements.push_back(e);
        return true;
    });
    std::sort(elements.begin(), elements.end());
    std::map<Permutation, int> index;
    for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = static_cast<int>(i);
    std::vector<Permutation> gens;
    for (const auto& s : g.generators()) {
        std::vector<int> img(elements.size());
        for (std::size_t i = 0; i < elements.size(); ++i) img[i] = index.at(s * elements[i]);
        gens.emplace_back(std::move(img));
    }
    return PermGroup(static_cast<int>(elements.size()), std::move(gens));
}

/// Direct product acting on the disjoint union of the two point sets.
inline PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
    const int n = a.degree() + b.degree();
    std::vector<Permutation> gens;
    for (const auto& s : a.generators()) {
        std::vector<int> img(n);
        for (int i = 0; i < a.degree(); ++i) img[i] = s[i];
        for (int i = 0; i < b.degree(); ++i) img[a.degree() + i] = a.degree() + i;
        gens.emplace_back(std::move(img));
    }
    for (const auto& s : b.generators()) {
        std::vector<int> img(n);
        for (int i = 0; i < a.degree(); ++i) img[i] = i;
        for (int i = 0; i < b.degree(); ++i) img[a.degree() + i] = a.degree() + s[i];
        gens.emplace_back(std::move(img));
    }
    return PermGroup(n, std::move(gens));
}

/// Imprimitive wreath product: `inner` on each of `ell` blocks, `outer` on blocks.
inline PermGroup wreath_imprimitive(const PermGroup& inner, const PermGroup& outer) {
    const int k = inner.degree(), ell = outer.degree(), n = k * ell;
    std::vector<Permutation> gens;
    for (const auto& s : inner.generators()) {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        for (int i = 0; i < k; ++i) img[i] = s[i];
        gens.emplace_back(std::move(img));
    }
    for (const auto& s : outer.generators()) {
        std::vector<int> img(n);
        for (int b = 0; b < ell; ++b)
            for (int i = 0; i < k; ++i) img[b * k + i] = s[b] * k + i;
        gens.emplace_back(std::move(img));
    }
    return PermGroup(n, std::move(gens));
}

/**
 * Index-2 subgroups via the largest elementary-abelian 2-quotient:
 * N = normal closure of generator squares and commutators, hyperplanes
 * of G/N pulled back, filtered for transitivity.
 */
inline std::vector<PermGroup> index2_transitive_subgroups(const PermGroup& g,
                                                          long order_budget = 1000000) {
    if (g.order() > order_budget)
        throw std::runtime_error("index2_transitive_subgroups: budget exceeded");
    std::vector<Permutation> seed;
    for (const auto& a : g.generators()) {
        seed.push_back(a * a);
        for (const auto& b : g.generators())
            seed.push_back(a * b * a.inverse() * b.inverse());
    }
    PermGroup n = normal_closure(g, std::move(seed));
    if (n.order() == g.order()) return {};

    // Coset space G/N is an F_2 vector space.
    std::vector<Permutation> reps = coset_representatives(g, n);
    const std::size_t count = reps.size();
    // Greedy basis with coordinates assigned by span growth.
    std::vector<Permutation> basis;
    std::vector<std::pair<Permutation, std::vector<int>>> span;  // rep, coords
    span.emplace_back(Permutation(g.degree()), std::vector<int>{});
    auto in_span = [&](const Permutation& x) {
        for (const auto& [r, c] : span)
            if (n.contains(r.inverse() * x)) return true;
        return false;
    };
    for (std::size_t i = 1; i < count; ++i) {
        if (in_span(reps[i])) continue;
        basis.push_back(reps[i]);
        std::vector<std::pair<Permutation, std::vector<int>>> grown = span;
        for (const auto& [r, c] : span) {
            std::vector<int> c2 = c;
            c2.resize(basis.size(), 0);
            c2[basis.size() - 1] = 1;
            grown.emplace_back(reps[i] * r, c2);
        }
        for (auto& [r, c] : grown) c.resize(basis.size(), 0);
        span = std::move(grown);
    }
    const std::size_t k = basis.size();

    std::vector<PermGroup> out;
    for (std::size_t mask = 1; mask < (1u << k); ++mask) {
        // Kernel of the functional lambda(v) = parity of mask&v.
        std::vector<Permutation> gens = n.generators();
        for (const auto& [r, c] : span) {
            int dot = 0;
            for (std::size_t j = 0; j < k; ++j)
                if ((mask >> j) & 1) dot ^= c[j];
            if (dot == 0 && !r.is_identity()) gens.push_back(r);
        }
        PermGroup h(g.degree(), std::move(gens));
        assert(h.order() * 2 == g.order());
        if (h.is_transitive()) out.push_back(std::move(h));
    }
    return out;
}

}  // namespace subfields

#endif  // SUBFIELDS_PERMUTATION_HPP
