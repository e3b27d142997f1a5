#ifndef SUBFIELDS_FACTOR_INT_HPP
#define SUBFIELDS_FACTOR_INT_HPP

/**
 * @file factor_int.hpp
 * @brief Factorization over Z: Yun squarefree decomposition and the
 *        Zassenhaus route (mod-p factorization, Hensel lifting to a
 *        Landau-Mignotte-style bound, subset recombination).
 */

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subfields/int_poly.hpp"
#include "subfields/mod_poly.hpp"

namespace subfields {

/// Polynomial gcd over Z via the primitive PRS, positive leading coefficient.
inline IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    Int c = subfields::gcd(a.content(), b.content());
    IntPoly x = a.primitive_part(), y = b.primitive_part();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPoly r = pseudo_rem(x, y);
        x = y;
        y = r.is_zero() ? IntPoly() : r.primitive_part();
    }
    return c * x.primitive_part();
}

struct ZFactorization {
    Int content = 1;  ///< signed content; content * prod factors^mult == input
    std::vector<std::pair<IntPoly, long>> factors;  ///< primitive irreducible, multiplicity

    IntPoly product() const {
        IntPoly acc = IntPoly::constant(content);
        for (const auto& [g, e] : factors)
            for (long i = 0; i < e; ++i) acc = acc * g;
        return acc;
    }
};

namespace detail {

/// Yun's squarefree decomposition for primitive f over Z.
inline std::vector<std::pair<IntPoly, long>> squarefree_decompose_z(const IntPoly& f) {
    std::vector<std::pair<IntPoly, long>> out;
    IntPoly g = subfields::gcd(f, f.derivative());
    if (g.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    IntPoly w = exact_div(f, g);
    IntPoly y = exact_div(f.derivative(), g);
    IntPoly z = y - w.derivative();
    long i = 1;
    while (w.degree() > 0) {
        IntPoly gi = subfields::gcd(w, z);
        if (gi.degree() > 0) out.emplace_back(gi.primitive_part(), i);
        w = exact_div(w, gi);
        y = exact_div(z, gi);
        z = y - w.derivative();
        ++i;
    }
    return out;
}

/**
 * Zassenhaus factorization of a primitive squarefree polynomial.
 * Lift precision comes from the Landau-Mignotte-style bound
 * B = 2^n * (sqrt(n+1) * ||f||_inf rounded up) * |lc(f)|, which dominates
 * the sup-norm of lc(f) * h for every monic-rescaled true factor h.
 */
inline std::vector<IntPoly> zassenhaus_squarefree(const IntPoly& f, std::uint64_t seed,
                                                  long subset_budget) {
    if (f.degree() == 1) return {f};
    const long n = f.degree();

    // Prime selection: a few squarefree-reduction primes, fewest factors wins.
    ModFactorization best;
    bool have = false;
    int tried = 0;
    for (long p : small_primes()) {
        Int pz(p);
        if (f.leading() % pz == 0) continue;
        ModFactorization cand = mod_factor(f, pz, seed);
        if (!cand.squarefree) continue;
        if (!have || cand.factors.size() < best.factors.size()) {
            best = cand;
            have = true;
        }
        if (++tried >= 5 || best.factors.size() == 1) break;
    }
    if (!have) throw std::runtime_error("zassenhaus: no usable prime found");
    if (best.factors.size() == 1) return {f};

    Int bound = subfields::pow(Int(2), static_cast<unsigned long>(n)) *
                (isqrt(Int(n + 1) * f.max_abs_coeff() * f.max_abs_coeff()) + 1) *
                subfields::abs(f.leading());
    long a = 1;
    Int pa = best.prime;
    while (pa <= 2 * bound) {
        pa *= best.prime;
        ++a;
    }
    ModFactorization lifted = hensel_lift(best, a);
    const Int m = lifted.modulus();

    std::vector<ModPoly> pool;
    for (const auto& [g, e] : lifted.factors) pool.push_back(g);

    std::vector<IntPoly> out;
    IntPoly rest = f;
    long budget = subset_budget;

    // Subsets in increasing cardinality; indices into pool.
    long card = 1;
    while (!pool.empty() && 2 * card <= static_cast<long>(pool.size())) {
        bool found = false;
        std::vector<std::size_t> idx(card);
        for (long i = 0; i < card; ++i) idx[i] = i;
        const Int rest_tail = rest.leading() * rest[0];
        while (true) {
            if (--budget < 0) throw std::runtime_error("recombination budget exceeded");
            // Tail filter: constant coefficient of a true candidate divides lc*f(0).
            Int c0 = mod(rest.leading(), m);
            for (std::size_t i : idx) c0 = mod(c0 * pool[i][0], m);
            c0 = symmetric_mod(c0, m);
            if (c0 != 0 && rest_tail % c0 != 0) {
                long pos = card - 1;
                while (pos >= 0 && idx[pos] == pool.size() - card + pos) --pos;
                if (pos < 0) break;
                ++idx[pos];
                for (long j = pos + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
                continue;
            }
            // Candidate factor lc(rest) * prod pool[idx], symmetric lift.
            ModPoly prod = ModPoly::constant(mod(rest.leading(), m), m);
            for (std::size_t i : idx) prod = prod * pool[i];
            IntPoly cand = prod.to_int_poly_symmetric().primitive_part();
            if (!cand.is_zero() && divides(cand, rest)) {
                out.push_back(cand);
                rest = exact_div(rest, cand);
                std::vector<ModPoly> remaining;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end())
                        remaining.push_back(pool[i]);
                pool = std::move(remaining);
                found = true;
                break;
            }
            // Next subset of the same cardinality.
            long pos = card - 1;
            while (pos >= 0 && idx[pos] == pool.size() - card + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (long j = pos + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++card;
    }
    if (rest.degree() > 0) out.push_back(rest.primitive_part());
    return out;
}

}  // namespace detail

/**
 * Irreducible factorization over Z with multiplicities;
 * content * prod factors^mult equals the input exactly.
 */
inline ZFactorization factor_over_Z(const IntPoly& f, std::uint64_t seed = 0,
                                    long subset_budget = 1L << 20) {
    if (f.is_zero()) throw std::invalid_argument("factor_over_Z: zero polynomial");
    ZFactorization out;
    out.content = f.content();
    if (f.leading() < 0) out.content = -out.content;
    if (f.degree() == 0) return out;
    IntPoly prim = f.primitive_part();
    for (const auto& [part, mult] : detail::squarefree_decompose_z(prim)) {
        for (const IntPoly& irr : detail::zassenhaus_squarefree(part, seed, subset_budget))
            out.factors.emplace_back(irr, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (long i = a.first.degree(); i >= 0; --i)
            if (a.first[i] != b.first[i]) return a.first[i] < b.first[i];
        return a.second < b.second;
    });
    return out;
}

inline bool is_irreducible_over_Z(const IntPoly& f, std::uint64_t seed = 0) {
    if (f.degree() < 1) return false;
    ZFactorization z = factor_over_Z(f, seed);
    return z.factors.size() == 1 && z.factors[0].second == 1;
}

}  // namespace subfields

#endif  // SUBFIELDS_FACTOR_INT_HPP
