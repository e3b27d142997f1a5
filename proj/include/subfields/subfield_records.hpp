#ifndef SUBFIELDS_SUBFIELD_RECORDS_HPP
#define SUBFIELDS_SUBFIELD_RECORDS_HPP

/**
 * @file subfield_records.hpp
 * @brief Block systems <-> explicit subfields: non-degenerate block
 *        invariants, defining-polynomial reconstruction from p-adic
 *        approximations, embeddings by quadratic Newton lifting with the
 *        f'(beta) denominator trick, confirmation of candidate systems,
 *        and the resultant route to all principal congruences.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "subfields/block_systems.hpp"
#include "subfields/factor_int.hpp"
#include "subfields/int_poly.hpp"
#include "subfields/padic.hpp"

namespace subfields {

struct SubfieldRecord {
    IntPoly g;            ///< defining polynomial of the subfield, degree m
    RatPoly h;            ///< embedding alpha -> h(beta), degree < n
    BlockSystem blocks;   ///< m blocks of size n/m
    bool principal_proven = false;
    Int invariant_shift = 0;

    long degree() const { return g.degree(); }
};

struct ConfirmConfig {
    long shift_cap_factor = 4;   ///< invariant search tries s <= factor * n^2
    long precision_exponent_cap = 1 << 14;
    Int headroom_denominator = 1000000;  ///< accept a guess below p^2^k / this
};

namespace detail {

/// h evaluated at a ring element; coefficient denominators must be units.
inline ZqRing::Elem eval_rat_poly(const ZqRing& ring, const RatPoly& h, const ZqRing::Elem& x) {
    ZqRing::Elem acc = ring.zero();
    for (long i = h.degree(); i >= 0; --i) {
        const Rat& c = h[i];
        Int num = mod(c.get_num(), ring.modulus());
        Int den_inv = invmod(c.get_den(), ring.modulus());
        acc = ring.add(ring.mul(acc, x), ring.from_int(num * den_inv));
    }
    return acc;
}

/// Product over one block of (r_i - s).
inline ZqRing::Elem block_product(const ZqRing& ring, const std::vector<ZqRing::Elem>& roots,
                                  const std::vector<int>& block, const Int& s) {
    ZqRing::Elem acc = ring.one();
    ZqRing::Elem shift = ring.from_int(mod(-s, ring.modulus()));
    for (int i : block) acc = ring.mul(acc, ring.add(roots[i], shift));
    return acc;
}

inline std::vector<ZqRing::Elem> roots_at_precision(const SplittingContext& ctx, long a) {
    Int m = subfields::pow(ctx.prime, static_cast<unsigned long>(a));
    std::vector<ZqRing::Elem> out;
    out.reserve(ctx.roots.size());
    for (const auto& r : ctx.roots) out.push_back(r.with_modulus(m));
    return out;
}

/// Smallest a with p^a > bound.
inline long precision_for(const Int& p, const Rat& bound) {
    Int target = bound.get_num() / bound.get_den() + 1;
    long a = 1;
    Int pa = p;
    while (pa <= target) {
        pa *= p;
        ++a;
    }
    return a;
}

/// Root bound C, per-value bound C' = (C+s)^bs, coefficient bound C'' = (C'+1)^m.
struct ReconstructionBounds {
    Rat root_bound;
    Rat value_bound;
    Rat coeff_bound;
};

inline ReconstructionBounds reconstruction_bounds(const IntPoly& f, const Int& s, long block_size,
                                                  long num_blocks) {
    ReconstructionBounds b;
    b.root_bound = fujiwara_bound(f);
    Rat base = b.root_bound + Rat(subfields::abs(s));
    b.value_bound = 1;
    for (long i = 0; i < block_size; ++i) b.value_bound *= base;
    Rat vb1 = b.value_bound + 1;
    b.coeff_bound = 1;
    for (long i = 0; i < num_blocks; ++i) b.coeff_bound *= vb1;
    return b;
}

/**
 * Proven sup-norm bound for h*f' reduced mod f, via Lagrange interpolation
 * at the roots: n * C' * Vmax * (1+C)^(n-1) / W with Vmax an upper bound
 * for |f'(root)| and W = |disc(f)| / Vmax^(n-1) a lower bound.
 */
inline Int embedding_coeff_bound(const IntPoly& f, const Rat& root_bound, const Rat& value_bound) {
    const long n = f.degree();
    Rat c1 = std::max(Rat(1), root_bound);
    Rat vmax = Rat(f.derivative().one_norm());
    for (long i = 0; i < n - 1; ++i) vmax *= c1;
    Rat vpow = 1;
    for (long i = 0; i < n - 1; ++i) vpow *= vmax;
    Rat w = Rat(subfields::abs(discriminant(f))) / vpow;
    Rat onec = root_bound + 1;
    Rat lag = 1;
    for (long i = 0; i < n - 1; ++i) lag *= onec;
    Rat bound = Rat(n) * value_bound * vmax * lag / w;
    return bound.get_num() / bound.get_den() + 1;
}

}  // namespace detail

/**
 * Smallest shift s >= 0 making the per-block products of (r_i - s)
 * pairwise distinct in the residue field (guaranteed to exist for
 * p > n^2); for smaller p falls back to distinctness at full precision.
 */
inline Int choose_block_invariant(const SplittingContext& ctx, const BlockSystem& blocks,
                                  const ConfirmConfig& config = {}) {
    const long n = ctx.degree();
    const long cap = config.shift_cap_factor * n * n + 1;
    ZqRing residue(ctx.prime, 1, ctx.ring.modulus_poly());
    auto residue_roots = detail::roots_at_precision(ctx, 1);
    const bool large_prime = ctx.prime > n * n;
    for (long s = 0; s <= cap; ++s) {
        auto distinct = [&](const ZqRing& ring, const std::vector<ZqRing::Elem>& roots) {
            std::set<std::vector<Int>> seen;
            for (const auto& blk : blocks.blocks) {
                auto value = detail::block_product(ring, roots, blk, Int(s));
                if (!seen.insert(value.coeffs()).second) return false;
            }
            return true;
        };
        if (distinct(residue, residue_roots)) return Int(s);
        if (!large_prime && distinct(ctx.ring, ctx.roots)) return Int(s);
    }
    throw std::runtime_error("choose_block_invariant: no non-degenerate shift found");
}

/**
 * Reconstruct g = prod_k (X - I_k) from p-adic block products with the
 * proven precision; empty result when a coefficient is not rational or
 * exceeds the bound (the candidate is then not a block system).
 * The context is raised in place when more precision is needed.
 */
inline std::optional<IntPoly> subfield_poly_from_blocks(SplittingContext& ctx,
                                                        const BlockSystem& blocks, const Int& s) {
    const long m = blocks.num_blocks();
    auto bounds = detail::reconstruction_bounds(ctx.f, s, blocks.block_size(), m);
    long needed = detail::precision_for(ctx.prime, 2 * bounds.coeff_bound);
    if (needed > ctx.precision) ctx = raise_precision(ctx, needed);

    const ZqRing& ring = ctx.ring;
    std::vector<ZqRing::Elem> values;
    for (const auto& blk : blocks.blocks)
        values.push_back(detail::block_product(ring, ctx.roots, blk, s));

    // prod_k (X - I_k), coefficients in the extension ring.
    std::vector<ZqRing::Elem> poly{ring.one()};
    for (const auto& v : values) {
        std::vector<ZqRing::Elem> next(poly.size() + 1, ring.zero());
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = ring.add(next[i + 1], poly[i]);
            next[i] = ring.sub(next[i], ring.mul(poly[i], v));
        }
        poly = std::move(next);
    }
    std::vector<Int> coeffs(m + 1);
    Int bound_int = bounds.coeff_bound.get_num() / bounds.coeff_bound.get_den() + 1;
    for (long i = 0; i <= m; ++i) {
        if (poly[i].degree() > 0) return std::nullopt;  // not Frobenius-rational
        Int c = symmetric_mod(poly[i][0], ring.modulus());
        if (abs(c) > bound_int) return std::nullopt;    // bound of Remark 7.6 exceeded
        coeffs[i] = c;
    }
    return IntPoly(std::move(coeffs));
}

/**
 * Embedding h with h(r_i) = I_k for i in B_k: residue-field interpolation
 * followed by the quadratic Newton iteration for a root of g in
 * Z[x]/(f, p^2^k), with the f'(beta) denominator trick and the headroom
 * acceptance heuristic.  Empty result proves the candidate wrong (the
 * reconstruction bound certifies failure).
 */
inline std::optional<RatPoly> embedding_newton(const SplittingContext& ctx, const IntPoly& g,
                                               const BlockSystem& blocks, const Int& s,
                                               const ConfirmConfig& config = {}) {
    const IntPoly& f = ctx.f;
    const long n = f.degree();
    const Int& p = ctx.prime;

    // Residue-field interpolation h0 with h0(r_i) = I_{block(i)} (mod p).
    ZqRing residue(p, 1, ctx.ring.modulus_poly());
    auto rroots = detail::roots_at_precision(ctx, 1);
    std::vector<ZqRing::Elem> value_of_block;
    for (const auto& blk : blocks.blocks)
        value_of_block.push_back(detail::block_product(residue, rroots, blk, s));

    const IntPoly fprime = f.derivative();
    std::vector<ZqRing::Elem> h0(n, residue.zero());
    for (int i = 0; i < n; ++i) {
        ZqRing::Elem denom = residue.eval_poly(fprime, rroots[i]);
        ZqRing::Elem scale = residue.mul(value_of_block[blocks.block_of[i]],
                                         residue.inverse(denom));
        // synthetic division: f / (x - r_i)
        ZqRing::Elem carry = residue.zero();
        for (long j = n; j-- > 0;) {
            carry = residue.add(residue.mul(carry, rroots[i]), residue.from_int(f[j + 1]));
            h0[j] = residue.add(h0[j], residue.mul(scale, carry));
        }
    }
    std::vector<Int> h0_coeffs(n);
    for (int j = 0; j < n; ++j) {
        if (h0[j].degree() > 0) return std::nullopt;  // interpolation not Frobenius-rational
        h0_coeffs[j] = h0[j][0];
    }

    // Newton iteration for a root of g in A = Z[x]/(f, p^2^k).
    ModPoly h(IntPoly(h0_coeffs), p);
    ModPoly fmodp(f, p);
    ModPoly gph(p);  // g'(h0) mod (f, p)
    {
        const IntPoly gd = g.derivative();
        ModPoly acc(p);
        for (long i = gd.degree(); i >= 0; --i)
            acc = mod_rem(acc * h + ModPoly::constant(mod(gd[i], p), p), fmodp);
        gph = acc;
    }
    auto [one, v0, t0] = xgcd(gph, fmodp);
    if (!one.is_one()) return std::nullopt;  // degenerate invariant
    ModPoly v = v0;

    auto bounds = detail::reconstruction_bounds(ctx.f, s, blocks.block_size(), blocks.num_blocks());
    const Int emb_bound = detail::embedding_coeff_bound(f, bounds.root_bound, bounds.value_bound);
    const RatPoly inv_fprime = invert_mod(RatPoly::from_int(fprime), f);

    auto compose_int_mod = [&](const IntPoly& poly, const ModPoly& x, const ModPoly& modf) {
        ModPoly acc(x.modulus());
        for (long i = poly.degree(); i >= 0; --i)
            acc = mod_rem(acc * x + ModPoly::constant(mod(poly[i], x.modulus()), x.modulus()),
                          modf);
        return acc;
    };
    auto try_guess = [&](const ModPoly& hk, const ModPoly& modf) -> std::optional<RatPoly> {
        ModPoly big = mod_rem(hk * ModPoly(fprime, hk.modulus()), modf);
        IntPoly cand = big.to_int_poly_symmetric();
        RatPoly h_rat = (RatPoly::from_int(cand) * inv_fprime).mod(f);
        if (compose_mod(g, h_rat, f).is_zero()) return h_rat;
        return std::nullopt;
    };

    long exponent = 1;
    while (true) {
        long next = 2 * exponent;
        if (next > config.precision_exponent_cap)
            throw std::runtime_error("embedding_newton: precision ceiling exceeded");
        Int mnext = subfields::pow(p, static_cast<unsigned long>(next));
        ModPoly modf(f, mnext);
        ModPoly hn = h.with_modulus(mnext);
        ModPoly vn = v.with_modulus(mnext);
        ModPoly gh = compose_int_mod(g, hn, modf);
        ModPoly h2 = hn - mod_rem(gh * vn, modf);
        // v refreshed against the new h: keeps the residual doubling per
        // step, which the proven-precision cutoff below relies on.
        ModPoly gdh = compose_int_mod(g.derivative(), h2, modf);
        ModPoly e = mod_rem(gdh * vn, modf) - ModPoly::constant(1, mnext);
        ModPoly v2 = vn - mod_rem(e * vn, modf);
        h = h2;
        v = v2;
        exponent = next;

        // Guess when the integral representative has visible headroom.
        ModPoly big = mod_rem(h * ModPoly(fprime, mnext), modf);
        Int max_coeff = big.to_int_poly_symmetric().max_abs_coeff();
        if (max_coeff * config.headroom_denominator <= mnext) {
            if (auto got = try_guess(h, modf)) return got;
        }
        if (mnext > 2 * emb_bound) {
            // Proven precision reached: the representative is decisive.
            if (max_coeff > emb_bound) return std::nullopt;
            return try_guess(h, modf);  // nullopt here disproves the candidate
        }
    }
}

/**
 * Full confirmation of a candidate block system (Remark-7.6 style):
 * Frobenius invariance, invariant choice, bounded reconstruction of g,
 * embedding with exact final check.  Empty result means proven failure.
 */
inline std::optional<SubfieldRecord> confirm_block_system(SplittingContext& ctx,
                                                          const BlockSystem& blocks,
                                                          const ConfirmConfig& config = {}) {
    const long n = ctx.degree();
    if (blocks.n != n || !blocks.equal_sized()) return std::nullopt;
    if (static_cast<long>(blocks.num_blocks()) * blocks.block_size() != n) return std::nullopt;
    // A true block system of the Galois group is Frobenius-invariant.
    Permutation frob{std::vector<int>(ctx.frobenius)};
    if (!blocks.invariant_under(frob)) return std::nullopt;

    Int s;
    try {
        s = choose_block_invariant(ctx, blocks, config);
    } catch (const std::runtime_error&) {
        return std::nullopt;
    }
    auto g = subfield_poly_from_blocks(ctx, blocks, s);
    if (!g) return std::nullopt;
    auto h = embedding_newton(ctx, *g, blocks, s, config);
    if (!h) return std::nullopt;

    SubfieldRecord rec;
    rec.g = *g;
    rec.h = *h;
    rec.blocks = blocks;
    rec.invariant_shift = s;
    return rec;
}

inline bool verify_record(SplittingContext& ctx, const SubfieldRecord& rec);

/**
 * Verification entry point for a candidate triple: exact algebra plus
 * block consistency; a record on success, nothing on failure.
 */
inline std::optional<SubfieldRecord> verify_and_confirm(SplittingContext& ctx, const IntPoly& f,
                                                        const IntPoly& g, const RatPoly& h,
                                                        const BlockSystem& blocks,
                                                        const Int& shift = 0) {
    if (!(ctx.f == f)) throw std::invalid_argument("verify_and_confirm: context mismatch");
    SubfieldRecord rec;
    rec.g = g;
    rec.h = h;
    rec.blocks = blocks;
    rec.invariant_shift = shift;
    if (!verify_record(ctx, rec)) return std::nullopt;
    return rec;
}

/**
 * Independent verification of a finished record: exact algebra
 * (g(h) = 0 mod f, h*f' integral, coefficient bounds) and block
 * consistency at increasing block-identification precision.
 */
inline bool verify_record(SplittingContext& ctx, const SubfieldRecord& rec) {
    const IntPoly& f = ctx.f;
    const long n = f.degree();
    if (rec.g.degree() * rec.blocks.block_size() != n) return false;
    if (!compose_mod(rec.g, rec.h, f).is_zero()) return false;
    RatPoly hf = (rec.h * RatPoly::from_int(f.derivative())).mod(f);
    if (hf.denominator() != 1) return false;
    auto bounds =
        detail::reconstruction_bounds(f, rec.invariant_shift, rec.blocks.block_size(),
                                      rec.blocks.num_blocks());
    Int cbound = bounds.coeff_bound.get_num() / bounds.coeff_bound.get_den() + 1;
    if (rec.g.max_abs_coeff() > cbound) return false;
    Int ebound = detail::embedding_coeff_bound(f, bounds.root_bound, bounds.value_bound);
    auto [hf_int, den] = hf.to_integral();
    if (hf_int.max_abs_coeff() > ebound) return false;

    // Block consistency via value grouping, raising pr_B on coarseness.
    long pr_b = 1;
    while (true) {
        if (pr_b > ctx.precision) ctx = raise_precision(ctx, pr_b);
        ZqRing ring(ctx.prime, pr_b, ctx.ring.modulus_poly());
        auto roots = detail::roots_at_precision(ctx, pr_b);
        std::vector<std::vector<Int>> values;
        for (const auto& r : roots)
            values.push_back(detail::eval_rat_poly(ring, rec.h, r).coeffs());
        auto [kind, grouped] = classify_value_grouping(values, rec.blocks.num_blocks());
        if (kind == ValueGrouping::kNotASystem) return false;
        if (kind == ValueGrouping::kExact) return *grouped == rec.blocks;
        pr_b *= 2;
        if (pr_b > (1 << 12)) return false;
    }
}

// ---------------------------------------------------------------------------
// Principal congruences through the pair resultant.

namespace detail {

/// Power sums p_1..p_count of the roots of monic f (Newton's identities).
inline std::vector<Int> power_sums(const IntPoly& f, long count) {
    const long n = f.degree();
    std::vector<Int> p(count + 1, Int(0));
    for (long k = 1; k <= count; ++k) {
        Int acc = k <= n ? Int(k) * f[n - k] : Int(0);
        for (long i = 1; i < k && i <= n; ++i) acc += f[n - i] * p[k - i];
        p[k] = -acc;
    }
    return std::vector<Int>(p.begin() + 1, p.end());
}

/// Monic polynomial of degree d with the given power sums (inverse Newton).
inline IntPoly from_power_sums(const std::vector<Int>& sums, long d) {
    std::vector<Int> e(d + 1, Int(0));
    e[0] = 1;
    for (long k = 1; k <= d; ++k) {
        Int acc = 0;
        for (long i = 1; i <= k; ++i) {
            Int term = e[k - i] * sums[i - 1];
            acc += (i % 2 == 1) ? term : -term;
        }
        assert(acc % k == 0);
        e[k] = acc / k;
    }
    std::vector<Int> coeffs(d + 1);
    for (long k = 0; k <= d; ++k) coeffs[d - k] = (k % 2 == 0) ? e[k] : -e[k];
    return IntPoly(std::move(coeffs));
}

/// prod_i (X - gamma_i^2) for monic f with roots gamma (Graeffe step).
inline IntPoly graeffe_squares(const IntPoly& f) {
    const long n = f.degree();
    IntPoly fneg = f;
    {
        std::vector<Int> c = f.coeffs();
        for (long i = 0; i <= n; ++i)
            if (i % 2 == 1) c[i] = -c[i];
        fneg = IntPoly(std::move(c));
    }
    IntPoly prod = f * fneg;
    std::vector<Int> even(n + 1);
    for (long i = 0; i <= n; ++i) even[i] = prod[2 * i];
    IntPoly q(std::move(even));
    if (n % 2 == 1) q = Int(-1) * q;
    return q;
}

/// Res2(X) = prod_{i<j} (X - gamma_i gamma_j) for monic squarefree f.
inline IntPoly pair_resultant(const IntPoly& f) {
    const long n = f.degree();
    const long full_degree = n * n;
    std::vector<Int> p = power_sums(f, full_degree);
    std::vector<Int> q(full_degree);
    for (long k = 0; k < full_degree; ++k) q[k] = p[k] * p[k];
    IntPoly full = from_power_sums(q, full_degree);  // prod over ordered pairs (i,j)
    IntPoly diag = graeffe_squares(f);
    IntPoly square = exact_div(full, diag);
    auto root = poly_exact_sqrt(square);
    if (!root) throw std::logic_error("pair_resultant: square extraction failed");
    return *root;
}

/// One modular certificate of squarefreeness.
inline bool certify_squarefree(const IntPoly& f) {
    int tried = 0;
    for (long pl : small_primes()) {
        Int p(pl);
        if (f.leading() % p == 0) continue;
        ModPoly fp(f, p);
        if (gcd(fp, fp.derivative()).degree() == 0) return true;
        if (++tried >= 25) break;
    }
    return false;
}

}  // namespace detail

/**
 * All principal congruences by factoring the pair resultant: find a shift
 * with squarefree Res2, factor it over Z, identify each factor's pair set
 * p-adically at the context roots, and close the relations.  One-block
 * closures are kept (they are genuine principal congruences); the
 * all-singleton partition cannot arise.
 */
inline std::vector<BlockSystem> res2_principal_congruences(const IntPoly& f,
                                                           SplittingContext& ctx,
                                                           std::uint64_t seed = 0) {
    const long n = f.degree();
    if (!f.is_monic()) throw std::invalid_argument("res2_principal_congruences: f must be monic");
    if (n < 2) return {};

    IntPoly res2;
    long shift = -1;
    for (long s = 0; s <= n * n; ++s) {
        // gamma_i = beta_i + s are the roots of f(x - s)
        IntPoly fs = f.shift_argument(Int(-s));
        IntPoly cand = detail::pair_resultant(fs);
        if (detail::certify_squarefree(cand)) {
            res2 = cand;
            shift = s;
            break;
        }
    }
    if (shift < 0) throw std::runtime_error("res2_principal_congruences: no squarefree shift");

    ZFactorization zf = factor_over_Z(res2, seed);

    // Identify the pairs belonging to each irreducible factor at the
    // context roots; raise precision until every pair selects one factor.
    while (true) {
        const ZqRing& ring = ctx.ring;
        std::vector<ZqRing::Elem> shifted;
        ZqRing::Elem sh = ring.from_int(Int(shift));
        for (const auto& r : ctx.roots) shifted.push_back(ring.add(r, sh));
        std::vector<std::vector<std::pair<int, int>>> pair_sets(zf.factors.size());
        bool ambiguous = false;
        for (int i = 0; i < n && !ambiguous; ++i) {
            for (int j = i + 1; j < n && !ambiguous; ++j) {
                ZqRing::Elem v = ring.mul(shifted[i], shifted[j]);
                int hits = 0, which = -1;
                for (std::size_t t = 0; t < zf.factors.size(); ++t) {
                    if (ring.eval_poly(zf.factors[t].first, v).is_zero()) {
                        ++hits;
                        which = static_cast<int>(t);
                    }
                }
                if (hits != 1) {
                    ambiguous = true;
                    break;
                }
                pair_sets[which].emplace_back(i, j);
            }
        }
        if (ambiguous) {
            ctx = raise_precision(ctx, 2 * ctx.precision);
            continue;
        }
        std::set<BlockSystem> out;
        for (const auto& pairs : pair_sets) {
            if (pairs.empty()) continue;
            detail::UnionFind uf(n);
            for (auto [i, j] : pairs) uf.unite(i, j);
            std::vector<int> cls(n);
            for (int i = 0; i < n; ++i) cls[i] = uf.find(i);
            BlockSystem b(n, cls);
            if (b.block_size() >= 2 && b.equal_sized()) out.insert(b);
        }
        return std::vector<BlockSystem>(out.begin(), out.end());
    }
}

}  // namespace subfields

#endif  // SUBFIELDS_SUBFIELD_RECORDS_HPP
