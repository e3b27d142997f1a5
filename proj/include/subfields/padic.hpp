#ifndef SUBFIELDS_PADIC_HPP
#define SUBFIELDS_PADIC_HPP

/**
 * @file padic.hpp
 * @brief The p-adic splitting context: an unramified extension
 *        Z[t]/(w, p^a) holding approximations of all roots of f,
 *        with Newton precision raising and the Frobenius permutation.
 *
 * The extension degree d is the lcm of the degrees of the irreducible
 * factors of f mod p.  Elements are polynomials in t of degree < d with
 * coefficients in [0, p^a).  Root order is canonical: residues mod p are
 * encoded as sum c_j p^j and sorted, so runs are reproducible.
 */

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "subfields/mod_poly.hpp"

namespace subfields {

/// Element arithmetic for Z[t]/(w(t), p^a).
class ZqRing {
public:
    ZqRing() = default;
    ZqRing(Int prime, long precision, IntPoly modulus_poly)
        : p_(std::move(prime)),
          a_(precision),
          w_(std::move(modulus_poly)),
          m_(subfields::pow(p_, static_cast<unsigned long>(precision))) {}

    using Elem = ModPoly;  // degree < deg w, coefficients mod p^a

    const Int& prime() const { return p_; }
    long precision() const { return a_; }
    const Int& modulus() const { return m_; }
    const IntPoly& modulus_poly() const { return w_; }
    long ext_degree() const { return w_.degree(); }

    Elem zero() const { return ModPoly(m_); }
    Elem one() const { return ModPoly::constant(1, m_); }
    Elem from_int(const Int& v) const { return ModPoly::constant(v, m_); }
    Elem generator() const { return mod_w(ModPoly::x(m_)); }

    Elem add(const Elem& x, const Elem& y) const { return x + y; }
    Elem sub(const Elem& x, const Elem& y) const { return x - y; }
    Elem mul(const Elem& x, const Elem& y) const { return mod_w(x * y); }

    Elem mod_w(const ModPoly& x) const {
        if (x.degree() < w_.degree()) return x;
        return divmod(x, ModPoly(w_, x.modulus())).second;
    }

    /// Inverse via mod-p xgcd and Newton lifting; requires x a unit.
    Elem inverse(const Elem& x) const {
        ModPoly xp = x.with_modulus(p_);
        auto [g, s, t] = xgcd(xp, ModPoly(w_, p_));
        if (!g.is_one()) throw std::domain_error("ZqRing::inverse: not a unit");
        Elem v = s;  // x*v = 1 (mod p)
        long k = 1;
        while (k < a_) {
            long next = std::min(2 * k, a_);
            Int mk = subfields::pow(p_, static_cast<unsigned long>(next));
            ZqRing rk(p_, next, w_);
            Elem vk = v.with_modulus(mk);
            Elem xk = x.with_modulus(mk);
            v = rk.mul(vk, rk.sub(rk.from_int(2), rk.mul(xk, vk)));
            k = next;
        }
        return v.with_modulus(m_);
    }

    Elem eval_poly(const IntPoly& f, const Elem& x) const {
        Elem acc = zero();
        for (long i = f.degree(); i >= 0; --i) acc = add(mul(acc, x), from_int(f[i]));
        return acc;
    }

    /// Substitute u for t: (sum c_j t^j) -> sum c_j u^j.
    Elem substitute(const Elem& value, const Elem& u) const {
        Elem acc = zero();
        for (long i = value.degree(); i >= 0; --i)
            acc = add(mul(acc, u), from_int(value[i]));
        return acc;
    }

    /// Encoding of the mod-p reduction as sum c_j p^j (canonical root order).
    Int residue_code(const Elem& x) const {
        Int code = 0;
        for (long j = ext_degree() - 1; j >= 0; --j) code = code * p_ + mod(x[j], p_);
        return code;
    }

private:
    Int p_;
    long a_ = 1;
    IntPoly w_;
    Int m_;
};

namespace detail {

/// Polynomials over F_q = F_p[t]/(w, p); minimal gcd/powering for root finding.
struct FqPoly {
    const ZqRing* ring = nullptr;  // precision-1 ring
    std::vector<ZqRing::Elem> c;   // c[i] = coefficient of y^i

    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
};

inline FqPoly fq_mul(const FqPoly& a, const FqPoly& b) {
    FqPoly r{a.ring, {}};
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, a.ring->zero());
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = a.ring->add(r.c[i + j], a.ring->mul(a.c[i], b.c[j]));
    r.trim();
    return r;
}

inline FqPoly fq_rem(const FqPoly& a, const FqPoly& b) {
    FqPoly r = a;
    const long db = b.degree();
    ZqRing::Elem lb_inv = a.ring->inverse(b.c.back());
    for (long i = r.degree(); i >= db; --i) {
        if (r.c[i].is_zero()) continue;
        ZqRing::Elem q = a.ring->mul(r.c[i], lb_inv);
        for (long j = 0; j <= db; ++j)
            r.c[i - db + j] = a.ring->sub(r.c[i - db + j], a.ring->mul(q, b.c[j]));
    }
    r.trim();
    return r;
}

inline FqPoly fq_gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = fq_rem(a, b);
        a = b;
        b = r;
    }
    if (!a.is_zero()) {
        ZqRing::Elem inv = a.ring->inverse(a.c.back());
        for (auto& v : a.c) v = a.ring->mul(v, inv);
    }
    return a;
}

inline FqPoly fq_powmod(const FqPoly& base, Int e, const FqPoly& f) {
    FqPoly r{base.ring, {base.ring->one()}};
    FqPoly b = fq_rem(base, f);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fq_rem(fq_mul(r, b), f);
        b = fq_rem(fq_mul(b, b), f);
        e >>= 1;
    }
    return r;
}

/// All roots in F_q of a squarefree g that splits completely (p odd).
inline void fq_roots(const ZqRing& ring, const FqPoly& g, Rng& rng,
                     std::vector<ZqRing::Elem>& out) {
    if (g.degree() == 0) return;
    if (g.degree() == 1) {
        ZqRing::Elem inv = ring.inverse(g.c[1]);
        out.push_back(ring.mul(ring.sub(ring.zero(), g.c[0]), inv));
        return;
    }
    const Int q = subfields::pow(ring.prime(), static_cast<unsigned long>(ring.ext_degree()));
    for (int attempt = 0; attempt < 128; ++attempt) {
        // shift y -> y + c with random c in F_q
        std::vector<Int> cc(ring.ext_degree());
        for (auto& v : cc) v = rng.next_int_below(ring.prime());
        ZqRing::Elem shift = ring.mod_w(ModPoly(std::move(cc), ring.modulus()));
        FqPoly lin{&ring, {shift, ring.one()}};
        FqPoly t = fq_powmod(lin, (q - 1) / 2, g);
        if (t.is_zero()) continue;
        t.c[0] = ring.sub(t.c[0], ring.one());
        t.trim();
        FqPoly h = fq_gcd(t, g);
        if (h.is_zero() || h.degree() == 0 || h.degree() == g.degree()) continue;
        // g = h * (g/h): recurse on both parts
        FqPoly quot{&ring, {}};
        {
            // exact division g / h
            FqPoly r = g;
            const long dh = h.degree();
            quot.c.assign(g.c.size() - h.c.size() + 1, ring.zero());
            ZqRing::Elem lh_inv = ring.inverse(h.c.back());
            for (long i = r.degree(); i >= dh; --i) {
                if (r.c[i].is_zero()) continue;
                ZqRing::Elem qq = ring.mul(r.c[i], lh_inv);
                quot.c[i - dh] = qq;
                for (long j = 0; j <= dh; ++j)
                    r.c[i - dh + j] = ring.sub(r.c[i - dh + j], ring.mul(qq, h.c[j]));
            }
            quot.trim();
        }
        fq_roots(ring, h, rng, out);
        fq_roots(ring, quot, rng, out);
        return;
    }
    throw std::runtime_error("fq_roots: retry cap exceeded");
}

/// Monic irreducible of degree d mod p: a factor of f when one exists,
/// otherwise a seeded random search.
inline IntPoly choose_extension_poly(const ModFactorization& fac, long d, Rng& rng) {
    for (const auto& [g, e] : fac.factors)
        if (g.degree() == d) return g.to_int_poly();
    const Int& p = fac.prime;
    if (d == 1) return IntPoly::x();
    for (int attempt = 0; attempt < 4096; ++attempt) {
        std::vector<Int> c(d + 1);
        for (long i = 0; i < d; ++i) c[i] = rng.next_int_below(p);
        c[d] = 1;
        IntPoly cand(std::move(c));
        ModPoly candp(cand, p);
        // irreducible iff x^(p^d) = x mod cand and gcd(x^(p^(d/l)) - x, cand) = 1
        ModPoly xp = ModPoly::x(p);
        std::vector<ModPoly> powers;  // x^(p^k) mod cand for k = 1..d
        ModPoly cur = xp;
        bool ok = true;
        for (long k = 1; k <= d; ++k) {
            cur = powmod(cur, p, candp);
            powers.push_back(cur);
        }
        if (!(powers[d - 1] == mod_rem(xp, candp))) continue;
        for (long l = 2; l <= d && ok; ++l) {
            if (d % l != 0) continue;
            bool lprime = true;
            for (long t = 2; t * t <= l; ++t)
                if (l % t == 0) lprime = false;
            if (!lprime) continue;
            ModPoly g = gcd(powers[d / l - 1] - xp, candp);
            if (g.degree() != 0) ok = false;
        }
        if (ok) return cand;
    }
    throw std::runtime_error("choose_extension_poly: search failed");
}

}  // namespace detail

/**
 * The p_s-adic splitting context.  Invariants: f(r_i) = 0 (mod p^a),
 * roots pairwise distinct mod p, Frob(r_i) = r_{frobenius[i]}.
 */
struct SplittingContext {
    IntPoly f;
    Int prime;
    long ext_degree = 1;
    long precision = 1;
    ZqRing ring;
    std::vector<ZqRing::Elem> roots;   // canonical order
    std::vector<int> frobenius;        // 0-based images

    long degree() const { return f.degree(); }

    /// Frobenius applied to an arbitrary ring element.
    ZqRing::Elem frobenius_map(const ZqRing::Elem& x) const {
        return ring.substitute(x, frob_gen_image);
    }

    ZqRing::Elem frob_gen_image;  // image of t under Frobenius at current precision
};

namespace detail {

/// Newton-lift a simple root of f from precision 1 to the ring's precision.
inline ZqRing::Elem newton_lift_root(const IntPoly& f, const ZqRing& target,
                                     const ZqRing::Elem& root_mod_p) {
    const Int& p = target.prime();
    long k = 1;
    ZqRing::Elem r = root_mod_p;
    while (k < target.precision()) {
        long next = std::min(2 * k, target.precision());
        ZqRing rk(p, next, target.modulus_poly());
        ZqRing::Elem rn = r.with_modulus(rk.modulus());
        ZqRing::Elem fv = rk.eval_poly(f, rn);
        ZqRing::Elem dv = rk.eval_poly(f.derivative(), rn);
        r = rk.sub(rn, rk.mul(fv, rk.inverse(dv)));
        k = next;
    }
    return r;
}

/// Image of t under Frobenius: the root of w congruent to t^p mod p.
inline ZqRing::Elem frobenius_generator_image(const ZqRing& ring) {
    const IntPoly& w = ring.modulus_poly();
    ZqRing r1(ring.prime(), 1, w);
    ZqRing::Elem u0 = powmod(ModPoly::x(ring.prime()), ring.prime(), ModPoly(w, ring.prime()));
    return newton_lift_root(w, ring, u0);
}

}  // namespace detail

/**
 * Build the splitting context for f at an unramified odd prime.
 * Rejects with "bad prime" if p divides lc(f)*disc(f) (detected via a
 * non-squarefree reduction) or if p = 2.
 */
inline SplittingContext build_splitting_context(const IntPoly& f, const Int& p, long precision,
                                                std::uint64_t seed = 0) {
    if (f.degree() < 1) throw std::invalid_argument("build_splitting_context: constant f");
    if (p == 2) throw std::invalid_argument("bad prime");  // odd residue arithmetic only
    if (f.leading() % p == 0) throw std::invalid_argument("bad prime");
    ModFactorization fac = mod_factor(f, p, seed);
    if (!fac.squarefree) throw std::invalid_argument("bad prime");

    long d = 1;
    for (const auto& [g, e] : fac.factors) d = std::lcm(d, g.degree());

    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    IntPoly w = detail::choose_extension_poly(fac, d, rng);

    SplittingContext ctx;
    ctx.f = f;
    ctx.prime = p;
    ctx.ext_degree = d;
    ctx.precision = precision;
    ctx.ring = ZqRing(p, precision, w);

    // Roots in the residue field, canonically ordered.
    ZqRing r1(p, 1, w);
    std::vector<ZqRing::Elem> residue_roots;
    for (const auto& [g, e] : fac.factors) {
        detail::FqPoly gf{&r1, {}};
        for (long i = 0; i <= g.degree(); ++i) gf.c.push_back(r1.from_int(g[i]));
        detail::fq_roots(r1, gf, rng, residue_roots);
    }
    if (static_cast<long>(residue_roots.size()) != f.degree())
        throw std::runtime_error("build_splitting_context: root count mismatch");
    std::sort(residue_roots.begin(), residue_roots.end(),
              [&](const ZqRing::Elem& a, const ZqRing::Elem& b) {
                  return r1.residue_code(a) < r1.residue_code(b);
              });

    for (const auto& r : residue_roots)
        ctx.roots.push_back(detail::newton_lift_root(f, ctx.ring, r));

    // Frobenius permutation: match Frob(r_i) against the root list mod p.
    ctx.frob_gen_image = detail::frobenius_generator_image(ctx.ring);
    std::vector<Int> codes;
    for (const auto& r : residue_roots) codes.push_back(r1.residue_code(r));
    ctx.frobenius.resize(ctx.roots.size());
    for (std::size_t i = 0; i < ctx.roots.size(); ++i) {
        ZqRing::Elem img = ctx.frobenius_map(ctx.roots[i]);
        Int code = ctx.ring.residue_code(img);
        auto it = std::lower_bound(codes.begin(), codes.end(), code);
        if (it == codes.end() || *it != code)
            throw std::runtime_error("build_splitting_context: Frobenius image not a root");
        ctx.frobenius[i] = static_cast<int>(it - codes.begin());
    }
    return ctx;
}

/// Newton-lift every root to precision a2 >= current; same canonical order.
inline SplittingContext raise_precision(const SplittingContext& ctx, long a2) {
    if (a2 < ctx.precision) throw std::invalid_argument("raise_precision: lower target");
    if (a2 == ctx.precision) return ctx;
    SplittingContext out = ctx;
    out.precision = a2;
    out.ring = ZqRing(ctx.prime, a2, ctx.ring.modulus_poly());
    out.roots.clear();
    for (const auto& r : ctx.roots) {
        // continue Newton from the current precision
        long k = ctx.precision;
        ZqRing::Elem cur = r;
        while (k < a2) {
            long next = std::min(2 * k, a2);
            ZqRing rk(ctx.prime, next, ctx.ring.modulus_poly());
            ZqRing::Elem rn = cur.with_modulus(rk.modulus());
            ZqRing::Elem fv = rk.eval_poly(ctx.f, rn);
            ZqRing::Elem dv = rk.eval_poly(ctx.f.derivative(), rn);
            cur = rk.sub(rn, rk.mul(fv, rk.inverse(dv)));
            k = next;
        }
        out.roots.push_back(cur);
    }
    out.frob_gen_image = detail::frobenius_generator_image(out.ring);
    return out;
}

/// Reduce a context to a lower precision (for tests and block values).
inline SplittingContext reduce_precision(const SplittingContext& ctx, long a2) {
    if (a2 > ctx.precision) throw std::invalid_argument("reduce_precision: higher target");
    if (a2 == ctx.precision) return ctx;
    SplittingContext out = ctx;
    out.precision = a2;
    out.ring = ZqRing(ctx.prime, a2, ctx.ring.modulus_poly());
    out.roots.clear();
    Int m = out.ring.modulus();
    for (const auto& r : ctx.roots) out.roots.push_back(r.with_modulus(m));
    out.frob_gen_image = ctx.frob_gen_image.with_modulus(m);
    return out;
}

/// Default starting precision: 20 + 2 * ceil(log_p ||f||_inf).
inline long default_initial_precision(const IntPoly& f, const Int& p) {
    Int norm = f.max_abs_coeff();
    long l = 0;
    Int pk = 1;
    while (pk < norm) {
        pk *= p;
        ++l;
    }
    return 20 + 2 * l;
}

/// The permutation sigma with Frob(r_i) = r_sigma(i).
inline std::vector<int> frobenius_permutation(const SplittingContext& ctx) {
    return ctx.frobenius;
}

/// Cycle type of the Frobenius permutation (sorted ascending).
inline std::vector<long> frobenius_cycle_type(const SplittingContext& ctx) {
    std::vector<long> type;
    std::vector<bool> seen(ctx.frobenius.size(), false);
    for (std::size_t i = 0; i < ctx.frobenius.size(); ++i) {
        if (seen[i]) continue;
        long len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(ctx.frobenius[j]);
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.begin(), type.end());
    return type;
}

}  // namespace subfields

#endif  // SUBFIELDS_PADIC_HPP
