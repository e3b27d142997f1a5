#ifndef SUBFIELDS_MOD_POLY_HPP
#define SUBFIELDS_MOD_POLY_HPP

/**
 * @file mod_poly.hpp
 * @brief Polynomials over Z/p^a: arithmetic, factorization mod p
 *        (squarefree split, distinct degree, Cantor-Zassenhaus) and
 *        multifactor quadratic Hensel lifting.
 */

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subfields/int_poly.hpp"
#include "subfields/integers.hpp"

namespace subfields {

class ModPoly {
public:
    ModPoly() : m_(0) {}
    explicit ModPoly(Int modulus) : m_(std::move(modulus)) {}
    ModPoly(std::vector<Int> coeffs, Int modulus) : m_(std::move(modulus)), c_(std::move(coeffs)) {
        reduce_all();
    }
    ModPoly(const IntPoly& p, Int modulus) : m_(std::move(modulus)), c_(p.coeffs()) { reduce_all(); }

    static ModPoly x(const Int& m) { return ModPoly(std::vector<Int>{Int(0), Int(1)}, m); }
    static ModPoly constant(const Int& v, const Int& m) {
        return ModPoly(std::vector<Int>{v}, m);
    }

    const Int& modulus() const { return m_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Int& operator[](std::size_t i) const {
        static const Int kZero = 0;
        return i < c_.size() ? c_[i] : kZero;
    }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& leading() const {
        if (c_.empty()) throw std::domain_error("leading of zero");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    IntPoly to_int_poly() const { return IntPoly(std::vector<Int>(c_)); }

    /// Integer lift with coefficients in (-m/2, m/2].
    IntPoly to_int_poly_symmetric() const {
        std::vector<Int> r = c_;
        for (auto& v : r) v = symmetric_mod(v, m_);
        return IntPoly(std::move(r));
    }

    /// Same residues, new modulus (reduction or plain representative lift).
    ModPoly with_modulus(const Int& m) const { return ModPoly(std::vector<Int>(c_), m); }

    friend ModPoly operator+(const ModPoly& a, const ModPoly& b) {
        assert(a.m_ == b.m_);
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return ModPoly(std::move(r), a.m_);
    }
    friend ModPoly operator-(const ModPoly& a, const ModPoly& b) {
        assert(a.m_ == b.m_);
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return ModPoly(std::move(r), a.m_);
    }
    friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
        assert(a.m_ == b.m_);
        if (a.is_zero() || b.is_zero()) return ModPoly(a.m_);
        std::vector<Int> r(a.c_.size() + b.c_.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return ModPoly(std::move(r), a.m_);
    }
    friend ModPoly operator*(const Int& s, const ModPoly& a) {
        std::vector<Int> r = a.c_;
        for (auto& v : r) v *= s;
        return ModPoly(std::move(r), a.m_);
    }
    friend bool operator==(const ModPoly& a, const ModPoly& b) {
        return a.m_ == b.m_ && a.c_ == b.c_;
    }

    Int eval(const Int& x) const {
        Int r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = mod(r * x + *it, m_);
        return r;
    }

    ModPoly derivative() const {
        if (c_.size() <= 1) return ModPoly(m_);
        std::vector<Int> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = Int(static_cast<long>(i)) * c_[i];
        return ModPoly(std::move(r), m_);
    }

    /// Multiply by the inverse of the leading coefficient (must be a unit).
    ModPoly monic() const {
        if (is_zero()) return *this;
        if (is_monic()) return *this;
        Int inv = invmod(leading(), m_);
        return inv * *this;
    }

private:
    void reduce_all() {
        for (auto& v : c_) v = mod(v, m_);
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    Int m_;
    std::vector<Int> c_;
};

/// Quotient/remainder by a divisor whose leading coefficient is a unit.
inline std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("ModPoly divmod: zero divisor");
    const Int& m = a.modulus();
    const long db = b.degree();
    Int lb_inv = invmod(b.leading(), m);
    std::vector<Int> rem(a.coeffs());
    if (a.degree() < db) return {ModPoly(m), a};
    std::vector<Int> quot(a.degree() - db + 1, Int(0));
    for (long i = a.degree(); i >= db; --i) {
        Int c = mod(rem[i] * lb_inv, m);
        if (c == 0) continue;
        quot[i - db] = c;
        for (long j = 0; j <= db; ++j) rem[i - db + j] = mod(rem[i - db + j] - c * b[j], m);
    }
    return {ModPoly(std::move(quot), m), ModPoly(std::move(rem), m)};
}

inline ModPoly mod_rem(const ModPoly& a, const ModPoly& b) { return divmod(a, b).second; }

/// a^e mod f (binary powering).
inline ModPoly powmod(const ModPoly& a, const Int& e, const ModPoly& f) {
    ModPoly base = mod_rem(a, f);
    ModPoly r = ModPoly::constant(1, a.modulus());
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = mod_rem(r * base, f);
        base = mod_rem(base * base, f);
        k >>= 1;
    }
    return r;
}

/// Monic gcd over a prime modulus.
inline ModPoly gcd(const ModPoly& a, const ModPoly& b) {
    ModPoly x = a, y = b;
    while (!y.is_zero()) {
        ModPoly r = mod_rem(x, y);
        x = y;
        y = r;
    }
    return x.is_zero() ? x : x.monic();
}

/// Extended gcd over a prime modulus: returns (g, s, t) with s*a + t*b = g, g monic.
inline std::tuple<ModPoly, ModPoly, ModPoly> xgcd(const ModPoly& a, const ModPoly& b) {
    const Int& m = a.modulus();
    ModPoly r0 = a, r1 = b;
    ModPoly s0 = ModPoly::constant(1, m), s1(m);
    ModPoly t0(m), t1 = ModPoly::constant(1, m);
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        ModPoly s2 = s0 - q * s1;
        ModPoly t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Int inv = invmod(r0.leading(), m);
    return {inv * r0, inv * s0, inv * t0};
}

// ---------------------------------------------------------------------------
// Factorization over F_p.

namespace detail {

/// p-th root of f in F_p[x] (valid when f = g(x^p), using a^p = a in F_p).
inline ModPoly pth_root(const ModPoly& f, long p) {
    std::vector<Int> r;
    for (long i = 0; i <= f.degree(); i += p) r.push_back(f[i]);
    return ModPoly(std::move(r), f.modulus());
}

/// Squarefree decomposition of monic f over F_p: list of (g_i, i), g_i monic squarefree.
inline void squarefree_decompose(const ModPoly& f, long p, long mult,
                                 std::vector<std::pair<ModPoly, long>>& out) {
    ModPoly fp = f.derivative();
    if (fp.is_zero()) {
        // f = g(x^p)
        squarefree_decompose(pth_root(f, p), p, mult * p, out);
        return;
    }
    ModPoly c = gcd(f, fp);
    ModPoly w = divmod(f, c).first;
    long i = 1;
    while (!w.is_one()) {
        ModPoly y = gcd(w, c);
        ModPoly z = divmod(w, y).first;
        if (!z.is_one()) out.emplace_back(z.monic(), mult * i);
        w = y;
        c = divmod(c, y).first;
        ++i;
    }
    if (!c.is_one()) squarefree_decompose(pth_root(c, p), p, mult * p, out);
}

/// Splits monic squarefree g = product of irreducibles of equal degree d over F_p.
inline void equal_degree_split(const ModPoly& g, long d, const Int& p, Rng& rng,
                               std::vector<ModPoly>& out) {
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    const Int q = subfields::pow(p, static_cast<unsigned long>(d));
    const int kRetryCap = 64;  // deterministic retry cap per split
    for (int attempt = 0; attempt < kRetryCap; ++attempt) {
        // Random element of F_p[x]/(g).
        std::vector<Int> ac(g.degree());
        for (auto& v : ac) v = rng.next_int_below(p);
        ModPoly a(std::move(ac), p);
        if (a.is_zero()) continue;
        ModPoly t(p);
        if (p == 2) {
            // Trace map: a + a^2 + a^4 + ... + a^(2^(d-1)).
            ModPoly acc = mod_rem(a, g), term = acc;
            for (long i = 1; i < d; ++i) {
                term = mod_rem(term * term, g);
                acc = acc + term;
            }
            t = acc;
        } else {
            t = powmod(a, (q - 1) / 2, g) - ModPoly::constant(1, p);
        }
        ModPoly h = gcd(t, g);
        if (h.is_zero() || h.degree() == 0 || h.degree() == g.degree()) continue;
        equal_degree_split(h, d, p, rng, out);
        equal_degree_split(divmod(g, h).first.monic(), d, p, rng, out);
        return;
    }
    throw std::runtime_error("equal_degree_split: retry cap exceeded");
}

/// Distinct-degree then equal-degree factorization of monic squarefree f over F_p.
inline std::vector<ModPoly> factor_squarefree(const ModPoly& f, const Int& p, Rng& rng) {
    std::vector<ModPoly> out;
    ModPoly rest = f;
    ModPoly xq = ModPoly::x(p);
    long d = 0;
    while (rest.degree() > 0) {
        ++d;
        if (rest.degree() < 2 * d) {
            out.push_back(rest.monic());
            break;
        }
        xq = powmod(xq, p, rest);
        ModPoly g = gcd(xq - ModPoly::x(p), rest);
        if (g.degree() > 0) {
            equal_degree_split(g.monic(), d, p, rng, out);
            rest = divmod(rest, g).first.monic();
            xq = mod_rem(xq, rest);
        }
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// ModFactorization and the public factoring entry points.

struct ModFactorization {
    IntPoly f;          ///< the factored integer polynomial
    Int prime;
    long precision = 1; ///< factors live modulo prime^precision
    Int unit;           ///< leading coefficient of f modulo prime^precision
    std::vector<std::pair<ModPoly, long>> factors;  ///< monic factor, multiplicity
    bool squarefree = true;

    Int modulus() const { return subfields::pow(prime, static_cast<unsigned long>(precision)); }

    /// unit * prod factors^mult, for invariant checks.
    ModPoly product() const {
        Int m = modulus();
        ModPoly acc = ModPoly::constant(unit, m);
        for (const auto& [g, e] : factors)
            for (long i = 0; i < e; ++i) acc = acc * g;
        return acc;
    }

    std::vector<long> factor_degrees() const {
        std::vector<long> d;
        for (const auto& [g, e] : factors)
            for (long i = 0; i < e; ++i) d.push_back(g.degree());
        std::sort(d.begin(), d.end());
        return d;
    }
};

/**
 * Full factorization of f modulo a prime p with multiplicities.
 * Requires p not dividing lc(f); rejects with "bad prime" otherwise.
 */
inline ModFactorization mod_factor(const IntPoly& f, const Int& p, std::uint64_t seed = 0) {
    if (f.is_zero()) throw std::invalid_argument("mod_factor: zero polynomial");
    if (f.leading() % p == 0) throw std::invalid_argument("bad prime");
    const long pl = static_cast<long>(p.get_si());
    ModFactorization out;
    out.f = f;
    out.prime = p;
    out.precision = 1;
    out.unit = mod(f.leading(), p);
    ModPoly fp(f, p);
    ModPoly fm = fp.monic();
    Rng rng(seed ^ 0x5bf03635u);
    std::vector<std::pair<ModPoly, long>> parts;
    if (fm.degree() > 0) detail::squarefree_decompose(fm, pl, 1, parts);
    bool sqf = true;
    for (const auto& [g, e] : parts) {
        if (e > 1) sqf = false;
        auto irr = detail::factor_squarefree(g, p, rng);
        for (auto& h : irr) out.factors.emplace_back(std::move(h), e);
    }
    // Canonical order: by degree, then coefficient tuple.
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (long i = a.first.degree(); i >= 0; --i)
            if (a.first[i] != b.first[i]) return a.first[i] < b.first[i];
        return false;
    });
    out.squarefree = sqf;
    return out;
}

namespace detail {

/**
 * One quadratic Hensel step: f = g*h (mod p^k), s*g + t*h = 1 (mod p^k),
 * f and g*h monic, lifts everything to modulus `mnext` (p^k < mnext <= p^2k).
 */
inline void hensel_step(const IntPoly& f, ModPoly& g, ModPoly& h, ModPoly& s, ModPoly& t,
                        const Int& mnext) {
    ModPoly fn(f, mnext);
    ModPoly gn = g.with_modulus(mnext);
    ModPoly hn = h.with_modulus(mnext);
    ModPoly sn = s.with_modulus(mnext);
    ModPoly tn = t.with_modulus(mnext);
    ModPoly e = fn - gn * hn;
    auto [q, r] = divmod(sn * e, hn);
    ModPoly g1 = gn + tn * e + q * gn;
    ModPoly h1 = hn + r;
    ModPoly b = sn * g1 + tn * h1 - ModPoly::constant(1, mnext);
    auto [c, d] = divmod(sn * b, h1);
    ModPoly s1 = sn - d;
    ModPoly t1 = tn - tn * b - c * g1;
    g = g1;
    h = h1;
    s = s1;
    t = t1;
}

/// Lifts the monic factor list (pairwise coprime mod p) of monic f to modulus p^a.
inline void hensel_multifactor(const IntPoly& f, const Int& p, long a,
                               const std::vector<ModPoly>& factors_mod_p,
                               std::vector<ModPoly>& out) {
    if (factors_mod_p.size() == 1) {
        out.push_back(ModPoly(f, subfields::pow(p, static_cast<unsigned long>(a))));
        return;
    }
    const std::size_t half = factors_mod_p.size() / 2;
    ModPoly g0 = ModPoly::constant(1, p), h0 = ModPoly::constant(1, p);
    for (std::size_t i = 0; i < half; ++i) g0 = g0 * factors_mod_p[i];
    for (std::size_t i = half; i < factors_mod_p.size(); ++i) h0 = h0 * factors_mod_p[i];
    auto [one, s, t] = xgcd(g0, h0);
    if (!one.is_one()) throw std::invalid_argument("hensel: factors not coprime mod p");
    ModPoly g = g0, h = h0, ss = s, tt = t;
    long k = 1;
    while (k < a) {
        long next = std::min(2 * k, a);
        hensel_step(f, g, h, ss, tt, subfields::pow(p, static_cast<unsigned long>(next)));
        k = next;
    }
    std::vector<ModPoly> left(factors_mod_p.begin(), factors_mod_p.begin() + half);
    std::vector<ModPoly> right(factors_mod_p.begin() + half, factors_mod_p.end());
    hensel_multifactor(g.to_int_poly(), p, a, left, out);
    hensel_multifactor(h.to_int_poly(), p, a, right, out);
}

}  // namespace detail

/**
 * Lift a squarefree factorization to precision a.  Each output factor
 * reduces to its input factor mod p; unit * prod = f (mod p^a).
 */
inline ModFactorization hensel_lift(const ModFactorization& fac, long target_precision) {
    if (!fac.squarefree)
        throw std::invalid_argument("hensel_lift: factorization not squarefree");
    for (const auto& [g, e] : fac.factors)
        if (e != 1) throw std::invalid_argument("hensel_lift: factorization not squarefree");
    if (target_precision <= fac.precision) {
        if (target_precision == fac.precision) return fac;
        ModFactorization out = fac;
        out.precision = target_precision;
        Int m = subfields::pow(fac.prime, static_cast<unsigned long>(target_precision));
        out.unit = mod(fac.unit, m);
        for (auto& [g, e] : out.factors) g = g.with_modulus(m);
        return out;
    }

    const Int& p = fac.prime;
    const Int m = subfields::pow(p, static_cast<unsigned long>(target_precision));
    ModFactorization out;
    out.f = fac.f;
    out.prime = p;
    out.precision = target_precision;
    out.unit = mod(fac.f.leading(), m);
    out.squarefree = true;

    // Work with the monic normalization of f modulo p^a.
    ModPoly fmonic = ModPoly(fac.f, m).monic();
    std::vector<ModPoly> base;
    for (const auto& [g, e] : fac.factors) base.push_back(g.with_modulus(p));
    std::vector<ModPoly> lifted;
    detail::hensel_multifactor(fmonic.to_int_poly(), p, target_precision, base, lifted);
    for (auto& g : lifted) out.factors.emplace_back(std::move(g), 1);
    return out;
}

}  // namespace subfields

#endif  // SUBFIELDS_MOD_POLY_HPP
