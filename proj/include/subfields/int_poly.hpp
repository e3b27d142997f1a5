#ifndef SUBFIELDS_INT_POLY_HPP
#define SUBFIELDS_INT_POLY_HPP

/**
 * @file int_poly.hpp
 * @brief Exact univariate polynomials over Z and over Q: arithmetic,
 *        subresultant resultants, discriminants, root bounds, exact
 *        square roots.  Coefficient index equals the exponent.
 */

#include <algorithm>
#include <cassert>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "subfields/integers.hpp"

namespace subfields {

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<Int> coeffs) : c_(coeffs) { trim(); }

    static IntPoly zero() { return IntPoly(); }
    static IntPoly constant(Int v) { return IntPoly(std::vector<Int>{std::move(v)}); }
    static IntPoly x() { return IntPoly({Int(0), Int(1)}); }

    /// x^k with coefficient a.
    static IntPoly monomial(const Int& a, std::size_t k) {
        std::vector<Int> v(k + 1, Int(0));
        v[k] = a;
        return IntPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    const Int& operator[](std::size_t i) const {
        static const Int kZero = 0;
        return i < c_.size() ? c_[i] : kZero;
    }
    const std::vector<Int>& coeffs() const { return c_; }

    const Int& leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a) {
        std::vector<Int> r = a.c_;
        for (auto& v : r) v = -v;
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        std::vector<Int> r(a.c_.size() + b.c_.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const Int& s, const IntPoly& a) {
        if (s == 0) return IntPoly();
        std::vector<Int> r = a.c_;
        for (auto& v : r) v *= s;
        return IntPoly(std::move(r));
    }
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    Int eval(const Int& x) const {
        Int r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    /// Substitute another polynomial: this(g(x)).
    IntPoly eval_poly(const IntPoly& g) const {
        IntPoly r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * g + constant(*it);
        return r;
    }

    IntPoly derivative() const {
        if (c_.size() <= 1) return IntPoly();
        std::vector<Int> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = Int(static_cast<long>(i)) * c_[i];
        return IntPoly(std::move(r));
    }

    /// f(x + s).
    IntPoly shift_argument(const Int& s) const {
        return eval_poly(IntPoly({s, Int(1)}));
    }

    Int content() const {
        Int g = 0;
        for (const auto& v : c_) g = subfields::gcd(g, v);
        return g;
    }

    /// Primitive part with positive leading coefficient.
    IntPoly primitive_part() const {
        if (is_zero()) return IntPoly();
        Int g = content();
        if (c_.back() < 0) g = -g;
        std::vector<Int> r = c_;
        for (auto& v : r) v /= g;
        return IntPoly(std::move(r));
    }

    Int max_abs_coeff() const {
        Int m = 0;
        for (const auto& v : c_) m = std::max(m, subfields::abs(v));
        return m;
    }

    Int one_norm() const {
        Int m = 0;
        for (const auto& v : c_) m += subfields::abs(v);
        return m;
    }

    Int two_norm_squared() const {
        Int m = 0;
        for (const auto& v : c_) m += v * v;
        return m;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (long i = degree(); i >= 0; --i) {
            const Int& a = c_[i];
            if (a == 0) continue;
            if (!first) os << (a > 0 ? " + " : " - ");
            else if (a < 0) os << "-";
            Int v = subfields::abs(a);
            if (i == 0 || v != 1) os << v.get_str();
            if (i > 0) {
                if (v != 1) os << "*";
                os << "x";
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Int> c_;
};

/// Quotient and remainder when the divisor is monic (exact over Z).
inline std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& a, const IntPoly& b) {
    if (!b.is_monic()) throw std::invalid_argument("divmod_monic: divisor not monic");
    std::vector<Int> rem(a.coeffs());
    const long db = b.degree();
    if (a.degree() < db) return {IntPoly(), a};
    std::vector<Int> quot(a.degree() - db + 1, Int(0));
    for (long i = a.degree(); i >= db; --i) {
        Int c = rem[i];
        if (c == 0) continue;
        quot[i - db] = c;
        for (long j = 0; j <= db; ++j) rem[i - db + j] -= c * b[j];
    }
    return {IntPoly(std::move(quot)), IntPoly(std::move(rem))};
}

/// Exact division; throws if the division leaves a remainder.
inline IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("exact_div: division by zero");
    if (a.is_zero()) return IntPoly();
    std::vector<Int> rem(a.coeffs());
    const long db = b.degree();
    const Int& lb = b.leading();
    if (a.degree() < db) throw std::domain_error("exact_div: not divisible");
    std::vector<Int> quot(a.degree() - db + 1, Int(0));
    for (long i = a.degree(); i >= db; --i) {
        if (rem[i] == 0) continue;
        if (rem[i] % lb != 0) throw std::domain_error("exact_div: not divisible");
        Int c = rem[i] / lb;
        quot[i - db] = c;
        for (long j = 0; j <= db; ++j) rem[i - db + j] -= c * b[j];
    }
    for (const auto& v : rem)
        if (v != 0) throw std::domain_error("exact_div: not divisible");
    return IntPoly(std::move(quot));
}

inline bool divides(const IntPoly& b, const IntPoly& a) {
    if (a.is_zero()) return true;
    if (b.is_zero() || a.degree() < b.degree()) return false;
    try {
        (void)exact_div(a, b);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
inline IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("pseudo_rem: division by zero");
    IntPoly r = a;
    const long db = b.degree();
    const Int& lb = b.leading();
    long steps = a.degree() - db + 1;
    while (!r.is_zero() && r.degree() >= db) {
        IntPoly t = r.leading() * IntPoly::monomial(Int(1), r.degree() - db);
        r = lb * r - t * b;
        --steps;
    }
    // Normalize so the full power of lc(b) has been applied.
    for (; steps > 0; --steps) r = lb * r;
    return r;
}

/**
 * Resultant via the subresultant polynomial remainder sequence
 * (Cohen, Alg. 3.3.7).  Exact for any nonzero inputs.
 */
inline Int resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("resultant: zero polynomial");
    IntPoly A = f, B = g;
    Int s = 1;
    if (A.degree() < B.degree()) {
        if ((A.degree() & 1) && (B.degree() & 1)) s = -1;
        std::swap(A, B);
    }
    if (B.degree() == 0)
        return s * subfields::pow(B.leading(), static_cast<unsigned long>(A.degree()));
    Int ca = A.content(), cb = B.content();
    A = exact_div(A, IntPoly::constant(ca));
    B = exact_div(B, IntPoly::constant(cb));
    Int t = subfields::pow(ca, static_cast<unsigned long>(B.degree())) *
            subfields::pow(cb, static_cast<unsigned long>(A.degree()));
    Int g_ = 1, h_ = 1;
    while (true) {
        const long da = A.degree(), db = B.degree();
        const long delta = da - db;
        if ((da & 1) && (db & 1)) s = -s;
        IntPoly R = pseudo_rem(A, B);
        A = B;
        Int denom = g_ * subfields::pow(h_, static_cast<unsigned long>(delta));
        if (R.is_zero()) {
            B = IntPoly();
        } else {
            std::vector<Int> rc = R.coeffs();
            for (auto& v : rc) {
                assert(v % denom == 0);
                v /= denom;
            }
            B = IntPoly(std::move(rc));
        }
        if (B.is_zero()) return Int(0);  // nontrivial gcd
        g_ = A.leading();
        if (delta == 1) {
            h_ = g_;
        } else if (delta > 1) {
            Int num = subfields::pow(g_, static_cast<unsigned long>(delta));
            Int den = subfields::pow(h_, static_cast<unsigned long>(delta - 1));
            assert(num % den == 0);
            h_ = num / den;
        }
        if (B.degree() == 0) {
            const long dA = A.degree();
            // res = s * t * h^(1-dA) * lc(B)^dA
            Int num = subfields::pow(B.leading(), static_cast<unsigned long>(dA));
            Int den = dA >= 1 ? subfields::pow(h_, static_cast<unsigned long>(dA - 1)) : Int(1);
            assert(num % den == 0);
            return s * t * (num / den);
        }
    }
}

/// disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f).
inline Int discriminant(const IntPoly& f) {
    if (f.is_zero() || f.degree() < 1)
        throw std::invalid_argument("discriminant: degree must be >= 1");
    if (f.degree() == 1) return Int(1);
    Int r = resultant(f, f.derivative());
    assert(r % f.leading() == 0);
    r /= f.leading();
    const long n = f.degree();
    if (((n * (n - 1)) / 2) % 2 != 0) r = -r;
    return r;
}

/**
 * Fujiwara root bound: a rational C >= |z| for every complex root z,
 * C = 2 * max_i |a_{n-i}/a_n|^(1/i), each i-th root rounded up to a
 * multiple of 1/16.  Returns at least 1.
 */
inline Rat fujiwara_bound(const IntPoly& f) {
    if (f.is_zero() || f.degree() < 1)
        throw std::invalid_argument("fujiwara_bound: degree must be >= 1");
    const long n = f.degree();
    const Int& an = f.leading();
    Rat best = 0;
    for (long i = 1; i <= n; ++i) {
        Rat v(subfields::abs(f[n - i]), subfields::abs(an));
        v.canonicalize();
        if (v == 0) continue;
        // Smallest k/16 with (k/16)^i >= v, found by doubling then bisection.
        Int lo = 1, hi = 1;
        const Int num16 = 16;
        auto pow_ge = [&](const Int& k) {
            // (k/16)^i >= v  <=>  k^i * den(v) >= 16^i * num(v)
            Int lhs = subfields::pow(k, static_cast<unsigned long>(i)) * v.get_den();
            Int rhs = subfields::pow(num16, static_cast<unsigned long>(i)) * v.get_num();
            return lhs >= rhs;
        };
        while (!pow_ge(hi)) hi *= 2;
        while (lo < hi) {
            Int mid = (lo + hi) / 2;
            if (pow_ge(mid)) hi = mid;
            else lo = mid + 1;
        }
        Rat u(lo, 16);
        u.canonicalize();
        best = std::max(best, u);
    }
    Rat c = 2 * best;
    if (c < 1) c = 1;
    return c;
}

/**
 * Exact polynomial square root by coefficient recursion from the leading
 * term; empty result if f is not the square of an integer polynomial.
 */
inline std::optional<IntPoly> poly_exact_sqrt(const IntPoly& f) {
    if (f.is_zero()) return IntPoly();
    if (f.degree() % 2 != 0) return std::nullopt;
    const long m = f.degree() / 2;
    Int lead;
    if (f.leading() < 0 || !exact_sqrt(f.leading(), lead)) return std::nullopt;
    std::vector<Int> g(m + 1, Int(0));
    g[m] = lead;
    const Int two_lead = 2 * lead;
    for (long k = 2 * m - 1; k >= m; --k) {
        // f_k = sum_{i+j=k} g_i g_j with unknown g_{k-m}.
        Int acc = 0;
        for (long i = k - m + 1; i <= m - 1; ++i) {
            long j = k - i;
            if (j > m || j < 0) continue;
            acc += g[i] * g[j];
        }
        Int rhs = f[k] - acc;
        if (rhs % two_lead != 0) return std::nullopt;
        g[k - m] = rhs / two_lead;
    }
    IntPoly result{std::vector<Int>(g)};
    if (result * result == f) return result;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rational-coefficient polynomials (embeddings h live here).

class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
        for (auto& v : c_) v.canonicalize();
        trim();
    }
    RatPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) {
        for (auto& v : c_) v.canonicalize();
        trim();
    }
    static RatPoly from_int(const IntPoly& p) {
        std::vector<Rat> r(p.coeffs().begin(), p.coeffs().end());
        return RatPoly(std::move(r));
    }
    static RatPoly constant(Rat v) { return RatPoly(std::vector<Rat>{std::move(v)}); }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Rat& operator[](std::size_t i) const {
        static const Rat kZero = 0;
        return i < c_.size() ? c_[i] : kZero;
    }
    const std::vector<Rat>& coeffs() const { return c_; }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return RatPoly();
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator*(const Rat& s, const RatPoly& a) {
        std::vector<Rat> r = a.c_;
        for (auto& v : r) v *= s;
        return RatPoly(std::move(r));
    }
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

    /// Remainder modulo a monic-over-Q divisor (any nonzero divisor works).
    RatPoly mod(const RatPoly& d) const {
        if (d.is_zero()) throw std::invalid_argument("RatPoly::mod: zero divisor");
        std::vector<Rat> rem = c_;
        const long dd = d.degree();
        const Rat& ld = d.c_.back();
        for (long i = static_cast<long>(rem.size()) - 1; i >= dd; --i) {
            if (rem[i] == 0) continue;
            Rat q = rem[i] / ld;
            for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= q * d[j];
        }
        return RatPoly(std::move(rem));
    }

    RatPoly mod(const IntPoly& d) const { return mod(RatPoly::from_int(d)); }

    /// Common denominator of all coefficients.
    Int denominator() const {
        Int den = 1;
        for (const auto& v : c_) den = subfields::lcm(den, v.get_den());
        return den;
    }

    /// this = p / den with p integral.
    std::pair<IntPoly, Int> to_integral() const {
        Int den = denominator();
        std::vector<Int> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            Rat scaled = c_[i] * Rat(den);
            scaled.canonicalize();
            r[i] = scaled.get_num();
        }
        return {IntPoly(std::move(r)), den};
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (long i = degree(); i >= 0; --i) {
            const Rat& a = c_[i];
            if (a == 0) continue;
            Rat v = a;
            if (!first) {
                os << (a > 0 ? " + " : " - ");
                if (a < 0) v = -a;
            }
            os << v.get_str();
            if (i > 0) os << "*x";
            if (i > 1) os << "^" << i;
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

/// g(h) mod f over Q; zero iff h(beta) is a root of g in Q[x]/(f).
inline RatPoly compose_mod(const IntPoly& g, const RatPoly& h, const IntPoly& f) {
    RatPoly acc;
    for (long i = g.degree(); i >= 0; --i) {
        acc = (acc * h).mod(f);
        acc = acc + RatPoly::constant(Rat(g[i]));
    }
    return acc;
}

/// Inverse of a modulo f over Q (f irreducible in intended use).
inline RatPoly invert_mod(const RatPoly& a, const IntPoly& f) {
    // Extended Euclid over Q[x].
    RatPoly r0 = RatPoly::from_int(f), r1 = a.mod(f);
    RatPoly s0, s1 = RatPoly::constant(1);
    while (!r1.is_zero() && r1.degree() > 0) {
        // Divide r0 by r1.
        std::vector<Rat> rem = r0.coeffs();
        RatPoly q;
        {
            std::vector<Rat> qc(std::max<long>(0, r0.degree() - r1.degree() + 1), Rat(0));
            const long dd = r1.degree();
            const Rat ld = r1.coeffs().back();
            for (long i = static_cast<long>(rem.size()) - 1; i >= dd; --i) {
                if (rem[i] == 0) continue;
                Rat qq = rem[i] / ld;
                qc[i - dd] = qq;
                for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= qq * r1[j];
            }
            q = RatPoly(std::move(qc));
        }
        RatPoly r2 = RatPoly(std::move(rem));
        RatPoly s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r1.is_zero()) throw std::domain_error("invert_mod: not invertible");
    Rat inv_c = Rat(1) / r1[0];
    return (RatPoly::constant(inv_c) * s1).mod(f);
}

}  // namespace subfields

#endif  // SUBFIELDS_INT_POLY_HPP
