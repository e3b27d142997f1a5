#ifndef SUBFIELDS_INTEGERS_HPP
#define SUBFIELDS_INTEGERS_HPP

/**
 * @file integers.hpp
 * @brief Arbitrary-precision integer/rational helpers shared by all modules:
 *        gcd/lcm, exact square tests, prime streams, deterministic RNG.
 */

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace subfields {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int abs(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline Int pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int powmod(const Int& base, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Inverse of a modulo m; throws if not invertible.
inline Int invmod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("invmod: element not invertible");
    return r;
}

/// Canonical residue in [0, m).
inline Int mod(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Symmetric representative in (-m/2, m/2].
inline Int symmetric_mod(const Int& a, const Int& m) {
    Int r = mod(a, m);
    if (2 * r > m) r -= m;
    return r;
}

inline bool is_perfect_square(const Int& a) {
    return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

/// Floor of the square root (a >= 0).
inline Int isqrt(const Int& a) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

/// Exact square root or failure.
inline bool exact_sqrt(const Int& a, Int& root) {
    if (a < 0) return false;
    root = isqrt(a);
    return root * root == a;
}

inline bool is_probable_prime(const Int& a) {
    return mpz_probab_prime_p(a.get_mpz_t(), 32) != 0;
}

/// Smallest prime strictly greater than a.
inline Int next_prime(const Int& a) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

/// Ascending divisors of n > 0 (trial division; desk-scale n).
inline std::vector<Int> divisors(const Int& n) {
    std::vector<Int> small, large;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

inline std::vector<long> proper_divisors(long n) {
    std::vector<long> out;
    for (long d = 2; d < n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

/// Deterministic RNG used wherever a module contract asks for a seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform value in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) {
        return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(eng_);
    }

    /// Uniform Int in [0, bound).
    Int next_int_below(const Int& bound) {
        const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        while (true) {
            Int r = 0;
            for (std::size_t got = 0; got < bits; got += 32) {
                r <<= 32;
                r += static_cast<unsigned long>(next_u64() & 0xffffffffu);
            }
            r = mod(r, Int(1) << bits);
            if (r < bound) return r;
        }
    }

private:
    std::mt19937_64 eng_;
};

/// Primes below 2^16 in ascending order (shared sieve).
inline const std::vector<long>& small_primes() {
    static const std::vector<long> primes = [] {
        const long limit = 1 << 16;
        std::vector<bool> composite(limit, false);
        std::vector<long> ps;
        for (long i = 2; i < limit; ++i) {
            if (composite[i]) continue;
            ps.push_back(i);
            for (long j = 2 * i; j < limit; j += i) composite[j] = true;
        }
        return ps;
    }();
    return primes;
}

}  // namespace subfields

#endif  // SUBFIELDS_INTEGERS_HPP
