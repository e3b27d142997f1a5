#ifndef SUBFIELDS_TESTS_ORACLES_HPP
#define SUBFIELDS_TESTS_ORACLES_HPP

// Independent brute-force oracles used to freeze expected test values.
// Everything here is deliberately naive and must stay independent of the
// implementation paths it checks.

#include <algorithm>
#include <set>
#include <vector>

#include "subfields/int_poly.hpp"
#include "subfields/mod_poly.hpp"

namespace oracles {

using subfields::Int;
using subfields::IntPoly;
using subfields::ModPoly;

// All monic polynomials of the given degree over F_p, coefficient-lex order.
inline std::vector<ModPoly> all_monic(long degree, long p) {
    std::vector<ModPoly> out;
    std::vector<Int> c(degree + 1, Int(0));
    c[degree] = 1;
    long total = 1;
    for (long i = 0; i < degree; ++i) total *= p;
    for (long code = 0; code < total; ++code) {
        long v = code;
        for (long i = 0; i < degree; ++i) {
            c[i] = v % p;
            v /= p;
        }
        out.emplace_back(std::vector<Int>(c), Int(p));
    }
    return out;
}

// Naive trial-division factorization over F_p (degrees small).
inline std::vector<std::pair<ModPoly, long>> brute_factor_mod_p(const IntPoly& f, long p) {
    ModPoly rest = ModPoly(f, Int(p)).monic();
    std::vector<std::pair<ModPoly, long>> out;
    for (long d = 1; d <= rest.degree(); ++d) {
        for (const ModPoly& cand : all_monic(d, p)) {
            if (rest.degree() < d) break;
            long mult = 0;
            while (true) {
                auto [q, r] = subfields::divmod(rest, cand);
                if (!r.is_zero()) break;
                rest = q;
                ++mult;
            }
            if (mult > 0) out.emplace_back(cand, mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (long i = a.first.degree(); i >= 0; --i)
            if (a.first[i] != b.first[i]) return a.first[i] < b.first[i];
        return false;
    });
    return out;
}

// Roots of f mod p by exhaustive search.
inline std::vector<long> brute_roots_mod_p(const IntPoly& f, long p) {
    std::vector<long> out;
    for (long r = 0; r < p; ++r)
        if (subfields::mod(f.eval(Int(r)), Int(p)) == 0) out.push_back(r);
    return out;
}

}  // namespace oracles

#endif
