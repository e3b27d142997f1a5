#ifndef SUBFIELDS_GROUP_SPECS_HPP
#define SUBFIELDS_GROUP_SPECS_HPP

/**
 * @file group_specs.hpp
 * @brief Named permutation-group constructions: projective groups,
 *        Frobenius groups, quaternion group, product actions, and a
 *        small spec-string parser ("c2^3-regular", "c7:c3-regular", ...).
 */

#include <stdexcept>
#include <string>
#include <vector>

#include "subfields/permutation.hpp"

namespace subfields {

/// PSL_2(q) on the projective line (degree q+1), q an odd prime.
/// Points: 0..q-1 are field elements, q is infinity.
inline PermGroup psl2(long q) {
    const int n = static_cast<int>(q) + 1;
    std::vector<int> add(n), inv(n);
    for (long x = 0; x < q; ++x) add[x] = static_cast<int>((x + 1) % q);
    add[q] = static_cast<int>(q);
    // x -> -1/x, with 0 <-> infinity
    inv[0] = static_cast<int>(q);
    inv[q] = 0;
    for (long x = 1; x < q; ++x) {
        long y = (q - mod(invmod(Int(x), Int(q)), Int(q)).get_si()) % q;
        inv[x] = static_cast<int>(y);
    }
    return PermGroup(n, {Permutation(std::move(add)), Permutation(std::move(inv))});
}

/// GL_3(F_2) acting on the 7 nonzero vectors of F_2^3 (bit codes 1..7).
inline PermGroup gl3_f2() {
    auto apply = [](int v, int which) {
        int c0 = v & 1, c1 = (v >> 1) & 1, c2 = (v >> 2) & 1;
        int r0, r1, r2;
        if (which == 0) {  // companion matrix of t^3 + t + 1
            r0 = c2;
            r1 = c0 ^ c2;
            r2 = c1;
        } else {  // transvection e2 -> e0 + e2
            r0 = c0 ^ c2;
            r1 = c1;
            r2 = c2;
        }
        return r0 | (r1 << 1) | (r2 << 2);
    };
    std::vector<int> a(7), b(7);
    for (int v = 1; v <= 7; ++v) {
        a[v - 1] = apply(v, 0) - 1;
        b[v - 1] = apply(v, 1) - 1;
    }
    return PermGroup(7, {Permutation(std::move(a)), Permutation(std::move(b))});
}

/// Mathieu group M_11 in its natural degree-11 action.
inline PermGroup m11() {
    return PermGroup(11, {Permutation::from_cycles(11, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}}),
                          Permutation::from_cycles(11, {{3, 7, 11, 8}, {4, 10, 5, 6}})});
}

/**
 * Frobenius group C_p : C_k of degree p (p an odd prime, k | p-1):
 * translations x -> x+1 and multiplication by an order-k element of F_p*.
 */
inline PermGroup frobenius_group(long p, long k) {
    if ((p - 1) % k != 0) throw std::invalid_argument("frobenius_group: k must divide p-1");
    // find a multiplicative element of exact order k
    long g = 0;
    for (long cand = 2; cand < p; ++cand) {
        long x = 1;
        bool exact = true;
        for (long i = 1; i < k; ++i) {
            x = (x * cand) % p;
            if (x == 1) {
                exact = false;
                break;
            }
        }
        if (exact && (x * cand) % p == 1) {
            g = cand;
            break;
        }
    }
    if (g == 0) throw std::logic_error("frobenius_group: no element of the requested order");
    std::vector<int> add(p), mul(p);
    for (long x = 0; x < p; ++x) {
        add[x] = static_cast<int>((x + 1) % p);
        mul[x] = static_cast<int>((x * g) % p);
    }
    return PermGroup(static_cast<int>(p), {Permutation(std::move(add)), Permutation(std::move(mul))});
}

/// Quaternion group on its 8 elements (regular action).
inline PermGroup quaternion8() {
    // element order: 1, -1, i, -i, j, -j, k, -k
    Permutation i({2, 3, 1, 0, 6, 7, 5, 4});
    Permutation j({4, 5, 7, 6, 1, 0, 2, 3});
    return PermGroup(8, {i, j});
}

/// Product action of a x b on the grid (degree a.degree() * b.degree()).
inline PermGroup product_action(const PermGroup& a, const PermGroup& b) {
    const int na = a.degree(), nb = b.degree(), n = na * nb;
    std::vector<Permutation> gens;
    for (const auto& s : a.generators()) {
        std::vector<int> img(n);
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j) img[i * nb + j] = s[i] * nb + j;
        gens.emplace_back(std::move(img));
    }
    for (const auto& s : b.generators()) {
        std::vector<int> img(n);
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j) img[i * nb + j] = i * nb + s[j];
        gens.emplace_back(std::move(img));
    }
    return PermGroup(n, std::move(gens));
}

/// A5 x C2 acting transitively on 60 points: cosets of a diagonal
/// order-2 subgroup, so that the A5 factor stays transitive (regular).
inline PermGroup a5_times_c2_on_60() {
    PermGroup a5 = PermGroup::alternating(5);
    PermGroup c2 = PermGroup::cyclic(2);
    PermGroup g = direct_product(a5, c2);  // degree 7, order 120
    PermGroup u(7, {Permutation::from_cycles(7, {{1, 2}, {3, 4}, {6, 7}})});
    return coset_action(g, u);
}

/**
 * Parse a group spec string.  Grammar:
 *   s<n> | a<n> | c<n> | d<n>          natural actions
 *   c<p>:c<k>                          Frobenius group on p points
 *   c<a>^<b>                           direct power (degree a*b)
 *   q8 | gl3f2 | m11 | psl2_<q>        named groups
 *   a5xc2-60                           A5 x C2 on 60 points
 *   <spec>-regular                     regular representation of <spec>
 */
inline PermGroup parse_group_spec(const std::string& spec) {
    const std::string suffix = "-regular";
    if (spec.size() > suffix.size() &&
        spec.compare(spec.size() - suffix.size(), suffix.size(), suffix) == 0) {
        PermGroup inner = parse_group_spec(spec.substr(0, spec.size() - suffix.size()));
        return regular_representation(inner);
    }
    if (spec == "q8") return quaternion8();
    if (spec == "gl3f2") return gl3_f2();
    if (spec == "m11") return m11();
    if (spec == "a5xc2-60") return a5_times_c2_on_60();
    if (spec.rfind("psl2_", 0) == 0) return psl2(std::stol(spec.substr(5)));
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        if (spec[0] != 'c' || spec[colon + 1] != 'c')
            throw std::invalid_argument("parse_group_spec: " + spec);
        long p = std::stol(spec.substr(1, colon - 1));
        long k = std::stol(spec.substr(colon + 2));
        return frobenius_group(p, k);
    }
    auto caret = spec.find('^');
    if (caret != std::string::npos) {
        if (spec[0] != 'c') throw std::invalid_argument("parse_group_spec: " + spec);
        long a = std::stol(spec.substr(1, caret - 1));
        long b = std::stol(spec.substr(caret + 1));
        PermGroup acc = PermGroup::cyclic(static_cast<int>(a));
        for (long i = 1; i < b; ++i)
            acc = direct_product(acc, PermGroup::cyclic(static_cast<int>(a)));
        return acc;
    }
    if (spec.size() >= 2) {
        long n = std::stol(spec.substr(1));
        switch (spec[0]) {
            case 's': return PermGroup::symmetric(static_cast<int>(n));
            case 'a': return PermGroup::alternating(static_cast<int>(n));
            case 'c': return PermGroup::cyclic(static_cast<int>(n));
            case 'd': return PermGroup::dihedral(static_cast<int>(n));
            default: break;
        }
    }
    throw std::invalid_argument("parse_group_spec: unknown spec " + spec);
}

}  // namespace subfields

#endif  // SUBFIELDS_GROUP_SPECS_HPP
