// Unit tests for the exact arithmetic bedrock: integer polynomials,
// modular factorization, Hensel lifting, factorization over Z, and the
// p-adic splitting context.

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "subfields/factor_int.hpp"
#include "subfields/int_poly.hpp"
#include "subfields/mod_poly.hpp"

using namespace subfields;

namespace {

IntPoly parse_coeffs(std::initializer_list<long> cs) {
    std::vector<Int> v;
    for (long c : cs) v.emplace_back(c);
    return IntPoly(std::move(v));
}

}  // namespace

TEST_CASE("IntPoly basic arithmetic") {
    IntPoly f = parse_coeffs({-1, 0, 1});  // x^2 - 1
    IntPoly g = parse_coeffs({1, 1});      // x + 1
    CHECK(f.degree() == 2);
    CHECK((g * parse_coeffs({-1, 1})) == f);
    CHECK(f.eval(3) == 8);
    CHECK(f.derivative() == parse_coeffs({0, 2}));
    CHECK(exact_div(f, g) == parse_coeffs({-1, 1}));
    CHECK_THROWS_AS(exact_div(f, parse_coeffs({2, 1, 1})), std::domain_error);
    CHECK(f.shift_argument(1) == parse_coeffs({0, 2, 1}));
}

TEST_CASE("resultant and discriminant") {
    SECTION("disc(x^2+1) = -4") {
        CHECK(discriminant(parse_coeffs({1, 0, 1})) == -4);
    }
    SECTION("disc(x^3-2) = -108, via formula -4a^3 - 27b^2") {
        // oracle: depressed cubic x^3 + ax + b with a=0, b=-2
        Int expected = -4 * 0 - 27 * 4;
        CHECK(discriminant(parse_coeffs({-2, 0, 0, 1})) == expected);
    }
    SECTION("res(x^2-2, x^2-3) = 1") {
        CHECK(resultant(parse_coeffs({-2, 0, 1}), parse_coeffs({-3, 0, 1})) == 1);
    }
    SECTION("multiplicativity on random products") {
        Rng rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            auto rnd = [&](long deg) {
                std::vector<Int> c(deg + 1);
                for (auto& v : c) v = Int(static_cast<long>(rng.next_below(19)) - 9);
                c[deg] = 1 + Int(static_cast<long>(rng.next_below(3)));
                return IntPoly(std::move(c));
            };
            IntPoly a = rnd(2), b = rnd(3), c = rnd(2);
            CHECK(resultant(a * b, c) == resultant(a, c) * resultant(b, c));
        }
    }
    SECTION("disc of product of distinct linear factors is nonzero") {
        IntPoly f = parse_coeffs({1, 1});
        for (long k = 2; k <= 5; ++k) f = f * parse_coeffs({k, 1});
        CHECK(discriminant(f) != 0);
    }
    CHECK_THROWS_AS(resultant(IntPoly(), parse_coeffs({1, 1})), std::invalid_argument);
}

TEST_CASE("fujiwara bound") {
    SECTION("x^2 - 2: any value >= sqrt(2) accepted") {
        Rat c = fujiwara_bound(parse_coeffs({-2, 0, 1}));
        CHECK(c * c >= 2);
        CHECK(c <= 3);
    }
    SECTION("pure power returns the safe minimum 1") {
        CHECK(fujiwara_bound(parse_coeffs({0, 0, 0, 1})) == 1);
    }
    SECTION("x^2+9x+27 -> 18") {
        CHECK(fujiwara_bound(parse_coeffs({27, 9, 1})) == 18);
    }
    SECTION("dominates integer roots of prod (x-k)") {
        for (long top = 2; top <= 6; ++top) {
            IntPoly f = IntPoly::constant(1);
            for (long k = 1; k <= top; ++k) f = f * parse_coeffs({-k, 1});
            CHECK(fujiwara_bound(f) >= top);
        }
    }
}

TEST_CASE("poly_exact_sqrt") {
    IntPoly g = parse_coeffs({5, -3, 1});
    CHECK(poly_exact_sqrt(g * g) == g);
    CHECK(poly_exact_sqrt(parse_coeffs({1, 2, 1})) == parse_coeffs({1, 1}));
    CHECK(!poly_exact_sqrt(parse_coeffs({1, 0, 1})).has_value());
    CHECK(!poly_exact_sqrt(parse_coeffs({0, 1})).has_value());
}

TEST_CASE("mod_factor") {
    SECTION("x^4+1 mod 2 = (x+1)^4, not squarefree") {
        auto fac = mod_factor(parse_coeffs({1, 0, 0, 0, 1}), 2);
        REQUIRE(fac.factors.size() == 1);
        CHECK(fac.factors[0].first == ModPoly(parse_coeffs({1, 1}), 2));
        CHECK(fac.factors[0].second == 4);
        CHECK(!fac.squarefree);
    }
    SECTION("x^2+1 mod 5 splits, squarefree") {
        auto fac = mod_factor(parse_coeffs({1, 0, 1}), 5);
        REQUIRE(fac.factors.size() == 2);
        CHECK(fac.squarefree);
        auto roots = oracles::brute_roots_mod_p(parse_coeffs({1, 0, 1}), 5);
        REQUIRE(roots == std::vector<long>{2, 3});
        // Factors are x - 2 = x + 3 and x - 3 = x + 2.
        CHECK(fac.factors[0].first == ModPoly(parse_coeffs({2, 1}), 5));
        CHECK(fac.factors[1].first == ModPoly(parse_coeffs({3, 1}), 5));
    }
    SECTION("x^4+1 mod 7: two irreducible quadratics (vs brute force)") {
        IntPoly f = parse_coeffs({1, 0, 0, 0, 1});
        auto fac = mod_factor(f, 7);
        auto expected = oracles::brute_factor_mod_p(f, 7);
        REQUIRE(fac.factors.size() == expected.size());
        REQUIRE(expected.size() == 2);
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(fac.factors[i].first == expected[i].first);
            CHECK(fac.factors[i].second == expected[i].second);
            CHECK(expected[i].first.degree() == 2);
        }
    }
    SECTION("bad prime rejected") {
        CHECK_THROWS_AS(mod_factor(parse_coeffs({1, 0, 2}), 2), std::invalid_argument);
    }
    SECTION("random polynomials: degrees sum and squarefree flag") {
        Rng rng(11);
        for (int trial = 0; trial < 30; ++trial) {
            long deg = 2 + static_cast<long>(rng.next_below(5));
            std::vector<Int> c(deg + 1);
            for (auto& v : c) v = Int(static_cast<long>(rng.next_below(41)) - 20);
            c[deg] = 1;
            IntPoly f(std::move(c));
            long p = (trial % 2) ? 5 : 7;
            auto fac = mod_factor(f, p);
            long total = 0;
            for (auto& [g, e] : fac.factors) total += g.degree() * e;
            CHECK(total == f.degree());
            ModPoly fp(f, p);
            ModPoly g = gcd(fp, fp.derivative());
            CHECK(fac.squarefree == (g.degree() == 0));
            // product invariant
            CHECK(fac.product() == fp);
        }
    }
}

TEST_CASE("hensel_lift") {
    SECTION("exact factors stay fixed") {
        auto fac = mod_factor(parse_coeffs({-1, 0, 1}), 3);
        auto lifted = hensel_lift(fac, 2);
        CHECK(lifted.modulus() == 9);
        REQUIRE(lifted.factors.size() == 2);
        CHECK(lifted.factors[0].first.to_int_poly_symmetric() == parse_coeffs({1, 1}));
        CHECK(lifted.factors[1].first.to_int_poly_symmetric() == parse_coeffs({-1, 1}));
    }
    SECTION("x^2-2 mod 7 lifts to mod 49") {
        IntPoly f = parse_coeffs({-2, 0, 1});
        auto fac = mod_factor(f, 7);
        auto lifted = hensel_lift(fac, 2);
        // oracle: 10^2 = 100 = 2 + 2*49, so roots mod 49 are 10 and 39
        CHECK(mod(Int(10) * 10, Int(49)) == 2);
        std::set<Int> roots;
        for (auto& [g, e] : lifted.factors) {
            REQUIRE(g.degree() == 1);
            roots.insert(mod(-g[0], Int(49)));
        }
        CHECK(roots == std::set<Int>{Int(10), Int(39)});
    }
    SECTION("target = current precision is the identity") {
        auto fac = mod_factor(parse_coeffs({-2, 0, 1}), 7);
        auto same = hensel_lift(fac, 1);
        CHECK(same.factors[0].first == fac.factors[0].first);
    }
    SECTION("non-squarefree input rejected") {
        auto fac = mod_factor(parse_coeffs({1, 0, 0, 0, 1}), 2);
        CHECK_THROWS_AS(hensel_lift(fac, 3), std::invalid_argument);
    }
    SECTION("product invariant at random precisions") {
        Rng rng(5);
        for (int trial = 0; trial < 15; ++trial) {
            long deg = 2 + static_cast<long>(rng.next_below(4));
            std::vector<Int> c(deg + 1);
            for (auto& v : c) v = Int(static_cast<long>(rng.next_below(21)) - 10);
            c[deg] = 1 + Int(static_cast<long>(rng.next_below(2)));
            IntPoly f(std::move(c));
            long p = 11;
            if (f.leading() % p == 0) continue;
            auto fac = mod_factor(f, p);
            if (!fac.squarefree) continue;
            long a = 2 + static_cast<long>(rng.next_below(4));
            auto lifted = hensel_lift(fac, a);
            CHECK(lifted.product() == ModPoly(f, lifted.modulus()));
            for (std::size_t i = 0; i < fac.factors.size(); ++i)
                CHECK(lifted.factors[i].first.with_modulus(Int(p)) == fac.factors[i].first);
        }
    }
}

TEST_CASE("factor_over_Z") {
    SECTION("x^2-1") {
        auto z = factor_over_Z(parse_coeffs({-1, 0, 1}));
        REQUIRE(z.factors.size() == 2);
        CHECK(z.factors[0].first == parse_coeffs({-1, 1}));
        CHECK(z.factors[1].first == parse_coeffs({1, 1}));
    }
    SECTION("x^4+1 irreducible") {
        CHECK(is_irreducible_over_Z(parse_coeffs({1, 0, 0, 0, 1})));
    }
    SECTION("x^3-4 irreducible (oracle: rational roots and quadratic factors)") {
        IntPoly f = parse_coeffs({-4, 0, 0, 1});
        for (long r = -4; r <= 4; ++r)
            if (r != 0) CHECK(f.eval(r) != 0);
        CHECK(is_irreducible_over_Z(f));
    }
    SECTION("multiplicities and content recovered") {
        IntPoly f = Int(6) * parse_coeffs({1, 1}) * parse_coeffs({1, 1}) * parse_coeffs({-3, 1});
        auto z = factor_over_Z(f);
        CHECK(z.content == 6);
        REQUIRE(z.factors.size() == 2);
        CHECK(z.product() == f);
    }
    SECTION("random products remultiply exactly") {
        Rng rng(23);
        for (int trial = 0; trial < 12; ++trial) {
            auto rnd = [&](long deg) {
                std::vector<Int> c(deg + 1);
                for (auto& v : c) v = Int(static_cast<long>(rng.next_below(11)) - 5);
                c[deg] = 1;
                return IntPoly(std::move(c));
            };
            IntPoly f = rnd(2) * rnd(3);
            if (f.is_zero()) continue;
            auto z = factor_over_Z(f);
            CHECK(z.product() == f);
            for (auto& [g, e] : z.factors) CHECK(is_irreducible_over_Z(g));
        }
    }
    SECTION("cyclotomic-style stress: x^6 + 9x^3 + 27 irreducible") {
        CHECK(is_irreducible_over_Z(parse_coeffs({27, 0, 0, 9, 0, 0, 1})));
    }
}

#include "subfields/padic.hpp"

TEST_CASE("splitting context construction") {
    SECTION("x^2+1 at p=5: split case, trivial extension") {
        auto ctx = build_splitting_context(parse_coeffs({1, 0, 1}), 5, 1);
        CHECK(ctx.ext_degree == 1);
        REQUIRE(ctx.roots.size() == 2);
        CHECK(ctx.roots[0] == ModPoly::constant(2, 5));
        CHECK(ctx.roots[1] == ModPoly::constant(3, 5));
        CHECK(ctx.frobenius == std::vector<int>{0, 1});
        CHECK(frobenius_permutation(ctx) == std::vector<int>{0, 1});
    }
    SECTION("x^2+1 at p=3: inert case, Frobenius swaps the conjugates") {
        auto ctx = build_splitting_context(parse_coeffs({1, 0, 1}), 3, 1);
        CHECK(ctx.ext_degree == 2);
        REQUIRE(ctx.roots.size() == 2);
        CHECK(ctx.frobenius == std::vector<int>{1, 0});
    }
    SECTION("x^3-2 at p=5: factor degrees (1,2), transposition with a fixed point") {
        // oracle: 3^3 = 27 = 2 mod 5 is the unique cube root of 2 mod 5
        auto fac = mod_factor(parse_coeffs({-2, 0, 0, 1}), 5);
        REQUIRE(fac.factor_degrees() == std::vector<long>{1, 2});
        auto ctx = build_splitting_context(parse_coeffs({-2, 0, 0, 1}), 5, 1);
        CHECK(ctx.ext_degree == 2);
        CHECK(frobenius_cycle_type(ctx) == std::vector<long>{1, 2});
    }
    SECTION("x^3-2 at p=7 is inert: Frobenius is a 3-cycle") {
        // oracle: cubes mod 7 are {0,1,6}, so 2 is not a cube mod 7
        std::set<long> cubes;
        for (long x = 0; x < 7; ++x) cubes.insert((x * x * x) % 7);
        CHECK(cubes == std::set<long>{0, 1, 6});
        auto ctx = build_splitting_context(parse_coeffs({-2, 0, 0, 1}), 7, 1);
        CHECK(ctx.ext_degree == 3);
        CHECK(frobenius_cycle_type(ctx) == std::vector<long>{3});
    }
    SECTION("ramified prime rejected") {
        CHECK_THROWS_AS(build_splitting_context(parse_coeffs({1, 0, 1}), 2, 1),
                        std::invalid_argument);
        // disc(x^2+1) = -4; p=2 ramifies; also x^2-5 at p=5
        CHECK_THROWS_AS(build_splitting_context(parse_coeffs({-5, 0, 1}), 5, 1),
                        std::invalid_argument);
    }
}

TEST_CASE("raise_precision") {
    SECTION("x^2-2 at p=7: root 3 lifts to 10 mod 49") {
        auto ctx = build_splitting_context(parse_coeffs({-2, 0, 1}), 7, 1);
        REQUIRE(ctx.roots[0] == ModPoly::constant(3, 7));
        auto up = raise_precision(ctx, 2);
        CHECK(up.roots[0] == ModPoly::constant(10, 49));
    }
    SECTION("identity when target equals current") {
        auto ctx = build_splitting_context(parse_coeffs({-2, 0, 1}), 7, 3);
        auto same = raise_precision(ctx, 3);
        CHECK(same.roots == ctx.roots);
    }
    SECTION("x^2+1 at p=5: root 2 lifts to 57 mod 125") {
        auto ctx = build_splitting_context(parse_coeffs({1, 0, 1}), 5, 1);
        auto up = raise_precision(ctx, 3);
        CHECK(up.roots[0] == ModPoly::constant(57, 125));
        CHECK(mod(Int(57) * 57 + 1, Int(125)) == 0);
    }
    SECTION("invariants on a bigger field: x^6+9x^3+27") {
        IntPoly f = parse_coeffs({27, 0, 0, 9, 0, 0, 1});
        Int p = 0;
        // first good odd prime with squarefree reduction
        for (long q : small_primes()) {
            if (q == 2) continue;
            if (f.leading() % q == 0) continue;
            auto fac = mod_factor(f, q);
            if (fac.squarefree) { p = q; break; }
        }
        auto ctx = build_splitting_context(f, p, 2);
        auto up = raise_precision(ctx, 6);
        for (const auto& r : up.roots) CHECK(up.ring.eval_poly(f, r).is_zero());
        // reduction idempotence
        auto back = reduce_precision(up, 2);
        CHECK(back.roots == ctx.roots);
        // Frobenius cycle type equals the factor degree multiset
        auto fac = mod_factor(f, p);
        CHECK(frobenius_cycle_type(up) == fac.factor_degrees());
        // Frobenius images are roots at full precision
        for (std::size_t i = 0; i < up.roots.size(); ++i) {
            auto img = up.frobenius_map(up.roots[i]);
            CHECK(img == up.roots[up.frobenius[i]]);
        }
    }
}
