#ifndef SUBFIELDS_LLL_HPP
#define SUBFIELDS_LLL_HPP

/**
 * @file lll.hpp
 * @brief Exact-arithmetic LLL with removals and the principal-subfield
 *        algorithm built on it: lattice from a linear/general factor pair
 *        at the LLL prime, reduction, block identification at the
 *        splitting prime, confirmation, and the two precision loops.
 */

#include <optional>
#include <stdexcept>
#include <vector>

#include "subfields/mod_poly.hpp"
#include "subfields/subfield_records.hpp"

namespace subfields {

struct LatticeBasis {
    std::vector<std::vector<Int>> rows;
    Int removal_bound;  // Gram-Schmidt lengths above bound^2 get removed
};

namespace detail {

inline Rat dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return Rat(acc);
}

inline Int round_rat(const Rat& q) {
    // nearest integer via floor((2*num + den) / (2*den))
    Int num = q.get_num(), den = q.get_den();
    Int twice = 2 * num + den;
    Int den2 = 2 * den;
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), den2.get_mpz_t());
    return r;
}

}  // namespace detail

/**
 * LLL reduction (delta = 0.99) in exact rational arithmetic, then removal
 * of trailing vectors whose Gram-Schmidt length squared exceeds bound^2.
 * Rows must be linearly independent.
 */
inline std::vector<std::vector<Int>> lll_with_removals(const LatticeBasis& basis) {
    std::vector<std::vector<Int>> b = basis.rows;
    const long n = static_cast<long>(b.size());
    if (n == 0) return b;
    const Rat delta(99, 100);

    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> B(n, Rat(0));
    std::vector<Rat> scratch(n, Rat(0));

    auto red = [&](long k, long l) {
        Rat half(1, 2);
        if (mu[k][l] > half || mu[k][l] < -half) {
            Int q = detail::round_rat(mu[k][l]);
            for (std::size_t i = 0; i < b[k].size(); ++i) b[k][i] -= q * b[l][i];
            mu[k][l] -= Rat(q);
            for (long i = 0; i < l; ++i) mu[k][i] -= Rat(q) * mu[l][i];
        }
    };

    long k = 1, kmax = 0;
    B[0] = detail::dot(b[0], b[0]);
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            for (long j = 0; j <= k - 1; ++j) {
                Rat u = detail::dot(b[k], b[j]);
                for (long i = 0; i < j; ++i) u -= mu[j][i] * scratch[i];
                scratch[j] = u;
                mu[k][j] = u / B[j];
            }
            Rat bb = detail::dot(b[k], b[k]);
            for (long j = 0; j < k; ++j) bb -= mu[k][j] * scratch[j];
            B[k] = bb;
        }
        while (true) {
            red(k, k - 1);
            if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
                // swap b[k] and b[k-1], update the bookkeeping
                std::swap(b[k], b[k - 1]);
                for (long j = 0; j < k - 1; ++j) std::swap(mu[k][j], mu[k - 1][j]);
                Rat m = mu[k][k - 1];
                Rat Bk = B[k] + m * m * B[k - 1];
                mu[k][k - 1] = m * B[k - 1] / Bk;
                B[k] = B[k - 1] * B[k] / Bk;
                B[k - 1] = Bk;
                for (long i = k + 1; i <= kmax; ++i) {
                    Rat t = mu[i][k];
                    mu[i][k] = mu[i][k - 1] - m * t;
                    mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
                }
                k = std::max(1L, k - 1);
            } else {
                for (long l = k - 2; l >= 0; --l) red(k, l);
                ++k;
                break;
            }
        }
    }

    const Rat bound2 = Rat(basis.removal_bound) * Rat(basis.removal_bound);
    long keep = n;
    while (keep > 0 && B[keep - 1] > bound2) --keep;
    b.resize(keep);
    return b;
}

/**
 * Lattice of the principal-subfield computation for the factor pair
 * (f1 linear with root r1, fj): rows k = 0..n-1 are
 * (e_k | coeffs of (x^k mod fj) - r1^k) and one row (0 | p^a e_t) per
 * coefficient of fj, everything modulo p^a.
 */
inline LatticeBasis build_principal_lattice(const IntPoly& f, const ModPoly& fj, const Int& r1) {
    const long n = f.degree();
    const long d = fj.degree();
    const Int& m = fj.modulus();
    LatticeBasis basis;
    {
        Int norm2 = f.two_norm_squared();
        basis.removal_bound = Int(n) * Int(n) * (isqrt(norm2) + 1);
    }
    std::vector<Int> xk_mod(static_cast<std::size_t>(d), Int(0));  // x^k mod fj
    xk_mod[0] = 1;
    Int r1k = 1;
    for (long k = 0; k < n; ++k) {
        if (k > 0) {
            // multiply by x modulo fj
            std::vector<Int> next(static_cast<std::size_t>(d), Int(0));
            Int lead = xk_mod[d - 1];
            for (long t = d - 1; t > 0; --t) next[t] = xk_mod[t - 1];
            next[0] = 0;
            if (lead != 0)
                for (long t = 0; t < d; ++t) next[t] = mod(next[t] - lead * fj[t], m);
            xk_mod = std::move(next);
            r1k = mod(r1k * r1, m);
        }
        std::vector<Int> row(n + d, Int(0));
        row[k] = 1;
        for (long t = 0; t < d; ++t) row[n + t] = xk_mod[t];
        row[n] = mod(row[n] - r1k, m);
        basis.rows.push_back(std::move(row));
    }
    for (long t = 0; t < d; ++t) {
        std::vector<Int> row(n + d, Int(0));
        row[n + t] = m;
        basis.rows.push_back(std::move(row));
    }
    return basis;
}

/// Reduce a rational polynomial modulo p^a (denominators must be units).
inline ModPoly rat_poly_mod(const RatPoly& h, const Int& modulus) {
    std::vector<Int> c(h.degree() + 1);
    for (long i = 0; i <= h.degree(); ++i) {
        const Rat& v = h[i];
        c[i] = mod(v.get_num() * invmod(v.get_den(), modulus), modulus);
    }
    return ModPoly(std::move(c), modulus);
}

/// True if h is constant on the roots of the lifted factor with value h(r1).
inline bool embedding_constant_on_factor(const RatPoly& h, const ModPoly& factor,
                                         const Int& r1) {
    const Int& m = factor.modulus();
    ModPoly hm = rat_poly_mod(h, m);
    Int target = hm.eval(r1);
    ModPoly rem = mod_rem(hm, factor);
    return rem == ModPoly::constant(target, m);
}

struct PrincipalSubfieldConfig {
    long pr_l_cap = 1 << 14;
    long pr_b_cap = 1 << 12;
    ConfirmConfig confirm;
};

struct PrincipalSubfieldTrace {
    std::vector<long> pr_l_history;
    std::vector<long> pr_b_history;
};

/// Cache of the Hensel-lifted factorization at the current LLL precision.
struct LiftedFactorCache {
    long precision = 0;
    ModFactorization lifted;

    const ModFactorization& at(const ModFactorization& base, long pr) {
        if (precision != pr) {
            lifted = hensel_lift(base, pr);
            precision = pr;
        }
        return lifted;
    }
};

/// Initial LLL precision: ceil(1.5 * (2n + log_p ||f||_1)).
inline long initial_lll_precision(const IntPoly& f, const Int& p) {
    Int norm = f.one_norm();
    long logp = 0;
    Int pk = 1;
    while (pk < norm) {
        pk *= p;
        ++logp;
    }
    return (3 * (2 * f.degree() + logp) + 1) / 2;
}

/**
 * The principal subfield attached to the factor pair (f1 linear, fj):
 * LLL at the p-side, block identification at the p_s-side, confirmation,
 * with both precisions doubling exactly on their failure branches.
 * Returns a record flagged proven-principal (the rational field record
 * when the surviving span is one-dimensional).
 */
inline SubfieldRecord principal_subfield(const IntPoly& f, SplittingContext& ctx,
                                         const ModFactorization& base, std::size_t f1_index,
                                         std::size_t fj_index, LiftedFactorCache& cache,
                                         const PrincipalSubfieldConfig& config = {},
                                         PrincipalSubfieldTrace* trace = nullptr) {
    const long n = f.degree();
    const Int& p = base.prime;
    if (base.factors[f1_index].first.degree() != 1)
        throw std::invalid_argument("principal_subfield: f1 must be linear");

    long pr_l = initial_lll_precision(f, p);
    while (pr_l <= config.pr_l_cap) {
        if (trace) trace->pr_l_history.push_back(pr_l);
        const ModFactorization& lifted = cache.at(base, pr_l);
        const Int m = lifted.modulus();
        const ModPoly& f1 = lifted.factors[f1_index].first;
        const ModPoly& fj = lifted.factors[fj_index].first;
        const Int r1 = mod(-f1[0], m);

        LatticeBasis basis = build_principal_lattice(f, fj, r1);
        std::vector<std::vector<Int>> reduced = lll_with_removals(basis);

        // U = span of the first n coordinates of the survivors; keep a
        // maximal independent subset so k is exactly dim U.
        std::vector<IntPoly> hs;
        {
            std::vector<std::vector<Rat>> echelon;
            for (const auto& row : reduced) {
                std::vector<Rat> vec(n);
                for (long i = 0; i < n; ++i) vec[i] = Rat(row[i]);
                for (const auto& pivot_row : echelon) {
                    long piv = 0;
                    while (piv < n && pivot_row[piv] == 0) ++piv;
                    if (piv < n && vec[piv] != 0) {
                        Rat factor = vec[piv] / pivot_row[piv];
                        for (long i = piv; i < n; ++i) vec[i] -= factor * pivot_row[i];
                    }
                }
                bool nonzero = false;
                for (long i = 0; i < n; ++i)
                    if (vec[i] != 0) nonzero = true;
                if (!nonzero) continue;
                echelon.push_back(vec);
                std::vector<Int> left(row.begin(), row.begin() + n);
                hs.emplace_back(std::move(left));
            }
        }
        const long k = static_cast<long>(hs.size());
        if (k <= 1) {
            SubfieldRecord rec;
            rec.g = IntPoly::x();
            rec.h = RatPoly();
            std::vector<int> cls(n, 0);
            rec.blocks = BlockSystem(n, cls);
            rec.principal_proven = true;
            return rec;
        }

        // Block identification at the splitting prime.
        long pr_b = 1;
        std::optional<BlockSystem> blocks;
        bool restart_lll = false;
        while (pr_b <= config.pr_b_cap) {
            if (trace) trace->pr_b_history.push_back(pr_b);
            if (pr_b > ctx.precision) ctx = raise_precision(ctx, pr_b);
            ZqRing ring(ctx.prime, pr_b, ctx.ring.modulus_poly());
            auto roots = detail::roots_at_precision(ctx, pr_b);
            std::vector<std::vector<std::vector<Int>>> tuples(n);
            for (int i = 0; i < n; ++i)
                for (const auto& hp : hs)
                    tuples[i].push_back(ring.eval_poly(hp, roots[i]).coeffs());
            auto [kind, grouped] = classify_value_grouping(tuples, k);
            if (kind == ValueGrouping::kTooCoarse) {
                pr_b *= 2;
                continue;
            }
            if (kind == ValueGrouping::kNotASystem) {
                restart_lll = true;
            } else {
                blocks = grouped;
            }
            break;
        }
        if (!blocks.has_value() && !restart_lll)
            throw std::runtime_error("principal_subfield: block precision ceiling exceeded");
        if (!restart_lll) {
            auto record = confirm_block_system(ctx, *blocks, config.confirm);
            if (record.has_value()) {
                if (embedding_constant_on_factor(record->h, fj, r1)) {
                    // a-posteriori check: h's coefficient vector lies in U
                    auto [h_int, den] = record->h.to_integral();
                    std::vector<std::vector<Rat>> rows;
                    for (const auto& hp : hs) {
                        std::vector<Rat> r(n, Rat(0));
                        for (long i = 0; i <= hp.degree(); ++i) r[i] = Rat(hp[i]);
                        rows.push_back(std::move(r));
                    }
                    std::vector<Rat> target(n, Rat(0));
                    for (long i = 0; i <= h_int.degree(); ++i) target[i] = Rat(h_int[i]);
                    std::vector<long> pivot_col;
                    for (auto& row : rows) {
                        for (std::size_t t = 0; t < pivot_col.size(); ++t) {
                            long c = pivot_col[t];
                            if (c < n && row[c] != 0) {
                                Rat fac = row[c] / rows[t][c];
                                for (long i = 0; i < n; ++i) row[i] -= fac * rows[t][i];
                            }
                        }
                        long c = 0;
                        while (c < n && row[c] == 0) ++c;
                        pivot_col.push_back(c);  // n marks a zero row
                    }
                    for (std::size_t t = 0; t < rows.size(); ++t) {
                        long c = pivot_col[t];
                        if (c < n && target[c] != 0) {
                            Rat fac = target[c] / rows[t][c];
                            for (long i = 0; i < n; ++i) target[i] -= fac * rows[t][i];
                        }
                    }
                    bool inside = true;
                    for (long i = 0; i < n; ++i)
                        if (target[i] != 0) inside = false;
                    if (!inside)
                        throw std::logic_error(
                            "principal_subfield: embedding escaped the reduced span");
                    record->principal_proven = true;
                    return *record;
                }
            }
        }
        pr_l *= 2;
    }
    throw std::runtime_error("principal_subfield: LLL precision ceiling exceeded");
}

}  // namespace subfields

#endif  // SUBFIELDS_LLL_HPP
