/**************************************************************************
 * twisted_test.cpp
 *
 * Copyright 2026 The rankcode Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#include <gtest/gtest.h>

#include <optional>

#include "test_util.hpp"

using namespace rankcode;
using rankcode::testing::all_elements;
using rankcode::testing::as_linpoly;
using rankcode::testing::exhaustive_roots;
using rankcode::testing::gaussian_lambda;
using rankcode::testing::random_message;
using rankcode::testing::slow_frobenius;
using rankcode::testing::valid_eta;

namespace {

TwistedParams make_params(std::uint32_t q, std::size_t n, std::size_t k, std::size_t r, std::uint64_t seed) {
    const auto ctx = FieldCtx::standard(q, n);
    SplitMix64 rng(seed);
    return TwistedParams(CodeParams(ctx, k), valid_eta(ctx, k, rng), r);
}

struct Instance {
    std::vector<Fe> msg;
    LinPoly g;
    Word rx;
};

Instance make_instance(const TwistedParams& p, std::size_t t, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Instance in;
    in.msg = random_message(p.ctx(), p.k(), rng);
    in.g = random_error_poly(p.ctx(), t, rng);
    in.rx = add_words(p.ctx(), encode(p, in.msg), evaluate_on(p.ctx(), in.g, p.base().basis()));
    return in;
}

Fe p_of_a(const FieldCtx& ctx, const std::array<Fe, 3>& u, std::size_t l, const Fe& A) {
    const Fe al = slow_frobenius(ctx, A, l);
    Fe v = ctx.add(u[0], ctx.mul(u[1], A));
    v = ctx.add(v, ctx.mul(u[2], al));
    return ctx.add(v, ctx.mul(al, A));
}

Fe trinomial(const FieldCtx& ctx, const Fe& a, const Fe& b, std::size_t l, const Fe& X) {
    return ctx.add(ctx.add(ctx.mul(slow_frobenius(ctx, X, l), X), ctx.mul(a, X)), b);
}

bool proportional(const FieldCtx& ctx, const std::vector<Fe>& v, const std::vector<Fe>& w) {
    Matrix<Fe> m(2, v.size(), ctx.zero());
    for (std::size_t i = 0; i < v.size(); ++i) {
        m(0, i) = v[i];
        m(1, i) = w[i];
    }
    return rank(ctx, m) <= 1;
}

// The A with lambda_true ~ lambda + A lambda2, or nullopt when lambda_true ~ lambda2.
std::optional<std::optional<Fe>> true_a(const FieldCtx& ctx, const LambdaBasis& basis, const std::vector<Fe>& lam) {
    if (proportional(ctx, basis.lambda2, lam))
        return std::optional<Fe>{};
    for (const auto& A : all_elements(ctx)) {
        std::vector<Fe> cand(lam.size());
        for (std::size_t i = 0; i < lam.size(); ++i)
            cand[i] = ctx.add(basis.lambda[i], ctx.mul(A, basis.lambda2[i]));
        if (proportional(ctx, cand, lam))
            return std::optional<Fe>{A};
    }
    return std::nullopt;
}

} // namespace

TEST(TwistedParams, Validation) {
    const auto ctx2 = FieldCtx::standard(2, 4);
    EXPECT_THROW(TwistedParams(CodeParams(ctx2, 2), ctx2.one(), 1), InvalidParameter);
    EXPECT_NO_THROW(TwistedParams(CodeParams(ctx2, 2), ctx2.zero(), 1));
    EXPECT_THROW(TwistedParams(CodeParams(ctx2, 2), ctx2.zero(), 4), InvalidParameter);
    EXPECT_THROW(TwistedParams(CodeParams(ctx2, 4), ctx2.zero(), 1), InvalidParameter);

    // n k odd: the forbidden norm is -1.
    const auto ctx3 = FieldCtx::standard(3, 3);
    EXPECT_THROW(TwistedParams(CodeParams(ctx3, 1), ctx3.neg(ctx3.one()), 1), InvalidParameter);
    EXPECT_NO_THROW(TwistedParams(CodeParams(ctx3, 1), ctx3.one(), 1));
    // n k even: the forbidden norm is 1.
    const auto ctx34 = FieldCtx::standard(3, 4);
    EXPECT_THROW(TwistedParams(CodeParams(ctx34, 1), ctx34.one(), 1), InvalidParameter);
}

TEST(TwistedEncode, MessagePolynomial) {
    const auto ctx = FieldCtx::standard(3, 3);
    SplitMix64 rng(1);
    const Fe eta = valid_eta(ctx, 1, rng);
    const TwistedParams p(CodeParams(ctx, 1), eta, 1);
    for (int it = 0; it < 20; ++it) {
        const std::vector<Fe> a{ctx.random(rng)};
        const LinPoly f = twisted_message_poly(p, a);
        EXPECT_EQ(f[0], a[0]);
        EXPECT_EQ(f[1], ctx.mul(eta, ctx.pow(a[0], 3)));
        EXPECT_TRUE(f[2].is_zero());
        EXPECT_EQ(encode(p, a), evaluate_on(ctx, f, p.base().basis()));
    }
    const std::vector<Fe> zero{ctx.zero()};
    for (const auto& c : t_encode(p, zero))
        EXPECT_TRUE(c.is_zero());
    EXPECT_THROW(twisted_message_poly(p, std::vector<Fe>{}), InvalidParameter);
}

TEST(TwistedEncode, VanishingTwistIsGabidulin) {
    const auto p = make_params(5, 4, 2, 1, 2);
    SplitMix64 rng(2);
    for (int it = 0; it < 20; ++it) {
        const std::vector<Fe> a{p.ctx().zero(), p.ctx().random(rng)};
        EXPECT_EQ(t_encode(p, a), encode(p.base(), a));
    }
}

TEST(Trinomial, Examples) {
    const auto ctx = FieldCtx::standard(2, 6);
    EXPECT_EQ(trinomial_roots(ctx, ctx.zero(), ctx.zero(), 1), std::vector<Fe>{ctx.zero()});
    SplitMix64 rng(3);
    for (int it = 0; it < 100; ++it) {
        const std::size_t l = 1 + rng.below(5);
        const Fe a = ctx.random(rng), y2 = ctx.random(rng);
        const Fe y1 = ctx.sub(ctx.neg(a), slow_frobenius(ctx, y2, l));
        const auto roots = trinomial_roots(ctx, a, ctx.mul(y1, y2), l);
        EXPECT_TRUE(std::binary_search(roots.begin(), roots.end(), y2));
    }
}

TEST(Trinomial, CompositionIdentity) {
    for (auto [q, n] : {std::pair{2u, 6u}, {3u, 4u}}) {
        const auto ctx = FieldCtx::standard(q, n);
        SplitMix64 rng(4);
        for (int it = 0; it < 50; ++it) {
            const std::size_t l = rng.below(n);
            const Fe y1 = ctx.random(rng), y2 = ctx.random(rng);
            const auto factor = [&](const Fe& y) {
                return lp_sub(ctx, lp_monomial(ctx, l, ctx.one()), lp_monomial(ctx, 0, y));
            };
            LinPoly expect(ctx);
            expect = lp_add(ctx, expect, lp_monomial(ctx, 2 * l, ctx.one()));
            expect = lp_sub(ctx, expect, lp_monomial(ctx, l, ctx.add(slow_frobenius(ctx, y2, l), y1)));
            expect = lp_add(ctx, expect, lp_monomial(ctx, 0, ctx.mul(y1, y2)));
            EXPECT_EQ(lp_compose(ctx, factor(y1), factor(y2)), expect);
        }
    }
}

TEST(Trinomial, MatchesExhaustiveSearch) {
    for (auto [q, n] : {std::pair{2u, 6u}, {3u, 4u}, {2u, 4u}, {5u, 3u}}) {
        const auto ctx = FieldCtx::standard(q, n);
        SplitMix64 rng(5 + q);
        for (int it = 0; it < 150; ++it) {
            const std::size_t l = rng.below(n);
            const Fe a = it % 5 == 0 ? ctx.zero() : ctx.random(rng);
            const Fe b = it % 7 == 0 ? ctx.zero() : ctx.random(rng);
            const auto oracle = exhaustive_roots(ctx, [&](const Fe& x) { return trinomial(ctx, a, b, l, x); });
            ASSERT_EQ(trinomial_roots(ctx, a, b, l), oracle) << "q=" << q << " n=" << n << " l=" << l;
        }
    }
}

TEST(PofA, Examples) {
    const auto ctx = FieldCtx::standard(2, 6);
    const std::array<Fe, 3> zero{ctx.zero(), ctx.zero(), ctx.zero()};
    EXPECT_EQ(p_of_a_roots(ctx, zero, 1), std::vector<Fe>{ctx.zero()});
    SplitMix64 rng(6);
    for (int it = 0; it < 50; ++it) {
        const Fe u1 = ctx.random(rng), u2 = ctx.random(rng);
        const auto roots = p_of_a_roots(ctx, {ctx.mul(u1, u2), u1, u2}, 1 + rng.below(5));
        EXPECT_TRUE(std::binary_search(roots.begin(), roots.end(), ctx.neg(u2)));
    }
}

TEST(PofA, MatchesExhaustiveSearchInEveryCase) {
    for (auto [q, n] : {std::pair{2u, 6u}, {3u, 4u}, {2u, 5u}, {3u, 3u}}) {
        const auto ctx = FieldCtx::standard(q, n);
        SplitMix64 rng(7 + q + n);
        for (int it = 0; it < 300; ++it) {
            const std::size_t l = rng.below(n);
            std::array<Fe, 3> u{ctx.random(rng), ctx.random(rng), ctx.random(rng)};
            if (it % 3 == 1)
                u[0] = ctx.mul(u[1], u[2]);
            else if (it % 3 == 2)
                u[1] = slow_frobenius(ctx, u[2], l);
            const auto oracle = exhaustive_roots(ctx, [&](const Fe& A) { return p_of_a(ctx, u, l, A); });
            ASSERT_EQ(p_of_a_roots(ctx, u, l), oracle) << "q=" << q << " n=" << n << " l=" << l << " case " << it % 3;
        }
    }
}

TEST(AffineRoots, MatchesExhaustiveSearch) {
    for (auto [q, n] : {std::pair{2u, 6u}, {3u, 4u}}) {
        const auto ctx = FieldCtx::standard(q, n);
        SplitMix64 rng(19 + q);
        for (int it = 0; it < 200; ++it) {
            const std::size_t l = rng.below(n);
            const Fe c0 = ctx.random(rng);
            const Fe c1 = it % 4 == 0 ? ctx.zero() : ctx.random(rng);
            const Fe c2 = it % 4 == 1 ? ctx.zero() : ctx.random(rng);
            const auto oracle = exhaustive_roots(ctx, [&](const Fe& A) {
                return ctx.add(ctx.add(c0, ctx.mul(c1, A)), ctx.mul(c2, slow_frobenius(ctx, A, l)));
            });
            const auto roots = affine_roots(ctx, c0, c1, c2, l, ctx.order());
            ASSERT_TRUE(roots.has_value());
            ASSERT_EQ(*roots, oracle);
        }
        EXPECT_FALSE(affine_roots(ctx, ctx.zero(), ctx.zero(), ctx.zero(), 1, 4).has_value());
    }
}

TEST(Dim2System, Examples) {
    const auto p = make_params(3, 4, 2, 1, 8);
    const auto basis = solve_dim2_system(p.ctx(), LinPoly(p.ctx()), 2, 1);
    const auto& ctx = p.ctx();
    EXPECT_EQ(basis.lambda, (std::vector<Fe>{ctx.one(), ctx.zero()}));
    EXPECT_EQ(basis.lambda2, (std::vector<Fe>{ctx.zero(), ctx.one()}));

    const auto ctx6 = FieldCtx::standard(2, 6);
    EXPECT_THROW(solve_dim2_system(ctx6, LinPoly(ctx6), 2, 2), KernelDimMismatch);
    EXPECT_THROW(solve_dim2_system(ctx6, LinPoly(ctx6), 2, 1), InvalidParameter);
}

TEST(Dim2System, ContainsTrueLambda) {
    for (auto [q, n, k] : {std::tuple{2u, 6u, 2u}, {3u, 6u, 2u}, {2u, 7u, 1u}, {2u, 8u, 2u}}) {
        const auto p = make_params(q, n, k, 1, 9);
        const auto& ctx = p.ctx();
        const std::size_t t = (n - k) / 2;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto in = make_instance(p, t, seed);
            const auto h = interpolate(p.base(), in.rx);
            const auto basis = solve_dim2_system(ctx, h, k, t);
            const auto lam = gaussian_lambda(ctx, in.g, k, t);
            Matrix<Fe> m(3, t + 1, ctx.zero());
            for (std::size_t i = 0; i <= t; ++i) {
                m(0, i) = basis.lambda[i];
                m(1, i) = basis.lambda2[i];
                m(2, i) = lam[i];
            }
            EXPECT_EQ(rank(ctx, m), 2u);
        }
    }
}

TEST(TwistedSystem, TrueSolutionZeroesResidualsAndP) {
    for (auto [q, n, k, r] : {std::tuple{2u, 6u, 2u, 1u}, {3u, 6u, 2u, 2u}, {3u, 4u, 2u, 1u}, {5u, 4u, 2u, 3u}}) {
        const auto p = make_params(q, n, k, r, 10);
        const auto& ctx = p.ctx();
        const std::size_t t = (n - k) / 2;
        std::size_t checked = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto in = make_instance(p, t, seed);
            const auto h = interpolate(p.base(), in.rx);
            const auto basis = solve_dim2_system(ctx, h, k, t);
            const auto A = true_a(ctx, basis, gaussian_lambda(ctx, in.g, k, t));
            ASSERT_TRUE(A.has_value());
            TwistedSystem sys;
            try {
                sys = build_system(p, basis, h, t);
            } catch (const DegenerateLeadingCoefficient&) {
                // P loses its top term; a finite true A must solve what is left.
                const auto raw = detail::build_system_unnormalized(p, basis, h, t);
                const auto roots = affine_roots(ctx, raw.c[0], raw.c[1], raw.c[2], raw.l, kAffineRootLimit);
                ASSERT_TRUE(roots.has_value());
                if (A->has_value()) {
                    EXPECT_TRUE(std::binary_search(roots->begin(), roots->end(), **A));
                }
                continue;
            }
            // h_8 + eta g_0^(q^r) - g_k = 0 holds for any A.
            EXPECT_TRUE(ctx.sub(ctx.add(sys.h[8], ctx.mul(p.eta(), slow_frobenius(ctx, in.g[0], r))), in.g[k])
                            .is_zero());
            if (!A->has_value())
                continue;
            for (const auto& res : system_residuals(p, sys, **A, in.g[0], in.g[k]))
                EXPECT_TRUE(res.is_zero());
            EXPECT_TRUE(p_of_a(ctx, sys.u, sys.l, **A).is_zero());
            ++checked;
        }
        EXPECT_GE(checked, 90u);
    }
}

TEST(TwistedSystem, NoTwistErrorGivesZeroMixedTerm) {
    const auto p = make_params(3, 6, 2, 2, 11);
    const auto& ctx = p.ctx();
    SplitMix64 rng(11);
    for (int it = 0; it < 20; ++it) {
        const auto msg = random_message(ctx, 2, rng);
        LinPoly g = random_error_poly(ctx, 2, rng);
        g[0] = ctx.zero();
        g[2] = ctx.zero();
        const Word rx = add_words(ctx, encode(p, msg), evaluate_on(ctx, g, p.base().basis()));
        const auto h = interpolate(p.base(), rx);
        LambdaBasis basis{std::vector<Fe>(3, ctx.one()), std::vector<Fe>(3, ctx.one())};
        try {
            const auto sys = build_system(p, basis, h, 2);
            EXPECT_TRUE(sys.h[8].is_zero());
        } catch (const DegenerateLeadingCoefficient&) {
        }
    }
}

TEST(TwistedDecode, CleanCodeword) {
    const auto p = make_params(3, 5, 2, 1, 12);
    SplitMix64 rng(12);
    const auto msg = random_message(p.ctx(), 2, rng);
    const auto out = decode(p, t_encode(p, msg));
    ASSERT_TRUE(out.ok);
    EXPECT_TRUE(out.error.is_zero());
    EXPECT_EQ(out.message, as_linpoly(p.ctx(), msg));
}

TEST(TwistedDecode, ShortBranchRoundTrip) {
    for (auto [q, n, k, r] : {std::tuple{2u, 7u, 2u, 1u}, {3u, 7u, 2u, 3u}, {3u, 5u, 2u, 0u}, {5u, 6u, 1u, 2u}}) {
        const auto p = make_params(q, n, k, r, 13);
        for (std::size_t t = 1; k + 2 * t < n; ++t)
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                const auto in = make_instance(p, t, seed);
                const auto out = t_decode(p, in.rx);
                ASSERT_TRUE(out.ok) << q << "," << n << "," << k << " t=" << t << " seed " << seed;
                EXPECT_EQ(out.branch, DecodeBranch::twisted_bm);
                EXPECT_EQ(out.error, in.g);
                EXPECT_EQ(out.message, as_linpoly(p.ctx(), in.msg));
            }
    }
}

TEST(TwistedDecode, ShortBranchMatchesGabidulinReconstruction) {
    const auto p = make_params(2, 7, 2, 1, 14);
    const auto& ctx = p.ctx();
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto in = make_instance(p, 2, seed);
        const auto h = interpolate(p.base(), in.rx);
        const auto st = bm_solve(ctx, bm_sequence(ctx, h, 3));
        const std::span<const Fe> tail(h.coeffs().data() + 3, 4);
        const LinPoly g = reconstruct_error_poly(ctx, tail, st.lambda, 3);
        EXPECT_EQ(t_decode(p, in.rx).error, g);
    }
}

TEST(TwistedDecode, FullBranchRoundTrip) {
    for (auto [q, n, k, r] : {std::tuple{2u, 6u, 2u, 1u}, {3u, 6u, 2u, 1u}, {3u, 4u, 2u, 1u}, {5u, 4u, 2u, 2u},
                              {3u, 5u, 1u, 3u}, {2u, 8u, 2u, 5u}}) {
        const auto p = make_params(q, n, k, r, 15);
        const std::size_t t = (n - k) / 2;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto in = make_instance(p, t, seed);
            const auto out = t_decode(p, in.rx);
            ASSERT_TRUE(out.ok) << q << "," << n << "," << k << " seed " << seed << ": " << out.failure;
            EXPECT_EQ(out.branch, DecodeBranch::twisted_roots);
            EXPECT_EQ(out.candidates_verified, 1u);
            EXPECT_EQ(out.error, in.g);
            EXPECT_EQ(out.message, as_linpoly(p.ctx(), in.msg));
        }
    }
}

TEST(TwistedDecode, RootPathMatchesExhaustivePath) {
    for (auto [q, n, k, r] : {std::tuple{2u, 6u, 2u, 1u}, {3u, 4u, 2u, 1u}, {3u, 6u, 2u, 2u}}) {
        const auto p = make_params(q, n, k, r, 16);
        const std::size_t t = (n - k) / 2;
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const auto in = make_instance(p, t, seed);
            const auto h = interpolate(p.base(), in.rx);
            const auto a = twisted_full_branch(p, in.rx, h, t, CandidateSource::roots);
            const auto b = twisted_full_branch(p, in.rx, h, t, CandidateSource::exhaustive);
            ASSERT_TRUE(a.ok && b.ok);
            EXPECT_EQ(a.message, b.message);
            EXPECT_EQ(a.error, b.error);
            EXPECT_EQ(b.candidates_verified, 1u);
        }
    }
}

TEST(TwistedDecode, BeyondRadiusIsReported) {
    const auto p = make_params(3, 6, 2, 1, 17);
    std::size_t failures = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto in = make_instance(p, 3, seed);
        DecodeOutcome out;
        ASSERT_NO_THROW(out = t_decode(p, in.rx));
        if (!out.ok) {
            ++failures;
            EXPECT_THROW(decode_or_throw(p, in.rx), DecodeFailure);
        } else {
            EXPECT_LE(out.t_est, p.radius());
        }
    }
    EXPECT_GT(failures, 0u);
}

TEST(TwistedCode, MinimumDistance) {
    EXPECT_EQ(min_distance(make_params(2, 4, 2, 1, 18)), 3u);
    EXPECT_EQ(min_distance(make_params(3, 4, 2, 1, 18)), 3u);
    EXPECT_EQ(min_distance(make_params(3, 3, 1, 2, 18)), 3u);
    EXPECT_EQ(min_distance(make_params(5, 3, 1, 1, 18)), 3u);
}
