/**************************************************************************
 * twisted.hpp
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

#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "gabidulin.hpp"
#include "gf.hpp"
#include "linpoly.hpp"
#include "matrix.hpp"

namespace rankcode {

/// Largest field for which every A in GF(q^n) may be tried when the root path fails.
inline constexpr u128 kExhaustiveFieldLimit = u128(1) << 20;

/// Largest solution set of a degenerate P(A) that is enumerated directly.
inline constexpr u128 kAffineRootLimit = u128(1) << 16;

/**
 * Twisted Gabidulin code: messages a_0..a_{k-1} map to
 *   f(x) = a_0 x + ... + a_{k-1} x^(q^(k-1)) + eta a_0^(q^r) x^(q^k),
 * evaluated on the same basis as the underlying Gabidulin code.
 */
class TwistedParams {
public:
    TwistedParams(CodeParams base, Fe eta, std::size_t r_twist)
        : base_(std::move(base)), eta_(eta), r_(r_twist) {
        const auto& ctx = base_.ctx();
        if (base_.k() >= base_.n())
            throw InvalidParameter("twisted code needs k < n");
        if (r_ >= base_.n())
            throw InvalidParameter("twist exponent r must lie in [0, n)");
        if (eta_.size() != ctx.n())
            throw InvalidParameter("eta has the wrong degree");
        const bool odd = (base_.n() * base_.k()) % 2 == 1;
        const Fe forbidden = odd ? ctx.neg(ctx.one()) : ctx.one();
        if (ctx.norm(eta_) == forbidden)
            throw InvalidParameter("eta violates the norm condition N(eta) != (-1)^(nk)");
    }

    const CodeParams& base() const { return base_; }
    const FieldCtx& ctx() const { return base_.ctx(); }
    std::size_t n() const { return base_.n(); }
    std::size_t k() const { return base_.k(); }
    const Fe& eta() const { return eta_; }
    std::size_t r() const { return r_; }
    std::size_t radius() const { return base_.radius(); }

private:
    CodeParams base_;
    Fe eta_;
    std::size_t r_;
};

inline LinPoly twisted_message_poly(const TwistedParams& params, std::span<const Fe> a) {
    if (a.size() != params.k())
        throw InvalidParameter("message needs exactly k coefficients");
    const auto& ctx = params.ctx();
    LinPoly f(ctx);
    for (std::size_t i = 0; i < a.size(); ++i)
        f[i] = a[i];
    f[params.k()] = ctx.mul(params.eta(), ctx.frobenius(a[0], static_cast<long long>(params.r())));
    return f;
}

inline Word encode(const TwistedParams& params, std::span<const Fe> a) {
    return evaluate_on(params.ctx(), twisted_message_poly(params, a), params.base().basis());
}

inline Word t_encode(const TwistedParams& params, std::span<const Fe> a) { return encode(params, a); }

/// Sorted, duplicate-free.
inline std::vector<Fe> normalize_set(std::vector<Fe> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

/// X^(q^l + 1) = X^(q^l) * X.
inline Fe pow_qlp1(const FieldCtx& ctx, const Fe& x, std::size_t l) {
    return ctx.mul(ctx.frobenius(x, static_cast<long long>(l)), x);
}

/**
 * All roots in GF(q^n) of X^(q^l + 1) + a X + b.
 *
 * A nonzero root y = zeta * x0^(q^l - 1) corresponds to a nonzero root x0 of
 * the linearized polynomial
 *   L_zeta(x) = zeta^(q^l + 1) x^(q^(2l)) + a zeta x^(q^l) + b x,
 * where zeta runs over coset representatives of the (q^l - 1)-th powers
 * (there are q^gcd(l, n) - 1 cosets). With zeta = 1 this is the factorization
 *   (x^(q^l) - y_1 x) o (x^(q^l) - y_2 x) = x^(q^(2l)) + a x^(q^l) + b x.
 * Each L_zeta kernel is found by linear algebra over GF(q) and enumerated.
 */
inline std::vector<Fe> trinomial_roots(const FieldCtx& ctx, const Fe& a, const Fe& b, std::size_t l) {
    const std::size_t n = ctx.n();
    l %= n;
    std::vector<Fe> roots;
    if (b.is_zero())
        roots.push_back(ctx.zero());

    const std::size_t d = std::gcd(l, n); // gcd(0, n) = n
    u128 cosets = 1;
    for (std::size_t i = 0; i < d; ++i)
        cosets *= ctx.q();
    cosets -= 1;

    const Fe gamma = cosets > 1 ? primitive_element(ctx) : ctx.one();
    Fe zeta = ctx.one();
    for (u128 c = 0; c < cosets; ++c, zeta = ctx.mul(zeta, gamma)) {
        LinPoly lz(ctx);
        lz[(2 * l) % n] = ctx.add(lz[(2 * l) % n], pow_qlp1(ctx, zeta, l));
        lz[l] = ctx.add(lz[l], ctx.mul(a, zeta));
        lz[0] = ctx.add(lz[0], b);
        const auto basis = lp_kernel(ctx, lz);
        if (basis.empty())
            continue;
        u128 combos = 1;
        for (std::size_t i = 0; i < basis.size(); ++i)
            combos *= ctx.q();
        for (u128 idx = 1; idx < combos; ++idx) {
            Fe x0 = ctx.zero();
            u128 rest = idx;
            for (const auto& v : basis) {
                x0 = ctx.add(x0, ctx.scale(static_cast<std::uint32_t>(rest % ctx.q()), v));
                rest /= ctx.q();
            }
            const Fe w = ctx.mul(ctx.frobenius(x0, static_cast<long long>(l)), ctx.inv(x0));
            roots.push_back(ctx.mul(zeta, w));
        }
    }

    roots = normalize_set(std::move(roots));
    std::erase_if(roots, [&](const Fe& y) {
        return !ctx.add(ctx.add(pow_qlp1(ctx, y, l), ctx.mul(a, y)), b).is_zero();
    });
    return roots;
}

namespace detail {

inline u128 gcd128(u128 a, u128 b) {
    while (b) {
        const u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// e^-1 mod m for gcd(e, m) = 1, m < 2^126.
inline u128 inverse_mod(u128 e, u128 m) {
    using i128 = __int128;
    i128 old_r = static_cast<i128>(e % m), r = static_cast<i128>(m);
    i128 old_s = 1, s = 0;
    while (r != 0) {
        const i128 quot = old_r / r;
        i128 tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
    }
    const i128 mm = static_cast<i128>(m);
    return static_cast<u128>(((old_s % mm) + mm) % mm);
}

/// All Z with Z^(q^l + 1) = c.
inline std::vector<Fe> qlp1_roots(const FieldCtx& ctx, const Fe& c, std::size_t l) {
    if (c.is_zero())
        return {ctx.zero()};
    const u128 group = ctx.order() - 1;
    u128 ql = 1;
    for (std::size_t i = 0; i < l; ++i)
        ql *= ctx.q();
    const u128 e = (ql + 1) % group;
    const u128 d = gcd128(e == 0 ? group : e, group);
    if (ctx.pow(c, group / d) != ctx.one())
        return {};
    if (d == 1)
        return {ctx.pow(c, inverse_mod(e, group))};
    return trinomial_roots(ctx, ctx.zero(), ctx.neg(c), l);
}

} // namespace detail

/**
 * Roots of P(A) = u_0 + u_1 A + u_2 A^(q^l) + A^(q^l + 1).
 *
 * (i)   u_0 = u_1 u_2:       P = (A^(q^l) + u_1)(A + u_2).
 * (ii)  u_1 = u_2^(q^l):     P = u_0 - u_2^(q^l + 1) + (A + u_2)^(q^l + 1).
 * (iii) otherwise, with alpha = u_1 - u_2^(q^l), beta = u_0 - u_1 u_2 and
 *       A = (-beta / alpha) y - u_2, y solves y^(q^l + 1) - v y + v = 0
 *       where v = alpha^(q^l + 1) / beta^(q^l).
 */
inline std::vector<Fe> p_of_a_roots(const FieldCtx& ctx, const std::array<Fe, 3>& u, std::size_t l) {
    const std::size_t n = ctx.n();
    l %= n;
    const auto ll = static_cast<long long>(l);
    const auto& [u0, u1, u2] = u;
    std::vector<Fe> roots;

    const Fe alpha = ctx.sub(u1, ctx.frobenius(u2, ll));
    const Fe beta = ctx.sub(u0, ctx.mul(u1, u2));
    if (beta.is_zero()) {
        roots.push_back(ctx.neg(u2));
        roots.push_back(ctx.frobenius(ctx.neg(u1), -ll));
    } else if (alpha.is_zero()) {
        for (const auto& z : detail::qlp1_roots(ctx, ctx.neg(beta), l))
            roots.push_back(ctx.sub(z, u2));
    } else {
        const Fe v = ctx.div(pow_qlp1(ctx, alpha, l), ctx.frobenius(beta, ll));
        const Fe scale = ctx.neg(ctx.div(beta, alpha));
        for (const auto& y : trinomial_roots(ctx, ctx.neg(v), v, l))
            roots.push_back(ctx.sub(ctx.mul(scale, y), u2));
    }

    roots = normalize_set(std::move(roots));
    std::erase_if(roots, [&](const Fe& A) {
        Fe p = ctx.add(u0, ctx.mul(u1, A));
        p = ctx.add(p, ctx.mul(u2, ctx.frobenius(A, ll)));
        return !ctx.add(p, pow_qlp1(ctx, A, l)).is_zero();
    });
    return roots;
}

/**
 * Roots of c_0 + c_1 A + c_2 A^(q^l), an affine GF(q)-linear equation:
 * a particular solution plus the kernel of A -> c_1 A + c_2 A^(q^l).
 * Returns nullopt when there are more than limit solutions.
 */
inline std::optional<std::vector<Fe>> affine_roots(const FieldCtx& ctx, const Fe& c0, const Fe& c1, const Fe& c2,
                                                   std::size_t l, u128 limit) {
    const std::size_t n = ctx.n();
    const auto& gfq = ctx.base();
    LinPoly map(ctx);
    map[0] = c1;
    map[l % n] = ctx.add(map[l % n], c2);
    const auto m = lp_map_matrix(ctx, map);

    Matrix<std::uint32_t> aug(n, n + 1, 0);
    const Fe rhs = ctx.neg(c0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            aug(r, c) = m(r, c);
        aug(r, n) = rhs[r];
    }
    const auto ech = rref(gfq, aug);
    if (!ech.pivots.empty() && ech.pivots.back() == n)
        return std::vector<Fe>{};

    std::vector<std::uint32_t> particular(n, 0);
    for (std::size_t j = 0; j < ech.pivots.size(); ++j)
        particular[ech.pivots[j]] = ech.reduced(j, n);
    const auto ker = kernel(gfq, m);

    u128 count = 1;
    for (std::size_t i = 0; i < ker.size(); ++i) {
        if (count > limit / ctx.q())
            return std::nullopt;
        count *= ctx.q();
    }
    std::vector<Fe> out;
    for (u128 idx = 0; idx < count; ++idx) {
        auto v = particular;
        u128 rest = idx;
        for (const auto& kv : ker) {
            const auto mu = static_cast<std::uint32_t>(rest % ctx.q());
            rest /= ctx.q();
            for (std::size_t i = 0; i < n; ++i)
                v[i] = gfq.add(v[i], gfq.mul(mu, kv[i]));
        }
        out.push_back(ctx.from_coeffs(v));
    }
    return normalize_set(std::move(out));
}

struct LambdaBasis {
    std::vector<Fe> lambda;   // lambda_0..lambda_t
    std::vector<Fe> lambda2;
};

/**
 * Kernel of the middle-column equations when k + 2t = n:
 * for c = k+1, ..., k+t-1,   sum_{i=0}^{t} lambda_i g_{c+i}^(q^(n-c)) = 0.
 * Only g_{k+1}..g_{n-1} appear, all known from interpolation.
 */
inline LambdaBasis solve_dim2_system(const FieldCtx& ctx, const LinPoly& known, std::size_t k, std::size_t t) {
    const std::size_t n = ctx.n();
    if (t == 0 || k + 2 * t != n)
        throw InvalidParameter("two-dimensional lambda system needs k + 2t = n with t >= 1");
    Matrix<Fe> m(t - 1, t + 1, ctx.zero());
    for (std::size_t row = 0; row + 1 < t; ++row) {
        const std::size_t c = k + 1 + row;
        for (std::size_t i = 0; i <= t; ++i)
            m(row, i) = ctx.frobenius(known[c + i], static_cast<long long>(n - c));
    }
    auto basis = kernel(ctx, m);
    if (basis.size() != 2)
        throw KernelDimMismatch("lambda kernel has dimension " + std::to_string(basis.size()) + ", expected 2");
    return {std::move(basis[0]), std::move(basis[1])};
}

/**
 * Coefficients of the three-equation system in (A, g_0, g_k)
 *   h_0 + h_1 A + (h_2 + h_3 A) g_0^(q^(n-(k+t))) = 0
 *   h_4 + h_5 A + (h_6 + h_7 A) g_k^(q^(n-k))     = 0
 *   h_8 + eta g_0^(q^r) - g_k                     = 0
 * the two-equation form in A and g_0 after eliminating g_k (s_0..s_7), and
 * the normalized P(A) = u_0 + u_1 A + u_2 A^(q^l) + A^(q^l + 1).
 */
struct TwistedSystem {
    std::array<Fe, 9> h;
    std::array<Fe, 8> s;
    std::size_t l = 0;
    std::array<Fe, 3> u;
    std::array<Fe, 4> c;      // P before normalization: c_0 + c_1 A + c_2 A^(q^l) + c_3 A^(q^l+1)
    std::size_t g0_exp = 0;   // n - (k+t)
    std::size_t gk_exp = 0;   // n - k
};

namespace detail {

inline TwistedSystem build_system_unnormalized(const TwistedParams& params, const LambdaBasis& basis,
                                               const LinPoly& h_poly, std::size_t t) {
    const auto& ctx = params.ctx();
    const std::size_t n = params.n(), k = params.k();
    const auto frob = [&](const Fe& a, std::size_t e) { return ctx.frobenius(a, static_cast<long long>(e)); };
    const auto& lam = basis.lambda;
    const auto& lam2 = basis.lambda2;

    TwistedSystem sys;
    sys.g0_exp = (n - (k + t) % n) % n;
    sys.gk_exp = (n - k) % n;
    auto& h = sys.h;

    h.fill(ctx.zero());
    for (std::size_t i = 0; i < t; ++i) {
        const Fe g = frob(h_poly[k + t + i], sys.g0_exp);
        h[0] = ctx.add(h[0], ctx.mul(lam[i], g));
        h[1] = ctx.add(h[1], ctx.mul(lam2[i], g));
    }
    h[2] = lam[t];
    h[3] = lam2[t];
    for (std::size_t i = 1; i <= t; ++i) {
        const Fe g = frob(h_poly[k + i], sys.gk_exp);
        h[4] = ctx.add(h[4], ctx.mul(lam[i], g));
        h[5] = ctx.add(h[5], ctx.mul(lam2[i], g));
    }
    h[6] = lam[0];
    h[7] = lam2[0];
    h[8] = ctx.sub(h_poly[k], ctx.mul(params.eta(), frob(h_poly[0], params.r())));

    // g_k^(q^(n-k)) = h_8^(q^(n-k)) + eta^(q^(n-k)) g_0^(q^(r+n-k))
    auto& s = sys.s;
    const Fe h8k = frob(h[8], sys.gk_exp);
    const Fe etak = frob(params.eta(), sys.gk_exp);
    s[0] = h[0];
    s[1] = h[1];
    s[2] = h[2];
    s[3] = h[3];
    s[4] = ctx.add(h[4], ctx.mul(h[6], h8k));
    s[5] = ctx.add(h[5], ctx.mul(h[7], h8k));
    s[6] = ctx.mul(h[6], etak);
    s[7] = ctx.mul(h[7], etak);

    const std::size_t j_exp = (params.r() + n - k) % n;
    sys.l = (j_exp + n - sys.g0_exp) % n;

    // Raise the first equation to q^l and cross-multiply with the second.
    const Fe a0 = frob(s[0], sys.l), a1 = frob(s[1], sys.l);
    const Fe b0 = frob(s[2], sys.l), b1 = frob(s[3], sys.l);
    const Fe c0 = ctx.sub(ctx.mul(a0, s[6]), ctx.mul(s[4], b0));
    const Fe c1 = ctx.sub(ctx.mul(a0, s[7]), ctx.mul(s[5], b0));
    const Fe c2 = ctx.sub(ctx.mul(a1, s[6]), ctx.mul(s[4], b1));
    const Fe c3 = ctx.sub(ctx.mul(a1, s[7]), ctx.mul(s[5], b1));
    sys.c = {c0, c1, c2, c3};
    sys.u = {ctx.zero(), ctx.zero(), ctx.zero()};
    return sys;
}

} // namespace detail

inline TwistedSystem build_system(const TwistedParams& params, const LambdaBasis& basis, const LinPoly& h_poly,
                                  std::size_t t) {
    const auto& ctx = params.ctx();
    TwistedSystem sys = detail::build_system_unnormalized(params, basis, h_poly, t);
    if (sys.c[3].is_zero())
        throw DegenerateLeadingCoefficient("A^(q^l+1) coefficient vanishes");
    const Fe c3_inv = ctx.inv(sys.c[3]);
    sys.u = {ctx.mul(sys.c[0], c3_inv), ctx.mul(sys.c[1], c3_inv), ctx.mul(sys.c[2], c3_inv)};
    return sys;
}

/// Residuals of the three equations at (A, g_0, g_k).
inline std::array<Fe, 3> system_residuals(const TwistedParams& params, const TwistedSystem& sys, const Fe& A,
                                          const Fe& g0, const Fe& gk) {
    const auto& ctx = params.ctx();
    const auto& h = sys.h;
    const auto lin = [&](const Fe& x, const Fe& y) { return ctx.add(x, ctx.mul(y, A)); };
    return {
        ctx.add(lin(h[0], h[1]),
                ctx.mul(lin(h[2], h[3]), ctx.frobenius(g0, static_cast<long long>(sys.g0_exp)))),
        ctx.add(lin(h[4], h[5]),
                ctx.mul(lin(h[6], h[7]), ctx.frobenius(gk, static_cast<long long>(sys.gk_exp)))),
        ctx.sub(ctx.add(h[8], ctx.mul(params.eta(), ctx.frobenius(g0, static_cast<long long>(params.r())))),
                gk),
    };
}

namespace detail {

/// Accepts g if h - g is a twisted codeword and rank(g) is within the radius.
inline std::optional<DecodeOutcome> finish_twisted(const TwistedParams& params, const LinPoly& h, const LinPoly& g,
                                                   std::span<const Fe> received, DecodeBranch branch) {
    const auto& ctx = params.ctx();
    const std::size_t k = params.k();
    const LinPoly f = lp_sub(ctx, h, g);
    for (std::size_t i = k + 1; i < params.n(); ++i)
        if (!f[i].is_zero())
            return std::nullopt;
    std::vector<Fe> a(f.coeffs().begin(), f.coeffs().begin() + static_cast<long>(k));
    if (f[k] != ctx.mul(params.eta(), ctx.frobenius(a[0], static_cast<long long>(params.r()))))
        return std::nullopt;
    const std::size_t rank = lp_rank(ctx, g);
    if (rank > params.radius())
        return std::nullopt;
    const Word c = encode(params, a);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (ctx.add(c[i], lp_eval(ctx, g, params.base().basis()[i])) != received[i])
            return std::nullopt;

    DecodeOutcome out;
    out.message = LinPoly(ctx);
    for (std::size_t i = 0; i < k; ++i)
        out.message[i] = a[i];
    out.error = g;
    out.t_est = rank;
    out.ok = true;
    out.branch = branch;
    out.candidates_verified = 1;
    return out;
}

/**
 * Completes the error polynomial from one lambda candidate in the k + 2t = n
 * case: the first-column equation gives g_0, the twist relation gives g_k,
 * and the Dickson recurrence fills g_{k-1}..g_1 (and re-derives g_0).
 */
inline std::optional<LinPoly> complete_from_lambda(const TwistedParams& params, const LinPoly& h,
                                                   std::vector<Fe> lam, std::size_t t) {
    const auto& ctx = params.ctx();
    const std::size_t n = params.n(), k = params.k();
    if (lam[0].is_zero() || lam[t].is_zero())
        return std::nullopt;
    const Fe norm = ctx.inv(lam[0]);
    for (auto& v : lam)
        v = ctx.mul(norm, v);

    const auto g0_exp = static_cast<long long>((n - (k + t) % n) % n);
    Fe acc = ctx.zero();
    for (std::size_t i = 0; i < t; ++i)
        acc = ctx.add(acc, ctx.mul(lam[i], ctx.frobenius(h[k + t + i], g0_exp)));
    const Fe g0 = ctx.frobenius(ctx.neg(ctx.div(acc, lam[t])), -g0_exp);
    const Fe h8 = ctx.sub(h[k], ctx.mul(params.eta(), ctx.frobenius(h[0], static_cast<long long>(params.r()))));
    const Fe gk = ctx.add(h8, ctx.mul(params.eta(), ctx.frobenius(g0, static_cast<long long>(params.r()))));

    std::vector<Fe> tail{gk};
    for (std::size_t i = k + 1; i < n; ++i)
        tail.push_back(h[i]);
    LinPoly lambda(ctx);
    for (std::size_t i = 0; i <= t; ++i)
        lambda[i] = lam[i];
    LinPoly g = reconstruct_error_poly(ctx, tail, lambda, k);
    if (g[0] != g0)
        return std::nullopt;
    return g;
}

inline std::vector<Fe> combine(const FieldCtx& ctx, const LambdaBasis& basis, const std::optional<Fe>& A) {
    if (!A)
        return basis.lambda2;
    std::vector<Fe> lam(basis.lambda.size());
    for (std::size_t i = 0; i < lam.size(); ++i)
        lam[i] = ctx.add(basis.lambda[i], ctx.mul(*A, basis.lambda2[i]));
    return lam;
}

} // namespace detail

enum class CandidateSource { roots, exhaustive };

/**
 * The k + 2t = n case. Candidates are lambda + A lambda2 for A among the
 * roots of P (or every field element), plus lambda2 alone, which is the
 * root at infinity when P loses its leading coefficient. Every candidate
 * is completed and verified; the outcome reports how many survive. The
 * smallest surviving A wins (lambda2 alone sorts last).
 */
inline DecodeOutcome twisted_full_branch(const TwistedParams& params, std::span<const Fe> received,
                                         const LinPoly& h, std::size_t t, CandidateSource source) {
    const auto& ctx = params.ctx();
    DecodeOutcome fail;
    LambdaBasis basis;
    try {
        basis = solve_dim2_system(ctx, h, params.k(), t);
    } catch (const KernelDimMismatch& e) {
        fail.failure = e.what();
        return fail;
    }

    std::vector<std::optional<Fe>> candidates;
    DecodeBranch branch = DecodeBranch::twisted_roots;
    if (source == CandidateSource::roots) {
        const auto sys = detail::build_system_unnormalized(params, basis, h, t);
        if (!sys.c[3].is_zero()) {
            const Fe c3_inv = ctx.inv(sys.c[3]);
            const std::array<Fe, 3> u{ctx.mul(sys.c[0], c3_inv), ctx.mul(sys.c[1], c3_inv),
                                      ctx.mul(sys.c[2], c3_inv)};
            for (const auto& A : p_of_a_roots(ctx, u, sys.l))
                candidates.emplace_back(A);
        } else if (const auto roots = affine_roots(ctx, sys.c[0], sys.c[1], sys.c[2], sys.l, kAffineRootLimit)) {
            // P lost its top term; the remaining affine equation keeps the finite roots.
            for (const auto& A : *roots)
                candidates.emplace_back(A);
        }
    }
    if (source == CandidateSource::exhaustive) {
        if (ctx.order() > kExhaustiveFieldLimit) {
            fail.failure = "field too large for exhaustive search over A";
            return fail;
        }
        branch = DecodeBranch::twisted_exhaustive;
        std::vector<Fe> all;
        for (u128 idx = 0; idx < ctx.order(); ++idx)
            all.push_back(ctx.element(idx));
        for (const auto& A : normalize_set(std::move(all)))
            candidates.emplace_back(A);
    }
    candidates.emplace_back(std::nullopt);

    std::optional<DecodeOutcome> best;
    std::size_t verified = 0;
    for (const auto& A : candidates) {
        const auto g = detail::complete_from_lambda(params, h, detail::combine(ctx, basis, A), t);
        if (!g)
            continue;
        auto out = detail::finish_twisted(params, h, *g, received, branch);
        if (!out)
            continue;
        ++verified;
        if (!best)
            best = std::move(out);
    }
    if (!best) {
        fail.failure = "no candidate A passed verification";
        fail.branch = branch;
        return fail;
    }
    best->candidates_verified = verified;
    return *best;
}

/**
 * Decoder for twisted Gabidulin codes with arbitrary parameters.
 *
 * g_{k+1}..g_{n-1} are read from the interpolated polynomial; g_k is tied to
 * g_0 through the twist. BM on the n-k-1 known symbols estimates t. When
 * k + 2t < n that connection polynomial already determines g. Otherwise
 * (k + 2t = n) the two-dimensional lambda family is resolved through P(A),
 * falling back to trying every A when the root path yields nothing.
 */
inline DecodeOutcome decode(const TwistedParams& params, std::span<const Fe> received) {
    const auto& ctx = params.ctx();
    const std::size_t n = params.n(), k = params.k();
    const LinPoly h = interpolate(params.base(), received);

    if (auto clean = detail::finish_twisted(params, h, LinPoly(ctx), received, DecodeBranch::twisted_bm))
        return *clean;

    DecodeOutcome last;
    last.failure = "error rank exceeds decoding radius";

    const auto s = bm_sequence(ctx, h, k + 1);
    const BmState st = bm_solve(ctx, s);
    if (k + 2 * st.length < n) {
        const std::span<const Fe> tail(h.coeffs().data() + k + 1, n - k - 1);
        const LinPoly g = reconstruct_error_poly(ctx, tail, st.lambda, k + 1);
        if (auto out = detail::finish_twisted(params, h, g, received, DecodeBranch::twisted_bm))
            return *out;
    }

    if ((n - k) % 2 == 0) {
        const std::size_t t = (n - k) / 2;
        auto out = twisted_full_branch(params, received, h, t, CandidateSource::roots);
        if (out.ok)
            return out;
        if (out.branch == DecodeBranch::twisted_roots && ctx.order() <= kExhaustiveFieldLimit) {
            out = twisted_full_branch(params, received, h, t, CandidateSource::exhaustive);
            if (out.ok)
                return out;
        }
        last = out;
    }
    last.ok = false;
    return last;
}

inline DecodeOutcome t_decode(const TwistedParams& params, std::span<const Fe> received) {
    return decode(params, received);
}

} // namespace rankcode
