/**************************************************************************
 * gabidulin.hpp
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
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "linpoly.hpp"
#include "matrix.hpp"

namespace rankcode {

using Word = std::vector<Fe>;

/**
 * Gabidulin code of dimension k over GF(q^n): evaluations of linearized
 * polynomials of q-degree < k on a GF(q)-basis alpha_1..alpha_n.
 *
 * The inverse of the interpolation matrix U[i][j] = alpha_i^(q^j) is
 * computed once here and reused by every decode.
 */
class CodeParams {
public:
    /// Power basis 1, x, ..., x^(n-1).
    CodeParams(FieldCtx ctx, std::size_t k) : CodeParams(ctx, k, power_basis(ctx)) { }

    CodeParams(FieldCtx ctx, std::size_t k, std::vector<Fe> basis)
        : ctx_(std::move(ctx)), k_(k), basis_(std::move(basis)) {
        const std::size_t n = ctx_.n();
        if (k_ < 1 || k_ > n)
            throw InvalidParameter("code dimension k must satisfy 1 <= k <= n");
        if (basis_.size() != n || fe_vector_rank(ctx_, basis_) != n)
            throw InvalidParameter("evaluation points must form a GF(q)-basis");
        u_inv_ = inverse(ctx_, interpolation_matrix());
    }

    const FieldCtx& ctx() const { return ctx_; }
    std::size_t n() const { return ctx_.n(); }
    std::size_t k() const { return k_; }
    const std::vector<Fe>& basis() const { return basis_; }
    const Matrix<Fe>& u_inv() const { return u_inv_; }
    /// Largest error rank t with 2t < n - k + 1.
    std::size_t radius() const { return (n() - k_) / 2; }

    /// U[i][j] = alpha_i^(q^j), so U * (f_0..f_{n-1}) = (f(alpha_1)..f(alpha_n)).
    Matrix<Fe> interpolation_matrix() const {
        const std::size_t n = ctx_.n();
        Matrix<Fe> u(n, n, ctx_.zero());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                u(i, j) = ctx_.frobenius(basis_[i], static_cast<long long>(j));
        return u;
    }

    static std::vector<Fe> power_basis(const FieldCtx& ctx) {
        std::vector<Fe> b;
        for (std::size_t i = 0; i < ctx.n(); ++i) {
            Fe e(ctx.n());
            e.set(i, 1);
            b.push_back(e);
        }
        return b;
    }

private:
    FieldCtx ctx_;
    std::size_t k_;
    std::vector<Fe> basis_;
    Matrix<Fe> u_inv_;
};

enum class DecodeBranch {
    none,
    gabidulin,          // interpolation + Berlekamp-Massey + Dickson recurrence
    twisted_bm,         // twisted code, k + 2t < n
    twisted_roots,      // twisted code, k + 2t = n, candidates from P(A) roots
    twisted_exhaustive, // twisted code, k + 2t = n, every A tried
};

inline const char* to_string(DecodeBranch b) {
    switch (b) {
    case DecodeBranch::none: return "none";
    case DecodeBranch::gabidulin: return "gabidulin";
    case DecodeBranch::twisted_bm: return "twisted-bm";
    case DecodeBranch::twisted_roots: return "twisted-roots";
    case DecodeBranch::twisted_exhaustive: return "twisted-exhaustive";
    }
    return "?";
}

struct DecodeOutcome {
    LinPoly message;   // q-degree < k
    LinPoly error;
    std::size_t t_est = 0;
    bool ok = false;
    DecodeBranch branch = DecodeBranch::none;
    std::size_t candidates_verified = 0;
    std::string failure;
};

inline Word evaluate_on(const FieldCtx& ctx, const LinPoly& f, std::span<const Fe> points) {
    Word out;
    out.reserve(points.size());
    for (const auto& a : points)
        out.push_back(lp_eval(ctx, f, a));
    return out;
}

inline Word encode(const CodeParams& params, const LinPoly& f) {
    for (std::size_t i = params.k(); i < params.n(); ++i)
        if (!f[i].is_zero())
            throw CoefficientOutOfRange("message coefficient " + std::to_string(i) + " must be zero (k = "
                                        + std::to_string(params.k()) + ")");
    return evaluate_on(params.ctx(), f, params.basis());
}

inline Word encode(const CodeParams& params, std::span<const Fe> message) {
    if (message.size() != params.k())
        throw InvalidParameter("message needs exactly k coefficients");
    LinPoly f(params.ctx());
    for (std::size_t i = 0; i < message.size(); ++i)
        f[i] = message[i];
    return encode(params, f);
}

/// Unique h with h(alpha_i) = received[i], computed as U^-1 * received.
inline LinPoly interpolate(const CodeParams& params, std::span<const Fe> received) {
    if (received.size() != params.n())
        throw InvalidParameter("received word must have n symbols");
    return LinPoly(multiply(params.ctx(), params.u_inv(), Word(received.begin(), received.end())));
}

/// Register state of the Berlekamp-Massey recursion over x -> x^q.
struct BmState {
    LinPoly lambda;          // connection polynomial, lambda_0 = 1
    LinPoly b;               // correction polynomial
    std::size_t length = 0;  // L
    std::size_t i = 0;       // symbols consumed
};

inline BmState bm_init(const FieldCtx& ctx) {
    return {lp_identity(ctx), lp_identity(ctx), 0, 0};
}

/// x^q o B: shifts coefficients up by one and raises each to the q.
inline LinPoly lp_shift_frobenius(const FieldCtx& ctx, const LinPoly& b) {
    const std::size_t n = ctx.n();
    LinPoly out(ctx);
    for (std::size_t j = 0; j < n; ++j)
        out[(j + 1) % n] = ctx.frobenius(b[j], 1);
    return out;
}

/// Discrepancy s_i + sum_{j=1}^{L} lambda_j s_{i-j}^(q^j).
inline Fe bm_discrepancy(const FieldCtx& ctx, const LinPoly& lambda, std::size_t length,
                         std::span<const Fe> s, std::size_t i) {
    Fe delta = s[i];
    for (std::size_t j = 1; j <= std::min(length, i); ++j)
        delta = ctx.add(delta, ctx.mul(lambda[j], ctx.frobenius(s[i - j], static_cast<long long>(j))));
    return delta;
}

/// Consumes s[state.i].
inline void bm_step(const FieldCtx& ctx, BmState& st, std::span<const Fe> s) {
    const std::size_t i = st.i;
    const Fe delta = bm_discrepancy(ctx, st.lambda, st.length, s, i);
    const LinPoly shifted = lp_shift_frobenius(ctx, st.b);
    LinPoly next = lp_sub(ctx, st.lambda, lp_scale(ctx, delta, shifted));
    if (delta.is_zero() || 2 * st.length > i) {
        st.b = shifted;
    } else {
        st.b = lp_scale(ctx, ctx.inv(delta), st.lambda);
        st.length = i + 1 - st.length;
    }
    st.lambda = std::move(next);
    st.i = i + 1;
}

/**
 * Shortest connection polynomial Lambda (lambda_0 = 1, q-degree L) with
 *   s_i + sum_{j=1}^{L} lambda_j s_{i-j}^(q^j) = 0   for L <= i < s.size().
 * An empty or all-zero sequence yields Lambda = x, L = 0.
 */
inline BmState bm_solve(const FieldCtx& ctx, std::span<const Fe> s) {
    BmState st = bm_init(ctx);
    while (st.i < s.size())
        bm_step(ctx, st, s);
    return st;
}

/// u_i = g_i^(q^(n-i)); the inverse is g_i = u_i^(q^i).
inline Fe to_u(const FieldCtx& ctx, const Fe& g, std::size_t i) {
    return ctx.frobenius(g, static_cast<long long>(ctx.n()) - static_cast<long long>(i));
}

/**
 * BM input built from the known tail g_first..g_{n-1}: s_m = u_{n-1-m}.
 * Produces n - first symbols.
 */
inline std::vector<Fe> bm_sequence(const FieldCtx& ctx, const LinPoly& g, std::size_t first) {
    std::vector<Fe> s;
    for (std::size_t idx = ctx.n(); idx-- > first;)
        s.push_back(to_u(ctx, g[idx], idx));
    return s;
}

/**
 * Fills g_{k-1}, ..., g_0 from the known g_k..g_{n-1} and Lambda of q-degree t.
 *
 * Column j = (n - r) mod n of the Dickson matrix of g satisfies
 *   sum_{i=0}^{t} lambda_i g_{r+i}^(q^j) = 0,
 * which is solved for the i = 0 term: g_r = (-sum_{i>=1} lambda_i g_{r+i}^(q^j))^(q^r).
 */
inline LinPoly reconstruct_error_poly(const FieldCtx& ctx, std::span<const Fe> known_tail,
                                      const LinPoly& lambda, std::size_t k) {
    const std::size_t n = ctx.n();
    if (k + known_tail.size() != n)
        throw InvalidParameter("known tail must hold g_k..g_{n-1}");
    if (lambda[0] != ctx.one())
        throw InvalidParameter("connection polynomial must have lambda_0 = 1");
    const long deg = lambda.q_degree();
    const std::size_t t = static_cast<std::size_t>(deg);
    if (t > known_tail.size())
        throw InvalidParameter("connection polynomial longer than the known tail");

    LinPoly g(ctx);
    for (std::size_t i = 0; i < known_tail.size(); ++i)
        g[k + i] = known_tail[i];
    for (std::size_t r = k; r-- > 0;) {
        const long long j = static_cast<long long>((n - r) % n);
        Fe acc = ctx.zero();
        for (std::size_t i = 1; i <= t; ++i)
            acc = ctx.add(acc, ctx.mul(lambda[i], ctx.frobenius(g[r + i], j)));
        g[r] = ctx.frobenius(ctx.neg(acc), static_cast<long long>(r));
    }
    return g;
}

namespace detail {

inline bool words_equal(const CodeParams& params, const LinPoly& message, const LinPoly& error,
                        std::span<const Fe> received) {
    const auto& ctx = params.ctx();
    const Word c = evaluate_on(ctx, lp_add(ctx, message, error), params.basis());
    return std::equal(c.begin(), c.end(), received.begin(), received.end());
}

} // namespace detail

/**
 * Interpolate, run BM on the n-k known error coefficients, rebuild the error
 * polynomial from the Dickson recurrence and subtract it. The result is
 * re-verified; an error rank above the unique decoding radius is reported
 * through ok = false rather than returned as a miscorrection.
 */
inline DecodeOutcome decode(const CodeParams& params, std::span<const Fe> received) {
    const auto& ctx = params.ctx();
    const std::size_t n = params.n(), k = params.k();
    const LinPoly h = interpolate(params, received);

    DecodeOutcome out;
    out.branch = DecodeBranch::gabidulin;

    const bool tail_zero = std::all_of(h.coeffs().begin() + static_cast<long>(k), h.coeffs().end(),
                                       [](const Fe& a) { return a.is_zero(); });
    if (tail_zero) {
        out.message = h;
        out.error = LinPoly(ctx);
        out.ok = true;
        return out;
    }

    const auto s = bm_sequence(ctx, h, k);
    const BmState st = bm_solve(ctx, s);
    if (2 * st.length > n - k) {
        out.failure = "connection polynomial length " + std::to_string(st.length) + " exceeds decoding radius";
        return out;
    }

    const std::span<const Fe> tail(h.coeffs().data() + k, n - k);
    out.error = reconstruct_error_poly(ctx, tail, st.lambda, k);
    out.message = lp_sub(ctx, h, out.error);
    out.t_est = lp_rank(ctx, out.error);

    if (out.t_est > params.radius()) {
        out.failure = "error rank " + std::to_string(out.t_est) + " exceeds decoding radius";
        return out;
    }
    if (!detail::words_equal(params, out.message, out.error, received)) {
        out.failure = "re-encoding does not reproduce the received word";
        return out;
    }
    out.ok = true;
    return out;
}

/// decode, throwing DecodeFailure instead of returning ok = false.
template<typename Params>
DecodeOutcome decode_or_throw(const Params& params, std::span<const Fe> received) {
    DecodeOutcome out = decode(params, received);
    if (!out.ok)
        throw DecodeFailure(out.failure);
    return out;
}

} // namespace rankcode
