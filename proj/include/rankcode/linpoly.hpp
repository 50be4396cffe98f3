/**************************************************************************
 * linpoly.hpp
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

#include <cstdint>
#include <span>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace rankcode {

/**
 * Linearized polynomial f(x) = sum_i f_i x^(q^i) over GF(q^n).
 *
 * Always stores all n coefficients; exponents are read modulo x^(q^n) - x,
 * so a LinPoly is exactly a GF(q)-linear map GF(q^n) -> GF(q^n).
 */
class LinPoly {
public:
    LinPoly() = default;
    explicit LinPoly(const FieldCtx& ctx) : coeffs_(ctx.n(), ctx.zero()) { }
    explicit LinPoly(std::vector<Fe> coeffs) : coeffs_(std::move(coeffs)) { }

    std::size_t size() const { return coeffs_.size(); }
    const Fe& operator[](std::size_t i) const { return coeffs_[i]; }
    Fe& operator[](std::size_t i) { return coeffs_[i]; }
    const std::vector<Fe>& coeffs() const { return coeffs_; }

    /// Largest i with f_i != 0, or -1 for the zero polynomial.
    long q_degree() const {
        for (std::size_t i = coeffs_.size(); i-- > 0;)
            if (!coeffs_[i].is_zero())
                return static_cast<long>(i);
        return -1;
    }
    bool is_zero() const { return q_degree() < 0; }

    bool operator==(const LinPoly&) const = default;

private:
    std::vector<Fe> coeffs_;
};

inline LinPoly lp_monomial(const FieldCtx& ctx, std::size_t i, const Fe& c) {
    LinPoly f(ctx);
    f[i % ctx.n()] = c;
    return f;
}

/// f(x) = x.
inline LinPoly lp_identity(const FieldCtx& ctx) { return lp_monomial(ctx, 0, ctx.one()); }

/// Tr(x) = x + x^q + ... + x^(q^(n-1)).
inline LinPoly lp_trace(const FieldCtx& ctx) {
    return LinPoly(std::vector<Fe>(ctx.n(), ctx.one()));
}

inline LinPoly lp_add(const FieldCtx& ctx, const LinPoly& f, const LinPoly& g) {
    LinPoly out(ctx);
    for (std::size_t i = 0; i < ctx.n(); ++i)
        out[i] = ctx.add(f[i], g[i]);
    return out;
}

inline LinPoly lp_sub(const FieldCtx& ctx, const LinPoly& f, const LinPoly& g) {
    LinPoly out(ctx);
    for (std::size_t i = 0; i < ctx.n(); ++i)
        out[i] = ctx.sub(f[i], g[i]);
    return out;
}

/// c * f(x), scalar applied on the left.
inline LinPoly lp_scale(const FieldCtx& ctx, const Fe& c, const LinPoly& f) {
    LinPoly out(ctx);
    for (std::size_t i = 0; i < ctx.n(); ++i)
        out[i] = ctx.mul(c, f[i]);
    return out;
}

inline Fe lp_eval(const FieldCtx& ctx, const LinPoly& f, const Fe& a) {
    Fe acc = ctx.zero();
    for (std::size_t i = 0; i < ctx.n(); ++i) {
        if (f[i].is_zero())
            continue;
        acc = ctx.add(acc, ctx.mul(f[i], ctx.frobenius(a, static_cast<long long>(i))));
    }
    return acc;
}

/// (f o g)_k = sum_{i+j = k mod n} f_i g_j^(q^i).
inline LinPoly lp_compose(const FieldCtx& ctx, const LinPoly& f, const LinPoly& g) {
    const std::size_t n = ctx.n();
    LinPoly out(ctx);
    for (std::size_t i = 0; i < n; ++i) {
        if (f[i].is_zero())
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (g[j].is_zero())
                continue;
            const Fe term = ctx.mul(f[i], ctx.frobenius(g[j], static_cast<long long>(i)));
            out[(i + j) % n] = ctx.add(out[(i + j) % n], term);
        }
    }
    return out;
}

/// n x n matrix over GF(q) of f on the power basis: column c holds f(x^c).
inline Matrix<std::uint32_t> lp_map_matrix(const FieldCtx& ctx, const LinPoly& f) {
    const std::size_t n = ctx.n();
    Matrix<std::uint32_t> m(n, n, 0);
    for (std::size_t c = 0; c < n; ++c) {
        Fe basis(n);
        basis.set(c, 1);
        const Fe img = lp_eval(ctx, f, basis);
        for (std::size_t r = 0; r < n; ++r)
            m(r, c) = img[r];
    }
    return m;
}

/// Rank of f as a GF(q)-linear map.
inline std::size_t lp_rank(const FieldCtx& ctx, const LinPoly& f) {
    return rank(ctx.base(), lp_map_matrix(ctx, f));
}

/// GF(q)-basis of the roots of f in GF(q^n).
inline std::vector<Fe> lp_kernel(const FieldCtx& ctx, const LinPoly& f) {
    std::vector<Fe> out;
    for (const auto& v : kernel(ctx.base(), lp_map_matrix(ctx, f)))
        out.push_back(ctx.from_coeffs(v));
    return out;
}

/// M[i][j] = f_{(i-j) mod n}^(q^j).
inline Matrix<Fe> dickson_matrix(const FieldCtx& ctx, const LinPoly& f) {
    const std::size_t n = ctx.n();
    Matrix<Fe> m(n, n, ctx.zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = ctx.frobenius(f[(i + n - j) % n], static_cast<long long>(j));
    return m;
}

/// entry[i][j] = points[j]^(q^i), for 0 <= i < rows.
inline Matrix<Fe> moore_matrix(const FieldCtx& ctx, std::span<const Fe> points, std::size_t rows) {
    if (rows == 0)
        throw InvalidParameter("Moore matrix needs at least one row");
    Matrix<Fe> m(rows, points.size(), ctx.zero());
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < points.size(); ++j)
            m(i, j) = ctx.frobenius(points[j], static_cast<long long>(i));
    return m;
}

/// a * Tr(b x), i.e. coefficients a * b^(q^i).
inline LinPoly lp_trace_form(const FieldCtx& ctx, const Fe& a, const Fe& b) {
    LinPoly out(ctx);
    for (std::size_t i = 0; i < ctx.n(); ++i)
        out[i] = ctx.mul(a, ctx.frobenius(b, static_cast<long long>(i)));
    return out;
}

struct RankDecomposition {
    std::vector<Fe> image;  // a_1..a_r, a basis of the image of f
    std::vector<Fe> dual;   // b_1..b_r with f(x) = sum_j a_j Tr(b_j x)
};

/**
 * Writes f as a sum of rank(f) rank-one maps a_j Tr(b_j x).
 *
 * The a_j are the images of the pivot basis vectors of f's matrix (column
 * order). The coordinate functional of a_j is read off the reduced echelon
 * form and converted to its trace representative b_j through the inverse of
 * the trace form Tr(x^c x^d).
 */
inline RankDecomposition rank_decompose(const FieldCtx& ctx, const LinPoly& f) {
    const std::size_t n = ctx.n();
    const auto& gfq = ctx.base();
    const auto map = lp_map_matrix(ctx, f);
    const auto ech = rref(gfq, map);

    RankDecomposition out;
    if (ech.pivots.empty())
        return out;

    Matrix<std::uint32_t> trace_form(n, n, 0);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
            Fe xc(n), xd(n);
            xc.set(c, 1);
            xd.set(d, 1);
            trace_form(c, d) = ctx.trace(ctx.mul(xc, xd))[0];
        }
    const auto trace_inv = inverse(gfq, trace_form);

    for (std::size_t j = 0; j < ech.pivots.size(); ++j) {
        std::vector<std::uint32_t> a(n), functional(n);
        for (std::size_t r = 0; r < n; ++r)
            a[r] = map(r, ech.pivots[j]);
        for (std::size_t c = 0; c < n; ++c)
            functional[c] = ech.reduced(j, c);
        out.image.push_back(ctx.from_coeffs(a));
        out.dual.push_back(ctx.from_coeffs(multiply(gfq, trace_inv, functional)));
    }
    return out;
}

/// Draws count GF(q)-independent elements by rejection.
inline std::vector<Fe> random_independent(const FieldCtx& ctx, std::size_t count, SplitMix64& rng) {
    if (count > ctx.n())
        throw InvalidRank("cannot draw " + std::to_string(count) + " independent elements in degree "
                          + std::to_string(ctx.n()));
    for (;;) {
        std::vector<Fe> v;
        for (std::size_t i = 0; i < count; ++i)
            v.push_back(ctx.random(rng));
        if (fe_vector_rank(ctx, v) == count)
            return v;
    }
}

/// Random linearized polynomial of rank exactly t, built as sum_j a_j Tr(b_j x).
inline LinPoly random_error_poly(const FieldCtx& ctx, std::size_t t, SplitMix64& rng) {
    if (t > ctx.n())
        throw InvalidRank("error rank " + std::to_string(t) + " exceeds n = " + std::to_string(ctx.n()));
    const auto a = random_independent(ctx, t, rng);
    const auto b = random_independent(ctx, t, rng);
    LinPoly g(ctx);
    for (std::size_t j = 0; j < t; ++j)
        g = lp_add(ctx, g, lp_trace_form(ctx, a[j], b[j]));
    return g;
}

inline LinPoly random_error_poly(const FieldCtx& ctx, std::size_t t, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return random_error_poly(ctx, t, rng);
}

} // namespace rankcode
