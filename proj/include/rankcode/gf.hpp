/**************************************************************************
 * gf.hpp
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
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"

namespace rankcode {

using u128 = unsigned __int128;

/// Largest supported extension degree. Fe stores its coefficients inline.
inline constexpr std::size_t kMaxDegree = 64;
/// Coefficients are stored as bytes, so the base field prime must fit.
inline constexpr std::uint32_t kMaxPrime = 251;

namespace detail {

inline bool is_prime(std::uint64_t p) {
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

inline std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp, std::uint32_t q) {
    std::uint64_t result = 1 % q;
    std::uint64_t b = base % q;
    while (exp) {
        if (exp & 1)
            result = result * b % q;
        b = b * b % q;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

/// Dense polynomials over GF(q), little-endian, trimmed (no trailing zeros).
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t q) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = pow_mod(m.back(), q - 2, q);
    while (a.size() >= m.size()) {
        const std::uint64_t factor = std::uint64_t(a.back()) * lead_inv % q;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (q - factor) * m[i] % q) % q);
        trim(a);
    }
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t q) {
    if (a.empty() || b.empty())
        return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(a[i]) * b[j]) % q);
    return poly_mod(std::move(prod), m, q);
}

inline Poly poly_powmod(Poly base, std::uint64_t exp, const Poly& m, std::uint32_t q) {
    Poly result{1};
    base = poly_mod(std::move(base), m, q);
    while (exp) {
        if (exp & 1)
            result = poly_mulmod(result, base, m, q);
        base = poly_mulmod(base, base, m, q);
        exp >>= 1;
    }
    return result;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint32_t q) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = poly_mod(std::move(a), b, q);
        std::swap(a, b);
    }
    return a;
}

} // namespace detail

/// Prime field GF(q) acting on plain integers in [0, q).
class PrimeField {
public:
    using value_type = std::uint32_t;

    explicit PrimeField(std::uint32_t q) : q_(q) {
        if (!detail::is_prime(q))
            throw InvalidParameter("base field order " + std::to_string(q) + " is not prime");
    }

    std::uint32_t order() const { return q_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type add(value_type a, value_type b) const { return (a + b) % q_; }
    value_type sub(value_type a, value_type b) const { return (a + q_ - b) % q_; }
    value_type neg(value_type a) const { return (q_ - a) % q_; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(std::uint64_t(a) * b % q_);
    }
    value_type inv(value_type a) const {
        if (a % q_ == 0)
            throw DivisionByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
        return detail::pow_mod(a, q_ - 2, q_);
    }
    bool is_zero(value_type a) const { return a % q_ == 0; }

private:
    std::uint32_t q_;
};

/// Element of GF(q^n): n coefficients over GF(q) in the power basis of the modulus.
class Fe {
public:
    Fe() = default;
    explicit Fe(std::size_t degree) : n_(static_cast<std::uint8_t>(degree)) {
        if (degree > kMaxDegree)
            throw InvalidParameter("extension degree exceeds " + std::to_string(kMaxDegree));
    }

    std::size_t size() const { return n_; }
    std::uint32_t operator[](std::size_t i) const { return c_[i]; }
    void set(std::size_t i, std::uint32_t v) { c_[i] = static_cast<std::uint8_t>(v); }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.begin() + n_, [](auto v) { return v == 0; });
    }

    // Lexicographic in (c_0, c_1, ...), which is the order used for tie-breaking.
    auto operator<=>(const Fe&) const = default;
    bool operator==(const Fe&) const = default;

private:
    std::array<std::uint8_t, kMaxDegree> c_{};
    std::uint8_t n_ = 0;
};

bool is_irreducible(std::uint32_t q, const std::vector<std::uint32_t>& modulus);
std::vector<std::uint32_t> default_modulus(std::uint32_t q, std::size_t n);

/**
 * GF(q^n) = GF(q)[x] / (modulus).
 *
 * Owns all arithmetic on Fe. Multiplication reduces through a table of
 * x^j mod modulus for n <= j <= 2n-2, and the Frobenius powers are stored
 * as the images of the power basis so a^(q^i) is a GF(q)-linear combination.
 * Immutable once constructed.
 */
class FieldCtx {
public:
    using value_type = Fe;

    FieldCtx(std::uint32_t q, std::size_t n, std::vector<std::uint32_t> modulus)
        : base_(q), n_(n), modulus_(std::move(modulus)) {
        if (q > kMaxPrime)
            throw InvalidParameter("base field prime must be at most " + std::to_string(kMaxPrime));
        if (n < 2 || n > kMaxDegree)
            throw InvalidParameter("extension degree must be in [2, " + std::to_string(kMaxDegree) + "]");
        if (modulus_.size() != n + 1)
            throw InvalidParameter("modulus must have n+1 coefficients");
        for (auto c : modulus_)
            if (c >= q)
                throw InvalidParameter("modulus coefficient out of range");
        if (modulus_.back() != 1)
            throw InvalidParameter("modulus must be monic");
        order_ = 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (order_ > (u128(1) << 126) / q)
                throw InvalidParameter("field order does not fit 127 bits");
            order_ *= q;
        }
        if (!is_irreducible(q, modulus_))
            throw InvalidParameter("modulus is reducible over GF(" + std::to_string(q) + ")");
        build_tables();
    }

    /// Field with the default modulus for (q, n).
    static FieldCtx standard(std::uint32_t q, std::size_t n) {
        return FieldCtx(q, n, default_modulus(q, n));
    }

    std::uint32_t q() const { return base_.order(); }
    std::size_t n() const { return n_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    const PrimeField& base() const { return base_; }
    u128 order() const { return order_; }

    Fe zero() const { return Fe(n_); }
    Fe one() const { return scalar(1); }
    /// Image of a base field element.
    Fe scalar(std::uint32_t mu) const {
        Fe out(n_);
        out.set(0, mu % q());
        return out;
    }
    /// The class of x, a root of the modulus.
    Fe generator() const {
        Fe out(n_);
        out.set(1, 1);
        return out;
    }
    Fe from_coeffs(std::span<const std::uint32_t> coeffs) const {
        if (coeffs.size() != n_)
            throw InvalidParameter("element needs exactly n coefficients");
        Fe out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (coeffs[i] >= q())
                throw InvalidParameter("coefficient out of range for GF(q)");
            out.set(i, coeffs[i]);
        }
        return out;
    }

    bool is_zero(const Fe& a) const { return a.is_zero(); }

    Fe add(const Fe& a, const Fe& b) const {
        Fe out(n_);
        const auto q_ = q();
        for (std::size_t i = 0; i < n_; ++i) {
            const std::uint32_t s = a[i] + b[i];
            out.set(i, s >= q_ ? s - q_ : s);
        }
        return out;
    }
    Fe sub(const Fe& a, const Fe& b) const {
        Fe out(n_);
        const auto q_ = q();
        for (std::size_t i = 0; i < n_; ++i)
            out.set(i, a[i] >= b[i] ? a[i] - b[i] : a[i] + q_ - b[i]);
        return out;
    }
    Fe neg(const Fe& a) const { return sub(zero(), a); }

    /// Multiplication by a base field scalar.
    Fe scale(std::uint32_t mu, const Fe& a) const {
        Fe out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            out.set(i, base_.mul(mu, a[i]));
        return out;
    }

    Fe mul(const Fe& a, const Fe& b) const {
        std::array<std::uint32_t, 2 * kMaxDegree> prod{};
        const auto q_ = q();
        for (std::size_t i = 0; i < n_; ++i) {
            const std::uint32_t ai = a[i];
            if (!ai)
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                prod[i + j] += ai * b[j];
        }
        for (std::size_t j = 2 * n_ - 2; j >= n_; --j) {
            const std::uint32_t pj = prod[j] % q_;
            if (!pj)
                continue;
            const auto& red = reduce_[j - n_];
            for (std::size_t i = 0; i < n_; ++i)
                prod[i] = (prod[i] + pj * red[i]) % q_;
        }
        Fe out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            out.set(i, prod[i] % q_);
        return out;
    }

    Fe pow(Fe a, u128 exp) const {
        Fe result = one();
        while (exp) {
            if (exp & 1)
                result = mul(result, a);
            a = mul(a, a);
            exp >>= 1;
        }
        return result;
    }

    Fe inv(const Fe& a) const {
        if (a.is_zero())
            throw DivisionByZero("inverse of zero in GF(q^n)");
        return pow(a, order_ - 2);
    }

    Fe div(const Fe& a, const Fe& b) const { return mul(a, inv(b)); }

    /// a^(q^i), with i taken mod n (negative i allowed).
    Fe frobenius(const Fe& a, long long i) const {
        const auto nn = static_cast<long long>(n_);
        const auto k = static_cast<std::size_t>(((i % nn) + nn) % nn);
        if (k == 0)
            return a;
        Fe out(n_);
        const auto q_ = q();
        const Fe* images = &frob_[k * n_];
        std::array<std::uint32_t, kMaxDegree> acc{};
        for (std::size_t c = 0; c < n_; ++c) {
            const std::uint32_t ac = a[c];
            if (!ac)
                continue;
            const Fe& img = images[c];
            for (std::size_t r = 0; r < n_; ++r)
                acc[r] += ac * img[r];
        }
        for (std::size_t r = 0; r < n_; ++r)
            out.set(r, acc[r] % q_);
        return out;
    }

    /// Sum of all conjugates; lands in the embedded base field.
    Fe trace(const Fe& a) const {
        Fe acc = zero();
        for (std::size_t i = 0; i < n_; ++i)
            acc = add(acc, frobenius(a, static_cast<long long>(i)));
        return acc;
    }

    /// Product of all conjugates; lands in the embedded base field.
    Fe norm(const Fe& a) const {
        Fe acc = one();
        for (std::size_t i = 0; i < n_; ++i)
            acc = mul(acc, frobenius(a, static_cast<long long>(i)));
        return acc;
    }

    /// Element whose base-q digits (least significant first) are its coefficients.
    Fe element(u128 index) const {
        if (index >= order_)
            throw InvalidParameter("element index out of range");
        Fe out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            out.set(i, static_cast<std::uint32_t>(index % q()));
            index /= q();
        }
        return out;
    }

    u128 index_of(const Fe& a) const {
        u128 idx = 0;
        for (std::size_t i = n_; i-- > 0;)
            idx = idx * q() + a[i];
        return idx;
    }

    /// Uniform element; Rng must provide below(bound) -> uniform integer in [0, bound).
    template<typename Rng>
    Fe random(Rng& rng) const {
        Fe out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            out.set(i, static_cast<std::uint32_t>(rng.below(q())));
        return out;
    }

    template<typename Rng>
    Fe random_nonzero(Rng& rng) const {
        for (;;) {
            Fe a = random(rng);
            if (!a.is_zero())
                return a;
        }
    }

private:
    void build_tables() {
        const auto q_ = q();
        const detail::Poly m(modulus_.begin(), modulus_.end());

        reduce_.assign(n_ - 1, std::vector<std::uint32_t>(n_, 0));
        for (std::size_t j = n_; j + 1 < 2 * n_; ++j) {
            detail::Poly xj(j + 1, 0);
            xj[j] = 1;
            auto r = detail::poly_mod(std::move(xj), m, q_);
            r.resize(n_, 0);
            reduce_[j - n_] = std::move(r);
        }

        frob_.assign(n_ * n_, zero());
        for (std::size_t c = 0; c < n_; ++c) {
            Fe e(n_);
            e.set(c, 1);
            frob_[c] = e;
        }
        // First power from polynomial arithmetic, higher ones by composing.
        for (std::size_t c = 0; c < n_; ++c) {
            detail::Poly xc(c + 1, 0);
            xc[c] = 1;
            auto r = detail::poly_powmod(std::move(xc), q_, m, q_);
            r.resize(n_, 0);
            frob_[n_ + c] = from_coeffs(r);
        }
        for (std::size_t i = 2; i < n_; ++i)
            for (std::size_t c = 0; c < n_; ++c)
                frob_[i * n_ + c] = frobenius(frob_[(i - 1) * n_ + c], 1);
    }

    PrimeField base_;
    std::size_t n_;
    std::vector<std::uint32_t> modulus_;
    u128 order_ = 0;
    std::vector<std::vector<std::uint32_t>> reduce_;
    std::vector<Fe> frob_;
};

/// Ben-Or test: gcd(x^(q^i) - x, m) = 1 for all i <= deg(m)/2.
inline bool is_irreducible(std::uint32_t q, const std::vector<std::uint32_t>& modulus) {
    detail::Poly m(modulus.begin(), modulus.end());
    detail::trim(m);
    if (m.size() < 2)
        return false;
    const std::size_t n = m.size() - 1;
    if (n == 1)
        return true;
    detail::Poly xp{0, 1};
    for (std::size_t i = 1; i <= n / 2; ++i) {
        xp = detail::poly_powmod(xp, q, m, q);
        detail::Poly diff = xp;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + q - 1) % q;
        detail::trim(diff);
        if (diff.empty())
            return false;
        if (detail::poly_gcd(m, diff, q).size() > 1)
            return false;
    }
    return true;
}

/**
 * Default modulus for (q, n): the monic irreducible of degree n whose lower
 * coefficients, read as base-q digits c_0 + c_1 q + ..., form the smallest
 * integer. For q = 2 this gives x^3+x+1, x^4+x+1, x^8+x^4+x^3+x+1, ...
 */
inline std::vector<std::uint32_t> default_modulus(std::uint32_t q, std::size_t n) {
    if (!detail::is_prime(q))
        throw InvalidParameter("base field order " + std::to_string(q) + " is not prime");
    if (n < 1 || n > kMaxDegree)
        throw InvalidParameter("unsupported extension degree");
    std::vector<std::uint32_t> m(n + 1, 0);
    m[n] = 1;
    for (;;) {
        // increment the base-q counter in m[0..n-1]
        std::size_t i = 0;
        while (i < n && ++m[i] == q)
            m[i++] = 0;
        if (i == n)
            throw InvalidParameter("no irreducible polynomial found");
        if (m[0] != 0 && is_irreducible(q, m))
            return m;
    }
}

/// m x n matrix over GF(q) whose rows are the coordinate vectors of v.
inline Matrix<std::uint32_t> coordinate_matrix(const FieldCtx& ctx, std::span<const Fe> v) {
    Matrix<std::uint32_t> m(v.size(), ctx.n(), 0);
    for (std::size_t r = 0; r < v.size(); ++r)
        for (std::size_t c = 0; c < ctx.n(); ++c)
            m(r, c) = v[r][c];
    return m;
}

/// Number of GF(q)-linearly independent entries (the rank weight of v).
inline std::size_t fe_vector_rank(const FieldCtx& ctx, std::span<const Fe> v) {
    if (v.empty())
        return 0;
    return rank(ctx.base(), coordinate_matrix(ctx, v));
}

/// Smallest-index generator of the multiplicative group.
inline Fe primitive_element(const FieldCtx& ctx) {
    const u128 group = ctx.order() - 1;
    std::vector<u128> primes;
    u128 rest = group;
    for (u128 d = 2; d * d <= rest; ++d) {
        if (rest % d)
            continue;
        primes.push_back(d);
        while (rest % d == 0)
            rest /= d;
    }
    if (rest > 1)
        primes.push_back(rest);
    for (u128 idx = 2; idx < ctx.order(); ++idx) {
        const Fe g = ctx.element(idx);
        bool ok = true;
        for (auto p : primes)
            if (ctx.pow(g, group / p) == ctx.one()) {
                ok = false;
                break;
            }
        if (ok)
            return g;
    }
    return ctx.one(); // GF(2) only; unreachable for n >= 2
}

} // namespace rankcode
