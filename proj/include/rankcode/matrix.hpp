/**************************************************************************
 * matrix.hpp
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

#include <cstddef>
#include <concepts>
#include <utility>
#include <vector>

#include "error.hpp"

namespace rankcode {

/// Minimal interface shared by GF(q) and GF(q^n) so elimination is written once.
template<typename F>
concept FieldOps = requires(const F& f, const typename F::value_type& a) {
    { f.zero() } -> std::convertible_to<typename F::value_type>;
    { f.one() } -> std::convertible_to<typename F::value_type>;
    { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.inv(a) } -> std::convertible_to<typename F::value_type>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
};

/// Dense row-major matrix. Carries no field; arithmetic takes the field explicitly.
template<typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) { }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> row(std::size_t r) const {
        return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_};
    }
    std::vector<T> col(std::size_t c) const {
        std::vector<T> out;
        out.reserve(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            out.push_back((*this)(r, c));
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap((*this)(a, c), (*this)(b, c));
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template<FieldOps F>
using MatrixOver = Matrix<typename F::value_type>;

template<FieldOps F>
MatrixOver<F> identity(const F& field, std::size_t n) {
    MatrixOver<F> m(n, n, field.zero());
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = field.one();
    return m;
}

template<FieldOps F>
MatrixOver<F> multiply(const F& field, const MatrixOver<F>& a, const MatrixOver<F>& b) {
    if (a.cols() != b.rows())
        throw InvalidParameter("matrix product shape mismatch");
    MatrixOver<F> out(a.rows(), b.cols(), field.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            if (field.is_zero(a(i, l)))
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) = field.add(out(i, j), field.mul(a(i, l), b(l, j)));
        }
    return out;
}

template<FieldOps F>
std::vector<typename F::value_type> multiply(const F& field, const MatrixOver<F>& a,
                                             const std::vector<typename F::value_type>& v) {
    if (a.cols() != v.size())
        throw InvalidParameter("matrix-vector shape mismatch");
    std::vector<typename F::value_type> out(a.rows(), field.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out[i] = field.add(out[i], field.mul(a(i, j), v[j]));
    return out;
}

template<typename T>
struct Echelon {
    Matrix<T> reduced;                // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
};

/**
 * Gauss-Jordan elimination to reduced row echelon form.
 *
 * Pivot selection is fixed: columns are scanned left to right and the pivot
 * is the lowest-indexed remaining row with a nonzero entry. Two runs on the
 * same input produce identical output.
 */
template<FieldOps F>
Echelon<typename F::value_type> rref(const F& field, MatrixOver<F> m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
        std::size_t p = row;
        while (p < m.rows() && field.is_zero(m(p, c)))
            ++p;
        if (p == m.rows())
            continue;
        m.swap_rows(row, p);
        const auto scale = field.inv(m(row, c));
        for (std::size_t j = c; j < m.cols(); ++j)
            m(row, j) = field.mul(scale, m(row, j));
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || field.is_zero(m(r, c)))
                continue;
            const auto factor = m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(r, j) = field.sub(m(r, j), field.mul(factor, m(row, j)));
        }
        pivots.push_back(c);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

template<FieldOps F>
std::size_t rank(const F& field, const MatrixOver<F>& m) {
    return rref(field, m).pivots.size();
}

/// Right kernel basis, one vector per free column (ascending), with a 1 at
/// that free position and zeros at the other free positions.
template<FieldOps F>
std::vector<std::vector<typename F::value_type>> kernel(const F& field, const MatrixOver<F>& m) {
    const auto ech = rref(field, m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : ech.pivots)
        is_pivot[c] = true;

    std::vector<std::vector<typename F::value_type>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::vector<typename F::value_type> v(m.cols(), field.zero());
        v[free] = field.one();
        for (std::size_t r = 0; r < ech.pivots.size(); ++r)
            v[ech.pivots[r]] = field.sub(field.zero(), ech.reduced(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

template<FieldOps F>
MatrixOver<F> inverse(const F& field, const MatrixOver<F>& m) {
    if (m.rows() != m.cols())
        throw InvalidParameter("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    MatrixOver<F> aug(n, 2 * n, field.zero());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = field.one();
    }
    const auto ech = rref(field, aug);
    if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1)
        throw SingularMatrix("matrix is not invertible");
    MatrixOver<F> out(n, n, field.zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = ech.reduced(i, n + j);
    return out;
}

} // namespace rankcode
