// Copyright 2026 The glt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef GLT_MATRIX_HPP
#define GLT_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "glt/error.hpp"

namespace glt {

/// Dense row-major real matrix. Entries are finite by construction; element
/// writes through operator() are unchecked.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
        if (!std::isfinite(fill))
            throw Error(ErrorKind::NonFinite, "matrix fill value is not finite");
    }

    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
        if (data_.size() != rows_ * cols_)
            throw Error(ErrorKind::DimensionMismatch, "matrix data size does not match shape");
        check_finite();
    }

    Matrix(std::initializer_list<std::initializer_list<double>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
    {
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_)
                throw Error(ErrorKind::DimensionMismatch, "ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
        check_finite();
    }

    static Matrix identity(std::size_t n)
    {
        Matrix out(n, n);
        for (std::size_t i = 0; i < n; ++i)
            out(i, i) = 1.0;
        return out;
    }

    static Matrix diagonal(std::span<const double> diag)
    {
        Matrix out(diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i)
            out(i, i) = diag[i];
        out.check_finite();
        return out;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    std::span<const double> data() const noexcept { return data_; }

    std::vector<double> col(std::size_t j) const
    {
        std::vector<double> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            out[i] = (*this)(i, j);
        return out;
    }

    Matrix transpose() const
    {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(j, i) = (*this)(i, j);
        return out;
    }

    Matrix select_rows(std::span<const std::size_t> idx) const
    {
        Matrix out(idx.size(), cols_);
        for (std::size_t r = 0; r < idx.size(); ++r) {
            if (idx[r] >= rows_)
                throw Error(ErrorKind::InvalidArgument, "row index out of range");
            std::copy_n(row(idx[r]).begin(), cols_, out.row(r).begin());
        }
        return out;
    }

    Matrix select_cols(std::span<const std::size_t> idx) const
    {
        Matrix out(rows_, idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c) {
            if (idx[c] >= cols_)
                throw Error(ErrorKind::InvalidArgument, "column index out of range");
            for (std::size_t i = 0; i < rows_; ++i)
                out(i, c) = (*this)(i, idx[c]);
        }
        return out;
    }

    double max_abs() const noexcept
    {
        double m = 0.0;
        for (double v : data_)
            m = std::max(m, std::abs(v));
        return m;
    }

    Matrix& operator+=(const Matrix& rhs)
    {
        require_same_shape(rhs);
        for (std::size_t n = 0; n < data_.size(); ++n)
            data_[n] += rhs.data_[n];
        return *this;
    }

    Matrix& operator-=(const Matrix& rhs)
    {
        require_same_shape(rhs);
        for (std::size_t n = 0; n < data_.size(); ++n)
            data_[n] -= rhs.data_[n];
        return *this;
    }

    Matrix& operator*=(double s) noexcept
    {
        for (double& v : data_)
            v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
    friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
    friend Matrix operator*(Matrix lhs, double s) { return lhs *= s; }
    friend Matrix operator*(double s, Matrix rhs) { return rhs *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw Error(ErrorKind::DimensionMismatch, "matrix product inner dimensions differ");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t l = 0; l < a.cols_; ++l) {
                const double v = a(i, l);
                if (v == 0.0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) += v * b(l, j);
            }
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    bool all_finite() const noexcept
    {
        return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
    }

private:
    void check_finite() const
    {
        if (!all_finite())
            throw Error(ErrorKind::NonFinite, "matrix entries must be finite");
    }

    void require_same_shape(const Matrix& rhs) const
    {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// a * b^T without forming the transpose.
inline Matrix multiply_transposed(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.cols())
        throw Error(ErrorKind::DimensionMismatch, "a * b^T needs equal column counts");
    Matrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < a.cols(); ++l)
                s += a(i, l) * b(j, l);
            out(i, j) = s;
        }
    return out;
}

/// Largest absolute entrywise difference. Shapes must agree.
inline double max_abs_diff(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::DimensionMismatch, "max_abs_diff needs equal shapes");
    double m = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n)
        m = std::max(m, std::abs(a.data()[n] - b.data()[n]));
    return m;
}

} // namespace glt

#endif // GLT_MATRIX_HPP
