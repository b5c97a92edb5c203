#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "inertial/errors.hpp"
#include "inertial/integer.hpp"

namespace inertial {

// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : init) {
            if (r.size() != cols_) fail(Errc::dimension_mismatch, "ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) fail(Errc::dimension_mismatch, "row length differs from column count");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix scalar(std::size_t n, const T& s) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<T> row_vector(std::size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }

    void append_row(std::span<const T> r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) fail(Errc::dimension_mismatch, "appended row has wrong length");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    // Keeps the first n rows.
    void truncate_rows(std::size_t n) {
        if (n >= rows_) return;
        data_.resize(n * cols_);
        rows_ = n;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) fail(Errc::dimension_mismatch, "matrix product shape");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }

    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix c = a;
        for (auto& v : c.data_) v *= s;
        return c;
    }

    Matrix pow(unsigned long k) const {
        if (!is_square()) fail(Errc::dimension_mismatch, "power of a non-square matrix");
        Matrix result = identity(rows_);
        Matrix base = *this;
        while (k) {
            if (k & 1) result = result * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return result;
    }

    // Stacks b below a.
    static Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.rows_ == 0) return b;
        if (b.rows_ == 0) return a;
        if (a.cols_ != b.cols_) fail(Errc::dimension_mismatch, "vstack column mismatch");
        Matrix c = a;
        c.data_.insert(c.data_.end(), b.data_.begin(), b.data_.end());
        c.rows_ += b.rows_;
        return c;
    }

    const std::vector<T>& data() const noexcept { return data_; }

private:
    void require_same_shape(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) fail(Errc::dimension_mismatch, "matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

// Row vector times matrix.
template <class T>
std::vector<T> row_times(std::span<const T> v, const Matrix<T>& m) {
    if (v.size() != m.rows()) fail(Errc::dimension_mismatch, "vector-matrix product shape");
    std::vector<T> out(m.cols(), T(0));
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[k] * m(k, j);
    }
    return out;
}

// Matrix times column vector.
template <class T>
std::vector<T> times_column(const Matrix<T>& m, std::span<const T> v) {
    if (v.size() != m.cols()) fail(Errc::dimension_mismatch, "matrix-vector product shape");
    std::vector<T> out(m.rows(), T(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

template <class T>
std::string to_string(const Matrix<T>& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ",";
            s += to_string(m(i, j));
        }
        s += "]";
    }
    return s + "]";
}

}  // namespace inertial
