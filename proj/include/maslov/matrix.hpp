#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <type_traits>
#include <vector>

#include "maslov/error.hpp"

namespace maslov {

using Complex = std::complex<double>;

/// Dense square matrix, row-major storage.
template<typename T>
class SquareMatrix {
public:
    using value_type = T;

    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, T{}) {}

    SquareMatrix(std::size_t dim, std::vector<T> row_major) : dim_(dim), data_(std::move(row_major)) {
        if (data_.size() != dim * dim)
            throw Error(ErrorCode::DimensionMismatch, "row-major data does not match dimension");
    }

    SquareMatrix(std::initializer_list<std::initializer_list<T>> rows) : dim_(rows.size()) {
        data_.reserve(dim_ * dim_);
        for (const auto& r : rows) {
            if (r.size() != dim_)
                throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static SquareMatrix identity(std::size_t dim) {
        SquareMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i)
            m(i, i) = T{1};
        return m;
    }

    static SquareMatrix diagonal(std::span<const T> d) {
        SquareMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    SquareMatrix transpose() const {
        SquareMatrix t(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    /// Conjugate transpose (plain transpose for real matrices).
    SquareMatrix adjoint() const {
        SquareMatrix t(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) {
                if constexpr (std::is_same_v<T, Complex>)
                    t(j, i) = std::conj((*this)(i, j));
                else
                    t(j, i) = (*this)(i, j);
            }
        return t;
    }

    SquareMatrix& operator+=(const SquareMatrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += o.data_[k];
        return *this;
    }

    SquareMatrix& operator-=(const SquareMatrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= o.data_[k];
        return *this;
    }

    SquareMatrix& operator*=(T s) {
        for (auto& v : data_)
            v *= s;
        return *this;
    }

    friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
    friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
    friend SquareMatrix operator*(SquareMatrix a, T s) { return a *= s; }
    friend SquareMatrix operator*(T s, SquareMatrix a) { return a *= s; }
    friend SquareMatrix operator-(SquareMatrix a) { return a *= T{-1}; }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        a.check_same(b);
        const std::size_t n = a.dim_;
        SquareMatrix c(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const T aik = a(i, k);
                if (aik == T{})
                    continue;
                for (std::size_t j = 0; j < n; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    void check_same(const SquareMatrix& o) const {
        if (o.dim_ != dim_)
            throw Error(ErrorCode::DimensionMismatch, "matrix dimensions differ");
    }

    std::size_t dim_ = 0;
    std::vector<T> data_;
};

using RealMatrix = SquareMatrix<double>;
using ComplexMatrix = SquareMatrix<Complex>;

template<typename T>
double frobenius_norm(const SquareMatrix<T>& m) {
    double s = 0.0;
    for (const auto& v : m.data())
        s += std::norm(v);
    return std::sqrt(s);
}

template<typename T>
double max_abs(const SquareMatrix<T>& m) {
    double s = 0.0;
    for (const auto& v : m.data())
        s = std::max(s, std::abs(v));
    return s;
}

template<typename T>
bool all_finite(const SquareMatrix<T>& m) {
    for (const auto& v : m.data()) {
        if constexpr (std::is_same_v<T, Complex>) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                return false;
        } else if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

/// Frobenius norm of A - A^T, relative symmetry defect is this over |A|_F.
inline double asymmetry(const RealMatrix& a) {
    return frobenius_norm(a - a.transpose());
}

inline RealMatrix symmetrize(const RealMatrix& a) {
    return (a + a.transpose()) * 0.5;
}

} // namespace maslov
