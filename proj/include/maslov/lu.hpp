#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "maslov/matrix.hpp"

namespace maslov {

/// In-place LU factorization with partial pivoting by modulus.
template<typename T>
struct LuFactor {
    SquareMatrix<T> lu;
    std::vector<std::size_t> perm;  // row i of PA is row perm[i] of A
    int sign = 1;
    bool singular = false;

    explicit LuFactor(SquareMatrix<T> a) : lu(std::move(a)), perm(lu.dim()) {
        const std::size_t n = lu.dim();
        for (std::size_t i = 0; i < n; ++i)
            perm[i] = i;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            double best = std::abs(lu(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                const double v = std::abs(lu(i, k));
                if (v > best) {
                    best = v;
                    piv = i;
                }
            }
            if (best == 0.0) {
                singular = true;
                continue;
            }
            if (piv != k) {
                for (std::size_t j = 0; j < n; ++j)
                    std::swap(lu(k, j), lu(piv, j));
                std::swap(perm[k], perm[piv]);
                sign = -sign;
            }
            const T inv = T{1} / lu(k, k);
            for (std::size_t i = k + 1; i < n; ++i) {
                const T f = lu(i, k) * inv;
                lu(i, k) = f;
                if (f == T{})
                    continue;
                for (std::size_t j = k + 1; j < n; ++j)
                    lu(i, j) -= f * lu(k, j);
            }
        }
    }

    T determinant() const {
        if (singular)
            return T{};
        T d = T(static_cast<double>(sign));
        for (std::size_t i = 0; i < lu.dim(); ++i)
            d *= lu(i, i);
        return d;
    }

    /// log|det|, finite even when the determinant itself under/overflows.
    double log_abs_determinant() const {
        if (singular)
            return -INFINITY;
        double s = 0.0;
        for (std::size_t i = 0; i < lu.dim(); ++i)
            s += std::log(std::abs(lu(i, i)));
        return s;
    }

    /// Solves A X = B column by column.
    SquareMatrix<T> solve(const SquareMatrix<T>& b) const {
        if (singular)
            throw Error(ErrorCode::Singular, "LU solve with singular matrix");
        const std::size_t n = lu.dim();
        SquareMatrix<T> x(n);
        std::vector<T> y(n);
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t i = 0; i < n; ++i) {
                T s = b(perm[i], c);
                for (std::size_t j = 0; j < i; ++j)
                    s -= lu(i, j) * y[j];
                y[i] = s;
            }
            for (std::size_t ii = n; ii-- > 0;) {
                T s = y[ii];
                for (std::size_t j = ii + 1; j < n; ++j)
                    s -= lu(ii, j) * x(j, c);
                x(ii, c) = s / lu(ii, ii);
            }
        }
        return x;
    }

    SquareMatrix<T> inverse() const { return solve(SquareMatrix<T>::identity(lu.dim())); }
};

} // namespace maslov
