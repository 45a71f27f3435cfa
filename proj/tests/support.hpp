#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "maslov/matrix.hpp"

// Test-side helpers. Random inputs come from std::mt19937_64 so that the
// library's own SplitMix64 generators are never their own oracle.
namespace testing {

using maslov::Complex;
using maslov::ComplexMatrix;
using maslov::RealMatrix;

inline Eigen::MatrixXd to_eigen(const RealMatrix& m) {
    Eigen::MatrixXd e(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            e(i, j) = m(i, j);
    return e;
}

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            e(i, j) = m(i, j);
    return e;
}

inline RealMatrix from_eigen(const Eigen::MatrixXd& e) {
    RealMatrix m(static_cast<std::size_t>(e.rows()));
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            m(i, j) = e(i, j);
    return m;
}

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

    Eigen::MatrixXd matrix(Eigen::Index dim, double scale = 1.0) {
        Eigen::MatrixXd m(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j)
                m(i, j) = uniform(-scale, scale);
        return m;
    }

    Eigen::MatrixXd symmetric(Eigen::Index dim, double scale = 1.0) {
        const Eigen::MatrixXd a = matrix(dim, scale);
        return 0.5 * (a + a.transpose());
    }

    Eigen::MatrixXcd complex_matrix(Eigen::Index dim, double scale = 1.0) {
        Eigen::MatrixXcd m(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j)
                m(i, j) = Complex(uniform(-scale, scale), uniform(-scale, scale));
        return m;
    }

    /// Q diag(exp(spread * u)) R with Haar-ish orthogonal factors: condition
    /// number up to exp(2 spread).
    Eigen::MatrixXd conditioned(Eigen::Index dim, double spread) {
        Eigen::HouseholderQR<Eigen::MatrixXd> q1(matrix(dim));
        Eigen::HouseholderQR<Eigen::MatrixXd> q2(matrix(dim));
        Eigen::VectorXd s(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            s(i) = std::exp(uniform(-spread, spread));
        return Eigen::MatrixXd(q1.householderQ()) * s.asDiagonal() * Eigen::MatrixXd(q2.householderQ());
    }

private:
    std::mt19937_64 rng_;
};

inline Eigen::MatrixXd standard_j(Eigen::Index n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    j.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    return j;
}

/// Orthogonal polar factor from an SVD, independent of Newton iteration.
inline Eigen::MatrixXd svd_orth(const Eigen::MatrixXd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

/// det(X + iY) of the SVD polar factor of a symplectic matrix.
inline Complex svd_phase(const Eigen::MatrixXd& m) {
    const Eigen::MatrixXd o = svd_orth(m);
    const Eigen::Index n = m.rows() / 2;
    const Eigen::MatrixXcd u = o.topLeftCorner(n, n).cast<Complex>() +
                               Complex(0.0, 1.0) * o.bottomLeftCorner(n, n).cast<Complex>();
    return u.determinant();
}

/// Lifted angle (turns) of a sequence of symplectic samples via SVD polar
/// factors and principal-argument unwrapping.
template<typename Samples>
double svd_lifted_angle(const Samples& samples) {
    double total = 0.0;
    Complex prev = svd_phase(to_eigen(samples.front()));
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const Complex cur = svd_phase(to_eigen(samples[i]));
        total += std::arg(cur / prev);
        prev = cur;
    }
    return total / (2.0 * std::numbers::pi);
}

inline double frob(const Eigen::MatrixXd& m) { return m.norm(); }

} // namespace testing
