#pragma once

#include <functional>
#include <vector>

#include "maslov/config.hpp"
#include "maslov/matrix.hpp"

namespace maslov {

/// Symmetric eigendecomposition S = rotation * diag(eigenvalues) * rotation^T,
/// eigenvalues ascending, eigenvectors in the columns of `rotation`.
struct SymEigen {
    RealMatrix rotation;
    std::vector<double> eigenvalues;
    int sweeps = 0;

    RealMatrix reconstruct() const;
};

/// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm of the rotated
/// matrix drops below `tol * |S|_F`.
SymEigen jacobi_eigh(const RealMatrix& s, double tol = default_tolerances.eig_offdiag,
                     int max_sweeps = default_tolerances.eig_max_sweeps);

/// rotation * diag(f(lambda_i)) * rotation^T
RealMatrix apply_spectral(const SymEigen& eig, const std::function<double(double)>& f);

struct PolarFactors {
    RealMatrix orth;  // orthogonal
    RealMatrix pos;   // symmetric positive definite
    int iterations = 0;
};

/// A = orth * pos by the scaled Newton iteration X <- (g X + (g X)^{-T}) / 2,
/// g = |det X|^{-1/dim} clamped to [0.1, 10].
PolarFactors polar_newton(const RealMatrix& a, double tol = default_tolerances.polar_step,
                          int max_iter = default_tolerances.polar_max_iter);

/// P^t for symmetric positive definite P.
RealMatrix spd_power(const RealMatrix& p, double t);

/// Same as spd_power but reusing a decomposition of P; throws NotPositive if
/// any eigenvalue is not positive.
RealMatrix spd_power(const SymEigen& eig, double t);

/// Complex Gaussian elimination with partial pivoting; singular input gives 0.
Complex complex_det(const ComplexMatrix& m);

double real_det(const RealMatrix& m);
RealMatrix real_inverse(const RealMatrix& m);

} // namespace maslov
