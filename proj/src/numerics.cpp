#include "maslov/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maslov/lu.hpp"

namespace maslov {

namespace {

double off_diagonal_norm(const RealMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j)
                s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

// One Jacobi rotation annihilating a(p,q); updates the accumulated rotation v.
void rotate(RealMatrix& a, RealMatrix& v, std::size_t p, std::size_t q) {
    const double apq = a(p, q);
    if (apq == 0.0)
        return;
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    double t;
    if (std::abs(theta) > 1e150)
        t = 0.5 / theta;
    else
        t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const std::size_t n = a.dim();
    for (std::size_t k = 0; k < n; ++k) {
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(k, q) = s * akp + c * akq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double apk = a(p, k);
        const double aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = s * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

} // namespace

RealMatrix SymEigen::reconstruct() const {
    return apply_spectral(*this, [](double x) { return x; });
}

SymEigen jacobi_eigh(const RealMatrix& s, double tol, int max_sweeps) {
    const std::size_t n = s.dim();
    if (n == 0)
        throw Error(ErrorCode::InvalidArgument, "jacobi_eigh: empty matrix");
    if (!all_finite(s))
        throw Error(ErrorCode::InvalidArgument, "jacobi_eigh: non-finite entries");
    const double norm = frobenius_norm(s);
    if (asymmetry(s) > default_tolerances.symmetry * norm)
        throw Error(ErrorCode::NotSymmetric, "jacobi_eigh: input is not symmetric");

    RealMatrix a = symmetrize(s);
    RealMatrix v = RealMatrix::identity(n);
    const double threshold = tol * norm;

    int sweep = 0;
    while (off_diagonal_norm(a) > threshold) {
        if (sweep == max_sweeps)
            throw Error(ErrorCode::NoConvergence, "jacobi_eigh: sweep cap exceeded");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                rotate(a, v, p, q);
        ++sweep;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SymEigen out{RealMatrix(n), std::vector<double>(n), sweep};
    for (std::size_t c = 0; c < n; ++c) {
        out.eigenvalues[c] = a(order[c], order[c]);
        for (std::size_t r = 0; r < n; ++r)
            out.rotation(r, c) = v(r, order[c]);
    }
    return out;
}

RealMatrix apply_spectral(const SymEigen& eig, const std::function<double(double)>& f) {
    const std::size_t n = eig.rotation.dim();
    std::vector<double> fl(n);
    for (std::size_t i = 0; i < n; ++i)
        fl[i] = f(eig.eigenvalues[i]);
    RealMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += eig.rotation(i, k) * fl[k] * eig.rotation(j, k);
            out(i, j) = s;
            out(j, i) = s;
        }
    return out;
}

PolarFactors polar_newton(const RealMatrix& a, double tol, int max_iter) {
    const std::size_t n = a.dim();
    if (n == 0 || !all_finite(a))
        throw Error(ErrorCode::InvalidArgument, "polar_newton: empty or non-finite input");
    {
        const LuFactor<double> lu(a);
        if (lu.singular || lu.log_abs_determinant() <= std::log(default_tolerances.singular_det))
            throw Error(ErrorCode::Singular, "polar_newton: |det A| below guard");
    }

    const auto& tols = default_tolerances;
    RealMatrix x = a;
    for (int it = 1; it <= max_iter; ++it) {
        const LuFactor<double> lu(x);
        if (lu.singular)
            throw Error(ErrorCode::Singular, "polar_newton: iterate became singular");
        double g = std::exp(-lu.log_abs_determinant() / static_cast<double>(n));
        g = std::clamp(g, tols.polar_scale_min, tols.polar_scale_max);
        RealMatrix next = (x * g + lu.inverse().transpose() * (1.0 / g)) * 0.5;
        const double step = frobenius_norm(next - x);
        x = std::move(next);
        if (!all_finite(x))
            throw Error(ErrorCode::NoConvergence, "polar_newton: iterate not finite");
        if (step <= tol * frobenius_norm(x))
            return {x, symmetrize(x.transpose() * a), it};
    }
    throw Error(ErrorCode::NoConvergence, "polar_newton: iteration cap exceeded");
}

RealMatrix spd_power(const SymEigen& eig, double t) {
    const double top = *std::max_element(eig.eigenvalues.begin(), eig.eigenvalues.end(),
                                         [](double l, double r) { return std::abs(l) < std::abs(r); });
    const double floor = default_tolerances.positive_eig * std::abs(top);
    for (double l : eig.eigenvalues)
        if (!(l > floor))
            throw Error(ErrorCode::NotPositive, "spd_power: eigenvalue not positive");
    if (t == 0.0)
        return RealMatrix::identity(eig.rotation.dim());
    return apply_spectral(eig, [t](double l) { return std::pow(l, t); });
}

RealMatrix spd_power(const RealMatrix& p, double t) {
    return spd_power(jacobi_eigh(p), t);
}

Complex complex_det(const ComplexMatrix& m) {
    if (m.dim() == 0)
        throw Error(ErrorCode::InvalidArgument, "complex_det: empty matrix");
    return LuFactor<Complex>(m).determinant();
}

double real_det(const RealMatrix& m) {
    return LuFactor<double>(m).determinant();
}

RealMatrix real_inverse(const RealMatrix& m) {
    const LuFactor<double> lu(m);
    if (lu.singular)
        throw Error(ErrorCode::Singular, "real_inverse: singular matrix");
    return lu.inverse();
}

} // namespace maslov
