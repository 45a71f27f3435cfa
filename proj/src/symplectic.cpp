#include "maslov/symplectic.hpp"

#include <cmath>
#include <numbers>

#include "maslov/config.hpp"
#include "maslov/rng.hpp"

namespace maslov {

namespace {

constexpr double pi = std::numbers::pi;

std::size_t half_dim(const RealMatrix& m) {
    if (m.dim() == 0 || m.dim() % 2 != 0)
        throw Error(ErrorCode::OddDimension, "expected an even, nonzero dimension");
    return m.dim() / 2;
}

// J0 M J0 without forming products: (J0 M J0) for blocks [[A,B],[C,D]] is [[-D, C], [B, -A]].
RealMatrix j_sandwich(const RealMatrix& m) {
    const std::size_t n = half_dim(m);
    RealMatrix out(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = -m(n + i, n + j);
            out(i, n + j) = m(n + i, j);
            out(n + i, j) = m(i, n + j);
            out(n + i, n + j) = -m(i, j);
        }
    return out;
}

bool positive_definite(const RealMatrix& s) {
    const SymEigen e = jacobi_eigh(symmetrize(s));
    return e.eigenvalues.front() > 0.0;
}

} // namespace

RealMatrix standard_j(std::size_t n) {
    if (n == 0)
        throw Error(ErrorCode::InvalidArgument, "standard_j: n must be positive");
    RealMatrix j(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, n + i) = -1.0;
        j(n + i, i) = 1.0;
    }
    return j;
}

double symplectic_tolerance(const RealMatrix& m) {
    const double f = frobenius_norm(m);
    return default_tolerances.symplectic * (1.0 + f * f);
}

SymplecticCheck is_symplectic(const RealMatrix& m, std::optional<double> tol) {
    const std::size_t n = half_dim(m);
    const RealMatrix j = standard_j(n);
    const double residual = frobenius_norm(m * j * m.transpose() - j);
    const double t = tol.value_or(symplectic_tolerance(m));
    return {residual, t, residual <= t};
}

RealMatrix symplectic_inverse(const RealMatrix& m) {
    // J0^{-1} = -J0
    return j_sandwich(m.transpose()) * -1.0;
}

RealMatrix complex_linear_part(const RealMatrix& m) {
    return (m - j_sandwich(m)) * 0.5;
}

ComplexMatrix linear_block(const RealMatrix& m) {
    const std::size_t n = half_dim(m);
    ComplexMatrix z(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            z(i, j) = 0.5 * Complex(m(i, j) + m(n + i, n + j), m(n + i, j) - m(i, n + j));
    return z;
}

ComplexMatrix antilinear_block(const RealMatrix& m) {
    const std::size_t n = half_dim(m);
    ComplexMatrix w(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w(i, j) = 0.5 * Complex(m(i, j) - m(n + i, n + j), m(n + i, j) + m(i, n + j));
    return w;
}

RealMatrix realify(const ComplexMatrix& z) {
    const std::size_t n = z.dim();
    RealMatrix m(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = z(i, j).real();
            m(i, n + j) = -z(i, j).imag();
            m(n + i, j) = z(i, j).imag();
            m(n + i, n + j) = z(i, j).real();
        }
    return m;
}

// ---------------------------------------------------------------------------

SymplecticMatrix SymplecticMatrix::from(RealMatrix m, double tol_factor) {
    if (!all_finite(m))
        throw Error(ErrorCode::InvalidArgument, "symplectic matrix has non-finite entries");
    const auto check = is_symplectic(m, tol_factor * symplectic_tolerance(m));
    if (!check.ok)
        throw Error(ErrorCode::InvalidArgument,
                    "matrix is not symplectic (residual " + std::to_string(check.residual) + ")");
    return SymplecticMatrix(std::move(m));
}

SymplecticMatrix SymplecticMatrix::identity(std::size_t n) {
    return SymplecticMatrix(RealMatrix::identity(2 * n));
}

SpdSymplectic SpdSymplectic::from(RealMatrix m, double tol_factor) {
    if (!all_finite(m))
        throw Error(ErrorCode::InvalidArgument, "SPD symplectic matrix has non-finite entries");
    const double tol = tol_factor * symplectic_tolerance(m);
    if (!is_symplectic(m, tol).ok)
        throw Error(ErrorCode::InvalidArgument, "matrix is not symplectic");
    if (asymmetry(m) > tol)
        throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");
    const RealMatrix j = standard_j(m.dim() / 2);
    if (frobenius_norm(m * j * m - j) > tol)
        throw Error(ErrorCode::InvalidArgument, "P J0 P != J0");
    if (!positive_definite(m))
        throw Error(ErrorCode::NotPositive, "matrix is not positive definite");
    return SpdSymplectic(symmetrize(m));
}

RealMatrix UnitarySymplectic::embed() const {
    return realify(to_complex());
}

ComplexMatrix UnitarySymplectic::to_complex() const {
    if (y.dim() != x.dim())
        throw Error(ErrorCode::DimensionMismatch, "X and Y differ in size");
    ComplexMatrix z(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < x.dim(); ++j)
            z(i, j) = Complex(x(i, j), y(i, j));
    return z;
}

double UnitarySymplectic::unitarity_defect() const {
    const ComplexMatrix z = to_complex();
    return frobenius_norm(z.adjoint() * z - ComplexMatrix::identity(z.dim()));
}

UnitarySymplectic UnitarySymplectic::identity(std::size_t n) {
    return {RealMatrix::identity(n), RealMatrix(n)};
}

UnitarySymplectic UnitarySymplectic::from_complex(const ComplexMatrix& z) {
    const std::size_t n = z.dim();
    UnitarySymplectic u{RealMatrix(n), RealMatrix(n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            u.x(i, j) = z(i, j).real();
            u.y(i, j) = z(i, j).imag();
        }
    return u;
}

UnitarySymplectic UnitarySymplectic::from_orthogonal(const RealMatrix& o) {
    const std::size_t n = half_dim(o);
    UnitarySymplectic u{RealMatrix(n), RealMatrix(n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            u.x(i, j) = o(i, j);
            u.y(i, j) = o(n + i, j);
        }
    return u;
}

SymplecticPolar symplectic_polar(const SymplecticMatrix& psi) {
    const RealMatrix& m = psi.mat();
    // Newton on the complex-linear part: same orthogonal factor, but the
    // condition number drops from sigma_max^2 to about sigma_max.
    const PolarFactors f = polar_newton(complex_linear_part(m));
    const RealMatrix& orth = f.orth;
    const double tol = 10.0 * symplectic_tolerance(m);

    const std::size_t dim = m.dim();
    if (!is_symplectic(orth, tol).ok ||
        frobenius_norm(orth.transpose() * orth - RealMatrix::identity(dim)) > tol)
        throw Error(ErrorCode::FactorNotSymplectic, "orthogonal polar factor left U(n)");

    RealMatrix pos = symmetrize(orth.transpose() * m);
    try {
        return {UnitarySymplectic::from_orthogonal(orth), SpdSymplectic::from(std::move(pos), 10.0)};
    } catch (const Error& e) {
        throw Error(ErrorCode::FactorNotSymplectic, std::string("positive polar factor: ") + e.what());
    }
}

Complex det_u(const UnitarySymplectic& u) {
    const double defect = u.unitarity_defect();
    if (!(defect <= default_tolerances.unitary))
        throw Error(ErrorCode::NotUnitary, "X + iY is not unitary (defect " + std::to_string(defect) + ")");
    return complex_det(u.to_complex());
}

RealMatrix reproject_symplectic(const RealMatrix& m) {
    const std::size_t n = half_dim(m);
    const PolarFactors f = polar_newton(m);

    // Orthogonal factor -> nearest complex-linear matrix -> its unitary part.
    const RealMatrix u = polar_newton(realify(linear_block(f.orth))).orth;

    // Positive factor -> log, keep the part anticommuting with J0, exp back.
    const RealMatrix log_p = apply_spectral(jacobi_eigh(f.pos), [](double l) { return std::log(l); });
    const RealMatrix gen = (log_p + j_sandwich(log_p)) * 0.5;
    const RealMatrix p = apply_spectral(jacobi_eigh(symmetrize(gen)), [](double l) { return std::exp(l); });
    (void)n;
    return u * p;
}

// ---------------------------------------------------------------------------

UnitarySymplectic UnitaryRecipe::at(double t) const {
    ComplexMatrix z = ComplexMatrix::identity(n);
    for (const auto& r : rotations) {
        const double c = std::cos(t * r.angle);
        const double s = std::sin(t * r.angle);
        const Complex e = std::polar(1.0, r.phase);
        // z <- z * G, where G acts on coordinates p, q.
        for (std::size_t i = 0; i < n; ++i) {
            const Complex zp = z(i, r.p);
            const Complex zq = z(i, r.q);
            z(i, r.p) = zp * c + zq * (e * s);
            z(i, r.q) = -zp * (std::conj(e) * s) + zq * c;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        const Complex e = std::polar(1.0, t * phases[j]);
        for (std::size_t i = 0; i < n; ++i)
            z(i, j) *= e;
    }
    return UnitarySymplectic::from_complex(z);
}

double UnitaryRecipe::winding() const {
    double s = 0.0;
    for (double a : phases)
        s += a;
    return s / (2.0 * pi);
}

UnitaryRecipe random_unitary_recipe(std::size_t n, std::uint64_t seed) {
    if (n == 0)
        throw Error(ErrorCode::InvalidArgument, "n must be positive");
    SplitMix64 rng(seed);
    UnitaryRecipe r;
    r.n = n;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
            const double angle = rng.uniform(-pi, pi);
            const double phase = rng.uniform(-pi, pi);
            r.rotations.push_back({p, q, angle, phase});
        }
    r.phases.resize(n);
    for (auto& a : r.phases)
        a = rng.uniform(-pi, pi);
    return r;
}

UnitarySymplectic random_unitary_symplectic(std::size_t n, std::uint64_t seed) {
    return random_unitary_recipe(n, seed).at(1.0);
}

RealMatrix random_spd_generator(std::size_t n, double scale, std::uint64_t seed) {
    if (n == 0)
        throw Error(ErrorCode::InvalidArgument, "n must be positive");
    if (!(scale > 0.0))
        throw Error(ErrorCode::InvalidArgument, "scale must be positive");
    SplitMix64 rng(seed);
    RealMatrix u(n), v(n);
    for (auto* blk : {&u, &v})
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double x = rng.uniform(-scale, scale);
                (*blk)(i, j) = x;
                (*blk)(j, i) = x;
            }
    RealMatrix a(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = u(i, j);
            a(i, n + j) = v(i, j);
            a(n + i, j) = v(i, j);
            a(n + i, n + j) = -u(i, j);
        }
    return a;
}

SpdSymplectic random_spd_symplectic(std::size_t n, double scale, std::uint64_t seed) {
    const RealMatrix a = random_spd_generator(n, scale, seed);
    return SpdSymplectic::from(apply_spectral(jacobi_eigh(a), [](double l) { return std::exp(l); }));
}

SymplecticMatrix random_symplectic(std::size_t n, double scale, std::uint64_t seed) {
    const UnitarySymplectic q = random_unitary_symplectic(n, derive_seed(seed, "q", 0));
    const SpdSymplectic p = random_spd_symplectic(n, scale, derive_seed(seed, "p", 0));
    return SymplecticMatrix::from(q.embed() * p.mat());
}

} // namespace maslov
