#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "maslov/matrix.hpp"
#include "maslov/numerics.hpp"

namespace maslov {

/// J0 = [[0, -I], [I, 0]], the matrix of multiplication by i on C^n = R^n x R^n.
RealMatrix standard_j(std::size_t n);

/// 1e-8 * (1 + |M|_F^2)
double symplectic_tolerance(const RealMatrix& m);

struct SymplecticCheck {
    double residual = 0.0;   // |M J0 M^T - J0|_F
    double tolerance = 0.0;
    bool ok = false;
};

/// Throws OddDimension for odd sizes. Without `tol` the default tol_sp is used.
SymplecticCheck is_symplectic(const RealMatrix& m, std::optional<double> tol = std::nullopt);

/// J0^{-1} M^T J0, the inverse of a symplectic M.
RealMatrix symplectic_inverse(const RealMatrix& m);

/// (M + J0^{-1} M J0) / 2: the part of M commuting with J0. For symplectic M
/// this is the first unscaled Newton polar iterate, so it shares M's
/// orthogonal polar factor. Positive multiples of symplectic M are fine too.
RealMatrix complex_linear_part(const RealMatrix& m);

/// Writing M v = Z v + W conj(v) on C^n: Z and W.
ComplexMatrix linear_block(const RealMatrix& m);
ComplexMatrix antilinear_block(const RealMatrix& m);

/// X + iY  ->  [[X, -Y], [Y, X]]
RealMatrix realify(const ComplexMatrix& z);

class SymplecticMatrix {
public:
    /// Validates the symplectic invariant at tol_sp (scaled by tol_factor).
    static SymplecticMatrix from(RealMatrix m, double tol_factor = 1.0);
    static SymplecticMatrix identity(std::size_t n);

    std::size_t n() const noexcept { return mat_.dim() / 2; }
    const RealMatrix& mat() const noexcept { return mat_; }

private:
    explicit SymplecticMatrix(RealMatrix m) : mat_(std::move(m)) {}
    RealMatrix mat_;
};

/// Element of the set of symmetric positive definite symplectic matrices.
class SpdSymplectic {
public:
    static SpdSymplectic from(RealMatrix m, double tol_factor = 1.0);

    std::size_t n() const noexcept { return mat_.dim() / 2; }
    const RealMatrix& mat() const noexcept { return mat_; }
    SymplecticMatrix as_symplectic() const { return SymplecticMatrix::from(mat_, 10.0); }

private:
    explicit SpdSymplectic(RealMatrix m) : mat_(std::move(m)) {}
    RealMatrix mat_;
};

/// U(n) inside Sp(2n) as [[X, -Y], [Y, X]]. Unitarity is checked where it is
/// consumed (det_u), not at construction.
struct UnitarySymplectic {
    RealMatrix x;
    RealMatrix y;

    std::size_t n() const noexcept { return x.dim(); }
    RealMatrix embed() const;
    ComplexMatrix to_complex() const;
    /// |(X+iY)^*(X+iY) - I|_F
    double unitarity_defect() const;

    static UnitarySymplectic identity(std::size_t n);
    static UnitarySymplectic from_complex(const ComplexMatrix& z);
    /// Reads X, Y from the left block column of an orthogonal symplectic matrix.
    static UnitarySymplectic from_orthogonal(const RealMatrix& o);
};

struct SymplecticPolar {
    UnitarySymplectic u;
    SpdSymplectic p;
};

/// Psi = u p with u unitary symplectic and p in the positive symplectic set.
/// Both factors are re-validated at 10 x tol_sp (FactorNotSymplectic).
SymplecticPolar symplectic_polar(const SymplecticMatrix& psi);

/// det(X + iY); throws NotUnitary if the unitarity defect exceeds tol_unitary.
Complex det_u(const UnitarySymplectic& u);

/// Nearest-point style projection used after each integrator step: polar
/// factors are pushed back onto U(n) and onto the positive symplectic set.
RealMatrix reproject_symplectic(const RealMatrix& m);

/// Parameters of a product of complex Givens rotations times a diagonal
/// phase. Scaling every angle by t in [0,1] gives a unitary path from 1.
struct UnitaryRecipe {
    struct Rotation {
        std::size_t p;
        std::size_t q;
        double angle;
        double phase;
    };
    std::size_t n = 1;
    std::vector<Rotation> rotations;
    std::vector<double> phases;   // diagonal phases, radians

    /// Product evaluated at parameter t (t = 1 is the endpoint).
    UnitarySymplectic at(double t) const;
    /// Sum of diagonal phases / 2pi: the lifted angle of t -> at(t).
    double winding() const;
};

/// Draw order: for each pair p < q (lexicographic) angle then phase, then the
/// n diagonal phases, all uniform in [-pi, pi).
UnitaryRecipe random_unitary_recipe(std::size_t n, std::uint64_t seed);
UnitarySymplectic random_unitary_symplectic(std::size_t n, std::uint64_t seed);

/// Symmetric A = [[U, V], [V, -U]] with U, V symmetric, upper triangles drawn
/// row-major (U first) uniform in [-scale, scale]. A anticommutes with J0.
RealMatrix random_spd_generator(std::size_t n, double scale, std::uint64_t seed);

/// exp of random_spd_generator(n, scale, seed).
SpdSymplectic random_spd_symplectic(std::size_t n, double scale, std::uint64_t seed);

/// Q P with Q = random_unitary_symplectic(n, derive_seed(seed, "q", 0)) and
/// P = random_spd_symplectic(n, scale, derive_seed(seed, "p", 0)).
SymplecticMatrix random_symplectic(std::size_t n, double scale, std::uint64_t seed);

} // namespace maslov
