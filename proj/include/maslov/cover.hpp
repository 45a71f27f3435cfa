#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maslov/config.hpp"
#include "maslov/error.hpp"
#include "maslov/matrix.hpp"
#include "maslov/symplectic.hpp"

namespace maslov {

struct PathMeta {
    std::optional<std::string> generator;
    std::optional<double> expected_angle;  // lifted angle in turns, when known
};

/// Sampled path t -> Psi(t) on a uniform grid with Psi(0) = 1.
struct SpPath {
    std::size_t n = 0;
    std::vector<double> times;
    std::vector<RealMatrix> samples;
    /// Samples are only known up to a positive factor (renormalized powers):
    /// angle data is valid, the symplectic invariant is not.
    bool scale_only = false;

    std::size_t steps() const noexcept { return times.empty() ? 0 : times.size() - 1; }
};

/// det_u of the orthogonal polar factor of a sample (a positive multiple of a
/// symplectic matrix when scale_only is set).
Complex unitary_phase(const RealMatrix& sample, bool scale_only = false);

/// An element of the universal cover, represented by a validated sampled path
/// from the identity. Generated elements carry a regenerator that resamples
/// the same path on any uniform grid; ingested ones do not.
class CoverElement {
public:
    using Regenerator = std::function<CoverElement(std::size_t steps)>;

    /// Checks every SpPath invariant, including step coherence
    /// Re(conj(d_i) d_{i+1}) > 0 of consecutive unitary phases.
    /// Throws InvalidPath for broken data and RefinementNeeded for coherence.
    static CoverElement make(SpPath path, PathMeta meta = {}, Regenerator regen = {});

    std::size_t n() const noexcept { return path_.n; }
    std::size_t steps() const noexcept { return path_.steps(); }
    const SpPath& path() const noexcept { return path_; }
    const std::vector<double>& times() const noexcept { return path_.times; }
    const std::vector<RealMatrix>& samples() const noexcept { return path_.samples; }
    const RealMatrix& endpoint() const { return path_.samples.back(); }
    bool scale_only() const noexcept { return path_.scale_only; }
    const PathMeta& meta() const noexcept { return meta_; }
    /// det_u per sample, computed once during validation.
    const std::vector<Complex>& phases() const noexcept { return phases_; }

    bool refinable() const noexcept { return static_cast<bool>(regen_); }
    /// Resample on a uniform grid with `steps` intervals. Throws NotRefinable.
    CoverElement regenerate(std::size_t steps) const;
    const Regenerator& regenerator() const noexcept { return regen_; }

    /// Same samples under new metadata and regenerator (no re-validation).
    CoverElement rebrand(PathMeta meta, Regenerator regen) const;

private:
    CoverElement() = default;

    SpPath path_;
    PathMeta meta_;
    Regenerator regen_;
    std::vector<Complex> phases_;
};

std::vector<double> uniform_grid(std::size_t steps);

// Group structure -----------------------------------------------------------

/// Pointwise product t -> Psi(t) Phi(t). Grids must agree; if they differ and
/// both paths are refinable and one grid divides the other, both are
/// resampled on the finer grid.
CoverElement path_product(const CoverElement& g, const CoverElement& h);

/// Pointwise symplectic inverse J0^{-1} Psi(t)^T J0.
CoverElement path_inverse(const CoverElement& g);

/// Pointwise k-th power by repeated squaring. With `renormalize` each product
/// is divided by its Frobenius norm and the result is scale-only.
CoverElement path_power(const CoverElement& g, std::uint64_t k, bool renormalize = false);

/// Resample a generated path on `times`, which must be a uniform grid
/// containing the current one.
CoverElement refine_to_grid(const CoverElement& g, std::span<const double> times);

// Generators ----------------------------------------------------------------

CoverElement identity_path(std::size_t n, std::size_t steps = default_steps);

/// t -> P^t, the canonical path inside the positive symplectic set.
CoverElement iota(const SpdSymplectic& p, std::size_t steps = default_steps);

/// t -> diag(exp(i t theta_j)); expected angle sum(theta)/2pi.
CoverElement gen_phase_path(std::span<const double> theta, std::size_t steps = default_steps);

/// t -> recipe.at(t); expected angle recipe.winding().
CoverElement gen_unitary_path(const UnitaryRecipe& recipe, std::size_t steps = default_steps);

/// RK4 solution of Psi' = J0 S Psi with step 1/steps, re-projected onto
/// Sp(2n) after every step.
CoverElement gen_hamiltonian_path(const RealMatrix& s, std::size_t steps = default_steps,
                                  std::optional<double> expected_angle = std::nullopt);

/// Hamiltonian path ending at the block shear [[I, I], [0, I]].
CoverElement gen_shear_path(std::size_t n, std::size_t steps = default_steps);

/// Random symmetric 2n x 2n matrix, upper triangle row-major uniform in [-scale, scale].
RealMatrix random_symmetric(std::size_t dim, double scale, std::uint64_t seed);

/// gen_unitary_path(random recipe) * iota(random P): covers all of Sp(2n).
CoverElement gen_mixed_path(std::size_t n, double scale, std::uint64_t seed,
                            std::size_t steps = default_steps);

/// gen_hamiltonian_path with a random_symmetric Hamiltonian.
CoverElement gen_random_hamiltonian_path(std::size_t n, double scale, std::uint64_t seed,
                                         std::size_t steps = default_steps);

/// Calls build(steps) starting at `steps`, doubling on RefinementNeeded or
/// StepTooLarge until max_steps, where the last error is rethrown.
template<typename Build>
auto with_refinement(Build&& build, std::size_t steps = default_steps) {
    for (;;) {
        try {
            return build(steps);
        } catch (const Error& e) {
            if (!e.is_resolution_failure() || steps >= max_steps)
                throw;
            steps *= 2;
        }
    }
}

} // namespace maslov
