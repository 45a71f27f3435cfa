#include "maslov/cover.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "maslov/lu.hpp"
#include "maslov/rng.hpp"

namespace maslov {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_steps(std::size_t steps) {
    if (steps < 2)
        throw Error(ErrorCode::InvalidArgument, "a path needs at least 2 grid steps");
    if (steps > max_steps)
        throw Error(ErrorCode::RefinementNeeded, "grid cap exceeded");
}

SpPath sampled(std::size_t n, std::size_t steps, const std::function<RealMatrix(double)>& at) {
    SpPath p;
    p.n = n;
    p.times = uniform_grid(steps);
    p.samples.reserve(p.times.size());
    for (double t : p.times)
        p.samples.push_back(at(t));
    return p;
}

bool is_uniform(std::span<const double> times) {
    if (times.size() < 2)
        return false;
    const double steps = static_cast<double>(times.size() - 1);
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - static_cast<double>(i) / steps) > 1e-12)
            return false;
    return true;
}

} // namespace

Complex unitary_phase(const RealMatrix& sample, bool scale_only) {
    if (!scale_only)
        return det_u(symplectic_polar(SymplecticMatrix::from(sample, 10.0)).u);
    const PolarFactors f = polar_newton(complex_linear_part(sample));
    return det_u(UnitarySymplectic::from_orthogonal(f.orth));
}

std::vector<double> uniform_grid(std::size_t steps) {
    std::vector<double> t(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i)
        t[i] = static_cast<double>(i) / static_cast<double>(steps);
    t.back() = 1.0;
    return t;
}

CoverElement CoverElement::make(SpPath path, PathMeta meta, Regenerator regen) {
    const auto& tol = default_tolerances;
    const std::size_t count = path.samples.size();
    if (path.n == 0)
        throw Error(ErrorCode::InvalidPath, "n must be positive");
    if (count < 2 || path.times.size() != count)
        throw Error(ErrorCode::InvalidPath, "times and samples must have the same length >= 2");
    if (path.times.front() != 0.0 || path.times.back() != 1.0)
        throw Error(ErrorCode::InvalidPath, "times must run from 0 to 1");
    for (std::size_t i = 1; i < count; ++i)
        if (!(path.times[i] > path.times[i - 1]))
            throw Error(ErrorCode::InvalidPath, "times must be strictly ascending");

    const std::size_t dim = 2 * path.n;
    for (const auto& s : path.samples) {
        if (s.dim() != dim)
            throw Error(ErrorCode::InvalidPath, "sample dimension differs from 2n");
        if (!all_finite(s))
            throw Error(ErrorCode::InvalidPath, "sample has non-finite entries");
    }

    RealMatrix start = path.samples.front();
    if (path.scale_only) {
        double trace = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            trace += start(i, i);
        if (!(trace > 0.0))
            throw Error(ErrorCode::InvalidPath, "first sample is not a positive multiple of 1");
        start *= static_cast<double>(dim) / trace;
    }
    if (frobenius_norm(start - RealMatrix::identity(dim)) > tol.identity_start)
        throw Error(ErrorCode::InvalidPath, "path does not start at the identity");

    if (!path.scale_only) {
        for (std::size_t i = 0; i < count; ++i) {
            const auto& s = path.samples[i];
            if (LuFactor<double>(s).log_abs_determinant() < std::log(tol.near_singular_det))
                throw Error(ErrorCode::InvalidPath, "near-singular sample " + std::to_string(i));
            const auto check = is_symplectic(s);
            if (!check.ok)
                throw Error(ErrorCode::InvalidPath, "sample " + std::to_string(i) +
                                                        " is not symplectic (residual " +
                                                        std::to_string(check.residual) + ")");
        }
    }

    CoverElement g;
    g.phases_.reserve(count);
    for (const auto& s : path.samples)
        g.phases_.push_back(unitary_phase(s, path.scale_only));
    for (std::size_t i = 0; i + 1 < count; ++i)
        if (!(std::real(std::conj(g.phases_[i]) * g.phases_[i + 1]) > 0.0))
            throw Error(ErrorCode::RefinementNeeded,
                        "unitary phase step >= pi/2 between samples " + std::to_string(i) + " and " +
                            std::to_string(i + 1));

    g.path_ = std::move(path);
    g.meta_ = std::move(meta);
    g.regen_ = std::move(regen);
    return g;
}

CoverElement CoverElement::regenerate(std::size_t steps) const {
    if (!regen_)
        throw Error(ErrorCode::NotRefinable, "path was ingested without a generator");
    return regen_(steps);
}

CoverElement CoverElement::rebrand(PathMeta meta, Regenerator regen) const {
    CoverElement g = *this;
    g.meta_ = std::move(meta);
    g.regen_ = std::move(regen);
    return g;
}

// ---------------------------------------------------------------------------

CoverElement path_product(const CoverElement& g, const CoverElement& h) {
    if (g.n() != h.n())
        throw Error(ErrorCode::DimensionMismatch, "path_product: different n");
    if (g.steps() != h.steps()) {
        const std::size_t fine = std::max(g.steps(), h.steps());
        const std::size_t coarse = std::min(g.steps(), h.steps());
        if (!g.refinable() || !h.refinable() || fine % coarse != 0)
            throw Error(ErrorCode::GridMismatch, "path_product: paths are on different grids");
        return path_product(g.steps() == fine ? g : g.regenerate(fine),
                            h.steps() == fine ? h : h.regenerate(fine));
    }
    if (g.times() != h.times())
        throw Error(ErrorCode::GridMismatch, "path_product: time grids differ");

    SpPath p;
    p.n = g.n();
    p.times = g.times();
    p.scale_only = g.scale_only() || h.scale_only();
    p.samples.reserve(p.times.size());
    for (std::size_t i = 0; i < p.times.size(); ++i)
        p.samples.push_back(g.samples()[i] * h.samples()[i]);

    CoverElement::Regenerator regen;
    if (g.refinable() && h.refinable())
        regen = [g, h](std::size_t steps) { return path_product(g.regenerate(steps), h.regenerate(steps)); };
    return CoverElement::make(std::move(p), {"product", std::nullopt}, std::move(regen));
}

CoverElement path_inverse(const CoverElement& g) {
    SpPath p = g.path();
    for (auto& s : p.samples)
        s = symplectic_inverse(s);
    PathMeta meta{"inverse", std::nullopt};
    if (g.meta().expected_angle)
        meta.expected_angle = -*g.meta().expected_angle;
    CoverElement::Regenerator regen;
    if (g.refinable())
        regen = [g](std::size_t steps) { return path_inverse(g.regenerate(steps)); };
    return CoverElement::make(std::move(p), std::move(meta), std::move(regen));
}

CoverElement path_power(const CoverElement& g, std::uint64_t k, bool renormalize) {
    if (k == 0)
        throw Error(ErrorCode::InvalidArgument, "path_power: k must be >= 1");
    const double cap = default_tolerances.overflow_entry;
    auto settle = [&](RealMatrix& m) {
        if (renormalize) {
            m *= 1.0 / frobenius_norm(m);
        } else if (!all_finite(m) || max_abs(m) > cap) {
            throw Error(ErrorCode::Overflow, "path_power: entry exceeds 1e300");
        }
    };

    SpPath p = g.path();
    p.scale_only = g.scale_only() || renormalize;
    for (auto& s : p.samples) {
        RealMatrix base = s;
        std::optional<RealMatrix> acc;
        for (std::uint64_t e = k;;) {
            if (e & 1u) {
                acc = acc ? *acc * base : base;
                settle(*acc);
            }
            e >>= 1u;
            if (e == 0)
                break;
            base = base * base;
            settle(base);
        }
        s = std::move(*acc);
    }
    CoverElement::Regenerator regen;
    if (g.refinable())
        regen = [g, k, renormalize](std::size_t steps) {
            return path_power(g.regenerate(steps), k, renormalize);
        };
    return CoverElement::make(std::move(p), {"power", std::nullopt}, std::move(regen));
}

CoverElement refine_to_grid(const CoverElement& g, std::span<const double> times) {
    if (!g.refinable())
        throw Error(ErrorCode::NotRefinable, "refine_to_grid: path has no generator");
    if (!is_uniform(times))
        throw Error(ErrorCode::GridMismatch, "refine_to_grid: target grid is not uniform");
    const std::size_t steps = times.size() - 1;
    if (steps % g.steps() != 0)
        throw Error(ErrorCode::GridMismatch, "refine_to_grid: target grid does not contain the current one");
    return g.regenerate(steps);
}

// ---------------------------------------------------------------------------

CoverElement identity_path(std::size_t n, std::size_t steps) {
    require_steps(steps);
    const RealMatrix id = RealMatrix::identity(2 * n);
    return CoverElement::make(sampled(n, steps, [&](double) { return id; }), {"identity", 0.0},
                              [n](std::size_t s) { return identity_path(n, s); });
}

CoverElement iota(const SpdSymplectic& p, std::size_t steps) {
    require_steps(steps);
    const SymEigen eig = jacobi_eigh(p.mat());
    return CoverElement::make(sampled(p.n(), steps, [&](double t) { return spd_power(eig, t); }),
                              {"iota", 0.0}, [p](std::size_t s) { return iota(p, s); });
}

CoverElement gen_phase_path(std::span<const double> theta, std::size_t steps) {
    require_steps(steps);
    if (theta.empty())
        throw Error(ErrorCode::InvalidArgument, "gen_phase_path: theta must be nonempty");
    const double total = std::accumulate(theta.begin(), theta.end(), 0.0);
    if (std::abs(total) / static_cast<double>(steps) >= std::numbers::pi / 2)
        throw Error(ErrorCode::RefinementNeeded, "gen_phase_path: grid too coarse for the winding");
    std::vector<double> th(theta.begin(), theta.end());
    const std::size_t n = th.size();
    auto at = [&](double t) {
        ComplexMatrix z(n);
        for (std::size_t j = 0; j < n; ++j)
            z(j, j) = std::polar(1.0, t * th[j]);
        return realify(z);
    };
    return CoverElement::make(sampled(n, steps, at), {"phase", total / two_pi},
                              [th](std::size_t s) { return gen_phase_path(th, s); });
}

CoverElement gen_unitary_path(const UnitaryRecipe& recipe, std::size_t steps) {
    require_steps(steps);
    return CoverElement::make(sampled(recipe.n, steps, [&](double t) { return recipe.at(t).embed(); }),
                              {"unitary", recipe.winding()},
                              [recipe](std::size_t s) { return gen_unitary_path(recipe, s); });
}

CoverElement gen_hamiltonian_path(const RealMatrix& s, std::size_t steps, std::optional<double> expected_angle) {
    require_steps(steps);
    if (s.dim() == 0 || s.dim() % 2 != 0)
        throw Error(ErrorCode::OddDimension, "gen_hamiltonian_path: S must be 2n x 2n");
    if (!all_finite(s) || asymmetry(s) > default_tolerances.symmetry * frobenius_norm(s))
        throw Error(ErrorCode::NotSymmetric, "gen_hamiltonian_path: S must be symmetric");
    const std::size_t dim = s.dim();
    const RealMatrix id = RealMatrix::identity(dim);
    const RealMatrix ha = standard_j(dim / 2) * s * (1.0 / static_cast<double>(steps));

    // Classical RK4 for a linear system is the degree-4 Taylor polynomial of exp(hA).
    RealMatrix rk = id + ha * 0.25;
    rk = id + ha * rk * (1.0 / 3.0);
    rk = id + ha * rk * 0.5;
    rk = id + ha * rk;

    SpPath p;
    p.n = dim / 2;
    p.times = uniform_grid(steps);
    p.samples.reserve(steps + 1);
    p.samples.push_back(id);
    for (std::size_t i = 0; i < steps; ++i)
        p.samples.push_back(reproject_symplectic(rk * p.samples.back()));

    return CoverElement::make(std::move(p), {"hamiltonian", expected_angle},
                              [s, expected_angle](std::size_t m) { return gen_hamiltonian_path(s, m, expected_angle); });
}

CoverElement gen_shear_path(std::size_t n, std::size_t steps) {
    if (n == 0)
        throw Error(ErrorCode::InvalidArgument, "gen_shear_path: n must be positive");
    RealMatrix s(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        s(n + i, n + i) = -1.0;
    // det of the complex-linear part along t -> [[I, tI], [0, I]] is (1 - it/2)^n
    const double expected = static_cast<double>(n) * std::atan2(-1.0, 2.0) / two_pi;
    const CoverElement g = gen_hamiltonian_path(s, steps, expected);
    return g.rebrand({"shear", expected}, [n](std::size_t m) { return gen_shear_path(n, m); });
}

RealMatrix random_symmetric(std::size_t dim, double scale, std::uint64_t seed) {
    if (dim == 0 || !(scale > 0.0))
        throw Error(ErrorCode::InvalidArgument, "random_symmetric: need dim > 0 and scale > 0");
    SplitMix64 rng(seed);
    RealMatrix s(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
            const double x = rng.uniform(-scale, scale);
            s(i, j) = x;
            s(j, i) = x;
        }
    return s;
}

CoverElement gen_mixed_path(std::size_t n, double scale, std::uint64_t seed, std::size_t steps) {
    const UnitaryRecipe recipe = random_unitary_recipe(n, derive_seed(seed, "mixed-u", 0));
    const SpdSymplectic p = random_spd_symplectic(n, scale, derive_seed(seed, "mixed-p", 0));
    const CoverElement g = path_product(gen_unitary_path(recipe, steps), iota(p, steps));
    return g.rebrand({"mixed", std::nullopt},
                     [n, scale, seed](std::size_t m) { return gen_mixed_path(n, scale, seed, m); });
}

CoverElement gen_random_hamiltonian_path(std::size_t n, double scale, std::uint64_t seed, std::size_t steps) {
    const CoverElement g = gen_hamiltonian_path(random_symmetric(2 * n, scale, seed), steps);
    return g.rebrand({"hamiltonian", std::nullopt}, [n, scale, seed](std::size_t m) {
        return gen_random_hamiltonian_path(n, scale, seed, m);
    });
}

} // namespace maslov
