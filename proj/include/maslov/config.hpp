#pragma once

#include <cstddef>

namespace maslov {

/// Default numerical thresholds. Unless a field says otherwise the value is
/// relative to the Frobenius norm of the input.
struct Tolerances {
    double symmetry = 1e-12;          // jacobi_eigh / spd_power input check
    double eig_offdiag = 1e-14;       // Jacobi stopping threshold
    int eig_max_sweeps = 100;
    double polar_step = 1e-12;        // Newton stopping threshold
    int polar_max_iter = 100;
    double polar_scale_min = 0.1;
    double polar_scale_max = 10.0;
    double singular_det = 1e-300;     // absolute
    double positive_eig = 1e-12;      // relative to the largest eigenvalue
    double symplectic = 1e-8;         // times (1 + |M|_F^2)
    double unitary = 1e-8;            // absolute, on X+iY
    double identity_start = 1e-10;    // absolute, first path sample
    double near_singular_det = 1e-100;
    double loop_endpoint = 1e-6;
    double loop_integer = 1e-6;
    double overflow_entry = 1e300;
};

inline constexpr Tolerances default_tolerances{};

/// Path sampling defaults: grids are uniform with `steps` intervals.
inline constexpr std::size_t default_steps = 256;
inline constexpr std::size_t max_steps = std::size_t{1} << 20;

/// Homogenization defaults.
inline constexpr int default_m_max = 12;
inline constexpr int m_max_limit = 20;
inline constexpr double default_mu_tol = 1e-6;

/// Fixed slack added on top of every exact-arithmetic bound in the checks.
inline constexpr double default_slack = 1e-6;

} // namespace maslov
