#pragma once

#include <cstdint>

#include "maslov/cover.hpp"

namespace maslov {

/// Continuous lift of arg det(X + iY) of the unitary polar factor along a
/// path, in turns.
struct LiftedAngle {
    double value = 0.0;       // turns
    std::size_t step_count = 0;
    double max_step = 0.0;    // radians, always < pi/2
};

/// Sum of principal arguments of d_{i+1} / d_i over 2pi. Throws StepTooLarge
/// if an increment reaches pi/2.
LiftedAngle lifted_angle(const CoverElement& g);

/// Maslov index of a loop: round(lifted_angle). Throws NotALoop if the
/// endpoint is not the identity and NotNearInteger if the angle is off an
/// integer by more than 1e-6.
std::int64_t loop_index(const CoverElement& g);

/// Rotation angle of the orthogonal polar factor of a 2x2 matrix with
/// positive determinant: atan2(c - b, a + d).
double angle2x2(const RealMatrix& a);

/// n = 1 only: unwrapped angle2x2 along the samples, in turns. Independent of
/// the Newton polar route used by lifted_angle.
double angle2x2_lift(const CoverElement& g);

/// Endpoints agree and lifted angles agree within tol.
bool same_class(const CoverElement& g, const CoverElement& h, double tol = 1e-8);

} // namespace maslov
