#include "maslov/rotation.hpp"

#include <cmath>
#include <numbers>

namespace maslov {

namespace {

constexpr double pi = std::numbers::pi;

} // namespace

LiftedAngle lifted_angle(const CoverElement& g) {
    const auto& d = g.phases();
    LiftedAngle out;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        const double inc = std::arg(std::conj(d[i]) * d[i + 1]);
        if (std::abs(inc) >= pi / 2)
            throw Error(ErrorCode::StepTooLarge, "angle increment >= pi/2 at step " + std::to_string(i));
        total += inc;
        out.max_step = std::max(out.max_step, std::abs(inc));
        ++out.step_count;
    }
    out.value = total / (2.0 * pi);
    return out;
}

std::int64_t loop_index(const CoverElement& g) {
    if (g.scale_only())
        throw Error(ErrorCode::NotALoop, "loop_index: scale-only path");
    const RealMatrix& end = g.endpoint();
    if (frobenius_norm(end - RealMatrix::identity(end.dim())) > default_tolerances.loop_endpoint)
        throw Error(ErrorCode::NotALoop, "loop_index: endpoint is not the identity");
    const double value = lifted_angle(g).value;
    const double k = std::round(value);
    if (std::abs(value - k) > default_tolerances.loop_integer)
        throw Error(ErrorCode::NotNearInteger, "loop_index: lifted angle is not near an integer");
    return static_cast<std::int64_t>(k);
}

double angle2x2(const RealMatrix& a) {
    if (a.dim() != 2)
        throw Error(ErrorCode::DimensionMismatch, "angle2x2: expected a 2x2 matrix");
    const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    if (!(det > 0.0))
        throw Error(ErrorCode::InvalidArgument, "angle2x2: determinant must be positive");
    return std::atan2(a(1, 0) - a(0, 1), a(0, 0) + a(1, 1));
}

double angle2x2_lift(const CoverElement& g) {
    if (g.n() != 1)
        throw Error(ErrorCode::DimensionMismatch, "angle2x2_lift: n = 1 only");
    const auto& s = g.samples();
    double prev = angle2x2(s.front());
    double total = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double cur = angle2x2(s[i]);
        total += std::remainder(cur - prev, 2.0 * pi);
        prev = cur;
    }
    return total / (2.0 * pi);
}

bool same_class(const CoverElement& g, const CoverElement& h, double tol) {
    if (g.n() != h.n())
        return false;
    const double scale = 1.0 + frobenius_norm(g.endpoint());
    if (frobenius_norm(g.endpoint() - h.endpoint()) > tol * scale)
        return false;
    return std::abs(lifted_angle(g).value - lifted_angle(h).value) <= tol;
}

} // namespace maslov
