#pragma once

#include <optional>
#include <vector>

#include "tiltrot/kinematics.hpp"
#include "tiltrot/rotation.hpp"

// Spherical linear interpolation with its tilt and yaw preservation
// guarantees, and cubic spline interpolation in the tilt phase space.

namespace tiltrot {

// Constant angular velocity geodesic between unit quaternions, u in [0, 1].
// q1 is negated internally when dot(q0, q1) < 0 so both endpoints lie in
// the same 4D hemisphere; below a relative angle of 1e-6 rad the sine
// weights degrade and normalized linear interpolation is used instead.
//
// Slerp between tilt rotations yields a tilt rotation, slerp between
// rotations of equal fused yaw preserves that yaw, and slerp is invariant
// under left multiplication.
Quaternion slerp(const Quaternion& q0, const Quaternion& q1, double u);

// Slerp between two tilt rotations given as 2D phases. Requires both tilt
// magnitudes <= pi (slerp acts on orientations); throws OutOfRangeError
// beyond that.
TiltPhase2 slerp_tilt(const TiltPhase2& p0, const TiltPhase2& p1, double u);

struct SplineKey {
    double t = 0.0;
    TiltPhase3 phase;
    std::optional<TiltPhaseVel3> vel;  // clamp the spline here when given
};

struct SplineSample {
    TiltPhase3 phase;
    TiltPhaseVel3 vel;
    AngularVelocity angvel;
};

// Componentwise cubic spline over tilt phase keyframes. Keys without a
// velocity get the C2 (natural at the ends) solution; keys with one are
// clamped to it, leaving the spline C1 there. Since the phase space is all
// of R^3, every intermediate sample is a valid rotation, and keys with
// tilt magnitudes beyond pi pass through without wrapping.
//
// Immutable after construction; eval is pure and safe to call
// concurrently.
class PhaseSpline {
public:
    // Throws InvalidKeyframesError unless there are >= 2 keys with
    // strictly increasing times.
    explicit PhaseSpline(std::vector<SplineKey> keys);

    // Outside [t_min, t_max] the nearest endpoint value is held with zero
    // velocity. The angular velocity is derived from the sampled phase
    // velocity.
    SplineSample eval(double t) const;

    double t_min() const { return knots_.front(); }
    double t_max() const { return knots_.back(); }

private:
    std::vector<double> knots_;
    std::vector<std::array<double, 3>> values_;
    std::vector<std::array<double, 3>> slopes_;
};

}  // namespace tiltrot
