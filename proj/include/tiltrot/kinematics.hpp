#pragma once

#include <array>

#include "tiltrot/rotation.hpp"

// Conversions of rotational velocities between tilt angles rates, relative
// and absolute tilt phase velocities, and angular velocity, with explicit
// handling of the two singularities:
//
//  - fused yaw singularity at alpha = pi: essential; conversions that need
//    psi-rate information fail there (|alpha - pi| < 1e-6 raises
//    YawSingularityError);
//  - tilt axis singularity at alpha = 0: removable for phase/angular
//    velocities; only gamma-rate outputs fail there (alpha < 1e-9 raises
//    TiltAxisSingularityError, which carries the still valid dpsi/dalpha).
//
// The `state` argument is the tilt angles of the rotation the velocity is
// attached to; the absolute tilt axis angle gamma + psi is derived
// internally.

namespace tiltrot {

// Tilt angles rates. The absolute tilt axis angle rate is derived,
// dgammat = dgamma + dpsi, exactly.
struct TiltAnglesVel {
    double dpsi = 0.0;
    double dgamma = 0.0;
    double dalpha = 0.0;

    double dgammat() const { return dgamma + dpsi; }
};

// Relative tilt phase velocity (dpx, dpy, dpz); dpz is the fused yaw rate.
struct TiltPhaseVel3 {
    double dpx = 0.0;
    double dpy = 0.0;
    double dpz = 0.0;
};

// Absolute tilt phase velocity; dptz equals dpz of the relative form.
struct AbsTiltPhaseVel3 {
    double dptx = 0.0;
    double dpty = 0.0;
    double dptz = 0.0;
};

// S = sin(a)/a and C = (1 - cos(a))/a, extended smoothly through a = 0
// with S(0) = 1, C(0) = 0. Below |a| < 1e-4 series expansions are used,
// where the direct formula for C loses relative accuracy.
struct SmoothSC {
    double s = 1.0;
    double c = 0.0;
};

SmoothSC smooth_sc(double alpha);

// Relative <-> absolute phase velocity; mutually inverse linear maps.
AbsTiltPhaseVel3 absvel_from_relvel(const TiltPhaseVel3& v, const TiltAngles& state);
TiltPhaseVel3 relvel_from_absvel(const AbsTiltPhaseVel3& v, const TiltAngles& state);

// dgamma = (cos g dpy - sin g dpx)/alpha, dalpha = cos g dpx + sin g dpy
// (absolute analogues with gamma + psi). Throws TiltAxisSingularityError
// at alpha < 1e-9: dgamma is infinite there, dpsi/dalpha ride along in
// the error object.
TiltAnglesVel tiltvel_from_phasevel(const TiltPhaseVel3& v, const TiltAngles& state);
TiltAnglesVel tiltvel_from_phasevel(const AbsTiltPhaseVel3& v, const TiltAngles& state);

// Always stable reverse maps, valid at alpha = 0 as well.
TiltPhaseVel3 phasevel_from_tiltvel(const TiltAnglesVel& v, const TiltAngles& state);
AbsTiltPhaseVel3 absphasevel_from_tiltvel(const TiltAnglesVel& v, const TiltAngles& state);

AngularVelocity angvel_from_tiltvel(const TiltAnglesVel& v, const TiltAngles& state);

// Projections of the angular velocity onto the rate basis vectors below.
// Throws YawSingularityError for |alpha - pi| < 1e-6 and
// TiltAxisSingularityError (with dpsi/dalpha) for alpha < 1e-9.
TiltAnglesVel tiltvel_from_angvel(const AngularVelocity& w, const TiltAngles& state);

// Basis vectors v such that dpsi = W.v_psi, dgamma = W.v_gamma, etc.
// v_alpha is the unit normal of the tilt plane and is orthogonal to the
// other three; v_psi points along the bisector of the global and body
// z-axes. Same singularity behaviour as tiltvel_from_angvel.
struct TiltVelBasis {
    std::array<double, 3> v_psi;
    std::array<double, 3> v_gamma;
    std::array<double, 3> v_alpha;
    std::array<double, 3> v_gammat;
};

TiltVelBasis tiltvel_basis(const TiltAngles& state);

// Singularity-free at alpha = 0; satisfies W = (dptx, dpty, dptz) exactly
// there.
AngularVelocity angvel_from_phasevel(const TiltPhaseVel3& v, const TiltAngles& state);
AngularVelocity angvel_from_phasevel(const AbsTiltPhaseVel3& v, const TiltAngles& state);

// Reverse maps; smooth through alpha = 0. Throw YawSingularityError for
// |alpha - pi| < 1e-6.
TiltPhaseVel3 phasevel_from_angvel(const AngularVelocity& w, const TiltAngles& state);
AbsTiltPhaseVel3 absphasevel_from_angvel(const AngularVelocity& w, const TiltAngles& state);

// Residual W.(y, -x, w) of the tilt manifold tangency condition: zero iff
// the angular velocity keeps a trajectory through the tilt rotation q
// inside the tilt manifold. Throws InvalidTiltError if |q.z| > 1e-9.
double tangent_residual(const AngularVelocity& w, const Quaternion& q);

}  // namespace tiltrot
