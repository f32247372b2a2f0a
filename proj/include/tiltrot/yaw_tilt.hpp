#pragma once

#include "tiltrot/rotation.hpp"

// Decomposition of rotations into fused yaw and tilt components, and
// composition of rotations from yaw and tilt specifications, including
// yaw and tilt given relative to different frames.

namespace tiltrot {

struct YawTilt {
    Quaternion yaw;   // pure z-rotation by the fused yaw
    Quaternion tilt;  // zero z-component, zero fused yaw
};

// Splits q = yaw * tilt. At the yaw singularity the convention psi = 0
// applies, so yaw is the identity and tilt is q itself.
YawTilt decompose(const Quaternion& q);

// q = qz(psi) * tilt. The tilt argument must have no yaw component of its
// own: |psi| <= 1e-9 for the angle forms, |z| <= 1e-9 for the quaternion
// form. Throws InvalidTiltError otherwise.
Quaternion compose_yaw_tilt(double psi, const TiltAngles& tilt);
Quaternion compose_yaw_tilt(double psi, const FusedAngles& tilt);
Quaternion compose_yaw_tilt(double psi, const Quaternion& tilt);

// Constructs the quaternion with fused yaw psi and tilt component given by
// the z-vector, without going through angles. Throws InvalidZVectorError
// for non-unit input (renormalizes within 1e-6).
Quaternion compose_yaw_zvec(double psi, const ZVector& z);

struct MismatchedComposition {
    Quaternion q_hb;  // frame B relative to H
    Quaternion q_gb;  // frame B relative to G
    // Set when the inputs are degenerate (alpha_G + alpha_C = pi) and the
    // requested yaw is attainable; q_hb/q_gb are then one representative of
    // the infinite solution family.
    bool multiple_solutions = false;
};

// Finds the frame B with fused yaw psi_g relative to G and the tilt
// component of q_hc relative to H, where q_gh rotates G to H. Throws
// NoSolutionError (carrying the attainable yaw) when the requested yaw
// cannot be realised, which happens exactly when the tilt angles of q_gh
// and q_hc sum to pi and the request disagrees with the forced yaw.
MismatchedComposition compose_mismatched(double psi_g, const Quaternion& q_gh,
                                         const Quaternion& q_hc);

}  // namespace tiltrot
