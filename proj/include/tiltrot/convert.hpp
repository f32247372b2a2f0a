#pragma once

#include "tiltrot/rotation.hpp"

// Pairwise conversions between the quaternion, rotation matrix, tilt
// angles, fused angles, z-vector and tilt phase representations.
//
// Conversions between non-quaternion representations use the direct
// formulas where one exists (tilt <-> fused, tilt <-> zvec, tilt <-> phase)
// to avoid error accumulation; everything else routes through the
// quaternion.

namespace tiltrot {

// psi = wrap(2 atan2(z, w)), gamma = atan2(-R31, R32), alpha = acos(R33),
// with alpha in [0, pi]. At alpha in {0, pi} both atan2 arguments vanish
// and gamma is 0 by convention.
TiltAngles tilt_from_quat(const Quaternion& q);

// q = qz(psi) * (cos(a/2), sin(a/2) cos(gamma), sin(a/2) sin(gamma), 0).
// Accepts unbounded alpha; the half angle formulas wrap naturally. For
// psi = 0 the z-component of the result is exactly zero.
Quaternion quat_from_tilt(const TiltAngles& t);

// theta = asin(-R31), phi = asin(R32), h = sign(R33) with sign(0) := +1.
FusedAngles fused_from_quat(const Quaternion& q);

// Inverse of fused_from_quat. Throws InvalidFusedAnglesError when
// sin^2(theta) + sin^2(phi) exceeds 1 beyond 1e-9; within the tolerance
// the values are cropped radially onto the sine sum circle.
Quaternion quat_from_fused(const FusedAngles& f);

// theta = asin(sin a sin g), phi = asin(sin a cos g), h = sign(cos a).
// Unbounded alpha is mapped to the orientation it produces; revolution
// count is lost since fused angles represent orientations.
FusedAngles fused_from_tilt(const TiltAngles& t);

// gamma = atan2(sin theta, sin phi), sin a = sqrt(sin^2 th + sin^2 ph),
// cos a = h sqrt(1 - sin^2 a). Same error behaviour as quat_from_fused.
TiltAngles tilt_from_fused(const FusedAngles& f);

// z = (-sin a sin g, sin a cos g, cos a); independent of psi.
ZVector zvec_from_tilt(const TiltAngles& t);

// z = (-sin th, sin ph, h sqrt(1 - sin^2 th - sin^2 ph)).
ZVector zvec_from_fused(const FusedAngles& f);

// Row 3 of the equivalent rotation matrix.
ZVector zvec_from_quat(const Quaternion& q);

// psi = 0, gamma = atan2(-zx, zy), alpha = acos(zz). The input is
// renormalized when its norm is within 1e-6 of 1 and rejected with
// InvalidZVectorError beyond that.
TiltAngles tilt_from_zvec(const ZVector& z);

TiltPhase2 phase2_from_tilt(const TiltAngles& t);
TiltPhase3 phase3_from_tilt(const TiltAngles& t);
AbsTiltPhase2 absphase2_from_tilt(const TiltAngles& t);
AbsTiltPhase3 absphase3_from_tilt(const TiltAngles& t);

// Exact inverses of the phase constructions. gamma = atan2(py, px) with
// atan2(0, 0) := 0; 2D phases have psi = 0.
TiltAngles tilt_from_phase(const TiltPhase2& p);
TiltAngles tilt_from_phase(const TiltPhase3& p);
TiltAngles tilt_from_phase(const AbsTiltPhase2& p);
TiltAngles tilt_from_phase(const AbsTiltPhase3& p);

// 2D rotation by -psi / +psi of the xy components; pz carries psi and is
// unchanged. The two directions are mutually inverse.
AbsTiltPhase3 abs_from_rel(const TiltPhase3& p);
TiltPhase3 rel_from_abs(const AbsTiltPhase3& p);

// Convenience compositions via tilt angles.
TiltPhase3 phase3_from_quat(const Quaternion& q);
AbsTiltPhase3 absphase3_from_quat(const Quaternion& q);
Quaternion quat_from_phase(const TiltPhase2& p);
Quaternion quat_from_phase(const TiltPhase3& p);
Quaternion quat_from_phase(const AbsTiltPhase3& p);

}  // namespace tiltrot
