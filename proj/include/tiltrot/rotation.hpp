#pragma once

#include <array>

#include "tiltrot/errors.hpp"

// Core rotation value types and the fused yaw operation.
//
// Conventions: the z-axis points up, angles are in radians, and a rotation
// maps the global frame G onto the body frame B. All types are immutable
// values and all operations are pure functions, so everything here is safe
// to use concurrently without synchronisation.

namespace tiltrot {

inline constexpr double kPi = 3.14159265358979323846;

// Unit quaternion (w, x, y, z). Both covers q and -q denote the same
// rotation and are accepted everywhere; constructors do not canonicalise
// the sign, since the fused yaw needs the full (-pi, pi] range.
struct Quaternion {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// 3x3 rotation matrix, row major. Row 3 is the z-vector of the rotation,
// i.e. the global up direction expressed in body coordinates.
struct RotationMatrix {
    std::array<std::array<double, 3>, 3> r{{{1.0, 0.0, 0.0},
                                            {0.0, 1.0, 0.0},
                                            {0.0, 0.0, 1.0}}};
};

// Tilt angles (psi, gamma, alpha): fused yaw, tilt axis angle and tilt
// angle. The tilt axis is (cos gamma, sin gamma, 0). alpha is normally in
// [0, pi] but may exceed pi to express unbounded tilts.
struct TiltAngles {
    double psi = 0.0;
    double gamma = 0.0;
    double alpha = 0.0;
};

// Fused angles (psi, theta, phi, h): fused yaw, fused pitch, fused roll and
// hemisphere. Valid parameters satisfy sin^2(theta) + sin^2(phi) <= 1.
struct FusedAngles {
    double psi = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    int hemi = 1;  // +1 upper hemisphere, -1 lower
};

// Global up direction in body coordinates; unit norm.
struct ZVector {
    double zx = 0.0;
    double zy = 0.0;
    double zz = 1.0;
};

// Relative tilt phase, (alpha cos gamma, alpha sin gamma [, psi]). The
// domain is all of R^2 / R^3; the zero vector is the identity rotation.
struct TiltPhase2 {
    double px = 0.0;
    double py = 0.0;
};

struct TiltPhase3 {
    double px = 0.0;
    double py = 0.0;
    double pz = 0.0;
};

// Absolute tilt phase; same construction with the absolute tilt axis angle
// gamma + psi in place of gamma. Coincides with the relative form when
// psi = 0.
struct AbsTiltPhase2 {
    double ptx = 0.0;
    double pty = 0.0;
};

struct AbsTiltPhase3 {
    double ptx = 0.0;
    double pty = 0.0;
    double ptz = 0.0;
};

// Angular velocity in global frame coordinates, rad/s.
struct AngularVelocity {
    double ox = 0.0;
    double oy = 0.0;
    double oz = 0.0;
};

// Wraps an angle to (-pi, pi]; -pi maps to +pi. Throws InvalidArgumentError
// for non-finite input.
double wrap_angle(double a);

Quaternion operator*(const Quaternion& a, const Quaternion& b);
Quaternion operator-(const Quaternion& q);

Quaternion conjugate(const Quaternion& q);
double dot(const Quaternion& a, const Quaternion& b);
double norm(const Quaternion& q);

// Scales to unit norm. Throws DegenerateQuaternionError if the norm is at
// or below 1e-12.
Quaternion normalize_quat(const Quaternion& q);

// Pure rotations about a single coordinate axis.
Quaternion quat_x(double angle);
Quaternion quat_y(double angle);
Quaternion quat_z(double angle);

// Rotates a vector of body coordinates into global coordinates.
std::array<double, 3> rotate(const Quaternion& q, const std::array<double, 3>& v);

// Angle of the relative rotation between two unit quaternions, in [0, pi].
// Insensitive to the sign of either input.
double rotation_angle_between(const Quaternion& a, const Quaternion& b);

// Fused yaw psi = wrap(2 atan2(z, w)) in (-pi, pi]. Identical for q and -q.
// At the essential singularity w = z = 0 (alpha = pi) returns 0 by
// convention; use is_yaw_singular to detect proximity to it.
double fused_yaw(const Quaternion& q);

// True when |w| and |z| are both below 1e-7, i.e. the fused yaw is at or
// numerically near its singularity.
bool is_yaw_singular(const Quaternion& q);

RotationMatrix rotmat_from_quat(const Quaternion& q);

// Shepperd-style conversion. Throws InvalidRotationError if the matrix is
// not orthonormal with determinant +1 within 1e-9.
Quaternion quat_from_rotmat(const RotationMatrix& m);

RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b);
RotationMatrix transpose(const RotationMatrix& m);

}  // namespace tiltrot
