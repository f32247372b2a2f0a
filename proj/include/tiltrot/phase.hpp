#pragma once

#include <span>

#include "tiltrot/rotation.hpp"

// The vector space of tilt rotations: commutative tilt vector addition,
// scalar multiplication, inversion and the mean, all on tilt phase vectors.
//
// Tilt vector addition is the sum of the instantaneous angular velocities
// producing the two tilts. It is NOT rotation composition: composing tilt
// rotations is neither closed nor commutative (see compose_yaw_tilt for
// true composition via quaternions).

namespace tiltrot {

// Componentwise sum. Commutative and associative with identity (0, 0).
TiltPhase2 phase_add(const TiltPhase2& a, const TiltPhase2& b);
AbsTiltPhase2 phase_add(const AbsTiltPhase2& a, const AbsTiltPhase2& b);

// 3D extension: pz adds componentwise as well.
TiltPhase3 phase_add(const TiltPhase3& a, const TiltPhase3& b);
AbsTiltPhase3 phase_add(const AbsTiltPhase3& a, const AbsTiltPhase3& b);

// (lambda px, lambda py); preserves gamma for lambda > 0, flips it by pi
// for lambda < 0.
TiltPhase2 phase_scale(double lambda, const TiltPhase2& p);
TiltPhase3 phase_scale(double lambda, const TiltPhase3& p);

// Phase of the inverse rotation. The relative phase of the inverse is the
// negated absolute phase of the original and vice versa, so inversion
// swaps the two spaces. For pure tilts (pz = 0) both forms reduce to -P.
AbsTiltPhase3 phase_invert(const TiltPhase3& p);
TiltPhase3 phase_invert(const AbsTiltPhase3& p);
TiltPhase2 phase_invert(const TiltPhase2& p);

// Componentwise arithmetic mean. Throws InvalidArgumentError on an empty
// input.
TiltPhase2 phase_mean(std::span<const TiltPhase2> ps);
TiltPhase3 phase_mean(std::span<const TiltPhase3> ps);

}  // namespace tiltrot
