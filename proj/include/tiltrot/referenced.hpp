#pragma once

#include <optional>
#include <string>

#include "tiltrot/rotation.hpp"

// Referenced rotations: the rotation that maps frame A onto frame B,
// expressed in the coordinates of a reference frame G.
//
// The frame tags are optional opaque labels. The math is tag free; tags
// are compared only when both sides carry one, to catch wiring mistakes
// in larger systems.

namespace tiltrot {

struct ReferencedRotation {
    Quaternion rot;
    std::optional<std::string> ref;   // reference frame
    std::optional<std::string> from;  // rotation start frame
    std::optional<std::string> to;    // rotation end frame
};

// Builds the rotation from A to B referenced by G out of the two global
// rotations: q_GB * q_GA^-1.
ReferencedRotation ref_rot(const Quaternion& q_gb, const Quaternion& q_ga);
ReferencedRotation ref_rot(const Quaternion& q_gb, const Quaternion& q_ga,
                           std::string ref_tag, std::string from_tag, std::string to_tag);

// Chains A->B then B->C in the common reference frame. Throws
// FrameMismatchError if tags are present on both sides and disagree.
ReferencedRotation ref_rot_compose(const ReferencedRotation& r_bc, const ReferencedRotation& r_ab);

// Conjugate rotation; the endpoint tags swap.
ReferencedRotation ref_rot_invert(const ReferencedRotation& r);

// Re-expresses r in the coordinates of frame H: q_HG * r * q_HG^-1.
ReferencedRotation ref_rot_change_frame(const ReferencedRotation& r, const Quaternion& q_hg,
                                        std::optional<std::string> new_ref_tag = std::nullopt);

// Matrix view of the stored quaternion.
RotationMatrix as_matrix(const ReferencedRotation& r);

}  // namespace tiltrot
