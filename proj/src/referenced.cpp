#include "tiltrot/referenced.hpp"

namespace tiltrot {

namespace {

void check_tags_equal(const std::optional<std::string>& a, const std::optional<std::string>& b,
                      const char* what)
{
    if (a && b && *a != *b)
        throw FrameMismatchError(std::string(what) + ": '" + *a + "' vs '" + *b + "'");
}

}  // namespace

ReferencedRotation ref_rot(const Quaternion& q_gb, const Quaternion& q_ga)
{
    return {q_gb * conjugate(q_ga), std::nullopt, std::nullopt, std::nullopt};
}

ReferencedRotation ref_rot(const Quaternion& q_gb, const Quaternion& q_ga,
                           std::string ref_tag, std::string from_tag, std::string to_tag)
{
    return {q_gb * conjugate(q_ga), std::move(ref_tag), std::move(from_tag), std::move(to_tag)};
}

ReferencedRotation ref_rot_compose(const ReferencedRotation& r_bc, const ReferencedRotation& r_ab)
{
    check_tags_equal(r_bc.ref, r_ab.ref, "ref_rot_compose: reference frames differ");
    check_tags_equal(r_bc.from, r_ab.to, "ref_rot_compose: endpoint frames do not chain");
    ReferencedRotation out;
    out.rot = r_bc.rot * r_ab.rot;
    out.ref = r_bc.ref ? r_bc.ref : r_ab.ref;
    out.from = r_ab.from;
    out.to = r_bc.to;
    return out;
}

ReferencedRotation ref_rot_invert(const ReferencedRotation& r)
{
    return {conjugate(r.rot), r.ref, r.to, r.from};
}

ReferencedRotation ref_rot_change_frame(const ReferencedRotation& r, const Quaternion& q_hg,
                                        std::optional<std::string> new_ref_tag)
{
    ReferencedRotation out;
    out.rot = q_hg * r.rot * conjugate(q_hg);
    out.ref = std::move(new_ref_tag);
    out.from = r.from;
    out.to = r.to;
    return out;
}

RotationMatrix as_matrix(const ReferencedRotation& r)
{
    return rotmat_from_quat(r.rot);
}

}  // namespace tiltrot
