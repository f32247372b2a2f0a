#include "tiltrot/convert.hpp"

#include <cmath>

namespace tiltrot {

namespace {

double clamp_unit(double v)
{
    // Guards 1-ulp overshoot before acos/asin/sqrt.
    if (v > 1.0) return 1.0;
    if (v < -1.0) return -1.0;
    return v;
}

double atan2_or_zero(double y, double x)
{
    if (x == 0.0 && y == 0.0)
        return 0.0;
    return std::atan2(y, x);
}

int sign_pos(double v)
{
    return v >= 0.0 ? 1 : -1;
}

}  // namespace

TiltAngles tilt_from_quat(const Quaternion& q)
{
    const double r31 = 2.0 * (q.x * q.z - q.w * q.y);
    const double r32 = 2.0 * (q.y * q.z + q.w * q.x);
    const double r33 = 1.0 - 2.0 * (q.x * q.x + q.y * q.y);
    return {fused_yaw(q), atan2_or_zero(-r31, r32), std::acos(clamp_unit(r33))};
}

Quaternion quat_from_tilt(const TiltAngles& t)
{
    const double hpsi = 0.5 * t.psi;
    const double halpha = 0.5 * t.alpha;
    const double cp = std::cos(hpsi), sp = std::sin(hpsi);
    const double ca = std::cos(halpha), sa = std::sin(halpha);
    // qz(psi) * (ca, sa cos g, sa sin g, 0) expanded.
    return {cp * ca, sa * std::cos(t.gamma + hpsi), sa * std::sin(t.gamma + hpsi), ca * sp};
}

FusedAngles fused_from_quat(const Quaternion& q)
{
    const double r31 = 2.0 * (q.x * q.z - q.w * q.y);
    const double r32 = 2.0 * (q.y * q.z + q.w * q.x);
    const double r33 = 1.0 - 2.0 * (q.x * q.x + q.y * q.y);
    return {fused_yaw(q), std::asin(clamp_unit(-r31)), std::asin(clamp_unit(r32)), sign_pos(r33)};
}

namespace {

// Shared core of tilt_from_fused / quat_from_fused.
TiltAngles tilt_from_fused_impl(const FusedAngles& f)
{
    double st = std::sin(f.theta);
    double sp = std::sin(f.phi);
    double ss = st * st + sp * sp;
    if (ss > 1.0) {
        if (ss > 1.0 + 1e-9)
            throw InvalidFusedAnglesError("fused angles violate sine sum criterion");
        const double scale = 1.0 / std::sqrt(ss);
        st *= scale;
        sp *= scale;
        ss = 1.0;
    }
    const double gamma = atan2_or_zero(st, sp);
    const double sin_a = std::sqrt(ss);
    const double cos_a = (f.hemi >= 0 ? 1.0 : -1.0) * std::sqrt(1.0 - ss);
    return {f.psi, gamma, std::atan2(sin_a, cos_a)};
}

}  // namespace

Quaternion quat_from_fused(const FusedAngles& f)
{
    return quat_from_tilt(tilt_from_fused_impl(f));
}

FusedAngles fused_from_tilt(const TiltAngles& t)
{
    // Valid for unbounded alpha: the trig wraps it onto the orientation
    // with tilt 2pi - a' and gamma + pi automatically.
    const double sa = std::sin(t.alpha);
    const double ca = std::cos(t.alpha);
    return {t.psi, std::asin(clamp_unit(sa * std::sin(t.gamma))),
            std::asin(clamp_unit(sa * std::cos(t.gamma))), sign_pos(ca)};
}

TiltAngles tilt_from_fused(const FusedAngles& f)
{
    return tilt_from_fused_impl(f);
}

ZVector zvec_from_tilt(const TiltAngles& t)
{
    const double sa = std::sin(t.alpha);
    return {-sa * std::sin(t.gamma), sa * std::cos(t.gamma), std::cos(t.alpha)};
}

ZVector zvec_from_fused(const FusedAngles& f)
{
    const double st = std::sin(f.theta);
    const double sp = std::sin(f.phi);
    const double zz2 = 1.0 - st * st - sp * sp;
    return {-st, sp, (f.hemi >= 0 ? 1.0 : -1.0) * std::sqrt(zz2 > 0.0 ? zz2 : 0.0)};
}

ZVector zvec_from_quat(const Quaternion& q)
{
    return {2.0 * (q.x * q.z - q.w * q.y), 2.0 * (q.y * q.z + q.w * q.x),
            1.0 - 2.0 * (q.x * q.x + q.y * q.y)};
}

TiltAngles tilt_from_zvec(const ZVector& z)
{
    const double n = std::sqrt(z.zx * z.zx + z.zy * z.zy + z.zz * z.zz);
    if (std::abs(n - 1.0) > 1e-6)
        throw InvalidZVectorError("tilt_from_zvec: z-vector is not unit norm");
    const double zx = z.zx / n, zy = z.zy / n, zz = z.zz / n;
    return {0.0, atan2_or_zero(-zx, zy), std::acos(clamp_unit(zz))};
}

TiltPhase2 phase2_from_tilt(const TiltAngles& t)
{
    return {t.alpha * std::cos(t.gamma), t.alpha * std::sin(t.gamma)};
}

TiltPhase3 phase3_from_tilt(const TiltAngles& t)
{
    return {t.alpha * std::cos(t.gamma), t.alpha * std::sin(t.gamma), t.psi};
}

AbsTiltPhase2 absphase2_from_tilt(const TiltAngles& t)
{
    const double gt = t.gamma + t.psi;
    return {t.alpha * std::cos(gt), t.alpha * std::sin(gt)};
}

AbsTiltPhase3 absphase3_from_tilt(const TiltAngles& t)
{
    const double gt = t.gamma + t.psi;
    return {t.alpha * std::cos(gt), t.alpha * std::sin(gt), t.psi};
}

TiltAngles tilt_from_phase(const TiltPhase2& p)
{
    return {0.0, atan2_or_zero(p.py, p.px), std::hypot(p.px, p.py)};
}

TiltAngles tilt_from_phase(const TiltPhase3& p)
{
    return {p.pz, atan2_or_zero(p.py, p.px), std::hypot(p.px, p.py)};
}

TiltAngles tilt_from_phase(const AbsTiltPhase2& p)
{
    // psi = 0, so the absolute and relative axes coincide.
    return {0.0, atan2_or_zero(p.pty, p.ptx), std::hypot(p.ptx, p.pty)};
}

TiltAngles tilt_from_phase(const AbsTiltPhase3& p)
{
    const double gt = atan2_or_zero(p.pty, p.ptx);
    return {p.ptz, wrap_angle(gt - p.ptz), std::hypot(p.ptx, p.pty)};
}

AbsTiltPhase3 abs_from_rel(const TiltPhase3& p)
{
    const double c = std::cos(p.pz), s = std::sin(p.pz);
    return {c * p.px - s * p.py, s * p.px + c * p.py, p.pz};
}

TiltPhase3 rel_from_abs(const AbsTiltPhase3& p)
{
    const double c = std::cos(p.ptz), s = std::sin(p.ptz);
    return {c * p.ptx + s * p.pty, -s * p.ptx + c * p.pty, p.ptz};
}

TiltPhase3 phase3_from_quat(const Quaternion& q)
{
    return phase3_from_tilt(tilt_from_quat(q));
}

AbsTiltPhase3 absphase3_from_quat(const Quaternion& q)
{
    return absphase3_from_tilt(tilt_from_quat(q));
}

Quaternion quat_from_phase(const TiltPhase2& p)
{
    return quat_from_tilt(tilt_from_phase(p));
}

Quaternion quat_from_phase(const TiltPhase3& p)
{
    return quat_from_tilt(tilt_from_phase(p));
}

Quaternion quat_from_phase(const AbsTiltPhase3& p)
{
    return quat_from_tilt(tilt_from_phase(p));
}

}  // namespace tiltrot
