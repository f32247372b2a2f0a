#include "tiltrot/kinematics.hpp"

#include <cmath>

namespace tiltrot {

namespace {

constexpr double kYawSingularityBand = 1e-6;   // |alpha - pi|
constexpr double kTiltAxisSingularityBand = 1e-9;  // alpha

struct StateTrig {
    double cg, sg;    // cos/sin gamma
    double cgt, sgt;  // cos/sin (gamma + psi)
    double ca, sa;    // cos/sin alpha
};

StateTrig state_trig(const TiltAngles& t)
{
    const double gt = t.gamma + t.psi;
    return {std::cos(t.gamma), std::sin(t.gamma), std::cos(gt), std::sin(gt),
            std::cos(t.alpha), std::sin(t.alpha)};
}

void require_away_from_yaw_singularity(double alpha, const char* who)
{
    if (std::abs(alpha - kPi) < kYawSingularityBand)
        throw YawSingularityError(std::string(who) + ": fused yaw singular at alpha = pi");
}

}  // namespace

SmoothSC smooth_sc(double alpha)
{
    if (alpha == 0.0)
        return {1.0, 0.0};
    if (std::abs(alpha) < 1e-4) {
        const double a2 = alpha * alpha;
        return {1.0 - a2 / 6.0, alpha * (0.5 - a2 / 24.0)};
    }
    return {std::sin(alpha) / alpha, (1.0 - std::cos(alpha)) / alpha};
}

AbsTiltPhaseVel3 absvel_from_relvel(const TiltPhaseVel3& v, const TiltAngles& state)
{
    const double cp = std::cos(state.psi), sp = std::sin(state.psi);
    const double gt = state.gamma + state.psi;
    const double ptx = state.alpha * std::cos(gt);
    const double pty = state.alpha * std::sin(gt);
    return {cp * v.dpx - sp * v.dpy - pty * v.dpz,
            sp * v.dpx + cp * v.dpy + ptx * v.dpz, v.dpz};
}

TiltPhaseVel3 relvel_from_absvel(const AbsTiltPhaseVel3& v, const TiltAngles& state)
{
    const double cp = std::cos(state.psi), sp = std::sin(state.psi);
    const double px = state.alpha * std::cos(state.gamma);
    const double py = state.alpha * std::sin(state.gamma);
    return {cp * v.dptx + sp * v.dpty + py * v.dptz,
            -sp * v.dptx + cp * v.dpty - px * v.dptz, v.dptz};
}

TiltAnglesVel tiltvel_from_phasevel(const TiltPhaseVel3& v, const TiltAngles& state)
{
    const StateTrig t = state_trig(state);
    TiltAnglesVel out;
    out.dpsi = v.dpz;
    out.dalpha = t.cg * v.dpx + t.sg * v.dpy;
    if (state.alpha < kTiltAxisSingularityBand)
        throw TiltAxisSingularityError("tiltvel_from_phasevel: dgamma infinite at alpha = 0",
                                       out.dpsi, out.dalpha);
    out.dgamma = (t.cg * v.dpy - t.sg * v.dpx) / state.alpha;
    return out;
}

TiltAnglesVel tiltvel_from_phasevel(const AbsTiltPhaseVel3& v, const TiltAngles& state)
{
    const StateTrig t = state_trig(state);
    TiltAnglesVel out;
    out.dpsi = v.dptz;
    out.dalpha = t.cgt * v.dptx + t.sgt * v.dpty;
    if (state.alpha < kTiltAxisSingularityBand)
        throw TiltAxisSingularityError("tiltvel_from_phasevel: dgamma infinite at alpha = 0",
                                       out.dpsi, out.dalpha);
    const double dgammat = (t.cgt * v.dpty - t.sgt * v.dptx) / state.alpha;
    out.dgamma = dgammat - out.dpsi;
    return out;
}

TiltPhaseVel3 phasevel_from_tiltvel(const TiltAnglesVel& v, const TiltAngles& state)
{
    const StateTrig t = state_trig(state);
    const double ag = state.alpha * v.dgamma;
    return {t.cg * v.dalpha - t.sg * ag, t.sg * v.dalpha + t.cg * ag, v.dpsi};
}

AbsTiltPhaseVel3 absphasevel_from_tiltvel(const TiltAnglesVel& v, const TiltAngles& state)
{
    const StateTrig t = state_trig(state);
    const double agt = state.alpha * v.dgammat();
    return {t.cgt * v.dalpha - t.sgt * agt, t.sgt * v.dalpha + t.cgt * agt, v.dpsi};
}

AngularVelocity angvel_from_tiltvel(const TiltAnglesVel& v, const TiltAngles& state)
{
    const StateTrig t = state_trig(state);
    return {t.cgt * v.dalpha - t.sgt * t.sa * v.dgamma,
            t.sgt * v.dalpha + t.cgt * t.sa * v.dgamma,
            v.dpsi + (1.0 - t.ca) * v.dgamma};
}

TiltAnglesVel tiltvel_from_angvel(const AngularVelocity& w, const TiltAngles& state)
{
    require_away_from_yaw_singularity(state.alpha, "tiltvel_from_angvel");
    const StateTrig t = state_trig(state);
    TiltAnglesVel out;
    out.dalpha = t.cgt * w.ox + t.sgt * w.oy;
    out.dpsi = (t.sa * t.sgt * w.ox - t.sa * t.cgt * w.oy) / (1.0 + t.ca) + w.oz;
    if (state.alpha < kTiltAxisSingularityBand)
        throw TiltAxisSingularityError("tiltvel_from_angvel: dgamma infinite at alpha = 0",
                                       out.dpsi, out.dalpha);
    out.dgamma = (-t.sgt * w.ox + t.cgt * w.oy) / t.sa;
    return out;
}

TiltVelBasis tiltvel_basis(const TiltAngles& state)
{
    require_away_from_yaw_singularity(state.alpha, "tiltvel_basis");
    if (state.alpha < kTiltAxisSingularityBand)
        throw TiltAxisSingularityError("tiltvel_basis: gamma rates singular at alpha = 0",
                                       0.0, 0.0);
    const StateTrig t = state_trig(state);
    TiltVelBasis b;
    const double opc = 1.0 + t.ca;
    b.v_psi = {t.sa * t.sgt / opc, -t.sa * t.cgt / opc, 1.0};
    b.v_gammat = {-t.ca * t.sgt / t.sa, t.ca * t.cgt / t.sa, 1.0};
    b.v_gamma = {-t.sgt / t.sa, t.cgt / t.sa, 0.0};
    b.v_alpha = {t.cgt, t.sgt, 0.0};
    return b;
}

AngularVelocity angvel_from_phasevel(const TiltPhaseVel3& v, const TiltAngles& state)
{
    if (state.alpha == 0.0) {
        // W equals the absolute phase velocity exactly at the origin.
        const AbsTiltPhaseVel3 a = absvel_from_relvel(v, state);
        return {a.dptx, a.dpty, a.dptz};
    }
    const StateTrig t = state_trig(state);
    const SmoothSC sc = smooth_sc(state.alpha);
    const double ga = t.cg * v.dpy - t.sg * v.dpx;  // alpha * dgamma
    const double da = t.cg * v.dpx + t.sg * v.dpy;
    return {t.cgt * da - sc.s * t.sgt * ga, t.sgt * da + sc.s * t.cgt * ga,
            v.dpz + sc.c * ga};
}

AngularVelocity angvel_from_phasevel(const AbsTiltPhaseVel3& v, const TiltAngles& state)
{
    if (state.alpha == 0.0)
        return {v.dptx, v.dpty, v.dptz};
    const StateTrig t = state_trig(state);
    const SmoothSC sc = smooth_sc(state.alpha);
    const double ga = t.cgt * v.dpty - t.sgt * v.dptx - state.alpha * v.dptz;
    const double da = t.cgt * v.dptx + t.sgt * v.dpty;
    return {t.cgt * da - sc.s * t.sgt * ga, t.sgt * da + sc.s * t.cgt * ga,
            v.dptz + sc.c * ga};
}

TiltPhaseVel3 phasevel_from_angvel(const AngularVelocity& w, const TiltAngles& state)
{
    require_away_from_yaw_singularity(state.alpha, "phasevel_from_angvel");
    if (state.alpha == 0.0) {
        const AbsTiltPhaseVel3 a{w.ox, w.oy, w.oz};
        return relvel_from_absvel(a, state);
    }
    const StateTrig t = state_trig(state);
    const double inv_s = 1.0 / smooth_sc(state.alpha).s;
    const double dpx = (t.cg * t.cgt + inv_s * t.sg * t.sgt) * w.ox
                     + (t.cg * t.sgt - inv_s * t.sg * t.cgt) * w.oy;
    const double dpy = (t.sg * t.cgt - inv_s * t.cg * t.sgt) * w.ox
                     + (t.sg * t.sgt + inv_s * t.cg * t.cgt) * w.oy;
    const double dpz = (t.sa * t.sgt * w.ox - t.sa * t.cgt * w.oy) / (1.0 + t.ca) + w.oz;
    return {dpx, dpy, dpz};
}

AbsTiltPhaseVel3 absphasevel_from_angvel(const AngularVelocity& w, const TiltAngles& state)
{
    require_away_from_yaw_singularity(state.alpha, "absphasevel_from_angvel");
    if (state.alpha == 0.0)
        return {w.ox, w.oy, w.oz};
    const StateTrig t = state_trig(state);
    const double ca_s = t.ca / smooth_sc(state.alpha).s;
    const double cross = t.cgt * t.sgt * (1.0 - ca_s);
    const double dptx = (t.cgt * t.cgt + ca_s * t.sgt * t.sgt) * w.ox + cross * w.oy
                      - state.alpha * t.sgt * w.oz;
    const double dpty = cross * w.ox + (t.sgt * t.sgt + ca_s * t.cgt * t.cgt) * w.oy
                      + state.alpha * t.cgt * w.oz;
    const double dptz = (t.sa * t.sgt * w.ox - t.sa * t.cgt * w.oy) / (1.0 + t.ca) + w.oz;
    return {dptx, dpty, dptz};
}

double tangent_residual(const AngularVelocity& w, const Quaternion& q)
{
    if (std::abs(q.z) > 1e-9)
        throw InvalidTiltError("tangent_residual: quaternion is not a tilt rotation");
    return w.ox * q.y - w.oy * q.x + w.oz * q.w;
}

}  // namespace tiltrot
