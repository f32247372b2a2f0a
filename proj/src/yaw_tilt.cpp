#include "tiltrot/yaw_tilt.hpp"

#include <cmath>

#include "tiltrot/convert.hpp"

namespace tiltrot {

YawTilt decompose(const Quaternion& q)
{
    const double psi = fused_yaw(q);
    const Quaternion qy = quat_z(psi);
    Quaternion qt = conjugate(qy) * q;
    // The z-component vanishes analytically; drop the roundoff residue.
    qt.z = 0.0;
    return {qy, normalize_quat(qt)};
}

Quaternion compose_yaw_tilt(double psi, const TiltAngles& tilt)
{
    if (std::abs(wrap_angle(tilt.psi)) > 1e-9)
        throw InvalidTiltError("compose_yaw_tilt: tilt angles carry a yaw component");
    return quat_from_tilt({psi, tilt.gamma, tilt.alpha});
}

Quaternion compose_yaw_tilt(double psi, const FusedAngles& tilt)
{
    if (std::abs(wrap_angle(tilt.psi)) > 1e-9)
        throw InvalidTiltError("compose_yaw_tilt: fused angles carry a yaw component");
    const TiltAngles t = tilt_from_fused(tilt);
    return quat_from_tilt({psi, t.gamma, t.alpha});
}

Quaternion compose_yaw_tilt(double psi, const Quaternion& tilt)
{
    if (std::abs(tilt.z) > 1e-9)
        throw InvalidTiltError("compose_yaw_tilt: quaternion is not a tilt rotation");
    return quat_z(psi) * tilt;
}

Quaternion compose_yaw_zvec(double psi, const ZVector& z)
{
    const double n = std::sqrt(z.zx * z.zx + z.zy * z.zy + z.zz * z.zz);
    if (std::abs(n - 1.0) > 1e-6)
        throw InvalidZVectorError("compose_yaw_zvec: z-vector is not unit norm");
    const double zx = z.zx / n, zy = z.zy / n, zz = z.zz / n;

    const double n_wz = 0.5 * (1.0 + zz);
    const double root = std::sqrt(n_wz);
    double w, qz, xt, yt;
    psi = wrap_angle(psi);
    if (psi == 0.0) {
        w = root;
        qz = 0.0;
        xt = zy;
        yt = -zx;
    } else {
        const double cp = std::cos(0.5 * psi), sp = std::sin(0.5 * psi);
        w = cp * root;
        qz = sp * root;
        xt = zx * qz + zy * w;
        yt = zy * qz - zx * w;
    }

    const double den = xt * xt + yt * yt;
    if (den == 0.0) {
        // Either the identity tilt (zz = +1, x and y vanish exactly) or the
        // yaw-singular tilt by pi (zz = -1), where gamma+psi carries the
        // only information and (0,1,0,0) is the conventional pick.
        if (1.0 - n_wz < 0.5)
            return {w, 0.0, 0.0, qz};
        return {0.0, 1.0, 0.0, 0.0};
    }
    const double a = std::sqrt((1.0 - n_wz) / den);
    return {w, a * xt, a * yt, qz};
}

MismatchedComposition compose_mismatched(double psi_g, const Quaternion& q_gh,
                                         const Quaternion& q_hc)
{
    const double a = q_gh.x * q_hc.x + q_gh.y * q_hc.y;
    const double b = q_gh.x * q_hc.y - q_gh.y * q_hc.x;
    const double c = q_gh.w * q_hc.z + q_gh.z * q_hc.w;
    const double d = q_gh.w * q_hc.w - q_gh.z * q_hc.z;

    const double ca = d - a, cb = b - c, cc = b + c, cd = d + a;
    const double cp = std::cos(0.5 * psi_g), sp = std::sin(0.5 * psi_g);
    const double g = cd * cp - cb * sp;
    const double h = ca * sp - cc * cp;
    const double f = std::hypot(g, h);

    if (f < 1e-9) {
        // Degenerate geometry: every candidate B shares the fused yaw of
        // q_GC, so the request either matches it (infinitely many
        // solutions, return one) or cannot be met at all.
        const double attainable = fused_yaw(q_gh * q_hc);
        if (std::abs(wrap_angle(psi_g - attainable)) > 1e-6)
            throw NoSolutionError("compose_mismatched: requested yaw is unattainable", attainable);
        MismatchedComposition out;
        out.q_hb = q_hc;
        out.q_gb = q_gh * q_hc;
        out.multiple_solutions = true;
        return out;
    }

    MismatchedComposition out;
    const Quaternion ref{g / f, 0.0, 0.0, h / f};
    out.q_hb = ref * q_hc;
    out.q_gb = q_gh * out.q_hb;

    // With alpha_G + alpha_C = pi but yaw-dependent terms not cancelling,
    // F stays nonzero while the output yaw is still forced; verify the
    // request was actually met.
    if (std::abs(wrap_angle(fused_yaw(out.q_gb) - psi_g)) > 1e-6) {
        const double attainable = fused_yaw(q_gh * q_hc);
        throw NoSolutionError("compose_mismatched: requested yaw is unattainable", attainable);
    }
    return out;
}

}  // namespace tiltrot
