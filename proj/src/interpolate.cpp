#include "tiltrot/interpolate.hpp"

#include <algorithm>
#include <cmath>

#include "tiltrot/convert.hpp"

namespace tiltrot {

Quaternion slerp(const Quaternion& q0, const Quaternion& q1, double u)
{
    Quaternion end = q1;
    double d = dot(q0, end);
    if (d < 0.0) {
        end = -end;
        d = -d;
    }
    if (d > 1.0)
        d = 1.0;
    const double omega = std::acos(d);
    if (omega < 1e-6) {
        const Quaternion lin{q0.w + u * (end.w - q0.w), q0.x + u * (end.x - q0.x),
                             q0.y + u * (end.y - q0.y), q0.z + u * (end.z - q0.z)};
        return normalize_quat(lin);
    }
    const double so = std::sin(omega);
    const double a = std::sin((1.0 - u) * omega) / so;
    const double b = std::sin(u * omega) / so;
    return {a * q0.w + b * end.w, a * q0.x + b * end.x,
            a * q0.y + b * end.y, a * q0.z + b * end.z};
}

TiltPhase2 slerp_tilt(const TiltPhase2& p0, const TiltPhase2& p1, double u)
{
    const TiltAngles t0 = tilt_from_phase(p0);
    const TiltAngles t1 = tilt_from_phase(p1);
    if (t0.alpha > kPi || t1.alpha > kPi)
        throw OutOfRangeError("slerp_tilt: tilt magnitude above pi is not an orientation");
    const Quaternion q = slerp(quat_from_tilt(t0), quat_from_tilt(t1), u);
    return phase2_from_tilt(tilt_from_quat(q));
}

namespace {

// Velocities m_i at the knots, one component at a time: C2 continuity
// rows for free interior knots, natural (zero curvature) rows at free
// ends, identity rows where a velocity is prescribed. The system is
// tridiagonal.
std::vector<double> solve_slopes(const std::vector<double>& t, const std::vector<double>& y,
                                 const std::vector<std::optional<double>>& given)
{
    const std::size_t n = t.size();
    std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (given[i]) {
            diag[i] = 1.0;
            rhs[i] = *given[i];
        } else if (i == 0) {
            const double h = t[1] - t[0];
            diag[0] = 2.0;
            upper[0] = 1.0;
            rhs[0] = 3.0 * (y[1] - y[0]) / h;
        } else if (i == n - 1) {
            const double h = t[n - 1] - t[n - 2];
            lower[i] = 1.0;
            diag[i] = 2.0;
            rhs[i] = 3.0 * (y[n - 1] - y[n - 2]) / h;
        } else {
            const double hl = t[i] - t[i - 1];
            const double hr = t[i + 1] - t[i];
            lower[i] = 1.0 / hl;
            diag[i] = 2.0 * (1.0 / hl + 1.0 / hr);
            upper[i] = 1.0 / hr;
            rhs[i] = 3.0 * ((y[i] - y[i - 1]) / (hl * hl) + (y[i + 1] - y[i]) / (hr * hr));
        }
    }
    // Thomas algorithm.
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    std::vector<double> slope(n);
    slope[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        slope[i] = (rhs[i] - upper[i] * slope[i + 1]) / diag[i];
    return slope;
}

}  // namespace

PhaseSpline::PhaseSpline(std::vector<SplineKey> keys)
{
    if (keys.size() < 2)
        throw InvalidKeyframesError("PhaseSpline: need at least 2 keys");
    for (std::size_t i = 1; i < keys.size(); ++i) {
        if (!(keys[i].t > keys[i - 1].t))
            throw InvalidKeyframesError("PhaseSpline: key times must be strictly increasing");
    }

    const std::size_t n = keys.size();
    knots_.resize(n);
    values_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        knots_[i] = keys[i].t;
        values_[i] = {keys[i].phase.px, keys[i].phase.py, keys[i].phase.pz};
    }

    slopes_.resize(n);
    std::vector<double> y(n);
    std::vector<std::optional<double>> given(n);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = values_[i][c];
            given[i] = std::nullopt;
            if (keys[i].vel) {
                const TiltPhaseVel3& v = *keys[i].vel;
                given[i] = (c == 0) ? v.dpx : (c == 1) ? v.dpy : v.dpz;
            }
        }
        const std::vector<double> m = solve_slopes(knots_, y, given);
        for (std::size_t i = 0; i < n; ++i)
            slopes_[i][c] = m[i];
    }
}

SplineSample PhaseSpline::eval(double t) const
{
    SplineSample out;
    if (t <= knots_.front() || t >= knots_.back()) {
        const std::size_t i = (t <= knots_.front()) ? 0 : knots_.size() - 1;
        const bool at_knot = (t == knots_[i]);
        out.phase = {values_[i][0], values_[i][1], values_[i][2]};
        out.vel = at_knot ? TiltPhaseVel3{slopes_[i][0], slopes_[i][1], slopes_[i][2]}
                          : TiltPhaseVel3{};
        out.angvel = angvel_from_phasevel(out.vel, tilt_from_phase(out.phase));
        return out;
    }

    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - knots_.begin()) - 1;
    const double h = knots_[k + 1] - knots_[k];
    const double s = (t - knots_[k]) / h;

    std::array<double, 3> p{}, v{};
    for (int c = 0; c < 3; ++c) {
        const double y0 = values_[k][c], y1 = values_[k + 1][c];
        const double m0 = slopes_[k][c] * h, m1 = slopes_[k + 1][c] * h;
        const double s2 = s * s, s3 = s2 * s;
        p[c] = y0 * (2.0 * s3 - 3.0 * s2 + 1.0) + m0 * (s3 - 2.0 * s2 + s)
             + y1 * (-2.0 * s3 + 3.0 * s2) + m1 * (s3 - s2);
        v[c] = (y0 * (6.0 * s2 - 6.0 * s) + m0 * (3.0 * s2 - 4.0 * s + 1.0)
              + y1 * (-6.0 * s2 + 6.0 * s) + m1 * (3.0 * s2 - 2.0 * s)) / h;
    }
    out.phase = {p[0], p[1], p[2]};
    out.vel = {v[0], v[1], v[2]};
    out.angvel = angvel_from_phasevel(out.vel, tilt_from_phase(out.phase));
    return out;
}

}  // namespace tiltrot
