#include "tiltrot/verify.hpp"

#include <cmath>

namespace tiltrot {

double RandomStream::uniform(double lo, double hi)
{
    // Top 53 bits of the generator output; bit-identical everywhere.
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

double RandomStream::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = uniform(-1.0, 1.0);
        v = uniform(-1.0, 1.0);
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

Quaternion RandomStream::unit_quaternion()
{
    while (true) {
        const Quaternion q{normal(), normal(), normal(), normal()};
        const double n = norm(q);
        if (n > 1e-6)
            return {q.w / n, q.x / n, q.y / n, q.z / n};
    }
}

Quaternion random_rotation(RandomStream& rng)
{
    return rng.unit_quaternion();
}

PhaseErrorScan fused_phase_error_scan(double alpha, int n_gamma)
{
    if (!(alpha > 0.0) || alpha > 0.5 * kPi)
        throw InvalidArgumentError("fused_phase_error_scan: alpha must be in (0, pi/2]");
    if (n_gamma < 360)
        throw InvalidArgumentError("fused_phase_error_scan: need at least 360 gamma steps");

    const double sa = std::sin(alpha);
    PhaseErrorScan out;
    out.small_angle_rel_diff = (alpha - sa) / alpha;
    for (int i = 0; i < n_gamma; ++i) {
        // Grid over (-pi, pi], endpoint included.
        const double gamma = -kPi + 2.0 * kPi * (i + 1) / n_gamma;
        const double cg = std::cos(gamma);
        const double px = alpha * cg;
        const double phi = std::asin(sa * cg);
        const double d = std::abs(px - phi) / alpha;
        if (d > out.max_rel_diff) {
            out.max_rel_diff = d;
            out.gamma_at_max = gamma;
        }
    }
    return out;
}

}  // namespace tiltrot
