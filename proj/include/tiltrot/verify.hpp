#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "tiltrot/rotation.hpp"

// Independent numerical oracles: finite difference differentiation, the
// quaternion kinematics reference for angular velocity, deterministic
// random rotation sampling, and the fused angles vs tilt phase error scan.
//
// Everything here is deliberately implementation independent of the
// analytic conversion paths it is used to check.

namespace tiltrot {

// Deterministic random value stream. Uniform variates are produced
// directly from the raw mt19937_64 output so that the sequence is
// identical on every platform; normals use the Marsaglia polar method on
// top of that.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : rng_(seed) {}

    // Uniform in [lo, hi).
    double uniform(double lo, double hi);

    double normal();

    // Uniform over the rotation group (normalized 4D Gaussian).
    Quaternion unit_quaternion();

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Uniformly random rotation; deterministic for a given stream state.
Quaternion random_rotation(RandomStream& rng);

// Central difference (f(t+h) - f(t-h)) / 2h.
template <class F>
double fd_derivative(F&& f, double t, double h)
{
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

template <std::size_t N, class F>
std::array<double, N> fd_derivative_n(F&& f, double t, double h)
{
    const std::array<double, N> a = f(t + h);
    const std::array<double, N> b = f(t - h);
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i)
        out[i] = (a[i] - b[i]) / (2.0 * h);
    return out;
}

// Reference angular velocity of a smooth unit quaternion trajectory,
// W = 2 (dq/dt) q^-1 vector part, in global frame coordinates. The
// derivative is a central difference at step h.
template <class F>
AngularVelocity angvel_reference(F&& qtraj, double t, double h)
{
    const Quaternion qp = qtraj(t + h);
    const Quaternion qm = qtraj(t - h);
    const Quaternion qd{(qp.w - qm.w) / (2.0 * h), (qp.x - qm.x) / (2.0 * h),
                        (qp.y - qm.y) / (2.0 * h), (qp.z - qm.z) / (2.0 * h)};
    const Quaternion r = qd * conjugate(qtraj(t));
    return {2.0 * r.x, 2.0 * r.y, 2.0 * r.z};
}

struct PhaseErrorScan {
    double max_rel_diff = 0.0;        // max |px - phi| / alpha over the gamma grid
    double small_angle_rel_diff = 0.0;  // (alpha - sin alpha) / alpha
    double gamma_at_max = 0.0;
};

// Scans the relative difference between the tilt phase and fused angles
// parameters at fixed tilt magnitude alpha over n_gamma uniformly spaced
// tilt axis angles. Throws InvalidArgumentError unless alpha is in
// (0, pi/2] and n_gamma >= 360.
PhaseErrorScan fused_phase_error_scan(double alpha, int n_gamma);

}  // namespace tiltrot
