#include <cmath>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "tiltrot/convert.hpp"
#include "tiltrot/interpolate.hpp"
#include "tiltrot/verify.hpp"

using namespace tiltrot;
using test::quat_diff;

TEST_CASE("slerp endpoints and midpoint")
{
    RandomStream rng(701);
    const Quaternion q0 = random_rotation(rng);
    const Quaternion q1 = random_rotation(rng);
    CHECK(quat_diff(slerp(q0, q1, 0.0), q0) < 1e-15);
    CHECK(quat_diff(slerp(q0, q1, 1.0), q1) < 1e-15);

    // Half of a 90 degree x-rotation by axis-angle halving.
    const Quaternion mid = slerp({1.0, 0.0, 0.0, 0.0}, quat_x(kPi / 2), 0.5);
    CHECK(mid.w == doctest::Approx(0.92387953251128675).epsilon(1e-15));
    CHECK(mid.x == doctest::Approx(0.38268343236508977).epsilon(1e-15));
    CHECK(mid.y == 0.0);
    CHECK(mid.z == 0.0);
}

TEST_CASE("slerp hemisphere handling and small angles")
{
    RandomStream rng(702);
    for (int i = 0; i < 10000; ++i) {
        const Quaternion q0 = random_rotation(rng);
        const Quaternion q1 = random_rotation(rng);
        const double u = rng.uniform(0.0, 1.0);
        CHECK(quat_diff(slerp(q0, -q1, u), slerp(q0, q1, u)) < 1e-14);
        CHECK(norm(slerp(q0, q1, u)) == doctest::Approx(1.0).epsilon(1e-13));
    }
    // Nearly identical endpoints take the nlerp fallback.
    const Quaternion q = random_rotation(rng);
    const Quaternion close = normalize_quat({q.w + 1e-9, q.x, q.y, q.z});
    CHECK(quat_diff(slerp(q, close, 0.37), q) < 1e-8);
}

TEST_CASE("slerp is left-invariant and preserves equal fused yaw")
{
    RandomStream rng(703);
    for (int i = 0; i < 10000; ++i) {
        const Quaternion q0 = random_rotation(rng);
        const Quaternion q1 = random_rotation(rng);
        const Quaternion qh = random_rotation(rng);
        const double u = rng.uniform(0.0, 1.0);
        CHECK(quat_diff(slerp(qh * q0, qh * q1, u), qh * slerp(q0, q1, u)) < 1e-12);
    }
    for (int i = 0; i < 10000; ++i) {
        const double psi = rng.uniform(-kPi, kPi);
        const Quaternion q0 = quat_from_tilt({psi, rng.uniform(-kPi, kPi), rng.uniform(0.0, 3.0)});
        const Quaternion q1 = quat_from_tilt({psi, rng.uniform(-kPi, kPi), rng.uniform(0.0, 3.0)});
        const double u = rng.uniform(0.0, 1.0);
        CHECK(test::angle_diff(fused_yaw(slerp(q0, q1, u)), psi) < 1e-9);
    }
}

TEST_CASE("slerp of tilt rotations stays on the tilt manifold")
{
    RandomStream rng(704);
    for (int i = 0; i < 10000; ++i) {
        const Quaternion q0 = quat_from_tilt({0.0, rng.uniform(-kPi, kPi), rng.uniform(0.0, kPi)});
        const Quaternion q1 = quat_from_tilt({0.0, rng.uniform(-kPi, kPi), rng.uniform(0.0, kPi)});
        for (int k = 1; k <= 9; ++k) {
            const Quaternion qm = slerp(q0, q1, 0.1 * k);
            CHECK(std::abs(qm.z) <= 1e-12);
            CHECK(std::abs(fused_yaw(qm)) <= 1e-9);
        }
    }
}

TEST_CASE("slerp_tilt")
{
    // From the identity the geodesic scales the phase linearly.
    RandomStream rng(705);
    for (int i = 0; i < 2000; ++i) {
        const TiltPhase2 p1{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        if (std::hypot(p1.px, p1.py) > kPi)
            continue;
        const double u = rng.uniform(0.0, 1.0);
        const TiltPhase2 pu = slerp_tilt({0.0, 0.0}, p1, u);
        CHECK(pu.px == doctest::Approx(u * p1.px).scale(1.0).epsilon(1e-12));
        CHECK(pu.py == doctest::Approx(u * p1.py).scale(1.0).epsilon(1e-12));
        const TiltPhase2 pend = slerp_tilt({0.0, 0.0}, p1, 1.0);
        CHECK(pend.px == doctest::Approx(p1.px).scale(1.0).epsilon(1e-12));
        CHECK(pend.py == doctest::Approx(p1.py).scale(1.0).epsilon(1e-12));
    }

    // Midpoint of two quarter turns keeps zero fused yaw.
    const TiltPhase2 mid = slerp_tilt({kPi / 2, 0.0}, {0.0, kPi / 2}, 0.5);
    const Quaternion qm = quat_from_phase(mid);
    CHECK(std::abs(fused_yaw(qm)) < 1e-12);
    const Quaternion want = slerp(quat_from_tilt({0.0, 0.0, kPi / 2}),
                                  quat_from_tilt({0.0, kPi / 2, kPi / 2}), 0.5);
    CHECK(quat_diff(qm, want) < 1e-12);

    CHECK_THROWS_AS(slerp_tilt({3.3, 0.0}, {0.0, 0.5}, 0.5), OutOfRangeError);
}

TEST_CASE("spline validation")
{
    using Keys = std::vector<SplineKey>;
    CHECK_THROWS_AS(PhaseSpline(Keys{{0.0, {0, 0, 0}, {}}}), InvalidKeyframesError);
    CHECK_THROWS_AS(PhaseSpline(Keys{{0.0, {0, 0, 0}, {}}, {0.0, {1, 0, 0}, {}}}),
                    InvalidKeyframesError);
    CHECK_THROWS_AS(PhaseSpline(Keys{{1.0, {0, 0, 0}, {}}, {0.5, {1, 0, 0}, {}}}),
                    InvalidKeyframesError);
}

TEST_CASE("two keys without velocities make a straight line")
{
    const PhaseSpline s(std::vector<SplineKey>{{0.0, {0.0, 0.0, 0.0}, {}}, {2.0, {1.0, -2.0, 0.5}, {}}});
    for (int i = 0; i <= 10; ++i) {
        const double t = 0.2 * i;
        const SplineSample sample = s.eval(t);
        CHECK(sample.phase.px == doctest::Approx(0.5 * t).scale(1.0).epsilon(1e-13));
        CHECK(sample.phase.py == doctest::Approx(-t).scale(1.0).epsilon(1e-13));
        CHECK(sample.phase.pz == doctest::Approx(0.25 * t).scale(1.0).epsilon(1e-13));
        CHECK(sample.vel.dpx == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(sample.vel.dpy == doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("spline interpolates keys exactly and clamps outside")
{
    RandomStream rng(706);
    std::vector<SplineKey> keys;
    double t = 0.0;
    for (int i = 0; i < 6; ++i) {
        t += rng.uniform(0.3, 1.5);
        keys.push_back({t,
                        {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-2.0, 2.0)},
                        {}});
    }
    keys[2].vel = TiltPhaseVel3{0.7, -0.3, 0.1};  // clamp one interior key
    const PhaseSpline s(keys);

    for (const auto& k : keys) {
        const SplineSample sample = s.eval(k.t);
        CHECK(sample.phase.px == k.phase.px);
        CHECK(sample.phase.py == k.phase.py);
        CHECK(sample.phase.pz == k.phase.pz);
    }
    const SplineSample clamped = s.eval(keys[2].t);
    CHECK(clamped.vel.dpx == 0.7);
    CHECK(clamped.vel.dpy == -0.3);

    const SplineSample before = s.eval(s.t_min() - 5.0);
    CHECK(before.phase.px == keys.front().phase.px);
    CHECK(before.vel.dpx == 0.0);
    CHECK(before.angvel.ox == 0.0);
    const SplineSample after = s.eval(s.t_max() + 5.0);
    CHECK(after.phase.pz == keys.back().phase.pz);
    CHECK(after.vel.dpz == 0.0);
}

TEST_CASE("natural spline is C2 and clamped keys are C1")
{
    std::vector<SplineKey> keys{{0.0, {0.0, 1.0, 0.0}, {}},
                                {1.0, {2.0, -1.0, 0.3}, {}},
                                {2.5, {-1.0, 0.5, -0.2}, {}},
                                {4.0, {0.5, 0.5, 0.1}, {}}};
    const PhaseSpline s(keys);

    // Velocity is continuous at every knot and curvature at the free ones.
    for (const double tk : {1.0, 2.5}) {
        const double eps = 1e-6;
        const SplineSample l = s.eval(tk - eps);
        const SplineSample r = s.eval(tk + eps);
        CHECK(std::abs(l.vel.dpx - r.vel.dpx) < 1e-4);
        // Second derivative via velocity differences.
        const double accl = (s.eval(tk).vel.dpx - l.vel.dpx) / eps;
        const double accr = (r.vel.dpx - s.eval(tk).vel.dpx) / eps;
        CHECK(std::abs(accl - accr) < 1e-3);
    }

    // Natural boundary: zero curvature at the free ends.
    const double eps = 1e-5;
    const double end_acc =
        (s.eval(s.t_min() + eps).vel.dpx - s.eval(s.t_min()).vel.dpx) / eps;
    CHECK(std::abs(end_acc) < 1e-3);
}

TEST_CASE("pure tilt keys stay on the tilt manifold")
{
    RandomStream rng(707);
    std::vector<SplineKey> keys;
    for (int i = 0; i < 5; ++i)
        keys.push_back({static_cast<double>(i),
                        {rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5), 0.0},
                        {}});
    const PhaseSpline s(keys);
    for (int i = 0; i <= 200; ++i) {
        const SplineSample sample = s.eval(4.0 * i / 200.0);
        CHECK(sample.phase.pz == 0.0);
        const Quaternion q = quat_from_phase(sample.phase);
        CHECK(std::abs(q.z) <= 1e-12);
    }
}

TEST_CASE("keys beyond pi pass through without wrapping")
{
    const PhaseSpline s(std::vector<SplineKey>{{0.0, {0.0, 0.0, 0.0}, {}}, {1.0, {5.0, 0.0, 0.0}, {}}});
    CHECK(s.eval(0.5).phase.px == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(s.eval(1.0).phase.px == 5.0);
}

TEST_CASE("spline yaw shift invariance")
{
    RandomStream rng(708);
    std::vector<SplineKey> keys, shifted;
    const double delta = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < 5; ++i) {
        const TiltPhase3 p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                           rng.uniform(-1.0, 1.0)};
        keys.push_back({1.5 * i, p, {}});
        shifted.push_back({1.5 * i, {p.px, p.py, p.pz + delta}, {}});
    }
    const PhaseSpline a(keys), b(shifted);
    for (int i = 0; i <= 60; ++i) {
        const double t = 6.0 * i / 60.0;
        const SplineSample sa = a.eval(t), sb = b.eval(t);
        // Relative tilt samples unchanged, yaw shifted by delta.
        CHECK(sb.phase.px == doctest::Approx(sa.phase.px).scale(1.0).epsilon(1e-12));
        CHECK(sb.phase.py == doctest::Approx(sa.phase.py).scale(1.0).epsilon(1e-12));
        CHECK(sb.phase.pz == doctest::Approx(sa.phase.pz + delta).epsilon(1e-12));
        // Absolute phases rotate by delta.
        const AbsTiltPhase3 aa = abs_from_rel(sa.phase);
        const AbsTiltPhase3 ab = abs_from_rel(sb.phase);
        const double c = std::cos(delta), s = std::sin(delta);
        CHECK(ab.ptx == doctest::Approx(c * aa.ptx - s * aa.pty).scale(1.0).epsilon(1e-11));
        CHECK(ab.pty == doctest::Approx(s * aa.ptx + c * aa.pty).scale(1.0).epsilon(1e-11));
    }
}

TEST_CASE("sampled angular velocity matches quaternion finite differences")
{
    RandomStream rng(709);
    std::vector<SplineKey> keys;
    for (int i = 0; i < 5; ++i)
        keys.push_back({static_cast<double>(i),
                        {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.0, 1.0)},
                        {}});
    const PhaseSpline s(keys);
    const auto qtraj = [&](double t) { return quat_from_phase(s.eval(t).phase); };
    for (int i = 1; i < 40; ++i) {
        const double t = 4.0 * i / 40.0;
        const TiltAngles st = tilt_from_phase(s.eval(t).phase);
        if (st.alpha < 0.05 || st.alpha > kPi - 0.05)
            continue;
        const AngularVelocity ref = angvel_reference(qtraj, t, 1e-5);
        const AngularVelocity got = s.eval(t).angvel;
        CHECK(got.ox == doctest::Approx(ref.ox).scale(1.0).epsilon(1e-7));
        CHECK(got.oy == doctest::Approx(ref.oy).scale(1.0).epsilon(1e-7));
        CHECK(got.oz == doctest::Approx(ref.oz).scale(1.0).epsilon(1e-7));
    }

    // Constant keys: zero velocity and angular velocity everywhere.
    const PhaseSpline flat(std::vector<SplineKey>{{0.0, {0.4, -0.2, 0.9}, {}}, {1.0, {0.4, -0.2, 0.9}, {}}});
    const SplineSample mid = flat.eval(0.5);
    CHECK(mid.vel.dpx == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(mid.angvel.ox == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
    CHECK(mid.angvel.oz == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
}
