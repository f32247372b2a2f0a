#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "tiltrot/convert.hpp"
#include "tiltrot/verify.hpp"
#include "tiltrot/yaw_tilt.hpp"

using namespace tiltrot;
using test::angle_diff;
using test::quat_diff;

namespace {
const double kSqrtHalf = std::sqrt(0.5);
}

TEST_CASE("decompose known values")
{
    const YawTilt id = decompose({1.0, 0.0, 0.0, 0.0});
    CHECK(quat_diff(id.yaw, {1.0, 0.0, 0.0, 0.0}) == 0.0);
    CHECK(quat_diff(id.tilt, {1.0, 0.0, 0.0, 0.0}) == 0.0);

    const YawTilt yt = decompose({0.5, -0.5, 0.5, 0.5});
    CHECK(quat_diff(yt.yaw, quat_z(kPi / 2)) < 1e-15);
    CHECK(quat_diff(yt.tilt, {kSqrtHalf, 0.0, kSqrtHalf, 0.0}) < 1e-15);

    // Yaw-singular input: yaw factor is the identity by convention.
    const YawTilt sing = decompose({0.0, 1.0, 0.0, 0.0});
    CHECK(quat_diff(sing.yaw, {1.0, 0.0, 0.0, 0.0}) == 0.0);
    CHECK(quat_diff(sing.tilt, {0.0, 1.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("decomposition contract on random rotations")
{
    RandomStream rng(501);
    for (int i = 0; i < 100000; ++i) {
        const Quaternion q = random_rotation(rng);
        const YawTilt yt = decompose(q);
        CHECK(quat_diff(q, yt.yaw * yt.tilt) < 1e-12);
        CHECK(yt.tilt.z == 0.0);
        CHECK(std::abs(fused_yaw(yt.tilt)) <= 1e-9);
        CHECK(yt.yaw.x == 0.0);
        CHECK(yt.yaw.y == 0.0);
    }
}

TEST_CASE("decomposition matches the rotation matrix factorisation")
{
    RandomStream rng(502);
    for (int i = 0; i < 1000; ++i) {
        const Quaternion q = random_rotation(rng);
        const YawTilt yt = decompose(q);
        const RotationMatrix lhs = rotmat_from_quat(q);
        const RotationMatrix rhs = rotmat_from_quat(yt.yaw) * rotmat_from_quat(yt.tilt);
        CHECK(test::mat_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("compose_yaw_tilt")
{
    const Quaternion q = compose_yaw_tilt(kPi / 2, TiltAngles{0.0, kPi / 2, kPi / 2});
    CHECK(quat_diff(q, {0.5, -0.5, 0.5, 0.5}) < 1e-15);

    RandomStream rng(503);
    for (int i = 0; i < 1000; ++i) {
        const TiltAngles tilt{0.0, rng.uniform(-kPi, kPi), rng.uniform(0.0, kPi)};
        CHECK(quat_diff(compose_yaw_tilt(0.0, tilt), quat_from_tilt(tilt)) == 0.0);
    }

    CHECK(quat_diff(compose_yaw_tilt(kPi, TiltAngles{}), {0.0, 0.0, 0.0, 1.0}) < 1e-15);

    // Quaternion and fused angle forms.
    const Quaternion tiltq{kSqrtHalf, 0.0, kSqrtHalf, 0.0};
    CHECK(quat_diff(compose_yaw_tilt(kPi / 2, tiltq), quat_z(kPi / 2) * tiltq) == 0.0);
    const FusedAngles f{0.0, 0.4, -0.2, 1};
    CHECK(quat_diff(compose_yaw_tilt(0.7, f),
                    quat_z(0.7) * quat_from_fused(f)) < 1e-12);

    CHECK_THROWS_AS(compose_yaw_tilt(0.0, Quaternion{kSqrtHalf, 0.0, 0.0, kSqrtHalf}),
                    InvalidTiltError);
    CHECK_THROWS_AS(compose_yaw_tilt(0.0, TiltAngles{0.5, 0.0, 1.0}), InvalidTiltError);
    CHECK_THROWS_AS(compose_yaw_tilt(0.0, FusedAngles{0.5, 0.0, 0.0, 1}), InvalidTiltError);
}

TEST_CASE("compose_yaw_zvec known values")
{
    CHECK(quat_diff(compose_yaw_zvec(0.0, {0.0, 0.0, 1.0}), {1.0, 0.0, 0.0, 0.0}) == 0.0);
    CHECK(quat_diff(compose_yaw_zvec(0.0, {0.0, 1.0, 0.0}), {kSqrtHalf, kSqrtHalf, 0.0, 0.0})
          < 1e-15);
    // Singular branch at the downward z-vector, any yaw.
    CHECK(quat_diff(compose_yaw_zvec(2.0, {0.0, 0.0, -1.0}), {0.0, 1.0, 0.0, 0.0}) == 0.0);
    // Pure yaw for the upward z-vector.
    CHECK(quat_diff(compose_yaw_zvec(1.2, {0.0, 0.0, 1.0}), quat_z(1.2)) < 1e-15);

    CHECK_THROWS_AS(compose_yaw_zvec(0.0, {0.0, 0.0, 1.5}), InvalidZVectorError);
}

TEST_CASE("compose_yaw_zvec inverts yaw plus z-vector extraction")
{
    RandomStream rng(504);
    int n = 0;
    while (n < 100000) {
        const Quaternion q = random_rotation(rng);
        if (std::abs(tilt_from_quat(q).alpha - kPi) < 1e-3)
            continue;
        ++n;
        const Quaternion back = compose_yaw_zvec(fused_yaw(q), zvec_from_quat(q));
        CHECK(quat_diff(back, q) < 1e-9);
    }
}

TEST_CASE("compose_mismatched reduces to plain composition for identity q_gh")
{
    RandomStream rng(505);
    for (int i = 0; i < 10000; ++i) {
        const TiltAngles tc{0.0, rng.uniform(-kPi, kPi), rng.uniform(0.0, kPi - 0.02)};
        const Quaternion qhc = quat_z(rng.uniform(-kPi, kPi)) * quat_from_tilt(tc);
        const double psi = rng.uniform(-kPi, kPi);
        const MismatchedComposition mc = compose_mismatched(psi, {1.0, 0.0, 0.0, 0.0}, qhc);
        CHECK_FALSE(mc.multiple_solutions);
        CHECK(quat_diff(mc.q_gb, mc.q_hb) == 0.0);
        CHECK(quat_diff(mc.q_hb, compose_yaw_tilt(psi, decompose(qhc).tilt)) < 1e-12);
    }

    // Pure tilt, zero yaw requested: output is the tilt itself.
    const Quaternion tilt = quat_from_tilt({0.0, 0.9, 1.1});
    const MismatchedComposition mc = compose_mismatched(0.0, {1.0, 0.0, 0.0, 0.0}, tilt);
    CHECK(quat_diff(mc.q_gb, tilt) < 1e-12);

    // Nonzero yaw in q_hc is stripped.
    const Quaternion with_yaw = quat_z(0.8) * tilt;
    const MismatchedComposition mc2 = compose_mismatched(0.0, {1.0, 0.0, 0.0, 0.0}, with_yaw);
    CHECK(std::abs(fused_yaw(mc2.q_hb)) < 1e-12);
    CHECK(quat_diff(decompose(mc2.q_hb).tilt, tilt) < 1e-12);
}

TEST_CASE("compose_mismatched contract on random frames")
{
    RandomStream rng(506);
    int n = 0;
    while (n < 20000) {
        const Quaternion qgh = random_rotation(rng);
        const TiltAngles tc{0.0, rng.uniform(-kPi, kPi), rng.uniform(0.0, kPi)};
        const Quaternion qhc = quat_z(rng.uniform(-kPi, kPi)) * quat_from_tilt(tc);
        if (std::abs(tilt_from_quat(qgh).alpha + tc.alpha - kPi) < 0.01)
            continue;
        ++n;
        const double psi_g = rng.uniform(-kPi, kPi);
        const MismatchedComposition mc = compose_mismatched(psi_g, qgh, qhc);
        CHECK(angle_diff(fused_yaw(mc.q_gb), psi_g) < 1e-9);
        CHECK(quat_diff(decompose(mc.q_hb).tilt, decompose(qhc).tilt) < 1e-9);
        CHECK(quat_diff(mc.q_gb, qgh * mc.q_hb) < 1e-13);
    }
}

TEST_CASE("compose_mismatched degenerate cases")
{
    // alpha_G = pi, alpha_C = 0: the cross terms all vanish, F = 0, and the
    // forced yaw is 0.
    const Quaternion qgh{0.0, 1.0, 0.0, 0.0};
    const Quaternion qhc{1.0, 0.0, 0.0, 0.0};

    const MismatchedComposition mc = compose_mismatched(0.0, qgh, qhc);
    CHECK(mc.multiple_solutions);
    CHECK(quat_diff(mc.q_gb, qgh) == 0.0);
    CHECK(quat_diff(mc.q_hb, qhc) == 0.0);

    try {
        compose_mismatched(0.3, qgh, qhc);
        FAIL("expected NoSolutionError");
    } catch (const NoSolutionError& e) {
        CHECK(std::abs(e.attainable_yaw) < 1e-12);
    }

    // Partially degenerate geometry (alpha_G + alpha_C = pi with nonzero
    // tilts): the forced yaw is that of q_GC.
    const Quaternion qgh2 = quat_z(0.3) * quat_from_tilt({0.0, 0.7, 1.0});
    const Quaternion qhc2 = quat_from_tilt({-0.2, 1.1, kPi - 1.0});
    const double attainable = fused_yaw(qgh2 * qhc2);
    const MismatchedComposition ok = compose_mismatched(attainable, qgh2, qhc2);
    CHECK(ok.multiple_solutions);
    CHECK(angle_diff(fused_yaw(ok.q_gb), attainable) < 1e-9);
    CHECK_THROWS_AS(compose_mismatched(wrap_angle(attainable + 1.0), qgh2, qhc2),
                    NoSolutionError);
}
