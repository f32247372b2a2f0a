#include "tiltrot/rotation.hpp"

#include <cmath>

namespace tiltrot {

double wrap_angle(double a)
{
    if (!std::isfinite(a))
        throw InvalidArgumentError("wrap_angle: non-finite angle");
    a = std::fmod(a, 2.0 * kPi);
    if (a > kPi)
        a -= 2.0 * kPi;
    else if (a <= -kPi)
        a += 2.0 * kPi;
    return a;
}

Quaternion operator*(const Quaternion& a, const Quaternion& b)
{
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion operator-(const Quaternion& q)
{
    return {-q.w, -q.x, -q.y, -q.z};
}

Quaternion conjugate(const Quaternion& q)
{
    return {q.w, -q.x, -q.y, -q.z};
}

double dot(const Quaternion& a, const Quaternion& b)
{
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

double norm(const Quaternion& q)
{
    return std::sqrt(dot(q, q));
}

Quaternion normalize_quat(const Quaternion& q)
{
    const double n = norm(q);
    if (!(n > 1e-12))
        throw DegenerateQuaternionError("normalize_quat: norm below 1e-12");
    return {q.w / n, q.x / n, q.y / n, q.z / n};
}

Quaternion quat_x(double angle)
{
    return {std::cos(0.5 * angle), std::sin(0.5 * angle), 0.0, 0.0};
}

Quaternion quat_y(double angle)
{
    return {std::cos(0.5 * angle), 0.0, std::sin(0.5 * angle), 0.0};
}

Quaternion quat_z(double angle)
{
    return {std::cos(0.5 * angle), 0.0, 0.0, std::sin(0.5 * angle)};
}

std::array<double, 3> rotate(const Quaternion& q, const std::array<double, 3>& v)
{
    const Quaternion p{0.0, v[0], v[1], v[2]};
    const Quaternion r = q * p * conjugate(q);
    return {r.x, r.y, r.z};
}

double rotation_angle_between(const Quaternion& a, const Quaternion& b)
{
    double d = std::abs(dot(a, b));
    if (d > 1.0)
        d = 1.0;
    return 2.0 * std::acos(d);
}

double fused_yaw(const Quaternion& q)
{
    // Deterministic value at the singularity, regardless of zero signs.
    if (q.w == 0.0 && q.z == 0.0)
        return 0.0;
    // Canonicalise the cover so q and -q give bit-identical results; with
    // w >= 0 the doubled atan2 already lies in (-pi, pi].
    double w = q.w, z = q.z;
    if (w < 0.0 || (w == 0.0 && z < 0.0)) {
        w = -w;
        z = -z;
    }
    return wrap_angle(2.0 * std::atan2(z, w));
}

bool is_yaw_singular(const Quaternion& q)
{
    return std::abs(q.w) < 1e-7 && std::abs(q.z) < 1e-7;
}

RotationMatrix rotmat_from_quat(const Quaternion& q)
{
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    RotationMatrix m;
    m.r[0][0] = 1.0 - 2.0 * (y * y + z * z);
    m.r[0][1] = 2.0 * (x * y - w * z);
    m.r[0][2] = 2.0 * (x * z + w * y);
    m.r[1][0] = 2.0 * (x * y + w * z);
    m.r[1][1] = 1.0 - 2.0 * (x * x + z * z);
    m.r[1][2] = 2.0 * (y * z - w * x);
    m.r[2][0] = 2.0 * (x * z - w * y);
    m.r[2][1] = 2.0 * (y * z + w * x);
    m.r[2][2] = 1.0 - 2.0 * (x * x + y * y);
    return m;
}

namespace {

double det3(const RotationMatrix& m)
{
    const auto& r = m.r;
    return r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
         - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
         + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
}

void check_orthonormal(const RotationMatrix& m, double tol)
{
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
                s += m.r[k][i] * m.r[k][j];
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(s - want) > tol)
                throw InvalidRotationError("quat_from_rotmat: matrix is not orthonormal");
        }
    }
    if (std::abs(det3(m) - 1.0) > tol)
        throw InvalidRotationError("quat_from_rotmat: determinant is not +1");
}

}  // namespace

Quaternion quat_from_rotmat(const RotationMatrix& m)
{
    check_orthonormal(m, 1e-9);
    const auto& r = m.r;
    const double t = r[0][0] + r[1][1] + r[2][2];
    Quaternion q;
    // Shepperd's method: pick the largest of w, x, y, z as pivot.
    if (t >= r[0][0] && t >= r[1][1] && t >= r[2][2]) {
        const double s = std::sqrt(1.0 + t) * 2.0;
        q.w = 0.25 * s;
        q.x = (r[2][1] - r[1][2]) / s;
        q.y = (r[0][2] - r[2][0]) / s;
        q.z = (r[1][0] - r[0][1]) / s;
    } else if (r[0][0] >= r[1][1] && r[0][0] >= r[2][2]) {
        const double s = std::sqrt(1.0 + r[0][0] - r[1][1] - r[2][2]) * 2.0;
        q.w = (r[2][1] - r[1][2]) / s;
        q.x = 0.25 * s;
        q.y = (r[0][1] + r[1][0]) / s;
        q.z = (r[0][2] + r[2][0]) / s;
    } else if (r[1][1] >= r[2][2]) {
        const double s = std::sqrt(1.0 - r[0][0] + r[1][1] - r[2][2]) * 2.0;
        q.w = (r[0][2] - r[2][0]) / s;
        q.x = (r[0][1] + r[1][0]) / s;
        q.y = 0.25 * s;
        q.z = (r[1][2] + r[2][1]) / s;
    } else {
        const double s = std::sqrt(1.0 - r[0][0] - r[1][1] + r[2][2]) * 2.0;
        q.w = (r[1][0] - r[0][1]) / s;
        q.x = (r[0][2] + r[2][0]) / s;
        q.y = (r[1][2] + r[2][1]) / s;
        q.z = 0.25 * s;
    }
    return normalize_quat(q);
}

RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b)
{
    RotationMatrix m;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
                s += a.r[i][k] * b.r[k][j];
            m.r[i][j] = s;
        }
    }
    return m;
}

RotationMatrix transpose(const RotationMatrix& m)
{
    RotationMatrix t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t.r[i][j] = m.r[j][i];
    return t;
}

}  // namespace tiltrot
