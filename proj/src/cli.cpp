#include "tiltrot/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tiltrot/convert.hpp"
#include "tiltrot/interpolate.hpp"
#include "tiltrot/kinematics.hpp"
#include "tiltrot/phase.hpp"
#include "tiltrot/referenced.hpp"
#include "tiltrot/verify.hpp"
#include "tiltrot/yaw_tilt.hpp"

namespace tiltrot::cli {

namespace {

constexpr double kDegPerRad = 180.0 / kPi;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Representation table and numeric I/O

struct ReprInfo {
    const char* name;
    std::vector<const char*> fields;
    // Fields converted between radians and degrees at the CLI boundary.
    std::vector<bool> angular;
};

const std::map<std::string, ReprInfo>& repr_table()
{
    static const std::map<std::string, ReprInfo> table = {
        {"quat", {"quat", {"w", "x", "y", "z"}, {false, false, false, false}}},
        {"rotmat",
         {"rotmat",
          {"r11", "r12", "r13", "r21", "r22", "r23", "r31", "r32", "r33"},
          std::vector<bool>(9, false)}},
        {"tilt", {"tilt", {"psi", "gamma", "alpha"}, {true, true, true}}},
        {"fused", {"fused", {"psi", "theta", "phi", "h"}, {true, true, true, false}}},
        {"zvec", {"zvec", {"zx", "zy", "zz"}, {false, false, false}}},
        {"phase2", {"phase2", {"px", "py"}, {true, true}}},
        {"phase3", {"phase3", {"px", "py", "pz"}, {true, true, true}}},
        {"absphase2", {"absphase2", {"ptx", "pty"}, {true, true}}},
        {"absphase3", {"absphase3", {"ptx", "pty", "ptz"}, {true, true, true}}},
    };
    return table;
}

const ReprInfo& repr_info(const std::string& name)
{
    const auto it = repr_table().find(name);
    if (it == repr_table().end())
        throw UsageError("unknown representation '" + name + "'");
    return it->second;
}

std::string fmt17(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s)
{
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw UsageError("malformed numeric value '" + s + "'");
    return v;
}

std::vector<double> parse_csv_scalars(const std::string& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(item));
    return out;
}

// Accepts either comma-separated scalars or a JSON object
// {"repr": "...", "data": [...]}. A repr given both ways must agree.
std::vector<double> parse_value(const std::string& text, std::string& repr_name)
{
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("bad JSON value: ") + e.what());
        }
        if (!j.contains("data") || !j["data"].is_array())
            throw UsageError("JSON value needs a 'data' array");
        if (j.contains("repr")) {
            const std::string r = j["repr"].get<std::string>();
            if (!repr_name.empty() && r != repr_name)
                throw UsageError("JSON repr '" + r + "' conflicts with '" + repr_name + "'");
            repr_name = r;
        }
        std::vector<double> out;
        for (const auto& v : j["data"]) {
            if (!v.is_number())
                throw UsageError("JSON data entries must be numbers");
            out.push_back(v.get<double>());
        }
        return out;
    }
    return parse_csv_scalars(text);
}

std::vector<double> parse_repr_value(const std::string& text, std::string& repr_name,
                                     bool degrees)
{
    std::vector<double> v = parse_value(text, repr_name);
    if (repr_name.empty())
        throw UsageError("no representation given (use --from/--repr or JSON 'repr')");
    const ReprInfo& info = repr_info(repr_name);
    if (v.size() != info.fields.size())
        throw UsageError(std::string("'") + info.name + "' needs "
                         + std::to_string(info.fields.size()) + " values, got "
                         + std::to_string(v.size()));
    if (degrees) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (info.angular[i])
                v[i] /= kDegPerRad;
    }
    return v;
}

void print_fields(std::ostream& out, const ReprInfo& info, std::vector<double> v, bool degrees,
                  const char* prefix = nullptr)
{
    if (degrees) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (info.angular[i])
                v[i] *= kDegPerRad;
    }
    if (prefix)
        out << prefix << ' ';
    for (std::size_t i = 0; i < v.size(); ++i)
        out << (i ? " " : "") << info.fields[i] << '=' << fmt17(v[i]);
    out << '\n';
}

std::string json_value(const ReprInfo& info, std::vector<double> v, bool degrees)
{
    if (degrees) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (info.angular[i])
                v[i] *= kDegPerRad;
    }
    std::string s = "{\"repr\": \"";
    s += info.name;
    s += "\", \"data\": [";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        s += fmt17(v[i]);
    }
    s += "]}";
    return s;
}

// ---------------------------------------------------------------------------
// Scalar-vector views of the value types

std::vector<double> pack(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }
std::vector<double> pack(const TiltAngles& t) { return {t.psi, t.gamma, t.alpha}; }
std::vector<double> pack(const FusedAngles& f)
{
    return {f.psi, f.theta, f.phi, static_cast<double>(f.hemi)};
}
std::vector<double> pack(const ZVector& z) { return {z.zx, z.zy, z.zz}; }
std::vector<double> pack(const TiltPhase2& p) { return {p.px, p.py}; }
std::vector<double> pack(const TiltPhase3& p) { return {p.px, p.py, p.pz}; }
std::vector<double> pack(const AbsTiltPhase2& p) { return {p.ptx, p.pty}; }
std::vector<double> pack(const AbsTiltPhase3& p) { return {p.ptx, p.pty, p.ptz}; }
std::vector<double> pack(const RotationMatrix& m)
{
    std::vector<double> v;
    for (const auto& row : m.r)
        v.insert(v.end(), row.begin(), row.end());
    return v;
}

Quaternion unpack_quat(const std::vector<double>& v)
{
    return normalize_quat({v[0], v[1], v[2], v[3]});
}

RotationMatrix unpack_rotmat(const std::vector<double>& v)
{
    RotationMatrix m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m.r[i][j] = v[3 * i + j];
    return m;
}

FusedAngles unpack_fused(const std::vector<double>& v)
{
    if (v[3] != 1.0 && v[3] != -1.0)
        throw UsageError("fused hemisphere must be +1 or -1");
    return {v[0], v[1], v[2], static_cast<int>(v[3])};
}

// ---------------------------------------------------------------------------
// Generic conversion: direct formulas within the tilt family, quaternion
// hub otherwise.

bool quat_like(const std::string& r) { return r == "quat" || r == "rotmat"; }

TiltAngles tilt_from_any(const std::string& repr, const std::vector<double>& v)
{
    if (repr == "tilt")
        return {v[0], v[1], v[2]};
    if (repr == "fused")
        return tilt_from_fused(unpack_fused(v));
    if (repr == "zvec")
        return tilt_from_zvec({v[0], v[1], v[2]});
    if (repr == "phase2")
        return tilt_from_phase(TiltPhase2{v[0], v[1]});
    if (repr == "phase3")
        return tilt_from_phase(TiltPhase3{v[0], v[1], v[2]});
    if (repr == "absphase2")
        return tilt_from_phase(AbsTiltPhase2{v[0], v[1]});
    if (repr == "absphase3")
        return tilt_from_phase(AbsTiltPhase3{v[0], v[1], v[2]});
    if (repr == "quat")
        return tilt_from_quat(unpack_quat(v));
    return tilt_from_quat(quat_from_rotmat(unpack_rotmat(v)));
}

std::vector<double> any_from_tilt(const std::string& repr, const TiltAngles& t)
{
    if (repr == "tilt")
        return pack(t);
    if (repr == "fused")
        return pack(fused_from_tilt(t));
    if (repr == "zvec")
        return pack(zvec_from_tilt(t));
    if (repr == "phase2")
        return pack(phase2_from_tilt(t));
    if (repr == "phase3")
        return pack(phase3_from_tilt(t));
    if (repr == "absphase2")
        return pack(absphase2_from_tilt(t));
    if (repr == "absphase3")
        return pack(absphase3_from_tilt(t));
    if (repr == "quat")
        return pack(quat_from_tilt(t));
    return pack(rotmat_from_quat(quat_from_tilt(t)));
}

std::vector<double> any_from_quat(const std::string& repr, const Quaternion& q)
{
    if (repr == "quat")
        return pack(q);
    if (repr == "rotmat")
        return pack(rotmat_from_quat(q));
    if (repr == "fused")
        return pack(fused_from_quat(q));
    if (repr == "zvec")
        return pack(zvec_from_quat(q));
    return any_from_tilt(repr, tilt_from_quat(q));
}

std::vector<double> convert_value(const std::string& from, const std::vector<double>& v,
                                  const std::string& to)
{
    // Identity conversions are pure reformatting, so that emitted values
    // round trip through the parser bit-exactly.
    if (from == to)
        return v;
    if (quat_like(from)) {
        const Quaternion q = (from == "quat") ? unpack_quat(v)
                                              : quat_from_rotmat(unpack_rotmat(v));
        return any_from_quat(to, q);
    }
    return any_from_tilt(to, tilt_from_any(from, v));
}

// ---------------------------------------------------------------------------
// Velocity representations for velconv

struct VelValue {
    std::string repr;
    std::vector<double> data;
};

const std::map<std::string, ReprInfo>& vel_table()
{
    static const std::map<std::string, ReprInfo> table = {
        {"tiltvel", {"tiltvel", {"dpsi", "dgamma", "dalpha", "dgammat"}, {true, true, true, true}}},
        {"phasevel", {"phasevel", {"dpx", "dpy", "dpz"}, {true, true, true}}},
        {"absphasevel", {"absphasevel", {"dptx", "dpty", "dptz"}, {true, true, true}}},
        {"angvel", {"angvel", {"ox", "oy", "oz"}, {true, true, true}}},
    };
    return table;
}

TiltAnglesVel as_tiltvel(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

std::vector<double> convert_velocity(const std::string& from, const std::vector<double>& v,
                                     const std::string& to, const TiltAngles& state)
{
    const auto pack_tv = [](const TiltAnglesVel& tv) {
        return std::vector<double>{tv.dpsi, tv.dgamma, tv.dalpha, tv.dgammat()};
    };
    if (from == "tiltvel") {
        const TiltAnglesVel tv = as_tiltvel(v);
        if (to == "tiltvel") return pack_tv(tv);
        if (to == "phasevel") {
            const TiltPhaseVel3 p = phasevel_from_tiltvel(tv, state);
            return {p.dpx, p.dpy, p.dpz};
        }
        if (to == "absphasevel") {
            const AbsTiltPhaseVel3 p = absphasevel_from_tiltvel(tv, state);
            return {p.dptx, p.dpty, p.dptz};
        }
        const AngularVelocity w = angvel_from_tiltvel(tv, state);
        return {w.ox, w.oy, w.oz};
    }
    if (from == "phasevel") {
        const TiltPhaseVel3 p{v[0], v[1], v[2]};
        if (to == "phasevel") return {p.dpx, p.dpy, p.dpz};
        if (to == "tiltvel") return pack_tv(tiltvel_from_phasevel(p, state));
        if (to == "absphasevel") {
            const AbsTiltPhaseVel3 a = absvel_from_relvel(p, state);
            return {a.dptx, a.dpty, a.dptz};
        }
        const AngularVelocity w = angvel_from_phasevel(p, state);
        return {w.ox, w.oy, w.oz};
    }
    if (from == "absphasevel") {
        const AbsTiltPhaseVel3 a{v[0], v[1], v[2]};
        if (to == "absphasevel") return {a.dptx, a.dpty, a.dptz};
        if (to == "tiltvel") return pack_tv(tiltvel_from_phasevel(a, state));
        if (to == "phasevel") {
            const TiltPhaseVel3 p = relvel_from_absvel(a, state);
            return {p.dpx, p.dpy, p.dpz};
        }
        const AngularVelocity w = angvel_from_phasevel(a, state);
        return {w.ox, w.oy, w.oz};
    }
    const AngularVelocity w{v[0], v[1], v[2]};
    if (to == "angvel") return {w.ox, w.oy, w.oz};
    if (to == "tiltvel") return pack_tv(tiltvel_from_angvel(w, state));
    if (to == "phasevel") {
        const TiltPhaseVel3 p = phasevel_from_angvel(w, state);
        return {p.dpx, p.dpy, p.dpz};
    }
    const AbsTiltPhaseVel3 a = absphasevel_from_angvel(w, state);
    return {a.dptx, a.dpty, a.dptz};
}

// ---------------------------------------------------------------------------
// Fuzz self-check suites

struct SuiteResult {
    std::string name;
    int samples = 0;
    double max_err = 0.0;
};

class FuzzFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double quat_diff_up_to_sign(const Quaternion& a, const Quaternion& b)
{
    const double d1 = std::max({std::abs(a.w - b.w), std::abs(a.x - b.x),
                                std::abs(a.y - b.y), std::abs(a.z - b.z)});
    const double d2 = std::max({std::abs(a.w + b.w), std::abs(a.x + b.x),
                                std::abs(a.y + b.y), std::abs(a.z + b.z)});
    return std::min(d1, d2);
}

void check(bool ok, const std::string& suite, const std::string& what)
{
    if (!ok)
        throw FuzzFailure(suite + ": " + what);
}

SuiteResult fuzz_roundtrips(RandomStream& rng, int n)
{
    SuiteResult r{"conversion-roundtrips"};
    while (r.samples < n) {
        const Quaternion q = random_rotation(rng);
        const TiltAngles t = tilt_from_quat(q);
        if (std::abs(t.alpha - kPi) < 1e-3)
            continue;
        ++r.samples;
        const double e1 = quat_diff_up_to_sign(q, quat_from_tilt(t));
        const double e2 = quat_diff_up_to_sign(q, quat_from_fused(fused_from_quat(q)));
        const double e3 = quat_diff_up_to_sign(q, compose_yaw_zvec(fused_yaw(q), zvec_from_quat(q)));
        const double e4 = quat_diff_up_to_sign(q, quat_from_phase(phase3_from_quat(q)));
        r.max_err = std::max({r.max_err, e1, e2, e3, e4});
        check(r.max_err <= 1e-9, r.name, "roundtrip error above 1e-9");
    }
    return r;
}

SuiteResult fuzz_decompose(RandomStream& rng, int n)
{
    SuiteResult r{"yaw-tilt-decomposition"};
    for (; r.samples < n; ++r.samples) {
        const Quaternion q = random_rotation(rng);
        const YawTilt yt = decompose(q);
        const double e = quat_diff_up_to_sign(q, yt.yaw * yt.tilt);
        check(e <= 1e-12, r.name, "recomposition error above 1e-12");
        check(std::abs(yt.tilt.z) <= 1e-12, r.name, "tilt factor has a z-component");
        check(std::abs(fused_yaw(yt.tilt)) <= 1e-9, r.name, "tilt factor has fused yaw");
        r.max_err = std::max(r.max_err, e);
    }
    return r;
}

SuiteResult fuzz_slerp(RandomStream& rng, int n)
{
    SuiteResult r{"slerp-tilt-properties"};
    for (; r.samples < n; ++r.samples) {
        const TiltAngles t0{0.0, rng.uniform(-kPi, kPi), rng.uniform(0.0, kPi - 0.01)};
        const TiltAngles t1{0.0, rng.uniform(-kPi, kPi), rng.uniform(0.0, kPi - 0.01)};
        const Quaternion q0 = quat_from_tilt(t0);
        const Quaternion q1 = quat_from_tilt(t1);
        const double u = rng.uniform(0.05, 0.95);
        const Quaternion qm = slerp(q0, q1, u);
        check(std::abs(qm.z) <= 1e-12, r.name, "slerp left the tilt manifold");
        const double psi = rng.uniform(-kPi, kPi);
        const Quaternion qy = quat_z(psi);
        const double e1 = std::abs(wrap_angle(fused_yaw(slerp(qy * q0, qy * q1, u)) - psi));
        check(e1 <= 1e-9, r.name, "equal-yaw slerp changed the fused yaw");
        const Quaternion qh = random_rotation(rng);
        const double e2 = quat_diff_up_to_sign(slerp(qh * q0, qh * q1, u), qh * qm);
        check(e2 <= 1e-12, r.name, "slerp is not left-invariant");
        r.max_err = std::max({r.max_err, std::abs(qm.z), e1, e2});
    }
    return r;
}

SuiteResult fuzz_velocities(RandomStream& rng, int n)
{
    SuiteResult r{"velocity-conversions"};
    for (; r.samples < n; ++r.samples) {
        const TiltAngles st{rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                            rng.uniform(0.01, kPi - 0.01)};
        const TiltAnglesVel tv{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                               rng.uniform(-2.0, 2.0)};
        const TiltPhaseVel3 pv = phasevel_from_tiltvel(tv, st);
        const AbsTiltPhaseVel3 av = absphasevel_from_tiltvel(tv, st);
        const AngularVelocity w = angvel_from_tiltvel(tv, st);
        const AngularVelocity w2 = angvel_from_phasevel(pv, st);
        const AngularVelocity w3 = angvel_from_phasevel(av, st);
        const TiltAnglesVel tv2 = tiltvel_from_angvel(w, st);
        const TiltPhaseVel3 pv2 = phasevel_from_angvel(w, st);
        double e = std::max({std::abs(w.ox - w2.ox), std::abs(w.oy - w2.oy),
                             std::abs(w.oz - w2.oz), std::abs(w.ox - w3.ox),
                             std::abs(w.oy - w3.oy), std::abs(w.oz - w3.oz)});
        e = std::max({e, std::abs(tv2.dpsi - tv.dpsi), std::abs(tv2.dgamma - tv.dgamma),
                      std::abs(tv2.dalpha - tv.dalpha)});
        e = std::max({e, std::abs(pv2.dpx - pv.dpx), std::abs(pv2.dpy - pv.dpy),
                      std::abs(pv2.dpz - pv.dpz)});
        const AbsTiltPhaseVel3 av2 = absvel_from_relvel(pv, st);
        e = std::max({e, std::abs(av2.dptx - av.dptx), std::abs(av2.dpty - av.dpty),
                      std::abs(av2.dptz - av.dptz)});
        check(e <= 1e-9, r.name, "velocity conversion diagram does not close");
        r.max_err = std::max(r.max_err, e);
    }
    return r;
}

SuiteResult fuzz_phase_algebra(RandomStream& rng, int n)
{
    SuiteResult r{"phase-vector-space"};
    for (; r.samples < n; ++r.samples) {
        const TiltPhase2 a{rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
        const TiltPhase2 b{rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
        const TiltPhase2 ab = phase_add(a, b);
        const TiltPhase2 ba = phase_add(b, a);
        check(ab.px == ba.px && ab.py == ba.py, r.name, "addition is not commutative");
        const TiltPhase2 z = phase_add(a, phase_scale(-1.0, a));
        check(z.px == 0.0 && z.py == 0.0, r.name, "additive inverse failed");
        // Inversion against quaternion conjugation.
        const TiltAngles t{rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                           rng.uniform(0.0, kPi - 1e-3)};
        const TiltPhase3 p = phase3_from_tilt(t);
        const AbsTiltPhase3 pinv = phase_invert(p);
        const Quaternion qinv = conjugate(quat_from_tilt(t));
        const AbsTiltPhase3 want = absphase3_from_quat(qinv);
        const double e = std::max({std::abs(pinv.ptx - want.ptx), std::abs(pinv.pty - want.pty),
                                   std::abs(wrap_angle(pinv.ptz - want.ptz))});
        check(e <= 1e-12, r.name, "phase inverse disagrees with conjugation");
        const double norm_err = std::abs(std::hypot(p.px, p.py) - t.alpha);
        check(norm_err <= 4e-16 * std::max(1.0, t.alpha), r.name, "phase norm is not alpha");
        r.max_err = std::max({r.max_err, e, norm_err});
    }
    return r;
}

SuiteResult fuzz_referenced(RandomStream& rng, int n)
{
    SuiteResult r{"referenced-rotations"};
    for (; r.samples < n; ++r.samples) {
        const Quaternion qga = random_rotation(rng);
        const Quaternion qgb = random_rotation(rng);
        const Quaternion qgc = random_rotation(rng);
        const ReferencedRotation rab = ref_rot(qgb, qga);
        const ReferencedRotation rbc = ref_rot(qgc, qgb);
        const ReferencedRotation rac = ref_rot(qgc, qga);
        double e = quat_diff_up_to_sign(ref_rot_compose(rbc, rab).rot, rac.rot);
        // Alternative formulations of the referenced rotation.
        const Quaternion qab = conjugate(qga) * qgb;
        e = std::max(e, quat_diff_up_to_sign(rab.rot, qga * qab * conjugate(qga)));
        e = std::max(e, quat_diff_up_to_sign(rab.rot, qgb * qab * conjugate(qgb)));
        // Identity: refrot * q_GA = q_GB.
        e = std::max(e, quat_diff_up_to_sign(rab.rot * qga, qgb));
        const Quaternion qhg = random_rotation(rng);
        const ReferencedRotation rh = ref_rot_change_frame(rab, qhg);
        e = std::max(e, quat_diff_up_to_sign(rh.rot, ref_rot(qhg * qgb, qhg * qga).rot));
        check(e <= 1e-12, r.name, "referenced rotation identity failed");
        r.max_err = std::max(r.max_err, e);
    }
    return r;
}

SuiteResult fuzz_mismatched(RandomStream& rng, int n)
{
    SuiteResult r{"mismatched-composition"};
    while (r.samples < n) {
        const Quaternion qgh = random_rotation(rng);
        const TiltAngles tc{0.0, rng.uniform(-kPi, kPi), rng.uniform(0.0, kPi)};
        const Quaternion qhc = quat_z(rng.uniform(-kPi, kPi)) * quat_from_tilt(tc);
        const double ag = tilt_from_quat(qgh).alpha;
        if (std::abs(ag + tc.alpha - kPi) < 0.01)
            continue;
        ++r.samples;
        const double psi_g = rng.uniform(-kPi, kPi);
        const MismatchedComposition mc = compose_mismatched(psi_g, qgh, qhc);
        const double e1 = std::abs(wrap_angle(fused_yaw(mc.q_gb) - psi_g));
        const YawTilt split = decompose(mc.q_hb);
        const double e2 = quat_diff_up_to_sign(split.tilt, decompose(qhc).tilt);
        check(e1 <= 1e-9 && e2 <= 1e-9, r.name, "composition contract violated");
        r.max_err = std::max({r.max_err, e1, e2});
    }
    return r;
}

int run_fuzz(int n, std::uint64_t seed, std::ostream& out, std::ostream& err)
{
    RandomStream rng(seed);
    try {
        std::vector<SuiteResult> results;
        results.push_back(fuzz_roundtrips(rng, n));
        results.push_back(fuzz_decompose(rng, n));
        results.push_back(fuzz_slerp(rng, std::max(1, n / 10)));
        results.push_back(fuzz_velocities(rng, n));
        results.push_back(fuzz_phase_algebra(rng, n));
        results.push_back(fuzz_referenced(rng, n));
        results.push_back(fuzz_mismatched(rng, n));
        for (const auto& s : results)
            out << "ok " << s.name << " n=" << s.samples << " max_err=" << fmt17(s.max_err)
                << '\n';
        out << "all " << results.size() << " suites passed\n";
        return 0;
    } catch (const FuzzFailure& e) {
        err << "FAIL " << e.what() << '\n';
        return 3;
    }
}

// ---------------------------------------------------------------------------
// Subcommand wiring

struct Options {
    bool json = false;
    bool degrees = false;

    // convert
    std::string from, to, value;
    // compose / compose-zvec / compose-mismatched / slerp / velconv
    double psi = 0.0;
    std::string repr;
    std::vector<std::string> values;
    double u = 0.0;
    std::string state;
    // spline
    std::string keys_file;
    int samples = 101;
    bool absolute = false;
    // figure
    double alpha = -1.0;
    int alpha_steps = 200;
    int gamma_steps = 360;
    // fuzz
    int n = 1000;
    std::uint64_t seed = 0;
};

void add_io_flags(CLI::App* sub, Options& o)
{
    sub->add_flag("--json", o.json, "JSON output {\"repr\": ..., \"data\": [...]}");
    sub->add_flag("--degrees", o.degrees, "angular fields in degrees at the CLI boundary");
}

void emit(std::ostream& out, const Options& o, const std::string& repr, std::vector<double> v)
{
    const ReprInfo& info = repr_info(repr);
    if (o.json)
        out << json_value(info, std::move(v), o.degrees) << '\n';
    else
        print_fields(out, info, std::move(v), o.degrees);
}

int run_spline(const Options& o, std::ostream& out)
{
    std::ifstream in(o.keys_file);
    if (!in)
        throw UsageError("cannot open keyframe file '" + o.keys_file + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad keyframe JSON: ") + e.what());
    }
    if (!j.is_array())
        throw UsageError("keyframe file must hold a JSON array");

    std::vector<SplineKey> keys;
    for (const auto& k : j) {
        if (!k.contains("t") || !k.contains("phase") || !k["phase"].is_array()
            || k["phase"].size() != 3)
            throw UsageError("each keyframe needs 't' and a 3-element 'phase'");
        SplineKey key;
        key.t = k["t"].get<double>();
        key.phase = {k["phase"][0].get<double>(), k["phase"][1].get<double>(),
                     k["phase"][2].get<double>()};
        if (k.contains("vel")) {
            if (!k["vel"].is_array() || k["vel"].size() != 3)
                throw UsageError("keyframe 'vel' must have 3 elements");
            key.vel = TiltPhaseVel3{k["vel"][0].get<double>(), k["vel"][1].get<double>(),
                                    k["vel"][2].get<double>()};
        }
        keys.push_back(key);
    }

    const PhaseSpline spline(keys);
    const int n = std::max(2, o.samples);
    out << "t,px,py,pz,dpx,dpy,dpz,ox,oy,oz\n";
    for (int i = 0; i < n; ++i) {
        const double t = spline.t_min()
                       + (spline.t_max() - spline.t_min()) * static_cast<double>(i) / (n - 1);
        SplineSample s = spline.eval(t);
        AngularVelocity w = s.angvel;
        if (o.absolute) {
            // Keys were absolute phases; redo the angular velocity with the
            // matching kinematics.
            const AbsTiltPhase3 ap{s.phase.px, s.phase.py, s.phase.pz};
            const AbsTiltPhaseVel3 av{s.vel.dpx, s.vel.dpy, s.vel.dpz};
            w = angvel_from_phasevel(av, tilt_from_phase(ap));
        }
        out << fmt17(t) << ',' << fmt17(s.phase.px) << ',' << fmt17(s.phase.py) << ','
            << fmt17(s.phase.pz) << ',' << fmt17(s.vel.dpx) << ',' << fmt17(s.vel.dpy) << ','
            << fmt17(s.vel.dpz) << ',' << fmt17(w.ox) << ',' << fmt17(w.oy) << ','
            << fmt17(w.oz) << '\n';
    }
    return 0;
}

int run_figure(const Options& o, std::ostream& out)
{
    if (o.alpha > 0.0) {
        const PhaseErrorScan scan = fused_phase_error_scan(o.alpha, std::max(o.gamma_steps, 3600));
        out << "alpha,max_rel_diff,small_angle_rel_diff\n";
        out << fmt17(o.alpha) << ',' << fmt17(scan.max_rel_diff) << ','
            << fmt17(scan.small_angle_rel_diff) << '\n';
        return 0;
    }
    out << "gamma,alpha,px_minus_phi_over_alpha,py_minus_theta_over_alpha\n";
    for (int ja = 1; ja <= o.alpha_steps; ++ja) {
        const double alpha = 0.5 * kPi * ja / o.alpha_steps;
        const double sa = std::sin(alpha);
        for (int jg = 1; jg <= o.gamma_steps; ++jg) {
            const double gamma = -kPi + 2.0 * kPi * jg / o.gamma_steps;
            const double cg = std::cos(gamma), sg = std::sin(gamma);
            const double ex = (alpha * cg - std::asin(sa * cg)) / alpha;
            const double ey = (alpha * sg - std::asin(sa * sg)) / alpha;
            out << fmt17(gamma) << ',' << fmt17(alpha) << ',' << fmt17(ex) << ',' << fmt17(ey)
                << '\n';
        }
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"tilt rotation and tilt phase space toolbox"};
    app.require_subcommand(1);
    Options o;

    auto* convert = app.add_subcommand("convert", "convert between rotation representations");
    convert->add_option("--from", o.from, "input representation");
    convert->add_option("--to", o.to, "output representation")->required();
    convert->add_option("value", o.value, "input value (CSV scalars or JSON)")->required();
    add_io_flags(convert, o);

    auto* dec = app.add_subcommand("decompose", "split a quaternion into yaw and tilt factors");
    dec->add_option("quat", o.value, "quaternion w,x,y,z")->required();
    add_io_flags(dec, o);

    auto* comp = app.add_subcommand("compose", "compose a rotation from fused yaw and tilt");
    comp->add_option("--psi", o.psi, "fused yaw in rad (deg with --degrees)")->required();
    comp->add_option("--repr", o.repr, "tilt representation: tilt|fused|quat (default tilt)");
    comp->add_option("tilt", o.value, "tilt component value")->required();
    add_io_flags(comp, o);

    auto* compz = app.add_subcommand("compose-zvec", "compose a rotation from fused yaw and z-vector");
    compz->add_option("--psi", o.psi, "fused yaw in rad (deg with --degrees)")->required();
    compz->add_option("zvec", o.value, "z-vector zx,zy,zz")->required();
    add_io_flags(compz, o);

    auto* compm = app.add_subcommand(
        "compose-mismatched", "compose from yaw relative to G and tilt relative to H");
    compm->add_option("--psi", o.psi, "fused yaw relative to G")->required();
    compm->add_option("q_gh", o.value, "quaternion of H relative to G")->required();
    compm->add_option("q_hc", o.state, "quaternion carrying the tilt relative to H")->required();
    add_io_flags(compm, o);

    auto* add = app.add_subcommand("add", "tilt vector addition of phase values");
    add->add_option("--repr", o.repr, "phase2|phase3|absphase2|absphase3 (default phase2)");
    add->add_option("phases", o.values, "two or more phase values")->required()->expected(2, -1);
    add_io_flags(add, o);

    auto* mean = app.add_subcommand("mean", "mean of a set of phase values");
    mean->add_option("--repr", o.repr, "phase2|phase3|absphase2|absphase3 (default phase2)");
    mean->add_option("phases", o.values, "one or more phase values")->required()->expected(1, -1);
    add_io_flags(mean, o);

    auto* inv = app.add_subcommand("invert", "phase of the inverse rotation");
    inv->add_option("--repr", o.repr, "phase2|phase3|absphase2|absphase3 (default phase3)");
    inv->add_option("phase", o.value, "phase value")->required();
    add_io_flags(inv, o);

    auto* slp = app.add_subcommand("slerp", "spherical linear interpolation");
    slp->add_option("--u", o.u, "interpolation parameter in [0,1]")->required();
    slp->add_option("--repr", o.repr, "quat|phase2 (default quat)");
    slp->add_option("endpoints", o.values, "two endpoint values")->required()->expected(2);
    add_io_flags(slp, o);

    auto* spl = app.add_subcommand("spline", "cubic spline through tilt phase keyframes");
    spl->add_option("--keys", o.keys_file, "JSON keyframe file")->required();
    spl->add_option("--samples", o.samples, "number of output samples")->default_val(101);
    spl->add_flag("--absolute", o.absolute, "treat keyframes as absolute phases");

    auto* vel = app.add_subcommand("velconv", "convert rotational velocities");
    vel->add_option("--from", o.from, "tiltvel|phasevel|absphasevel|angvel")->required();
    vel->add_option("--to", o.to, "tiltvel|phasevel|absphasevel|angvel")->required();
    vel->add_option("--state", o.state, "tilt angles state psi,gamma,alpha")->required();
    vel->add_option("value", o.value, "velocity value")->required();
    add_io_flags(vel, o);

    auto* fig = app.add_subcommand("figure", "emit analysis data as CSV");
    auto* figfp = fig->add_subcommand("fused-phase",
                                      "relative difference of fused angles vs tilt phase");
    figfp->add_option("--alpha", o.alpha, "emit the summary row for this tilt angle");
    figfp->add_option("--alpha-steps", o.alpha_steps, "grid steps over (0, pi/2]")
        ->default_val(200);
    figfp->add_option("--gamma-steps", o.gamma_steps, "grid steps over (-pi, pi]")
        ->default_val(360);
    fig->require_subcommand(1);

    auto* fuzz = app.add_subcommand("fuzz", "run randomized invariant self-checks");
    fuzz->add_option("--n", o.n, "samples per suite")->default_val(1000);
    fuzz->add_option("--seed", o.seed, "random seed")->default_val(0);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*convert) {
            std::string from = o.from;
            const std::vector<double> v = parse_repr_value(o.value, from, o.degrees);
            repr_info(o.to);
            emit(out, o, o.to, convert_value(from, v, o.to));
            return 0;
        }
        if (*dec) {
            std::string repr = "quat";
            const std::vector<double> v = parse_repr_value(o.value, repr, o.degrees);
            const YawTilt yt = decompose(unpack_quat(v));
            if (o.json) {
                out << "{\"yaw\": " << json_value(repr_info("quat"), pack(yt.yaw), o.degrees)
                    << ", \"tilt\": " << json_value(repr_info("quat"), pack(yt.tilt), o.degrees)
                    << ", \"psi\": " << fmt17(fused_yaw(yt.yaw) * (o.degrees ? kDegPerRad : 1.0))
                    << "}\n";
            } else {
                print_fields(out, repr_info("quat"), pack(yt.yaw), o.degrees, "yaw");
                print_fields(out, repr_info("quat"), pack(yt.tilt), o.degrees, "tilt");
            }
            return 0;
        }
        if (*comp) {
            if (o.repr.empty())
                o.repr = "tilt";
            if (o.repr != "tilt" && o.repr != "fused" && o.repr != "quat")
                throw UsageError("compose --repr must be tilt, fused or quat");
            std::string repr = o.repr;
            const std::vector<double> v = parse_repr_value(o.value, repr, o.degrees);
            const double psi = o.degrees ? o.psi / kDegPerRad : o.psi;
            Quaternion q;
            if (repr == "tilt")
                q = compose_yaw_tilt(psi, TiltAngles{v[0], v[1], v[2]});
            else if (repr == "fused")
                q = compose_yaw_tilt(psi, unpack_fused(v));
            else
                q = compose_yaw_tilt(psi, unpack_quat(v));
            emit(out, o, "quat", pack(q));
            return 0;
        }
        if (*compz) {
            std::string repr = "zvec";
            const std::vector<double> v = parse_repr_value(o.value, repr, o.degrees);
            const double psi = o.degrees ? o.psi / kDegPerRad : o.psi;
            emit(out, o, "quat", pack(compose_yaw_zvec(psi, {v[0], v[1], v[2]})));
            return 0;
        }
        if (*compm) {
            std::string repr = "quat";
            const std::vector<double> gh = parse_repr_value(o.value, repr, o.degrees);
            repr = "quat";
            const std::vector<double> hc = parse_repr_value(o.state, repr, o.degrees);
            const double psi = o.degrees ? o.psi / kDegPerRad : o.psi;
            const MismatchedComposition mc =
                compose_mismatched(psi, unpack_quat(gh), unpack_quat(hc));
            const char* sol = mc.multiple_solutions ? "multiple" : "unique";
            if (o.json) {
                out << "{\"hb\": " << json_value(repr_info("quat"), pack(mc.q_hb), o.degrees)
                    << ", \"gb\": " << json_value(repr_info("quat"), pack(mc.q_gb), o.degrees)
                    << ", \"solutions\": \"" << sol << "\"}\n";
            } else {
                print_fields(out, repr_info("quat"), pack(mc.q_hb), o.degrees, "hb");
                print_fields(out, repr_info("quat"), pack(mc.q_gb), o.degrees, "gb");
                out << "solutions " << sol << '\n';
            }
            return 0;
        }
        if (*add || *mean) {
            if (o.repr.empty())
                o.repr = "phase2";
            if (repr_table().find(o.repr) == repr_table().end()
                || o.repr.find("phase") == std::string::npos)
                throw UsageError("--repr must be a phase representation");
            std::vector<std::vector<double>> vals;
            for (const auto& text : o.values) {
                std::string repr = o.repr;
                vals.push_back(parse_repr_value(text, repr, o.degrees));
            }
            const std::size_t width = vals.front().size();
            std::vector<double> acc(width, 0.0);
            for (const auto& v : vals)
                for (std::size_t i = 0; i < width; ++i)
                    acc[i] += v[i];
            if (*mean)
                for (auto& x : acc)
                    x /= static_cast<double>(vals.size());
            emit(out, o, o.repr, acc);
            return 0;
        }
        if (*inv) {
            if (o.repr.empty())
                o.repr = "phase3";
            std::string repr = o.repr;
            const std::vector<double> v = parse_repr_value(o.value, repr, o.degrees);
            std::string out_repr;
            std::vector<double> res;
            if (repr == "phase3") {
                const AbsTiltPhase3 p = phase_invert(TiltPhase3{v[0], v[1], v[2]});
                out_repr = "absphase3";
                res = pack(p);
            } else if (repr == "absphase3") {
                const TiltPhase3 p = phase_invert(AbsTiltPhase3{v[0], v[1], v[2]});
                out_repr = "phase3";
                res = pack(p);
            } else if (repr == "phase2") {
                out_repr = "phase2";
                res = pack(phase_invert(TiltPhase2{v[0], v[1]}));
            } else if (repr == "absphase2") {
                out_repr = "absphase2";
                res = {-v[0], -v[1]};
            } else {
                throw UsageError("invert --repr must be a phase representation");
            }
            emit(out, o, out_repr, res);
            return 0;
        }
        if (*slp) {
            if (o.repr.empty())
                o.repr = "quat";
            if (o.repr == "quat") {
                std::string repr = "quat";
                const std::vector<double> a = parse_repr_value(o.values[0], repr, o.degrees);
                repr = "quat";
                const std::vector<double> b = parse_repr_value(o.values[1], repr, o.degrees);
                emit(out, o, "quat", pack(slerp(unpack_quat(a), unpack_quat(b), o.u)));
            } else if (o.repr == "phase2") {
                std::string repr = "phase2";
                const std::vector<double> a = parse_repr_value(o.values[0], repr, o.degrees);
                repr = "phase2";
                const std::vector<double> b = parse_repr_value(o.values[1], repr, o.degrees);
                emit(out, o, "phase2",
                     pack(slerp_tilt(TiltPhase2{a[0], a[1]}, TiltPhase2{b[0], b[1]}, o.u)));
            } else {
                throw UsageError("slerp --repr must be quat or phase2");
            }
            return 0;
        }
        if (*spl)
            return run_spline(o, out);
        if (*vel) {
            if (vel_table().find(o.from) == vel_table().end())
                throw UsageError("unknown velocity representation '" + o.from + "'");
            if (vel_table().find(o.to) == vel_table().end())
                throw UsageError("unknown velocity representation '" + o.to + "'");
            std::vector<double> sv = parse_csv_scalars(o.state);
            if (sv.size() != 3)
                throw UsageError("--state needs psi,gamma,alpha");
            std::vector<double> v = parse_csv_scalars(o.value);
            if (v.size() != 3)
                throw UsageError("velocity input needs 3 values");
            if (o.degrees) {
                for (auto& x : sv)
                    x /= kDegPerRad;
                for (auto& x : v)
                    x /= kDegPerRad;
            }
            const TiltAngles state{sv[0], sv[1], sv[2]};
            std::vector<double> res = convert_velocity(o.from, v, o.to, state);
            const ReprInfo& info = vel_table().at(o.to);
            if (o.degrees)
                for (auto& x : res)
                    x *= kDegPerRad;
            if (o.json) {
                std::string s = "{\"repr\": \"" + std::string(info.name) + "\", \"data\": [";
                for (std::size_t i = 0; i < res.size(); ++i)
                    s += (i ? ", " : "") + fmt17(res[i]);
                out << s << "]}\n";
            } else {
                for (std::size_t i = 0; i < res.size(); ++i)
                    out << (i ? " " : "") << info.fields[i] << '=' << fmt17(res[i]);
                out << '\n';
            }
            return 0;
        }
        if (*fig)
            return run_figure(o, out);
        if (*fuzz)
            return run_fuzz(o.n, o.seed, out, err);
        err << "usage error: no subcommand given\n";
        return 1;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const NoSolutionError& e) {
        err << "error: " << e.what() << " (attainable yaw " << fmt17(e.attainable_yaw) << ")\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace tiltrot::cli
