#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "tiltrot/cli.hpp"

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = tiltrot::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("convert plain output")
{
    const CliResult r = run_cli({"convert", "--from", "quat", "--to", "tilt", "1,0,0,0"});
    CHECK(r.code == 0);
    CHECK(r.out == "psi=0 gamma=0 alpha=0\n");
}

TEST_CASE("convert between representations")
{
    const CliResult r = run_cli({"convert", "--from", "tilt", "--to", "quat", "0,0,1.5707963267948966"});
    CHECK(r.code == 0);
    CHECK(r.out.find("w=0.7071") != std::string::npos);
    CHECK(r.out.find("x=0.7071") != std::string::npos);

    const CliResult deg = run_cli({"convert", "--from", "tilt", "--to", "zvec", "--degrees",
                                   "0,0,90"});
    CHECK(deg.code == 0);
    CHECK(deg.out.find("zy=1") != std::string::npos);

    const CliResult rm = run_cli({"convert", "--from", "quat", "--to", "rotmat", "1,0,0,0"});
    CHECK(rm.code == 0);
    CHECK(rm.out.find("r11=1") != std::string::npos);
    CHECK(rm.out.find("r33=1") != std::string::npos);
}

TEST_CASE("convert JSON round trips bit-exactly")
{
    const CliResult first = run_cli({"convert", "--from", "quat", "--to", "quat", "--json",
                                     "0.3,-0.1,0.72,0.11"});
    CHECK(first.code == 0);
    const std::string value = first.out.substr(0, first.out.size() - 1);
    const CliResult second = run_cli({"convert", "--to", "quat", "--json", value});
    CHECK(second.code == 0);
    CHECK(second.out == first.out);

    // Converted output re-parses and re-emits without changing a character.
    for (const char* repr : {"tilt", "fused", "rotmat", "phase3"}) {
        const CliResult conv = run_cli({"convert", "--to", repr, "--json", value});
        CHECK(conv.code == 0);
        const std::string payload = conv.out.substr(0, conv.out.size() - 1);
        const CliResult again = run_cli({"convert", "--to", repr, "--json", payload});
        CHECK(again.code == 0);
        CHECK(again.out == conv.out);
    }
}

TEST_CASE("usage errors exit 1")
{
    CHECK(run_cli({"convert", "--from", "quat", "--to", "bogus", "1,0,0,0"}).code == 1);
    CHECK(run_cli({"convert", "--from", "quat", "--to", "tilt", "1,0,0"}).code == 1);
    CHECK(run_cli({"convert", "--from", "quat", "--to", "tilt", "1,0,0,zzz"}).code == 1);
    CHECK(run_cli({"nonsense"}).code == 1);
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"slerp", "--u", "0.5", "--repr", "rotmat", "a", "b"}).code == 1);
}

TEST_CASE("math domain errors exit 2")
{
    // Degenerate quaternion.
    CHECK(run_cli({"convert", "--from", "quat", "--to", "tilt", "0,0,0,0"}).code == 2);
    // Non-orthonormal matrix.
    CHECK(run_cli({"convert", "--from", "rotmat", "--to", "quat", "1,0,0,0,1,0,0,0,2"}).code == 2);
    // Velocity conversion at the yaw singularity.
    const CliResult r = run_cli({"velconv", "--from", "angvel", "--to", "tiltvel", "--state",
                                 "0,0,3.14159265358979", "1,0,0"});
    CHECK(r.code == 2);
    // No-solution mismatched composition reports the attainable yaw.
    const CliResult ns = run_cli({"compose-mismatched", "--psi", "0.3", "0,1,0,0", "1,0,0,0"});
    CHECK(ns.code == 2);
    CHECK(ns.err.find("attainable yaw") != std::string::npos);
}

TEST_CASE("decompose and compose are consistent")
{
    const CliResult d = run_cli({"decompose", "0.5,-0.5,0.5,0.5"});
    CHECK(d.code == 0);
    CHECK(d.out.find("yaw") == 0);
    CHECK(d.out.find("tilt") != std::string::npos);

    const CliResult c = run_cli({"compose", "--psi", "1.5707963267948966", "--repr", "tilt",
                                 "0,1.5707963267948966,1.5707963267948966"});
    CHECK(c.code == 0);
    double qw = 0, qx = 0, qy = 0, qz = 0;
    CHECK(std::sscanf(c.out.c_str(), "w=%lf x=%lf y=%lf z=%lf", &qw, &qx, &qy, &qz) == 4);
    CHECK(qw == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(qx == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(qy == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(qz == doctest::Approx(0.5).epsilon(1e-14));

    const CliResult z = run_cli({"compose-zvec", "--psi", "0", "0,1,0"});
    CHECK(z.code == 0);
    CHECK(z.out.find("w=0.7071") != std::string::npos);

    const CliResult m = run_cli({"compose-mismatched", "--psi", "0", "0,1,0,0", "1,0,0,0"});
    CHECK(m.code == 0);
    CHECK(m.out.find("solutions multiple") != std::string::npos);
}

TEST_CASE("phase algebra subcommands")
{
    const CliResult a = run_cli({"add", "0.785,0", "0,0.785"});
    CHECK(a.code == 0);
    CHECK(a.out == "px=0.78500000000000003 py=0.78500000000000003\n");

    const CliResult m = run_cli({"mean", "1,0", "0,1", "2,2"});
    CHECK(m.code == 0);
    CHECK(m.out == "px=1 py=1\n");

    const CliResult i = run_cli({"invert", "--repr", "phase3", "0,1.5707963267948966,1.5707963267948966"});
    CHECK(i.code == 0);
    CHECK(i.out.find("ptx=-0") != std::string::npos);

    const CliResult s = run_cli({"slerp", "--u", "0.5", "--repr", "phase2", "1.57,0", "0,1.57"});
    CHECK(s.code == 0);
    CHECK(s.out.find("px=") != std::string::npos);
}

TEST_CASE("figure emits the reference row")
{
    const CliResult r = run_cli({"figure", "fused-phase", "--alpha", "1.0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("alpha,max_rel_diff,small_angle_rel_diff") == 0);
    CHECK(r.out.find("0.0712") != std::string::npos);
    CHECK(r.out.find("0.1585") != std::string::npos);

    const CliResult grid = run_cli({"figure", "fused-phase", "--alpha-steps", "3",
                                    "--gamma-steps", "4"});
    CHECK(grid.code == 0);
    // Header plus 12 rows.
    int lines = 0;
    for (const char ch : grid.out)
        lines += (ch == '\n');
    CHECK(lines == 13);
}

TEST_CASE("spline subcommand samples keyframes")
{
    const char* path = "cli_test_keys.json";
    {
        std::ofstream f(path);
        f << R"([{"t": 0.0, "phase": [0, 0, 0]},
                 {"t": 1.0, "phase": [0.5, -0.25, 0.1], "vel": [0, 0, 0]},
                 {"t": 2.0, "phase": [1.0, 0.5, 0.2]}])";
    }
    const CliResult r = run_cli({"spline", "--keys", path, "--samples", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("t,px,py,pz,dpx,dpy,dpz,ox,oy,oz") == 0);
    int lines = 0;
    for (const char ch : r.out)
        lines += (ch == '\n');
    CHECK(lines == 6);
    std::remove(path);

    CHECK(run_cli({"spline", "--keys", "no_such_file.json"}).code == 1);
}

TEST_CASE("fuzz is deterministic and green")
{
    const CliResult a = run_cli({"fuzz", "--n", "200", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out.find("all 7 suites passed") != std::string::npos);
    const CliResult b = run_cli({"fuzz", "--n", "200", "--seed", "7"});
    CHECK(b.out == a.out);
    const CliResult c = run_cli({"fuzz", "--n", "200", "--seed", "8"});
    CHECK(c.code == 0);
    CHECK(c.out != a.out);
}

TEST_CASE("velconv converts between velocity representations")
{
    const CliResult r = run_cli({"velconv", "--from", "angvel", "--to", "tiltvel", "--state",
                                 "0,0,1.5707963267948966", "0,0,1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("dpsi=1") != std::string::npos);
    CHECK(r.out.find("dgammat=1") != std::string::npos);

    const CliResult rt = run_cli({"velconv", "--from", "phasevel", "--to", "absphasevel",
                                  "--state", "0.5,0.25,1.0", "0.1,0.2,0.3"});
    CHECK(rt.code == 0);
    CHECK(rt.out.find("dptx=") != std::string::npos);
}
