#include "tiltrot/phase.hpp"

namespace tiltrot {

TiltPhase2 phase_add(const TiltPhase2& a, const TiltPhase2& b)
{
    return {a.px + b.px, a.py + b.py};
}

AbsTiltPhase2 phase_add(const AbsTiltPhase2& a, const AbsTiltPhase2& b)
{
    return {a.ptx + b.ptx, a.pty + b.pty};
}

TiltPhase3 phase_add(const TiltPhase3& a, const TiltPhase3& b)
{
    return {a.px + b.px, a.py + b.py, a.pz + b.pz};
}

AbsTiltPhase3 phase_add(const AbsTiltPhase3& a, const AbsTiltPhase3& b)
{
    return {a.ptx + b.ptx, a.pty + b.pty, a.ptz + b.ptz};
}

TiltPhase2 phase_scale(double lambda, const TiltPhase2& p)
{
    return {lambda * p.px, lambda * p.py};
}

TiltPhase3 phase_scale(double lambda, const TiltPhase3& p)
{
    return {lambda * p.px, lambda * p.py, lambda * p.pz};
}

AbsTiltPhase3 phase_invert(const TiltPhase3& p)
{
    return {-p.px, -p.py, -p.pz};
}

TiltPhase3 phase_invert(const AbsTiltPhase3& p)
{
    return {-p.ptx, -p.pty, -p.ptz};
}

TiltPhase2 phase_invert(const TiltPhase2& p)
{
    return {-p.px, -p.py};
}

TiltPhase2 phase_mean(std::span<const TiltPhase2> ps)
{
    if (ps.empty())
        throw InvalidArgumentError("phase_mean: empty input");
    TiltPhase2 sum;
    for (const auto& p : ps) {
        sum.px += p.px;
        sum.py += p.py;
    }
    const double n = static_cast<double>(ps.size());
    return {sum.px / n, sum.py / n};
}

TiltPhase3 phase_mean(std::span<const TiltPhase3> ps)
{
    if (ps.empty())
        throw InvalidArgumentError("phase_mean: empty input");
    TiltPhase3 sum;
    for (const auto& p : ps) {
        sum.px += p.px;
        sum.py += p.py;
        sum.pz += p.pz;
    }
    const double n = static_cast<double>(ps.size());
    return {sum.px / n, sum.py / n, sum.pz / n};
}

}  // namespace tiltrot
