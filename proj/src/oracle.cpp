#include "pingplan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "pingplan/numerics.hpp"

namespace pingplan {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Detected: return "Detected";
    case Verdict::Escaped: return "Escaped";
    case Verdict::MissedOpportunity: return "MissedOpportunity";
    }
    return "UnknownVerdict";
}

namespace oracle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Target velocity in the searcher-fixed frame while unalerted: absolute
// course alpha at speed U against the searcher's own V along +x.
Vec2 unalerted_velocity(const Scenario& scn, double alpha) {
    return {scn.U * std::cos(alpha) - scn.V, scn.U * std::sin(alpha)};
}

// Distance of closest approach of the ray P + s*e, s >= 0, to the origin.
double ray_cpa(Vec2 P, Vec2 e) {
    if (dot(P, e) >= 0.0)
        return norm(P);
    return std::abs(cross(P, e)) / norm(e);
}

// Relative velocity the alerted target switches to. A slower target picks
// the limiting-line course whose ray passes the searcher farthest; a faster
// target runs radially away.
Vec2 evasive_velocity(const Scenario& scn, Vec2 P) {
    if (scn.U < scn.V) {
        const double g = std::asin(scn.U / scn.V);
        const double we = std::sqrt(scn.V * scn.V - scn.U * scn.U);
        const Vec2 up{-we * std::cos(g), we * std::sin(g)};
        const Vec2 down{up.x, -up.y};
        return ray_cpa(P, up) >= ray_cpa(P, down) ? up : down;
    }
    const double range = norm(P);
    const Vec2 ehat{P.x / range, P.y / range};
    const double speed =
        -scn.V * ehat.x + std::sqrt(scn.U * scn.U - scn.V * scn.V * ehat.y * ehat.y);
    return ehat * speed;
}

struct Crossings {
    bool hit = false;
    double tIn = 0.0;
    double tOut = 0.0;
};

// Solutions of |P + v*t| = radius.
Crossings circle_crossings(Vec2 P, Vec2 v, double radius) {
    const double c2 = dot(v, v);
    const double c1 = 2.0 * dot(P, v);
    const double c0 = dot(P, P) - radius * radius;
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0)
        return {};
    const double sq = std::sqrt(disc);
    return {true, (-c1 - sq) / (2.0 * c2), (-c1 + sq) / (2.0 * c2)};
}

// Inbound crossing point of the track (course alpha, signed lateral ell)
// with the circle of the given radius.
Vec2 inbound_point(Vec2 what, Vec2 nhat, double ell, double radius) {
    return nhat * ell - what * std::sqrt(radius * radius - ell * ell);
}

bool captured_after_alert(const Scenario& scn, Vec2 P) {
    if (norm(P) <= scn.S)
        return true;
    if (!(scn.U < scn.V))
        return false; // radial escape of a faster target always recedes
    const Vec2 e = evasive_velocity(scn, P);
    if (dot(P, e) >= 0.0)
        return false;
    return ray_cpa(P, e) < scn.S;
}

// Measure of lateral offsets, perpendicular to the searcher's heading, whose
// targets alerted on the forward circle of radius x still end up within the
// detection circle.
double width_at_alert_range(const Scenario& scn, double x) {
    auto captured = [&](double ell) {
        if (std::abs(ell) >= x)
            return false;
        const Vec2 P{std::sqrt(x * x - ell * ell), ell};
        return captured_after_alert(scn, P);
    };
    auto boundary = [&](double lo, double hi, bool loCaptured) {
        while (hi - lo > 1e-6 * scn.S) {
            const double mid = 0.5 * (lo + hi);
            if (captured(mid) == loCaptured)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    const int cells = 512;
    const double lim = x * (1.0 - 1e-12);
    double width = 0.0;
    double runStart = 0.0;
    bool prev = captured(-lim);
    if (prev)
        runStart = -lim;
    for (int i = 1; i <= cells; ++i) {
        const double ell = -lim + 2.0 * lim * static_cast<double>(i) / cells;
        const bool cur = captured(ell);
        if (cur != prev) {
            const double prevEll = -lim + 2.0 * lim * static_cast<double>(i - 1) / cells;
            const double b = boundary(prevEll, ell, prev);
            if (cur)
                runStart = b;
            else
                width += b - runStart;
            prev = cur;
        }
    }
    if (prev)
        width += lim - runStart;
    return width;
}

// Last time the two-segment path (straight until alerted at r, then evasive)
// spends within the detection circle, counted from the inbound crossing of
// the sensor-on alert circle R. +inf when the path never becomes detectable.
double loss_time_for(const Scenario& scn, double alpha, double ell) {
    if (std::abs(ell) >= scn.R)
        return kInf;
    const Vec2 w = unalerted_velocity(scn, alpha);
    const double wn = norm(w);
    const Vec2 what{w.x / wn, w.y / wn};
    const Vec2 nhat{-what.y, what.x};
    const Vec2 P0 = inbound_point(what, nhat, ell, scn.R);

    const Crossings hitR = circle_crossings(P0, w, scn.r);
    const Crossings hitS = circle_crossings(P0, w, scn.S);
    if (!hitR.hit) {
        // grazing pass, never alerted
        if (!hitS.hit || hitS.tOut <= 0.0)
            return kInf;
        return hitS.tOut;
    }
    const double tAlert = hitR.tIn;
    double last = -kInf;
    if (hitS.hit && hitS.tIn < tAlert && hitS.tOut > 0.0)
        last = std::min(hitS.tOut, tAlert);
    const Vec2 Pa = P0 + w * tAlert;
    const Vec2 e = evasive_velocity(scn, Pa);
    const Crossings after = circle_crossings(Pa, e, scn.S);
    if (after.hit && after.tOut > 0.0 && after.tOut >= after.tIn)
        last = std::max(last, tAlert + after.tOut);
    return last > 0.0 ? last : kInf;
}

// Golden-section shrink of [lo, hi] for a scalar function that may return
// +inf off the feasible set.
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double widthGoal) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > widthGoal) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    const double mid = 0.5 * (a + b);
    return std::min({fc, fd, f(mid)});
}

// Grid scan plus refinement of the best local minima of f on [lo, hi].
double grid_refine_min(const std::function<double(double)>& f, double lo, double hi,
                       int cells, double widthGoal) {
    std::vector<double> vals(static_cast<size_t>(cells) + 1);
    const double h = (hi - lo) / cells;
    for (int i = 0; i <= cells; ++i)
        vals[static_cast<size_t>(i)] = f(lo + h * i);

    struct Cand {
        double value;
        int index;
    };
    std::vector<Cand> cands;
    for (int i = 0; i <= cells; ++i) {
        const double v = vals[static_cast<size_t>(i)];
        if (!std::isfinite(v))
            continue;
        const double left = i > 0 ? vals[static_cast<size_t>(i - 1)] : kInf;
        const double right = i < cells ? vals[static_cast<size_t>(i + 1)] : kInf;
        if (v <= left && v <= right)
            cands.push_back({v, i});
    }
    double best = kInf;
    for (double v : vals)
        best = std::min(best, v);
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.value != b.value)
            return a.value < b.value;
        return a.index < b.index;
    });
    const size_t refineCount = std::min<size_t>(cands.size(), 5);
    for (size_t k = 0; k < refineCount; ++k) {
        const int i = cands[k].index;
        const double a = lo + h * std::max(i - 1, 0);
        const double b = lo + h * std::min(i + 1, cells);
        best = std::min(best, golden_min(f, a, b, widthGoal));
    }
    return best;
}

double loss_min_over_offset(const Scenario& scn, double alpha) {
    const double lim = scn.R * (1.0 - 1e-9);
    return grid_refine_min([&](double ell) { return loss_time_for(scn, alpha, ell); },
                           -lim, lim, 800, 1e-8 * scn.R);
}

// Sensor on/off program induced by a plan, evaluated in cycle time.
struct SensorProgram {
    bool alwaysOn = false;
    bool neverOn = false;
    double tp = 0.0;
    double period = 0.0;

    static SensorProgram from_plan(const SchedulePlan& plan) {
        SensorProgram p;
        if (plan.continuous) {
            p.alwaysOn = true;
            return p;
        }
        if (plan.zeroDetection) {
            p.neverOn = true;
            return p;
        }
        if (!plan.Tp || !plan.T)
            throw DomainError("schedule plan carries no Tp/T cycle");
        p.tp = *plan.Tp;
        p.period = *plan.T;
        if (!(p.period > 0.0))
            throw DomainError("schedule period must be positive");
        if (p.tp <= 0.0)
            p.alwaysOn = true;
        else if (p.tp >= p.period)
            p.neverOn = true;
        return p;
    }

    double cycle_time(double phase, double t) const {
        double c = std::fmod(phase + t, period);
        if (c < 0.0)
            c += period;
        return c;
    }

    bool on(double phase, double t) const {
        if (alwaysOn)
            return true;
        if (neverOn)
            return false;
        return cycle_time(phase, t) >= tp;
    }

    double next_switch_after(double phase, double t) const {
        if (alwaysOn || neverOn)
            return kInf;
        const double c = cycle_time(phase, t);
        const double step = c < tp ? tp - c : period - c;
        return t + std::max(step, 1e-12 * period);
    }
};

double segment_min_range(Vec2 P, Vec2 v, double h) {
    const double denom = dot(v, v);
    const double tstar = denom > 0.0 ? std::clamp(-dot(P, v) / denom, 0.0, h) : 0.0;
    return norm(P + v * tstar);
}

// Earliest tau in (0, hi] with |P + v*tau| <= thresh, given the range at
// tau=0 exceeds thresh and the range at hi does not. Bisection to 1e-9.
double bisect_entry(Vec2 P, Vec2 v, double hi, double thresh) {
    double lo = 0.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (norm(P + v * mid) <= thresh)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// splitmix64 applied to a per-sample counter: stateless, order-independent.
std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t bits = splitmix64(seed ^ splitmix64(counter));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace

DetectionOutcome simulate_track(const Scenario& scn, const SchedulePlan& plan,
                                const TrackSpec& track, double dt) {
    scn.validate();
    const double dtMax = 1e-3 * std::min(scn.S, scn.r) / (scn.U + scn.V);
    if (!(dt > 0.0) || dt > dtMax * (1.0 + 1e-9))
        throw StepSizeError("dt must be positive and at most 1e-3*min(S,r)/(U+V) = " +
                            std::to_string(dtMax));
    if (track.startRange < scn.R * (1.0 - 1e-12))
        throw DomainError("track must spawn at or beyond the alert circle R");
    if (!(std::abs(track.d) < track.startRange))
        throw DomainError("track lateral range must satisfy |d| < startRange");
    if (std::abs(track.alpha) > kPi + 1e-9)
        throw DomainError("track course outside [-pi, pi]");

    const SensorProgram sched = SensorProgram::from_plan(plan);
    const double phase = track.startPhase;

    const Vec2 w = unalerted_velocity(scn, track.alpha);
    const double wn = norm(w);
    const Vec2 what{w.x / wn, w.y / wn};
    const Vec2 nhat{-what.y, what.x};
    Vec2 P = inbound_point(what, nhat, track.d, track.startRange);
    Vec2 vel = w;

    bool alerted = false;
    bool everInsideOff = false;
    std::optional<double> tAlert, tDetect;
    double minRange = norm(P);
    double t = 0.0;

    const double legSpeedFloor =
        std::min(wn, scn.U < scn.V ? std::sqrt(scn.V * scn.V - scn.U * scn.U)
                                   : scn.U - scn.V);
    const double tCap = (2.0 * track.startRange + 20.0 * scn.R) / legSpeedFloor;
    const double outBound = std::max(scn.R, scn.S) * (1.0 + 1e-9);

    while (t < tCap) {
        const bool on = sched.on(phase, t);
        const double range = norm(P);
        minRange = std::min(minRange, range);

        if (on && range <= scn.S) {
            tDetect = t;
            break;
        }
        if (!on && range <= scn.S)
            everInsideOff = true;
        if (!alerted && (range < scn.r || (on && range < scn.R))) {
            alerted = true;
            tAlert = t;
            vel = evasive_velocity(scn, P);
        }
        if (dot(P, vel) > 0.0 && range > outBound)
            break;

        double h = dt;
        const double ts = sched.next_switch_after(phase, t);
        if (ts - t < h)
            h = ts - t;

        const double tstar = std::clamp(-dot(P, vel) / dot(vel, vel), 0.0, h);
        const double segMin = norm(P + vel * tstar);

        // advance to the earliest boundary crossing within this substep
        double event = h;
        if (on && segMin <= scn.S)
            event = std::min(event, bisect_entry(P, vel, tstar, scn.S));
        if (!alerted) {
            if (segMin < scn.r)
                event = std::min(event, bisect_entry(P, vel, tstar, scn.r));
            if (on && range >= scn.R && segMin < scn.R)
                event = std::min(event, bisect_entry(P, vel, tstar, scn.R));
        }

        const double traversedMin = segment_min_range(P, vel, event);
        minRange = std::min(minRange, traversedMin);
        if (!on && traversedMin <= scn.S)
            everInsideOff = true;

        P = P + vel * event;
        t += event;
    }

    DetectionOutcome out;
    out.tAlert = tAlert;
    out.tDetect = tDetect;
    out.minRange = minRange;
    if (tDetect)
        out.verdict = Verdict::Detected;
    else if (everInsideOff)
        out.verdict = Verdict::MissedOpportunity;
    else
        out.verdict = Verdict::Escaped;
    return out;
}

double measured_width(const Scenario& scn, const SchedulePlan& plan, double tEval,
                      double alpha) {
    scn.validate();
    const Regime rg = planner::classify(scn);
    if (rg.kind == RegimeKind::FastTargetCase)
        throw FastTargetError("measured_width needs a slower target (U < V)");
    if (rg.kind == RegimeKind::ZeroDetection)
        throw RegimeError("measured_width: no detection is possible in this scenario");

    double x;
    if (plan.continuous) {
        x = scn.R;
    } else {
        const auto ctx = pingplan::detail::case_context(scn, alpha, plan.prefactor);
        if (tEval < ctx.Tp)
            return 0.0;
        const double u = std::clamp((tEval - ctx.Tp) / (ctx.TR - ctx.Tp), 0.0, 1.0);
        x = ctx.x0 + u * (ctx.xe - ctx.x0);
    }
    x = std::max(x, scn.S * (1.0 + 1e-9));
    return width_at_alert_range(scn, x);
}

double min_loss_time(const Scenario& scn, std::optional<double> alpha) {
    scn.validate();
    const Regime rg = planner::classify(scn);
    if (rg.kind == RegimeKind::ZeroDetection)
        throw RegimeError("min_loss_time: no detection is possible in this scenario");
    if (alpha)
        return loss_min_over_offset(scn, *alpha);
    return grid_refine_min([&](double a) { return loss_min_over_offset(scn, a); }, 0.0,
                           kPi, 180, 1e-7);
}

RateEstimate estimate_detection_rate(const Scenario& scn, const SchedulePlan& plan,
                                     long nSamples, std::uint64_t seed) {
    scn.validate();
    if (nSamples < 1)
        throw DomainError("nSamples must be at least 1");
    const Regime rg = planner::classify(scn);
    if (rg.kind == RegimeKind::ZeroDetection || plan.zeroDetection)
        return {0.0, 0.0};
    if (rg.kind == RegimeKind::FastTargetCase)
        throw FastTargetError("estimate_detection_rate needs a slower target (U < V)");

    if (plan.continuous)
        return {width_at_alert_range(scn, scn.R), 0.0};

    // Per-course cycle table, linearly interpolated when sampling.
    const int courseCells = 1024;
    struct Row {
        double tp, tr, T;
    };
    std::vector<Row> rows(static_cast<size_t>(courseCells) + 1);
    for (int i = 0; i <= courseCells; ++i) {
        const double a = kPi * static_cast<double>(i) / courseCells;
        const auto ctx = pingplan::detail::case_context(scn, a, plan.prefactor);
        const auto per = planner::total_period(scn, a, plan.prefactor, plan.exact);
        rows[static_cast<size_t>(i)] = {ctx.Tp, ctx.TR, per.T};
    }

    // Empirical width table over the swept alert range.
    const auto ctx0 = pingplan::detail::case_context(scn, 0.0, plan.prefactor);
    const int widthCells = 1024;
    std::vector<double> widths(static_cast<size_t>(widthCells) + 1);
    for (int j = 0; j <= widthCells; ++j) {
        const double x =
            ctx0.x0 + (ctx0.xe - ctx0.x0) * static_cast<double>(j) / widthCells;
        widths[static_cast<size_t>(j)] =
            width_at_alert_range(scn, std::max(x, scn.S * (1.0 + 1e-9)));
    }
    const double tailWidth = widths.back();
    const double scale = (ctx0.xe - ctx0.x0) / ctx0.prefDenom;

    long double sum = 0.0L, sumSq = 0.0L;
    for (long i = 0; i < nSamples; ++i) {
        const double u1 = uniform01(seed, static_cast<std::uint64_t>(2 * i));
        const double u2 = uniform01(seed, static_cast<std::uint64_t>(2 * i + 1));

        const double pos = u1 * courseCells;
        const int i0 = std::min(static_cast<int>(pos), courseCells - 1);
        const double frac = pos - i0;
        const Row& lo = rows[static_cast<size_t>(i0)];
        const Row& hi = rows[static_cast<size_t>(i0) + 1];
        const double tp = lo.tp + frac * (hi.tp - lo.tp);
        const double tr = lo.tr + frac * (hi.tr - lo.tr);
        const double T = lo.T + frac * (hi.T - lo.T);

        const double t = u2 * T;
        double wv = 0.0;
        if (t >= tp) {
            if (t < tr) {
                const double xpos = (t - tp) / (tr - tp) * widthCells;
                const int j0 = std::min(static_cast<int>(xpos), widthCells - 1);
                const double xf = xpos - j0;
                const double wMeasured = widths[static_cast<size_t>(j0)] +
                                         xf * (widths[static_cast<size_t>(j0) + 1] -
                                               widths[static_cast<size_t>(j0)]);
                wv = wMeasured * scale;
            } else {
                wv = tailWidth;
            }
        }
        sum += wv;
        sumSq += wv * wv;
    }

    const double n = static_cast<double>(nSamples);
    const double mean = static_cast<double>(sum / n);
    double ci = 0.0;
    if (nSamples > 1) {
        const double var =
            std::max(0.0, static_cast<double>(sumSq / n) - mean * mean) * n / (n - 1.0);
        ci = 1.96 * std::sqrt(var / n);
    }
    return {mean, ci};
}

} // namespace oracle

} // namespace pingplan
