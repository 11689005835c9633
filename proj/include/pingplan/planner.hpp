#pragma once

#include <optional>
#include <vector>

#include "pingplan/kinematics.hpp"

namespace pingplan {

enum class RegimeKind {
    EscapeCase,     // U < V, S <= r, detection condition holds
    CloseAlertCase, // U < V, r < S
    FastTargetCase, // V < U, r < S
    ZeroDetection   // V < U with S <= r, or escape shape failing the detection condition
};

struct Regime {
    RegimeKind kind;
    bool boundedWidth;       // S*V/U <= R: the width ramp ends before R
    bool detectionCondition; // U/V < S/r
};

const char* regime_name(RegimeKind kind);

enum class PolicyKind {
    PerAlpha,              // all outputs at one course
    MeanOverAlpha,         // course-averaged outputs (MOE1 no longer guaranteed)
    MinOverAlpha,          // plan pinned at the course minimizing Tp
    MinOverAlphaAndLateral // global (alpha, d) minimum where a lateral range applies
};

struct AlphaPolicy {
    PolicyKind kind = PolicyKind::MeanOverAlpha;
    std::optional<double> alpha; // required by PerAlpha, ignored otherwise
};

// Area accounting for the sensor-on ramp when the alert range starts at S
// (r < S). Print keeps the (xEnd - r) normalization of the published tables;
// Geometric uses the ramp span (xEnd - S), which makes the accumulated area
// exactly the integral of the width curve. Identical when the ramp starts
// at r.
enum class Prefactor { Print, Geometric };

struct GainValue {
    bool infinite = false; // continuous-case width is zero
    double value = 0.0;    // meaningful only when !infinite
};

struct SchedulePlan {
    Regime regime;
    AlphaPolicy policy;
    Prefactor prefactor = Prefactor::Print;
    bool exact = false;      // stationary point refined instead of the linear solve
    bool continuous = false; // continuous-sensor baseline (Tp = 0, never switches off)
    bool zeroDetection = false;

    std::optional<double> Tp;
    std::optional<double> Ta;
    std::optional<double> T;
    std::optional<double> TR;
    std::optional<double> rho;
    std::optional<double> maxAvgWidth;
    std::optional<GainValue> gain;
    std::optional<double> cutoff; // time after which no new opportunities emerge

    bool continuousPreferred = false; // rho outside (0,1): no interior maximum
    bool moe1Averaged = false;        // averaged outputs: MOE1 not guaranteed

    std::optional<double> alphaResolved; // course the plan was evaluated at
    std::optional<double> dResolved;     // lateral range at the minimum, if any
};

struct CurveSample {
    double t;
    double D;
    double A;
    double ratio; // A/t, 0 at t = 0
};

struct WidthCurve {
    double alpha;
    double Tp;
    double TR;
    std::vector<CurveSample> samples;
};

namespace planner {

Regime classify(const Scenario& scn);

// Passive period of the escape case (S <= r):
// Tp = CE(alpha)/W(alpha) + sqrt(r^2 - S^2)/sqrt(V^2 - U^2).
double passive_period_escape(const Scenario& scn, double alpha);

// Time at which the width ramp reaches its end value, measured like Tp from
// the start of the cycle. Escape case: tp + CE(alpha_e)/W(alpha_e);
// close-alert case: tp + sqrt(R^2 - S^2)/sqrt(V^2 - U^2).
double alert_horizon(const Scenario& scn, double alpha, double tp);

// Alert range swept during the active period: linear in t from r (escape) or
// S (close alert) at Tp up to min(R, S*V/U) at TR. Domain: Tp <= t <= TR.
double range_at_time(const Scenario& scn, double alpha, double t);

// D(alpha, t): zero before Tp, D1 of the swept range on the ramp, constant
// tail beyond TR. Zero in regimes without a width model.
double width_at_time(const Scenario& scn, double alpha, double t);

// I(x), an antiderivative of D1(x)/2:
// I(x) = S*sqrt(1-(U/V)^2)*x - (U/V)/2*(x*sqrt(x^2-S^2) - S^2*ln(x+sqrt(x^2-S^2))).
double area_antiderivative(const Scenario& scn, double x);

// A(alpha, t): accumulated detection area under the plan's accounting.
// On the ramp: 2*(TR-Tp)/prefactor * (I(x(t)) - I(x(Tp))); beyond TR the
// area grows at the constant tail width.
double accumulated_area(const Scenario& scn, double alpha, double t,
                        Prefactor pf = Prefactor::Print);

// y(alpha, t) = t*D(alpha,t) - A(alpha,t); its root in [Tp, TR] is the
// interior maximizer of A/t. Domain: Tp <= t <= TR.
double stationarity_residual(const Scenario& scn, double alpha, double t,
                             Prefactor pf = Prefactor::Print);

// rho = -y(Tp) / (y(TR) - y(Tp)), the root of the linear interpolant of y.
// Values outside (0,1) mean A/t has no interior maximum (continuous use
// preferred).
double interpolation_ratio(const Scenario& scn, double alpha,
                           Prefactor pf = Prefactor::Print);

struct Periods {
    double T;
    double Ta;
};

// T = Tp + rho*(TR - Tp), Ta = T - Tp. With exact=true the root of y is
// refined by bisection instead of the linear solve (only possible when a
// sign change exists, i.e. rho < 1; otherwise the linear value is kept).
Periods total_period(const Scenario& scn, double alpha,
                     Prefactor pf = Prefactor::Print, bool exact = false);

// A(alpha, T(alpha)) / T(alpha), the maximized average detection width.
double max_avg_width(const Scenario& scn, double alpha,
                     Prefactor pf = Prefactor::Print, bool exact = false);

// G = meanD / D1(R) - 1, or the infinite sentinel when D1(R) = 0.
GainValue gain(const Scenario& scn, double meanD);

struct AreaRate {
    double integral; // (1/pi) * integral of W(alpha) * maxAvgWidth(alpha)
    double product;  // meanW * meanD approximation
};

AreaRate area_rate(const Scenario& scn, Prefactor pf = Prefactor::Print);

// Present only when S*V/U <= R: time from the start of the active period
// after which no new opportunities emerge (the ramp formula with the outer
// radius replaced by S*V/U, at the evasive relative speed).
std::optional<double> active_cutoff(const Scenario& scn, double alpha);

// Close-alert passive period. With d given: min of the alerted branch
// T1 = a(d)/W + b(alpha,d)/sqrt(V^2-U^2) and the grazing branch
// T2 = sqrt(R^2-S^2)/W. With d absent: T1 minimized over d in (0, r],
// then compared with T2.
double passive_period_close_alert(const Scenario& scn, double alpha,
                                  std::optional<double> d = {});

// Fast-target passive period: as the close-alert form with the alerted
// branch T1 = a(d)/W + (S - r)/W_e(alpha, d).
double passive_period_fast(const Scenario& scn, double alpha,
                           std::optional<double> d = {});

// Fast-target active period Ta = (S - r)/W_e(alpha, d), minimized over any
// argument left unspecified (the absolute minimum is (S-r)/(U+V)).
double active_period_fast(const Scenario& scn,
                          std::optional<double> alpha = {},
                          std::optional<double> d = {});

SchedulePlan build_plan(const Scenario& scn, const AlphaPolicy& policy,
                        Prefactor pf = Prefactor::Print, bool exact = false);

// Baseline plan with the sensor always on.
SchedulePlan continuous_plan(const Scenario& scn);

// Sampled width/area curves at one course: `resolution` evenly spaced times
// on [0, TR] plus the breakpoint Tp, deduplicated and sorted. resolution >= 2.
WidthCurve build_curve(const Scenario& scn, double alpha, int resolution,
                       Prefactor pf = Prefactor::Print);

// Per-course passive period dispatched by regime (escape form, or the
// d-minimized close-alert/fast form).
double passive_period(const Scenario& scn, double alpha);

} // namespace planner

namespace detail {

// Per-course ramp context shared by the planner internals and the oracle's
// rate estimator.
struct CaseContext {
    double Tp;
    double TR;
    double x0;        // ramp start: r (escape) or S (close alert)
    double xe;        // ramp end: min(R, S*V/U)
    double prefDenom; // area prefactor denominator under the chosen accounting
    double tailWidth; // D1(xe)
};

CaseContext case_context(const Scenario& scn, double alpha, Prefactor pf);

} // namespace detail

} // namespace pingplan
