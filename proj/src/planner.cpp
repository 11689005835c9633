#include "pingplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pingplan/numerics.hpp"

namespace pingplan {

const char* regime_name(RegimeKind kind) {
    switch (kind) {
    case RegimeKind::EscapeCase: return "EscapeCase";
    case RegimeKind::CloseAlertCase: return "CloseAlertCase";
    case RegimeKind::FastTargetCase: return "FastTargetCase";
    case RegimeKind::ZeroDetection: return "ZeroDetection";
    }
    return "UnknownRegime";
}

namespace planner {

namespace {

constexpr double kPi = std::numbers::pi;

// Lower end of the lateral-range search window; d = 0 is a well-defined
// head-on geometry but sits on the fold of asin(d/r), so minimizations stay
// a hair above it.
double lateral_floor(const Scenario& scn) { return 1e-9 * scn.r; }

void require_ramp_regime(const Regime& rg, const char* op) {
    if (rg.kind == RegimeKind::EscapeCase || rg.kind == RegimeKind::CloseAlertCase)
        return;
    if (rg.kind == RegimeKind::FastTargetCase)
        throw FastTargetError(std::string(op) +
                              " has no width ramp when the target is faster (V < U)");
    throw RegimeError(std::string(op) + ": no detection is possible in this scenario");
}

double ramp_range(const detail::CaseContext& ctx, double t) {
    const double u = std::clamp((t - ctx.Tp) / (ctx.TR - ctx.Tp), 0.0, 1.0);
    return ctx.x0 + u * (ctx.xe - ctx.x0);
}

double width_on(const Scenario& scn, const detail::CaseContext& ctx, double t) {
    if (t < ctx.Tp)
        return 0.0;
    if (t >= ctx.TR)
        return ctx.tailWidth;
    return kinematics::instantaneous_width(scn, ramp_range(ctx, t));
}

double area_under(const Scenario& scn, const detail::CaseContext& ctx, double t) {
    if (t <= ctx.Tp)
        return 0.0;
    const double scale = 2.0 * (ctx.TR - ctx.Tp) / ctx.prefDenom;
    const double i0 = area_antiderivative(scn, ctx.x0);
    const double tRamp = std::min(t, ctx.TR);
    double a = scale * (area_antiderivative(scn, ramp_range(ctx, tRamp)) - i0);
    if (t > ctx.TR)
        a += ctx.tailWidth * (t - ctx.TR);
    return a;
}

double residual(const Scenario& scn, const detail::CaseContext& ctx, double t) {
    return t * width_on(scn, ctx, t) - area_under(scn, ctx, t);
}

double ratio_from(const Scenario& scn, const detail::CaseContext& ctx) {
    const double yp = ctx.Tp * kinematics::instantaneous_width(scn, ctx.x0);
    const double yr = residual(scn, ctx, ctx.TR);
    const double denom = yr - yp;
    if (std::abs(denom) < 1e-14 * std::max(1.0, std::abs(yp)))
        throw DegenerateError("interpolation_ratio: y(TR) and y(Tp) coincide");
    return -yp / denom;
}

Periods periods_from(const Scenario& scn, const detail::CaseContext& ctx, bool exact) {
    const double rho = ratio_from(scn, ctx);
    double T = ctx.Tp + rho * (ctx.TR - ctx.Tp);
    // The stationarity residual changes sign inside the ramp only when
    // rho < 1; beyond that A/t keeps rising, so the linear value stands.
    if (exact && rho > 0.0 && rho < 1.0)
        T = numerics::refine_root([&](double t) { return residual(scn, ctx, t); },
                                  ctx.Tp, ctx.TR);
    return {T, T - ctx.Tp};
}

double avg_from(const Scenario& scn, const detail::CaseContext& ctx, bool exact) {
    const Periods per = periods_from(scn, ctx, exact);
    return area_under(scn, ctx, per.T) / per.T;
}

void check_time_window(const detail::CaseContext& ctx, double t, const char* op) {
    const double tol = 1e-9 * std::max(1.0, ctx.TR);
    if (t < ctx.Tp - tol || t > ctx.TR + tol)
        throw DomainError(std::string(op) + ": t outside [Tp, TR]");
}

// Lateral-range resolution of the alerted branch against the grazing branch.
// d is set when the alerted branch attains the minimum.
struct LateralMin {
    double tp;
    std::optional<double> d;
};

double grazing_period(const Scenario& scn, double w) {
    return detail::guarded_sqrt(scn.R * scn.R - scn.S * scn.S, scn.R * scn.R) / w;
}

// The grazing branch is flat in d, so a tie must not pin a lateral range.
bool beats_grazing(double t1, double t2) {
    return t1 < t2 * (1.0 - 1e-9);
}

LateralMin close_alert_lateral_min(const Scenario& scn, double alpha) {
    const double w = kinematics::relative_speed(scn, alpha);
    const double we = kinematics::evasive_relative_speed(scn);
    auto t1 = [&](double d) {
        return kinematics::unalerted_chord(scn, d) / w +
               kinematics::alerted_run(scn, alpha, d) / we;
    };
    const auto m = numerics::minimize_scalar(t1, lateral_floor(scn), scn.r);
    const double t2 = grazing_period(scn, w);
    if (beats_grazing(m.value, t2))
        return {m.value, m.arg};
    return {t2, std::nullopt};
}

LateralMin fast_lateral_min(const Scenario& scn, double alpha) {
    const double w = kinematics::relative_speed(scn, alpha);
    auto t1 = [&](double d) {
        return kinematics::unalerted_chord(scn, d) / w +
               (scn.S - scn.r) / kinematics::fast_evasive_relative_speed(scn, alpha, d);
    };
    const auto m = numerics::minimize_scalar(t1, lateral_floor(scn), scn.r);
    const double t2 = grazing_period(scn, w);
    if (beats_grazing(m.value, t2))
        return {m.value, m.arg};
    return {t2, std::nullopt};
}

void require_policy_alpha(const AlphaPolicy& policy) {
    if (policy.kind != PolicyKind::PerAlpha)
        return;
    if (!policy.alpha)
        throw DomainError("per-course policy requires a course alpha");
    if (*policy.alpha < -1e-9 || *policy.alpha > kPi + 1e-9)
        throw DomainError("course alpha outside [0, pi]: " + std::to_string(*policy.alpha));
}

SchedulePlan build_fast_plan(const Scenario& scn, const AlphaPolicy& policy,
                             SchedulePlan plan) {
    switch (policy.kind) {
    case PolicyKind::PerAlpha: {
        const double a = *policy.alpha;
        const LateralMin lm = fast_lateral_min(scn, a);
        plan.alphaResolved = a;
        plan.dResolved = lm.d;
        plan.Tp = lm.tp;
        plan.Ta = active_period_fast(scn, a, {});
        break;
    }
    case PolicyKind::MeanOverAlpha: {
        plan.moe1Averaged = true;
        plan.Tp = numerics::integrate_mean(
            [&](double a) { return fast_lateral_min(scn, a).tp; });
        plan.Ta = numerics::integrate_mean(
            [&](double a) { return active_period_fast(scn, a, {}); });
        break;
    }
    case PolicyKind::MinOverAlpha: {
        const auto m = numerics::minimize_scalar(
            [&](double a) { return fast_lateral_min(scn, a).tp; }, 0.0, kPi);
        const LateralMin lm = fast_lateral_min(scn, m.arg);
        plan.alphaResolved = m.arg;
        plan.dResolved = lm.d;
        plan.Tp = lm.tp;
        plan.Ta = active_period_fast(scn, m.arg, {});
        break;
    }
    case PolicyKind::MinOverAlphaAndLateral: {
        const auto m = numerics::minimize_2d(
            [&](double a, double d) { return passive_period_fast(scn, a, d); },
            {0.0, kPi, lateral_floor(scn), scn.r});
        plan.alphaResolved = m.x;
        plan.Tp = m.value;
        const double w = kinematics::relative_speed(scn, m.x);
        if (beats_grazing(m.value, grazing_period(scn, w)))
            plan.dResolved = m.y;
        plan.Ta = active_period_fast(scn, {}, {});
        break;
    }
    }
    plan.T = *plan.Tp + *plan.Ta;
    plan.TR = plan.T;
    return plan;
}

SchedulePlan build_ramp_plan(const Scenario& scn, const AlphaPolicy& policy,
                             Prefactor pf, bool exact, SchedulePlan plan) {
    const bool escape = plan.regime.kind == RegimeKind::EscapeCase;

    if (policy.kind == PolicyKind::MeanOverAlpha) {
        plan.moe1Averaged = true;
        const double meanTp =
            numerics::integrate_mean([&](double a) { return passive_period(scn, a); });
        plan.Tp = meanTp;
        plan.TR = alert_horizon(scn, 0.0, meanTp);
        plan.rho = numerics::integrate_mean(
            [&](double a) { return interpolation_ratio(scn, a, pf); });
        const double meanT = numerics::integrate_mean(
            [&](double a) { return total_period(scn, a, pf, exact).T; });
        plan.T = meanT;
        plan.Ta = meanT - meanTp;
        const double meanD = numerics::integrate_mean(
            [&](double a) { return max_avg_width(scn, a, pf, exact); });
        plan.maxAvgWidth = meanD;
        plan.gain = gain(scn, meanD);
        if (escape && active_cutoff(scn, 0.0))
            plan.cutoff = numerics::integrate_mean(
                [&](double a) { return *active_cutoff(scn, a); });
        plan.continuousPreferred = !(*plan.rho > 0.0 && *plan.rho < 1.0);
        return plan;
    }

    double alphaStar = 0.0;
    std::optional<double> dStar;
    if (policy.kind == PolicyKind::PerAlpha) {
        alphaStar = *policy.alpha;
        if (!escape)
            dStar = close_alert_lateral_min(scn, alphaStar).d;
    } else if (escape) {
        const auto m = numerics::minimize_scalar(
            [&](double a) { return passive_period_escape(scn, a); }, 0.0, kPi);
        alphaStar = m.arg;
    } else if (policy.kind == PolicyKind::MinOverAlpha) {
        const auto m = numerics::minimize_scalar(
            [&](double a) { return close_alert_lateral_min(scn, a).tp; }, 0.0, kPi);
        alphaStar = m.arg;
        dStar = close_alert_lateral_min(scn, alphaStar).d;
    } else {
        const auto m = numerics::minimize_2d(
            [&](double a, double d) { return passive_period_close_alert(scn, a, d); },
            {0.0, kPi, lateral_floor(scn), scn.r});
        alphaStar = m.x;
        const double w = kinematics::relative_speed(scn, m.x);
        if (beats_grazing(m.value, grazing_period(scn, w)))
            dStar = m.y;
    }

    const auto ctx = pingplan::detail::case_context(scn, alphaStar, pf);
    plan.alphaResolved = alphaStar;
    plan.dResolved = dStar;
    plan.Tp = ctx.Tp;
    plan.TR = ctx.TR;
    const double rho = ratio_from(scn, ctx);
    plan.rho = rho;
    const Periods per = periods_from(scn, ctx, exact);
    plan.T = per.T;
    plan.Ta = per.Ta;
    plan.maxAvgWidth = area_under(scn, ctx, per.T) / per.T;
    plan.gain = gain(scn, *plan.maxAvgWidth);
    if (escape)
        plan.cutoff = active_cutoff(scn, alphaStar);
    plan.continuousPreferred = !(rho > 0.0 && rho < 1.0);
    return plan;
}

} // namespace

Regime classify(const Scenario& scn) {
    scn.validate();
    Regime rg;
    rg.detectionCondition = kinematics::detection_condition(scn);
    rg.boundedWidth = kinematics::max_width_range(scn) <= scn.R;
    if (scn.U < scn.V) {
        if (scn.S <= scn.r)
            rg.kind = rg.detectionCondition ? RegimeKind::EscapeCase
                                            : RegimeKind::ZeroDetection;
        else
            rg.kind = RegimeKind::CloseAlertCase;
    } else {
        rg.kind = scn.r < scn.S ? RegimeKind::FastTargetCase : RegimeKind::ZeroDetection;
    }
    return rg;
}

double passive_period_escape(const Scenario& scn, double alpha) {
    if (classify(scn).kind != RegimeKind::EscapeCase)
        throw RegimeError("passive_period_escape requires the escape regime");
    return kinematics::ce_distance(scn, alpha) / kinematics::relative_speed(scn, alpha) +
           kinematics::escape_tangent_time(scn, scn.r);
}

double alert_horizon(const Scenario& scn, double alpha, double tp) {
    (void)alpha; // the ramp length is course-independent in both regimes
    const Regime rg = classify(scn);
    require_ramp_regime(rg, "alert_horizon");
    if (rg.kind == RegimeKind::EscapeCase) {
        const double ae = kinematics::evasive_course(scn);
        return tp + kinematics::ce_distance(scn, ae) /
                        kinematics::evasive_relative_speed(scn);
    }
    return tp + kinematics::escape_tangent_time(scn, scn.R);
}

double range_at_time(const Scenario& scn, double alpha, double t) {
    const auto ctx = pingplan::detail::case_context(scn, alpha, Prefactor::Print);
    check_time_window(ctx, t, "range_at_time");
    return ramp_range(ctx, t);
}

double width_at_time(const Scenario& scn, double alpha, double t) {
    const Regime rg = classify(scn);
    if (rg.kind == RegimeKind::FastTargetCase || rg.kind == RegimeKind::ZeroDetection)
        return 0.0;
    const auto ctx = pingplan::detail::case_context(scn, alpha, Prefactor::Print);
    return width_on(scn, ctx, t);
}

double area_antiderivative(const Scenario& scn, double x) {
    scn.validate();
    if (!(scn.U < scn.V))
        throw FastTargetError("area_antiderivative requires a slower target (U < V)");
    if (x < scn.S * (1.0 - 1e-12))
        throw DomainError("area_antiderivative: x below S");
    x = std::max(x, scn.S);
    const double q = scn.U / scn.V;
    const double root = std::sqrt(std::max(x * x - scn.S * scn.S, 0.0));
    return scn.S * std::sqrt(1.0 - q * q) * x -
           0.5 * q * (x * root - scn.S * scn.S * std::log(x + root));
}

double accumulated_area(const Scenario& scn, double alpha, double t, Prefactor pf) {
    const Regime rg = classify(scn);
    if (rg.kind == RegimeKind::FastTargetCase || rg.kind == RegimeKind::ZeroDetection)
        return 0.0;
    const auto ctx = pingplan::detail::case_context(scn, alpha, pf);
    return area_under(scn, ctx, t);
}

double stationarity_residual(const Scenario& scn, double alpha, double t, Prefactor pf) {
    const auto ctx = pingplan::detail::case_context(scn, alpha, pf);
    check_time_window(ctx, t, "stationarity_residual");
    return residual(scn, ctx, t);
}

double interpolation_ratio(const Scenario& scn, double alpha, Prefactor pf) {
    const auto ctx = pingplan::detail::case_context(scn, alpha, pf);
    return ratio_from(scn, ctx);
}

Periods total_period(const Scenario& scn, double alpha, Prefactor pf, bool exact) {
    const auto ctx = pingplan::detail::case_context(scn, alpha, pf);
    return periods_from(scn, ctx, exact);
}

double max_avg_width(const Scenario& scn, double alpha, Prefactor pf, bool exact) {
    const auto ctx = pingplan::detail::case_context(scn, alpha, pf);
    return avg_from(scn, ctx, exact);
}

GainValue gain(const Scenario& scn, double meanD) {
    scn.validate();
    const double continuousWidth = kinematics::instantaneous_width(scn, scn.R);
    if (continuousWidth <= 0.0)
        return {true, 0.0};
    return {false, meanD / continuousWidth - 1.0};
}

AreaRate area_rate(const Scenario& scn, Prefactor pf) {
    const Regime rg = classify(scn);
    require_ramp_regime(rg, "area_rate");
    auto perAlpha = [&](double a) { return max_avg_width(scn, a, pf, false); };
    const double integral = numerics::integrate_mean(
        [&](double a) { return kinematics::relative_speed(scn, a) * perAlpha(a); });
    const double meanD = numerics::integrate_mean(perAlpha);
    return {integral, kinematics::mean_relative_speed(scn) * meanD};
}

std::optional<double> active_cutoff(const Scenario& scn, double alpha) {
    scn.validate();
    if (!(scn.U < scn.V))
        throw FastTargetError("active_cutoff requires a slower target (U < V)");
    if (scn.r < scn.S)
        throw RegimeError("active_cutoff applies to the escape shape (S <= r)");
    const double outer = kinematics::max_width_range(scn);
    if (outer > scn.R)
        return std::nullopt;
    return pingplan::detail::ce_with_outer(scn, alpha, outer) /
           kinematics::evasive_relative_speed(scn);
}

double passive_period_close_alert(const Scenario& scn, double alpha,
                                  std::optional<double> d) {
    if (classify(scn).kind != RegimeKind::CloseAlertCase)
        throw RegimeError("passive_period_close_alert requires the close-alert regime");
    if (!d)
        return close_alert_lateral_min(scn, alpha).tp;
    const double w = kinematics::relative_speed(scn, alpha);
    const double t1 = kinematics::unalerted_chord(scn, *d) / w +
                      kinematics::alerted_run(scn, alpha, *d) /
                          kinematics::evasive_relative_speed(scn);
    return std::min(t1, grazing_period(scn, w));
}

double passive_period_fast(const Scenario& scn, double alpha, std::optional<double> d) {
    if (classify(scn).kind != RegimeKind::FastTargetCase)
        throw RegimeError("passive_period_fast requires the fast-target regime");
    if (!d)
        return fast_lateral_min(scn, alpha).tp;
    const double w = kinematics::relative_speed(scn, alpha);
    const double t1 =
        kinematics::unalerted_chord(scn, *d) / w +
        (scn.S - scn.r) / kinematics::fast_evasive_relative_speed(scn, alpha, *d);
    return std::min(t1, grazing_period(scn, w));
}

double active_period_fast(const Scenario& scn, std::optional<double> alpha,
                          std::optional<double> d) {
    if (classify(scn).kind != RegimeKind::FastTargetCase)
        throw RegimeError("active_period_fast requires the fast-target regime");
    auto ta = [&](double a, double dd) {
        return (scn.S - scn.r) / kinematics::fast_evasive_relative_speed(scn, a, dd);
    };
    if (alpha && d)
        return ta(*alpha, *d);
    if (alpha)
        return numerics::minimize_scalar([&](double dd) { return ta(*alpha, dd); },
                                         lateral_floor(scn), scn.r)
            .value;
    if (d)
        return numerics::minimize_scalar([&](double a) { return ta(a, *d); }, 0.0, kPi)
            .value;
    return numerics::minimize_2d(ta, {0.0, kPi, lateral_floor(scn), scn.r}).value;
}

SchedulePlan build_plan(const Scenario& scn, const AlphaPolicy& policy, Prefactor pf,
                        bool exact) {
    const Regime rg = classify(scn);
    require_policy_alpha(policy);

    SchedulePlan plan;
    plan.regime = rg;
    plan.policy = policy;
    plan.prefactor = pf;
    plan.exact = exact;

    if (rg.kind == RegimeKind::ZeroDetection) {
        plan.zeroDetection = true;
        return plan;
    }
    if (rg.kind == RegimeKind::FastTargetCase)
        return build_fast_plan(scn, policy, std::move(plan));
    return build_ramp_plan(scn, policy, pf, exact, std::move(plan));
}

SchedulePlan continuous_plan(const Scenario& scn) {
    const Regime rg = classify(scn);
    SchedulePlan plan;
    plan.regime = rg;
    plan.continuous = true;
    plan.Tp = 0.0;
    if (rg.kind == RegimeKind::ZeroDetection) {
        plan.zeroDetection = true;
        return plan;
    }
    if (rg.kind == RegimeKind::FastTargetCase)
        return plan;
    const double width = kinematics::instantaneous_width(scn, scn.R);
    plan.maxAvgWidth = width;
    if (width > 0.0)
        plan.gain = GainValue{false, 0.0};
    return plan;
}

WidthCurve build_curve(const Scenario& scn, double alpha, int resolution, Prefactor pf) {
    require_ramp_regime(classify(scn), "build_curve");
    if (resolution < 2)
        throw DomainError("curve resolution must be at least 2");
    const auto ctx = pingplan::detail::case_context(scn, alpha, pf);

    std::vector<double> times;
    times.reserve(static_cast<size_t>(resolution) + 1);
    for (int i = 0; i < resolution; ++i)
        times.push_back(ctx.TR * static_cast<double>(i) /
                        static_cast<double>(resolution - 1));
    times.push_back(ctx.Tp);
    std::sort(times.begin(), times.end());
    const double dedupTol = 1e-12 * std::max(ctx.TR, 1.0);
    times.erase(std::unique(times.begin(), times.end(),
                            [=](double a, double b) { return std::abs(a - b) <= dedupTol; }),
                times.end());

    WidthCurve curve{alpha, ctx.Tp, ctx.TR, {}};
    curve.samples.reserve(times.size());
    for (double t : times) {
        const double d = width_on(scn, ctx, t);
        const double a = area_under(scn, ctx, t);
        curve.samples.push_back({t, d, a, t > 0.0 ? a / t : 0.0});
    }
    return curve;
}

double passive_period(const Scenario& scn, double alpha) {
    switch (classify(scn).kind) {
    case RegimeKind::EscapeCase:
        return passive_period_escape(scn, alpha);
    case RegimeKind::CloseAlertCase:
        return passive_period_close_alert(scn, alpha, {});
    case RegimeKind::FastTargetCase:
        return passive_period_fast(scn, alpha, {});
    case RegimeKind::ZeroDetection:
        break;
    }
    throw RegimeError("passive_period: no detection is possible in this scenario");
}

} // namespace planner

namespace detail {

CaseContext case_context(const Scenario& scn, double alpha, Prefactor pf) {
    const Regime rg = planner::classify(scn);
    CaseContext ctx;
    if (rg.kind == RegimeKind::EscapeCase) {
        ctx.Tp = planner::passive_period_escape(scn, alpha);
        ctx.x0 = scn.r;
    } else if (rg.kind == RegimeKind::CloseAlertCase) {
        ctx.Tp = planner::passive_period_close_alert(scn, alpha, {});
        ctx.x0 = scn.S;
    } else if (rg.kind == RegimeKind::FastTargetCase) {
        throw FastTargetError("case_context has no width ramp when the target is faster");
    } else {
        throw RegimeError("case_context: no detection is possible in this scenario");
    }
    ctx.TR = planner::alert_horizon(scn, alpha, ctx.Tp);
    ctx.xe = std::min(scn.R, kinematics::max_width_range(scn));
    ctx.prefDenom = pf == Prefactor::Print ? (ctx.xe - scn.r) : (ctx.xe - ctx.x0);
    ctx.tailWidth = kinematics::instantaneous_width(scn, ctx.xe);
    return ctx;
}

} // namespace detail

} // namespace pingplan
