#include "pingplan/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pingplan/numerics.hpp"

namespace pingplan {

namespace detail {

double guarded_sqrt(double v, double scale2) {
    if (v < 0.0) {
        if (v >= -1e-12 * std::max(scale2, 1e-300))
            return 0.0;
        throw DomainError("sqrt argument negative beyond tolerance: " + std::to_string(v));
    }
    return std::sqrt(v);
}

double guarded_asin(double v) {
    if (v > 1.0 || v < -1.0) {
        if (std::abs(v) <= 1.0 + 1e-12)
            v = v > 0.0 ? 1.0 : -1.0;
        else
            throw DomainError("asin argument outside [-1,1]: " + std::to_string(v));
    }
    return std::asin(v);
}

double guarded_acos(double v) {
    if (v > 1.0 || v < -1.0) {
        if (std::abs(v) <= 1.0 + 1e-12)
            v = v > 0.0 ? 1.0 : -1.0;
        else
            throw DomainError("acos argument outside [-1,1]: " + std::to_string(v));
    }
    return std::acos(v);
}

namespace {

void require_alpha(double alpha) {
    if (alpha < -1e-9 || alpha > std::numbers::pi + 1e-9)
        throw DomainError("course alpha outside [0, pi]: " + std::to_string(alpha));
}

void require_slower_target(const Scenario& scn, const char* op) {
    if (!(scn.U < scn.V))
        throw FastTargetError(std::string(op) + " requires a slower target (U < V)");
}

} // namespace

double ce_with_outer(const Scenario& scn, double alpha, double outer) {
    const double theta = guarded_acos(scn.S / scn.r) +
                         kinematics::relative_course(scn, kinematics::evasive_course(scn)) +
                         kinematics::relative_course(scn, alpha);
    const double c = scn.r * std::cos(theta);
    const double s = scn.r * std::sin(theta);
    return guarded_sqrt(outer * outer - c * c, outer * outer) - s;
}

} // namespace detail

void Scenario::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ScenarioError(std::string("Scenario.") + name + " must be positive and finite");
    };
    positive(U, "U");
    positive(V, "V");
    positive(S, "S");
    positive(r, "r");
    positive(R, "R");
    if (!(S < R))
        throw ScenarioError("Scenario requires S < R (the target counter-detects the active sensor first)");
    if (!(r < R))
        throw ScenarioError("Scenario requires r < R");
    if (U == V)
        throw ScenarioError("Scenario requires U != V");
}

namespace kinematics {

double relative_speed(const Scenario& scn, double alpha) {
    detail::require_alpha(alpha);
    const double w2 = scn.U * scn.U + scn.V * scn.V - 2.0 * scn.U * scn.V * std::cos(alpha);
    return detail::guarded_sqrt(w2, scn.V * scn.V);
}

double mean_relative_speed(const Scenario& scn) {
    return numerics::integrate_mean([&](double a) { return relative_speed(scn, a); });
}

double relative_course(const Scenario& scn, double alpha) {
    detail::require_alpha(alpha);
    const double w = relative_speed(scn, alpha);
    if (w == 0.0)
        return 0.0;
    // W^2 - U^2 sin^2(alpha) = (U cos(alpha) - V)^2 >= 0, so the ratio can
    // exceed 1 only by float noise (exact equality at cos(alpha) = V/U).
    return detail::guarded_asin(scn.U / w * std::sin(alpha));
}

double evasive_course(const Scenario& scn) {
    detail::require_slower_target(scn, "evasive_course");
    return detail::guarded_acos(scn.U / scn.V);
}

double evasive_relative_speed(const Scenario& scn) {
    detail::require_slower_target(scn, "evasive_relative_speed");
    return std::sqrt(scn.V * scn.V - scn.U * scn.U);
}

double instantaneous_width(const Scenario& scn, double x) {
    detail::require_slower_target(scn, "instantaneous_width");
    if (x < scn.S - 1e-12 * scn.S)
        throw DomainError("instantaneous_width: alert range below the detection range S");
    if (x < scn.S)
        x = scn.S;
    const double q = scn.U / scn.V;
    if (x >= max_width_range(scn))
        return 0.0;
    const double ratio = x / scn.S;
    const double width =
        2.0 * scn.S * (std::sqrt(1.0 - q * q) - q * std::sqrt(ratio * ratio - 1.0));
    return width > 0.0 ? width : 0.0;
}

bool detection_condition(const Scenario& scn) {
    return scn.U / scn.V < scn.S / scn.r;
}

double max_width_range(const Scenario& scn) {
    return scn.S * scn.V / scn.U;
}

double escape_tangent_time(const Scenario& scn, double radius) {
    detail::require_slower_target(scn, "escape_tangent_time");
    if (radius < scn.S - 1e-12 * scn.S)
        throw DomainError("escape_tangent_time: radius below the detection range S");
    const double run = detail::guarded_sqrt(radius * radius - scn.S * scn.S, radius * radius);
    return run / evasive_relative_speed(scn);
}

double ce_distance(const Scenario& scn, double alpha) {
    detail::require_slower_target(scn, "ce_distance");
    if (scn.r < scn.S)
        throw RegimeError("ce_distance applies when S <= r (escape case)");
    if (!detection_condition(scn))
        throw RegimeError("ce_distance requires the detection condition U/V < S/r");
    return detail::ce_with_outer(scn, alpha, scn.R);
}

double unalerted_chord(const Scenario& scn, double d) {
    if (!(scn.r < scn.S))
        throw RegimeError("unalerted_chord applies when r < S");
    if (d < 0.0 || d > scn.r * (1.0 + 1e-12))
        throw DomainError("unalerted_chord: lateral range d outside [0, r]");
    if (d == 0.0)
        return scn.R - scn.r; // radial track, exact by definition
    const double inner = detail::guarded_asin(std::min(d / scn.r, 1.0)) -
                         detail::guarded_asin(d / scn.R);
    const double a2 = scn.r * scn.r + scn.R * scn.R - 2.0 * scn.r * scn.R * std::cos(inner);
    return detail::guarded_sqrt(a2, scn.R * scn.R);
}

double alerted_run(const Scenario& scn, double alpha, double d) {
    detail::require_slower_target(scn, "alerted_run");
    if (!(scn.r < scn.S))
        throw RegimeError("alerted_run applies when r < S");
    if (d < 0.0 || d > scn.r * (1.0 + 1e-12))
        throw DomainError("alerted_run: lateral range d outside [0, r]");
    const double phi = relative_course(scn, evasive_course(scn)) +
                       relative_course(scn, alpha) +
                       detail::guarded_asin(std::min(d / scn.r, 1.0));
    const double sinPhi = std::sin(phi);
    const double inside = scn.S * scn.S - scn.r * scn.r * sinPhi * sinPhi;
    if (inside < -1e-12 * scn.S * scn.S)
        throw DomainError("alerted_run: geometrically unreachable configuration");
    return scn.r * std::cos(phi) + detail::guarded_sqrt(inside, scn.S * scn.S);
}

double fast_evasive_course(const Scenario& scn, double alpha, double d) {
    if (!(scn.V < scn.U))
        throw RegimeError("fast_evasive_course requires a faster target (V < U)");
    if (d < 0.0 || d > scn.r * (1.0 + 1e-12))
        throw DomainError("fast_evasive_course: lateral range d outside [0, r]");
    return std::numbers::pi - relative_course(scn, alpha) -
           detail::guarded_asin(std::min(d / scn.r, 1.0));
}

double fast_evasive_relative_speed(const Scenario& scn, double alpha, double d) {
    const double ge = fast_evasive_course(scn, alpha, d);
    const double sinGe = std::sin(ge);
    const double inside = scn.U * scn.U - scn.V * scn.V * sinGe * sinGe;
    return scn.V * std::cos(ge) + detail::guarded_sqrt(inside, scn.U * scn.U);
}

} // namespace kinematics

} // namespace pingplan
