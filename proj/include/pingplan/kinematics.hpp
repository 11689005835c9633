#pragma once

#include "pingplan/errors.hpp"

namespace pingplan {

// The five parameters defining an engagement. Lengths and speeds are
// caller-consistent and unitless; angles everywhere are radians.
struct Scenario {
    double U; // target speed
    double V; // searcher speed
    double S; // searcher active detection range
    double r; // target counter-detection range, sensor off
    double R; // target counter-detection range, sensor on

    // Throws ScenarioError naming the offending field or relation.
    void validate() const;
};

// An unalerted track: absolute course alpha relative to the searcher heading
// and lateral (closest-point-of-approach) range d.
struct CourseGeometry {
    double alpha;
    double d;
};

namespace kinematics {

// W(alpha) = sqrt(U^2 + V^2 - 2*U*V*cos(alpha)), the closing speed of the
// unalerted target in the searcher-relative frame. Requires 0 <= alpha <= pi.
double relative_speed(const Scenario& scn, double alpha);

// Course average (1/pi) * integral of W over [0, pi].
double mean_relative_speed(const Scenario& scn);

// gamma(alpha) = asin(U/W(alpha) * sin(alpha)), folded into [0, pi/2].
double relative_course(const Scenario& scn, double alpha);

// Best evasive absolute course for a slower target: alpha_e = arccos(U/V).
double evasive_course(const Scenario& scn);

// Relative speed along the evasive course: W(alpha_e) = sqrt(V^2 - U^2).
double evasive_relative_speed(const Scenario& scn);

// Instantaneous detection width for a target alerted at range x:
// D1(x) = 2*S*[sqrt(1-(U/V)^2) - (U/V)*sqrt((x/S)^2 - 1)] while x < S*V/U,
// zero beyond. x = S is the valid entry geometry of the close-alert case.
double instantaneous_width(const Scenario& scn, double x);

// U/V < S/r: a target alerted at r cannot out-turn the detection circle.
bool detection_condition(const Scenario& scn);

// S*V/U, the largest alert range with positive detection width.
double max_width_range(const Scenario& scn);

// Time for an alerted target to run from 'radius' to the tangent point of
// the detection circle: sqrt(radius^2 - S^2) / sqrt(V^2 - U^2).
double escape_tangent_time(const Scenario& scn, double radius);

// Unalerted run from the sensor-on alert circle R down to the sensor-off
// alert circle r, as seen along the relative track:
// CE(alpha) = sqrt(R^2 - r^2*cos^2(theta)) - r*sin(theta),
// theta(alpha) = arccos(S/r) + gamma(alpha_e) + gamma(alpha).
// Requires the escape-case shape (U < V, S <= r) and the detection condition.
double ce_distance(const Scenario& scn, double alpha);

// Close-alert chord of the unalerted track between the circles R and r:
// a(d) = sqrt(r^2 + R^2 - 2*r*R*cos(asin(d/r) - asin(d/R))), 0 <= d <= r.
double unalerted_chord(const Scenario& scn, double d);

// Evasive run from the alert point at r to the exit of the circle S:
// b(alpha,d) = r*cos(phi) + sqrt(S^2 - r^2*sin^2(phi)),
// phi = gamma(alpha_e) + gamma(alpha) + asin(d/r). Requires U < V, r < S.
double alerted_run(const Scenario& scn, double alpha, double d);

// Fast-target (V < U) radial evasive relative course:
// gamma_e(alpha,d) = pi - gamma(alpha) - asin(d/r).
double fast_evasive_course(const Scenario& scn, double alpha, double d);

// Relative speed along that radial course:
// W_e = V*cos(gamma_e) + sqrt(U^2 - V^2*sin^2(gamma_e)).
double fast_evasive_relative_speed(const Scenario& scn, double alpha, double d);

} // namespace kinematics

namespace detail {

// Square roots and inverse trig with a tolerance window for float noise at
// tangency: arguments slightly outside the domain (within 1e-12 of the
// stated scale) are clamped; anything worse raises DomainError.
double guarded_sqrt(double v, double scale2);
double guarded_asin(double v);
double guarded_acos(double v);

// ce_distance with a caller-chosen outer radius; the public op fixes the
// outer radius at R, the limited-opportunity cutoff reuses it with S*V/U.
double ce_with_outer(const Scenario& scn, double alpha, double outer);

} // namespace detail

} // namespace pingplan
