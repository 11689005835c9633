#pragma once

#include <cstdint>
#include <optional>

#include "pingplan/planner.hpp"

namespace pingplan {

// One simulated encounter. alpha may be signed (in [-pi, pi]); the
// configuration (alpha, d) mirrors to (-alpha, -d).
struct TrackSpec {
    double alpha;      // unalerted absolute course
    double d;          // signed lateral range of the unalerted track
    double startRange; // spawn distance from the searcher, >= R
    double startPhase; // offset within the sensor cycle at spawn
};

enum class Verdict { Detected, Escaped, MissedOpportunity };

const char* verdict_name(Verdict v);

struct DetectionOutcome {
    Verdict verdict;
    std::optional<double> tAlert;
    std::optional<double> tDetect;
    double minRange;
};

struct RateEstimate {
    double rate; // mean detection width per unit time over the cycle
    double ci;   // 95% half-width; 0 for a deterministic estimate
};

namespace oracle {

// Stepped simulation of one track in the searcher-relative frame. The target
// runs straight until alerted (range < r any time, or range < R while the
// sensor is on), then instantaneously switches to its evasive course: the
// limiting-line tangent that maximizes the miss distance when U < V, radially
// away when V < U. Detected means range <= S at some instant the sensor is
// on. Event times are refined by bisection between steps to 1e-9.
// Requires dt <= 1e-3 * min(S, r) / (U + V).
DetectionOutcome simulate_track(const Scenario& scn, const SchedulePlan& plan,
                                const TrackSpec& track, double dt);

// Empirical detection width at the geometry the schedule sweeps at tEval:
// the measure of lateral offsets whose alerted tracks end Detected, found by
// bisection on the offset to 1e-6 * S. Uses no closed-form width formula.
double measured_width(const Scenario& scn, const SchedulePlan& plan,
                      double tEval, double alpha);

// Empirical infimum, over track geometries, of the time from cycle start
// until an opportunity created during the passive window is irrecoverably
// lost. Grid over the lateral range (and the course when alpha is absent)
// plus golden-section refinement of every bracketed local minimum.
double min_loss_time(const Scenario& scn, std::optional<double> alpha = {});

// Monte Carlo estimate of the schedule's average detection width per unit
// time: samples (course, cycle time) uniformly, measures the empirical width
// at the swept geometry, and applies the plan's ramp accounting. For a
// continuous plan the swept geometry is fixed at R. Deterministic for a
// given seed; the confidence interval shrinks as 1/sqrt(nSamples).
RateEstimate estimate_detection_rate(const Scenario& scn,
                                     const SchedulePlan& plan,
                                     long nSamples, std::uint64_t seed);

} // namespace oracle

} // namespace pingplan
