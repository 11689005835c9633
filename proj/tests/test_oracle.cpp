#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pingplan/errors.hpp"
#include "pingplan/kinematics.hpp"
#include "pingplan/oracle.hpp"
#include "pingplan/planner.hpp"

using namespace pingplan;
namespace pl = pingplan::planner;
namespace kin = pingplan::kinematics;
namespace orc = pingplan::oracle;

namespace {
constexpr double kPi = std::numbers::pi;
const Scenario kExA{9.0, 20.0, 4.0, 4.5, 8.0};
const Scenario kExB{9.0, 20.0, 4.0, 3.5, 8.0};
const Scenario kExC{9.0, 8.0, 4.0, 3.5, 8.0};
const Scenario kZero{9.0, 8.0, 3.5, 4.0, 8.0};

double safe_dt(const Scenario& scn) {
    return 1e-3 * std::min(scn.S, scn.r) / (scn.U + scn.V);
}

// grid sweep mirroring the planner's own counterexample search
bool grid_has_missed_opportunity(const Scenario& scn, const SchedulePlan& plan) {
    const double dt = safe_dt(scn);
    for (int ia = 0; ia <= 12; ++ia) {
        const double a = kPi * ia / 12.0;
        for (int id = -20; id <= 20; ++id) {
            const double d = scn.R * 0.999 * id / 20.0;
            const auto out = orc::simulate_track(scn, plan, {a, d, scn.R, 0.0}, dt);
            if (out.verdict == Verdict::MissedOpportunity)
                return true;
        }
    }
    return false;
}
} // namespace

TEST_CASE("verdict names") {
    CHECK(std::string(verdict_name(Verdict::Detected)) == "Detected");
    CHECK(std::string(verdict_name(Verdict::Escaped)) == "Escaped");
    CHECK(std::string(verdict_name(Verdict::MissedOpportunity)) == "MissedOpportunity");
}

TEST_CASE("track simulation validates its inputs") {
    const SchedulePlan cont = pl::continuous_plan(kExA);
    const double dt = safe_dt(kExA);
    CHECK_THROWS_AS(orc::simulate_track(kExA, cont, {1.0, 0.0, 10.0, 0.0}, 0.01),
                    StepSizeError);
    CHECK_THROWS_AS(orc::simulate_track(kExA, cont, {1.0, 0.0, 10.0, 0.0}, 0.0),
                    StepSizeError);
    CHECK_THROWS_AS(orc::simulate_track(kExA, cont, {1.0, 0.0, 7.9, 0.0}, dt),
                    DomainError);
    CHECK_THROWS_AS(orc::simulate_track(kExA, cont, {1.0, 10.0, 10.0, 0.0}, dt),
                    DomainError);
    CHECK_THROWS_AS(orc::simulate_track(kExA, cont, {3.5, 0.0, 10.0, 0.0}, dt),
                    DomainError);

    SchedulePlan noCycle = cont;
    noCycle.continuous = false;
    noCycle.Tp.reset();
    noCycle.T.reset();
    CHECK_THROWS_AS(orc::simulate_track(kExA, noCycle, {1.0, 0.0, 10.0, 0.0}, dt),
                    DomainError);
}

TEST_CASE("continuous sensor detects the near-axis track and loses the wide one") {
    const SchedulePlan cont = pl::continuous_plan(kExA);
    const double dt = safe_dt(kExA);

    const auto hit = orc::simulate_track(kExA, cont, {kPi, 0.05, 10.0, 0.0}, dt);
    CHECK(hit.verdict == Verdict::Detected);
    REQUIRE(hit.tAlert.has_value());
    REQUIRE(hit.tDetect.has_value());
    CHECK(*hit.tAlert == doctest::Approx(2.0 / 29.0).epsilon(1e-3));
    CHECK(*hit.tDetect > *hit.tAlert);
    CHECK(hit.minRange <= kExA.S);

    const auto miss = orc::simulate_track(kExA, cont, {kPi, 5.0, 10.0, 0.0}, dt);
    CHECK(miss.verdict == Verdict::Escaped);
    CHECK(miss.tAlert.has_value());
    CHECK_FALSE(miss.tDetect.has_value());
    CHECK(miss.minRange > kExA.S);

    const auto far = orc::simulate_track(kExA, cont, {kPi, 9.5, 10.0, 0.0}, dt);
    CHECK(far.verdict == Verdict::Escaped);
    CHECK_FALSE(far.tAlert.has_value());
}

TEST_CASE("halving the step moves event times by less than 1e-6") {
    const double dt = safe_dt(kExA);
    const SchedulePlan cont = pl::continuous_plan(kExA);
    const SchedulePlan cyc = pl::build_plan(kExA, {PolicyKind::PerAlpha, 2.0});
    const std::vector<TrackSpec> tracks = {
        {kPi, 0.05, 10.0, 0.0}, {2.0, 0.3, 8.0, 0.0}, {1.1, -1.4, 9.0, 0.12}};
    for (const SchedulePlan* plan : {&cont, &cyc}) {
        for (const TrackSpec& tk : tracks) {
            const auto a = orc::simulate_track(kExA, *plan, tk, dt);
            const auto b = orc::simulate_track(kExA, *plan, tk, 0.5 * dt);
            CHECK(a.verdict == b.verdict);
            if (a.tAlert && b.tAlert)
                CHECK(std::abs(*a.tAlert - *b.tAlert) < 1e-6);
            if (a.tDetect && b.tDetect)
                CHECK(std::abs(*a.tDetect - *b.tDetect) < 1e-6);
        }
    }
}

TEST_CASE("mirrored geometry gives the mirrored outcome") {
    const double dt = safe_dt(kExA);
    const SchedulePlan plan = pl::build_plan(kExA, {PolicyKind::MeanOverAlpha, {}});
    for (double a : {0.7, 2.1}) {
        for (double d : {1.2, -2.0, 0.4}) {
            const auto fwd = orc::simulate_track(kExA, plan, {a, d, 9.0, 0.0}, dt);
            const auto mir = orc::simulate_track(kExA, plan, {-a, -d, 9.0, 0.0}, dt);
            CHECK(fwd.verdict == mir.verdict);
            CHECK(fwd.minRange == doctest::Approx(mir.minRange).epsilon(1e-9));
            if (fwd.tAlert && mir.tAlert)
                CHECK(*fwd.tAlert == doctest::Approx(*mir.tAlert).epsilon(1e-9));
            if (fwd.tDetect && mir.tDetect)
                CHECK(*fwd.tDetect == doctest::Approx(*mir.tDetect).epsilon(1e-9));
        }
    }
    // head-on and tail-on courses are their own mirror image
    for (double a : {0.0, kPi}) {
        const auto up = orc::simulate_track(kExA, plan, {a, 1.5, 9.0, 0.0}, dt);
        const auto dn = orc::simulate_track(kExA, plan, {a, -1.5, 9.0, 0.0}, dt);
        CHECK(up.verdict == dn.verdict);
        CHECK(up.minRange == doctest::Approx(dn.minRange).epsilon(1e-9));
    }
}

TEST_CASE("empirical width reproduces the closed form along the ramp") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uU(5.0, 14.0), uV(12.0, 30.0),
        uS(2.0, 6.0), uFr(1.02, 1.5), uFR(1.3, 2.2);
    std::vector<Scenario> scns = {kExA, kExB};
    while (scns.size() < 4) {
        Scenario s{uU(rng), uV(rng), uS(rng), 0.0, 0.0};
        s.r = s.S * uFr(rng);
        s.R = s.r * uFR(rng);
        if (s.U >= s.V || s.U / s.V >= s.S / s.r)
            continue;
        scns.push_back(s);
    }
    for (const Scenario& s : scns) {
        const SchedulePlan plan = pl::build_plan(s, {PolicyKind::MeanOverAlpha, {}});
        for (double a : {0.5, 2.4}) {
            const double tp = pl::passive_period(s, a);
            const double tr = pl::alert_horizon(s, a, tp);
            for (double f : {0.2, 0.7, 1.0}) {
                const double tEval = tp + f * (tr - tp);
                const double measured = orc::measured_width(s, plan, tEval, a);
                const double analytic = pl::width_at_time(s, a, tEval);
                CHECK(std::abs(measured - analytic) <= 1e-3 * s.S);
            }
            CHECK(orc::measured_width(s, plan, 0.5 * tp, a) == 0.0);
        }
    }
    const SchedulePlan cont = pl::continuous_plan(kExA);
    CHECK(std::abs(orc::measured_width(kExA, cont, 0.0, 1.0) -
                   kin::instantaneous_width(kExA, kExA.R)) <= 1e-3 * kExA.S);
    CHECK_THROWS_AS(orc::measured_width(kExC, cont, 0.0, 1.0), FastTargetError);
    CHECK_THROWS_AS(orc::measured_width(kZero, cont, 0.0, 1.0), RegimeError);
}

TEST_CASE("earliest opportunity loss tracks the planned passive period") {
    // fixed course, escape case
    CHECK(orc::min_loss_time(kExA, kPi / 2.0) ==
          doctest::Approx(pl::passive_period(kExA, kPi / 2.0)).epsilon(5e-4));
    CHECK(orc::min_loss_time(kExA, 0.0) ==
          doctest::Approx(pl::passive_period(kExA, 0.0)).epsilon(5e-4));

    // free course, all three regimes
    const double lossA = orc::min_loss_time(kExA, {});
    const double tpA = *pl::build_plan(kExA, {PolicyKind::MinOverAlpha, {}}).Tp;
    CHECK(lossA >= tpA - 0.01);
    CHECK(std::abs(lossA - tpA) <= 5e-3);

    const double lossB = orc::min_loss_time(kExB, {});
    const double tpB = *pl::build_plan(kExB, {PolicyKind::MinOverAlphaAndLateral, {}}).Tp;
    CHECK(lossB >= tpB - 0.01);
    CHECK(std::abs(lossB - tpB) <= 5e-3);

    const double lossC = orc::min_loss_time(kExC, {});
    const double tpC = *pl::build_plan(kExC, {PolicyKind::MinOverAlphaAndLateral, {}}).Tp;
    CHECK(lossC >= tpC - 0.01);
    CHECK(std::abs(lossC - tpC) <= 5e-3);

    // tail-on course matches in the fast regime as well
    CHECK(orc::min_loss_time(kExC, kPi) ==
          doctest::Approx(pl::passive_period(kExC, kPi)).epsilon(5e-3));

    CHECK_THROWS_AS(orc::min_loss_time(kZero, {}), RegimeError);
}

TEST_CASE("a passive period stretched past the guarantee loses opportunities") {
    const SchedulePlan good = pl::build_plan(kExA, {PolicyKind::MinOverAlpha, {}});
    CHECK_FALSE(grid_has_missed_opportunity(kExA, good));

    SchedulePlan bad = good;
    bad.Tp = *good.Tp * 1.2;
    bad.T = *bad.Tp + *good.Ta;
    CHECK(grid_has_missed_opportunity(kExA, bad));
}

TEST_CASE("sampled detection rate brackets the analytic gain") {
    const long n = 20000;
    const std::uint64_t seed = 99;

    const SchedulePlan contA = pl::continuous_plan(kExA);
    const auto base = orc::estimate_detection_rate(kExA, contA, n, seed);
    CHECK(base.ci == 0.0);
    CHECK(std::abs(base.rate - kin::instantaneous_width(kExA, kExA.R)) <=
          1e-3 * kExA.S);

    const SchedulePlan meanA = pl::build_plan(kExA, {PolicyKind::MeanOverAlpha, {}});
    const auto est = orc::estimate_detection_rate(kExA, meanA, n, seed);
    CHECK(est.ci > 0.0);
    CHECK(std::abs(est.rate / base.rate - 1.0 - 0.2744322) <= 0.05);

    // deterministic for a fixed seed
    const auto est2 = orc::estimate_detection_rate(kExA, meanA, n, seed);
    CHECK(est.rate == est2.rate);
    CHECK(est.ci == est2.ci);

    // confidence interval shrinks like 1/sqrt(n)
    const auto est4 = orc::estimate_detection_rate(kExA, meanA, 4 * n, seed);
    CHECK(est4.ci < 0.65 * est.ci);
    CHECK(est4.ci > 0.35 * est.ci);

    const SchedulePlan meanB = pl::build_plan(kExB, {PolicyKind::MeanOverAlpha, {}});
    const auto baseB = orc::estimate_detection_rate(kExB, pl::continuous_plan(kExB), n, seed);
    const auto estB = orc::estimate_detection_rate(kExB, meanB, n, seed);
    CHECK(std::abs(estB.rate / baseB.rate - 1.0 - 0.7695312) <= 0.08);
}

TEST_CASE("sampled detection rate rejects unusable inputs") {
    const SchedulePlan zeroPlan = pl::build_plan(kZero, {PolicyKind::MeanOverAlpha, {}});
    const auto z = orc::estimate_detection_rate(kZero, zeroPlan, 100, 1);
    CHECK(z.rate == 0.0);
    CHECK(z.ci == 0.0);

    const SchedulePlan planC = pl::build_plan(kExC, {PolicyKind::MinOverAlphaAndLateral, {}});
    CHECK_THROWS_AS(orc::estimate_detection_rate(kExC, planC, 100, 1), FastTargetError);
    CHECK_THROWS_AS(
        orc::estimate_detection_rate(kExA, pl::continuous_plan(kExA), 0, 1),
        DomainError);
}
