#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "pingplan/errors.hpp"
#include "pingplan/kinematics.hpp"

using namespace pingplan;
namespace kin = pingplan::kinematics;

namespace {
constexpr double kPi = std::numbers::pi;
const Scenario kExA{9.0, 20.0, 4.0, 4.5, 8.0};
const Scenario kExB{9.0, 20.0, 4.0, 3.5, 8.0};
const Scenario kExC{9.0, 8.0, 4.0, 3.5, 8.0};
} // namespace

TEST_CASE("scenario validation names the offending field") {
    Scenario s = kExA;
    s.U = 0.0;
    CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("Scenario.U"), ScenarioError);
    s = kExA;
    s.V = -1.0;
    CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("Scenario.V"), ScenarioError);
    s = kExA;
    s.S = std::nan("");
    CHECK_THROWS_AS(s.validate(), ScenarioError);
}

TEST_CASE("scenario validation enforces the model's orderings") {
    Scenario s = kExA;
    s.S = 9.0; // active detection beyond the counter-detection radius
    CHECK_THROWS_AS(s.validate(), ScenarioError);
    s = kExA;
    s.r = 8.5;
    CHECK_THROWS_AS(s.validate(), ScenarioError);
    s = kExA;
    s.U = s.V;
    CHECK_THROWS_AS(s.validate(), ScenarioError);
    CHECK_NOTHROW(kExA.validate());
    CHECK_NOTHROW(kExC.validate());
}

TEST_CASE("relative speed follows the law of cosines and its endpoints") {
    CHECK(kin::relative_speed(kExA, 0.0) == doctest::Approx(11.0).epsilon(1e-12));
    CHECK(kin::relative_speed(kExA, kPi) == doctest::Approx(29.0).epsilon(1e-12));
    for (double a : {0.1, 0.7, 1.3, 2.1, 2.9}) {
        const double w = kin::relative_speed(kExA, a);
        CHECK(w * w == doctest::Approx(81.0 + 400.0 - 360.0 * std::cos(a)).epsilon(1e-12));
    }
    double prev = kin::relative_speed(kExA, 0.0);
    for (int i = 1; i <= 32; ++i) {
        const double w = kin::relative_speed(kExA, kPi * i / 32.0);
        CHECK(w > prev);
        prev = w;
    }
}

TEST_CASE("mean relative speed matches the reference figure") {
    CHECK(kin::mean_relative_speed(kExA) == doctest::Approx(21.026020).epsilon(1e-6));
}

TEST_CASE("relative course vanishes at the endpoints and stays acute") {
    CHECK(kin::relative_course(kExA, 0.0) == doctest::Approx(0.0));
    CHECK(kin::relative_course(kExA, kPi) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(kin::relative_course(kExA, kPi / 2.0) ==
          doctest::Approx(0.4228539).epsilon(1e-6));
    for (double a : {0.05, 0.5, 1.0, 1.6, 2.4, 3.0}) {
        const double g = kin::relative_course(kExA, a);
        CHECK(g >= 0.0);
        CHECK(g <= kPi / 2.0);
        // sine rule between the relative and absolute courses
        const double w = kin::relative_speed(kExA, a);
        CHECK(w * std::sin(g) == doctest::Approx(kExA.U * std::sin(a)).epsilon(1e-10));
    }
}

TEST_CASE("evasive geometry of the slower target") {
    CHECK(kin::evasive_course(kExA) == doctest::Approx(std::acos(9.0 / 20.0)).epsilon(1e-12));
    CHECK(kin::evasive_course(kExA) == doctest::Approx(1.1040310).epsilon(1e-6));
    CHECK(kin::evasive_relative_speed(kExA) == doctest::Approx(17.8605711).epsilon(1e-7));
    CHECK_THROWS_AS(kin::evasive_course(kExC), FastTargetError);
    CHECK_THROWS_AS(kin::evasive_relative_speed(kExC), FastTargetError);
}

TEST_CASE("instantaneous width matches the closed form and its support") {
    CHECK(kin::max_width_range(kExA) == doctest::Approx(8.8888889).epsilon(1e-7));
    CHECK(kin::instantaneous_width(kExA, kExA.r) == doctest::Approx(5.2888309).epsilon(1e-7));
    CHECK(kin::instantaneous_width(kExA, kExA.R) == doctest::Approx(0.9088455).epsilon(1e-7));
    const double dS = 2.0 * kExA.S * std::sqrt(1.0 - 0.45 * 0.45);
    CHECK(kin::instantaneous_width(kExA, kExA.S) == doctest::Approx(dS).epsilon(1e-12));
    CHECK(kin::instantaneous_width(kExA, kExA.S) < 2.0 * kExA.S);
    CHECK(kin::instantaneous_width(kExA, 8.8888889) == doctest::Approx(0.0).epsilon(1e-6));

    double prev = kin::instantaneous_width(kExA, kExA.S);
    for (int i = 1; i <= 40; ++i) {
        const double x = kExA.S + (kin::max_width_range(kExA) - kExA.S) * i / 40.0;
        const double w = kin::instantaneous_width(kExA, x);
        CHECK(w <= prev + 1e-12);
        prev = w;
    }
}

TEST_CASE("a failed detection condition zeroes the width at the alert radius") {
    // escape-shaped scenario with U/V >= S/r
    const Scenario s{15.0, 20.0, 4.0, 6.0, 8.0};
    CHECK_FALSE(kin::detection_condition(s));
    CHECK(kin::instantaneous_width(s, s.r) == doctest::Approx(0.0));
    CHECK(kin::detection_condition(kExA));
    CHECK(kin::detection_condition(kExB));
}

TEST_CASE("escape tangent times and the alert chord") {
    CHECK(kin::escape_tangent_time(kExA, kExA.r) == doctest::Approx(0.1154248).epsilon(1e-6));
    CHECK(kin::escape_tangent_time(kExA, kExA.R) == doctest::Approx(0.3879049).epsilon(1e-6));
    CHECK(kin::ce_distance(kExA, 0.0) == doctest::Approx(3.9092769).epsilon(1e-6));
    CHECK(kin::ce_distance(kExA, kin::evasive_course(kExA)) ==
          doctest::Approx(3.5257287).epsilon(1e-6));
}

TEST_CASE("unalerted chord through the close-alert ring") {
    CHECK(kin::unalerted_chord(kExB, 0.0) == 4.5); // exact radial case
    CHECK(kin::unalerted_chord(kExB, 2.0) == doctest::Approx(4.8736854).epsilon(1e-7));
    CHECK(kin::unalerted_chord(kExB, 3.5) == doctest::Approx(7.1937473).epsilon(1e-7));
    CHECK_THROWS_AS(kin::unalerted_chord(kExB, -0.5), DomainError);
    CHECK_THROWS_AS(kin::unalerted_chord(kExB, 3.8), DomainError);
    CHECK_THROWS_AS(kin::unalerted_chord(kExA, 1.0), RegimeError);
}

TEST_CASE("alerted run from the alert point to the escape boundary") {
    CHECK(kin::alerted_run(kExB, 0.0, 0.0) == doctest::Approx(6.8024702).epsilon(1e-7));
    CHECK(kin::alerted_run(kExB, kPi / 2.0, 3.0) == doctest::Approx(1.0803972).epsilon(1e-7));
    for (double a : {0.0, 1.0, 2.0, kPi})
        for (double d : {0.1, 1.0, 2.5, 3.5})
            CHECK(kin::alerted_run(kExB, a, d) > 0.0);
}

TEST_CASE("fast-target evasive kinematics") {
    CHECK(kin::fast_evasive_course(kExC, kPi / 2.0, 2.0) ==
          doctest::Approx(1.6891931).epsilon(1e-6));
    CHECK(kin::fast_evasive_relative_speed(kExC, kPi / 2.0, 2.0) ==
          doctest::Approx(3.2850437).epsilon(1e-6));
    CHECK(kin::fast_evasive_relative_speed(kExC, kPi / 2.0, 3.0) ==
          doctest::Approx(7.1519604).epsilon(1e-6));

    // the outbound relative speed never drops below the closing-speed floor
    for (double a : {0.2, 1.0, 2.0, 3.0})
        for (double d : {0.2, 1.5, 3.0, 3.5})
            CHECK(kin::fast_evasive_relative_speed(kExC, a, d) >= kExC.U - kExC.V);

    // law of cosines between target speed, searcher speed, and W_e
    for (double a : {0.3, 1.2, 2.4})
        for (double d : {0.5, 2.0, 3.4}) {
            const double ge = kin::fast_evasive_course(kExC, a, d);
            const double we = kin::fast_evasive_relative_speed(kExC, a, d);
            const double lhs = kExC.U * kExC.U;
            const double rhs = kExC.V * kExC.V + we * we -
                               2.0 * kExC.V * we * std::cos(ge);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }

    CHECK_THROWS_AS(kin::fast_evasive_relative_speed(kExA, 1.0, 1.0), RegimeError);
}

TEST_CASE("length scaling leaves speeds and angles fixed") {
    const double k = 2.0;
    const Scenario s{kExA.U, kExA.V, kExA.S * k, kExA.r * k, kExA.R * k};
    for (double a : {0.3, 1.1, 2.2, 3.0}) {
        CHECK(kin::relative_speed(s, a) == doctest::Approx(kin::relative_speed(kExA, a)).epsilon(1e-14));
        CHECK(kin::relative_course(s, a) == doctest::Approx(kin::relative_course(kExA, a)).epsilon(1e-14));
    }
    CHECK(kin::evasive_course(s) == kin::evasive_course(kExA));
    CHECK(kin::instantaneous_width(s, k * 5.0) ==
          doctest::Approx(k * kin::instantaneous_width(kExA, 5.0)).epsilon(1e-12));
    CHECK(kin::ce_distance(s, 1.0) == doctest::Approx(k * kin::ce_distance(kExA, 1.0)).epsilon(1e-12));
}

TEST_CASE("speed scaling leaves lengths and angles fixed") {
    const double m = 3.0;
    const Scenario s{kExA.U * m, kExA.V * m, kExA.S, kExA.r, kExA.R};
    for (double a : {0.3, 1.1, 2.2, 3.0}) {
        CHECK(kin::relative_speed(s, a) == doctest::Approx(m * kin::relative_speed(kExA, a)).epsilon(1e-14));
        CHECK(kin::relative_course(s, a) == doctest::Approx(kin::relative_course(kExA, a)).epsilon(1e-14));
    }
    CHECK(kin::evasive_course(s) == doctest::Approx(kin::evasive_course(kExA)).epsilon(1e-14));
    CHECK(kin::instantaneous_width(s, 5.0) ==
          doctest::Approx(kin::instantaneous_width(kExA, 5.0)).epsilon(1e-12));
    CHECK(kin::ce_distance(s, 1.0) == doctest::Approx(kin::ce_distance(kExA, 1.0)).epsilon(1e-12));
}
