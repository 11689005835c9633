#pragma once

#include <functional>
#include <vector>

#include "pingplan/errors.hpp"

namespace pingplan::numerics {

struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-8;
    int maxIter = 200;
};

// Adaptive Simpson integral of f over [lo, hi]. Known kinks of the integrand
// (segment boundaries of piecewise definitions) should be passed as
// breakpoints so the subdivision never straddles them.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const std::vector<double>& breakpoints = {},
                 const Tolerance& tol = {});

// (1/pi) * integral of f over [0, pi] -- the course-averaging pattern.
double integrate_mean(const std::function<double(double)>& f,
                      const std::vector<double>& breakpoints = {},
                      const Tolerance& tol = {});

struct ScalarMin {
    double arg;
    double value;
};

// Derivative-free minimization on [lo, hi]: a fixed coarse scan brackets every
// local minimum (and both endpoints), golden-section refines each bracket, and
// the best candidate wins. Deterministic.
ScalarMin minimize_scalar(const std::function<double(double)>& f, double lo,
                          double hi, const Tolerance& tol = {});

struct Box {
    double xlo, xhi, ylo, yhi;
};

struct PlaneMin {
    double x;
    double y;
    double value;
};

// Grid seed (33x33) plus coordinate-descent golden refinement of the best
// seeds. Deterministic.
PlaneMin minimize_2d(const std::function<double(double, double)>& f,
                     const Box& box, const Tolerance& tol = {});

// Bisection root refinement on [lo, hi]; requires f(lo) and f(hi) to differ
// in sign (or one of them to vanish). Never returns outside [lo, hi].
double refine_root(const std::function<double(double)>& f, double lo,
                   double hi, const Tolerance& tol = {});

} // namespace pingplan::numerics
