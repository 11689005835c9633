#include "pingplan/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pingplan::numerics {

namespace {

constexpr double kGoldenRatio = 0.6180339887498949; // (sqrt(5)-1)/2

struct SimpsonState {
    const std::function<double(double)>& f;
    int maxDepth;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const SimpsonState& st, double a, double b, double fa, double fm,
             double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * eps || (b - a) < 1e-14 * (std::abs(a) + std::abs(b) + 1.0))
        return left + right + delta / 15.0;
    if (depth >= st.maxDepth)
        throw ConvergenceError("integrate: subdivision budget exhausted before reaching tolerance");
    return adapt(st, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
           adapt(st, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
}

double integrate_piece(const std::function<double(double)>& f, double a,
                       double b, double eps, int maxDepth) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(a, b, fa, fm, fb);
    SimpsonState st{f, maxDepth};
    return adapt(st, a, b, fa, fm, fb, whole, eps, 0);
}

double golden_section(const std::function<double(double)>& f, double a,
                      double b, double width_goal) {
    double x1 = b - kGoldenRatio * (b - a);
    double x2 = a + kGoldenRatio * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > width_goal) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGoldenRatio * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGoldenRatio * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

} // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const std::vector<double>& breakpoints, const Tolerance& tol) {
    if (!(hi > lo))
        return 0.0;

    std::vector<double> cuts{lo, hi};
    for (double b : breakpoints)
        if (b > lo && b < hi)
            cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Rough magnitude for the relative part of the tolerance.
    double rough = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        rough += std::abs(simpson(a, b, f(a), f(0.5 * (a + b)), f(b)));
    }
    const double eps = std::max(tol.abs, tol.rel * std::max(rough, 1e-300));
    const int maxDepth = std::min(tol.maxIter, 60);

    double total = 0.0;
    const double pieceEps = eps / static_cast<double>(cuts.size() - 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate_piece(f, cuts[i], cuts[i + 1], pieceEps, maxDepth);
    return total;
}

double integrate_mean(const std::function<double(double)>& f,
                      const std::vector<double>& breakpoints,
                      const Tolerance& tol) {
    return integrate(f, 0.0, std::numbers::pi, breakpoints, tol) / std::numbers::pi;
}

ScalarMin minimize_scalar(const std::function<double(double)>& f, double lo,
                          double hi, const Tolerance& tol) {
    if (!(hi > lo))
        throw DomainError("minimize_scalar: empty interval");
    constexpr int kScan = 33;
    const double span = hi - lo;
    double xs[kScan];
    double fs[kScan];
    for (int i = 0; i < kScan; ++i) {
        xs[i] = lo + span * static_cast<double>(i) / (kScan - 1);
        fs[i] = f(xs[i]);
    }

    const double widthGoal = std::max(1e-8 * span, tol.abs);
    double bestX = xs[0];
    double bestF = fs[0];
    auto consider = [&](double x) {
        const double v = f(x);
        if (v < bestF) {
            bestF = v;
            bestX = x;
        }
    };
    for (int i = 0; i < kScan; ++i)
        if (fs[i] < bestF) {
            bestF = fs[i];
            bestX = xs[i];
        }
    for (int i = 1; i + 1 < kScan; ++i)
        if (fs[i] <= fs[i - 1] && fs[i] <= fs[i + 1])
            consider(golden_section(f, xs[i - 1], xs[i + 1], widthGoal));
    // Boundary minima: refine the first and last scan cell too.
    if (fs[0] < fs[1])
        consider(golden_section(f, xs[0], xs[1], widthGoal));
    if (fs[kScan - 1] < fs[kScan - 2])
        consider(golden_section(f, xs[kScan - 2], xs[kScan - 1], widthGoal));

    return {bestX, bestF};
}

PlaneMin minimize_2d(const std::function<double(double, double)>& f,
                     const Box& box, const Tolerance& tol) {
    if (!(box.xhi > box.xlo) || !(box.yhi > box.ylo))
        throw DomainError("minimize_2d: empty box");
    constexpr int kGrid = 33;
    constexpr int kSeeds = 5;
    const double sx = box.xhi - box.xlo;
    const double sy = box.yhi - box.ylo;

    struct Cell {
        double x, y, v;
    };
    std::vector<Cell> cells;
    cells.reserve(kGrid * kGrid);
    for (int i = 0; i < kGrid; ++i) {
        const double x = box.xlo + sx * static_cast<double>(i) / (kGrid - 1);
        for (int j = 0; j < kGrid; ++j) {
            const double y = box.ylo + sy * static_cast<double>(j) / (kGrid - 1);
            cells.push_back({x, y, f(x, y)});
        }
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.v != b.v)
            return a.v < b.v;
        if (a.x != b.x)
            return a.x < b.x;
        return a.y < b.y;
    });

    const double widthGoal = std::max(1e-8 * std::max(sx, sy), tol.abs);
    PlaneMin best{cells[0].x, cells[0].y, cells[0].v};
    const int nSeeds = std::min<int>(kSeeds, static_cast<int>(cells.size()));
    for (int s = 0; s < nSeeds; ++s) {
        double cx = cells[s].x;
        double cy = cells[s].y;
        double cv = cells[s].v;
        const double stepX = sx / (kGrid - 1);
        const double stepY = sy / (kGrid - 1);
        for (int round = 0; round < 60; ++round) {
            const double px = cx, py = cy;
            double alo = std::max(box.xlo, cx - 1.5 * stepX);
            double ahi = std::min(box.xhi, cx + 1.5 * stepX);
            cx = golden_section([&](double x) { return f(x, cy); }, alo, ahi, widthGoal);
            double blo = std::max(box.ylo, cy - 1.5 * stepY);
            double bhi = std::min(box.yhi, cy + 1.5 * stepY);
            cy = golden_section([&](double y) { return f(cx, y); }, blo, bhi, widthGoal);
            cv = f(cx, cy);
            if (std::abs(cx - px) < widthGoal && std::abs(cy - py) < widthGoal)
                break;
        }
        if (cv < best.value)
            best = {cx, cy, cv};
    }
    return best;
}

double refine_root(const std::function<double(double)>& f, double lo,
                   double hi, const Tolerance& tol) {
    if (!(hi >= lo))
        throw DomainError("refine_root: inverted interval");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw NoSignChangeError("refine_root: no sign change on the interval");

    const double widthGoal = std::max(1e-10 * (hi - lo), tol.abs * 1e-4);
    double a = lo, b = hi;
    for (int i = 0; i < tol.maxIter && (b - a) > widthGoal; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0)
            return m;
        if ((fm > 0.0) == (flo > 0.0)) {
            a = m;
            flo = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace pingplan::numerics
