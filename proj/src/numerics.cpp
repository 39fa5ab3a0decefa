#include "kgcomp/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace kgcomp {

Grid Grid::linear(double start, double end, std::size_t n) {
    Grid g;
    g.start = start;
    g.end = end;
    g.points.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        g.points[i] = start + (end - start) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.points.front() = start;
    g.points.back() = end;
    return g;
}

Grid Grid::log_spaced(double start, double end, std::size_t n) {
    Grid g;
    g.start = start;
    g.end = end;
    g.points.resize(n);
    const double ls = std::log(start), le = std::log(end);
    for (std::size_t i = 0; i < n; ++i)
        g.points[i] = std::exp(ls + (le - ls) * static_cast<double>(i) / static_cast<double>(n - 1));
    g.points.front() = start;
    g.points.back() = end;
    return g;
}

Grid Grid::composite(double start, double knee, double end, std::size_t n_log, double h) {
    Grid g;
    g.start = start;
    g.end = end;
    const double ls = std::log(start), lk = std::log(knee);
    for (std::size_t i = 0; i < n_log; ++i)
        g.points.push_back(std::exp(ls + (lk - ls) * static_cast<double>(i) / static_cast<double>(n_log)));
    double r = knee;
    while (r < end - 0.5 * h) {
        g.points.push_back(r);
        r += h;
    }
    g.points.push_back(end);
    g.points.front() = start;
    return g;
}

namespace {

// Cash-Karp 4(5) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 3.0 / 10.0, kA42 = -9.0 / 10.0, kA43 = 6.0 / 5.0;
constexpr double kA51 = -11.0 / 54.0, kA52 = 5.0 / 2.0, kA53 = -70.0 / 27.0, kA54 = 35.0 / 27.0;
constexpr double kA61 = 1631.0 / 55296.0, kA62 = 175.0 / 512.0, kA63 = 575.0 / 13824.0,
                 kA64 = 44275.0 / 110592.0, kA65 = 253.0 / 4096.0;
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 3.0 / 5.0, kC5 = 1.0, kC6 = 7.0 / 8.0;
constexpr double kB1 = 37.0 / 378.0, kB3 = 250.0 / 621.0, kB4 = 125.0 / 594.0, kB6 = 512.0 / 1771.0;
constexpr double kD1 = 2825.0 / 27648.0, kD3 = 18575.0 / 48384.0, kD4 = 13525.0 / 55296.0,
                 kD5 = 277.0 / 14336.0, kD6 = 1.0 / 4.0;

struct Pair2 {
    double y, dy;
};

}  // namespace

IvpResult integrate_ivp(const CoeffFn& coeff, const OdeState& from, double to,
                        const IvpOptions& opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("integrate_ivp: tolerance must be > 0");
    IvpResult res;
    const double dir = (to >= from.position) ? 1.0 : -1.0;
    double r = from.position;
    double y = from.value, dy = from.derivative;
    if (!std::isfinite(y) || !std::isfinite(dy))
        throw NonFinite("integrate_ivp: non-finite initial state");

    const double span = std::abs(to - from.position);
    if (span == 0.0) {
        res.last = from;
        if (opts.record_trajectory) res.trajectory.push_back(from);
        return res;
    }

    double h = dir * std::min(span / 16.0, opts.max_step);
    double sign_prev = (y > 0.0) ? 1.0 : (y < 0.0 ? -1.0 : 0.0);

    if (opts.record_trajectory) res.trajectory.push_back(from);

    auto rhs = [&coeff](double rr, const Pair2& s) -> Pair2 {
        return {s.dy, coeff(rr) * s.y};
    };

    const double hmin = span * 1e-15;
    int guard = 0;
    while (dir * (to - r) > 0.0) {
        if (++guard > 20'000'000)
            throw NonFinite("integrate_ivp: step count exceeded");
        if (dir * (r + h - to) > 0.0) h = to - r;
        Pair2 s0{y, dy};
        Pair2 k1 = rhs(r, s0);
        Pair2 k2 = rhs(r + kC2 * h, {y + h * kA21 * k1.y, dy + h * kA21 * k1.dy});
        Pair2 k3 = rhs(r + kC3 * h, {y + h * (kA31 * k1.y + kA32 * k2.y),
                                     dy + h * (kA31 * k1.dy + kA32 * k2.dy)});
        Pair2 k4 = rhs(r + kC4 * h, {y + h * (kA41 * k1.y + kA42 * k2.y + kA43 * k3.y),
                                     dy + h * (kA41 * k1.dy + kA42 * k2.dy + kA43 * k3.dy)});
        Pair2 k5 = rhs(r + kC5 * h,
                       {y + h * (kA51 * k1.y + kA52 * k2.y + kA53 * k3.y + kA54 * k4.y),
                        dy + h * (kA51 * k1.dy + kA52 * k2.dy + kA53 * k3.dy + kA54 * k4.dy)});
        Pair2 k6 = rhs(r + kC6 * h,
                       {y + h * (kA61 * k1.y + kA62 * k2.y + kA63 * k3.y + kA64 * k4.y + kA65 * k5.y),
                        dy + h * (kA61 * k1.dy + kA62 * k2.dy + kA63 * k3.dy + kA64 * k4.dy +
                                  kA65 * k5.dy)});

        const double y5 = y + h * (kB1 * k1.y + kB3 * k3.y + kB4 * k4.y + kB6 * k6.y);
        const double dy5 = dy + h * (kB1 * k1.dy + kB3 * k3.dy + kB4 * k4.dy + kB6 * k6.dy);
        const double y4 = y + h * (kD1 * k1.y + kD3 * k3.y + kD4 * k4.y + kD5 * k5.y + kD6 * k6.y);
        const double dy4 = dy + h * (kD1 * k1.dy + kD3 * k3.dy + kD4 * k4.dy + kD5 * k5.dy + kD6 * k6.dy);

        const double scale_y = std::abs(y) + std::abs(h * dy) + 1e-30;
        const double scale_dy = std::abs(dy) + std::abs(h * coeff(r) * y) + 1e-30;
        const double err = std::max(std::abs(y5 - y4) / scale_y, std::abs(dy5 - dy4) / scale_dy);

        if (!std::isfinite(y5) || !std::isfinite(dy5)) {
            if (opts.renorm_threshold > 0.0 && std::abs(h) > 2.0 * hmin) {
                h *= 0.25;
                continue;
            }
            throw NonFinite("integrate_ivp: solution overflowed at r = " + std::to_string(r));
        }

        if (err <= opts.tol || std::abs(h) <= hmin) {
            r += h;
            y = y5;
            dy = dy5;
            const double sg = (y > 0.0) ? 1.0 : (y < 0.0 ? -1.0 : 0.0);
            if (sg != 0.0 && sign_prev != 0.0 && sg != sign_prev) ++res.sign_changes;
            if (sg != 0.0) sign_prev = sg;
            if (opts.renorm_threshold > 0.0) {
                const double mag = std::max(std::abs(y), std::abs(dy));
                if (mag > opts.renorm_threshold) {
                    y /= mag;
                    dy /= mag;
                    res.log_scale += std::log(mag);
                }
            }
            if (opts.record_trajectory) res.trajectory.push_back({r, y, dy});
        }

        double fac = 0.9 * std::pow(opts.tol / std::max(err, 1e-300), 0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (std::abs(h) > opts.max_step) h = dir * opts.max_step;
        if (std::abs(h) < hmin) h = dir * hmin;
    }

    res.last = {r, y, dy};
    return res;
}

std::vector<OdeState> integrate_ivp(const CoeffFn& coeff, const OdeState& from, double to,
                                    double tolerance) {
    IvpOptions opts;
    opts.tol = tolerance;
    return integrate_ivp(coeff, from, to, opts).trajectory;
}

namespace {

double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const ScalarFn& f, double a, double fa, double b, double fb, double m,
                        double fm, double whole, double tol, int depth, int max_depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, flm, m, fm);
    const double right = simpson(m, fm, frm, b, fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth)
        throw MaxDepthExceeded("quad: subdivision limit reached near x = " + std::to_string(m));
    return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, max_depth) +
           adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double quad(const ScalarFn& f, double a, double b, double tolerance, int max_depth) {
    if (a > b) throw std::invalid_argument("quad: requires a <= b");
    if (a == b) return 0.0;
    // Seed with a few panels so narrow features away from the midpoint are not missed.
    const int panels = 8;
    double total = 0.0;
    double x0 = a, f0 = f(a);
    for (int i = 1; i <= panels; ++i) {
        const double x1 = a + (b - a) * static_cast<double>(i) / panels;
        const double f1 = f(x1);
        const double xm = 0.5 * (x0 + x1);
        const double fm = f(xm);
        const double whole = simpson(x0, f0, fm, x1, f1);
        total += adaptive_simpson(f, x0, f0, x1, f1, xm, fm, whole, tolerance / panels, 0, max_depth);
        x0 = x1;
        f0 = f1;
    }
    return total;
}

double find_root(const ScalarFn& g, double lo, double hi, double tolerance) {
    double a = lo, b = hi;
    double fa = g(a), fb = g(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw NoSignChange("find_root: g has the same sign at both bracket ends");
    double c = a, fc = fa;
    double d = b - a, e = d;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tolerance;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = g(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

}  // namespace kgcomp
