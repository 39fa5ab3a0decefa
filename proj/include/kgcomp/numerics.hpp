#ifndef KGCOMP_NUMERICS_HPP
#define KGCOMP_NUMERICS_HPP

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgcomp {

/// Numerical failure modes of the kernel routines.
class NonFinite : public std::runtime_error {
public:
    explicit NonFinite(const std::string& what) : std::runtime_error(what) {}
};

class MaxDepthExceeded : public std::runtime_error {
public:
    explicit MaxDepthExceeded(const std::string& what) : std::runtime_error(what) {}
};

class NoSignChange : public std::runtime_error {
public:
    explicit NoSignChange(const std::string& what) : std::runtime_error(what) {}
};

/// Strictly increasing set of sample positions on [start, end].
struct Grid {
    double start = 0.0;
    double end = 0.0;
    std::vector<double> points;

    static Grid linear(double start, double end, std::size_t n);
    static Grid log_spaced(double start, double end, std::size_t n);
    /// Log-spaced from start to knee, then uniform with step h up to end.
    static Grid composite(double start, double knee, double end, std::size_t n_log, double h);
};

/// One sample of the second-order linear problem y'' = F(r) y.
struct OdeState {
    double position = 0.0;
    double value = 0.0;
    double derivative = 0.0;
};

using CoeffFn = std::function<double(double)>;
using ScalarFn = std::function<double(double)>;

struct IvpOptions {
    double tol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
    /// When > 0, rescale (y, y') whenever max(|y|,|y'|) exceeds this and
    /// accumulate the factor in IvpResult::log_scale.  With rescaling off,
    /// overflow raises NonFinite.
    double renorm_threshold = 0.0;
    bool record_trajectory = true;
};

struct IvpResult {
    std::vector<OdeState> trajectory;  // accepted steps, endpoint included
    OdeState last;
    int sign_changes = 0;  // sign flips of y across accepted steps
    double log_scale = 0.0;
};

/// Integrates y'' = F(r) y from `from.position` to `to` with an embedded
/// Cash-Karp 4(5) pair and proportional step control.
IvpResult integrate_ivp(const CoeffFn& coeff, const OdeState& from, double to,
                        const IvpOptions& opts);
std::vector<OdeState> integrate_ivp(const CoeffFn& coeff, const OdeState& from, double to,
                                    double tolerance);

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance.
double quad(const ScalarFn& f, double a, double b, double tolerance = 1e-10,
            int max_depth = 40);

/// Brent's method on [lo, hi]; requires g(lo) * g(hi) <= 0.
double find_root(const ScalarFn& g, double lo, double hi, double tolerance = 1e-12);

}  // namespace kgcomp

#endif  // KGCOMP_NUMERICS_HPP
