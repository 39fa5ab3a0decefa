#ifndef KGCOMP_SOLVER_HPP
#define KGCOMP_SOLVER_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kgcomp/numerics.hpp"
#include "kgcomp/potential.hpp"

namespace kgcomp {

class NoBoundState : public std::runtime_error {
public:
    explicit NoBoundState(const std::string& what) : std::runtime_error(what) {}
};

class NoConvergence : public std::runtime_error {
public:
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

class NoPhysicalRoot : public std::runtime_error {
public:
    explicit NoPhysicalRoot(const std::string& what) : std::runtime_error(what) {}
};

/// Even-parity problem on the line, or the reduced radial problem in d >= 2.
struct Geometry {
    bool one_dim = false;
    int d = 3;
    int l = 0;

    static Geometry one_dim_even() { return {true, 1, 0}; }
    static Geometry radial(int d, int l = 0) { return {false, d, l}; }
    /// Centrifugal coefficient Q = (2l+d-1)(2l+d-3)/4 of the reduced equation.
    double q_coefficient() const;
};

/// Scalar-potential mode: none, an independent S(r), or S = s V.
struct ScalarNone {};
struct ScalarIndependent {
    PotentialSpec potential;
};
struct ScalarCoupled {
    int s = +1;  // +1: spin symmetry S = V; -1: pseudo-spin S = -V
};
using ScalarMode = std::variant<ScalarNone, ScalarIndependent, ScalarCoupled>;

struct ProblemSpec {
    double m = 1.0;
    Geometry geometry;
    int node_target = 0;
    PotentialSpec vector_pot;
    ScalarMode scalar = ScalarNone{};

    /// Effective coefficient F(r) of psi'' = F psi at trial energy E,
    /// including the centrifugal Q/r^2 term.
    double coefficient(double r, double E) const;
    /// Lemma-form F without the centrifugal term; its single - to + sign
    /// change locates the turning radius r-hat.
    double lemma_coefficient(double r, double E) const;
    double scalar_value(double r) const;
    bool has_scalar() const { return !std::holds_alternative<ScalarNone>(scalar); }

    nlohmann::ordered_json to_json() const;
    static ProblemSpec from_json(const nlohmann::json& j);
};

struct SolverOptions {
    double match_tol = 1e-10;
    double ode_tol = 1e-10;
    int coarse_samples = 64;
    std::optional<double> r_inf_override;

    nlohmann::ordered_json to_json() const;
    static SolverOptions from_json(const nlohmann::json& j);
};

/// Converged bound state on a grid, with cubic-Hermite evaluation anywhere
/// in [grid.start, grid.end].
struct BoundState {
    double energy = 0.0;
    Grid grid;
    std::vector<double> psi;
    std::vector<double> dpsi;
    int nodes = 0;
    double kappa = 0.0;
    std::optional<double> f_sign_change;
    double norm_residual = 0.0;
    double match_mismatch = 0.0;
    bool converged = false;
    std::vector<std::string> warnings;

    double eval(double r) const;
    double eval_derivative(double r) const;
    void write_csv(std::ostream& os) const;
};

BoundState solve(const ProblemSpec& p, const SolverOptions& options = {});

/// Ground-state energy of the Hulthen potential with S = V from the
/// analytic relation sqrt(m^2 - E^2) = beta*b*(E+m) - 1/(2b).
double closed_form_hulthen_coupled(double beta, double b, double m);

/// The matching (unnormalized) reduced wave function
/// psi_b = exp(-r sqrt(m^2-E^2)) (1 - exp(-r/b))^{3/2} / r.
double closed_form_hulthen_wavefunction(double beta, double b, double m, double E, double r);

struct MonotoneCheck {
    bool holds = false;
    double worst_violation = 0.0;  // max positive slope of psi / r^{(d-1)/2}
};

/// Verifies the nodeless-state monotonicity property: slopes of
/// psi / r^{(d-1)/2} (phi itself in 1-D) are <= tolerance on the grid.
MonotoneCheck check_monotone_lemma(const BoundState& state, const Geometry& geometry);

struct EquivalencePair {
    double e_dl = 0.0;     // E with (d, l) as given
    double e_equiv = 0.0;  // E with (d + 2l, 0)
};

/// Solves the problem and its (d+2l, l=0) transform with the same potential.
EquivalencePair equivalence_check(const ProblemSpec& base, const SolverOptions& options = {});

}  // namespace kgcomp

#endif  // KGCOMP_SOLVER_HPP
