#ifndef KGCOMP_COMPARISON_HPP
#define KGCOMP_COMPARISON_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kgcomp/numerics.hpp"
#include "kgcomp/potential.hpp"
#include "kgcomp/solver.hpp"

namespace kgcomp {

class ScenarioMismatch : public std::runtime_error {
public:
    explicit ScenarioMismatch(const std::string& what) : std::runtime_error(what) {}
};

class WeightUnavailable : public std::runtime_error {
public:
    explicit WeightUnavailable(const std::string& what) : std::runtime_error(what) {}
};

enum class Scenario {
    VectorOnly1D,
    VectorOnlyRadial,
    SpinCoupled,
    EqualVectorDiffScalar,
    EqualScalarDiffVector,
};

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

/// Two problems sharing mass, geometry and node target 0, whose potentials
/// differ according to the scenario.
struct ComparisonPair {
    ProblemSpec problem_a;
    ProblemSpec problem_b;
    Scenario scenario = Scenario::VectorOnlyRadial;

    /// Throws ScenarioMismatch unless the pair is consistent with the scenario.
    void validate() const;
    /// V_b - V_a for the scenarios comparing vectors, S_b - S_a for
    /// EqualVectorDiffScalar.
    double difference(double r) const;

    static ComparisonPair from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;
};

enum class KernelKind {
    Unit,               // nu
    GroundState,        // mu: phi_j weight (1-D)
    RadialPower,        // rho/xi/chi: t^{d-1}
    RadialHalfPowerPsi  // eta/zeta/lambda: psi_j t^{(d-1)/2}
};

struct WeightKernel {
    KernelKind kind = KernelKind::Unit;
    char j = 'b';  // which ground state supplies the weight, when one does

    static WeightKernel unit() { return {KernelKind::Unit, 'b'}; }
    static WeightKernel ground_state(char j) { return {KernelKind::GroundState, j}; }
    static WeightKernel radial_power() { return {KernelKind::RadialPower, 'b'}; }
    static WeightKernel radial_half_power_psi(char j) { return {KernelKind::RadialHalfPowerPsi, j}; }
    bool needs_wavefunction() const {
        return kind == KernelKind::GroundState || kind == KernelKind::RadialHalfPowerPsi;
    }
    std::string name() const;
};

/// Resolved multiplicative weight w(r), with a record of where any
/// wave-function factor came from.
struct ResolvedWeight {
    ScalarFn fn;
    std::string source;  // "unit", "power", "closed_form", "numeric"
    std::shared_ptr<const BoundState> state;  // kept alive for numeric weights
};

ResolvedWeight resolve_weight(const ComparisonPair& pair, const WeightKernel& kernel);

struct CumulativeDifference {
    WeightKernel kernel;
    Grid grid;
    std::vector<double> values;
    double min_value = 0.0;
    double min_radius = 0.0;
    double truncation_radius = 0.0;
    double tail_bound = 0.0;  // |integrand| mass probed beyond the truncation
    int tail_sign = 0;        // sign of the difference beyond the truncation
};

struct CrossingSet {
    std::vector<double> radii;
    std::vector<double> interval_areas;  // filled by interval_area_sequence
};

CrossingSet find_crossings(const ComparisonPair& pair, const Grid& scan);
CrossingSet find_crossings(const ComparisonPair& pair);

CumulativeDifference cumulative_difference(const ComparisonPair& pair, const WeightKernel& kernel,
                                           const Grid& grid);
CumulativeDifference cumulative_difference(const ComparisonPair& pair, const WeightKernel& kernel);

struct IntervalAreas {
    std::vector<double> areas;  // leading [0, r_1] interval first, tail last
    bool nonincreasing = false;
};

IntervalAreas interval_area_sequence(const ComparisonPair& pair, const WeightKernel& kernel,
                                     const CrossingSet& crossings);

enum class Prediction { AOrdered, Inconclusive };

struct NumericCheck {
    double e_a = 0.0;
    double e_b = 0.0;
    bool holds = false;
    double identity_lhs = 0.0;
    double identity_rhs = 0.0;
    double identity_residual = 0.0;
};

struct LabeledReport {
    std::string label;
    ConditionReport report;
};

struct OrderingCertificate {
    Scenario scenario = Scenario::VectorOnlyRadial;
    std::string theorem;  // "Basic", "T1".."T11", "" when inconclusive
    std::optional<int> corollary_crossings;
    bool adjusted_corollary = false;
    std::optional<char> weight_j;
    std::string psi_source;
    std::vector<LabeledReport> condition_reports;
    std::optional<CumulativeDifference> cumulative;
    CrossingSet crossings;
    std::vector<double> interval_areas;
    Prediction predicted = Prediction::Inconclusive;
    std::optional<NumericCheck> numeric;
    std::vector<std::string> notes;

    nlohmann::ordered_json to_json() const;
};

/// Absolute floor for cumulative-minimum nonnegativity decisions.
inline constexpr double kAreaTol = 1e-9;

/// Tries the scenario's theorems in order (pointwise ordering, power-weight,
/// wave-function-weight, crossing corollaries) and returns the first that
/// fires, or an Inconclusive certificate.
OrderingCertificate certify(const ComparisonPair& pair,
                            const std::optional<std::string>& requested = std::nullopt);

/// Solves both problems and attaches eigenvalues, the E_a <= E_b check, and
/// the comparison-identity residual.  Downgrades the prediction when an
/// eigenvalue falls outside [0, m).
OrderingCertificate numeric_confirm(const ComparisonPair& pair, OrderingCertificate cert,
                                    const SolverOptions& options = {});

}  // namespace kgcomp

#endif  // KGCOMP_COMPARISON_HPP
