#include "kgcomp/comparison.hpp"

#include <algorithm>
#include <cmath>

namespace kgcomp {

namespace {

struct ScenarioInfo {
    Scenario scenario;
    const char* name;
    const char* power_theorem;  // unit/power-weight theorem for the scenario
    const char* psi_theorem;    // ground-state-weight theorem
};

const std::vector<ScenarioInfo>& scenario_table() {
    static const std::vector<ScenarioInfo> table = {
        {Scenario::VectorOnly1D, "vector_only_1d", "T1", "T2"},
        {Scenario::VectorOnlyRadial, "vector_only_radial", "T4", "T5"},
        {Scenario::SpinCoupled, "spin_coupled", "T6", "T7"},
        {Scenario::EqualVectorDiffScalar, "equal_vector_diff_scalar", "T8", "T8"},
        {Scenario::EqualScalarDiffVector, "equal_scalar_diff_vector", "T10", "T11"},
    };
    return table;
}

const ScenarioInfo& info_for(Scenario s) {
    for (const auto& e : scenario_table())
        if (e.scenario == s) return e;
    throw std::logic_error("unknown scenario");
}

// Where both potential differences have decayed; scans and truncations stop here.
double truncation_radius(const ComparisonPair& pair) {
    double r = 1.0;
    if (pair.scenario == Scenario::EqualVectorDiffScalar) {
        const auto& sa = std::get<ScalarIndependent>(pair.problem_a.scalar).potential;
        const auto& sb = std::get<ScalarIndependent>(pair.problem_b.scalar).potential;
        r = std::max(sa.decay_radius(1e-10), sb.decay_radius(1e-10));
    } else {
        r = std::max(pair.problem_a.vector_pot.decay_radius(1e-10),
                     pair.problem_b.vector_pot.decay_radius(1e-10));
    }
    return std::min(std::max(r, 20.0), 200.0);
}

constexpr double kOrigin = 1e-8;

}  // namespace

std::string scenario_name(Scenario s) { return info_for(s).name; }

Scenario scenario_from_name(const std::string& name) {
    for (const auto& e : scenario_table())
        if (name == e.name) return e.scenario;
    throw DomainError("unknown scenario: " + name);
}

void ComparisonPair::validate() const {
    const auto& a = problem_a;
    const auto& b = problem_b;
    if (a.m != b.m) throw ScenarioMismatch("mass must match across the pair");
    if (a.geometry.one_dim != b.geometry.one_dim || a.geometry.d != b.geometry.d ||
        a.geometry.l != b.geometry.l)
        throw ScenarioMismatch("geometry must match across the pair");
    if (a.node_target != 0 || b.node_target != 0)
        throw ScenarioMismatch("comparison theorems apply to node-free ground states");
    switch (scenario) {
        case Scenario::VectorOnly1D:
            if (!a.geometry.one_dim) throw ScenarioMismatch("vector_only_1d needs 1-D geometry");
            if (a.has_scalar() || b.has_scalar())
                throw ScenarioMismatch("vector_only_1d admits no scalar potential");
            break;
        case Scenario::VectorOnlyRadial:
            if (a.geometry.one_dim) throw ScenarioMismatch("vector_only_radial needs d >= 2");
            if (a.has_scalar() || b.has_scalar())
                throw ScenarioMismatch("vector_only_radial admits no scalar potential");
            break;
        case Scenario::SpinCoupled: {
            if (a.geometry.one_dim) throw ScenarioMismatch("spin_coupled needs d >= 2");
            const auto* ca = std::get_if<ScalarCoupled>(&a.scalar);
            const auto* cb = std::get_if<ScalarCoupled>(&b.scalar);
            if (!ca || !cb || ca->s != cb->s)
                throw ScenarioMismatch("spin_coupled needs S = sV on both sides, same s");
            break;
        }
        case Scenario::EqualVectorDiffScalar: {
            if (a.geometry.one_dim) throw ScenarioMismatch("equal_vector_diff_scalar needs d >= 2");
            if (!std::get_if<ScalarIndependent>(&a.scalar) ||
                !std::get_if<ScalarIndependent>(&b.scalar))
                throw ScenarioMismatch("equal_vector_diff_scalar needs independent scalars");
            if (!(a.vector_pot == b.vector_pot))
                throw ScenarioMismatch("equal_vector_diff_scalar needs identical vector potentials");
            break;
        }
        case Scenario::EqualScalarDiffVector: {
            if (a.geometry.one_dim) throw ScenarioMismatch("equal_scalar_diff_vector needs d >= 2");
            const auto* sa = std::get_if<ScalarIndependent>(&a.scalar);
            const auto* sb = std::get_if<ScalarIndependent>(&b.scalar);
            if (!sa || !sb || !(sa->potential == sb->potential))
                throw ScenarioMismatch("equal_scalar_diff_vector needs identical scalar potentials");
            break;
        }
    }
}

double ComparisonPair::difference(double r) const {
    if (scenario == Scenario::EqualVectorDiffScalar)
        return problem_b.scalar_value(r) - problem_a.scalar_value(r);
    return problem_b.vector_pot.eval(r) - problem_a.vector_pot.eval(r);
}

ComparisonPair ComparisonPair::from_json(const nlohmann::json& j) {
    ComparisonPair pair;
    pair.scenario = scenario_from_name(j.at("scenario").get<std::string>());
    pair.problem_a = ProblemSpec::from_json(j.at("problem_a"));
    pair.problem_b = ProblemSpec::from_json(j.at("problem_b"));
    pair.validate();
    return pair;
}

nlohmann::ordered_json ComparisonPair::to_json() const {
    nlohmann::ordered_json j;
    j["scenario"] = scenario_name(scenario);
    j["problem_a"] = problem_a.to_json();
    j["problem_b"] = problem_b.to_json();
    return j;
}

std::string WeightKernel::name() const {
    switch (kind) {
        case KernelKind::Unit:
            return "unit";
        case KernelKind::GroundState:
            return std::string("ground_state_") + j;
        case KernelKind::RadialPower:
            return "radial_power";
        case KernelKind::RadialHalfPowerPsi:
            return std::string("radial_half_power_psi_") + j;
    }
    return "?";
}

ResolvedWeight resolve_weight(const ComparisonPair& pair, const WeightKernel& kernel) {
    const Geometry geo = pair.problem_a.geometry;
    switch (kernel.kind) {
        case KernelKind::Unit:
            return {[](double) { return 1.0; }, "unit", nullptr};
        case KernelKind::RadialPower: {
            const double p = geo.one_dim ? 0.0 : static_cast<double>(geo.d - 1);
            return {[p](double r) { return std::pow(r, p); }, "power", nullptr};
        }
        case KernelKind::GroundState:
        case KernelKind::RadialHalfPowerPsi:
            break;
    }
    const ProblemSpec& prob = (kernel.j == 'a') ? pair.problem_a : pair.problem_b;
    // The Hulthen spin-symmetric ground state has a closed form; prefer it.
    if (const auto* c = std::get_if<ScalarCoupled>(&prob.scalar);
        c && c->s == +1 && prob.vector_pot.family == Family::Hulthen && !geo.one_dim &&
        geo.d == 3 && geo.l == 0) {
        const double beta = prob.vector_pot.param("beta");
        const double b = prob.vector_pot.param("b");
        double energy;
        try {
            energy = closed_form_hulthen_coupled(beta, b, prob.m);
        } catch (const NoPhysicalRoot&) {
            energy = std::numeric_limits<double>::quiet_NaN();
        }
        if (std::isfinite(energy)) {
            const double m = prob.m;
            // psi * t^{(d-1)/2} with d = 3: the closed form already carries 1/r.
            ScalarFn fn = [beta, b, m, energy](double r) {
                return closed_form_hulthen_wavefunction(beta, b, m, energy, r) * r;
            };
            return {std::move(fn), "closed_form", nullptr};
        }
    }
    std::shared_ptr<const BoundState> state;
    try {
        state = std::make_shared<const BoundState>(solve(prob));
    } catch (const std::exception& e) {
        throw WeightUnavailable(std::string("weight ground state unavailable: ") + e.what());
    }
    const double half_power = geo.one_dim ? 0.0 : 0.5 * static_cast<double>(geo.d - 1);
    ResolvedWeight out;
    out.state = state;
    out.fn = [state, half_power](double r) {
        if (r <= state->grid.start || r >= state->grid.end) return 0.0;
        double v = state->eval(r);
        if (half_power != 0.0) v *= std::pow(r, half_power);
        return v;
    };
    out.source = "numeric";
    return out;
}

CrossingSet find_crossings(const ComparisonPair& pair) {
    return find_crossings(pair, Grid::log_spaced(1e-6, truncation_radius(pair), 4000));
}

CrossingSet find_crossings(const ComparisonPair& pair, const Grid& scan) {
    CrossingSet out;
    auto diff = [&pair](double r) { return pair.difference(r); };
    double prev_r = scan.points.front();
    double prev_v = diff(prev_r);
    for (std::size_t i = 1; i < scan.points.size(); ++i) {
        const double r = scan.points[i];
        const double v = diff(r);
        if (prev_v == 0.0) {
            // Exactly-zero samples come from identical closed forms, not crossings.
        } else if (v != 0.0 && std::signbit(v) != std::signbit(prev_v)) {
            out.radii.push_back(find_root(diff, prev_r, r, 1e-10));
        }
        prev_r = r;
        prev_v = v;
    }
    return out;
}

namespace {

CumulativeDifference cumulative_with_weight(const ComparisonPair& pair, const WeightKernel& kernel,
                                            const ResolvedWeight& w, const Grid& grid) {
    CumulativeDifference out;
    out.kernel = kernel;
    out.grid = grid;
    auto integrand = [&pair, &w](double r) { return pair.difference(r) * w.fn(r); };

    out.values.resize(grid.points.size());
    double acc = quad(integrand, kOrigin, grid.points.front(), 1e-12);
    out.values[0] = acc;
    out.min_value = acc;
    out.min_radius = grid.points.front();
    for (std::size_t i = 1; i < grid.points.size(); ++i) {
        acc += quad(integrand, grid.points[i - 1], grid.points[i], 1e-12);
        out.values[i] = acc;
        if (acc < out.min_value) {
            out.min_value = acc;
            out.min_radius = grid.points[i];
        }
    }
    out.truncation_radius = grid.end;
    out.tail_bound = quad([&integrand](double r) { return std::abs(integrand(r)); }, grid.end,
                          1.5 * grid.end, 1e-12);
    const double tail_probe = pair.difference(1.02 * grid.end);
    out.tail_sign = (tail_probe > 0.0) - (tail_probe < 0.0);
    return out;
}

// Piecewise quadrature over a log partition; weighted-difference integrands
// span many decades of radius and defeat a single adaptive pass.
double quad_log(const ScalarFn& f, double lo, double hi, double tol) {
    const double start = std::max(lo, 1e-6);  // log partition needs lo > 0
    double acc = 0.0;
    if (lo < start) acc += quad(f, lo, start, 0.01 * tol);
    const Grid g = Grid::log_spaced(start, hi, 200);
    for (std::size_t i = 1; i < g.points.size(); ++i)
        acc += quad(f, g.points[i - 1], g.points[i], tol / static_cast<double>(g.points.size()));
    return acc;
}

IntervalAreas areas_with_weight(const ComparisonPair& pair, const ResolvedWeight& w,
                                const CrossingSet& crossings) {
    IntervalAreas out;
    auto abs_integrand = [&pair, &w](double r) { return std::abs(pair.difference(r) * w.fn(r)); };
    std::vector<double> edges;
    edges.push_back(kOrigin);
    edges.insert(edges.end(), crossings.radii.begin(), crossings.radii.end());
    edges.push_back(std::max(truncation_radius(pair),
                             crossings.radii.empty() ? 0.0 : 2.0 * crossings.radii.back()));
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        out.areas.push_back(quad_log(abs_integrand, edges[i], edges[i + 1], 1e-10));
    out.nonincreasing = true;
    for (std::size_t i = 0; i + 1 < out.areas.size(); ++i)
        if (out.areas[i + 1] > out.areas[i] + kAreaTol) out.nonincreasing = false;
    return out;
}

}  // namespace

CumulativeDifference cumulative_difference(const ComparisonPair& pair, const WeightKernel& kernel) {
    const double r_max = truncation_radius(pair);
    return cumulative_difference(pair, kernel, Grid::log_spaced(1e-6, r_max, 800));
}

CumulativeDifference cumulative_difference(const ComparisonPair& pair, const WeightKernel& kernel,
                                           const Grid& grid) {
    return cumulative_with_weight(pair, kernel, resolve_weight(pair, kernel), grid);
}

IntervalAreas interval_area_sequence(const ComparisonPair& pair, const WeightKernel& kernel,
                                     const CrossingSet& crossings) {
    return areas_with_weight(pair, resolve_weight(pair, kernel), crossings);
}

namespace {

nlohmann::ordered_json report_json(const LabeledReport& lr) {
    nlohmann::ordered_json j;
    j["label"] = lr.label;
    const auto& rep = lr.report;
    switch (rep.profile.profile) {
        case Profile::OneDim:
            j["profile"] = "one_dim";
            break;
        case Profile::RadialVector:
            j["profile"] = "radial_vector";
            break;
        case Profile::SpinCoupled:
            j["profile"] = std::string("spin_coupled_s") + (rep.profile.s > 0 ? "+1" : "-1");
            break;
        case Profile::ScalarPositive:
            j["profile"] = "scalar_positive";
            break;
        case Profile::ScalarBoundedNegative:
            j["profile"] = "scalar_bounded_negative";
            break;
    }
    j["passed"] = rep.passed;
    j["monotone_caveat"] = rep.monotone_caveat;
    j["d2_caveat_ok"] = rep.d2_caveat_ok;
    auto viols = nlohmann::ordered_json::array();
    for (const auto& v : rep.violations) {
        nlohmann::ordered_json vj;
        vj["condition"] = v.condition;
        vj["radius"] = v.radius;
        vj["value"] = v.value;
        viols.push_back(vj);
    }
    j["violations"] = viols;
    return j;
}

}  // namespace

nlohmann::ordered_json OrderingCertificate::to_json() const {
    nlohmann::ordered_json j;
    j["scenario"] = scenario_name(scenario);
    j["theorem"] = theorem;
    j["predicted"] = (predicted == Prediction::AOrdered) ? "a_ordered" : "inconclusive";
    if (cumulative) {
        nlohmann::ordered_json mj;
        mj["value"] = cumulative->min_value;
        mj["radius"] = cumulative->min_radius;
        j["cumulative_min"] = mj;
    } else {
        j["cumulative_min"] = nullptr;
    }
    j["crossings"] = crossings.radii;
    j["interval_areas"] = interval_areas;
    if (numeric) {
        nlohmann::ordered_json nj;
        nj["E_a"] = numeric->e_a;
        nj["E_b"] = numeric->e_b;
        nj["holds"] = numeric->holds;
        nj["identity_lhs"] = numeric->identity_lhs;
        nj["identity_rhs"] = numeric->identity_rhs;
        nj["identity_residual"] = numeric->identity_residual;
        j["numeric"] = nj;
    } else {
        j["numeric"] = nullptr;
    }
    if (corollary_crossings)
        j["corollary_crossings"] = *corollary_crossings;
    else
        j["corollary_crossings"] = nullptr;
    j["adjusted_corollary"] = adjusted_corollary;
    if (weight_j)
        j["weight_j"] = std::string(1, *weight_j);
    else
        j["weight_j"] = nullptr;
    j["psi_source"] = psi_source;
    auto reports = nlohmann::ordered_json::array();
    for (const auto& r : condition_reports) reports.push_back(report_json(r));
    j["condition_reports"] = reports;
    if (cumulative) {
        nlohmann::ordered_json cj;
        cj["kernel"] = cumulative->kernel.name();
        cj["limit_value"] = cumulative->values.empty() ? 0.0 : cumulative->values.back();
        cj["truncation_radius"] = cumulative->truncation_radius;
        cj["tail_bound"] = cumulative->tail_bound;
        cj["tail_sign"] = cumulative->tail_sign;
        j["cumulative_detail"] = cj;
    } else {
        j["cumulative_detail"] = nullptr;
    }
    j["notes"] = notes;
    return j;
}

namespace {

// Effective minimum of the cumulative weighted difference over [0, infinity):
// past the truncation the integrand keeps the tail sign, so a negative tail
// can only lower the limit value further.
double effective_min(const CumulativeDifference& c) {
    double m = c.min_value;
    if (c.tail_sign < 0 && !c.values.empty()) m = std::min(m, c.values.back() - c.tail_bound);
    return m;
}

bool pointwise_ordered(const ComparisonPair& pair, double r_max) {
    const Grid scan = Grid::log_spaced(1e-6, r_max, 2000);
    for (double r : scan.points)
        if (pair.difference(r) < -1e-12) return false;
    return true;
}

// Crossing-corollary labeling: for one or two crossings the already-verified
// cumulative minimum is exactly the corollary condition; for n > 2 the
// nonincreasing interval-area sequence is required.  Either way the
// difference must be nonnegative before the first crossing.
void annotate_corollary(OrderingCertificate& cert, const ComparisonPair& pair,
                        const IntervalAreas& areas) {
    if (cert.crossings.radii.empty()) return;
    if (pair.difference(0.5 * cert.crossings.radii.front()) < 0.0) return;
    if (cert.crossings.radii.size() > 2 && !areas.nonincreasing) return;
    cert.corollary_crossings = static_cast<int>(cert.crossings.radii.size());
}

std::vector<LabeledReport> gather_reports(const ComparisonPair& pair) {
    std::vector<LabeledReport> out;
    const double m = pair.problem_a.m;
    const Geometry geo = pair.problem_a.geometry;
    auto push = [&out, m](const std::string& label, const PotentialSpec& p,
                          const ConditionProfile& prof) {
        out.push_back({label, check_conditions(p, prof, m)});
    };
    switch (pair.scenario) {
        case Scenario::VectorOnly1D:
            push("V_a", pair.problem_a.vector_pot, ConditionProfile::one_dim());
            push("V_b", pair.problem_b.vector_pot, ConditionProfile::one_dim());
            break;
        case Scenario::VectorOnlyRadial:
            push("V_a", pair.problem_a.vector_pot, ConditionProfile::radial_vector());
            push("V_b", pair.problem_b.vector_pot, ConditionProfile::radial_vector());
            break;
        case Scenario::SpinCoupled: {
            const int s = std::get<ScalarCoupled>(pair.problem_a.scalar).s;
            push("V_a", pair.problem_a.vector_pot, ConditionProfile::spin_coupled(s));
            push("V_b", pair.problem_b.vector_pot, ConditionProfile::spin_coupled(s));
            break;
        }
        case Scenario::EqualVectorDiffScalar: {
            push("V", pair.problem_a.vector_pot, ConditionProfile::radial_vector());
            const auto& sa = std::get<ScalarIndependent>(pair.problem_a.scalar).potential;
            const auto& sb = std::get<ScalarIndependent>(pair.problem_b.scalar).potential;
            // Either scalar class works for the ordering theorem; report
            // whichever profile both scalars satisfy, preferring the
            // nonnegative one.
            auto ra_pos = check_conditions(sa, ConditionProfile::scalar_positive(), m);
            auto rb_pos = check_conditions(sb, ConditionProfile::scalar_positive(), m);
            if (ra_pos.passed && rb_pos.passed) {
                out.push_back({"S_a", ra_pos});
                out.push_back({"S_b", rb_pos});
            } else {
                push("S_a", sa, ConditionProfile::scalar_bounded_negative());
                push("S_b", sb, ConditionProfile::scalar_bounded_negative());
            }
            break;
        }
        case Scenario::EqualScalarDiffVector: {
            push("V_a", pair.problem_a.vector_pot, ConditionProfile::radial_vector());
            push("V_b", pair.problem_b.vector_pot, ConditionProfile::radial_vector());
            const auto& s = std::get<ScalarIndependent>(pair.problem_a.scalar).potential;
            push("S", s, ConditionProfile::scalar_bounded_negative());
            break;
        }
    }
    // The d = 2 boundedness caveat binds only in two dimensions.
    if (!geo.one_dim && geo.d == 2) {
        for (auto& lr : out)
            if (lr.report.passed && !lr.report.d2_caveat_ok && lr.label[0] == 'V') {
                lr.report.passed = false;
                lr.report.violations.push_back({"d2_boundedness_caveat", 0.0, 0.0});
            }
    }
    return out;
}

}  // namespace

OrderingCertificate certify(const ComparisonPair& pair,
                            const std::optional<std::string>& requested) {
    pair.validate();
    OrderingCertificate cert;
    cert.scenario = pair.scenario;
    cert.condition_reports = gather_reports(pair);
    cert.crossings = find_crossings(pair);

    bool conditions_ok = true;
    for (const auto& lr : cert.condition_reports)
        if (!lr.report.passed) conditions_ok = false;
    if (!conditions_ok) cert.notes.push_back("hypothesis conditions failed on a potential");

    const auto& info = info_for(pair.scenario);
    const double r_max = truncation_radius(pair);
    auto wants = [&requested](const std::string& name) {
        return !requested || *requested == name;
    };

    // Pointwise ordering needs no weight at all, but the profile conditions
    // still back the underlying theorem.
    if (conditions_ok &&
        (wants("Basic") || (pair.scenario == Scenario::EqualVectorDiffScalar && wants("T8")))) {
        if (cert.crossings.radii.empty() && pointwise_ordered(pair, r_max)) {
            cert.theorem = (pair.scenario == Scenario::EqualVectorDiffScalar) ? "T8" : "Basic";
            cert.predicted = Prediction::AOrdered;
            return cert;
        }
    }
    if (pair.scenario == Scenario::EqualVectorDiffScalar) {
        // Only the pointwise scalar theorem covers this scenario.
        cert.theorem.clear();
        cert.predicted = Prediction::Inconclusive;
        if (!cert.crossings.radii.empty())
            cert.notes.push_back("scalar difference changes sign; no weighted form applies");
        return cert;
    }

    // Power-weight theorem (unit weight on the line).
    if (conditions_ok && wants(info.power_theorem)) {
        auto cum = cumulative_difference(pair, pair.problem_a.geometry.one_dim
                                                  ? WeightKernel::unit()
                                                  : WeightKernel::radial_power());
        if (effective_min(cum) >= -kAreaTol) {
            cert.theorem = info.power_theorem;
            cert.cumulative = std::move(cum);
            cert.predicted = Prediction::AOrdered;
            auto areas = interval_area_sequence(pair, cert.cumulative->kernel, cert.crossings);
            cert.interval_areas = areas.areas;
            annotate_corollary(cert, pair, areas);
            return cert;
        }
        cert.notes.push_back("power-weight cumulative dips to " + std::to_string(cum.min_value));
    }

    // Ground-state-weight theorem; try the b weight first, then a.
    if (conditions_ok && wants(info.psi_theorem)) {
        for (char j : {'b', 'a'}) {
            WeightKernel kernel = pair.problem_a.geometry.one_dim
                                      ? WeightKernel::ground_state(j)
                                      : WeightKernel::radial_half_power_psi(j);
            ResolvedWeight w;
            try {
                w = resolve_weight(pair, kernel);
            } catch (const WeightUnavailable& e) {
                cert.notes.push_back(e.what());
                continue;
            }
            CumulativeDifference cum = cumulative_with_weight(
                pair, kernel, w, Grid::log_spaced(1e-6, r_max, 800));
            if (effective_min(cum) >= -kAreaTol) {
                cert.theorem = info.psi_theorem;
                cert.weight_j = j;
                cert.psi_source = w.source;
                cert.cumulative = std::move(cum);
                cert.predicted = Prediction::AOrdered;
                auto areas = areas_with_weight(pair, w, cert.crossings);
                cert.interval_areas = areas.areas;
                annotate_corollary(cert, pair, areas);
                return cert;
            }
            // Single crossing with the difference negative first: the ordering
            // still follows when the weighted integral is nonnegative at
            // infinity (adjusted single-crossing corollary for S = sV).
            // The adjustment is stated for a bounded V_a against an unbounded
            // V_b, where pointwise ordering near the origin is impossible.
            if (pair.scenario == Scenario::SpinCoupled && cert.crossings.radii.size() == 1 &&
                !pair.problem_a.vector_pot.singular_at_origin() &&
                pair.problem_b.vector_pot.singular_at_origin() &&
                pair.difference(0.5 * cert.crossings.radii.front()) <= 0.0 &&
                !cum.values.empty()) {
                double limit = cum.values.back();
                if (cum.tail_sign < 0) limit -= cum.tail_bound;
                if (limit >= -kAreaTol) {
                    cert.theorem = info.psi_theorem;
                    cert.weight_j = j;
                    cert.psi_source = w.source;
                    cert.adjusted_corollary = true;
                    cert.corollary_crossings = 1;
                    cert.cumulative = std::move(cum);
                    cert.predicted = Prediction::AOrdered;
                    auto areas = areas_with_weight(pair, w, cert.crossings);
                    cert.interval_areas = areas.areas;
                    return cert;
                }
            }
            cert.notes.push_back(std::string("weight j=") + j + " cumulative dips to " +
                                 std::to_string(cum.min_value));
        }
    }

    // n-crossing corollary shortcut: a nonincreasing weighted-area sequence
    // with the difference nonnegative before the first crossing keeps the
    // cumulative nonnegative even when the truncated minimum test above was
    // inconclusive (e.g. a truncation landing mid-interval).
    if (conditions_ok && !cert.crossings.radii.empty() && wants(info.power_theorem)) {
        WeightKernel kernel = pair.problem_a.geometry.one_dim ? WeightKernel::unit()
                                                              : WeightKernel::radial_power();
        const ResolvedWeight w = resolve_weight(pair, kernel);
        auto areas = areas_with_weight(pair, w, cert.crossings);
        if (areas.nonincreasing && pair.difference(0.5 * cert.crossings.radii.front()) >= 0.0) {
            cert.theorem = info.power_theorem;
            cert.corollary_crossings = static_cast<int>(cert.crossings.radii.size());
            cert.interval_areas = areas.areas;
            cert.cumulative =
                cumulative_with_weight(pair, kernel, w, Grid::log_spaced(1e-6, r_max, 800));
            cert.predicted = Prediction::AOrdered;
            return cert;
        }
    }

    cert.theorem.clear();
    cert.predicted = Prediction::Inconclusive;
    return cert;
}

OrderingCertificate numeric_confirm(const ComparisonPair& pair, OrderingCertificate cert,
                                    const SolverOptions& options) {
    const BoundState sa = solve(pair.problem_a, options);
    const BoundState sb = solve(pair.problem_b, options);
    NumericCheck chk;
    chk.e_a = sa.energy;
    chk.e_b = sb.energy;
    chk.holds = sa.energy <= sb.energy + 1e-6;

    const double m = pair.problem_a.m;
    const double lo = std::max(sa.grid.start, sb.grid.start);
    const double hi = std::min(sa.grid.end, sb.grid.end);
    const auto& pa = pair.problem_a;
    const auto& pb = pair.problem_b;
    auto va = [&pa](double r) { return pa.vector_pot.eval(r); };
    auto vb = [&pb](double r) { return pb.vector_pot.eval(r); };
    auto prod = [&sa, &sb](double r) { return sa.eval(r) * sb.eval(r); };

    // Both sides of the eigenvalue-difference identity behind the theorems.
    const double ea = sa.energy, eb = sb.energy;
    if (const auto* coupled = std::get_if<ScalarCoupled>(&pa.scalar)) {
        // Coupled S = sV:
        // (E_b - E_a) int W1 psi_a psi_b = w int (V_b - V_a) psi_a psi_b,
        // with W1 = E_a + E_b - V_a - V_b and w = E_a + E_b + 2sm.
        const double w = ea + eb + 2.0 * coupled->s * m;
        chk.identity_lhs = (eb - ea) * quad_log([&](double r) { return (ea + eb - va(r) - vb(r)) * prod(r); },
                                                lo, hi, 1e-10);
        chk.identity_rhs =
            w * quad_log([&](double r) { return (vb(r) - va(r)) * prod(r); }, lo, hi, 1e-10);
    } else if (pa.has_scalar()) {
        // (E_b - E_a) int W1 psi_a psi_b
        //   = int [ (V_b - V_a) W1 + (S_b - S_a) W2 ] psi_a psi_b,
        // with W1 = E_a + E_b - V_a - V_b and W2 = S_a + S_b + 2m.
        auto sa_f = [&pa](double r) { return pa.scalar_value(r); };
        auto sb_f = [&pb](double r) { return pb.scalar_value(r); };
        auto w1 = [&](double r) { return ea + eb - va(r) - vb(r); };
        chk.identity_lhs =
            (eb - ea) * quad_log([&](double r) { return w1(r) * prod(r); }, lo, hi, 1e-10);
        chk.identity_rhs = quad_log(
            [&](double r) {
                const double w2 = sa_f(r) + sb_f(r) + 2.0 * m;
                return ((vb(r) - va(r)) * w1(r) + (sb_f(r) - sa_f(r)) * w2) * prod(r);
            },
            lo, hi, 1e-10);
    } else {
        auto w1 = [&](double r) { return ea + eb - va(r) - vb(r); };
        chk.identity_lhs =
            (eb - ea) * quad_log([&](double r) { return w1(r) * prod(r); }, lo, hi, 1e-10);
        chk.identity_rhs =
            quad_log([&](double r) { return (vb(r) - va(r)) * w1(r) * prod(r); }, lo, hi, 1e-10);
    }
    const double scale = std::max({std::abs(chk.identity_lhs), std::abs(chk.identity_rhs), 1e-12});
    chk.identity_residual = std::abs(chk.identity_lhs - chk.identity_rhs) / scale;

    if (sa.energy < 0.0 || sb.energy < 0.0) {
        if (cert.predicted == Prediction::AOrdered) {
            cert.predicted = Prediction::Inconclusive;
            cert.notes.push_back("eigenvalue below 0: certificate hypotheses need 0 <= E < m");
        }
    }
    cert.numeric = chk;
    return cert;
}

}  // namespace kgcomp
