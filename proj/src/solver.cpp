#include "kgcomp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace kgcomp {

double Geometry::q_coefficient() const {
    if (one_dim) return 0.0;
    return 0.25 * (2.0 * l + d - 1.0) * (2.0 * l + d - 3.0);
}

double ProblemSpec::scalar_value(double r) const {
    if (std::holds_alternative<ScalarNone>(scalar)) return 0.0;
    if (const auto* ind = std::get_if<ScalarIndependent>(&scalar)) return ind->potential.eval(r);
    return std::get<ScalarCoupled>(scalar).s * vector_pot.eval(r);
}

double ProblemSpec::lemma_coefficient(double r, double E) const {
    const double V = vector_pot.eval(geometry.one_dim ? std::abs(r) : r);
    if (std::holds_alternative<ScalarNone>(scalar)) {
        const double em = E - V;
        return m * m - em * em;
    }
    if (const auto* coup = std::get_if<ScalarCoupled>(&scalar))
        return m * m - E * E + 2.0 * V * (E + coup->s * m);
    const double S = std::get<ScalarIndependent>(scalar).potential.eval(r);
    const double ms = m + S, em = E - V;
    return ms * ms - em * em;
}

double ProblemSpec::coefficient(double r, double E) const {
    double f = lemma_coefficient(r, E);
    if (!geometry.one_dim) {
        const double q = geometry.q_coefficient();
        if (q != 0.0) f += q / (r * r);
    }
    return f;
}

nlohmann::ordered_json SolverOptions::to_json() const {
    nlohmann::ordered_json j;
    j["match_tol"] = match_tol;
    j["ode_tol"] = ode_tol;
    j["coarse_samples"] = coarse_samples;
    j["r_inf_override"] = r_inf_override ? nlohmann::ordered_json(*r_inf_override)
                                         : nlohmann::ordered_json(nullptr);
    return j;
}

nlohmann::ordered_json ProblemSpec::to_json() const {
    nlohmann::ordered_json j;
    j["m"] = m;
    nlohmann::ordered_json g;
    if (geometry.one_dim) {
        g["type"] = "one_dim_even";
    } else {
        g["type"] = "radial";
        g["d"] = geometry.d;
        g["l"] = geometry.l;
    }
    j["geometry"] = g;
    j["node_target"] = node_target;
    j["vector"] = vector_pot.to_json();
    if (const auto* ind = std::get_if<ScalarIndependent>(&scalar)) {
        nlohmann::ordered_json s;
        s["mode"] = "independent";
        s["potential"] = ind->potential.to_json();
        j["scalar"] = s;
    } else if (const auto* c = std::get_if<ScalarCoupled>(&scalar)) {
        nlohmann::ordered_json s;
        s["mode"] = "coupled";
        s["s"] = c->s;
        j["scalar"] = s;
    } else {
        j["scalar"] = nullptr;
    }
    return j;
}

ProblemSpec ProblemSpec::from_json(const nlohmann::json& j) {
    ProblemSpec p;
    p.m = j.at("m").get<double>();
    if (!(p.m > 0.0)) throw DomainError("mass must be > 0");
    const auto& g = j.at("geometry");
    const std::string type = g.at("type").get<std::string>();
    if (type == "one_dim_even") {
        p.geometry = Geometry::one_dim_even();
    } else if (type == "radial") {
        const int d = g.at("d").get<int>();
        const int l = g.contains("l") ? g.at("l").get<int>() : 0;
        if (d < 2) throw DomainError("radial geometry needs d >= 2");
        if (l < 0) throw DomainError("angular momentum l must be >= 0");
        p.geometry = Geometry::radial(d, l);
    } else {
        throw DomainError("unknown geometry type: " + type);
    }
    if (j.contains("node_target")) p.node_target = j.at("node_target").get<int>();
    if (p.node_target < 0) throw DomainError("node_target must be >= 0");
    p.vector_pot = PotentialSpec::from_json(j.at("vector"));
    if (j.contains("scalar") && !j.at("scalar").is_null()) {
        const auto& s = j.at("scalar");
        const std::string mode = s.at("mode").get<std::string>();
        if (mode == "independent") {
            p.scalar = ScalarIndependent{PotentialSpec::from_json(s.at("potential"))};
        } else if (mode == "coupled") {
            const int sv = s.at("s").get<int>();
            if (sv != 1 && sv != -1) throw DomainError("coupled scalar sign must be +1 or -1");
            p.scalar = ScalarCoupled{sv};
        } else {
            throw DomainError("unknown scalar mode: " + mode);
        }
    }
    return p;
}

SolverOptions SolverOptions::from_json(const nlohmann::json& j) {
    SolverOptions o;
    if (j.contains("match_tol")) o.match_tol = j.at("match_tol").get<double>();
    if (j.contains("ode_tol")) o.ode_tol = j.at("ode_tol").get<double>();
    if (j.contains("coarse_samples")) o.coarse_samples = j.at("coarse_samples").get<int>();
    if (j.contains("r_inf_override") && !j.at("r_inf_override").is_null())
        o.r_inf_override = j.at("r_inf_override").get<double>();
    return o;
}

namespace {

constexpr double kOriginOffset = 1e-8;
constexpr double kTailLogSuppression = 34.0;  // exp(-34) ~ 1.7e-15
constexpr double kRinfCap = 2000.0;

// 4-point Gauss-Legendre on [-1, 1].
constexpr double kGx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                           0.8611363115940526};
constexpr double kGw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                           0.3478548451374538};

double hermite_eval(double r, double r0, double y0, double d0, double r1, double y1, double d1,
                    bool derivative) {
    const double h = r1 - r0;
    const double t = (r - r0) / h;
    const double t2 = t * t, t3 = t2 * t;
    if (!derivative) {
        return y0 * (2 * t3 - 3 * t2 + 1) + d0 * h * (t3 - 2 * t2 + t) + y1 * (-2 * t3 + 3 * t2) +
               d1 * h * (t3 - t2);
    }
    return (y0 * (6 * t2 - 6 * t) + d0 * h * (3 * t2 - 4 * t + 1) + y1 * (-6 * t2 + 6 * t) +
            d1 * h * (3 * t2 - 2 * t)) /
           h;
}

struct SolveContext {
    const ProblemSpec& p;
    const SolverOptions& opts;
    double r_pot_tiny;   // |V| (and |S|) below 1e-12 beyond this radius
    double r0;
    double p_indicial;   // psi ~ r^p near origin (radial)

    double kappa_floor(double E) const {
        const double k2 = p.m * p.m - E * E;
        return std::sqrt(std::max(k2, 1e-30));
    }

    /// Radius beyond which the potentials are negligible against kappa^2.
    double potential_edge(double E) const {
        const double kap = kappa_floor(E);
        const double thresh = std::max(1e-12, 0.01 * kap * kap);
        double r = 1.0;
        auto small = [&](double rr) {
            double v = std::abs(p.vector_pot.eval(rr));
            if (const auto* ind = std::get_if<ScalarIndependent>(&p.scalar))
                v = std::max(v, std::abs(ind->potential.eval(rr)));
            return v < thresh;
        };
        while (r < 300.0 && !small(r)) r *= 1.2;
        return r;
    }

    double r_inf(double E) const {
        if (opts.r_inf_override) return *opts.r_inf_override;
        const double kap = kappa_floor(E);
        return std::min(potential_edge(E) + kTailLogSuppression / kap, kRinfCap);
    }

    OdeState start_state() const {
        if (p.geometry.one_dim) return {0.0, 1.0, 0.0};
        const double y = std::pow(r0, p_indicial);
        return {r0, y, p_indicial * y / r0};
    }

    CoeffFn coeff_at(double E) const {
        return [this, E](double r) { return p.coefficient(r, E); };
    }

    int count_nodes(double E) const {
        IvpOptions io;
        io.tol = opts.ode_tol;
        io.renorm_threshold = 1e100;
        io.record_trajectory = false;
        const auto res = integrate_ivp(coeff_at(E), start_state(), r_inf(E), io);
        return res.sign_changes;
    }

    /// Turning radius: first - to + sign change of the lemma-form coefficient.
    std::optional<double> turning_radius(double E, double rmax) const {
        const double lo = std::max(r0, 1e-6);
        const Grid scan = Grid::log_spaced(lo, rmax, 400);
        double prev = p.lemma_coefficient(scan.points[0], E);
        for (std::size_t i = 1; i < scan.points.size(); ++i) {
            const double cur = p.lemma_coefficient(scan.points[i], E);
            if (prev < 0.0 && cur >= 0.0) {
                auto g = [this, E](double r) { return p.lemma_coefficient(r, E); };
                return find_root(g, scan.points[i - 1], scan.points[i], 1e-12);
            }
            prev = cur;
        }
        return std::nullopt;
    }

    double match_radius(double E) const {
        const double R = r_inf(E);
        if (auto rhat = turning_radius(E, R))
            if (*rhat > 4.0 * std::max(r0, 1e-8) && *rhat < 0.9 * R) return *rhat;
        // fall back to the most negative point of the vector potential
        const Grid scan = Grid::log_spaced(std::max(r0, 1e-6), std::min(R, 50.0), 200);
        double best = scan.points[0], vbest = p.vector_pot.eval(scan.points[0]);
        for (double r : scan.points)
            if (p.vector_pot.eval(r) < vbest) {
                vbest = p.vector_pot.eval(r);
                best = r;
            }
        if (best > 4.0 * std::max(r0, 1e-8) && best < 0.9 * R) return best;
        return std::min(1.0, 0.5 * R);
    }

    struct Branches {
        OdeState outward, inward;
        bool ok = false;
    };

    Branches shoot_both(double E, double rm) const {
        Branches b;
        IvpOptions io;
        io.tol = opts.ode_tol;
        io.renorm_threshold = 1e100;
        io.record_trajectory = false;
        const double R = r_inf(E);
        b.outward = integrate_ivp(coeff_at(E), start_state(), rm, io).last;
        const double f_end = p.coefficient(R, E);
        const double kap_end = std::sqrt(std::max(f_end, 0.25 * kappa_floor(E) * kappa_floor(E)));
        b.inward = integrate_ivp(coeff_at(E), {R, 1.0, -kap_end}, rm, io).last;
        b.ok = std::isfinite(b.outward.value) && std::isfinite(b.inward.value);
        return b;
    }

    /// Scaled log-derivative mismatch at the matching radius.
    double mismatch(double E, double rm) const {
        const Branches b = shoot_both(E, rm);
        if (!b.ok || b.outward.value == 0.0 || b.inward.value == 0.0)
            return std::numeric_limits<double>::quiet_NaN();
        const double dout = b.outward.derivative / b.outward.value;
        const double din = b.inward.derivative / b.inward.value;
        return (dout - din) / (1.0 + std::abs(dout) + std::abs(din));
    }
};

}  // namespace

double BoundState::eval(double r) const {
    const auto& pts = grid.points;
    if (r <= pts.front()) return psi.front();
    if (r >= pts.back()) return psi.back();
    const auto it = std::upper_bound(pts.begin(), pts.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - pts.begin()) - 1;
    return hermite_eval(r, pts[i], psi[i], dpsi[i], pts[i + 1], psi[i + 1], dpsi[i + 1], false);
}

double BoundState::eval_derivative(double r) const {
    const auto& pts = grid.points;
    if (r <= pts.front()) return dpsi.front();
    if (r >= pts.back()) return dpsi.back();
    const auto it = std::upper_bound(pts.begin(), pts.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - pts.begin()) - 1;
    return hermite_eval(r, pts[i], psi[i], dpsi[i], pts[i + 1], psi[i + 1], dpsi[i + 1], true);
}

void BoundState::write_csv(std::ostream& os) const {
    os << "r,psi\n";
    os << std::setprecision(15);
    for (std::size_t i = 0; i < grid.points.size(); ++i)
        os << grid.points[i] << "," << psi[i] << "\n";
}

namespace {

double norm_integral(const BoundState& st) {
    double total = 0.0;
    const auto& pts = st.grid.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        const double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
        double seg = 0.0;
        for (int g = 0; g < 4; ++g) {
            const double r = mid + hw * kGx[g];
            const double y = hermite_eval(r, a, st.psi[i], st.dpsi[i], b, st.psi[i + 1],
                                          st.dpsi[i + 1], false);
            seg += kGw[g] * y * y;
        }
        total += hw * seg;
    }
    return total;
}

}  // namespace

BoundState solve(const ProblemSpec& p, const SolverOptions& options) {
    if (!(p.m > 0.0)) throw std::invalid_argument("solve: mass must be > 0");
    if (p.node_target < 0) throw std::invalid_argument("solve: node target must be >= 0");
    if (!p.geometry.one_dim && p.geometry.d < 2)
        throw std::invalid_argument("solve: radial mode requires d >= 2");

    SolveContext ctx{p, options, 0.0, p.geometry.one_dim ? 0.0 : kOriginOffset,
                     p.geometry.one_dim ? 0.0 : 0.5 * (2.0 * p.geometry.l + p.geometry.d - 1.0)};

    const double m = p.m;
    const double eps = 1e-9 * m;
    const int n = p.node_target;

    if (p.vector_pot.family == Family::Zero && !p.has_scalar())
        throw NoBoundState("solve: free particle has no discrete spectrum");

    // Coarse sweep: bracket the n -> n+1 node-count transition.
    double lo = 0.0, hi = 0.0;
    bool found = false;
    for (int samples = std::max(options.coarse_samples, 8); samples <= 16 * options.coarse_samples;
         samples *= 4) {
        double e_prev = -m + eps;
        int n_prev = ctx.count_nodes(e_prev);
        for (int i = 1; i < samples && !found; ++i) {
            const double e = -m + eps + (2.0 * m - 2.0 * eps) * i / (samples - 1.0);
            const int ncur = ctx.count_nodes(e);
            if (n_prev <= n && ncur >= n + 1) {
                lo = e_prev;
                hi = e;
                found = true;
            }
            e_prev = e;
            n_prev = ncur;
        }
        if (found) break;
    }
    if (!found)
        throw NoBoundState("solve: no energy in the spectral window reaches node count " +
                           std::to_string(n + 1));

    // Narrow by bisection on the node count, then refine on the two-sided
    // log-derivative mismatch.
    while (hi - lo > 1e-4 * m) {
        const double mid = 0.5 * (lo + hi);
        if (ctx.count_nodes(mid) <= n)
            lo = mid;
        else
            hi = mid;
    }

    const double rm = ctx.match_radius(0.5 * (lo + hi));
    double energy;
    const double glo = ctx.mismatch(lo, rm);
    const double ghi = ctx.mismatch(hi, rm);
    if (std::isfinite(glo) && std::isfinite(ghi) && glo * ghi <= 0.0) {
        energy = find_root([&ctx, rm](double e) { return ctx.mismatch(e, rm); }, lo, hi, 1e-15);
    } else {
        // mismatch did not bracket (node at the match point, or overflow);
        // continue the node bisection down to rounding level
        while (hi - lo > 8.0 * std::numeric_limits<double>::epsilon() * m) {
            const double mid = 0.5 * (lo + hi);
            if (ctx.count_nodes(mid) <= n)
                lo = mid;
            else
                hi = mid;
        }
        energy = 0.5 * (lo + hi);
    }

    if (!(energy > -m && energy < m))
        throw NoConvergence("solve: energy left the spectral window; bracket [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");

    BoundState st;
    st.energy = energy;
    st.kappa = std::sqrt(std::max(m * m - energy * energy, 0.0));
    const double R = ctx.r_inf(energy);

    // Sample grid: log-spaced through the origin region, then uniform with a
    // step resolving both the potential region and the exponential tail.
    std::vector<double>& pts = st.grid.points;
    const double kap = std::max(st.kappa, 1e-6);
    const double knee = p.geometry.one_dim ? 0.0 : std::min(0.5, 0.1 * R);
    if (!p.geometry.one_dim) {
        const int nlog = 150;
        const double ls = std::log(ctx.r0), le = std::log(knee);
        for (int i = 0; i < nlog; ++i) pts.push_back(std::exp(ls + (le - ls) * i / nlog));
    }
    const double fine_end = std::min(R, std::max(10.0, ctx.potential_edge(energy)));
    // Stored-grid spacing sets the cubic-Hermite interpolation floor (~h^4),
    // so tighter ODE tolerances also densify the grid.
    const double refine = std::clamp(std::pow(options.ode_tol / 1e-10, 0.25), 0.05, 1.0);
    const double h1 = std::min(0.25, 0.1 / kap) * refine;
    for (double r = knee; r < fine_end; r += h1) pts.push_back(r);
    const double h2 = 0.1 / kap * refine;
    for (double r = fine_end; r < R - 0.5 * h2; r += h2) pts.push_back(r);
    pts.push_back(R);
    st.grid.start = pts.front();
    st.grid.end = pts.back();

    // Integrate outward to the match radius and inward from R, landing on
    // every grid point, then splice with value continuity at the match point.
    std::size_t im = 0;
    while (im + 1 < pts.size() && pts[im + 1] < rm) ++im;
    IvpOptions io;
    io.tol = options.ode_tol;
    io.record_trajectory = false;

    const std::size_t np = pts.size();
    st.psi.resize(np);
    st.dpsi.resize(np);
    const auto coeff = ctx.coeff_at(energy);

    OdeState cur = ctx.start_state();
    st.psi[0] = cur.value;
    st.dpsi[0] = cur.derivative;
    for (std::size_t i = 1; i <= im; ++i) {
        cur = integrate_ivp(coeff, cur, pts[i], io).last;
        st.psi[i] = cur.value;
        st.dpsi[i] = cur.derivative;
    }
    const OdeState out_at_match = cur;

    const double f_end = p.coefficient(R, energy);
    OdeState icur{R, 1.0, -std::sqrt(std::max(f_end, 0.25 * kap * kap))};
    st.psi[np - 1] = icur.value;
    st.dpsi[np - 1] = icur.derivative;
    for (std::size_t i = np - 1; i > im + 1;) {
        --i;
        icur = integrate_ivp(coeff, icur, pts[i], io).last;
        st.psi[i] = icur.value;
        st.dpsi[i] = icur.derivative;
    }
    const OdeState in_at_match = integrate_ivp(coeff, icur, pts[im], io).last;

    if (in_at_match.value == 0.0 || out_at_match.value == 0.0)
        throw NoConvergence("solve: wave function vanishes at the match radius");
    const double scale_in = out_at_match.value / in_at_match.value;
    for (std::size_t i = im + 1; i < np; ++i) {
        st.psi[i] *= scale_in;
        st.dpsi[i] *= scale_in;
    }

    {
        const double dout = out_at_match.derivative / out_at_match.value;
        const double din = in_at_match.derivative / in_at_match.value;
        st.match_mismatch = std::abs(dout - din) / (1.0 + std::abs(dout) + std::abs(din));
    }

    // Fix overall sign (psi >= 0 near the origin), then normalize.
    double peak = 0.0;
    for (double v : st.psi) peak = std::max(peak, std::abs(v));
    double lead = 0.0;
    for (double v : st.psi)
        if (std::abs(v) > 1e-8 * peak) {
            lead = v;
            break;
        }
    const double flip = (lead < 0.0) ? -1.0 : 1.0;
    const double nrm = std::sqrt(norm_integral(st));
    for (std::size_t i = 0; i < np; ++i) {
        st.psi[i] *= flip / nrm;
        st.dpsi[i] *= flip / nrm;
    }
    st.norm_residual = std::abs(norm_integral(st) - 1.0);

    int nodes = 0;
    double sign_prev = 0.0;
    for (std::size_t i = 1; i + 1 < np; ++i) {
        const double v = st.psi[i];
        if (std::abs(v) < 1e-12) continue;  // ignore grazing values near nodes
        const double sg = v > 0.0 ? 1.0 : -1.0;
        if (sign_prev != 0.0 && sg != sign_prev) ++nodes;
        sign_prev = sg;
    }
    st.nodes = nodes;

    if (auto rhat = ctx.turning_radius(energy, R)) st.f_sign_change = *rhat;

    if (!p.geometry.one_dim && p.geometry.d == 2) {
        const auto caveat = [&]() {
            const double v0 = p.vector_pot.origin_limit();
            if (const auto* coup = std::get_if<ScalarCoupled>(&p.scalar))
                return coup->s * v0 < -0.5 * m;
            return v0 < -m;
        }();
        if (!caveat)
            st.warnings.push_back(
                "d=2 with bounded potential: origin-depth caveat not met; the nodeless-state "
                "monotonicity property is not guaranteed");
    }

    st.converged = st.nodes == n && st.match_mismatch < std::max(options.match_tol, 1e-7);
    if (st.nodes != n)
        throw NoConvergence("solve: converged state has " + std::to_string(st.nodes) +
                            " nodes, expected " + std::to_string(n));
    return st;
}

double closed_form_hulthen_coupled(double beta, double b, double m) {
    const double c1 = beta * b;
    const double c0 = beta * b * m - 0.5 / b;
    // (c1 E + c0)^2 = m^2 - E^2, physical branch with kappa > 0 and 0 <= E < m
    const double qa = 1.0 + c1 * c1, qb = 2.0 * c1 * c0, qc = c0 * c0 - m * m;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) throw NoPhysicalRoot("hulthen closed form: no real root");
    for (double root : {(-qb + std::sqrt(disc)) / (2.0 * qa), (-qb - std::sqrt(disc)) / (2.0 * qa)}) {
        if (root < 0.0 || root >= m) continue;
        const double kap = c1 * root + c0;
        if (kap <= 0.0) continue;
        if (std::abs(kap - std::sqrt(m * m - root * root)) < 1e-9 * m) return root;
    }
    throw NoPhysicalRoot("hulthen closed form: no root satisfies the unsquared relation in [0, m)");
}

double closed_form_hulthen_wavefunction(double beta, double b, double m, double E, double r) {
    if (r <= 0.0) throw DomainError("hulthen wavefunction: r must be > 0");
    if (E < 0.0 || E >= m) throw DomainError("hulthen wavefunction: E must be in [0, m)");
    (void)beta;
    const double kap = std::sqrt(m * m - E * E);
    return std::exp(-kap * r) * std::pow(-std::expm1(-r / b), 1.5) / r;
}

MonotoneCheck check_monotone_lemma(const BoundState& state, const Geometry& geometry) {
    MonotoneCheck chk;
    const auto& pts = state.grid.points;
    // l > 0 maps to the (d + 2l, 0) problem, whose ratio uses r^{(d+2l-1)/2}.
    const double half_power =
        geometry.one_dim ? 0.0 : 0.5 * (geometry.d + 2.0 * geometry.l - 1.0);
    std::vector<double> g(pts.size());
    double scale = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double r = pts[i];
        g[i] = (half_power == 0.0) ? state.psi[i] : state.psi[i] / std::pow(r, half_power);
        scale = std::max(scale, std::abs(g[i]));
    }
    double worst = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double slope = (g[i] - g[i - 1]) / (pts[i] - pts[i - 1]);
        worst = std::max(worst, slope);
    }
    chk.worst_violation = worst;
    chk.holds = worst <= 1e-6 * scale;
    return chk;
}

EquivalencePair equivalence_check(const ProblemSpec& base, const SolverOptions& options) {
    if (base.geometry.one_dim || base.geometry.d < 2)
        throw std::invalid_argument("equivalence_check: requires a radial problem with d >= 2");
    ProblemSpec equiv = base;
    equiv.geometry = Geometry::radial(base.geometry.d + 2 * base.geometry.l, 0);
    EquivalencePair pair;
    pair.e_dl = solve(base, options).energy;
    pair.e_equiv = solve(equiv, options).energy;
    return pair;
}

}  // namespace kgcomp
