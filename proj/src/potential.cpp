#include "kgcomp/potential.hpp"

#include <cmath>
#include <limits>

namespace kgcomp {

namespace {

struct FamilyInfo {
    Family family;
    const char* name;
    std::vector<std::string> params;
};

const std::vector<FamilyInfo>& family_table() {
    static const std::vector<FamilyInfo> table = {
        {Family::CutoffCoulomb, "cutoff_coulomb", {"alpha", "a"}},
        {Family::SechSquared, "sech_squared", {"beta", "b"}},
        {Family::Yukawa, "yukawa", {"alpha", "a"}},
        {Family::OscillatingYukawa, "oscillating_yukawa", {"alpha", "a", "v", "s", "kappa"}},
        {Family::Hulthen, "hulthen", {"beta", "b"}},
        {Family::SoftCore, "soft_core", {"alpha", "a", "q"}},
        {Family::LaserDressed, "laser_dressed", {"alpha", "a"}},
        {Family::WoodsSaxon, "woods_saxon", {"beta", "b", "R"}},
        {Family::Zero, "zero", {}},
    };
    return table;
}

const FamilyInfo& info_for(Family f) {
    for (const auto& e : family_table())
        if (e.family == f) return e;
    throw std::logic_error("unknown family");
}

}  // namespace

std::string family_name(Family f) { return info_for(f).name; }

Family family_from_name(const std::string& name) {
    for (const auto& e : family_table())
        if (name == e.name) return e.family;
    throw DomainError("unknown potential family: " + name);
}

PotentialSpec::PotentialSpec(Family f, Role r, std::map<std::string, double> p)
    : family(f), role(r), params(std::move(p)) {
    const auto& info = info_for(f);
    for (const auto& name : info.params)
        if (!params.count(name))
            throw DomainError("potential " + std::string(info.name) + " missing parameter " + name);
    for (const char* scale : {"a", "b", "c", "R"})
        if (params.count(scale) && !(params.at(scale) > 0.0))
            throw DomainError(std::string("scale parameter ") + scale + " must be > 0");
    for (const char* strength : {"alpha", "beta", "v"})
        if (params.count(strength) && params.at(strength) < 0.0)
            throw DomainError(std::string("strength parameter ") + strength + " must be >= 0");
    for (const char* expo : {"q", "p"})
        if (params.count(expo) && params.at(expo) < 1.0)
            throw DomainError(std::string("exponent ") + expo + " must be >= 1");
}

double PotentialSpec::param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) throw DomainError("missing parameter " + name);
    return it->second;
}

bool PotentialSpec::singular_at_origin() const {
    return family == Family::Yukawa || family == Family::OscillatingYukawa ||
           family == Family::Hulthen;
}

bool PotentialSpec::monotone_guaranteed() const { return family != Family::OscillatingYukawa; }

double PotentialSpec::eval(double r) const {
    if (r < 0.0) throw DomainError("eval: r must be >= 0");
    if (r == 0.0 && singular_at_origin())
        throw DomainError("eval: " + family_name(family) + " diverges at r = 0");
    switch (family) {
        case Family::CutoffCoulomb:
            return -param("alpha") / (r + param("a"));
        case Family::SechSquared: {
            const double e = std::exp(param("b") * r);
            const double c = e + 1.0 / e;
            return -4.0 * param("beta") / (c * c);
        }
        case Family::Yukawa:
            return -param("alpha") * std::exp(-param("a") * r) / r;
        case Family::OscillatingYukawa: {
            const double a = param("a"), v = param("v"), s = param("s"), kap = param("kappa");
            return -(param("alpha") / r) * std::exp(-a * r) *
                   (1.0 + v * std::sin(s * r) * std::exp(-kap * r) / r);
        }
        case Family::Hulthen:
            return -param("beta") / std::expm1(r / param("b"));
        case Family::SoftCore: {
            const double q = param("q");
            return -param("alpha") / std::pow(std::pow(r, q) + std::pow(param("a"), q), 1.0 / q);
        }
        case Family::LaserDressed:
            return -param("alpha") / std::sqrt(r * r + param("a") * param("a"));
        case Family::WoodsSaxon:
            return -param("beta") / (1.0 + std::exp((r - param("R")) / param("b")));
        case Family::Zero:
            return 0.0;
    }
    throw std::logic_error("unreachable");
}

double PotentialSpec::origin_limit() const {
    if (family == Family::Zero) return 0.0;
    if (singular_at_origin()) return -std::numeric_limits<double>::infinity();
    return eval(0.0);
}

double PotentialSpec::decay_radius(double threshold) const {
    if (family == Family::Zero) return 1.0;
    double r = 1.0;
    while (r < 3000.0 && std::abs(eval(r)) > threshold) r *= 1.2;
    return r;
}

nlohmann::ordered_json PotentialSpec::to_json() const {
    nlohmann::ordered_json j;
    j["family"] = family_name(family);
    j["role"] = (role == Role::Vector) ? "vector" : "scalar";
    j["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) j["params"][k] = v;
    return j;
}

PotentialSpec PotentialSpec::from_json(const nlohmann::json& j) {
    const Family f = family_from_name(j.at("family").get<std::string>());
    Role role = Role::Vector;
    if (j.contains("role")) {
        const std::string r = j.at("role").get<std::string>();
        if (r == "vector")
            role = Role::Vector;
        else if (r == "scalar")
            role = Role::Scalar;
        else
            throw DomainError("unknown role: " + r);
    }
    std::map<std::string, double> params;
    if (j.contains("params"))
        for (const auto& [k, v] : j.at("params").items()) params[k] = v.get<double>();
    return PotentialSpec(f, role, std::move(params));
}

Grid default_condition_scan() { return Grid::log_spaced(1e-6, 100.0, 10'000); }

ConditionReport check_conditions(const PotentialSpec& p, const ConditionProfile& profile, double m) {
    return check_conditions(p, profile, m, default_condition_scan());
}

ConditionReport check_conditions(const PotentialSpec& p, const ConditionProfile& profile, double m,
                                 const Grid& scan) {
    ConditionReport rep;
    rep.profile = profile;

    const double slope_tol = 1e-12;
    const double vanish_tol = 1e-6;

    // Required sign of V, and of its slope, per profile.
    //   sign_dir = +1: V <= 0 required; -1: V >= 0; 0: band [-m, 0].
    //   slope_dir = +1: nondecreasing; -1: nonincreasing.
    double sign_dir = +1.0, slope_dir = +1.0;
    bool band = false;
    switch (profile.profile) {
        case Profile::OneDim:
        case Profile::RadialVector:
            break;
        case Profile::SpinCoupled:
            sign_dir = static_cast<double>(profile.s);
            slope_dir = static_cast<double>(profile.s);
            break;
        case Profile::ScalarPositive:
            sign_dir = -1.0;
            slope_dir = -1.0;
            break;
        case Profile::ScalarBoundedNegative:
            band = true;
            break;
    }

    std::vector<double> vals(scan.points.size());
    for (std::size_t i = 0; i < scan.points.size(); ++i) vals[i] = p.eval(scan.points[i]);

    auto add = [&rep](const std::string& id, double r, double v) {
        if (rep.violations.size() < 32) rep.violations.push_back({id, r, v});
    };

    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double r = scan.points[i], v = vals[i];
        if (band) {
            if (v > 1e-14) add("nonpositive", r, v);
            if (v < -m - 1e-12) add("bounded_below_by_minus_m", r, v);
        } else if (sign_dir * v > 1e-14) {
            add(sign_dir > 0 ? "nonpositive" : "nonnegative", r, v);
        }
        if (i > 0) {
            const double slope = (v - vals[i - 1]) / (r - scan.points[i - 1]);
            const double want = band ? +1.0 : slope_dir;
            if (want * slope < -slope_tol) add("monotone", r, slope);
        }
    }
    // Decay is probed far beyond the scan: power-law tails (cutoff Coulomb,
    // soft core) vanish but are still well above tolerance at the scan edge.
    const double far = std::max(scan.end, 1e9);
    if (std::abs(p.eval(far)) > vanish_tol) add("vanishes_at_infinity", far, p.eval(far));

    bool monotone_only = !rep.violations.empty();
    for (const auto& v : rep.violations)
        if (v.condition != "monotone") monotone_only = false;
    rep.monotone_caveat = monotone_only && !p.monotone_guaranteed();

    rep.passed = rep.violations.empty();

    // d=2 boundedness caveat; callers consult this only for d = 2 problems.
    rep.d2_caveat_checked = true;
    const double v0 = p.origin_limit();
    if (profile.profile == Profile::SpinCoupled)
        rep.d2_caveat_ok = profile.s * v0 < -0.5 * m;
    else
        rep.d2_caveat_ok = v0 < -m;
    return rep;
}

}  // namespace kgcomp
