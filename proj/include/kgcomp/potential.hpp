#ifndef KGCOMP_POTENTIAL_HPP
#define KGCOMP_POTENTIAL_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgcomp/numerics.hpp"
#include "json.hpp"

namespace kgcomp {

class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

enum class Family {
    CutoffCoulomb,
    SechSquared,
    Yukawa,
    OscillatingYukawa,
    Hulthen,
    SoftCore,
    LaserDressed,
    WoodsSaxon,
    Zero,
};

enum class Role { Vector, Scalar };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// A closed-form potential from the catalog.  Parameter names follow the
/// conventional symbols for each family (alpha, a, beta, b, v, s, kappa, q, p, c, R).
struct PotentialSpec {
    Family family = Family::Zero;
    Role role = Role::Vector;
    std::map<std::string, double> params;

    PotentialSpec() = default;
    PotentialSpec(Family f, Role r, std::map<std::string, double> p);

    double param(const std::string& name) const;
    /// Closed-form value at radius r >= 0.  Throws DomainError at r = 0 for
    /// families that diverge there (Yukawa, OscillatingYukawa, Hulthen).
    double eval(double r) const;
    bool singular_at_origin() const;
    /// Families whose catalog form is monotone for any admissible parameters.
    /// OscillatingYukawa is not; its monotonicity must be checked per instance.
    bool monotone_guaranteed() const;
    /// Limit of the potential at the origin (may be -inf for singular families).
    double origin_limit() const;
    /// Radius beyond which |V| stays under `threshold` (capped search).
    double decay_radius(double threshold = 1e-12) const;

    nlohmann::ordered_json to_json() const;
    static PotentialSpec from_json(const nlohmann::json& j);

    bool operator==(const PotentialSpec& other) const = default;
};

enum class Profile {
    OneDim,                 // even, nonpositive, nondecreasing, vanishing
    RadialVector,           // nonpositive, nondecreasing, vanishing
    SpinCoupled,            // sV <= 0, sV' >= 0, vanishing
    ScalarPositive,         // S >= 0, nonincreasing, vanishing
    ScalarBoundedNegative,  // -m <= S <= 0, nondecreasing, vanishing
};

struct ConditionProfile {
    Profile profile = Profile::RadialVector;
    int s = +1;  // only meaningful for SpinCoupled

    static ConditionProfile one_dim() { return {Profile::OneDim, +1}; }
    static ConditionProfile radial_vector() { return {Profile::RadialVector, +1}; }
    static ConditionProfile spin_coupled(int s) { return {Profile::SpinCoupled, s}; }
    static ConditionProfile scalar_positive() { return {Profile::ScalarPositive, +1}; }
    static ConditionProfile scalar_bounded_negative() { return {Profile::ScalarBoundedNegative, +1}; }
};

struct ConditionViolation {
    std::string condition;  // e.g. "nonpositive", "monotone", "vanishes"
    double radius = 0.0;
    double value = 0.0;
};

struct ConditionReport {
    ConditionProfile profile;
    bool passed = false;
    std::vector<ConditionViolation> violations;
    bool d2_caveat_checked = false;
    /// d=2 boundedness caveat (V0 < -m, or sV0 < -m/2 for the coupled profile);
    /// vacuously true for potentials unbounded at the origin.
    bool d2_caveat_ok = false;
    /// True when the only failures are monotonicity ones on a family whose
    /// catalog form is not pointwise monotone (OscillatingYukawa).
    bool monotone_caveat = false;
};

/// Dense numerical check of the sign/monotonicity/decay conditions on `scan`.
ConditionReport check_conditions(const PotentialSpec& p, const ConditionProfile& profile, double m,
                                 const Grid& scan);
ConditionReport check_conditions(const PotentialSpec& p, const ConditionProfile& profile, double m);

Grid default_condition_scan();

}  // namespace kgcomp

#endif  // KGCOMP_POTENTIAL_HPP
