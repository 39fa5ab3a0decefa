#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "kgcomp/potential.hpp"

using namespace kgcomp;

namespace {

PotentialSpec make(Family f, std::map<std::string, double> params, Role role = Role::Vector) {
    return PotentialSpec(f, role, std::move(params));
}

}  // namespace

TEST_CASE("closed-form values at specific radii") {
    CHECK(make(Family::CutoffCoulomb, {{"alpha", 0.74973}, {"a", 0.5}}).eval(0.0) ==
          doctest::Approx(-1.49946).epsilon(1e-12));
    CHECK(make(Family::SechSquared, {{"beta", 0.7}, {"b", 0.4}}).eval(0.0) ==
          doctest::Approx(-0.7).epsilon(1e-12));
    // Yukawa at r = 1: -alpha e^{-a}
    CHECK(make(Family::Yukawa, {{"alpha", 0.9}, {"a", 0.5}}).eval(1.0) ==
          doctest::Approx(-0.9 * std::exp(-0.5)).epsilon(1e-12));
    // Hulthen at r = b ln 2: denominator e^{r/b} - 1 = 1
    CHECK(make(Family::Hulthen, {{"beta", 0.39}, {"b", 1.88}}).eval(1.88 * std::log(2.0)) ==
          doctest::Approx(-0.39).epsilon(1e-12));
    // Soft core at r = a: -alpha / (2 a^q)^{1/q}
    CHECK(make(Family::SoftCore, {{"alpha", 0.8}, {"a", 0.5}, {"q", 5.0}}).eval(0.5) ==
          doctest::Approx(-0.8 / (0.5 * std::pow(2.0, 0.2))).epsilon(1e-12));
    CHECK(make(Family::LaserDressed, {{"alpha", 0.6}, {"a", 0.6}}).eval(0.8) ==
          doctest::Approx(-0.6).epsilon(1e-12));
    // Woods-Saxon at r = R is half depth
    CHECK(make(Family::WoodsSaxon, {{"beta", 1.0}, {"b", 0.9}, {"R", 0.96}}).eval(0.96) ==
          doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(make(Family::Zero, {}).eval(3.0) == 0.0);
}

TEST_CASE("singular families diverge like -c/r near the origin") {
    const auto yuk = make(Family::Yukawa, {{"alpha", 0.9}, {"a", 0.5}});
    CHECK(yuk.eval(1e-9) * 1e-9 == doctest::Approx(-0.9).epsilon(1e-6));
    const auto hult = make(Family::Hulthen, {{"beta", 0.39}, {"b", 1.88}});
    CHECK(hult.eval(1e-9) * 1e-9 == doctest::Approx(-0.39 * 1.88).epsilon(1e-6));
    CHECK(yuk.singular_at_origin());
    CHECK(hult.singular_at_origin());
    CHECK(yuk.origin_limit() == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(yuk.eval(0.0), DomainError);
    CHECK_FALSE(make(Family::SechSquared, {{"beta", 0.7}, {"b", 0.4}}).singular_at_origin());
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make(Family::Yukawa, {{"alpha", 0.9}}), DomainError);             // missing a
    CHECK_THROWS_AS(make(Family::Yukawa, {{"alpha", 0.9}, {"a", -1.0}}), DomainError);
    CHECK_THROWS_AS(make(Family::Yukawa, {{"alpha", -0.1}, {"a", 1.0}}), DomainError);
    CHECK_THROWS_AS(make(Family::SoftCore, {{"alpha", 0.8}, {"a", 0.5}, {"q", 0.5}}), DomainError);
    CHECK_THROWS_AS(make(Family::Hulthen, {{"beta", 0.4}, {"b", 0.0}}), DomainError);
    CHECK_THROWS_AS(PotentialSpec(Family::CutoffCoulomb, Role::Vector, {}), DomainError);
}

TEST_CASE("json round trip preserves the spec") {
    const auto p = make(Family::OscillatingYukawa,
                        {{"alpha", 0.2}, {"a", 0.2}, {"v", 0.4}, {"s", 3.0}, {"kappa", 0.2}});
    const auto back = PotentialSpec::from_json(p.to_json());
    CHECK(back == p);
    CHECK(p.to_json().at("family") == "oscillating_yukawa");
    CHECK_THROWS_AS(PotentialSpec::from_json({{"family", "unknown"}}), DomainError);

    const auto s = make(Family::SechSquared, {{"beta", 0.5}, {"b", 0.31}}, Role::Scalar);
    CHECK(PotentialSpec::from_json(s.to_json()).role == Role::Scalar);
}

TEST_CASE("monotone vector profile accepts the attractive catalog") {
    for (auto p : {make(Family::CutoffCoulomb, {{"alpha", 0.75}, {"a", 0.5}}),
                   make(Family::SechSquared, {{"beta", 0.7}, {"b", 0.4}}),
                   make(Family::Yukawa, {{"alpha", 0.9}, {"a", 0.5}}),
                   make(Family::Hulthen, {{"beta", 0.39}, {"b", 1.88}}),
                   make(Family::SoftCore, {{"alpha", 0.8}, {"a", 0.5}, {"q", 5.0}}),
                   make(Family::LaserDressed, {{"alpha", 0.6}, {"a", 0.6}}),
                   make(Family::WoodsSaxon, {{"beta", 1.0}, {"b", 0.9}, {"R", 0.96}})}) {
        const auto rep = check_conditions(p, ConditionProfile::radial_vector(), 1.0);
        CAPTURE(family_name(p.family));
        CHECK(rep.passed);
        CHECK_FALSE(rep.monotone_caveat);
    }
}

TEST_CASE("oscillating family: pass, monotone caveat, and sign failure by strength") {
    auto osc = [](double v) {
        return make(Family::OscillatingYukawa,
                    {{"alpha", 0.2}, {"a", 0.2}, {"v", v}, {"s", 3.0}, {"kappa", 0.2}});
    };
    // The published parameter set is pointwise monotone despite the family flag.
    const auto mild = check_conditions(osc(0.4), ConditionProfile::radial_vector(), 1.0);
    CHECK(mild.passed);
    CHECK_FALSE(mild.monotone_caveat);

    const auto wavy = check_conditions(osc(1.0), ConditionProfile::radial_vector(), 1.0);
    CHECK_FALSE(wavy.passed);
    CHECK(wavy.monotone_caveat);  // only monotonicity fails, on a non-guaranteed family
    for (const auto& v : wavy.violations) CHECK(v.condition == "monotone");

    const auto violent = check_conditions(osc(4.0), ConditionProfile::radial_vector(), 1.0);
    CHECK_FALSE(violent.passed);
    CHECK_FALSE(violent.monotone_caveat);  // sign violations disqualify the caveat
}

TEST_CASE("scalar profiles") {
    const auto neg = make(Family::SechSquared, {{"beta", 0.5}, {"b", 0.31}}, Role::Scalar);
    // -m <= S <= 0 band: depth 0.5 < m = 1.
    CHECK(check_conditions(neg, ConditionProfile::scalar_bounded_negative(), 1.0).passed);
    // Too deep for the band with m = 0.3.
    CHECK_FALSE(check_conditions(neg, ConditionProfile::scalar_bounded_negative(), 0.3).passed);
    // A negative scalar is not a nonnegative one.
    CHECK_FALSE(check_conditions(neg, ConditionProfile::scalar_positive(), 1.0).passed);
}

TEST_CASE("spin-coupled profile follows the sign s") {
    const auto attr = make(Family::Hulthen, {{"beta", 0.39}, {"b", 1.88}});
    CHECK(check_conditions(attr, ConditionProfile::spin_coupled(+1), 1.0).passed);
    // s = -1 requires V >= 0; the attractive catalog fails it.
    CHECK_FALSE(check_conditions(attr, ConditionProfile::spin_coupled(-1), 1.0).passed);
}

TEST_CASE("two-dimensional boundedness caveat") {
    // Singular at the origin: caveat vacuously satisfied.
    const auto rep_sing =
        check_conditions(make(Family::Hulthen, {{"beta", 0.39}, {"b", 1.88}}),
                         ConditionProfile::radial_vector(), 1.0);
    CHECK(rep_sing.d2_caveat_ok);
    // Bounded with V0 = -1.2 < -m: ok.
    CHECK(check_conditions(make(Family::SechSquared, {{"beta", 1.2}, {"b", 1.0}}),
                           ConditionProfile::radial_vector(), 1.0)
              .d2_caveat_ok);
    // Bounded with V0 = -0.1 > -m: caveat fails.
    CHECK_FALSE(check_conditions(make(Family::SechSquared, {{"beta", 0.1}, {"b", 1.0}}),
                                 ConditionProfile::radial_vector(), 1.0)
                    .d2_caveat_ok);
}

TEST_CASE("decay radius grows with range") {
    const auto narrow = make(Family::Yukawa, {{"alpha", 0.9}, {"a", 2.0}});
    const auto wide = make(Family::Yukawa, {{"alpha", 0.9}, {"a", 0.2}});
    CHECK(narrow.decay_radius(1e-10) < wide.decay_radius(1e-10));
    CHECK(std::abs(wide.eval(wide.decay_radius(1e-10))) <= 1e-10);
}
