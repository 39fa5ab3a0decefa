#include "kgcomp/sampling.hpp"

#include <cmath>

namespace kgcomp {

double PairSampler::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

int PairSampler::pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

PotentialSpec PairSampler::sample_vector(const Geometry& geometry) {
    // Bounded families plus the singular ones where subcriticality allows.
    // The singular 1/r coefficient c must satisfy c < sqrt(Q + 1/4) for the
    // vector-only radial equation to stay regular at the origin.
    const double q = geometry.one_dim ? 0.0 : geometry.q_coefficient();
    const double c_max = geometry.one_dim ? 0.0 : std::sqrt(std::max(q + 0.25, 0.0));
    const int family = pick(geometry.one_dim ? 3 : (c_max > 0.05 ? 6 : 4));
    switch (family) {
        case 0:
            return PotentialSpec(Family::CutoffCoulomb, Role::Vector,
                                 {{"alpha", uniform(0.6, 1.4)}, {"a", uniform(0.4, 1.2)}});
        case 1:
            return PotentialSpec(Family::SechSquared, Role::Vector,
                                 {{"beta", uniform(0.5, 1.2)}, {"b", uniform(0.3, 1.0)}});
        case 2:
            return PotentialSpec(Family::LaserDressed, Role::Vector,
                                 {{"alpha", uniform(0.6, 1.3)}, {"a", uniform(0.4, 1.2)}});
        case 3:
            return PotentialSpec(
                Family::SoftCore, Role::Vector,
                {{"alpha", uniform(0.6, 1.3)}, {"a", uniform(0.5, 1.5)}, {"q", 2.0 + pick(4)}});
        case 4: {
            const double a = uniform(0.2, 0.8);
            const double alpha = uniform(0.3, 0.9 * c_max);
            return PotentialSpec(Family::Yukawa, Role::Vector, {{"alpha", alpha}, {"a", a}});
        }
        default: {
            const double b = uniform(0.8, 2.0);
            const double beta = uniform(0.3, 0.9 * c_max) / b;
            return PotentialSpec(Family::Hulthen, Role::Vector, {{"beta", beta}, {"b", b}});
        }
    }
}

PotentialSpec PairSampler::sample_scalar_bounded(double m) {
    // Depth capped below m so the band -m <= S <= 0 holds.
    switch (pick(3)) {
        case 0:
            return PotentialSpec(Family::SechSquared, Role::Scalar,
                                 {{"beta", uniform(0.05, 0.2 * m)}, {"b", uniform(0.3, 1.0)}});
        case 1: {
            const double a = uniform(1.0, 2.5);
            return PotentialSpec(Family::SoftCore, Role::Scalar,
                                 {{"alpha", uniform(0.2, 0.8 * m) * a}, {"a", a}, {"q", 4.0}});
        }
        default: {
            const double a = uniform(1.0, 2.5);
            return PotentialSpec(Family::LaserDressed, Role::Scalar,
                                 {{"alpha", uniform(0.2, 0.8 * m) * a}, {"a", a}});
        }
    }
}

ProblemSpec PairSampler::sample_problem(const Geometry& geometry) {
    ProblemSpec p;
    p.m = 1.0;
    p.geometry = geometry;
    p.node_target = 0;
    p.vector_pot = sample_vector(geometry);
    return p;
}

ComparisonPair PairSampler::sample_pair(Scenario scenario) {
    ComparisonPair pair;
    pair.scenario = scenario;
    const Geometry geo = (scenario == Scenario::VectorOnly1D) ? Geometry::one_dim_even()
                                                              : Geometry::radial(3, 0);
    pair.problem_a = sample_problem(geo);
    pair.problem_b = sample_problem(geo);
    switch (scenario) {
        case Scenario::VectorOnly1D:
        case Scenario::VectorOnlyRadial:
            break;
        case Scenario::SpinCoupled:
            // Only the attractive branch (s = +1) is reachable with an
            // all-attractive catalog.
            pair.problem_a.scalar = ScalarCoupled{+1};
            pair.problem_b.scalar = ScalarCoupled{+1};
            break;
        case Scenario::EqualVectorDiffScalar:
            pair.problem_b.vector_pot = pair.problem_a.vector_pot;
            pair.problem_a.scalar = ScalarIndependent{sample_scalar_bounded(pair.problem_a.m)};
            pair.problem_b.scalar = ScalarIndependent{sample_scalar_bounded(pair.problem_b.m)};
            break;
        case Scenario::EqualScalarDiffVector: {
            const ScalarMode shared = ScalarIndependent{sample_scalar_bounded(pair.problem_a.m)};
            pair.problem_a.scalar = shared;
            pair.problem_b.scalar = shared;
            break;
        }
    }
    pair.validate();
    return pair;
}

}  // namespace kgcomp
