#ifndef KGCOMP_SAMPLING_HPP
#define KGCOMP_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "kgcomp/comparison.hpp"

namespace kgcomp {

/// Deterministic generator of catalog problems and comparison pairs whose
/// potentials satisfy the relevant condition profiles by construction.
class PairSampler {
public:
    explicit PairSampler(std::uint64_t seed) : rng_(seed) {}

    /// Attractive catalog potential satisfying the monotone vector profile.
    /// Singular families are kept subcritical for the given geometry.
    PotentialSpec sample_vector(const Geometry& geometry);
    /// Scalar with -m <= S <= 0, nondecreasing, vanishing.
    PotentialSpec sample_scalar_bounded(double m);
    ProblemSpec sample_problem(const Geometry& geometry);
    ComparisonPair sample_pair(Scenario scenario);

private:
    double uniform(double lo, double hi);
    int pick(int n);

    std::mt19937_64 rng_;
};

}  // namespace kgcomp

#endif  // KGCOMP_SAMPLING_HPP
