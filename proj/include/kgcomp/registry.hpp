#ifndef KGCOMP_REGISTRY_HPP
#define KGCOMP_REGISTRY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "kgcomp/comparison.hpp"

namespace kgcomp {

struct ExpectedValue {
    std::string name;  // E_a, E_b, r1, r2, A, B
    double value = 0.0;
    double tol = 0.0;
};

/// One published worked example: the potential pair, the weight its areas are
/// measured under, the printed values, and the certificate outcome it reports.
struct ExampleRecord {
    std::string id;
    ComparisonPair pair;
    WeightKernel kernel = WeightKernel::unit();
    std::vector<ExpectedValue> expected;
    std::string expected_theorem;
    std::optional<int> expected_corollary;
    bool expected_adjusted = false;
    std::string note;
};

const std::vector<ExampleRecord>& example_registry();
const ExampleRecord& example_by_id(const std::string& id);

struct ValueCheck {
    std::string name;
    double expected = 0.0;
    double tol = 0.0;
    double computed = 0.0;
    bool pass = false;
};

struct RunReport {
    std::string id;
    OrderingCertificate certificate;
    std::vector<ValueCheck> checks;
    bool theorem_pass = false;
    bool pass = false;
    double wall_seconds = 0.0;

    nlohmann::ordered_json to_json() const;
};

RunReport reproduce_example(const ExampleRecord& rec, const SolverOptions& options = {});

/// CSV series (r, V_a, V_b, weighted integrand) for external plotting.
void write_figure_series(const ExampleRecord& rec, std::ostream& os);

}  // namespace kgcomp

#endif  // KGCOMP_REGISTRY_HPP
