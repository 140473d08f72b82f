#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pr {

enum class Verdict { ProvablyPR, ProvablyNotPR, NotNonTriviallyPR, Open };

std::string to_string(Verdict v);

// Guarantee that monochromatic solutions exist with at least `min_distinct`
// distinct values among `variables`.
struct InjectivityConstraint {
    std::vector<std::string> variables;
    std::size_t min_distinct = 1;

    bool operator==(const InjectivityConstraint&) const = default;
};

struct Classification {
    Verdict verdict = Verdict::Open;
    std::string method;            // which analysis produced the verdict
    nlohmann::json certificate;    // machine-checkable payload (null if none)
    std::vector<InjectivityConstraint> injectivity;  // guaranteed when PR
    std::vector<std::string> notes;
};

nlohmann::json injectivity_to_json(const std::vector<InjectivityConstraint>& constraints,
                                   const std::vector<std::string>& variable_order);

nlohmann::json classification_to_json(const Classification& c,
                                      const std::vector<std::string>& variable_order);

}  // namespace pr
