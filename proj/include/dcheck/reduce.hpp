#pragma once

// Single-step reduction, normalization, conversion, and normal-form
// classification for substitution-free expressions.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcheck/expr.hpp"

namespace dcheck {

inline constexpr long kDefaultFuel = 1'000'000;

enum class Rule {
  Beta1, Beta2, Beta3, Beta4,
  Pi1, Pi2, Pi3, Pi4, Pi5, Pi6,
  Nu1, Nu2, Nu3, Nu4, Nu5, Nu6, Nu7, Nu8, Nu9, Nu10,
};

const char* rule_name(Rule r);  // "beta1", ..., "nu10"

using Path = std::vector<int>;  // child indices from the root

struct Redex {
  Path path;
  Rule rule;
};

struct FuelExhausted : std::runtime_error {
  explicit FuelExhausted(const std::string& what) : std::runtime_error(what) {}
};

// The redex rule applicable at the root of e, if any.
std::optional<Rule> root_redex(const ExprPtr& e);

// All redexes, in preorder (node before children, children left to right).
std::vector<Redex> redexes(const ExprPtr& e);

// Contract the redex at the given position. Throws std::invalid_argument if
// the path is invalid or the rule does not apply there.
ExprPtr step_at(const ExprPtr& e, const Path& path, Rule rule);

enum class Strategy { LeftmostOutermost, RightmostInnermost };

struct TraceStep {
  Rule rule;
  Path path;
  ExprPtr result;  // whole expression after the step
};

// Reduce to normal form. Throws FuelExhausted if fuel runs out. steps_out and
// trace, when non-null, receive the step count / full step sequence.
ExprPtr normalize(const ExprPtr& e, long fuel = kDefaultFuel,
                  Strategy strategy = Strategy::LeftmostOutermost,
                  long* steps_out = nullptr, std::vector<TraceStep>* trace = nullptr);

// Beta-delta conversion: both sides normalize to alpha-equal forms.
bool converts(const ExprPtr& a, const ExprPtr& b, long fuel = kDefaultFuel);

// Classification of (irreducible) shapes: InD = neutral expressions headed by
// a variable under eliminations, InN = canonical valid normal forms,
// Reducible = everything else.
enum class NormalClass { InN, InD, Reducible };

NormalClass classify(const ExprPtr& e);
const char* normal_class_name(NormalClass c);

}  // namespace dcheck
