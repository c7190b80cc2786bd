#pragma once

// Randomized metatheory harness: a rule-directed generator of valid
// judgments, a raw-term generator, and property runners used by both the
// test suite and the CLI.

#include <random>
#include <string>
#include <vector>

#include "dcheck/expr.hpp"
#include "dcheck/typing.hpp"

namespace dcheck {

struct GenConfig {
  std::uint64_t seed = 1;
  int cases = 1000;
  int max_depth = 6;
  long fuel = kDefaultFuel;
};

struct Judgment {
  Context ctx;
  ExprPtr subject;
  ExprPtr type;  // as built by the generator (infer may differ up to conversion)
};

class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  // A fresh random valid judgment (context and subject built rule by rule).
  Judgment next();

 private:
  ExprPtr gen_small_type(const Context& ctx);
  std::pair<ExprPtr, ExprPtr> gen(const Context& ctx, int depth);

  GenConfig cfg_;
  std::mt19937_64 rng_;
  int counter_ = 0;
};

// Arbitrary (typically invalid) locally closed raw terms over the given free
// names; used for syntax/reduction lemmas and oracle fuzzing.
ExprPtr gen_raw(std::mt19937_64& rng, int depth, const std::vector<Name>& frees,
                bool allow_subst = false);

struct PropertyReport {
  std::string name;
  int cases = 0;
  int failures = 0;
  long max_steps = 0;
  std::vector<std::string> notes;  // first few (shrunk) counterexamples
};

// Known properties: confluence, subject-reduction, uniqueness, norming,
// sn-fuel, es-oracle, classifier, roundtrip. Throws std::invalid_argument
// for an unknown name.
PropertyReport run_property(const std::string& name, const GenConfig& cfg);

std::vector<std::string> property_names();

}  // namespace dcheck
