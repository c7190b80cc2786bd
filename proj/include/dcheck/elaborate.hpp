#pragma once

// Elaboration: lowers surface syntax to kernel expressions and executes
// theory directives against a growing ambient context.
//
// - def bodies are expanded eagerly; the kernel never sees definition names.
// - scheme instantiation appends an axiom variable `name@<hash>` whose name
//   is derived from the scheme and the normal forms of its arguments, so
//   convertible argument lists share one variable.

#include <map>
#include <string>
#include <vector>

#include "dcheck/expr.hpp"
#include "dcheck/surface.hpp"
#include "dcheck/typing.hpp"

namespace dcheck {

struct ElabError : std::runtime_error {
  Span span;
  ElabError(const std::string& what, Span s) : std::runtime_error(what), span(s) {}
};

struct Verdict {
  std::string file;
  int index = 0;           // directive index within the file
  std::string kind;        // directive kind
  bool ok = false;
  std::string detail;      // error kind / message, or normalize output
  Span span;
};

struct RunOptions {
  long fuel = kDefaultFuel;
  bool oracle = false;     // cross-check normalization against the machine
  bool explain = false;    // record and replay certificates
  bool stop_on_error = false;
};

struct RunStats {
  long steps = 0;          // total reduction steps across directives
  long max_steps = 0;      // largest single normalization
};

class Elaborator {
 public:
  explicit Elaborator(long fuel = kDefaultFuel) : fuel_(fuel) {}

  // Lower an expression in the current environment. Unknown identifiers are
  // an ElabError unless allow_free is set.
  ExprPtr lower(const SPtr& e, bool allow_free = false);

  std::vector<Verdict> run(const Theory& th, const RunOptions& opts, RunStats* stats = nullptr);

  const Context& context() const { return ctx_; }
  long fuel() const { return fuel_; }

 private:
  ExprPtr lower_(const SPtr& e, std::vector<Name>& scope,
                 const std::map<Name, ExprPtr>* param_args, bool allow_free);
  Name instantiate_scheme(const SPtr& e, std::vector<ExprPtr> args);

  long fuel_;
  Context ctx_;
  std::map<Name, ExprPtr> defs_;
  std::map<Name, std::pair<std::vector<Name>, SPtr>> schemes_;
};

}  // namespace dcheck
