#pragma once

// Type inference and checking. Inference is syntax-directed; conversion is
// invoked only at application arguments, protected-definition bodies, case
// branches, and explicit checks. Inferred types are returned un-normalized.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dcheck/expr.hpp"
#include "dcheck/reduce.hpp"

namespace dcheck {

enum class ErrKind {
  UnboundVariable,
  NotAFunction,
  ArgumentMismatch,
  NotAPairLike,
  BodyMismatch,
  CaseBranchMismatch,
  CaseDependentResult,
  IllFormedContext,
  FuelExhausted,
};

const char* err_kind_name(ErrKind k);

struct TypeError {
  ErrKind kind;
  Path path;            // position of the offending subexpression
  ExprPtr expected;     // may be null
  ExprPtr actual;       // may be null
  std::string detail;
};

template <typename T>
class Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(TypeError err) : v_(std::move(err)) {}
  bool ok() const { return std::holds_alternative<T>(v_); }
  const T& value() const { return std::get<T>(v_); }
  const TypeError& error() const { return std::get<TypeError>(v_); }

 private:
  std::variant<T, TypeError> v_;
};

// Rule-instance certificate emitted by inference when recording is on.
struct Cert;
using CertPtr = std::shared_ptr<const Cert>;
struct Cert {
  std::string rule;  // ax, var, abs_U, abs_E, appl, def, ch_I, ch_B,
                     // prd, sum, pr_L, pr_R, inj_L, inj_R, case, neg, conv
  Context ctx;
  ExprPtr subject;
  ExprPtr type;
  std::vector<CertPtr> premises;
};

class Checker {
 public:
  explicit Checker(long fuel = kDefaultFuel, bool record = false)
      : fuel_(fuel), record_(record) {}

  // Gamma |- a : ?   (the subject must be substitution-free and locally closed)
  Result<ExprPtr> infer(const Context& ctx, const ExprPtr& a);

  // Gamma |- a : b, requiring b itself to be typable.
  Result<std::monostate> check(const Context& ctx, const ExprPtr& a, const ExprPtr& b);

  bool valid(const Context& ctx, const ExprPtr& a);

  // Every declared type is typable under its prefix; names are distinct.
  Result<std::monostate> check_context(const Context& ctx);

  // Certificate for the last successful infer/check, when recording.
  CertPtr certificate() const { return cert_; }
  // Error from the last valid()==false call.
  const std::optional<TypeError>& last_error() const { return last_error_; }

 private:
  Result<ExprPtr> infer_(const Context& ctx, const ExprPtr& a, Path& path, CertPtr* cert);

  long fuel_;
  bool record_;
  CertPtr cert_;
  std::optional<TypeError> last_error_;
};

// Re-validate a certificate against the declarative rules, using only
// substitution, reduction, and conversion (not infer itself).
bool replay_certificate(const CertPtr& cert, long fuel = kDefaultFuel,
                        std::string* why = nullptr);

std::string describe(const TypeError& err);

}  // namespace dcheck
