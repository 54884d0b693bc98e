// twoside/eval.hpp - call-by-value small-step semantics with fuel
#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "twoside/term.hpp"

namespace twoside {

enum class StuckReason { ApplyNonFunction, MatchNoCase, MatchNonCtor, FreeTopId };

[[nodiscard]] std::string_view to_string(StuckReason r);

/// One evaluation-context frame; a context lists frames outermost first.
struct Frame {
  enum class Kind { Ctor, AppFun, AppArg, Match };
  Kind kind;
  std::string ctor;            // Ctor
  std::vector<Term> done;      // Ctor: evaluated prefix
  std::vector<Term> pending;   // Ctor: unevaluated suffix
  std::optional<Term> other;   // AppFun: pending argument; AppArg: the abstraction; Match: the match term
};

using EvalContext = std::vector<Frame>;

[[nodiscard]] Term plug(const EvalContext& ctx, const Term& hole);

enum class RedexKind { Delta, Beta, Fix, Match };

struct Decomposition {
  enum class Kind { Value, Redex, Stuck };
  Kind kind;
  EvalContext ctx;
  /// The value, the redex, or the stuck subterm.
  Term focus;
  RedexKind redex = RedexKind::Beta;
  StuckReason reason = StuckReason::ApplyNonFunction;
};

/// Throws std::invalid_argument on an open term.
[[nodiscard]] Decomposition decompose(const Term& t);

struct StepResult {
  enum class Kind { Reduced, Done, Blocked };
  Kind kind;
  Term term;  // reduct, or the value
  StuckReason reason = StuckReason::ApplyNonFunction;
};

[[nodiscard]] StepResult step(const Term& t, const TopModule& m);

struct EvalOutcome {
  enum class Kind { Value, Stuck, OutOfFuel };
  Kind kind;
  std::optional<Term> term;  // the value, or the whole stuck term
  std::optional<StuckReason> reason;
  std::size_t steps = 0;
};

/// Contracts at most `fuel` redexes. Throws std::invalid_argument on an open term.
[[nodiscard]] EvalOutcome evaluate(const Term& t, const TopModule& m, std::size_t fuel);

inline constexpr std::size_t kDefaultFuel = 100000;

/// TWOSIDE_FUEL when set to a number, else kDefaultFuel.
[[nodiscard]] std::size_t default_fuel();

}  // namespace twoside
