// twoside/infer.hpp - two-sided constrained type inference and checking
#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "twoside/judgement.hpp"
#include "twoside/parser.hpp"

namespace twoside {

/// Yields prefix1, prefix2, ... skipping names in the avoid set.
class FreshSupply {
 public:
  explicit FreshSupply(std::string prefix = "a", std::set<std::string> avoid = {})
      : prefix_(std::move(prefix)), avoid_(std::move(avoid)) {}

  [[nodiscard]] Type next();
  void avoid(const std::set<std::string>& names) { avoid_.insert(names.begin(), names.end()); }
  [[nodiscard]] std::size_t issued() const { return counter_; }

 private:
  std::string prefix_;
  std::set<std::string> avoid_;
  std::size_t counter_ = 0;
};

inline constexpr std::size_t kDefaultProductCap = 10000;

struct InferOptions {
  std::string prefix = "a";
  /// Upper bound on the judgements any single clause may produce.
  std::size_t product_cap = kDefaultProductCap;
};

struct InferResult {
  std::vector<InferredJudgement> judgements;
  /// Some clause hit the product cap and dropped combinations.
  bool truncated = false;
};

/// The environment carries local variable typings; top-level identifiers
/// are typed through `schemes` by instantiation.
[[nodiscard]] InferResult infer_right(const TypeEnv& gamma, const Term& m, const SchemeEnv& schemes,
                                      const Signature& sig, const InferOptions& opts = {});

/// `delta` is empty or a single variable typing.
[[nodiscard]] InferResult infer_left(const TypeEnv& gamma, const Term& m,
                                     const std::optional<std::pair<std::string, Type>>& delta,
                                     const SchemeEnv& schemes, const Signature& sig,
                                     const InferOptions& opts = {});

struct Instance {
  Type type;
  ConstraintSet obligations;
};

/// Throws std::invalid_argument when args and quantified variables differ in
/// number.
[[nodiscard]] Instance instantiate_scheme(const Scheme& sch, const std::vector<Type>& args);

struct ValidationReport {
  bool ok = true;
  /// Rule of the first failing node and why it failed.
  std::optional<Rule> failing_rule;
  std::string message;
};

/// Re-checks every node against its algorithmic rule, including side
/// conditions under `c`, and that each premise has the judgement the rule
/// demands.
[[nodiscard]] ValidationReport validate_algorithmic(const Derivation& d, const ConstraintSet& c,
                                                    const SchemeEnv& schemes, const Signature& sig);

/// Equal after a bijective renaming of the type variables outside `fixed`.
[[nodiscard]] bool equivalent_up_to_renaming(const ConstraintSet& c1, const Type& t1, const ConstraintSet& c2,
                                             const Type& t2, const std::set<std::string>& fixed = {});

struct SchemeVerdict {
  std::string name;
  std::size_t scheme_index = 0;
  bool accepted = false;
  std::string message;
  Derivation derivation;
};

struct ModuleCheckReport {
  bool ok = true;
  std::vector<SchemeVerdict> verdicts;
};

/// Checks each definition against each declared scheme by searching for an
/// algorithmic derivation of `schemes, C |- f : A` whose unknown
/// intermediate types come from a finite candidate pool; every derivation
/// found is re-validated. A definition without a scheme is rejected.
[[nodiscard]] ModuleCheckReport check_toplevel(const SourceModule& src);

/// One scheme of one definition; exposed for mutation testing.
[[nodiscard]] SchemeVerdict check_definition(const SourceModule& src, const std::string& name, const Scheme& sch);

}  // namespace twoside
