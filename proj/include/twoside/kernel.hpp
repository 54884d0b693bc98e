// twoside/kernel.hpp - derivation checking, translation and proof search for PCF
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twoside/pcf.hpp"

namespace twoside::kernel {

using pcf::PcfTerm;
using pcf::PcfType;

struct Formula {
  PcfTerm term;
  PcfType type;
};

/// Subjects compare up to alpha-equivalence.
[[nodiscard]] bool operator==(const Formula& a, const Formula& b);
[[nodiscard]] std::string print_formula(const Formula& f);
[[nodiscard]] bool is_variable_typing(const Formula& f);

/// Both sides are sets; order and repetition carry no meaning. A one-sided
/// judgement has exactly one formula on the right and variable typings on
/// the left.
struct Sequent {
  std::vector<Formula> left;
  std::vector<Formula> right;
};

[[nodiscard]] bool same_sequent(const Sequent& a, const Sequent& b);
[[nodiscard]] std::string print_sequent(const Sequent& s);

enum class System {
  TwoSided,         // figures for the plain and Ok systems
  TwoSidedSuccess,  // adds complements, CompL/CompR and unrestricted necessity
  OneSided,
};

[[nodiscard]] std::string_view to_string(System s);
[[nodiscard]] std::optional<System> system_from_string(std::string_view s);

struct Node;
using Derivation = std::shared_ptr<const Node>;

struct Node {
  std::string rule;
  Sequent conclusion;
  std::vector<Derivation> premises;
};

[[nodiscard]] Derivation make_node(std::string rule, Sequent conclusion, std::vector<Derivation> premises = {});
[[nodiscard]] std::size_t node_count(const Derivation& d);
[[nodiscard]] std::vector<std::string_view> rule_names(System s);

struct KernelReport {
  bool ok = true;
  std::size_t node_index = 0;  // pre-order position of the first bad node
  std::string rule;
  std::string message;
};

/// Checks every node against its rule schema, the side conditions and the
/// type grammar of the system.
[[nodiscard]] KernelReport check(const Derivation& d, System s);
[[nodiscard]] inline KernelReport check_two_sided(const Derivation& d, bool success = false) {
  return check(d, success ? System::TwoSidedSuccess : System::TwoSided);
}
[[nodiscard]] inline KernelReport check_one_sided(const Derivation& d) { return check(d, System::OneSided); }

class TranslationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Maps a checked two-sided derivation whose conclusion has at most one
/// non-variable typing to a one-sided derivation of
/// `Gamma u Delta^c |- M : A^c` (focus on the left) or `... |- M : A`
/// (focus on the right). Throws TranslationError when the input does not
/// check, a side formula is not a variable typing, or a rule instance has
/// no one-sided counterpart.
[[nodiscard]] Derivation translate_to_one_sided(const Derivation& d);

/// One-sided judgement built from an environment and a typing, with
/// necessity expanded.
[[nodiscard]] Sequent one_sided_goal(const std::vector<Formula>& gamma, const PcfTerm& m, const PcfType& a);

/// Bounded backward search over the one-sided rules; a result checks with
/// check_one_sided. Unknown intermediate types come from a finite pool, so
/// absence is not a refutation.
[[nodiscard]] std::optional<Derivation> prove_one_sided(const std::vector<Formula>& gamma, const PcfTerm& m,
                                                        const PcfType& a, std::size_t depth);

}  // namespace twoside::kernel
