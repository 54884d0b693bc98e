// kernel_internal.hpp - formula sets shared by the kernel checker, translator and prover
#pragma once

#include <map>
#include <string>
#include <vector>

#include "twoside/kernel.hpp"

namespace twoside::kernel::detail {

[[nodiscard]] std::string formula_key(const Formula& f);

/// Set of formulas keyed by alpha-normal subject and printed type.
class FormulaSet {
 public:
  FormulaSet() = default;
  explicit FormulaSet(const std::vector<Formula>& fs) {
    for (const auto& f : fs) add(f);
  }

  void add(const Formula& f) { items_.emplace(formula_key(f), f); }
  [[nodiscard]] bool has(const Formula& f) const { return items_.count(formula_key(f)) > 0; }
  [[nodiscard]] FormulaSet without(const Formula& f) const {
    FormulaSet r = *this;
    r.items_.erase(formula_key(f));
    return r;
  }
  [[nodiscard]] FormulaSet plus(const std::vector<Formula>& fs) const {
    FormulaSet r = *this;
    for (const auto& f : fs) r.add(f);
    return r;
  }
  [[nodiscard]] std::vector<Formula> formulas() const {
    std::vector<Formula> out;
    for (const auto& [k, f] : items_) out.push_back(f);
    return out;
  }
  [[nodiscard]] const std::map<std::string, Formula>& items() const { return items_; }
  [[nodiscard]] std::size_t size() const { return items_.size(); }
  [[nodiscard]] bool mentions(const std::string& x) const;
  [[nodiscard]] bool has_free(const std::string& x) const;
  [[nodiscard]] std::string key() const;

  friend bool operator==(const FormulaSet& a, const FormulaSet& b) {
    if (a.items_.size() != b.items_.size()) return false;
    for (auto i = a.items_.begin(), j = b.items_.begin(); i != a.items_.end(); ++i, ++j)
      if (i->first != j->first) return false;
    return true;
  }

 private:
  std::map<std::string, Formula> items_;
};

[[nodiscard]] std::string print_side(const FormulaSet& s);

}  // namespace twoside::kernel::detail
