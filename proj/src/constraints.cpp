// constraints.cpp - closure, syntactic consistency and entailment
#include "twoside/constraints.hpp"

#include <cstdint>

namespace twoside {

namespace {

class Closer {
 public:
  explicit Closer(bool stop_early) : stop_early_(stop_early) {}

  void add(const Type& lhs, const Type& rhs) { push(intern(lhs), intern(rhs)); }

  // Runs the worklist; false iff an inconsistent pair was found.
  bool run() {
    bool consistent = true;
    while (!work_.empty()) {
      auto [x, y] = work_.back();
      work_.pop_back();
      const Type lhs = types_[static_cast<std::size_t>(x)];
      const Type rhs = types_[static_cast<std::size_t>(y)];
      order_.emplace_back(x, y);
      if (consistent && !is_syntactically_consistent({lhs, rhs})) {
        consistent = false;
        witness_ = Constraint{lhs, rhs};
        if (stop_early_) return false;
      }
      decompose(lhs, rhs);
      const auto succ_y = succ_[static_cast<std::size_t>(y)];
      for (int z : succ_y) push(x, z);
      const auto pred_x = pred_[static_cast<std::size_t>(x)];
      for (int w : pred_x) push(w, y);
      succ_[static_cast<std::size_t>(x)].push_back(y);
      pred_[static_cast<std::size_t>(y)].push_back(x);
    }
    return consistent;
  }

  [[nodiscard]] ConstraintSet closed() const {
    ConstraintSet out;
    for (auto [x, y] : order_) out.add({types_[static_cast<std::size_t>(x)], types_[static_cast<std::size_t>(y)]});
    return out;
  }

  [[nodiscard]] const std::optional<Constraint>& witness() const { return witness_; }

 private:
  int intern(const Type& t) {
    auto it = ids_.find(t);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(types_.size());
    ids_.emplace(t, id);
    types_.push_back(t);
    succ_.emplace_back();
    pred_.emplace_back();
    return id;
  }

  void push(int x, int y) {
    std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
                        static_cast<std::uint32_t>(y);
    if (seen_.insert(key).second) work_.emplace_back(x, y);
  }

  void decompose(const Type& lhs, const Type& rhs) {
    if (lhs.is_to() && rhs.is_to()) {
      add(rhs.dom(), lhs.dom());
      add(lhs.cod(), rhs.cod());
    } else if (lhs.is_nec() && rhs.is_nec()) {
      add(lhs.dom(), rhs.dom());
      add(rhs.cod(), lhs.cod());
    } else if (lhs.is_sum() && rhs.is_sum()) {
      for (const auto& s : lhs.summands()) {
        const Summand* t = rhs.find(s.ctor);
        if (!t) continue;
        for (std::size_t i = 0; i < s.args.size(); ++i) add(s.args[i], t->args[i]);
      }
    }
  }

  bool stop_early_;
  std::unordered_map<Type, int, TypeHash> ids_;
  std::vector<Type> types_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
  std::unordered_set<std::uint64_t> seen_;
  std::vector<std::pair<int, int>> work_;
  std::vector<std::pair<int, int>> order_;
  std::optional<Constraint> witness_;
};

}  // namespace

ClosureReport close(const ConstraintSet& c) {
  Closer closer(false);
  // Reverse insertion so the worklist pops constraints in canonical order.
  for (auto it = std::make_reverse_iterator(c.end()); it != std::make_reverse_iterator(c.begin()); ++it)
    closer.add(it->lhs, it->rhs);
  bool ok = closer.run();
  return {closer.closed(), ok, closer.witness()};
}

bool is_syntactically_consistent(const Constraint& k) {
  const Type& a = k.lhs;
  const Type& b = k.rhs;
  if (a.is_var() || b.is_var()) return true;
  if (a.is_to() && b.is_to()) return true;
  if (a.is_nec() && b.is_nec()) return true;
  if (b.is_ok()) return true;
  if (a.is_sum() && b.is_sum()) {
    for (const auto& s : a.summands())
      if (!b.find(s.ctor)) return false;
    return true;
  }
  return false;
}

bool is_consistent(std::span<const Constraint> c, std::optional<Constraint>* witness) {
  Closer closer(true);
  for (auto it = c.rbegin(); it != c.rend(); ++it) closer.add(it->lhs, it->rhs);
  bool ok = closer.run();
  if (witness) *witness = closer.witness();
  return ok;
}

bool is_consistent(const ConstraintSet& c, std::optional<Constraint>* witness) {
  std::vector<Constraint> v(c.begin(), c.end());
  return is_consistent(std::span<const Constraint>(v), witness);
}

namespace {
std::uint64_t pair_key(int x, int y) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) | static_cast<std::uint32_t>(y);
}
}  // namespace

Entailment::Entailment(std::span<const Constraint> c) : members_(c.begin(), c.end()) {}

Entailment::Entailment(const ConstraintSet& c) : members_(c.begin(), c.end()) {}

void Entailment::build() {
  built_ = true;
  ok_ = intern(Type::ok());
  for (const auto& k : members_) assert_fact(intern(k.lhs), intern(k.rhs));
  drain();
}

bool Entailment::operator()(const Type& lhs, const Type& rhs) {
  if (rhs.is_ok() || lhs == rhs) return true;
  if (!built_) {
    if (members_.count(Constraint{lhs, rhs})) return true;
    build();
  }
  int x = intern(lhs);
  int y = intern(rhs);
  return holds(x, y);
}

bool Entailment::holds(int x, int y) const { return facts_.count(pair_key(x, y)) != 0; }

// One congruence step from current facts; reflexivity and Ok are facts.
bool Entailment::rule(int x, int y) const {
  const Type& a = types_[static_cast<std::size_t>(x)];
  const Type& b = types_[static_cast<std::size_t>(y)];
  auto id = [&](const Type& t) { return ids_.at(t); };
  if (a.is_to() && b.is_to()) return holds(id(b.dom()), id(a.dom())) && holds(id(a.cod()), id(b.cod()));
  if (a.is_nec() && b.is_nec()) return holds(id(a.dom()), id(b.dom())) && holds(id(b.cod()), id(a.cod()));
  if (a.is_sum() && b.is_sum()) {
    for (const auto& s : a.summands()) {
      const Summand* t = b.find(s.ctor);
      if (!t) return false;
      for (std::size_t i = 0; i < s.args.size(); ++i)
        if (!holds(id(s.args[i]), id(t->args[i]))) return false;
    }
    return true;
  }
  return false;
}

int Entailment::intern(const Type& t) {
  if (auto it = ids_.find(t); it != ids_.end()) return it->second;
  std::vector<int> kids;
  if (t.is_to() || t.is_nec()) {
    kids.push_back(intern(t.dom()));
    kids.push_back(intern(t.cod()));
  } else if (t.is_sum()) {
    for (const auto& s : t.summands())
      for (const auto& arg : s.args) kids.push_back(intern(arg));
  }
  const int id = static_cast<int>(types_.size());
  ids_.emplace(t, id);
  types_.push_back(t);
  parents_.emplace_back();
  succ_.emplace_back();
  pred_.emplace_back();
  for (int k : kids) {
    auto& ps = parents_[static_cast<std::size_t>(k)];
    if (ps.empty() || ps.back() != id) ps.push_back(id);
  }
  assert_fact(id, id);
  if (ok_ >= 0) assert_fact(id, ok_);
  for (int u = 0; u < id; ++u) {
    if (rule(id, u)) assert_fact(id, u);
    if (rule(u, id)) assert_fact(u, id);
  }
  drain();
  return id;
}

void Entailment::assert_fact(int x, int y) {
  if (!facts_.insert(pair_key(x, y)).second) return;
  succ_[static_cast<std::size_t>(x)].push_back(y);
  pred_[static_cast<std::size_t>(y)].push_back(x);
  work_.emplace_back(x, y);
}

void Entailment::drain() {
  while (!work_.empty()) {
    auto [x, y] = work_.back();
    work_.pop_back();
    for (std::size_t i = 0; i < succ_[static_cast<std::size_t>(y)].size(); ++i)
      assert_fact(x, succ_[static_cast<std::size_t>(y)][i]);
    for (std::size_t i = 0; i < pred_[static_cast<std::size_t>(x)].size(); ++i)
      assert_fact(pred_[static_cast<std::size_t>(x)][i], y);
    for (int p : parents_[static_cast<std::size_t>(x)])
      for (int q : parents_[static_cast<std::size_t>(y)])
        if (!holds(p, q) && rule(p, q)) assert_fact(p, q);
  }
}

bool entails(const ConstraintSet& c, const Constraint& goal) {
  Entailment e(c);
  return e(goal);
}

}  // namespace twoside
