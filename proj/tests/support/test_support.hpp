// test_support.hpp - shared fixtures and hand-rolled generators for tests
#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "twoside/parser.hpp"
#include "twoside/term.hpp"
#include "twoside/type.hpp"

namespace twoside::testing {

inline std::string read_file(const std::string& rel) {
  std::ifstream in(std::string(TWOSIDE_SOURCE_DIR) + "/" + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const SourceModule& prelude() {
  static const SourceModule m = parse_module(read_file("corpus/prelude.2st"));
  return m;
}

/// Deterministic across standard libraries (no distribution objects).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  bool chance(unsigned percent) { return below(100) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& xs) { return xs[below(xs.size())]; }

 private:
  std::mt19937_64 gen_;
};

/// Possibly open term over a tiny name pool, so shadowing and capture occur.
inline Term gen_open_term(Rng& rng, int depth) {
  static const std::vector<std::string> names = {"x", "y", "z"};
  if (depth <= 0 || rng.chance(20)) {
    switch (rng.below(4)) {
      case 0: return Term::ctor("Nil");
      case 1: return Term::ctor("Zero");
      case 2: return Term::top("g");
      default: return Term::local(rng.pick(names));
    }
  }
  switch (rng.below(6)) {
    case 0: return Term::abs(rng.pick(names), gen_open_term(rng, depth - 1));
    case 1: return Term::fix(rng.pick(names), gen_open_term(rng, depth - 1));
    case 2: return Term::app(gen_open_term(rng, depth - 1), gen_open_term(rng, depth - 1));
    case 3: return Term::ctor("Cons", {gen_open_term(rng, depth - 1), gen_open_term(rng, depth - 1)});
    case 4: return Term::ctor("Succ", {gen_open_term(rng, depth - 1)});
    default: {
      std::string a = rng.chance(50) ? "x" : "y";
      std::string b = a == "x" ? "y" : "x";
      std::string c = rng.chance(50) ? "z" : "w";
      std::vector<Branch> bs;
      bs.push_back(Branch{Pattern{"Nil", {}}, gen_open_term(rng, depth - 1)});
      bs.push_back(Branch{Pattern{"Cons", {a, b}}, gen_open_term(rng, depth - 1)});
      if (rng.chance(40)) bs.push_back(Branch{Pattern{"Pair", {c, "v"}}, gen_open_term(rng, depth - 1)});
      return Term::match(gen_open_term(rng, depth - 1), std::move(bs));
    }
  }
}

inline Type gen_type(Rng& rng, int depth, const std::vector<std::string>& vars) {
  if (depth <= 0 || rng.chance(25)) {
    switch (rng.below(4)) {
      case 0: return Type::ok();
      case 1: return Type::ctor("Nil", {});
      default: return Type::var(rng.pick(vars));
    }
  }
  switch (rng.below(4)) {
    case 0: return Type::to(gen_type(rng, depth - 1, vars), gen_type(rng, depth - 1, vars));
    case 1: return Type::nec(gen_type(rng, depth - 1, vars), gen_type(rng, depth - 1, vars));
    case 2: return Type::ctor("Cons", {gen_type(rng, depth - 1, vars), gen_type(rng, depth - 1, vars)});
    default: {
      std::vector<Summand> ss;
      ss.push_back(Summand{"Nil", {}});
      ss.push_back(Summand{"Cons", {gen_type(rng, depth - 1, vars), gen_type(rng, depth - 1, vars)}});
      if (rng.chance(30)) ss.push_back(Summand{"Zero", {}});
      return Type::sum(std::move(ss));
    }
  }
}

/// Up to six constraints over a, b, c; half the sides are bare variables so
/// chains form.
inline ConstraintSet gen_constraint_set(Rng& rng) {
  static const std::vector<std::string> vars = {"a", "b", "c"};
  ConstraintSet out;
  std::size_t n = rng.below(7);
  for (std::size_t i = 0; i < n; ++i) {
    Type l = rng.chance(50) ? Type::var(rng.pick(vars)) : gen_type(rng, 2, vars);
    Type r = rng.chance(50) ? Type::var(rng.pick(vars)) : gen_type(rng, 2, vars);
    out.add({l, r});
  }
  return out;
}

}  // namespace twoside::testing
