// verdict.cpp - verdicts from inference plus consistency, and the fuzz harness
#include "twoside/verdict.hpp"

#include <random>
#include <stdexcept>

#include "twoside/constraints.hpp"

namespace twoside {

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::WellTyped: return "WellTyped";
    case VerdictKind::IllTyped: return "IllTyped";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

void check_environment(const SourceModule& env, const Term& m) {
  if (!is_closed(m)) throw std::invalid_argument("verdicts are defined for closed terms only");
  check_term(m, env.signature);
  for (const auto& id : top_ids(m))
    if (!env.schemes.count(id)) throw std::invalid_argument("identifier without a declared scheme: " + id);
  for (const auto& [name, schemes] : env.schemes)
    for (const auto& s : schemes)
      if (!is_consistent(s.constraints))
        throw std::invalid_argument("inconsistent constraints in the scheme of " + name);
}

enum class Side { Right, Left };

Verdict decide(const SourceModule& env, const Term& m, const VerdictOptions& opts, Side side) {
  check_environment(env, m);
  InferOptions io;
  io.product_cap = opts.product_cap;
  InferResult res = side == Side::Right
                        ? infer_right(TypeEnv{}, m, env.schemes, env.signature, io)
                        : infer_left(TypeEnv{}, m, std::nullopt, env.schemes, env.signature, io);
  Verdict v;
  v.judgements = res.judgements.size();
  v.truncated = res.truncated;
  for (auto& ij : res.judgements) {
    if (opts.validate && !validate_algorithmic(ij.derivation, ij.constraints, env.schemes, env.signature).ok)
      ++v.invalid;
    if (v.kind != VerdictKind::Unknown) continue;
    ConstraintSet c = ij.constraints;
    const Type& a = ij.judgement.subject_type();
    c.add(side == Side::Right ? Constraint{a, Type::ok()} : Constraint{Type::ok(), a});
    if (!is_consistent(c)) continue;
    v.kind = side == Side::Right ? VerdictKind::WellTyped : VerdictKind::IllTyped;
    v.constraints = std::move(c);
    v.witness = std::move(ij);
    if (!opts.validate) break;
  }
  return v;
}

// Constructor families that a well-shaped match covers exhaustively.
std::vector<std::vector<std::string>> ctor_families(const Signature& sig) {
  static const std::vector<std::vector<std::string>> standard = {
      {"Nil", "Cons"}, {"Zero", "Succ"}, {"True", "False"}, {"Pair"}};
  std::vector<std::vector<std::string>> out;
  std::set<std::string> covered;
  for (const auto& fam : standard) {
    bool all = true;
    for (const auto& c : fam) all = all && sig.contains(c);
    if (!all) continue;
    out.push_back(fam);
    covered.insert(fam.begin(), fam.end());
  }
  for (const auto& [c, n] : sig.entries())
    if (!covered.count(c)) out.push_back({c});
  return out;
}

class Generator {
 public:
  Generator(std::uint64_t seed, const SourceModule& env, const GenOptions& opts)
      : rng_(seed), sig_(env.signature), families_(ctor_families(env.signature)), opts_(opts) {
    for (const auto& [name, schemes] : env.schemes)
      if (env.module.lookup(name)) tops_.push_back(name);
    for (const auto& [c, n] : sig_.entries())
      (n == 0 ? nullary_ : proper_).push_back(c);
  }

  Term gen(std::size_t n, const std::vector<std::string>& scope) {
    if (n <= 1) return leaf(scope);
    if (n >= 3 && chance(opts_.wrong_shape_percent)) return wrong_shape(n, scope);
    switch (below(n >= 4 ? 10 : 6)) {
      case 0:
      case 1: return abs(n, scope);
      case 2:
      case 3: {
        auto [l, r] = split2(n - 1);
        return Term::app(gen(l, scope), gen(r, scope));
      }
      case 4:
      case 5: return ctor(n, scope);
      case 6:
      case 7:
      case 8: return match(n, scope, families_[below(families_.size())], false);
      default: {
        std::string f = fresh("f"), x = fresh("x");
        auto inner = scope;
        inner.push_back(f);
        inner.push_back(x);
        return Term::fix(f, Term::abs(x, gen(n - 2, inner)));
      }
    }
  }

 private:
  std::size_t below(std::size_t k) { return static_cast<std::size_t>(rng_() % k); }
  bool chance(unsigned percent) { return below(100) < percent; }

  std::string fresh(const std::string& base) { return base + std::to_string(++counter_); }

  Term leaf(const std::vector<std::string>& scope) {
    if (!scope.empty() && chance(50)) return Term::local(scope[below(scope.size())]);
    if (!tops_.empty() && chance(20)) return Term::top(tops_[below(tops_.size())]);
    if (nullary_.empty()) throw std::invalid_argument("signature has no nullary constructor");
    return Term::ctor(nullary_[below(nullary_.size())]);
  }

  std::pair<std::size_t, std::size_t> split2(std::size_t n) {
    if (n < 2) return {1, 1};
    std::size_t l = 1 + below(n - 1);
    return {l, n - l};
  }

  std::vector<Term> args(std::size_t k, std::size_t n, const std::vector<std::string>& scope) {
    std::vector<Term> out;
    std::size_t left = n;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t rest = k - i - 1;
      std::size_t take = i + 1 == k ? left : 1 + (left > rest + 1 ? below(left - rest) : 0);
      if (take == 0) take = 1;
      out.push_back(gen(take, scope));
      left = left > take ? left - take : 1;
    }
    return out;
  }

  Term abs(std::size_t n, const std::vector<std::string>& scope) {
    std::string x = fresh("x");
    auto inner = scope;
    inner.push_back(x);
    return Term::abs(x, gen(n - 1, inner));
  }

  Term ctor(std::size_t n, const std::vector<std::string>& scope) {
    if (proper_.empty()) return leaf(scope);
    const std::string& c = proper_[below(proper_.size())];
    std::size_t k = *sig_.arity(c);
    return Term::ctor(c, args(k, std::max(n - 1, k), scope));
  }

  Term match(std::size_t n, const std::vector<std::string>& scope, const std::vector<std::string>& fam,
             bool partial) {
    std::vector<std::string> heads = fam;
    if (partial && heads.size() > 1) heads.erase(heads.begin() + static_cast<long>(below(heads.size())));
    std::size_t budget = n > heads.size() + 1 ? n - 1 : heads.size() + 1;
    std::size_t scrut = 1 + below(std::max<std::size_t>(budget / (heads.size() + 1), 1));
    std::size_t per = std::max<std::size_t>((budget - std::min(scrut, budget)) / heads.size(), 1);
    Term s = gen(scrut, scope);
    std::vector<Branch> bs;
    for (const auto& h : heads) {
      Pattern p{h, {}};
      auto inner = scope;
      for (std::size_t i = 0; i < *sig_.arity(h); ++i) {
        p.vars.push_back(fresh("v"));
        inner.push_back(p.vars.back());
      }
      bs.push_back(Branch{std::move(p), gen(per, inner)});
    }
    return Term::match(std::move(s), std::move(bs));
  }

  // Non-function application, non-matching scrutinee or missing case.
  Term wrong_shape(std::size_t n, const std::vector<std::string>& scope) {
    auto [l, r] = split2(n - 1);
    switch (below(4)) {
      case 0: {
        Term fn = proper_.empty() || chance(50) ? leaf(std::vector<std::string>{}) : ctor(l, scope);
        return Term::app(fn, gen(r, scope));
      }
      case 1: {
        Term s = abs(l, scope);
        const auto& fam = families_[below(families_.size())];
        std::vector<Branch> bs;
        for (const auto& h : fam) {
          Pattern p{h, {}};
          auto inner = scope;
          for (std::size_t i = 0; i < *sig_.arity(h); ++i) {
            p.vars.push_back(fresh("v"));
            inner.push_back(p.vars.back());
          }
          bs.push_back(Branch{std::move(p), gen(std::max<std::size_t>(r / fam.size(), 1), inner)});
        }
        return Term::match(std::move(s), std::move(bs));
      }
      case 2: return match(n, scope, families_[below(families_.size())], true);
      default: {
        if (tops_.empty()) return Term::app(Term::ctor(nullary_[below(nullary_.size())]), gen(n - 1, scope));
        return Term::app(Term::top(tops_[below(tops_.size())]), gen(n - 1, scope));
      }
    }
  }

  std::mt19937_64 rng_;
  const Signature& sig_;
  std::vector<std::vector<std::string>> families_;
  GenOptions opts_;
  std::vector<std::string> tops_, nullary_, proper_;
  std::size_t counter_ = 0;
};

}  // namespace

Verdict well_typed(const SourceModule& env, const Term& m, const VerdictOptions& opts) {
  return decide(env, m, opts, Side::Right);
}

Verdict ill_typed(const SourceModule& env, const Term& m, const VerdictOptions& opts) {
  return decide(env, m, opts, Side::Left);
}

Term gen_term(std::size_t size, std::uint64_t seed, const SourceModule& env, const GenOptions& opts) {
  if (size == 0) throw std::invalid_argument("gen_term: size must be at least 1");
  return Generator(seed, env, opts).gen(size, {});
}

ProbeReport soundness_probe(const Term& m, const SourceModule& env, std::size_t fuel, const VerdictOptions& opts) {
  if (fuel == 0) throw std::invalid_argument("soundness_probe: fuel must be at least 1");
  ProbeReport r{m, 0, well_typed(env, m, opts), ill_typed(env, m, opts), evaluate(m, env.module, fuel)};
  bool wt = r.well.kind == VerdictKind::WellTyped;
  bool it = r.ill.kind == VerdictKind::IllTyped;
  r.violation = (it && r.outcome.kind == EvalOutcome::Kind::Value) || (wt && r.outcome.kind == EvalOutcome::Kind::Stuck);
  r.exclusion_violation = wt && it;
  return r;
}

std::uint64_t probe_seed(std::uint64_t run_seed, std::size_t i) {
  // splitmix64 finaliser
  std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(i) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

FuzzSummary run_fuzz(const SourceModule& env, const FuzzConfig& cfg) {
  if (cfg.min_size == 0 || cfg.max_size < cfg.min_size) throw std::invalid_argument("fuzz: bad size range");
  FuzzSummary s;
  VerdictOptions vo;
  vo.product_cap = cfg.product_cap;
  vo.validate = cfg.validate;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    std::uint64_t seed = probe_seed(cfg.seed, i);
    std::size_t size = cfg.min_size + static_cast<std::size_t>(seed % (cfg.max_size - cfg.min_size + 1));
    ProbeReport r = soundness_probe(gen_term(size, seed, env, cfg.gen), env, cfg.fuel, vo);
    r.seed = seed;
    switch (r.outcome.kind) {
      case EvalOutcome::Kind::Value: ++s.values; break;
      case EvalOutcome::Kind::Stuck: ++s.stuck; break;
      case EvalOutcome::Kind::OutOfFuel: ++s.out_of_fuel; break;
    }
    s.well_typed += r.well.kind == VerdictKind::WellTyped;
    s.ill_typed += r.ill.kind == VerdictKind::IllTyped;
    s.violations += r.violation;
    s.exclusion_violations += r.exclusion_violation;
    s.invalid_judgements += r.well.invalid + r.ill.invalid;
    s.reports.push_back(std::move(r));
  }
  return s;
}

}  // namespace twoside
