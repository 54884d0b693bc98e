// eval.cpp - call-by-value small-step semantics with fuel
#include "twoside/eval.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace twoside {

std::string_view to_string(StuckReason r) {
  switch (r) {
    case StuckReason::ApplyNonFunction: return "apply-non-function";
    case StuckReason::MatchNoCase: return "match-no-case";
    case StuckReason::MatchNonCtor: return "match-non-ctor";
    case StuckReason::FreeTopId: return "free-top-id";
  }
  return "unknown";
}

Term plug(const EvalContext& ctx, const Term& hole) {
  Term t = hole;
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
    const Frame& f = *it;
    switch (f.kind) {
      case Frame::Kind::Ctor: {
        std::vector<Term> args = f.done;
        args.push_back(t);
        args.insert(args.end(), f.pending.begin(), f.pending.end());
        t = Term::ctor(f.ctor, std::move(args));
        break;
      }
      case Frame::Kind::AppFun: t = Term::app(t, *f.other); break;
      case Frame::Kind::AppArg: t = Term::app(*f.other, t); break;
      case Frame::Kind::Match: t = Term::match(t, f.other->branches()); break;
    }
  }
  return t;
}

namespace {

const Branch* find_branch(const Term& match, const std::string& ctor) {
  for (const auto& b : match.branches())
    if (b.pattern.ctor == ctor) return &b;
  return nullptr;
}

// Classifies a match whose scrutinee is the value v.
Decomposition match_on_value(EvalContext& ctx, const Term& match, const Term& v) {
  Term focus = match.scrutinee().same_node(v) ? match : Term::match(v, match.branches());
  if (v.kind() != TermKind::Ctor) {
    return {Decomposition::Kind::Stuck, std::move(ctx), focus, RedexKind::Match, StuckReason::MatchNonCtor};
  }
  if (!find_branch(match, v.name())) {
    return {Decomposition::Kind::Stuck, std::move(ctx), focus, RedexKind::Match, StuckReason::MatchNoCase};
  }
  return {Decomposition::Kind::Redex, std::move(ctx), focus, RedexKind::Match, StuckReason::MatchNoCase};
}

// Runs the decomposition machine from context ctx with focus in evaluation
// position; every frame of ctx has a value to the left of its hole.
Decomposition descend(EvalContext ctx, Term focus) {
  for (;;) {
    if (focus.is_value()) {
      if (ctx.empty()) return {Decomposition::Kind::Value, {}, focus};
      Frame& f = ctx.back();
      switch (f.kind) {
        case Frame::Kind::Ctor: {
          f.done.push_back(focus);
          while (!f.pending.empty() && f.pending.front().is_value()) {
            f.done.push_back(f.pending.front());
            f.pending.erase(f.pending.begin());
          }
          if (!f.pending.empty()) {
            focus = f.pending.front();
            f.pending.erase(f.pending.begin());
          } else {
            focus = Term::ctor(f.ctor, std::move(f.done));
            ctx.pop_back();
          }
          continue;
        }
        case Frame::Kind::AppFun: {
          Term arg = *f.other;
          ctx.pop_back();
          if (focus.kind() != TermKind::Abs) {
            return {Decomposition::Kind::Stuck, std::move(ctx), Term::app(focus, arg), RedexKind::Beta,
                    StuckReason::ApplyNonFunction};
          }
          if (arg.is_value()) {
            return {Decomposition::Kind::Redex, std::move(ctx), Term::app(focus, arg), RedexKind::Beta};
          }
          ctx.push_back(Frame{Frame::Kind::AppArg, {}, {}, {}, focus});
          focus = arg;
          continue;
        }
        case Frame::Kind::AppArg: {
          Term fn = *f.other;
          ctx.pop_back();
          return {Decomposition::Kind::Redex, std::move(ctx), Term::app(fn, focus), RedexKind::Beta};
        }
        case Frame::Kind::Match: {
          Term match = *f.other;
          ctx.pop_back();
          return match_on_value(ctx, match, focus);
        }
      }
    }
    switch (focus.kind()) {
      case TermKind::Top: return {Decomposition::Kind::Redex, std::move(ctx), focus, RedexKind::Delta};
      case TermKind::Fix: return {Decomposition::Kind::Redex, std::move(ctx), focus, RedexKind::Fix};
      case TermKind::Ctor: {
        Frame f{Frame::Kind::Ctor, focus.name(), {}, {}, {}};
        const auto& args = focus.args();
        std::size_t i = 0;
        while (args[i].is_value()) f.done.push_back(args[i++]);
        Term next = args[i];
        f.pending.assign(args.begin() + static_cast<long>(i) + 1, args.end());
        ctx.push_back(std::move(f));
        focus = next;
        continue;
      }
      case TermKind::App: {
        ctx.push_back(Frame{Frame::Kind::AppFun, {}, {}, {}, focus.arg()});
        focus = focus.fn();
        continue;
      }
      case TermKind::Match: {
        if (focus.scrutinee().is_value()) return match_on_value(ctx, focus, focus.scrutinee());
        ctx.push_back(Frame{Frame::Kind::Match, {}, {}, {}, focus});
        focus = focus.scrutinee();
        continue;
      }
      case TermKind::Local:
      case TermKind::Abs: break;  // values, handled above
    }
    throw std::logic_error("decompose: unexpected term shape");
  }
}

// Contracts a redex; nullopt for an undefined top-level identifier.
std::optional<Term> contract(const Term& redex, RedexKind kind, const TopModule& m) {
  switch (kind) {
    case RedexKind::Delta: {
      const Term* body = m.lookup(redex.name());
      if (!body) return std::nullopt;
      return *body;
    }
    case RedexKind::Beta: {
      const Term& fn = redex.fn();
      return substitute(fn.body(), {{fn.name(), redex.arg()}});
    }
    case RedexKind::Fix: return substitute(redex.body(), {{redex.name(), redex}});
    case RedexKind::Match: {
      const Term& v = redex.scrutinee();
      const Branch* b = find_branch(redex, v.name());
      std::map<std::string, Term> s;
      for (std::size_t i = 0; i < b->pattern.vars.size(); ++i) s.emplace(b->pattern.vars[i], v.args()[i]);
      return substitute(b->body, s);
    }
  }
  return std::nullopt;
}

void require_closed(const Term& t) {
  if (!t.free_var_list().empty()) {
    throw std::invalid_argument("cannot evaluate an open term (free variable '" + t.free_var_list().front() + "')");
  }
}

}  // namespace

Decomposition decompose(const Term& t) {
  require_closed(t);
  return descend({}, t);
}

StepResult step(const Term& t, const TopModule& m) {
  Decomposition d = decompose(t);
  switch (d.kind) {
    case Decomposition::Kind::Value: return {StepResult::Kind::Done, d.focus};
    case Decomposition::Kind::Stuck: return {StepResult::Kind::Blocked, t, d.reason};
    case Decomposition::Kind::Redex: break;
  }
  auto reduct = contract(d.focus, d.redex, m);
  if (!reduct) return {StepResult::Kind::Blocked, t, StuckReason::FreeTopId};
  return {StepResult::Kind::Reduced, plug(d.ctx, *reduct)};
}

EvalOutcome evaluate(const Term& t, const TopModule& m, std::size_t fuel) {
  require_closed(t);
  std::size_t steps = 0;
  Decomposition d = descend({}, t);
  for (;;) {
    switch (d.kind) {
      case Decomposition::Kind::Value: return {EvalOutcome::Kind::Value, d.focus, std::nullopt, steps};
      case Decomposition::Kind::Stuck:
        return {EvalOutcome::Kind::Stuck, plug(d.ctx, d.focus), d.reason, steps};
      case Decomposition::Kind::Redex: break;
    }
    auto reduct = contract(d.focus, d.redex, m);
    if (!reduct) return {EvalOutcome::Kind::Stuck, plug(d.ctx, d.focus), StuckReason::FreeTopId, steps};
    if (steps == fuel) return {EvalOutcome::Kind::OutOfFuel, std::nullopt, std::nullopt, steps};
    ++steps;
    d = descend(std::move(d.ctx), std::move(*reduct));
  }
}

std::size_t default_fuel() {
  if (const char* env = std::getenv("TWOSIDE_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return kDefaultFuel;
}

}  // namespace twoside
