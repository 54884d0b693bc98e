// twoside/verdict.hpp - well-typed and ill-typed verdicts and the soundness probe
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "twoside/eval.hpp"
#include "twoside/infer.hpp"
#include "twoside/parser.hpp"

namespace twoside {

enum class VerdictKind { WellTyped, IllTyped, Unknown };

[[nodiscard]] std::string_view to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<InferredJudgement> witness;
  /// Witness constraints plus the closing constraint on the subject type.
  ConstraintSet constraints;
  std::size_t judgements = 0;
  bool truncated = false;
  /// Judgements that failed re-validation; only counted when requested.
  std::size_t invalid = 0;
};

struct VerdictOptions {
  std::size_t product_cap = kDefaultProductCap;
  bool validate = false;
};

/// Throws std::invalid_argument when m is open, mentions an unknown
/// identifier, or a declared scheme has inconsistent constraints.
[[nodiscard]] Verdict well_typed(const SourceModule& env, const Term& m, const VerdictOptions& opts = {});
[[nodiscard]] Verdict ill_typed(const SourceModule& env, const Term& m, const VerdictOptions& opts = {});

struct GenOptions {
  unsigned wrong_shape_percent = 30;
};

/// Closed term of roughly `size` nodes over the signature and the
/// identifiers of `env`. Deterministic in (size, seed).
[[nodiscard]] Term gen_term(std::size_t size, std::uint64_t seed, const SourceModule& env,
                            const GenOptions& opts = {});

struct ProbeReport {
  Term term;
  std::uint64_t seed = 0;
  Verdict well;
  Verdict ill;
  EvalOutcome outcome;
  /// IllTyped with a Value, or WellTyped with a Stuck term.
  bool violation = false;
  /// Both verdicts at once.
  bool exclusion_violation = false;
};

[[nodiscard]] ProbeReport soundness_probe(const Term& m, const SourceModule& env, std::size_t fuel,
                                          const VerdictOptions& opts = {});

struct FuzzConfig {
  std::size_t count = 10000;
  std::uint64_t seed = 1;
  std::size_t min_size = 5;
  std::size_t max_size = 40;
  std::size_t fuel = 10000;
  std::size_t product_cap = 16;
  bool validate = false;
  GenOptions gen;
};

struct FuzzSummary {
  std::vector<ProbeReport> reports;
  std::size_t values = 0, stuck = 0, out_of_fuel = 0;
  std::size_t well_typed = 0, ill_typed = 0;
  std::size_t violations = 0, exclusion_violations = 0, invalid_judgements = 0;
};

/// Seed of the i-th probe of a run; each probe is reproducible alone.
[[nodiscard]] std::uint64_t probe_seed(std::uint64_t run_seed, std::size_t i);

[[nodiscard]] FuzzSummary run_fuzz(const SourceModule& env, const FuzzConfig& cfg);

}  // namespace twoside
