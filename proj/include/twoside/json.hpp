// twoside/json.hpp - JSON encoding of terms, types, judgements and derivations
#pragma once

#include <string>

#include <json.hpp>

#include "twoside/infer.hpp"
#include "twoside/judgement.hpp"
#include "twoside/kernel.hpp"
#include "twoside/verdict.hpp"

namespace twoside {

using Json = nlohmann::json;

/// Value of the "version" field of every top-level document.
inline constexpr const char* kJsonVersion = "twoside/1";

[[nodiscard]] Json type_to_json(const Type& t);
[[nodiscard]] Json term_to_json(const Term& t);
[[nodiscard]] Json constraints_to_json(const ConstraintSet& c);
[[nodiscard]] Json judgement_to_json(const Judgement& j);
[[nodiscard]] Json derivation_to_json(const Derivation& d);
[[nodiscard]] Json inferred_to_json(const InferredJudgement& ij);
[[nodiscard]] Json verdict_to_json(const Verdict& v);
[[nodiscard]] Json eval_outcome_to_json(const EvalOutcome& o);
[[nodiscard]] Json probe_to_json(const ProbeReport& r);

/// The decoders throw std::invalid_argument naming the offending field.
[[nodiscard]] Type type_from_json(const Json& j);
[[nodiscard]] Term term_from_json(const Json& j);
[[nodiscard]] ConstraintSet constraints_from_json(const Json& j);
[[nodiscard]] Judgement judgement_from_json(const Json& j);
[[nodiscard]] Derivation derivation_from_json(const Json& j);
[[nodiscard]] InferredJudgement inferred_from_json(const Json& j);

/// Kernel derivations store terms and types in surface syntax.
[[nodiscard]] Json kernel_derivation_to_json(const kernel::Derivation& d);
[[nodiscard]] kernel::Derivation kernel_derivation_from_json(const Json& j);

struct KernelDocument {
  kernel::System system;
  kernel::Derivation derivation;
};

[[nodiscard]] Json kernel_document_to_json(const KernelDocument& doc);
/// Also throws std::invalid_argument when a term or type fails to parse.
[[nodiscard]] KernelDocument kernel_document_from_json(const Json& j);

/// Pretty-printed with two-space indentation and a trailing newline.
[[nodiscard]] std::string dump_json(const Json& j);

}  // namespace twoside
