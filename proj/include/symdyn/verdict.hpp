#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace symdyn {

using json = nlohmann::json;

// Outcome of a finite-horizon search for a definitional witness. Negative
// universal claims are only ever Refuted when an exact argument backs them;
// a search that simply ran out of budget is Exhausted.
enum class Outcome { Witnessed, Refuted, Exhausted };

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Witnessed: return "Witnessed";
    case Outcome::Refuted: return "Refuted";
    case Outcome::Exhausted: return "Exhausted";
  }
  return "?";
}

struct Verdict {
  Outcome outcome = Outcome::Exhausted;
  // Test-specific name of the outcome (e.g. "CounterexampleFound").
  std::string label;
  std::string reason;
  // Numeric payload for verdicts that carry one (a period, a height...).
  std::optional<long> value;
  // Replayable evidence for Witnessed results; null otherwise.
  json certificate;
  json budget;
  std::vector<std::string> notes;

  bool witnessed() const { return outcome == Outcome::Witnessed; }
  bool exhausted() const { return outcome == Outcome::Exhausted; }
  bool refuted() const { return outcome == Outcome::Refuted; }

  static Verdict make(Outcome o, std::string label, std::string reason = {}) {
    Verdict v;
    v.outcome = o;
    v.label = std::move(label);
    v.reason = std::move(reason);
    return v;
  }
};

inline json to_json(const Verdict& v) {
  json j;
  j["outcome"] = std::string(to_string(v.outcome));
  j["label"] = v.label;
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.value) j["value"] = *v.value;
  if (!v.budget.is_null()) j["budget"] = v.budget;
  if (!v.certificate.is_null()) j["certificate"] = v.certificate;
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

}  // namespace symdyn
