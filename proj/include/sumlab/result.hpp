#pragma once

// Result carrier for the exponent calculators.  A calculator never throws on
// a failed theorem hypothesis: hypotheses are data.  Every checked inequality
// is recorded with its exactly-evaluated sides so a reader (or the JSON
// output) can see precisely why a scenario was accepted or rejected.
// Exceptions are reserved for malformed input (bad partition, p < 1, ...).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sumlab/rational.hpp"

namespace sumlab {

enum class Theorem {
  None,
  Main1,
  Main2,
  Main3,
  CorMain,
  Intro,
  Inclusion,
  HardyLittlewood,
  Praciano,
  Popa,
  Sidon,
  Opti1,
  Opti2,
  Displike,
};

inline const char* theorem_name(Theorem t) {
  switch (t) {
    case Theorem::None: return "NONE";
    case Theorem::Main1: return "MAIN1";
    case Theorem::Main2: return "MAIN2";
    case Theorem::Main3: return "MAIN3";
    case Theorem::CorMain: return "COR_MAIN";
    case Theorem::Intro: return "INTRO";
    case Theorem::Inclusion: return "INCLUSION";
    case Theorem::HardyLittlewood: return "HARDY_LITTLEWOOD";
    case Theorem::Praciano: return "PRACIANO";
    case Theorem::Popa: return "POPA";
    case Theorem::Sidon: return "SIDON";
    case Theorem::Opti1: return "OPTI1";
    case Theorem::Opti2: return "OPTI2";
    case Theorem::Displike: return "DISPLIKE";
  }
  return "NONE";
}

// One checked hypothesis: name is a human label, lhs/rel/rhs the exact
// evaluated inequality.  rel is one of < <= > >= = !=.
struct Condition {
  std::string name;
  ExtRational lhs;
  std::string rel;
  ExtRational rhs;
  bool pass = false;

  static Condition make(std::string name, const ExtRational& lhs, std::string rel,
                        const ExtRational& rhs) {
    Condition c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rel = std::move(rel);
    c.rhs = rhs;
    if (c.rel == "<") c.pass = lhs < rhs;
    else if (c.rel == "<=") c.pass = lhs <= rhs;
    else if (c.rel == ">") c.pass = lhs > rhs;
    else if (c.rel == ">=") c.pass = lhs >= rhs;
    else if (c.rel == "=") c.pass = lhs == rhs;
    else if (c.rel == "!=") c.pass = !(lhs == rhs);
    else throw std::invalid_argument("Condition: unknown relation '" + c.rel + "'");
    return c;
  }
};

struct ExponentResult {
  std::optional<ExtRational> s;  // empty = NONE
  Theorem theorem = Theorem::None;
  std::vector<Condition> conditions;
  std::vector<std::string> warnings;
  // Theorem-specific payload (gamma values, witness (J,k0), R, ...) as
  // printable exact strings, keyed deterministically.
  std::map<std::string, std::string> witness;

  bool ok() const { return s.has_value(); }

  bool all_conditions_pass() const {
    for (const auto& c : conditions)
      if (!c.pass) return false;
    return true;
  }

  // First failed condition name, or empty string.
  std::string failing_condition() const {
    for (const auto& c : conditions)
      if (!c.pass) return c.name;
    return {};
  }

  void add(Condition c) { conditions.push_back(std::move(c)); }
};

}  // namespace sumlab
