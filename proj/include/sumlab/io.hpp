#pragma once

// Serialization: scenario files in, results out.  JSON writers use ordered
// objects so field order is fixed, and every double goes through the JSON
// shortest-round-trip formatter; identical inputs therefore produce
// byte-identical output, which the CLI relies on.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sumlab/campaign.hpp"
#include "sumlab/checks.hpp"
#include "sumlab/rational.hpp"
#include "sumlab/result.hpp"
#include "sumlab/scenario.hpp"
#include "sumlab/sidon.hpp"

namespace sumlab {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Rational parsing helpers
// ---------------------------------------------------------------------------

// Exact grammar only: integers, a/b, inf.  Decimal strings are rejected by
// ExtRational::parse, which keeps exact-mode inputs exact.
inline ExtRational rational_from_json(const Json& v) {
  if (v.is_number_integer()) return ExtRational(v.get<long long>());
  if (v.is_string()) return ExtRational::parse(v.get<std::string>());
  throw std::invalid_argument("scenario: expected an integer or a rational string, got " +
                              v.dump());
}

// Lenient grammar for numeric-lab inputs: everything the exact grammar takes,
// plus finite decimal literals, which convert exactly (d.ddd = mantissa/10^k).
inline ExtRational parse_rational_lenient(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return ExtRational::parse(text);

  std::string_view head = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos)
    throw std::invalid_argument("parse_rational_lenient: bad decimal '" + std::string(text) +
                                "'");
  bool negative = false;
  if (!head.empty() && (head.front() == '+' || head.front() == '-')) {
    negative = head.front() == '-';
    head.remove_prefix(1);
  }
  if (!head.empty() && head.find_first_not_of("0123456789") != std::string_view::npos)
    throw std::invalid_argument("parse_rational_lenient: bad decimal '" + std::string(text) +
                                "'");

  ExtRational value = head.empty() ? ExtRational(0) : ExtRational::parse(head);
  ExtRational scale(1);
  for (char c : frac) {
    scale = scale * ExtRational(10);
    value = value * ExtRational(10) + ExtRational(c - '0');
  }
  value = value / scale;
  return negative ? ExtRational(0) - value : value;
}

// Comma-separated list of rationals ("1,3/2,inf").
inline std::vector<ExtRational> parse_rational_list(std::string_view text, bool lenient = false) {
  std::vector<ExtRational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(start, comma - start);
    if (item.empty())
      throw std::invalid_argument("parse_rational_list: empty entry in '" + std::string(text) +
                                  "'");
    out.push_back(lenient ? parse_rational_lenient(item) : ExtRational::parse(item));
    if (comma == text.size()) break;
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("parse_rational_list: empty list");
  return out;
}

// ---------------------------------------------------------------------------
// Scenario files
// ---------------------------------------------------------------------------

// Schema: {"m": 3, "blocks": [[1],[2],[3]], "q": "2", "r": [...], "p": [...]}
// with blocks 1-based and one r/p entry per block.  Rational values may be
// JSON integers or strings.
inline PartitionScenario scenario_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("scenario: top level must be an object");
  for (const char* key : {"m", "blocks", "q", "r", "p"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("scenario: missing field '") + key + "'");

  if (!j["m"].is_number_integer()) throw std::invalid_argument("scenario: m must be an integer");
  const int m = j["m"].get<int>();

  if (!j["blocks"].is_array()) throw std::invalid_argument("scenario: blocks must be an array");
  std::vector<std::vector<int>> blocks;
  for (const auto& blk : j["blocks"]) {
    if (!blk.is_array()) throw std::invalid_argument("scenario: each block must be an array");
    std::vector<int> block;
    for (const auto& v : blk) {
      if (!v.is_number_integer())
        throw std::invalid_argument("scenario: block entries must be integers");
      block.push_back(v.get<int>());
    }
    blocks.push_back(std::move(block));
  }

  ExtRational q = rational_from_json(j["q"]);
  if (!j["r"].is_array() || !j["p"].is_array())
    throw std::invalid_argument("scenario: r and p must be arrays");
  std::vector<ExtRational> r, p;
  for (const auto& v : j["r"]) r.push_back(rational_from_json(v));
  for (const auto& v : j["p"]) p.push_back(rational_from_json(v));
  // The constructor validates the partition and exponent ranges.
  return PartitionScenario(m, std::move(blocks), std::move(q), std::move(r), std::move(p));
}

inline PartitionScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_scenario: cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw std::runtime_error("load_scenario: '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

// ---------------------------------------------------------------------------
// JSON writers
// ---------------------------------------------------------------------------

inline Json to_json(const Condition& c) {
  return Json{{"name", c.name},
              {"lhs", c.lhs.str()},
              {"rel", c.rel},
              {"rhs", c.rhs.str()},
              {"pass", c.pass}};
}

inline Json to_json(const ExponentResult& res) {
  Json j;
  if (res.s) {
    j["s"] = res.s->str();
    j["s_decimal"] = res.s->to_double();
  } else {
    j["s"] = nullptr;
    j["s_decimal"] = nullptr;
  }
  j["theorem"] = theorem_name(res.theorem);
  Json conds = Json::array();
  for (const auto& c : res.conditions) conds.push_back(to_json(c));
  j["conditions"] = std::move(conds);
  j["warnings"] = res.warnings;
  j["witness"] = res.witness;  // std::map: keys already sorted
  return j;
}

inline Json to_json(const CheckReport& rep) {
  return Json{{"lhs", rep.lhs},
              {"rhs", rep.rhs},
              {"ratio", rep.ratio},
              {"slack", rep.slack},
              {"holds", rep.holds},
              {"rhs_certified", rep.rhs_certified},
              {"verdict", verdict_name(rep.verdict)},
              {"tolerance", rep.tolerance},
              {"seed", rep.seed},
              {"multistart", rep.multistart},
              {"note", rep.note}};
}

inline Json to_json(const CampaignSummary& s) {
  return Json{{"trials", s.trials},
              {"violations", s.violations},
              {"min_ratio", s.min_ratio},
              {"max_ratio", s.max_ratio},
              {"mean_ratio", s.mean_ratio}};
}

inline Json to_json(const TrialRow& row) {
  return Json{{"trial", row.trial}, {"seed", row.seed},   {"lhs", row.lhs},
              {"rhs", row.rhs},     {"ratio", row.ratio}, {"holds", row.holds}};
}

inline Json to_json(const CampaignResult& res, bool include_rows = false) {
  Json j;
  j["summary"] = to_json(res.summary);
  if (include_rows) {
    Json rows = Json::array();
    for (const auto& row : res.rows) rows.push_back(to_json(row));
    j["rows"] = std::move(rows);
  }
  return j;
}

inline Json to_json(const SummingReport& rep) {
  return Json{{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"ratio", rep.ratio}};
}

inline Json to_json(const GrowthFit& fit) {
  return Json{{"slope", fit.slope}, {"intercept", fit.intercept}};
}

inline Json to_json(const WitnessSeries& series) {
  return Json{{"n", series.ns},
              {"lhs", series.lhs},
              {"rhs", series.rhs},
              {"lhs_fit", to_json(series.lhs_fit)},
              {"rhs_fit", to_json(series.rhs_fit)}};
}

inline Json to_json(const NormEstimate& est) {
  return Json{{"value", est.value}, {"stderr", est.stderr_}, {"exact", est.exact}};
}

inline Json to_json(const WitnessReport& rep) {
  return Json{{"N", rep.N},
              {"s", rep.s},
              {"inner_product", rep.inner},
              {"factor_count", rep.factor_count},
              {"alphabet", rep.alphabet},
              {"f_coeff_l2", rep.f_coeff_l2},
              {"riesz_l2", rep.riesz_l2},
              {"fs_norm", to_json(rep.fs_norm)},
              {"coeff_norm", rep.coeff_norm},
              {"ratio", rep.ratio},
              {"ratio_lower_bound", rep.ratio_lower_bound},
              {"margin", rep.margin.str()}};
}

// ---------------------------------------------------------------------------
// CSV writers
// ---------------------------------------------------------------------------

// Doubles in CSV reuse the JSON shortest-round-trip formatter so the two
// formats never disagree on a value.
inline std::string csv_double(double x) { return Json(x).dump(); }

inline std::string campaign_csv(const CampaignResult& res) {
  std::ostringstream out;
  out << "trial,seed,lhs,rhs,ratio,holds\n";
  for (const auto& row : res.rows) {
    out << row.trial << ',' << row.seed << ',' << csv_double(row.lhs) << ','
        << csv_double(row.rhs) << ',' << csv_double(row.ratio) << ','
        << (row.holds ? "true" : "false") << '\n';
  }
  return out.str();
}

inline std::string witness_series_csv(const WitnessSeries& series) {
  std::ostringstream out;
  out << "n,lhs,rhs\n";
  for (std::size_t i = 0; i < series.ns.size(); ++i) {
    out << csv_double(series.ns[i]) << ',' << csv_double(series.lhs[i]) << ','
        << csv_double(series.rhs[i]) << '\n';
  }
  return out.str();
}

}  // namespace sumlab
