// sumlab: command-line front end for the exponent calculators, the numeric
// verification campaigns and the Walsh/Riesz witness builder.
//
// Subcommands:
//   exponent <mode>  exact rational inputs -> ExponentResult (JSON/CSV/table)
//   verify   <mode>  numeric campaigns / sharpness checks -> CSV + JSON summary
//   witness  sidon   Riesz-pairing witness report -> JSON
//   scan             grid sweep over one exponent mode -> CSV
//
// Exit codes: 0 success, 1 condition failure / certified violation, 2 usage
// or parse error.  Output is byte-identical for identical (inputs, seed,
// flags): every double is printed through the JSON round-trip formatter and
// all randomness flows from the --seed flag.

#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sumlab/campaign.hpp"
#include "sumlab/checks.hpp"
#include "sumlab/exponents.hpp"
#include "sumlab/io.hpp"
#include "sumlab/sidon.hpp"

namespace {

using namespace sumlab;

// ---------------------------------------------------------------------------
// Flag plumbing
// ---------------------------------------------------------------------------

// Raw exponent-mode parameters.  Everything arrives as strings so each mode
// can decide between scalar and list interpretation; empty string = absent.
struct ExponentParams {
  std::string scenario;
  int m = -1;
  int m1 = -1;
  int m2 = -1;
  std::string q, r, p, t, s, u, alpha, beta, p1, p2, cotype;
  std::vector<int> cbar;
};

[[noreturn]] void missing(const std::string& mode, const char* flag) {
  throw std::invalid_argument("exponent " + mode + ": missing " + flag);
}

ExtRational scalar(const std::string& raw, const std::string& mode, const char* flag) {
  if (raw.empty()) missing(mode, flag);
  auto xs = parse_rational_list(raw);
  if (xs.size() != 1)
    throw std::invalid_argument("exponent " + mode + ": " + flag + " takes a single value");
  return xs[0];
}

// List-valued flag, broadcasting a single value to the required length.
std::vector<ExtRational> list_n(const std::string& raw, std::size_t n, const std::string& mode,
                                const char* flag) {
  if (raw.empty()) missing(mode, flag);
  auto xs = parse_rational_list(raw);
  if (xs.size() == n) return xs;
  if (xs.size() == 1) return std::vector<ExtRational>(n, xs[0]);
  throw std::invalid_argument("exponent " + mode + ": " + flag + " needs 1 or " +
                              std::to_string(n) + " values");
}

std::vector<ExtRational> list_any(const std::string& raw, const std::string& mode,
                                  const char* flag) {
  if (raw.empty()) missing(mode, flag);
  return parse_rational_list(raw);
}

int need_m(const ExponentParams& P, const std::string& mode) {
  if (P.m < 0) missing(mode, "--m");
  return P.m;
}

// Vector-valued flag for modes whose length is not otherwise determined: an
// explicit --m broadcasts a scalar to m entries, otherwise the list is taken
// as written.
std::vector<ExtRational> vector_param(const ExponentParams& P, const std::string& raw,
                                      const std::string& mode, const char* flag) {
  if (P.m >= 0) return list_n(raw, static_cast<std::size_t>(P.m), mode, flag);
  return list_any(raw, mode, flag);
}

// ---------------------------------------------------------------------------
// Exponent dispatch
// ---------------------------------------------------------------------------

ExponentResult wrap_value(const ExtRational& s, Theorem tag) {
  ExponentResult res;
  res.s = s;
  res.theorem = tag;
  return res;
}

ExponentResult run_exponent_mode(const std::string& mode, const ExponentParams& P) {
  if (mode == "auto" || mode == "main1" || mode == "main2" || mode == "main3") {
    if (P.scenario.empty()) missing(mode, "--scenario");
    PartitionScenario sc = load_scenario(P.scenario);
    if (mode == "main1") return main1_exponent(sc);
    if (mode == "main2") return main2_exponent(sc);
    if (mode == "main3") return main3_exponent(sc);
    return best_exponent(sc);
  }
  if (mode == "cor-main") {
    const int m = need_m(P, mode);
    const std::size_t n = static_cast<std::size_t>(m);
    return cor_main_exponent(m, scalar(P.q, mode, "--q"), list_n(P.r, n, mode, "--r"),
                             list_n(P.p, n, mode, "--p"));
  }
  if (mode == "intro") {
    return intro_exponent(need_m(P, mode), scalar(P.q, mode, "--q"), scalar(P.r, mode, "--r"),
                          scalar(P.p, mode, "--p"), scalar(P.t, mode, "--t"));
  }
  if (mode == "inclusion") {
    auto qv = vector_param(P, P.q, mode, "--q");
    return inclusion_exponent(scalar(P.r, mode, "--r"), list_n(P.p, qv.size(), mode, "--p"), qv);
  }
  if (mode == "hl") {
    return hardy_littlewood_exponent(vector_param(P, P.p, mode, "--p"));
  }
  if (mode == "praciano") {
    auto p = vector_param(P, P.p, mode, "--p");
    ExponentResult res;
    res.theorem = Theorem::Praciano;
    ExtRational budget(0);
    for (const auto& pk : p) budget += reciprocal(pk);
    res.add(Condition::make("sum(1/p_k) < 1", budget, "<", ExtRational(1)));
    if (auto rho = praciano_rho(p)) res.s = *rho;
    return res;
  }
  if (mode == "popa") {
    auto r = list_any(P.r, mode, "--r");
    PopaExponents pe = popa_exponents(scalar(P.q, mode, "--q"), r);
    ExponentResult res = wrap_value(pe.Q, Theorem::Popa);
    res.witness["R"] = pe.R.str();
    res.witness["Q"] = pe.Q.str();
    return res;
  }
  if (mode == "sidon" || mode == "rider") {
    auto p = vector_param(P, P.p, mode, "--p");
    ExtRational s = mode == "rider" ? rider_product_exponent(p) : sidon_product_exponent(p);
    ExponentResult res = wrap_value(s, Theorem::Sidon);
    if (mode == "rider") res.witness["variant"] = "rider";
    return res;
  }
  if (mode == "opti1") {
    const int m = need_m(P, mode);
    const ExtRational p = scalar(P.p, mode, "--p");
    if (!P.u.empty()) {
      // rho(u,p,m) route: the exponent the r-route must match at u = s*.
      const ExtRational u = scalar(P.u, mode, "--u");
      ExponentResult res;
      res.theorem = Theorem::Opti1;
      res.witness["route"] = "rho(u,p,m)";
      if (auto rho = opti1_rho(m, u, p)) res.s = *rho;
      else res.warnings.push_back("rho undefined: 1/rho <= 0 for these (m,u,p)");
      return res;
    }
    return opti1_optimal_s(m, scalar(P.r, mode, "--r"), p);
  }
  if (mode == "opti2") {
    const ExtRational s = scalar(P.s, mode, "--s");
    Opti2Result pred = opti2_predicate(scalar(P.r, mode, "--r"), scalar(P.p, mode, "--p"), s,
                                       scalar(P.q, mode, "--q"));
    ExponentResult res;
    res.theorem = Theorem::Opti2;
    res.add(Condition::make("1/s - 2/q <= 1/r - 2/p", pred.lhs, "<=", pred.rhs));
    if (pred.holds) res.s = s;
    return res;
  }
  if (mode == "displike") {
    auto qv = list_any(P.q, mode, "--q");
    std::set<int> cbar(P.cbar.begin(), P.cbar.end());
    std::optional<ExtRational> cotype;
    if (!P.cotype.empty()) cotype = scalar(P.cotype, mode, "--cotype");
    return displike_exponent(scalar(P.r, mode, "--r"), qv, cbar, cotype);
  }
  if (mode == "compare-pg") {
    ComparePG cmp = compare_perez_garcia(need_m(P, mode), scalar(P.s, mode, "--s"));
    ExponentResult res = wrap_value(cmp.t_inclusion, Theorem::Inclusion);
    res.add(Condition::make("t_inclusion < t_square_function", cmp.t_inclusion, "<",
                            cmp.t_square_function));
    res.witness["t_inclusion"] = cmp.t_inclusion.str();
    res.witness["t_square_function"] = cmp.t_square_function.str();
    res.witness["inclusion_better"] = cmp.inclusion_better ? "true" : "false";
    return res;
  }
  throw std::invalid_argument("exponent: unknown mode '" + mode + "'");
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string rational_cell(const std::optional<ExtRational>& s) {
  return s ? s->str() : std::string("NONE");
}

void print_exponent_result(const ExponentResult& res, const std::string& format) {
  if (format == "json") {
    std::cout << to_json(res).dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    std::cout << "s,theorem,failing_condition\n"
              << rational_cell(res.s) << ',' << theorem_name(res.theorem) << ','
              << res.failing_condition() << "\n";
    return;
  }
  // table
  if (res.s)
    std::cout << "s        = " << res.s->str() << " (= " << csv_double(res.s->to_double())
              << ")\n";
  else
    std::cout << "s        = NONE\n";
  std::cout << "theorem  = " << theorem_name(res.theorem) << "\n";
  for (const auto& c : res.conditions)
    std::cout << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << ": " << c.lhs.str() << ' '
              << c.rel << ' ' << c.rhs.str() << "\n";
  for (const auto& [k, v] : res.witness) std::cout << "  " << k << " = " << v << "\n";
  for (const auto& w : res.warnings) std::cout << "  warning: " << w << "\n";
}

void print_campaign(const CampaignResult& res, const std::string& format) {
  if (format == "csv") {
    std::cout << campaign_csv(res);
    std::cout << to_json(res.summary).dump(2) << "\n";
    return;
  }
  if (format == "table") {
    const auto& s = res.summary;
    std::cout << "trials     = " << s.trials << "\n"
              << "violations = " << s.violations << "\n"
              << "min_ratio  = " << csv_double(s.min_ratio) << "\n"
              << "max_ratio  = " << csv_double(s.max_ratio) << "\n"
              << "mean_ratio = " << csv_double(s.mean_ratio) << "\n";
    return;
  }
  std::cout << to_json(res).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// verify subcommand
// ---------------------------------------------------------------------------

struct VerifyParams {
  std::vector<int> dims;
  int trials = 100;
  std::uint64_t seed = 0;
  double tol = -1.0;  // -1 = per-mode default
  int multistart = 20;
  std::string q, r, p, alpha, beta, p1, p2, s;
  int m1 = 1;
  bool diag = false;
  int n = 0;
  std::string witness_kind = "diagonal";
};

ExtRational vscalar(const std::string& raw, const char* flag) {
  if (raw.empty()) throw std::invalid_argument(std::string("verify: missing ") + flag);
  return parse_rational_lenient(raw);
}

std::vector<ExtRational> vlist(const std::string& raw, std::size_t n, const char* flag) {
  if (raw.empty()) throw std::invalid_argument(std::string("verify: missing ") + flag);
  auto xs = parse_rational_list(raw, /*lenient=*/true);
  if (xs.size() == n) return xs;
  if (xs.size() == 1) return std::vector<ExtRational>(n, xs[0]);
  throw std::invalid_argument(std::string("verify: ") + flag + " needs 1 or " +
                              std::to_string(n) + " values");
}

NonnegTensor diagonal_ones(int axes, int n) {
  std::vector<int> dims(static_cast<std::size_t>(axes), n);
  Tensor t = Tensor::zeros(dims);
  std::vector<int> idx(static_cast<std::size_t>(axes));
  for (int i = 0; i < n; ++i) {
    std::fill(idx.begin(), idx.end(), i);
    t.at(idx) = 1.0;
  }
  return NonnegTensor(std::move(t));
}

int run_verify(const std::string& mode, const VerifyParams& V, const std::string& format) {
  OptimizeOptions opt;
  opt.multistart = V.multistart;
  opt.seed = V.seed == 0 ? opt.seed : V.seed;

  if (mode == "popa") {
    if (V.dims.empty()) throw std::invalid_argument("verify popa: missing --dims");
    auto dims = DimsProvider::fixed_dims(V.dims);
    auto r = vlist(V.r, V.dims.size(), "--r");
    const double tol = V.tol < 0 ? 1e-9 : V.tol;
    CampaignResult res = popa_campaign(V.trials, dims, vscalar(V.q, "--q"), r, V.seed, tol);
    print_campaign(res, format);
    // The mixed-norm right-hand side is closed form, so a violation here is a
    // certified counterexample.
    return res.summary.violations > 0 ? 1 : 0;
  }

  if (mode == "praciano") {
    const double tol = V.tol < 0 ? 1e-6 : V.tol;
    if (V.diag) {
      if (V.n < 1) throw std::invalid_argument("verify praciano: --diag needs --n >= 1");
      if (V.p.empty()) throw std::invalid_argument("verify praciano: missing --p");
      auto p = parse_rational_list(V.p, /*lenient=*/true);
      NonnegTensor t = diagonal_ones(static_cast<int>(p.size()), V.n);
      CheckReport rep = praciano_check(t, p, opt, tol);
      std::cout << to_json(rep).dump(2) << "\n";
      return 0;  // optimizer lower bound: never a certified violation
    }
    if (V.dims.empty()) throw std::invalid_argument("verify praciano: missing --dims");
    auto dims = DimsProvider::fixed_dims(V.dims);
    auto p = vlist(V.p, V.dims.size(), "--p");
    CampaignResult res = praciano_campaign(V.trials, dims, p, V.seed, opt, tol);
    print_campaign(res, format);
    return 0;
  }

  if (mode == "hl") {
    if (V.dims.empty()) throw std::invalid_argument("verify hl: missing --dims");
    auto dims = DimsProvider::fixed_dims(V.dims);
    const double tol = V.tol < 0 ? 1e-6 : V.tol;
    CampaignResult res =
        hl_campaign(V.trials, dims, V.m1, vscalar(V.q, "--q"), vscalar(V.alpha, "--alpha"),
                    vscalar(V.beta, "--beta"), vscalar(V.p1, "--p1"), vscalar(V.p2, "--p2"),
                    V.seed, opt, tol);
    print_campaign(res, format);
    return 0;
  }

  if (mode == "summing") {
    if (V.witness_kind != "diagonal")
      throw std::invalid_argument("verify summing: only --witness diagonal is available");
    if (V.n < 64)
      throw std::invalid_argument("verify summing: need --n >= 64 for a 3-point growth fit");
    std::vector<int> grid;
    for (int n = 16; n <= V.n; n *= 2) grid.push_back(n);
    const double s = vscalar(V.s, "--s").to_double();
    const double q = vscalar(V.q, "--q").to_double();
    WitnessSeries series = opti2_witness_experiment(grid, s, q, opt);
    if (format == "csv") {
      std::cout << witness_series_csv(series);
      return 0;
    }
    Json j = to_json(series);
    j["slopes"] = {series.lhs_fit.slope, series.rhs_fit.slope};
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  throw std::invalid_argument("verify: unknown mode '" + mode + "'");
}

// ---------------------------------------------------------------------------
// witness subcommand
// ---------------------------------------------------------------------------

struct SidonWitnessParams {
  int m1 = 1, k1 = 1, m2 = 1, k2 = 1, N = 2;
  std::string p = "4/3";
  std::uint64_t exact_cap = std::uint64_t{1} << 24;
  int mc_samples = 200000;
  int alphabet_budget = kMaxAlphabet;
  std::uint64_t seed = 0x51D0ULL;
};

int run_witness(const SidonWitnessParams& W, const std::string& format) {
  LambdaSpec spec1(W.m1, W.k1, W.N);
  LambdaSpec spec2(W.m2, W.k2, W.N);
  WitnessOptions opt;
  opt.exact_cap = W.exact_cap;
  opt.mc_samples = W.mc_samples;
  opt.alphabet_budget = W.alphabet_budget;
  opt.seed = W.seed;
  WitnessReport rep = witness_report(W.N, spec1, spec2, ExtRational::parse(W.p), opt);

  std::string interpretation;
  const ExtRational zero(0);
  if (rep.margin > zero)
    interpretation = "margin > 0: the ratio lower bound grows like N^" + rep.margin.str() +
                     ", so no finite constant works at this p";
  else if (rep.margin == zero)
    interpretation = "margin = 0: boundary exponent, the ratio lower bound stays flat in N";
  else
    interpretation = "margin < 0: the lower bound decays like N^" + rep.margin.str() +
                     ", no obstruction at this p";

  if (format == "table") {
    std::cout << "N                 = " << rep.N << "\n"
              << "s                 = " << csv_double(rep.s) << "\n"
              << "inner_product     = " << rep.inner << "\n"
              << "factor_count      = " << rep.factor_count << "\n"
              << "alphabet          = " << rep.alphabet << "\n"
              << "ratio             = " << csv_double(rep.ratio) << "\n"
              << "ratio_lower_bound = " << csv_double(rep.ratio_lower_bound) << "\n"
              << "margin            = " << rep.margin.str() << "\n"
              << interpretation << "\n";
    return 0;
  }
  Json j = to_json(rep);
  j["interpretation"] = interpretation;
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// scan subcommand
// ---------------------------------------------------------------------------

struct VarySpec {
  std::string name;
  std::vector<std::string> values;
};

VarySpec parse_vary(const std::string& raw) {
  const auto eq = raw.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("scan: --vary expects name=a..b or name=v1,v2,...");
  VarySpec spec;
  spec.name = raw.substr(0, eq);
  const std::string body = raw.substr(eq + 1);
  const auto dots = body.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(body.substr(0, dots));
    const int hi = std::stoi(body.substr(dots + 2));
    for (int v = lo; v <= hi; ++v) spec.values.push_back(std::to_string(v));
    return spec;  // lo > hi gives an empty grid
  }
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    std::string item = body.substr(start, comma - start);
    if (item.empty()) throw std::invalid_argument("scan: empty value in --vary " + raw);
    spec.values.push_back(std::move(item));
    if (comma == body.size()) break;
    start = comma + 1;
  }
  return spec;
}

void apply_param(ExponentParams& P, const std::string& name, const std::string& value) {
  if (name == "m") P.m = std::stoi(value);
  else if (name == "m1") P.m1 = std::stoi(value);
  else if (name == "m2") P.m2 = std::stoi(value);
  else if (name == "q") P.q = value;
  else if (name == "r") P.r = value;
  else if (name == "p") P.p = value;
  else if (name == "t") P.t = value;
  else if (name == "s") P.s = value;
  else if (name == "u") P.u = value;
  else if (name == "alpha") P.alpha = value;
  else if (name == "beta") P.beta = value;
  else if (name == "p1") P.p1 = value;
  else if (name == "p2") P.p2 = value;
  else if (name == "cotype") P.cotype = value;
  else throw std::invalid_argument("scan: cannot vary unknown parameter '" + name + "'");
}

std::string sanitize_cell(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n') c = ';';
  return text;
}

int run_scan(const std::string& mode, const ExponentParams& base,
             const std::vector<VarySpec>& vary) {
  std::ostringstream header;
  for (const auto& v : vary) header << v.name << ',';
  std::cout << header.str() << "s,failing_condition\n";
  if (vary.empty()) return 0;

  // Odometer over the grid: the first --vary is the outermost loop, so rows
  // come out in a stable documented order.
  std::vector<std::size_t> idx(vary.size(), 0);
  for (const auto& v : vary)
    if (v.values.empty()) return 0;
  while (true) {
    ExponentParams P = base;
    std::ostringstream row;
    for (std::size_t i = 0; i < vary.size(); ++i) {
      apply_param(P, vary[i].name, vary[i].values[idx[i]]);
      row << vary[i].values[idx[i]] << ',';
    }
    try {
      ExponentResult res = run_exponent_mode(mode, P);
      row << rational_cell(res.s) << ',' << sanitize_cell(res.failing_condition());
    } catch (const std::exception& e) {
      row << "NONE,error: " << sanitize_cell(e.what());
    }
    std::cout << row.str() << "\n";

    std::size_t k = vary.size();
    while (k > 0) {
      --k;
      if (++idx[k] < vary[k].values.size()) break;
      idx[k] = 0;
      if (k == 0) return 0;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"summability exponent calculators, verification campaigns and witness builders"};
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();

  // --- exponent ---
  std::string exp_mode;
  ExponentParams EP;
  CLI::App* exp = app.add_subcommand("exponent", "Compute an exponent from exact rational data");
  exp->fallthrough();
  exp->add_option("mode", exp_mode, "One of: auto main1 main2 main3 cor-main intro inclusion hl "
                                    "praciano popa sidon rider opti1 opti2 displike compare-pg")
      ->required();
  exp->add_option("--scenario", EP.scenario, "Scenario JSON file (auto/main1/main2/main3)");
  exp->add_option("--m", EP.m, "Number of coordinates");
  exp->add_option("--m1", EP.m1, "First block size");
  exp->add_option("--m2", EP.m2, "Second block size");
  exp->add_option("--q", EP.q, "Exponent q (scalar or comma list)");
  exp->add_option("--r", EP.r, "Exponent r (scalar or comma list)");
  exp->add_option("--p", EP.p, "Exponent p (scalar or comma list)");
  exp->add_option("--t", EP.t, "Exponent t");
  exp->add_option("--s", EP.s, "Exponent s");
  exp->add_option("--u", EP.u, "Exponent u");
  exp->add_option("--alpha", EP.alpha, "Weight alpha");
  exp->add_option("--beta", EP.beta, "Weight beta");
  exp->add_option("--p1", EP.p1, "First block exponent");
  exp->add_option("--p2", EP.p2, "Second block exponent");
  exp->add_option("--cotype", EP.cotype, "Cotype exponent override");
  exp->add_option("--cbar", EP.cbar, "Complement coordinate set (1-based)")->delimiter(',');

  // --- verify ---
  std::string verify_mode;
  VerifyParams VP;
  CLI::App* ver = app.add_subcommand("verify", "Run numeric verification campaigns");
  ver->fallthrough();
  ver->add_option("mode", verify_mode, "One of: popa praciano hl summing")->required();
  ver->add_option("--trials", VP.trials, "Number of random trials")->capture_default_str();
  ver->add_option("--dims", VP.dims, "Tensor dimensions, e.g. 4,4,4")->delimiter(',');
  ver->add_option("--seed", VP.seed, "Master seed")->capture_default_str();
  ver->add_option("--tol", VP.tol, "Relative tolerance (default per mode)");
  ver->add_option("--multistart", VP.multistart, "Optimizer restarts")->capture_default_str();
  ver->add_option("--q", VP.q, "Exponent q");
  ver->add_option("--r", VP.r, "Exponent r (scalar or comma list)");
  ver->add_option("--p", VP.p, "Exponent p (scalar or comma list)");
  ver->add_option("--s", VP.s, "Exponent s");
  ver->add_option("--alpha", VP.alpha, "Weight alpha");
  ver->add_option("--beta", VP.beta, "Weight beta");
  ver->add_option("--p1", VP.p1, "First block exponent");
  ver->add_option("--p2", VP.p2, "Second block exponent");
  ver->add_option("--m1", VP.m1, "Axes in the first block")->capture_default_str();
  ver->add_flag("--diag", VP.diag, "Use the diagonal ones tensor (sharpness case)");
  ver->add_option("--n", VP.n, "Diagonal size / largest witness size");
  ver->add_option("--witness", VP.witness_kind, "Witness family for summing mode")
      ->capture_default_str();

  // --- witness ---
  std::string witness_mode;
  SidonWitnessParams WP;
  CLI::App* wit = app.add_subcommand("witness", "Build a Walsh/Riesz witness report");
  wit->fallthrough();
  wit->add_option("mode", witness_mode, "Only: sidon")->required();
  wit->add_option("--m1", WP.m1, "Coordinates in the first group")->capture_default_str();
  wit->add_option("--k1", WP.k1, "Projection arity in the first group")->capture_default_str();
  wit->add_option("--m2", WP.m2, "Coordinates in the second group")->capture_default_str();
  wit->add_option("--k2", WP.k2, "Projection arity in the second group")->capture_default_str();
  wit->add_option("--N", WP.N, "Base alphabet size")->capture_default_str();
  wit->add_option("--p", WP.p, "Sidon exponent p in [1,2)")->capture_default_str();
  wit->add_option("--exact-cap", WP.exact_cap, "Max points for exact norm enumeration")
      ->capture_default_str();
  wit->add_option("--mc-samples", WP.mc_samples, "Monte Carlo samples beyond the cap")
      ->capture_default_str();
  wit->add_option("--alphabet-budget", WP.alphabet_budget, "Max Walsh generators")
      ->capture_default_str();
  wit->add_option("--seed", WP.seed, "Monte Carlo seed")->capture_default_str();

  // --- scan ---
  std::string scan_mode;
  std::vector<std::string> vary_raw;
  ExponentParams SP;
  CLI::App* scan = app.add_subcommand("scan", "Sweep an exponent mode over a parameter grid");
  scan->fallthrough();
  scan->add_option("--mode", scan_mode, "Exponent mode to sweep")->required();
  scan->add_option("--vary", vary_raw, "Grid axis: name=a..b or name=v1,v2,...")
      ->take_all()
      ->expected(0, -1);
  scan->add_option("--scenario", SP.scenario, "Scenario JSON file");
  scan->add_option("--m", SP.m, "Number of coordinates");
  scan->add_option("--m1", SP.m1, "First block size");
  scan->add_option("--m2", SP.m2, "Second block size");
  scan->add_option("--q", SP.q, "Exponent q");
  scan->add_option("--r", SP.r, "Exponent r");
  scan->add_option("--p", SP.p, "Exponent p");
  scan->add_option("--t", SP.t, "Exponent t");
  scan->add_option("--s", SP.s, "Exponent s");
  scan->add_option("--u", SP.u, "Exponent u");
  scan->add_option("--alpha", SP.alpha, "Weight alpha");
  scan->add_option("--beta", SP.beta, "Weight beta");
  scan->add_option("--p1", SP.p1, "First block exponent");
  scan->add_option("--p2", SP.p2, "Second block exponent");
  scan->add_option("--cotype", SP.cotype, "Cotype exponent override");
  scan->add_option("--cbar", SP.cbar, "Complement coordinate set")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*exp) {
      ExponentResult res = run_exponent_mode(exp_mode, EP);
      print_exponent_result(res, format);
      return res.ok() ? 0 : 1;
    }
    if (*ver) return run_verify(verify_mode, VP, format);
    if (*wit) {
      if (witness_mode != "sidon")
        throw std::invalid_argument("witness: unknown mode '" + witness_mode + "'");
      return run_witness(WP, format);
    }
    if (*scan) {
      std::vector<VarySpec> vary;
      for (const auto& raw : vary_raw) vary.push_back(parse_vary(raw));
      return run_scan(scan_mode, SP, vary);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
