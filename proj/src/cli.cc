// Copyright 2026 The gmdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "gmdlab/cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "gmdlab/approx.h"
#include "gmdlab/core.h"
#include "gmdlab/dicttest.h"
#include "gmdlab/errors.h"
#include "gmdlab/exact.h"
#include "gmdlab/gapgen.h"
#include "gmdlab/gaussmath.h"
#include "gmdlab/rational.h"
#include "gmdlab/reduce.h"
#include "gmdlab/salp.h"
#include "gmdlab/sasol.h"
#include "json.hpp"

namespace gmdlab {
namespace {

using json = nlohmann::ordered_json;

template <typename Int>
Int ParseCapValue(std::string_view key, std::string_view value) {
  Int result{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), result);
  if (ec != std::errc() || ptr != value.data() + value.size() || result <= 0) {
    throw ValidationError("GMDLAB_CAPS: bad value for '" + std::string(key) + "'");
  }
  return result;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

const char* Bool(bool b) { return b ? "true" : "false"; }

std::string JoinInts(const std::vector<int>& v, char sep = ' ') {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

// Files are staged and written after the command succeeds.
class Outputs {
 public:
  void Add(const std::string& path, std::string contents) {
    files_.emplace_back(path, std::move(contents));
  }
  void Commit() const {
    for (const auto& [path, contents] : files_) WriteFileAtomic(path, contents);
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

// Shared context for one invocation.
struct Context {
  std::vector<std::string> args;
  CliCaps caps;
  std::ostream* out = nullptr;
  Outputs outputs;

  std::string Header(const std::string& command, std::optional<uint64_t> seed) const {
    std::string h = "# gmdlab " + std::string(kToolVersion) + " command=" + command;
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(ConfigHash(args)));
    h += " config=";
    h += buf;
    h += " seed=" + (seed ? std::to_string(*seed) : std::string("none"));
    return h + "\n";
  }

  // Writes `text` to `path`, or to stdout when `path` is empty.
  void Emit(const std::string& path, std::string text) {
    if (path.empty()) {
      *out << text;
    } else {
      outputs.Add(path, std::move(text));
    }
  }
};

void CheckTrials(const Context& ctx, int64_t trials) {
  if (trials <= 0) throw ValidationError("--trials must be positive");
  if (trials > ctx.caps.trials) {
    throw CapExceeded("--trials exceeds cap " + std::to_string(ctx.caps.trials));
  }
}

SaCaps MakeSaCaps(const CliCaps& caps) {
  SaCaps sa;
  sa.max_vertices = caps.sa_vertices;
  sa.max_rounds = caps.sa_rounds;
  sa.max_domain = caps.sa_domain;
  sa.max_tableau_cells = caps.tableau_cells;
  return sa;
}

// ---------------------------------------------------------------- solve

struct SolveOpts {
  std::string in, method = "auto", grid = "half", out;
};

std::vector<Rational> GridFromFlag(const GpInstance& gp, const std::string& grid) {
  if (grid == "half") return HalfIntegralPriceGrid(gp);
  if (grid.rfind("geom:", 0) == 0) return GeometricPriceGrid(gp, ParseRational(grid.substr(5)));
  throw ValidationError("--grid must be half or geom:<eps>");
}

void RunSolve(Context& ctx, const SolveOpts& o) {
  Instance inst = ParseInstance(ReadFile(o.in));
  json j;
  Rational value;
  std::string method;
  if (const auto* gmd = std::get_if<GmdInstance>(&inst)) {
    method = o.method;
    if (method == "auto") {
      method = gmd->num_vertices() <= ctx.caps.zero_set_vertices ? "zero-sets" : "elimination";
    }
    GmdOptResult r;
    if (method == "zero-sets") {
      r = OptGmd(*gmd, ctx.caps.zero_set_vertices);
    } else if (method == "elimination") {
      r = OptGmdElimination(*gmd, ctx.caps.elimination_entries);
    } else if (method == "brute-force") {
      r = OptGmdBruteForce(*gmd, std::min(ctx.caps.zero_set_vertices, 12));
    } else {
      throw ValidationError("unknown --method '" + o.method + "'");
    }
    value = r.value;
    j["problem"] = "gmd";
    j["T"] = gmd->T();
    j["vertices"] = gmd->num_vertices();
    j["edges"] = gmd->num_edges();
    j["method"] = method;
    j["opt"] = ToString(r.value);
    j["witness"] = r.witness.values;
    j["explored"] = r.explored;
  } else {
    const auto& gp = std::get<GpInstance>(inst);
    if (o.method != "auto" && o.method != "grid") {
      throw ValidationError("GP instances only support --method grid");
    }
    method = "grid:" + o.grid;
    std::vector<std::vector<Rational>> candidates;
    if (o.grid == "half") {
      candidates = HalfIntegralGrid(gp);
    } else {
      candidates.assign(gp.num_vertices(), GridFromFlag(gp, o.grid));
    }
    GpOptResult r = OptGpGrid(gp, candidates, ctx.caps.grid_points);
    value = r.value;
    j["problem"] = "gp";
    j["vertices"] = gp.num_vertices();
    j["edges"] = gp.num_edges();
    j["method"] = method;
    j["opt"] = ToString(r.value);
    json prices = json::array();
    for (const Rational& p : r.witness.values) prices.push_back(ToString(p));
    j["witness"] = prices;
    j["explored"] = r.explored;
  }
  *ctx.out << "opt = " << ToString(value) << "\n";
  *ctx.out << "method = " << method << "\n";
  if (!o.out.empty()) ctx.outputs.Add(o.out, j.dump(2) + "\n");
}

// ---------------------------------------------------------------- approx

struct ApproxOpts {
  std::string in, algo = "gmd4", csv;
  int64_t trials = 10000;
  uint64_t seed = 0;
  int rounds = 2;
};

void RunApprox(Context& ctx, const ApproxOpts& o) {
  CheckTrials(ctx, o.trials);
  Instance inst = ParseInstance(ReadFile(o.in));
  const auto* gmd = std::get_if<GmdInstance>(&inst);
  const auto* gp = std::get_if<GpInstance>(&inst);
  Trial trial;
  std::vector<std::pair<std::string, std::string>> extra;
  Marginals marginals;
  if (o.algo == "gp4") {
    if (!gp) throw ValidationError("--algo gp4 needs a GP instance");
    trial = [gp](CounterRng& rng) { return ApproxGpQuarter(*gp, rng).value; };
  } else if (o.algo == "gmd4") {
    if (!gmd) throw ValidationError("--algo gmd4 needs a GMD instance");
    trial = [gmd](CounterRng& rng) { return ApproxGmdQuarter(*gmd, rng).value; };
  } else if (o.algo == "gmdlp") {
    if (!gmd) throw ValidationError("--algo gmdlp needs a GMD instance");
    SaLp lp(*gmd, o.rounds, MakeSaCaps(ctx.caps));
    SaLpResult res = SolveSaLp(lp);
    marginals = SingletonMarginals(res.solution, gmd->num_vertices());
    extra.emplace_back("lp", ToString(res.value));
    extra.emplace_back("expectation", ToString(LpRoundExpectation(*gmd, marginals)));
    trial = [gmd, &marginals](CounterRng& rng) { return LpRoundGmd(*gmd, marginals, rng).value; };
  } else {
    throw ValidationError("--algo must be gp4, gmd4 or gmdlp");
  }
  RandomizedRun run = RunTrials(o.seed, o.trials, trial);

  std::ostringstream summary;
  summary << "mean," << Fmt(run.mean) << "\n";
  summary << "stddev," << Fmt(run.stddev) << "\n";
  summary << "stderr," << Fmt(run.StandardError()) << "\n";
  for (const auto& [k, v] : extra) summary << k << "," << v << "\n";

  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv << ctx.Header("approx", o.seed) << "trial,value\n";
    for (size_t i = 0; i < run.values.size(); ++i) csv << i << "," << ToString(run.values[i]) << "\n";
    csv << summary.str();
    ctx.outputs.Add(o.csv, csv.str());
  }
  *ctx.out << "algo = " << o.algo << "\ntrials = " << o.trials << "\nseed = " << o.seed << "\n";
  std::string s = summary.str();
  std::replace(s.begin(), s.end(), ',', '=');
  *ctx.out << s;
}

// ---------------------------------------------------------------- reduce

struct ReduceOpts {
  std::string in, M, out;
  bool expand = false;
};

void RunReduce(Context& ctx, const ReduceOpts& o) {
  GmdInstance gmd = ParseGmd(ReadFile(o.in));
  BigInt M;
  if (o.M.empty()) {
    M = DefaultM(gmd);
  } else if (M.set_str(o.M, 10) != 0) {
    throw ValidationError("--M must be an integer");
  }
  ReductionArtifact art = ReduceGmdToGp(gmd, M);
  std::string text = SerializeReduced(art, o.expand);
  if (o.out.empty()) {
    *ctx.out << text;
  } else {
    ctx.outputs.Add(o.out, text);
    *ctx.out << "M = " << art.M.get_str() << "\nedges = " << art.edges.size() << "\n";
  }
}

// ---------------------------------------------------------------- salp

struct SalpOpts {
  std::string in, grid = "half", csv;
  int rounds = 2;
};

void RunSalp(Context& ctx, const SalpOpts& o) {
  Instance inst = ParseInstance(ReadFile(o.in));
  std::unique_ptr<SaLp> lp;
  std::vector<Rational> grid;
  if (const auto* gmd = std::get_if<GmdInstance>(&inst)) {
    lp = std::make_unique<SaLp>(*gmd, o.rounds, MakeSaCaps(ctx.caps));
  } else {
    const auto& gp = std::get<GpInstance>(inst);
    grid = GridFromFlag(gp, o.grid);
    lp = std::make_unique<SaLp>(gp, o.rounds, grid, MakeSaCaps(ctx.caps));
  }
  SaLpResult res = SolveSaLp(*lp);
  *ctx.out << "value = " << ToString(res.value) << "\n"
           << "rounds = " << lp->rounds() << "\n"
           << "variables = " << lp->num_variables() << "\n"
           << "constraints = " << lp->num_constraints() << "\n"
           << "pivots = " << res.pivots << "\n";
  if (o.csv.empty()) return;
  std::ostringstream csv;
  csv << ctx.Header("salp", std::nullopt) << "set,assignment,value\n";
  for (const auto& set : lp->sets()) {
    const std::vector<Rational>& table = res.solution.tables.at(set);
    for (uint64_t alpha = 0; alpha < table.size(); ++alpha) {
      std::vector<int> labels = DecodeAssignment(alpha, lp->domain(), set.size());
      std::string assignment;
      if (grid.empty()) {
        assignment = JoinInts(labels);
      } else {
        for (size_t i = 0; i < labels.size(); ++i) {
          if (i) assignment += ' ';
          assignment += ToString(grid[labels[i]]);
        }
      }
      csv << JoinInts(set) << "," << assignment << "," << ToString(table[alpha]) << "\n";
    }
  }
  ctx.outputs.Add(o.csv, csv.str());
}

// ---------------------------------------------------------------- gap

struct GapOpts {
  int n = 40, delta = 4, T = 2, l = 9, kmax = 3, seeds = 1, window = 4;
  std::string mu = "1/2", eps = "1/10", base = "complete", out, csv;
  std::optional<double> p_keep;
  uint64_t seed = 0;
};

void RunGap(Context& ctx, const GapOpts& o) {
  if (o.seeds <= 0) throw ValidationError("--seeds must be positive");
  BaseParams params;
  params.window = o.window;
  std::string kind_name = o.base;
  if (o.base.rfind("file:", 0) == 0) {
    kind_name = "file";
    params.text = ReadFile(o.base.substr(5));
  }
  BaseKind kind = ParseBaseKind(kind_name);
  PipelineConfig cfg;
  cfg.n = o.n;
  cfg.delta = o.delta;
  cfg.p_keep = o.p_keep;
  cfg.T = o.T;
  cfg.l = o.l;
  cfg.mu = ParseRational(o.mu);
  cfg.k_max = o.kmax;
  cfg.eps = ParseRational(o.eps);
  cfg.exact_vertex_cap = ctx.caps.zero_set_vertices;
  cfg.elimination_table_cap = ctx.caps.elimination_entries;
  ValidateConfig(cfg);

  std::ostringstream csv;
  csv << ctx.Header("gap", o.seed)
      << "seed,n,T,delta,l,mu,is_acyclic,max_degree,degree_ok,girth,girth_ok,edge_count,"
         "edge_floor,edge_floor_ok,noise_lhs,noise_rhs,noise_ok,measured_opt,opt_method,"
         "dicut_target,dicut_bound_ok\n";
  for (int i = 0; i < o.seeds; ++i) {
    uint64_t seed = o.seed + static_cast<uint64_t>(i);
    cfg.seed = seed;
    Digraph base = GenerateBaseDag(kind, o.n, params, seed);
    PipelineResult pr = SparsifyPipeline(base, cfg);
    const StructuralReport& r = pr.report;
    csv << seed << "," << o.n << "," << o.T << "," << o.delta << "," << o.l << ","
        << ToString(cfg.mu) << "," << Bool(r.is_acyclic) << "," << r.max_degree << ","
        << Bool(r.degree_ok) << "," << (r.girth ? std::to_string(*r.girth) : "inf") << ","
        << Bool(r.girth_ok) << "," << r.edge_count << "," << r.edge_floor << ","
        << Bool(r.edge_floor_ok) << "," << Fmt(r.noise_lhs) << "," << Fmt(r.noise_rhs) << ","
        << Bool(r.noise_ok) << "," << (r.measured_opt ? ToString(*r.measured_opt) : "") << ","
        << r.opt_method << "," << ToString(r.dicut_target) << ","
        << (r.dicut_bound_ok ? Bool(*r.dicut_bound_ok) : "") << "\n";
    *ctx.out << "seed " << seed << ": edges=" << r.edge_count
             << " structure_ok=" << Bool(r.StructureOk())
             << " opt=" << (r.measured_opt ? ToString(*r.measured_opt) : "n/a") << "\n";
    if (!o.out.empty()) {
      std::string path = o.seeds == 1 ? o.out : o.out + "." + std::to_string(seed);
      if (!pr.report.empty) ctx.outputs.Add(path, SerializeInstance(pr.instance));
    }
  }
  if (!o.csv.empty()) ctx.outputs.Add(o.csv, csv.str());
}

// ---------------------------------------------------------------- sasol

struct SasolOpts {
  std::string in, mu = "auto", csv;
  int T = 2, L = 2, k = 2;
  double eps = 0.05;
  int64_t trials = 100000;
  uint64_t seed = 0;
};

void RunSasol(Context& ctx, const SasolOpts& o) {
  CheckTrials(ctx, o.trials);
  GmdInstance inst = o.in.empty() ? GmdInstance(o.T, 2, {GmdEdge{0, 1, 1, Rational(1)}})
                                  : ParseGmd(ReadFile(o.in));
  Rational mu = o.mu == "auto" ? FromDouble(NoiseRateForEps(inst.T(), o.eps)) : ParseRational(o.mu);
  SaGapCaps caps;
  caps.max_vertices = ctx.caps.sasol_vertices;
  caps.max_rounds = ctx.caps.sasol_rounds;
  SaGapSolution sol = BuildSaSolution(inst, mu, o.L, o.k, o.trials, o.seed, caps);
  SaConsistencyReport consistency = CheckSaConsistency(sol.solution);
  *ctx.out << "mu = " << Fmt(ToDouble(mu)) << "\n"
           << "objective = " << Fmt(ToDouble(sol.objective)) << "\n"
           << "objective_stderr = " << Fmt(sol.objective_stderr) << "\n"
           << "target = " << Fmt((1 - 12 * o.eps) / (inst.T() + 1)) << "\n"
           << "consistent = " << Bool(consistency.consistent) << "\n"
           << "clamped_eigenvalues = " << sol.clamped_eigenvalues << "\n"
           << "min_eigenvalue = " << Fmt(sol.min_eigenvalue) << "\n";
  if (o.csv.empty()) return;
  std::ostringstream csv;
  csv << ctx.Header("sasol", o.seed) << "set,assignment,frequency\n";
  for (const auto& [set, table] : sol.solution.tables) {
    for (uint64_t alpha = 0; alpha < table.size(); ++alpha) {
      csv << JoinInts(set) << ","
          << JoinInts(DecodeAssignment(alpha, sol.solution.domain, set.size())) << ","
          << ToString(table[alpha]) << "\n";
    }
  }
  csv << "objective,," << ToString(sol.objective) << "\n";
  ctx.outputs.Add(o.csv, csv.str());
}

// ---------------------------------------------------------------- dict

struct DictOpts {
  int T = 2, R = 1;
  std::string inner, delta, emit = "eval", functions, out, csv;
  uint64_t seed = 0;
};

void RunDict(Context& ctx, const DictOpts& o) {
  std::optional<Rational> delta;
  if (!o.delta.empty()) delta = ParseRational(o.delta);
  CorrelatedSpace space = BuildCorrelatedSpace(o.T, delta);
  Digraph inner;
  if (o.inner.empty()) {
    inner.num_vertices = 2;
    inner.arcs = {{0, 1}};
  } else {
    inner = SkeletonOf(ParseGmd(ReadFile(o.inner)));
  }
  *ctx.out << "delta = " << ToString(space.delta)
           << (space.delta_approximate ? " (approximate)" : "") << "\n";
  if (o.emit == "instance") {
    TestInstance ti = BuildTestInstance(space, inner, o.R, ctx.caps.dict_edges);
    ctx.Emit(o.out, SerializeInstance(ti.instance));
  } else if (o.emit == "eval") {
    FunctionFamily family = o.functions.empty()
                                ? DictatorFamily(inner.num_vertices, o.T, o.R, 0)
                                : ParseFunctionFile(ReadFile(o.functions), inner.num_vertices,
                                                    o.T, o.R);
    Rational acc = EvaluateAcceptanceDirect(space, inner, o.R, family);
    *ctx.out << "acceptance = " << ToString(acc) << "\n"
             << "acceptance_value = " << Fmt(ToDouble(acc)) << "\n"
             << "soundness_line = " << Fmt(SoundnessLine(o.T)) << "\n";
  } else if (o.emit == "library") {
    std::vector<LibraryEntry> lib = EvaluateAdversarialLibrary(space, inner, o.R, o.seed);
    std::ostringstream csv;
    csv << ctx.Header("dict", o.seed)
        << "name,acceptance,acceptance_value,max_influence,above_soundness\n";
    for (const LibraryEntry& e : lib) {
      csv << e.name << "," << ToString(e.acceptance) << "," << Fmt(ToDouble(e.acceptance)) << ","
          << Fmt(e.max_influence) << "," << Bool(e.above_soundness) << "\n";
    }
    ctx.Emit(o.csv.empty() ? o.out : o.csv, csv.str());
  } else if (o.emit == "corr") {
    CorrelationResult c = ExactCorrelation(space);
    *ctx.out << "closed_form = " << Fmt(c.closed_form) << "\n"
             << "singular = " << Fmt(c.singular) << "\n"
             << "bound = " << Fmt(c.bound) << "\n"
             << "within_bound = " << Bool(c.within_bound) << "\n";
  } else {
    throw ValidationError("--emit must be instance, eval, library or corr");
  }
}

// ---------------------------------------------------------------- gauss

struct GaussOpts {
  std::string csv, maxgap_csv;
  int64_t trials = 100000;
  uint64_t seed = 0;
  int n = 10;
  std::vector<double> eps = {0.05, 0.1, 0.2};
};

void RunGauss(Context& ctx, const GaussOpts& o) {
  CheckTrials(ctx, o.trials);
  GammaReport report = VerifyGammaProperties(GammaGrid{});
  *ctx.out << "concavity_ok = " << Bool(report.concavity_ok) << "\n"
           << "max_second_difference = " << Fmt(report.max_second_difference) << "\n";
  for (const ProductRowSummary& p : report.product) {
    *ctx.out << "product T=" << p.T << " points=" << p.points << " violations=" << p.violations
             << " max_excess=" << Fmt(p.max_excess) << "\n";
  }
  *ctx.out << "product_threshold = "
           << (report.product_threshold ? std::to_string(*report.product_threshold) : "none")
           << "\n";
  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv << ctx.Header("gauss", std::nullopt) << "kind,T,rho,a,b,gamma,bound,pass\n";
    for (const GammaCheckRow& r : report.rows) {
      csv << r.kind << "," << r.T << "," << Fmt(r.rho) << "," << Fmt(r.a) << "," << Fmt(r.b)
          << "," << Fmt(r.value) << "," << Fmt(r.bound) << "," << Bool(r.pass) << "\n";
    }
    ctx.outputs.Add(o.csv, csv.str());
  }
  MaxGapStats stats = ComputeMaxGapStats(o.n, o.trials, o.seed, o.eps);
  *ctx.out << "mean_max = " << Fmt(stats.mean_max) << "\nmean_gap = " << Fmt(stats.mean_gap)
           << "\n";
  for (const MaxGapCheck& c : stats.checks) {
    *ctx.out << "eps=" << Fmt(c.eps) << " max_ok=" << Bool(c.max_ok)
             << " gap_ok=" << Bool(c.gap_ok) << "\n";
  }
  if (!o.maxgap_csv.empty()) {
    std::ostringstream csv;
    csv << ctx.Header("gauss", o.seed)
        << "n,trials,eps,x1,p_max_below,se_max_below,max_ok,x2,p_gap_above,se_gap_above,gap_ok\n";
    for (const MaxGapCheck& c : stats.checks) {
      csv << stats.n << "," << stats.trials << "," << Fmt(c.eps) << "," << Fmt(c.x1) << ","
          << Fmt(c.p_max_below) << "," << Fmt(c.se_max_below) << "," << Bool(c.max_ok) << ","
          << Fmt(c.x2) << "," << Fmt(c.p_gap_above) << "," << Fmt(c.se_gap_above) << ","
          << Bool(c.gap_ok) << "\n";
    }
    ctx.outputs.Add(o.maxgap_csv, csv.str());
  }
}

// ---------------------------------------------------------------- report

struct ReportOpts {
  std::string csv, out, plot, x, y;
};

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

// Doubles, exact rationals, or nothing.
std::optional<double> ParseNumber(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s.find('/') != std::string::npos) {
    try {
      return ToDouble(ParseRational(s));
    } catch (const ValidationError&) {
      return std::nullopt;
    }
  }
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

std::string PythonQuote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\\' || c == '\'') q += '\\';
    q += c;
  }
  return q + "'";
}

void RunReport(Context& ctx, const ReportOpts& o) {
  std::istringstream in(ReadFile(o.csv));
  std::string line;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header.empty()) {
      header = SplitCsvLine(line);
    } else {
      rows.push_back(SplitCsvLine(line));
    }
  }
  if (header.empty()) throw ValidationError("'" + o.csv + "' has no header row");

  std::ostringstream summary;
  summary << "column,rows,numeric,min,mean,max\n";
  for (size_t c = 0; c < header.size(); ++c) {
    int count = 0;
    double lo = 0, hi = 0, sum = 0;
    for (const auto& row : rows) {
      if (c >= row.size()) continue;
      std::optional<double> v = ParseNumber(row[c]);
      if (!v) continue;
      lo = count ? std::min(lo, *v) : *v;
      hi = count ? std::max(hi, *v) : *v;
      sum += *v;
      ++count;
    }
    summary << header[c] << "," << rows.size() << "," << count << ",";
    if (count) {
      summary << Fmt(lo) << "," << Fmt(sum / count) << "," << Fmt(hi) << "\n";
    } else {
      summary << ",,\n";
    }
  }
  ctx.Emit(o.out, summary.str());

  if (o.plot.empty()) return;
  std::string x = o.x.empty() ? header[0] : o.x;
  std::string y = o.y.empty() ? (header.size() > 1 ? header[1] : header[0]) : o.y;
  for (const std::string& col : {x, y}) {
    if (std::find(header.begin(), header.end(), col) == header.end()) {
      throw ValidationError("no column '" + col + "' in '" + o.csv + "'");
    }
  }
  std::string csv_name = std::filesystem::path(o.csv).filename().string();
  std::ostringstream py;
  py << "# Plots " << y << " against " << x << " from " << csv_name << ".\n"
     << "import csv\n"
     << "import os\n"
     << "from fractions import Fraction\n\n"
     << "import matplotlib\n"
     << "matplotlib.use('Agg')\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "HERE = os.path.dirname(os.path.abspath(__file__))\n"
     << "CSV = os.path.join(HERE, " << PythonQuote(csv_name) << ")\n\n"
     << "def num(s):\n"
     << "    try:\n"
     << "        return float(Fraction(s))\n"
     << "    except (ValueError, ZeroDivisionError):\n"
     << "        return None\n\n"
     << "with open(CSV) as f:\n"
     << "    rows = list(csv.DictReader(line for line in f if not line.startswith('#')))\n"
     << "pts = [(num(r[" << PythonQuote(x) << "]), num(r[" << PythonQuote(y) << "])) for r in rows]\n"
     << "pts = [(a, b) for a, b in pts if a is not None and b is not None]\n"
     << "plt.plot([a for a, _ in pts], [b for _, b in pts], '.')\n"
     << "plt.xlabel(" << PythonQuote(x) << ")\n"
     << "plt.ylabel(" << PythonQuote(y) << ")\n"
     << "plt.savefig(os.path.splitext(CSV)[0] + '.png', dpi=150)\n";
  ctx.outputs.Add(o.plot, py.str());
}

}  // namespace

CliCaps ParseCaps(std::string_view text) {
  CliCaps caps;
  while (!text.empty()) {
    size_t comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view() : text.substr(comma + 1);
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("GMDLAB_CAPS: expected key=value, got '" + std::string(item) + "'");
    }
    std::string_view key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "zero_set_vertices") {
      caps.zero_set_vertices = ParseCapValue<int>(key, value);
    } else if (key == "elimination_entries") {
      caps.elimination_entries = ParseCapValue<uint64_t>(key, value);
    } else if (key == "grid_points") {
      caps.grid_points = ParseCapValue<uint64_t>(key, value);
    } else if (key == "sa_vertices") {
      caps.sa_vertices = ParseCapValue<int>(key, value);
    } else if (key == "sa_rounds") {
      caps.sa_rounds = ParseCapValue<int>(key, value);
    } else if (key == "sa_domain") {
      caps.sa_domain = ParseCapValue<int>(key, value);
    } else if (key == "tableau_cells") {
      caps.tableau_cells = ParseCapValue<uint64_t>(key, value);
    } else if (key == "trials") {
      caps.trials = ParseCapValue<int64_t>(key, value);
    } else if (key == "dict_edges") {
      caps.dict_edges = ParseCapValue<uint64_t>(key, value);
    } else if (key == "sasol_vertices") {
      caps.sasol_vertices = ParseCapValue<int>(key, value);
    } else if (key == "sasol_rounds") {
      caps.sasol_rounds = ParseCapValue<int>(key, value);
    } else {
      throw ValidationError("GMDLAB_CAPS: unknown key '" + std::string(key) + "'");
    }
  }
  return caps;
}

uint64_t ConfigHash(const std::vector<std::string>& args) {
  static const char* const kPathFlags[] = {"--out", "--csv", "--table", "--maxgap-csv", "--plot"};
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h *= 0x100000001b3ULL;  // token separator
  };
  for (size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    bool skip = false;
    for (const char* flag : kPathFlags) {
      std::string f(flag);
      if (a == f) {
        ++i;
        skip = true;
      } else if (a.rfind(f + "=", 0) == 0) {
        skip = true;
      }
    }
    if (skip) continue;
    if (a == "--config" && i + 1 < args.size()) {
      // Hash what the file says, not where it lives.
      std::ifstream in(args[++i], std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      mix("--config");
      mix(ss.str());
      continue;
    }
    mix(a);
  }
  return h;
}

std::string CsvHeaderComment(const std::string& command, const std::vector<std::string>& args,
                             uint64_t seed) {
  Context ctx;
  ctx.args = args;
  return ctx.Header(command, seed);
}

void WriteFileAtomic(const std::string& path, const std::string& contents) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot write '" + path + "'");
    f << contents;
    f.flush();
    if (!f) {
      std::remove(tmp.c_str());
      throw ValidationError("cannot write '" + path + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw ValidationError("cannot write '" + path + "': " + ec.message());
  }
}

int RunCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.args = args;
  ctx.out = &out;

  CLI::App app{"Generalized max-dicut and graph pricing experiments", "gmdlab"};
  app.set_config("--config", "", "TOML/INI file with flag values; sections name subcommands");
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kToolVersion);

  SolveOpts so;
  auto* solve = app.add_subcommand("solve", "Exact optimum of a GMD or GP instance");
  solve->add_option("--in", so.in, "Instance file")->required();
  solve->add_option("--method", so.method, "auto|zero-sets|elimination|brute-force (GMD), grid (GP)");
  solve->add_option("--grid", so.grid, "GP price grid: half|geom:<eps>");
  solve->add_option("--out", so.out, "JSON report path");

  ApproxOpts ao;
  auto* approx = app.add_subcommand("approx", "Seeded batch of a randomized algorithm");
  approx->add_option("--in", ao.in, "Instance file")->required();
  approx->add_option("--algo", ao.algo, "gp4|gmd4|gmdlp");
  approx->add_option("--trials", ao.trials, "Number of trials");
  approx->add_option("--seed", ao.seed, "Master seed");
  approx->add_option("--rounds", ao.rounds, "SA rounds for the gmdlp marginals");
  approx->add_option("--csv", ao.csv, "Per-trial CSV path");

  ReduceOpts ro;
  auto* reduce = app.add_subcommand("reduce", "Reduce a GMD instance to graph pricing");
  reduce->add_option("--in", ro.in, "GMD file")->required();
  reduce->add_option("--M", ro.M, "Budget base (default max(2, ceil(ndeg)))");
  reduce->add_option("--out", ro.out, "GP output path");
  reduce->add_flag("--expand", ro.expand, "Write budgets as integers");

  SalpOpts lo;
  auto* salp = app.add_subcommand("salp", "Solve the Sherali-Adams LP exactly");
  salp->add_option("--in", lo.in, "Instance file")->required();
  salp->add_option("--rounds", lo.rounds, "Number of rounds");
  salp->add_option("--grid", lo.grid, "GP price grid: half|geom:<eps>");
  salp->add_option("--csv,--table", lo.csv, "Solution table CSV path");

  GapOpts go;
  auto* gap = app.add_subcommand("gap", "Generate and check sparse gap instances");
  gap->add_option("--n", go.n, "Vertices");
  gap->add_option("--delta", go.delta, "Target average degree");
  gap->add_option("--p-keep", go.p_keep, "Edge keep probability");
  gap->add_option("--T", go.T, "Labels");
  gap->add_option("--l", go.l, "Girth parameter");
  gap->add_option("--mu", go.mu, "Noise rate (rational)");
  gap->add_option("--kmax", go.kmax, "Largest SA round count in the noise check");
  gap->add_option("--eps", go.eps, "Slack in the (1+eps)/(4T) comparison");
  gap->add_option("--seed", go.seed, "First seed");
  gap->add_option("--seeds", go.seeds, "Number of consecutive seeds");
  gap->add_option("--base", go.base, "window|complete|file:<path>");
  gap->add_option("--window", go.window, "Window width for the window base");
  gap->add_option("--out", go.out, "Instance path (suffixed by seed when --seeds > 1)");
  gap->add_option("--csv", go.csv, "Report CSV path");

  SasolOpts sa;
  auto* sasol = app.add_subcommand("sasol", "Rounded vector solution as an SA table");
  sasol->add_option("--in", sa.in, "GMD file (default: one edge with label 1)");
  sasol->add_option("--T", sa.T, "Labels for the default edge");
  sasol->add_option("--mu", sa.mu, "Noise rate: rational or auto");
  sasol->add_option("--eps", sa.eps, "Target eps for --mu auto");
  sasol->add_option("--L", sa.L, "Distance cutoff");
  sasol->add_option("--k", sa.k, "Table set size");
  sasol->add_option("--trials", sa.trials, "Rounding trials");
  sasol->add_option("--seed", sa.seed, "Master seed");
  sasol->add_option("--csv", sa.csv, "Table CSV path");

  DictOpts dop;
  auto* dict = app.add_subcommand("dict", "Dictatorship test instances and evaluation");
  dict->add_option("--T", dop.T, "Labels");
  dict->add_option("--R", dop.R, "Coordinates");
  dict->add_option("--inner", dop.inner, "GMD file whose skeleton is the inner DAG");
  dict->add_option("--delta", dop.delta, "Rational delta (default T^{-1/4})");
  dict->add_option("--emit", dop.emit, "instance|eval|library|corr");
  dict->add_option("--functions", dop.functions, "Function file for eval");
  dict->add_option("--seed", dop.seed, "Seed for random library members");
  dict->add_option("--out", dop.out, "Output path");
  dict->add_option("--csv", dop.csv, "Library CSV path");

  GaussOpts ga;
  auto* gauss = app.add_subcommand("gauss", "Gaussian inequality checks");
  gauss->add_option("--csv", ga.csv, "Grid CSV path");
  gauss->add_option("--maxgap-csv", ga.maxgap_csv, "Max/second-max CSV path");
  gauss->add_option("--trials", ga.trials, "Monte Carlo samples");
  gauss->add_option("--seed", ga.seed, "Master seed");
  gauss->add_option("--n", ga.n, "Number of Gaussians");
  gauss->add_option("--eps", ga.eps, "eps values")->delimiter(',');

  ReportOpts rep;
  auto* report = app.add_subcommand("report", "Summarize a CSV and emit a plot script");
  report->add_option("--csv", rep.csv, "Input CSV")->required();
  report->add_option("--out", rep.out, "Summary CSV path");
  report->add_option("--plot", rep.plot, "Python plot script path");
  report->add_option("--x", rep.x, "x column");
  report->add_option("--y", rep.y, "y column");

  try {
    if (const char* env = std::getenv("GMDLAB_CAPS")) ctx.caps = ParseCaps(env);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? 0 : 1;
    }
    if (solve->parsed()) RunSolve(ctx, so);
    if (approx->parsed()) RunApprox(ctx, ao);
    if (reduce->parsed()) RunReduce(ctx, ro);
    if (salp->parsed()) RunSalp(ctx, lo);
    if (gap->parsed()) RunGap(ctx, go);
    if (sasol->parsed()) RunSasol(ctx, sa);
    if (dict->parsed()) RunDict(ctx, dop);
    if (gauss->parsed()) RunGauss(ctx, ga);
    if (report->parsed()) RunReport(ctx, rep);
    ctx.outputs.Commit();
  } catch (const CapExceeded& e) {
    err << "gmdlab: cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "gmdlab: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace gmdlab
