// Copyright 2026 The mlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mlab: subcommands ft, pushforward, wf, crit, keylemma, atlas, validate.
// Reports go to stdout (or --output) as JSON or CSV; errors go to stderr
// as JSON. Exit codes: 0 ok, 2 validation failure, 3 budget exhausted,
// 4 input error, 1 anything else.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "report.hpp"

namespace mlab {
namespace {

int ExitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidationFailure: return 2;
    case ErrorKind::kResourceBudgetExceeded:
    case ErrorKind::kInsufficientPrecision:
    case ErrorKind::kSamplingFailed: return 3;
    default: return 4;
  }
}

void EmitError(const std::string& command, const std::string& kind, const std::string& message,
               int code, const Json& extra = nullptr) {
  Json j = {{"command", command},
            {"error", {{"kind", kind}, {"message", message}}},
            {"exit_code", code}};
  if (!extra.is_null()) j["error"]["detail"] = extra;
  std::cerr << Dump(j);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kInvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r\n") - a + 1);
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (Trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(Trim(part));
  return out;
}

Rational ParseRational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) Fail(ErrorKind::kParseError, "not a rational: '" + s + "'");
  if (q.get_den() == 0) Fail(ErrorKind::kParseError, "zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::vector<Rational> RationalList(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& t : Split(s, ',')) out.push_back(ParseRational(t));
  return out;
}

long ParseLong(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) Fail(ErrorKind::kParseError, "not an integer: '" + s + "'");
  return v;
}

double ParseDouble(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) Fail(ErrorKind::kParseError, "not a number: '" + s + "'");
  return v;
}

std::vector<int> IntList(const std::string& s) {
  std::vector<int> out;
  for (const auto& t : Split(s, ',')) out.push_back(static_cast<int>(ParseLong(t)));
  return out;
}

// "a,b;c,d" -> rows.
std::vector<std::vector<std::string>> Rows(const std::string& s) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : Split(s, ';')) out.push_back(Split(row, ','));
  return out;
}

// One subcommand and its string-valued options.
class Command {
 public:
  Command(CLI::App& app, const std::string& name, const std::string& help)
      : name_(name), sub_(app.add_subcommand(name, help)) {
    Add("config", "", "key=value file; flags override");
    Add("output", "", "write the report here instead of stdout");
    Add("format", "json", "json or csv");
    Add("seed", "1", "seed for all sampling");
    Add("prime", "3", "the prime p");
    Add("grid-cap", std::to_string(DefaultGridCap()), "cap on summands or cells per table");
    Add("step-cap", std::to_string(DefaultStepCap()), "Groebner reduction step cap");
    Add("time-cap", "0", "soft wall-clock cap in seconds (0: none)");
  }

  void Add(const std::string& key, const std::string& def, const std::string& help) {
    values_[key] = def;
    sub_->add_option("--" + key, values_[key], help)->capture_default_str();
  }

  const std::string& name() const { return name_; }
  bool parsed() const { return sub_->parsed(); }
  const std::string& Str(const std::string& key) const { return values_.at(key); }
  long Int(const std::string& key) const { return ParseLong(Str(key)); }
  double Double(const std::string& key) const { return ParseDouble(Str(key)); }

  Json Config(const Rational& scale) const {
    Json j;
    for (const auto& [k, v] : values_) {
      if (k != "config" && k != "output") j[k] = v;
    }
    j["budget_scale"] = scale.get_str();
    return j;
  }

 private:
  std::string name_;
  CLI::App* sub_;
  std::map<std::string, std::string> values_;
};

std::uint64_t Scaled(std::uint64_t v, const Rational& scale) {
  Rational s = Rational(static_cast<unsigned long>(v)) * scale;
  mpz_class q = s.get_num() / s.get_den();
  if (q < 1) q = 1;
  return q.fits_ulong_p() ? q.get_ui() : ~0ul;
}

Rational BudgetScale() {
  const char* env = std::getenv("MLAB_BUDGET_SCALE");
  if (env == nullptr || *env == '\0') return 1;
  const Rational s = ParseRational(Trim(env));
  if (s <= 0) Fail(ErrorKind::kInvalidArgument, "MLAB_BUDGET_SCALE must be positive");
  return s;
}

struct Output {
  Json result;
  Json error_bound;
  std::string csv;
  // Set when the run produced a report but must still exit nonzero.
  std::optional<ErrorKind> failure;
  std::string failure_message;
  Json failure_detail;
};

PadicWfQuery PadicQuery(const Command& c, const Rational& scale) {
  PadicWfQuery q;
  q.radii = IntList(c.Str("radii"));
  q.resolutions = IntList(c.Str("resolutions"));
  q.j0 = static_cast<int>(c.Int("j0"));
  q.max_scale = static_cast<int>(c.Int("max-scale"));
  q.epsilon = c.Double("epsilon");
  q.cell_budget = Scaled(static_cast<std::uint64_t>(c.Int("cell-budget")), scale);
  if (q.radii.empty() || q.resolutions.empty()) Fail(ErrorKind::kInvalidArgument, "empty radii or resolutions");
  return q;
}

void AddPadicScanOptions(Command& c) {
  const PadicWfQuery d;
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  c.Add("radii", join(d.radii), "cutoff radii exponents r");
  c.Add("resolutions", join(d.resolutions), "direction resolutions s");
  c.Add("j0", std::to_string(d.j0), "first ladder scale");
  c.Add("max-scale", std::to_string(d.max_scale), "ladder scale J");
  c.Add("epsilon", "1e-9", "OUT threshold");
  c.Add("cell-budget", std::to_string(d.cell_budget), "cells per spectrum");
}

Output RunFt(const Command& c) {
  const auto vars = ParseNameList(c.Str("vars"));
  OscillatorySpec spec{ParsePoly(c.Str("poly"), vars), static_cast<int>(c.Int("prime")),
                       ParseRational(c.Str("twist"))};
  const auto r = FtPsiPProbe(spec, RationalList(c.Str("xi")), static_cast<int>(c.Int("nmax")),
                             c.Double("tol"), c.Int("exact") != 0);
  return {ToJson(r), r.error_bound, StabilizationCsv(r), {}, "", nullptr};
}

Output RunPushforward(const Command& c) {
  const auto vars = ParseNameList(c.Str("vars"));
  PushforwardSpec spec;
  spec.phi = PolyMap::Parse(c.Str("map"), vars);
  spec.omega_density = ParsePoly(c.Str("density"), vars);
  spec.domain_center = RationalList(c.Str("center"));
  if (spec.domain_center.empty()) spec.domain_center.assign(vars.size(), Rational(0));
  spec.domain_radius_exponent = static_cast<int>(c.Int("radius"));
  const int p = static_cast<int>(c.Int("prime"));
  LevelFunction h;
  if (!c.Str("test-csv").empty()) {
    h = LevelFunction::FromCsv(ReadFile(c.Str("test-csv")));
  } else {
    auto center = RationalList(c.Str("test-center"));
    if (center.empty()) center.assign(spec.phi.target_dim(), Rational(0));
    h = BallIndicator(p, center, static_cast<int>(c.Int("test-radius")),
                      static_cast<int>(c.Int("support")), static_cast<int>(c.Int("level")));
  }
  if (h.prime() != p) Fail(ErrorKind::kInvalidArgument, "test function prime differs from --prime");
  const auto r = PushforwardPair(spec, h, static_cast<int>(c.Int("refine")));
  Output out{ToJson(r), nullptr, PushforwardCsv(r), {}, "", nullptr};
  if (!r.converged) {
    out.failure = ErrorKind::kResourceBudgetExceeded;
    out.failure_message = "pushforward pairing did not converge by --refine";
  }
  return out;
}

std::vector<std::array<double, 2>> RealPoints(const std::string& s) {
  std::vector<std::array<double, 2>> out;
  for (const auto& row : Rows(s)) {
    if (row.size() != 2) Fail(ErrorKind::kParseError, "real points are x,y pairs");
    out.push_back({ParseDouble(row[0]), ParseDouble(row[1])});
  }
  return out;
}

std::vector<std::vector<Rational>> PadicBasepoints(const Command& c, int dim) {
  std::vector<std::vector<Rational>> out;
  if (!c.Str("basepoints").empty()) {
    for (const auto& row : Rows(c.Str("basepoints"))) {
      std::vector<Rational> x;
      for (const auto& t : row) x.push_back(ParseRational(t));
      if (static_cast<int>(x.size()) != dim) Fail(ErrorKind::kDimensionMismatch, "basepoint dimension");
      out.push_back(std::move(x));
    }
    return out;
  }
  const auto coords = RationalList(c.Str("coords"));
  if (coords.empty()) return out;
  out.assign(1, {});
  for (int i = 0; i < dim; ++i) {
    std::vector<std::vector<Rational>> next;
    for (const auto& g : out) {
      for (const auto& x : coords) {
        auto h = g;
        h.push_back(x);
        next.push_back(std::move(h));
      }
    }
    out.swap(next);
  }
  return out;
}

WaveFrontReport PadicScan(const Command& c, const CellMassProvider& u, const Rational& scale) {
  const auto q = PadicQuery(c, scale);
  std::vector<Direction> dirs;
  for (const auto& row : Rows(c.Str("directions"))) {
    std::vector<std::int64_t> w;
    for (const auto& t : row) w.push_back(ParseLong(t));
    if (static_cast<int>(w.size()) != u.dimension()) Fail(ErrorKind::kDimensionMismatch, "direction dimension");
    dirs.push_back(CanonicalDirection(u.prime(), w, q.resolutions[0]));
  }
  return WfScanPadic(u, PadicBasepoints(c, u.dimension()), dirs, q);
}

Output RunWf(const Command& c, const Rational& scale) {
  const std::string source = c.Str("source");
  const int p = static_cast<int>(c.Int("prime"));
  WaveFrontReport rep;
  if (source == "real_kashiwara") {
    const auto grid = MonomialGaussianGrid(static_cast<int>(c.Int("k")),
                                           static_cast<std::size_t>(c.Int("grid")), -1, 1, -1, 1);
    RealWfQuery q;
    q.radii = IntList(c.Str("real-radii"));
    q.min_order = c.Double("min-order");
    q.max_residual = c.Double("max-residual");
    rep = WfScanReal(grid, RealPoints(c.Str("real-basepoints")), RealPoints(c.Str("real-directions")), q);
  } else {
    std::unique_ptr<CellMassProvider> u;
    if (source == "mu_hat") {
      u = std::make_unique<MuHatProvider>(ParsePoly(c.Str("poly"), ParseNameList(c.Str("vars"))), p,
                                          ParseRational(c.Str("twist")));
    } else if (source == "model") {
      u = std::make_unique<ModelUProvider>(
          MonomialSymbol{IntList(c.Str("alpha")), IntList(c.Str("beta"))}, p);
    } else if (source == "pushforward") {
      u = std::make_unique<PolynomialPushforwardProvider>(
          PolyMap::Parse(c.Str("map"), ParseNameList(c.Str("vars"))), p);
    } else if (source == "level") {
      u = std::make_unique<LevelFunctionProvider>(LevelFunction::FromCsv(ReadFile(c.Str("level-csv"))));
    } else {
      Fail(ErrorKind::kInvalidArgument, "unknown --source " + source);
    }
    rep = PadicScan(c, *u, scale);
  }
  return {ToJson(rep), nullptr, rep.ToCsv(), {}, "", nullptr};
}

Output RunCrit(const Command& c) {
  const auto r = CritIdeal(PolyMap::Parse(c.Str("map"), ParseNameList(c.Str("vars"))));
  return {ToJson(r), nullptr, CritCsv(r), {}, "", nullptr};
}

Output RunKeylemma(const Command& c, const Rational& scale) {
  const MonomialSymbol sym{IntList(c.Str("alpha")), IntList(c.Str("beta"))};
  const int p = static_cast<int>(c.Int("prime"));
  const auto r = QuasiInvarianceCheck(sym, p, static_cast<int>(c.Int("samples")),
                                      static_cast<std::uint64_t>(c.Int("seed")));
  Output out{ToJson(r), nullptr, QuasiInvarianceCsv(r), {}, "", nullptr};
  if (c.Int("scan") != 0) {
    const auto rep = PadicScan(c, ModelUProvider(sym, p), scale);
    out.result["scan"] = ToJson(rep);
    out.csv = rep.ToCsv();
  }
  if (r.mismatches > 0) {
    out.failure = ErrorKind::kValidationFailure;
    out.failure_message = "quasi-invariance fails at " + std::to_string(r.mismatches) + " samples";
    out.failure_detail = r.first_mismatch;
  }
  return out;
}

Output RunAtlas(const Command& c) {
  const auto atlas = ChartAtlas::Parse(ReadFile(c.Str("atlas")));
  Json j = AtlasSummary(atlas);
  j["serialized"] = atlas.Serialize();
  return {j, nullptr, AtlasCsv(atlas), {}, "", nullptr};
}

Output RunValidate(const Command& c, const Rational& scale) {
  const auto atlas = ChartAtlas::Parse(ReadFile(c.Str("atlas")));
  ValidationConfig vc;
  vc.primes = c.Str("primes").empty() ? std::vector<int>{static_cast<int>(c.Int("prime"))}
                                      : IntList(c.Str("primes"));
  vc.twists = RationalList(c.Str("twists"));
  vc.stab_numerators = static_cast<int>(c.Int("stab-numerators"));
  vc.stab_nmax = static_cast<int>(c.Int("stab-nmax"));
  vc.stab_tolerance = c.Double("stab-tol");
  vc.stab_cells = Scaled(static_cast<std::uint64_t>(c.Int("stab-cells")), scale);
  vc.scan_side = static_cast<int>(c.Int("scan-side"));
  vc.scan_defaults = PadicQuery(c, scale);
  if (vc.twists.empty()) Fail(ErrorKind::kInvalidArgument, "no twists");
  const auto r = CrossValidate(atlas, vc);
  Output out{ToJson(r), nullptr, ValidationCsv(r), {}, "", nullptr};
  if (!r.pass) {
    out.failure = ErrorKind::kValidationFailure;
    out.failure_message = "atlas fails cross-validation";
    out.failure_detail = out.result["failures"];
  }
  return out;
}

int Main(int argc, char** argv) {
  CLI::App app{"mlab: oscillatory integrals, wave fronts and isotropic bounds"};
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Command>> cmds;
  auto make = [&](const std::string& name, const std::string& help) -> Command& {
    cmds.push_back(std::make_unique<Command>(app, name, help));
    return *cmds.back();
  };

  Command& ft = make("ft", "truncated integrals of psi(b (P(x) + <x, xi>))");
  ft.Add("poly", "x^2", "polynomial P");
  ft.Add("vars", "x", "variables of P");
  ft.Add("xi", "0", "comma-separated rationals");
  ft.Add("nmax", "6", "largest support exponent N");
  ft.Add("tol", "1e-9", "stabilization tolerance");
  ft.Add("twist", "1", "character twist b");
  ft.Add("exact", "0", "1: exact cyclotomic values");

  Command& pf = make("pushforward", "pairing of phi_*(|g| dx) with a test function");
  pf.Add("map", "t, t^2*x", "phi components");
  pf.Add("vars", "t, x", "domain variables");
  pf.Add("density", "1", "g");
  pf.Add("center", "", "domain ball center (default 0)");
  pf.Add("radius", "0", "domain ball radius exponent");
  pf.Add("test-csv", "", "LevelFunction CSV test function");
  pf.Add("test-center", "", "test ball center (default 0)");
  pf.Add("test-radius", "0", "test ball radius exponent");
  pf.Add("support", "0", "test function support exponent N");
  pf.Add("level", "0", "test function level exponent M");
  pf.Add("refine", "4", "domain refinement");

  Command& wf = make("wf", "wave-front scan");
  wf.Add("source", "pushforward", "mu_hat, model, pushforward, level or real_kashiwara");
  wf.Add("poly", "x^2", "mu_hat: P");
  wf.Add("vars", "t, x", "variables of poly or map");
  wf.Add("twist", "1", "mu_hat: twist b");
  wf.Add("map", "t, t^2*x", "pushforward: phi");
  wf.Add("alpha", "1", "model: alpha");
  wf.Add("beta", "0", "model: beta");
  wf.Add("level-csv", "", "level: LevelFunction CSV");
  wf.Add("coords", "0,1,2", "product grid coordinates");
  wf.Add("basepoints", "", "explicit basepoints a,b;c,d");
  wf.Add("directions", "", "integer representatives; empty: all classes");
  AddPadicScanOptions(wf);
  wf.Add("k", "2", "real_kashiwara: exponent k");
  wf.Add("grid", "1024", "real_kashiwara: grid side");
  wf.Add("real-basepoints",
         "-0.5,-0.5;-0.5,-0.25;-0.5,0;-0.5,0.25;-0.5,0.5;-0.25,-0.5;-0.25,-0.25;-0.25,0;"
         "-0.25,0.25;-0.25,0.5;0,-0.5;0,-0.25;0,0;0,0.25;0,0.5;0.25,-0.5;0.25,-0.25;0.25,0;"
         "0.25,0.25;0.25,0.5;0.5,-0.5;0.5,-0.25;0.5,0;0.5,0.25;0.5,0.5",
         "real basepoints");
  wf.Add("real-directions", "1,0;0,1;1,1;1,-1", "real directions; empty: 32 lines");
  wf.Add("real-radii", "3,4", "real cutoff radii");
  wf.Add("min-order", "4", "real OUT decay order");
  wf.Add("max-residual", "0.5", "real fit residual bound");

  Command& crit = make("crit", "Crit_f ideal and Lagrangian verdict");
  crit.Add("map", "t, t^2*x", "f components");
  crit.Add("vars", "t, x", "source variables");

  Command& kl = make("keylemma", "model function quasi-invariance and scan");
  kl.Add("alpha", "2,1", "alpha");
  kl.Add("beta", "1,0", "beta");
  kl.Add("samples", "100", "random triples");
  kl.Add("scan", "0", "1: also scan the model function");
  kl.Add("coords", "0,1,3", "scan grid coordinates");
  kl.Add("basepoints", "", "explicit scan basepoints");
  kl.Add("directions", "", "scan directions; empty: all classes");
  AddPadicScanOptions(kl);

  Command& at = make("atlas", "strata, I', I and U of a chart atlas");
  at.Add("atlas", "data/atlases/x2.atlas", "atlas file");

  Command& va = make("validate", "cross-validate an atlas against probes");
  va.Add("atlas", "data/atlases/x2.atlas", "atlas file");
  va.Add("primes", "", "comma-separated primes (default --prime)");
  va.Add("twists", "1", "comma-separated twists");
  const ValidationConfig vdef;
  va.Add("stab-numerators", std::to_string(vdef.stab_numerators), "grid |a| bound");
  va.Add("stab-nmax", std::to_string(vdef.stab_nmax), "probe N_max");
  va.Add("stab-tol", "1e-9", "probe tolerance");
  va.Add("stab-cells", std::to_string(vdef.stab_cells), "probe cell cap per level");
  va.Add("scan-side", std::to_string(vdef.scan_side), "scan basepoints 0..side-1");
  AddPadicScanOptions(va);

  // Splice --config entries behind the flags so that flags win.
  std::vector<std::string> args(argv, argv + argc);
  std::string command = argc > 1 ? args[1] : "";
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    if (path.empty()) continue;
    try {
      std::istringstream in(ReadFile(path));
      std::string line;
      while (std::getline(in, line)) {
        line = Trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) Fail(ErrorKind::kParseError, "config line without '=': " + line);
        const std::string key = Trim(line.substr(0, eq));
        bool given = false;
        for (const auto& a : args) given = given || a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
        if (!given) args.push_back("--" + key + "=" + Trim(line.substr(eq + 1)));
      }
    } catch (const Error& e) {
      EmitError(command, ErrorKindName(e.kind()), e.what(), 4);
      return 4;
    }
    break;
  }
  std::vector<char*> cargv;
  for (auto& a : args) cargv.push_back(a.data());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    EmitError(command, "ParseError", e.what(), 4);
    return 4;
  }

  const Command* cmd = nullptr;
  for (const auto& c : cmds) {
    if (c->parsed()) cmd = c.get();
  }
  command = cmd->name();
  try {
    const Rational scale = BudgetScale();
    const long grid_cap = cmd->Int("grid-cap");
    const long step_cap = cmd->Int("step-cap");
    const long seed = cmd->Int("seed");
    if (grid_cap <= 0 || step_cap <= 0 || seed < 0) {
      Fail(ErrorKind::kInvalidArgument, "budgets must be positive and the seed nonnegative");
    }
    const std::string format = cmd->Str("format");
    if (format != "json" && format != "csv") Fail(ErrorKind::kInvalidArgument, "--format is json or csv");
    SetDefaultGridCap(Scaled(static_cast<std::uint64_t>(grid_cap), scale));
    SetDefaultStepCap(Scaled(static_cast<std::uint64_t>(step_cap), scale));
    const double time_cap = cmd->Double("time-cap") * scale.get_d();

    const auto start = std::chrono::steady_clock::now();
    Output out;
    if (command == "ft") out = RunFt(*cmd);
    if (command == "pushforward") out = RunPushforward(*cmd);
    if (command == "wf") out = RunWf(*cmd, scale);
    if (command == "crit") out = RunCrit(*cmd);
    if (command == "keylemma") out = RunKeylemma(*cmd, scale);
    if (command == "atlas") out = RunAtlas(*cmd);
    if (command == "validate") out = RunValidate(*cmd, scale);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string text =
        format == "csv" ? out.csv
                        : Dump(Envelope(command, cmd->Config(scale), static_cast<std::uint64_t>(seed),
                                        out.result, out.error_bound));
    if (cmd->Str("output").empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cmd->Str("output"));
      if (!(f << text)) Fail(ErrorKind::kInvalidArgument, "cannot write " + cmd->Str("output"));
    }
    if (time_cap > 0 && elapsed > time_cap) {
      std::cerr << Dump({{"command", command},
                         {"warning", "soft time cap exceeded"},
                         {"time_cap", time_cap}});
    }
    if (out.failure) {
      const int code = ExitCode(*out.failure);
      EmitError(command, ErrorKindName(*out.failure), out.failure_message, code, out.failure_detail);
      return code;
    }
    return 0;
  } catch (const Error& e) {
    const int code = ExitCode(e.kind());
    EmitError(command, ErrorKindName(e.kind()), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    EmitError(command, "Internal", e.what(), 1);
    return 1;
  }
}

}  // namespace
}  // namespace mlab

int main(int argc, char** argv) { return mlab::Main(argc, argv); }
