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

#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace mlab {

namespace {

Json Strings(const std::vector<std::string>& xs) { return Json(xs); }

Json Generators(const Ideal& i) { return Json(i.ToStrings()); }

Json Rationals(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& q : xs) out.push_back(q.get_str());
  return out;
}

// Finite doubles as numbers; infinities as "inf" / "-inf".
Json Number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

std::string Fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// RFC 4180 field.
std::string Field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string JoinWith(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

}  // namespace

Json ToJson(const Complex& z) { return Json::array({Number(z.real()), Number(z.imag())}); }

Json ToJson(const StabilizationReport& r) {
  Json j;
  j["xi"] = Rationals(r.xi);
  j["values"] = Json::array();
  for (const auto& v : r.values) j["values"].push_back(ToJson(v));
  j["cell_levels"] = r.cell_levels;
  j["stabilization_level"] =
      r.stabilization_level ? Json(*r.stabilization_level) : Json(nullptr);
  j["tolerance"] = r.tolerance;
  if (!r.exact_values.empty()) {
    j["exact_values"] = Json::array();
    for (const auto& v : r.exact_values) j["exact_values"].push_back(v.ToString());
  }
  return j;
}

Json ToJson(const PushforwardResult& r) {
  Json j;
  j["value"] = ToJson(r.value);
  j["converged"] = r.converged;
  j["level"] = r.level;
  j["masses"] = Json::array();
  for (const auto& [cell, mass] : r.masses) j["masses"].push_back({cell, mass.get_str()});
  return j;
}

Json ToJson(const WaveFrontReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x;
    x["basepoint"] = Strings(e.basepoint);
    x["direction"] = Strings(e.direction);
    x["verdict"] = WfVerdictName(e.verdict);
    x["r"] = e.r;
    x["s"] = e.s;
    x["j0"] = e.j0;
    x["maxval"] = Number(e.maxval);
    x["values"] = Json::array();
    for (double v : e.values) x["values"].push_back(Number(v));
    if (r.field == "R") {
      x["decay_order"] = e.decay_order ? Number(*e.decay_order) : Json(nullptr);
      x["fit_residual"] = Number(e.fit_residual);
      x["floors"] = Json::array();
      for (double v : e.floors) x["floors"].push_back(Number(v));
    }
    entries.push_back(std::move(x));
  }
  return {{"entries", entries}};
}

Json ToJson(const CritResult& r) {
  Json j;
  j["ideal"] = Generators(r.ideal);
  j["chart"] = {{"base", r.chart.base}, {"fiber", r.chart.fiber}};
  j["dimension"] = r.dimension;
  j["nonzero_section_dimension"] = r.nonzero_section_dimension;
  j["verdict"] = VerdictName(r.verdict);
  return j;
}

Json ToJson(const QuasiInvarianceReport& r) {
  return {{"samples", r.samples},
          {"mismatches", r.mismatches},
          {"first_mismatch", r.first_mismatch}};
}

Json ToJson(const ValidationReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["stabilization_points"] = r.stabilization_points;
  j["stabilized"] = r.stabilized;
  j["wf_in_candidates"] = r.wf_in_candidates;
  j["twist_verdicts_identical"] = r.twist_verdicts_identical;
  j["cells_used"] = r.cells_used;
  j["failures"] = Json::array();
  for (const auto& f : r.failures) {
    j["failures"].push_back({{"kind", f.kind},
                             {"prime", f.prime},
                             {"twist", f.twist},
                             {"basepoint", f.basepoint},
                             {"direction", f.direction}});
  }
  return j;
}

Json AtlasSummary(const ChartAtlas& atlas) {
  const auto strata = EnumerateStrata(atlas);
  const auto iprime = CritUnionIprime(strata, atlas.w_dimension);
  const auto big_i = AssembleI(iprime, atlas.w_dimension);
  const auto bad = ComputeU(strata, iprime, atlas.w_dimension);
  Json j;
  j["W_dimension"] = atlas.w_dimension;
  j["charts"] = Json::array();
  for (const auto& c : atlas.charts) j["charts"].push_back(c.name);
  j["strata"] = Json::array();
  for (const auto& s : strata) {
    j["strata"].push_back({{"chart", s.chart},
                           {"r", s.r},
                           {"zero_coords", s.zero_coords},
                           {"free_coords", s.free_coords},
                           {"phi", s.phi.ToString()}});
  }
  j["iprime"] = Json::array();
  for (const auto& p : iprime) {
    j["iprime"].push_back({{"stratum", p.stratum},
                           {"w_chart", p.w_chart},
                           {"crit", ToJson(p.crit)}});
  }
  Json pieces = Json::array();
  for (const auto& p : big_i.pieces) pieces.push_back(Generators(p));
  j["I"] = {{"base", big_i.chart.base}, {"fiber", big_i.chart.fiber}, {"pieces", pieces}};
  Json from_crit = Json::array(), from_tr = Json::array();
  for (const auto& p : bad.from_crit) from_crit.push_back(Generators(p));
  for (const auto& p : bad.from_transversality) from_tr.push_back(Generators(p));
  j["bad_locus"] = {{"vars", bad.vars},
                    {"from_crit", from_crit},
                    {"from_transversality", from_tr},
                    {"routes_agree", bad.routes_agree}};
  return j;
}

Json Envelope(const std::string& command, const Json& config, std::uint64_t seed,
              const Json& result, const Json& error_bound) {
  return {{"tool_version", kToolVersion}, {"command", command}, {"config", config},
          {"seed", seed},                 {"result", result},   {"error_bound", error_bound}};
}

std::string Dump(const Json& j) { return j.dump() + "\n"; }

std::string StabilizationCsv(const StabilizationReport& r) {
  std::string out = "N,re,im,cell_level\n";
  for (std::size_t n = 0; n < r.values.size(); ++n) {
    out += std::to_string(n) + "," + Fmt(r.values[n].real()) + "," + Fmt(r.values[n].imag()) +
           "," + (n < r.cell_levels.size() ? std::to_string(r.cell_levels[n]) : "") + "\n";
  }
  return out;
}

std::string PushforwardCsv(const PushforwardResult& r) {
  std::string out = "cell,mass\n";
  for (const auto& [cell, mass] : r.masses) out += std::to_string(cell) + "," + mass.get_str() + "\n";
  return out;
}

std::string CritCsv(const CritResult& r) {
  std::string out = "generator\n";
  for (const auto& g : r.ideal.ToStrings()) out += Field(g) + "\n";
  return out;
}

std::string QuasiInvarianceCsv(const QuasiInvarianceReport& r) {
  return "samples,mismatches\n" + std::to_string(r.samples) + "," + std::to_string(r.mismatches) +
         "\n";
}

std::string AtlasCsv(const ChartAtlas& atlas) {
  std::string out = "chart,r,zero_coords,phi\n";
  for (const auto& s : EnumerateStrata(atlas)) {
    out += Field(s.chart) + "," + std::to_string(s.r) + "," + Field(JoinWith(s.zero_coords, ";")) +
           "," + Field(s.phi.ToString()) + "\n";
  }
  return out;
}

std::string ValidationCsv(const ValidationReport& r) {
  std::string out = "kind,prime,twist,basepoint,direction\n";
  for (const auto& f : r.failures) {
    out += f.kind + "," + std::to_string(f.prime) + "," + Field(f.twist) + "," +
           Field(JoinWith(f.basepoint, ";")) + "," + Field(JoinWith(f.direction, ";")) + "\n";
  }
  return out;
}

}  // namespace mlab
