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

// JSON and CSV forms of the module reports.

#ifndef MLAB_TOOLS_REPORT_HPP_
#define MLAB_TOOLS_REPORT_HPP_

#include <string>

#include "json.hpp"
#include "mlab/critgeo.hpp"
#include "mlab/distribution.hpp"
#include "mlab/resolution.hpp"
#include "mlab/wavefront.hpp"

namespace mlab {

using Json = nlohmann::json;

inline constexpr char kToolVersion[] = "0.1.0";

Json ToJson(const Complex& z);  // [re, im]
Json ToJson(const StabilizationReport& r);
Json ToJson(const PushforwardResult& r);
Json ToJson(const WaveFrontReport& r);
Json ToJson(const CritResult& r);
Json ToJson(const QuasiInvarianceReport& r);
Json ToJson(const ValidationReport& r);
// Strata, I', I and the bad locus of an atlas.
Json AtlasSummary(const ChartAtlas& atlas);

// The top-level document.
Json Envelope(const std::string& command, const Json& config, std::uint64_t seed,
              const Json& result, const Json& error_bound);
std::string Dump(const Json& j);

std::string StabilizationCsv(const StabilizationReport& r);
std::string PushforwardCsv(const PushforwardResult& r);
std::string CritCsv(const CritResult& r);
std::string QuasiInvarianceCsv(const QuasiInvarianceReport& r);
std::string AtlasCsv(const ChartAtlas& atlas);
std::string ValidationCsv(const ValidationReport& r);

}  // namespace mlab

#endif  // MLAB_TOOLS_REPORT_HPP_
