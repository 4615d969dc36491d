// Copyright 2026 The auctionlp Authors
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

#include "auctionlp/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace auctionlp {

using Json = nlohmann::ordered_json;

int SolveConfig::effective_segments() const {
  if (segments > 0) return segments;
  return bidders == 1 ? 1 : 50;
}

DensitySpec SolveConfig::MakeDensity() const {
  if (density.empty()) return DensitySpec::Uniform(items);
  if (static_cast<int>(density.size()) != items) {
    throw std::invalid_argument("config: density item count != items");
  }
  std::vector<ItemDensity> factors;
  factors.reserve(items);
  for (const auto& item : density) {
    if (item.kind == "uniform") {
      factors.push_back(UniformItem());
    } else if (item.kind == "linear") {
      factors.push_back(LinearItem(item.param));
    } else if (item.kind == "cosine") {
      factors.push_back(CosineItem(item.param));
    } else {
      throw std::invalid_argument("config: unknown density kind '" +
                                  item.kind + "'");
    }
  }
  return DensitySpec::Product(std::move(factors));
}

SolveOptions SolveConfig::MakeSolveOptions() const {
  SolveOptions opt;
  opt.feas_tol = tol.feas;
  opt.opt_tol = tol.opt;
  opt.pivot_tol = tol.pivot;
  return opt;
}

IcOptions SolveConfig::MakeIcOptions() const {
  IcOptions opt;
  opt.mode = ic_mode;
  opt.locality = ic_locality;
  opt.tol_ic = tol.ic;
  return opt;
}

void SolveConfig::Validate() const {
  if (bidders < 1) throw std::invalid_argument("config: bidders must be >= 1");
  if (items < 1 || items > 3) {
    throw std::invalid_argument("config: items must be in {1,2,3}");
  }
  if (n < 1) throw std::invalid_argument("config: n must be >= 1");
  if (segments < 0) throw std::invalid_argument("config: M must be >= 1");
  if (segments == 0) {
    // default applies
  } else if (bidders == 1 && segments != 1) {
    throw std::invalid_argument("config: one bidder requires M = 1");
  }
  if (tol.feas <= 0 || tol.opt <= 0 || tol.pivot <= 0 || tol.ic <= 0) {
    throw std::invalid_argument("config: tolerances must be positive");
  }
  if (ic_mode == IcMode::kLocalIterative && ic_locality < 1.0) {
    throw std::invalid_argument("config: ic locality must be >= 1");
  }
  MakeDensity().Validate();
}

const char* ToString(PartitionMode mode) {
  return mode == PartitionMode::kExact ? "exact" : "uniform_breakpoints";
}

const char* ToString(IcMode mode) {
  switch (mode) {
    case IcMode::kFull: return "full";
    case IcMode::kIrreducible: return "irreducible";
    case IcMode::kLocalIterative: return "local_iterative";
  }
  return "?";
}

PartitionMode PartitionModeFromString(const std::string& s) {
  if (s == "exact") return PartitionMode::kExact;
  if (s == "uniform_breakpoints" || s == "uniform") {
    return PartitionMode::kUniformBreakpoints;
  }
  throw std::invalid_argument("unknown partition mode '" + s + "'");
}

IcMode IcModeFromString(const std::string& s) {
  if (s == "full") return IcMode::kFull;
  if (s == "irreducible") return IcMode::kIrreducible;
  if (s == "local_iterative") return IcMode::kLocalIterative;
  throw std::invalid_argument("unknown ic mode '" + s + "'");
}

std::string SolveConfig::ToJson() const {
  Json j;
  j["bidders"] = bidders;
  j["items"] = items;
  j["n"] = n;
  j["M"] = effective_segments();
  Json dens = Json::array();
  for (const auto& item : density) {
    Json d;
    d["kind"] = item.kind;
    if (item.kind != "uniform") d["param"] = item.param;
    dens.push_back(d);
  }
  j["density"] = dens;  // empty array means uniform
  j["partition_mode"] = ToString(partition_mode);
  j["ic"] = Json{{"mode", ToString(ic_mode)}, {"c", ic_locality}};
  j["tolerances"] = Json{{"feas", tol.feas},
                         {"opt", tol.opt},
                         {"pivot", tol.pivot},
                         {"ic", tol.ic}};
  j["output_dir"] = output_dir;
  j["seed"] = seed;
  return j.dump(2);
}

SolveConfig SolveConfig::FromJsonText(const std::string& text) {
  Json j = Json::parse(text);
  SolveConfig c;
  c.bidders = j.value("bidders", c.bidders);
  c.items = j.value("items", c.items);
  c.n = j.value("n", c.n);
  c.segments = j.value("M", 0);
  if (j.contains("density") && j["density"].is_array()) {
    for (const auto& d : j["density"]) {
      ItemDensityConfig item;
      item.kind = d.value("kind", "uniform");
      item.param = d.value("param", 0.0);
      c.density.push_back(item);
    }
  }
  if (j.contains("partition_mode")) {
    c.partition_mode = PartitionModeFromString(j["partition_mode"]);
  }
  if (j.contains("ic")) {
    c.ic_mode = IcModeFromString(j["ic"].value("mode", "local_iterative"));
    c.ic_locality = j["ic"].value("c", 2.5);
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    c.tol.feas = t.value("feas", c.tol.feas);
    c.tol.opt = t.value("opt", c.tol.opt);
    c.tol.pivot = t.value("pivot", c.tol.pivot);
    c.tol.ic = t.value("ic", c.tol.ic);
  }
  c.output_dir = j.value("output_dir", c.output_dir);
  c.seed = j.value("seed", c.seed);
  return c;
}

SolveConfig SolveConfig::FromJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return FromJsonText(ss.str());
}

std::vector<ItemDensityConfig> ParseDensityArg(const std::string& arg,
                                               int items) {
  std::vector<ItemDensityConfig> out;
  if (arg == "uniform") return out;
  const auto colon = arg.find(':');
  const std::string kind = arg.substr(0, colon);
  if (kind != "linear" && kind != "cosine") {
    throw std::invalid_argument("density: unknown kind '" + kind + "'");
  }
  if (colon == std::string::npos) {
    throw std::invalid_argument("density: '" + kind + "' needs parameters");
  }
  std::stringstream ss(arg.substr(colon + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    ItemDensityConfig item;
    item.kind = kind;
    item.param = std::stod(tok);
    out.push_back(item);
  }
  if (static_cast<int>(out.size()) == 1 && items > 1) {
    out.assign(items, out.front());  // one parameter applies to every item
  }
  if (static_cast<int>(out.size()) != items) {
    throw std::invalid_argument("density: parameter count != items");
  }
  return out;
}

}  // namespace auctionlp
