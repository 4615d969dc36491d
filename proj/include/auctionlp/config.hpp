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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "auctionlp/density.hpp"
#include "auctionlp/ic.hpp"
#include "auctionlp/partition.hpp"
#include "auctionlp/simplex.hpp"

namespace auctionlp {

struct ItemDensityConfig {
  std::string kind = "uniform";  // uniform | linear | cosine
  double param = 0.0;            // linear: a, cosine: beta
};

struct Tolerances {
  double feas = 1e-7;
  double opt = 1e-7;
  double pivot = 1e-9;
  double ic = 1e-8;
};

struct SolveConfig {
  int bidders = 2;
  int items = 2;
  int n = 50;
  int segments = 0;  // 0 means default: 1 for one bidder, else 50
  std::vector<ItemDensityConfig> density;  // empty: uniform items
  PartitionMode partition_mode = PartitionMode::kExact;
  IcMode ic_mode = IcMode::kLocalIterative;
  double ic_locality = 2.5;
  Tolerances tol;
  std::string output_dir = "out";
  uint64_t seed = 12345;

  int effective_segments() const;
  DensitySpec MakeDensity() const;
  SolveOptions MakeSolveOptions() const;
  IcOptions MakeIcOptions() const;
  void Validate() const;  // throws std::invalid_argument

  std::string ToJson() const;
  static SolveConfig FromJsonText(const std::string& text);
  static SolveConfig FromJsonFile(const std::string& path);
};

// "uniform", "linear:0.5,1.2" (one parameter per item), "cosine:0.6,0.6".
std::vector<ItemDensityConfig> ParseDensityArg(const std::string& arg,
                                               int items);

const char* ToString(PartitionMode mode);
const char* ToString(IcMode mode);
PartitionMode PartitionModeFromString(const std::string& s);
IcMode IcModeFromString(const std::string& s);

}  // namespace auctionlp
