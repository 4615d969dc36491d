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

#include <iosfwd>
#include <string>

#include "auctionlp/lp.hpp"

namespace auctionlp {

// Fixed-layout MPS with an OBJSENSE MAX section and family-encoded names
// (second character of each row/column name carries the constraint family).
// Values are printed with 12 significant digits, so any coefficient with a
// twelve-digit decimal representation survives a round trip bit-exactly.
void WriteMps(const SparseLP& lp, std::ostream& out,
              const std::string& name = "AUCTIONLP");
void WriteMpsFile(const SparseLP& lp, const std::string& path,
                  const std::string& name = "AUCTIONLP");

// Reads back what WriteMps produced (a practical subset of MPS: ROWS,
// COLUMNS, RHS, BOUNDS, OBJSENSE). Maximization is assumed unless the file
// says otherwise; a minimization objective is negated on import.
SparseLP ReadMps(std::istream& in);
SparseLP ReadMpsFile(const std::string& path);

}  // namespace auctionlp
