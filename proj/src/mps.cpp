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

#include "auctionlp/mps.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace auctionlp {

namespace {

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

VarFamily VarFamilyFromChar(char c) {
  switch (c) {
    case 'U': return VarFamily::kU;
    case 'P': return VarFamily::kP;
    case 'Q': return VarFamily::kPi;
    default: return VarFamily::kOther;
  }
}

RowFamily RowFamilyFromChar(char c) {
  switch (c) {
    case 'I': return RowFamily::kIc;
    case 'T': return RowFamily::kMjT;
    case 'J': return RowFamily::kMjJ;
    case 'E': return RowFamily::kMjE;
    default: return RowFamily::kOther;
  }
}

}  // namespace

void WriteMps(const SparseLP& lp, std::ostream& out, const std::string& name) {
  out << "NAME          " << name << "\n";
  out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n";
  out << " N  COST\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    out << " " << static_cast<char>(lp.sense(i)) << "  " << lp.RowName(i)
        << "\n";
  }
  out << "COLUMNS\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    const std::string cname = lp.VarName(j);
    if (lp.objective(j) != 0.0) {
      out << "    " << cname << "  COST      " << Num(lp.objective(j)) << "\n";
    }
    for (int64_t e = lp.col_start()[j]; e < lp.col_start()[j + 1]; ++e) {
      out << "    " << cname << "  " << lp.RowName(lp.col_row()[e]) << "  "
          << Num(lp.col_value()[e]) << "\n";
    }
  }
  out << "RHS\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    if (lp.rhs(i) != 0.0) {
      out << "    RHS       " << lp.RowName(i) << "  " << Num(lp.rhs(i))
          << "\n";
    }
  }
  out << "BOUNDS\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    const std::string cname = lp.VarName(j);
    const double lo = lp.lower(j);
    const double up = lp.upper(j);
    if (lo == up) {
      out << " FX BND       " << cname << "  " << Num(lo) << "\n";
      continue;
    }
    if (lo == 0.0 && up == kInfinity) continue;  // MPS default
    if (lo == -kInfinity && up == kInfinity) {
      out << " FR BND       " << cname << "\n";
      continue;
    }
    if (lo == -kInfinity) {
      out << " MI BND       " << cname << "\n";
    } else if (lo != 0.0) {
      out << " LO BND       " << cname << "  " << Num(lo) << "\n";
    }
    if (up < kInfinity) {
      out << " UP BND       " << cname << "  " << Num(up) << "\n";
    }
  }
  out << "ENDATA\n";
}

void WriteMpsFile(const SparseLP& lp, const std::string& path,
                  const std::string& name) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("WriteMpsFile: cannot open " + path);
  WriteMps(lp, out, name);
  if (!out) throw std::runtime_error("WriteMpsFile: write failed for " + path);
}

SparseLP ReadMps(std::istream& in) {
  enum class Section { kNone, kObjsense, kRows, kColumns, kRhs, kBounds, kDone };
  Section section = Section::kNone;
  bool maximize = true;
  bool seen_objsense = false;

  struct RowDef {
    RowSense sense;
    double rhs = 0.0;
    RowInfo info;
    std::vector<std::pair<int, double>> entries;
  };
  std::vector<RowDef> rows;
  std::map<std::string, int> row_index;
  std::string cost_row;

  struct ColDef {
    double obj = 0.0;
    double lo = 0.0;
    double up = kInfinity;
    bool lo_set = false;
    VarInfo info;
  };
  std::vector<ColDef> cols;
  std::map<std::string, int> col_index;

  auto col_of = [&](const std::string& name) {
    auto it = col_index.find(name);
    if (it != col_index.end()) return it->second;
    const int id = static_cast<int>(cols.size());
    ColDef c;
    if (name.size() >= 2) c.info.family = VarFamilyFromChar(name[1]);
    cols.push_back(c);
    col_index.emplace(name, id);
    return id;
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '*') continue;
    std::istringstream ss(line);
    if (line[0] != ' ' && line[0] != '\t') {
      std::string head;
      ss >> head;
      if (head == "NAME") {
        continue;
      } else if (head == "OBJSENSE") {
        section = Section::kObjsense;
      } else if (head == "ROWS") {
        section = Section::kRows;
      } else if (head == "COLUMNS") {
        section = Section::kColumns;
      } else if (head == "RHS") {
        section = Section::kRhs;
      } else if (head == "RANGES") {
        throw std::runtime_error("ReadMps: RANGES not supported (line " +
                                 std::to_string(lineno) + ")");
      } else if (head == "BOUNDS") {
        section = Section::kBounds;
      } else if (head == "ENDATA") {
        section = Section::kDone;
        break;
      } else {
        throw std::runtime_error("ReadMps: unknown section '" + head +
                                 "' at line " + std::to_string(lineno));
      }
      continue;
    }
    switch (section) {
      case Section::kObjsense: {
        std::string v;
        ss >> v;
        maximize = v == "MAX" || v == "MAXIMIZE";
        seen_objsense = true;
        break;
      }
      case Section::kRows: {
        std::string sense, rname;
        ss >> sense >> rname;
        if (sense == "N") {
          cost_row = rname;
          break;
        }
        RowDef r;
        if (sense == "L") {
          r.sense = RowSense::kLe;
        } else if (sense == "G") {
          r.sense = RowSense::kGe;
        } else if (sense == "E") {
          r.sense = RowSense::kEq;
        } else {
          throw std::runtime_error("ReadMps: bad row sense at line " +
                                   std::to_string(lineno));
        }
        if (rname.size() >= 2) r.info.family = RowFamilyFromChar(rname[1]);
        row_index.emplace(rname, static_cast<int>(rows.size()));
        rows.push_back(std::move(r));
        break;
      }
      case Section::kColumns: {
        std::string cname;
        ss >> cname;
        const int j = col_of(cname);
        std::string rname, value;
        while (ss >> rname >> value) {
          const double v = std::stod(value);
          if (rname == cost_row) {
            cols[j].obj = v;
          } else {
            auto it = row_index.find(rname);
            if (it == row_index.end()) {
              throw std::runtime_error("ReadMps: unknown row '" + rname +
                                       "' at line " + std::to_string(lineno));
            }
            rows[it->second].entries.push_back({j, v});
          }
        }
        break;
      }
      case Section::kRhs: {
        std::string label, rname, value;
        ss >> label;
        while (ss >> rname >> value) {
          auto it = row_index.find(rname);
          if (it == row_index.end()) {
            throw std::runtime_error("ReadMps: unknown RHS row '" + rname +
                                     "' at line " + std::to_string(lineno));
          }
          rows[it->second].rhs = std::stod(value);
        }
        break;
      }
      case Section::kBounds: {
        std::string kind, label, cname;
        ss >> kind >> label >> cname;
        const int j = col_of(cname);
        std::string value;
        double v = 0.0;
        if (kind != "FR" && kind != "MI" && kind != "PL") {
          if (!(ss >> value)) {
            throw std::runtime_error("ReadMps: missing bound value at line " +
                                     std::to_string(lineno));
          }
          v = std::stod(value);
        }
        if (kind == "UP") {
          cols[j].up = v;
        } else if (kind == "LO") {
          cols[j].lo = v;
          cols[j].lo_set = true;
        } else if (kind == "FX") {
          cols[j].lo = cols[j].up = v;
          cols[j].lo_set = true;
        } else if (kind == "FR") {
          cols[j].lo = -kInfinity;
          cols[j].up = kInfinity;
          cols[j].lo_set = true;
        } else if (kind == "MI") {
          cols[j].lo = -kInfinity;
          cols[j].lo_set = true;
        } else if (kind == "PL") {
          cols[j].up = kInfinity;
        } else {
          throw std::runtime_error("ReadMps: bound kind '" + kind +
                                   "' not supported, line " +
                                   std::to_string(lineno));
        }
        break;
      }
      default:
        throw std::runtime_error("ReadMps: data outside any section at line " +
                                 std::to_string(lineno));
    }
  }
  if (section != Section::kDone) {
    throw std::runtime_error("ReadMps: missing ENDATA");
  }
  (void)seen_objsense;

  SparseLP lp;
  for (auto& c : cols) {
    lp.AddVariable(c.lo, c.up, maximize ? c.obj : -c.obj, c.info);
  }
  for (auto& r : rows) {
    lp.AddRow(r.sense, r.rhs, r.entries, r.info);
  }
  lp.Finalize();
  return lp;
}

SparseLP ReadMpsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ReadMpsFile: cannot open " + path);
  return ReadMps(in);
}

}  // namespace auctionlp
