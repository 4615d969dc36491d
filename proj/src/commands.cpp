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

#include "auctionlp/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "auctionlp/analytic.hpp"
#include "auctionlp/assemble.hpp"
#include "auctionlp/certificate.hpp"
#include "auctionlp/grid.hpp"
#include "auctionlp/ic.hpp"
#include "auctionlp/mechanism.hpp"
#include "auctionlp/mps.hpp"
#include "json.hpp"

namespace auctionlp {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void WriteError(std::ostream& err, const std::string& what, int code) {
  Json j;
  j["error"] = what;
  j["exit_code"] = code;
  err << j.dump(2) << "\n";
}

void WriteTextFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Json ConfigJson(const SolveConfig& config) { return Json::parse(config.ToJson()); }

Json GapJson(const GapReport& gap) {
  Json j;
  j["epsilon"] = gap.epsilon;
  j["c_eta"] = gap.c_eta;
  j["linear_valid"] = gap.linear_valid;
  if (gap.linear_valid) j["linear_bound"] = gap.linear_bound;
  j["quadratic_valid"] = gap.quadratic_valid;
  if (gap.quadratic_valid) j["quadratic_bound"] = gap.quadratic_bound;
  j["weak_duality_residual"] = gap.weak_duality_residual;
  if (!gap.notes.empty()) j["notes"] = gap.notes;
  return j;
}

Json ChecksJson(const CertificateCheck& check, double majorization,
                double ic_violation) {
  Json j;
  j["weak_duality"] = check.weak_duality_ok;
  j["slackness_e"] = check.slackness_e_ok;
  j["fenchel"] = check.fenchel_ok;
  j["ex_post"] = check.ex_post_ok;
  j["lt_feasible"] = check.lt_feasible_ok;
  j["phi_monotone"] = check.phi_monotone_ok;
  j["worst"] = Json{{"weak_duality", check.weak_duality_residual},
                    {"slackness_e", check.slackness_e_worst},
                    {"fenchel", check.fenchel_worst},
                    {"ex_post", check.ex_post_worst},
                    {"lt_feasible", check.lt_feasible_worst}};
  j["majorization_violation"] = majorization;
  j["ic_violation"] = ic_violation;
  return j;
}

struct SolvedInstance {
  TypeGrid grid;
  MajorizationPartition partition;
  IterativeResult result;
};

SolvedInstance SolveInstance(const SolveConfig& config) {
  const DensitySpec density = config.MakeDensity();
  TypeGrid grid = BuildGrid(config.n, density);
  MajorizationPartition partition = BuildPartition(
      config.bidders, config.effective_segments(), config.partition_mode);
  partition.Validate();
  IterativeResult result = SolveIterative(grid, partition,
                                          config.MakeIcOptions(),
                                          config.MakeSolveOptions());
  return {std::move(grid), std::move(partition), std::move(result)};
}

}  // namespace

int CmdSolve(const SolveConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.Validate();
  } catch (const std::exception& e) {
    WriteError(err, e.what(), 2);
    return 2;
  }
  try {
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);

    SolvedInstance inst = SolveInstance(config);
    const TypeGrid& grid = inst.grid;
    const MajorizationPartition& partition = inst.partition;
    IterativeResult& res = inst.result;
    if (res.solve.status != SolveStatus::kOptimal) {
      throw std::runtime_error(std::string("solve ended with status ") +
                               ToString(res.solve.status));
    }

    const DualCertificate cert =
        ExtractCertificate(res.dual, grid, partition);
    const GapReport gap =
        CertifyGap(res.primal.objective, cert, partition);
    const CertificateCheck check =
        CheckCertificate(res.primal, cert, grid, partition);
    const ReducedMechanism mech =
        ReducedForm(res.primal, grid, config.bidders);
    const double majorization =
        CheckMajorization(mech, partition, 1000);
    const DensitySpec density = config.MakeDensity();

    double selling_separately = 0.0;
    for (int k = 0; k < config.items; ++k) {
      selling_separately +=
          MyersonRevenue({density.item(k), config.bidders, 20000});
    }
    const double full_surplus = FullSurplus(density, config.bidders);

    Json summary;
    summary["schema_version"] = 1;
    summary["config"] = ConfigJson(config);
    summary["status"] = ToString(res.solve.status);
    summary["per_bidder_objective"] = res.primal.objective;
    summary["total_revenue"] = config.bidders * res.primal.objective;
    summary["revenue_convention"] =
        "total_revenue = bidders * per_bidder_objective";
    summary["rounds"] = res.rounds.size();
    summary["iterations"] = res.solve.iterations;
    summary["dual_objective"] = cert.dual_objective;
    summary["gap_report"] = GapJson(gap);
    summary["benchmarks"] = Json{{"selling_separately", selling_separately},
                                 {"full_surplus", full_surplus}};
    summary["checks"] =
        ChecksJson(check, majorization, res.final_scan_violation);
    WriteTextFile(dir / "summary.json", summary.dump(2) + "\n");

    // Full solution for re-verification.
    Json solution;
    solution["schema_version"] = 1;
    solution["config"] = ConfigJson(config);
    solution["status"] = ToString(res.solve.status);
    solution["objective"] = res.primal.objective;
    solution["u"] = res.primal.u;
    solution["p"] = res.primal.p;
    Json pis = Json::array();
    for (const auto& e : res.primal.pi) {
      pis.push_back(Json::array({e.j, e.m, e.k, e.value}));
    }
    solution["pi"] = pis;
    Json duals;
    duals["ic"] = res.dual.ic;
    duals["mjT"] = res.dual.mj_t;
    duals["mjJ"] = res.dual.mj_j;
    duals["mjE"] = res.dual.mj_e;
    Json bound_duals = Json::array();
    for (const auto& [var, value] : res.dual.bound_duals) {
      bound_duals.push_back(Json::array({var, value}));
    }
    duals["bounds"] = bound_duals;
    solution["duals"] = duals;
    WriteTextFile(dir / "solution.json", solution.dump() + "\n");

    Json certificate;
    certificate["schema_version"] = 1;
    certificate["config"] = ConfigJson(config);
    certificate["phi"] = cert.phi;
    certificate["psi"] = cert.psi;
    certificate["c"] = cert.c;
    certificate["dual_objective"] = cert.dual_objective;
    WriteTextFile(dir / "certificate.json", certificate.dump() + "\n");

    {
      std::ofstream f(dir / "grid.csv");
      WriteGridCsv(grid, f);
    }
    {
      std::ofstream f(dir / "partition.csv");
      WritePartitionCsv(partition, f);
    }
    {
      std::ofstream f(dir / "mechanism.csv");
      WriteMechanismCsv(mech, f);
    }
    {
      std::ofstream f(dir / "rounds.csv");
      WriteRoundsCsv(res.rounds, f);
    }
    {
      // u, p and the dual field c per cell.
      std::ofstream f(dir / "ucp.csv");
      f << "j";
      for (int k = 0; k < grid.items(); ++k) f << ",theta_" << (k + 1);
      f << ",u";
      for (int k = 0; k < grid.items(); ++k) f << ",p_" << (k + 1);
      for (int k = 0; k < grid.items(); ++k) f << ",c_" << (k + 1);
      f << "\n";
      char buf[64];
      for (int64_t j = 0; j < grid.cells(); ++j) {
        f << j;
        for (int k = 0; k < grid.items(); ++k) {
          std::snprintf(buf, sizeof(buf), "%.17g", grid.theta(j, k));
          f << ',' << buf;
        }
        std::snprintf(buf, sizeof(buf), "%.17g", res.primal.u[j]);
        f << ',' << buf;
        for (int k = 0; k < grid.items(); ++k) {
          std::snprintf(buf, sizeof(buf), "%.17g", res.primal.p[j][k]);
          f << ',' << buf;
        }
        for (int k = 0; k < grid.items(); ++k) {
          std::snprintf(buf, sizeof(buf), "%.17g", cert.c[k][j]);
          f << ',' << buf;
        }
        f << '\n';
      }
    }
    {
      // Samples of the reconstructed cost functions.
      std::ofstream f(dir / "phi_samples.csv");
      f << "k,t,phi\n";
      char buf[96];
      for (int k = 0; k < grid.items(); ++k) {
        const PiecewiseLinear phi = ReconstructPhi(cert, k);
        for (int i = 0; i <= 200; ++i) {
          const double t = static_cast<double>(i) / 200;
          std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", k + 1, t,
                        phi(t));
          f << buf;
        }
      }
    }
    if (grid.items() == 2) {
      std::ofstream f(dir / "allocation_item1.csv");
      WriteAllocationMatrixCsv(mech, 0, f);
    }

    out << summary.dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    WriteError(err, e.what(), 1);
    return 1;
  }
}

int CmdVerify(const std::string& solution_path,
              const std::string& certificate_path,
              const std::string& report_path, std::ostream& out,
              std::ostream& err) {
  try {
    std::ifstream sol_in(solution_path);
    if (!sol_in) throw std::runtime_error("cannot open " + solution_path);
    Json sol;
    try {
      sol = Json::parse(sol_in);
    } catch (const Json::parse_error& e) {
      throw std::runtime_error("parse error in " + solution_path + ": " +
                               e.what());
    }
    std::ifstream cert_in(certificate_path);
    if (!cert_in) throw std::runtime_error("cannot open " + certificate_path);
    Json cer;
    try {
      cer = Json::parse(cert_in);
    } catch (const Json::parse_error& e) {
      throw std::runtime_error("parse error in " + certificate_path + ": " +
                               e.what());
    }

    const SolveConfig config =
        SolveConfig::FromJsonText(sol["config"].dump());
    const DensitySpec density = config.MakeDensity();
    const TypeGrid grid = BuildGrid(config.n, density);
    MajorizationPartition partition = BuildPartition(
        config.bidders, config.effective_segments(), config.partition_mode);

    PrimalSolution primal;
    primal.status = SolveStatus::kOptimal;
    primal.objective = sol["objective"].get<double>();
    primal.u = sol["u"].get<std::vector<double>>();
    primal.p = sol["p"].get<std::vector<std::vector<double>>>();
    for (const auto& e : sol["pi"]) {
      primal.pi.push_back({e[0].get<int32_t>(), e[1].get<int32_t>(),
                           e[2].get<int32_t>(), e[3].get<double>()});
    }
    if (static_cast<int64_t>(primal.u.size()) != grid.cells()) {
      throw std::runtime_error("solution u size does not match the grid");
    }

    DualCertificate cert;
    cert.phi = cer["phi"].get<std::vector<std::vector<double>>>();
    cert.psi = cer["psi"].get<std::vector<std::vector<double>>>();
    cert.c = cer["c"].get<std::vector<std::vector<double>>>();
    cert.dual_objective = cer["dual_objective"].get<double>();

    // Recompute the objective from u and p against the stored value.
    double objective = 0.0;
    for (int64_t j = 0; j < grid.cells(); ++j) {
      double v = -primal.u[j];
      for (int k = 0; k < grid.items(); ++k) {
        v += grid.theta(j, k) * primal.p[j][k];
      }
      objective += grid.mu(j) * v;
    }
    const bool objective_ok =
        std::abs(objective - primal.objective) <= 1e-8 * (1.0 + std::abs(objective));
    primal.objective = objective;

    const CertificateCheck check =
        CheckCertificate(primal, cert, grid, partition);
    const ReducedMechanism mech = ReducedForm(primal, grid, config.bidders);
    const double majorization = CheckMajorization(mech, partition, 1000);
    const double ic_violation =
        MaxIcViolationAllPairs(grid, primal.u, primal.p);

    Json report;
    report["schema_version"] = 1;
    report["objective"] = objective;
    report["objective_consistent"] = objective_ok;
    report["checks"] = ChecksJson(check, majorization, ic_violation);
    const bool pass = objective_ok && check.AllOk() &&
                      majorization <= 1e-6 && ic_violation <= 1e-7;
    report["pass"] = pass;
    if (!report_path.empty()) {
      WriteTextFile(report_path, report.dump(2) + "\n");
    }
    out << report.dump(2) << "\n";
    return pass ? 0 : 1;
  } catch (const std::exception& e) {
    WriteError(err, e.what(), 1);
    return 1;
  }
}

int CmdBenchmark(const SolveConfig& base, int b_min, int b_max,
                 const std::string& csv_path, std::ostream& out,
                 std::ostream& err) {
  if (b_min < 1 || b_max < b_min) {
    WriteError(err, "benchmark: empty bidder range", 2);
    return 2;
  }
  try {
    base.Validate();
  } catch (const std::exception& e) {
    WriteError(err, e.what(), 2);
    return 2;
  }
  std::ostringstream csv;
  csv << "B,selling_separately,lp_optimal,full_surplus,ratio\n";
  bool any_failed = false;
  char buf[200];
  for (int b = b_min; b <= b_max; ++b) {
    SolveConfig config = base;
    config.bidders = b;
    if (b == 1) config.segments = 1;
    try {
      const DensitySpec density = config.MakeDensity();
      double selling_separately = 0.0;
      for (int k = 0; k < config.items; ++k) {
        selling_separately += MyersonRevenue({density.item(k), b, 20000});
      }
      const double full_surplus = FullSurplus(density, b);
      SolvedInstance inst = SolveInstance(config);
      if (inst.result.solve.status != SolveStatus::kOptimal) {
        throw std::runtime_error(std::string("status ") +
                                 ToString(inst.result.solve.status));
      }
      const double lp_total = b * inst.result.primal.objective;
      std::snprintf(buf, sizeof(buf), "%d,%.10g,%.10g,%.10g,%.10g\n", b,
                    selling_separately, lp_total, full_surplus,
                    lp_total / selling_separately);
      csv << buf;
    } catch (const std::exception& e) {
      any_failed = true;
      err << "benchmark: B=" << b << " failed: " << e.what() << "\n";
      std::snprintf(buf, sizeof(buf), "%d,,,,\n", b);
      csv << buf;
    }
  }
  if (!csv_path.empty()) {
    WriteTextFile(csv_path, csv.str());
  }
  out << csv.str();
  return any_failed ? 1 : 0;
}

int CmdExportMps(const SolveConfig& config, const std::string& path,
                 std::ostream& out, std::ostream& err) {
  try {
    config.Validate();
  } catch (const std::exception& e) {
    WriteError(err, e.what(), 2);
    return 2;
  }
  try {
    const DensitySpec density = config.MakeDensity();
    const TypeGrid grid = BuildGrid(config.n, density);
    const MajorizationPartition partition = BuildPartition(
        config.bidders, config.effective_segments(), config.partition_mode);
    std::vector<IcPair> pairs;
    switch (config.ic_mode) {
      case IcMode::kFull:
        pairs = FullPairs(config.n, config.items);
        break;
      case IcMode::kIrreducible:
        pairs = IrreduciblePairs(config.n, config.items);
        break;
      case IcMode::kLocalIterative:
        pairs = LocalPairs(config.n, config.items, config.ic_locality);
        break;
    }
    const SparseLP lp = Assemble(grid, partition, pairs);
    WriteMpsFile(lp, path);
    Json j;
    j["path"] = path;
    j["rows"] = lp.num_rows();
    j["columns"] = lp.num_vars();
    j["entries"] = lp.num_entries();
    out << j.dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    WriteError(err, e.what(), 1);
    return 1;
  }
}

int CmdAnalytic(const SolveConfig& config, const AnalyticRequest& request,
                std::ostream& out, std::ostream& err) {
  try {
    config.Validate();
    const DensitySpec density = config.MakeDensity();
    Json j;
    if (request.myerson) {
      double selling_separately = 0.0;
      Json per_item = Json::array();
      for (int k = 0; k < config.items; ++k) {
        const double r =
            MyersonRevenue({density.item(k), config.bidders, 20000});
        per_item.push_back(r);
        selling_separately += r;
      }
      j["myerson_per_item"] = per_item;
      j["selling_separately"] = selling_separately;
    }
    if (request.full_surplus) {
      j["full_surplus"] = FullSurplus(density, config.bidders);
    }
    if (request.virtual_at >= 0.0) {
      j["virtual_value"] =
          VirtualValue({density.item(0), config.bidders, 20000},
                       request.virtual_at);
    }
    if (request.ironed_at >= 0.0) {
      const IronedVirtual iv =
          IronVirtual({density.item(0), config.bidders, 20000});
      j["ironed_virtual"] = iv(request.ironed_at);
      j["dual_field"] = iv.dual_field(request.ironed_at);
    }
    if (request.mv) {
      const MvPoint p = ManelliVincent(request.mv_x, request.mv_y);
      j["manelli_vincent"] = Json{{"u", p.u},
                                  {"region", ToString(p.region)},
                                  {"revenue", ManelliVincentRevenue()}};
    }
    if (request.margin_a > 0.0) {
      const SeparateSaleReport rep =
          SeparateSaleInfeasible(density, config.bidders, request.margin_a);
      j["separate_sale"] = Json{{"lhs", rep.lhs},
                                {"rhs", rep.rhs},
                                {"margin", rep.margin},
                                {"u_mass", rep.u_mass}};
    }
    out << j.dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    WriteError(err, e.what(), 1);
    return 1;
  }
}

}  // namespace auctionlp
