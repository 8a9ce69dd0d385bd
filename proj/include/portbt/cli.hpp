// Copyright 2026 The portbt Authors
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

#ifndef PORTBT_CLI_HPP
#define PORTBT_CLI_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "portbt/certificates.hpp"
#include "portbt/channel.hpp"
#include "portbt/entanglement.hpp"
#include "portbt/io.hpp"
#include "portbt/protocols.hpp"
#include "portbt/spectrum.hpp"

namespace portbt {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Everything a single invocation needs, filled in by the argument parser.
/// Defaults double as the documented flag defaults.
struct RunConfig {
  std::string subcommand;
  std::string variant;
  std::string variants;  ///< comma-separated list (sweep)
  int n = 1;
  int n_max = 5;
  int sweep_max = 0;
  std::string n_range;  ///< "A..B"
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string output_path;  ///< empty: standard output
  std::string inputs = "haar:1";
  std::string mode;  ///< simulate: det|prob; empty infers from the variant
  std::string metric;
  std::string suite = "all";
  std::string emit_povm;
  std::string emit_state;
  std::string dump_schur;
  // Verification thresholds; reported next to every measured residual.
  double eigen_tol = 1e-12;
  double spectrum_tol = 1e-10;
  double cert_eig_tol = 1e-10;
  double gap_tol = 1e-10;
  double oracle_tol = 1e-9;
};

namespace detail {

inline int write_text(const std::string& path, const std::string& text, std::ostream& out,
                      std::ostream& err) {
  if (path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file '" << path << "'\n";
    return kExitUsage;
  }
  file << text;
  return kExitOk;
}

inline void parse_n_range(const std::string& text, int& lo, int& hi) {
  const auto pos = text.find("..");
  bool ok = pos != std::string::npos && pos > 0 && pos + 2 < text.size();
  if (ok) {
    try {
      std::size_t used = 0;
      lo = std::stoi(text.substr(0, pos), &used);
      ok = used == pos;
      std::size_t used2 = 0;
      const std::string tail = text.substr(pos + 2);
      hi = std::stoi(tail, &used2);
      ok = ok && used2 == tail.size();
    } catch (const std::exception&) {
      ok = false;
    }
  }
  if (!ok || lo < 1 || hi < lo)
    throw std::invalid_argument("invalid --n-range '" + text +
                                "' (expected A..B with 1 <= A <= B)");
}

inline std::vector<std::string> split_csv_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

inline std::string underscored(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), '-', '_');
  return t;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

inline int run_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ostringstream art;
  spectrum_csv(cfg.n).write(art);
  if (!cfg.dump_schur.empty()) {
    const SchurBasis basis = schur_basis(cfg.n);
    const int rc =
        detail::write_text(cfg.dump_schur, schur_json(basis).dump(2) + "\n", out, err);
    if (rc != kExitOk) return rc;
  }
  return detail::write_text(cfg.output_path, art.str(), out, err);
}

// ---------------------------------------------------------------------------
// protocol
// ---------------------------------------------------------------------------

inline int run_protocol(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ProtocolVariant v = parse_variant(cfg.variant);
  const DenseContext ctx = make_context(cfg.n);
  const ProtocolBundle bundle = build_protocol(ctx, v);

  if (!cfg.emit_povm.empty()) {
    const int rc = detail::write_text(cfg.emit_povm, povm_json(bundle.povm).dump(2) + "\n",
                                      out, err);
    if (rc != kExitOk) return rc;
  }
  if (!cfg.emit_state.empty()) {
    const Eigen::VectorXcd state = bundle.resource.resource_state(ctx.basis_a);
    const int rc = detail::write_text(
        cfg.emit_state, state_json(bundle.resource, state).dump(2) + "\n", out, err);
    if (rc != kExitOk) return rc;
  }

  json doc;
  doc["variant"] = variant_name(v);
  doc["n"] = cfg.n;
  doc["deterministic"] = is_deterministic(v);
  doc["metric"] = is_deterministic(v) ? "fidelity" : "success_probability";
  doc["metric_value"] = round12(bundle.report.metric_closed);
  doc["average_fidelity"] = round12(bundle.report.metric_average_f);
  doc["asymptote"] = round12(bundle.report.asymptote_value);
  doc["completeness_residual"] = round12(bundle.povm.completeness_residual());
  doc["min_element_eigenvalue"] = round12(bundle.povm.min_element_eigenvalue());
  doc["emitted_povm"] = cfg.emit_povm.empty() ? json(nullptr) : json(cfg.emit_povm);
  doc["emitted_state"] = cfg.emit_state.empty() ? json(nullptr) : json(cfg.emit_state);
  return detail::write_text(cfg.output_path, doc.dump(2) + "\n", out, err);
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

namespace detail {

struct SimInput {
  std::string label;
  Eigen::MatrixXcd density;        ///< 2x2 (bare qubit) or 4x4 (with reference)
  Eigen::MatrixXcd fidelity_target;  ///< same shape; projector to score against
};

inline std::vector<SimInput> make_sim_inputs(const std::string& spec, std::uint64_t seed) {
  std::vector<SimInput> inputs;
  auto qubit = [](const std::string& label, const Eigen::VectorXcd& chi) {
    const Eigen::MatrixXcd proj = chi * chi.adjoint();
    return SimInput{label, proj, proj};
  };
  if (spec == "basis") {
    inputs.push_back(qubit("basis:0", Eigen::VectorXcd::Unit(2, 0)));
    inputs.push_back(qubit("basis:1", Eigen::VectorXcd::Unit(2, 1)));
  } else if (spec == "bell") {
    // Half of a two-qubit singlet: scores the entanglement fidelity.
    inputs.push_back(SimInput{"bell", singlet_projector(), singlet_projector()});
  } else if (spec.rfind("haar:", 0) == 0) {
    int count = 0;
    try {
      std::size_t used = 0;
      const std::string tail = spec.substr(5);
      count = std::stoi(tail, &used);
      if (used != tail.size()) count = 0;
    } catch (const std::exception&) {
      count = 0;
    }
    if (count < 1) throw std::invalid_argument("invalid --inputs '" + spec + "'");
    std::mt19937_64 rng(seed);
    for (int k = 0; k < count; ++k)
      inputs.push_back(qubit("haar:" + std::to_string(k), haar_state(2, rng)));
  } else {
    throw std::invalid_argument("invalid --inputs '" + spec +
                                "' (expected haar:K, basis or bell)");
  }
  return inputs;
}

}  // namespace detail

inline int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ProtocolVariant v = parse_variant(cfg.variant);
  const std::string natural = is_deterministic(v) ? "det" : "prob";
  if (!cfg.mode.empty() && cfg.mode != natural) {
    err << "error: --mode " << cfg.mode << " does not match variant " << variant_name(v)
        << " (expected --mode " << natural << ")\n";
    return kExitUsage;
  }

  const std::vector<detail::SimInput> inputs = detail::make_sim_inputs(cfg.inputs, cfg.seed);
  const DenseContext ctx = make_context(cfg.n);
  const TeleportationSetup setup = make_setup(ctx, v);

  const bool json_fmt = cfg.format == "json";
  std::ostringstream art;
  CsvTable table;
  table.header = {"input", "outcome", "branch_trace", "output_fidelity"};

  for (const auto& in : inputs) {
    const ChannelResult res = apply_channel(setup, in.density);
    auto emit_row = [&](int outcome, double trace, double fid, bool has_fid) {
      if (json_fmt) {
        json row;
        row["input"] = in.label;
        row["outcome"] = outcome;
        row["branch_trace"] = round12(trace);
        row["output_fidelity"] = has_fid ? json(round12(fid)) : json(nullptr);
        art << row.dump() << "\n";
      } else {
        table.add_row({in.label, std::to_string(outcome), fmt12(trace),
                       has_fid ? fmt12(fid) : std::string()});
      }
    };
    for (std::size_t i = 0; i < res.branch_traces.size(); ++i) {
      const double tr = res.branch_traces[i];
      double fid = 0.0;
      bool has_fid = false;
      if (tr > 1e-15) {
        fid = (in.fidelity_target * res.branch_outputs[i]).trace().real() / tr;
        has_fid = true;
      }
      emit_row(static_cast<int>(i) + 1, tr, fid, has_fid);
    }
    if (!setup.deterministic) {
      // Outcome 0 is the declared failure; no output state to score.
      emit_row(0, 1.0 - res.success_probability, 0.0, false);
    }
  }
  if (!json_fmt) table.write(art);
  return detail::write_text(cfg.output_path, art.str(), out, err);
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

namespace detail {

struct VerifySink {
  std::ostringstream lines;
  bool all_passed = true;

  void add(const std::string& suite, const std::string& variant, int n,
           const std::string& check, double residual, double threshold) {
    const bool pass = residual <= threshold;
    all_passed = all_passed && pass;
    json row;
    row["suite"] = suite;
    row["variant"] = variant.empty() ? json(nullptr) : json(variant);
    row["n"] = n;
    row["check"] = check;
    row["residual"] = round12(residual);
    row["threshold"] = threshold;
    row["pass"] = pass;
    lines << row.dump() << "\n";
  }
};

/// Largest absolute difference between the dense spectrum of rho and the
/// closed-form eigenvalue multiset (both sorted).
inline double spectrum_multiset_residual(int n, const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  std::vector<double> closed;
  for (const SpectrumSector& sec : rho_spectrum(n)) {
    for (long k = 0; k < std::lround(sec.deg_minus); ++k) closed.push_back(sec.lambda_minus);
    for (long k = 0; k < std::lround(sec.deg_plus); ++k) closed.push_back(sec.lambda_plus);
  }
  if (closed.size() != static_cast<std::size_t>(rho.rows()))
    throw std::logic_error("spectrum multiset: dimension mismatch");
  std::sort(closed.begin(), closed.end());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    worst = std::max(worst, std::abs(es.eigenvalues()[i] - closed[static_cast<std::size_t>(i)]));
  return worst;
}

inline void verify_eigen_suite(const RunConfig& cfg, VerifySink& sink) {
  for (int n = 1; n <= cfg.n_max; ++n) {
    const SchurBasis basis = schur_basis(n);
    const RhoEigensystem sys = rho_eigensystem(basis);
    const Eigen::MatrixXcd rho = build_rho(n);
    const EigensystemCheck chk = verify_eigensystem(sys, rho);
    sink.add("eigen", "", n, "eigen_residual", chk.max_eigen_residual, cfg.eigen_tol);
    sink.add("eigen", "", n, "gram_residual", chk.max_gram_residual, cfg.eigen_tol);
    sink.add("eigen", "", n, "spectrum_multiset", spectrum_multiset_residual(n, rho),
             cfg.spectrum_tol);
  }
}

inline void verify_dual_suite(const RunConfig& cfg, VerifySink& sink) {
  for (int n = 1; n <= cfg.n_max; ++n) {
    const DenseContext ctx = make_context(n);
    for (ProtocolVariant v : certified_variants()) {
      const CertificateReport rep = certificate(ctx, v);
      sink.add("dual", variant_name(v), n, "constraint_violation",
               std::max(0.0, -rep.worst_min_eigenvalue()), cfg.cert_eig_tol);
      sink.add("dual", variant_name(v), n, "duality_gap", std::abs(rep.gap), cfg.gap_tol);
    }
  }
}

inline void verify_oracle_suite(const RunConfig& cfg, VerifySink& sink) {
  for (int n = 1; n <= cfg.n_max; ++n) {
    const DenseContext ctx = make_context(n);
    for (ProtocolVariant v :
         {ProtocolVariant::det_mes, ProtocolVariant::det_opt, ProtocolVariant::prob_mes,
          ProtocolVariant::prob_opt}) {
      const TeleportationSetup setup = make_setup(ctx, v);
      const OracleMetrics m = oracle_metrics(setup);
      const PerformanceReport rep = performance_report(v, n);
      const double dense = is_deterministic(v) ? m.F : m.p;
      sink.add("oracle", variant_name(v), n, "metric_vs_closed",
               std::abs(dense - rep.metric_closed), cfg.oracle_tol);
    }
  }
}

}  // namespace detail

inline int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  detail::VerifySink sink;
  const bool all = cfg.suite == "all";
  if (all || cfg.suite == "eigen") detail::verify_eigen_suite(cfg, sink);
  if (all || cfg.suite == "dual") detail::verify_dual_suite(cfg, sink);
  if (all || cfg.suite == "oracle") detail::verify_oracle_suite(cfg, sink);
  const int rc = detail::write_text(cfg.output_path, sink.lines.str(), out, err);
  if (rc != kExitOk) return rc;
  return sink.all_passed ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------
// entanglement
// ---------------------------------------------------------------------------

inline int run_entanglement(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ProtocolVariant v = parse_variant(cfg.variant);
  if (is_deterministic(v)) {
    err << "error: entanglement accounting is defined for prob-mes and prob-opt\n";
    return kExitUsage;
  }
  std::vector<EntanglementReport> rows;
  if (cfg.sweep_max > 0) {
    rows = consumption_sweep(cfg.sweep_max, v);
  } else {
    rows.push_back(entanglement_report(cfg.n, v));
  }

  const bool json_fmt = cfg.format == "json";
  std::ostringstream art;
  CsvTable table;
  table.header = {"N", "E_ini", "E_res", "p", "pE_res", "consumption", "avg_consumption"};
  for (const auto& r : rows) {
    if (json_fmt) {
      json row;
      row["N"] = r.n;
      row["E_ini"] = round12(r.E_ini);
      row["E_res"] = r.residual_available ? json(round12(r.E_res)) : json(nullptr);
      row["p"] = round12(r.p);
      row["pE_res"] = r.residual_available ? json(round12(r.average_residual)) : json(nullptr);
      row["consumption"] = r.residual_available ? json(round12(r.consumption)) : json(nullptr);
      row["avg_consumption"] =
          r.residual_available ? json(round12(r.average_consumption)) : json(nullptr);
      art << row.dump() << "\n";
    } else {
      const std::string na;  // residual columns are empty beyond the dense limit
      table.add_row({std::to_string(r.n), fmt12(r.E_ini),
                     r.residual_available ? fmt12(r.E_res) : na, fmt12(r.p),
                     r.residual_available ? fmt12(r.average_residual) : na,
                     r.residual_available ? fmt12(r.consumption) : na,
                     r.residual_available ? fmt12(r.average_consumption) : na});
    }
  }
  if (!json_fmt) table.write(art);
  return detail::write_text(cfg.output_path, art.str(), out, err);
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

inline int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  int lo = 0, hi = 0;
  detail::parse_n_range(cfg.n_range, lo, hi);
  const std::vector<std::string> names = detail::split_csv_list(cfg.variants);
  if (names.empty()) {
    err << "error: --variants requires a non-empty comma-separated list\n";
    return kExitUsage;
  }
  std::vector<ProtocolVariant> vs;
  for (const auto& name : names) vs.push_back(parse_variant(name));

  const bool fidelity = cfg.metric == "fidelity";
  for (ProtocolVariant v : vs) {
    if (fidelity != is_deterministic(v)) {
      err << "error: variant " << variant_name(v) << " has no " << cfg.metric << " sweep\n";
      return kExitUsage;
    }
  }

  const bool json_fmt = cfg.format == "json";
  std::ostringstream art;
  CsvTable table;
  std::vector<std::string> header{"n"};
  const std::string prefix = fidelity ? "f_" : "p_";
  for (const auto& name : names) header.push_back(prefix + detail::underscored(name));
  if (fidelity) header.push_back("f_classical");
  header.push_back("asymptote");
  table.header = header;

  for (int n = lo; n <= hi; ++n) {
    std::vector<double> values;
    for (ProtocolVariant v : vs) {
      if (fidelity)
        values.push_back(average_fidelity(v == ProtocolVariant::det_mes
                                              ? fidelity_det_mes(n)
                                              : fidelity_det_opt(n)));
      else
        values.push_back(v == ProtocolVariant::prob_mes ? success_prob_mes(n)
                                                        : success_prob_opt(n));
    }
    const double asym = fidelity ? average_fidelity_asymptote(n) : success_prob_asymptote(n);
    if (json_fmt) {
      json row;
      row["n"] = n;
      for (std::size_t i = 0; i < names.size(); ++i)
        row[header[i + 1]] = round12(values[i]);
      if (fidelity) row["f_classical"] = round12(classical_fidelity_limit());
      row["asymptote"] = round12(asym);
      art << row.dump() << "\n";
    } else {
      std::vector<std::string> cells{std::to_string(n)};
      for (double value : values) cells.push_back(fmt12(value));
      if (fidelity) cells.push_back(fmt12(classical_fidelity_limit()));
      cells.push_back(fmt12(asym));
      table.add_row(std::move(cells));
    }
  }
  if (!json_fmt) table.write(art);
  return detail::write_text(cfg.output_path, art.str(), out, err);
}

// ---------------------------------------------------------------------------
// argument parsing and dispatch
// ---------------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"portbt: port-based teleportation protocol toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("-o,--output", cfg.output_path,
                 "write the main artifact to FILE instead of standard output");

  const std::string variant_help = "protocol variant: det-mes|det-opt|prob-mes|prob-opt";

  auto* spectrum = app.add_subcommand(
      "spectrum", "sector spectrum of the port-average state as CSV");
  spectrum->add_option("--n", cfg.n, "number of ports")->required()->check(CLI::PositiveNumber);
  spectrum->add_option("--dump-schur", cfg.dump_schur,
                       "also write the n-spin coupling basis as JSON to FILE");

  auto* protocol = app.add_subcommand(
      "protocol", "construct a protocol; summary JSON plus optional dense artifacts");
  protocol->add_option("--variant", cfg.variant, variant_help)->required();
  protocol->add_option("--n", cfg.n, "number of ports")->required()->check(CLI::PositiveNumber);
  protocol->add_option("--emit-povm", cfg.emit_povm, "write the measurement as JSON to FILE");
  protocol->add_option("--emit-state", cfg.emit_state,
                       "write the resource state as JSON to FILE");

  auto* simulate = app.add_subcommand(
      "simulate", "apply the channel to test inputs; rows outcome, branch_trace, output_fidelity");
  simulate->add_option("--variant", cfg.variant, variant_help)->required();
  simulate->add_option("--n", cfg.n, "number of ports")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--inputs", cfg.inputs,
                       "input family: haar:K, basis or bell (default haar:1)");
  simulate->add_option("--seed", cfg.seed, "random seed for haar inputs (default 0)");
  simulate->add_option("--mode", cfg.mode,
                       "det|prob; must match the variant (default: inferred)")
      ->check(CLI::IsMember({"det", "prob"}));
  simulate->add_option("--format", cfg.format, "csv|json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* verify = app.add_subcommand(
      "verify", "run verification suites; JSON lines with residual and threshold");
  verify->add_option("--suite", cfg.suite, "eigen|dual|oracle|all (default all)")
      ->check(CLI::IsMember({"eigen", "dual", "oracle", "all"}));
  verify->add_option("--n-max", cfg.n_max, "largest port count checked (default 5)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--eigen-tol", cfg.eigen_tol,
                     "eigenvector residual threshold (default 1e-12)");
  verify->add_option("--spectrum-tol", cfg.spectrum_tol,
                     "spectrum multiset threshold (default 1e-10)");
  verify->add_option("--cert-eig-tol", cfg.cert_eig_tol,
                     "certificate constraint threshold (default 1e-10)");
  verify->add_option("--gap-tol", cfg.gap_tol, "duality gap threshold (default 1e-10)");
  verify->add_option("--oracle-tol", cfg.oracle_tol,
                     "closed-form vs dense metric threshold (default 1e-9)");

  auto* entanglement = app.add_subcommand(
      "entanglement", "entanglement accounting for the probabilistic variants");
  entanglement->add_option("--variant", cfg.variant, "prob-mes|prob-opt")->required();
  auto* ent_n = entanglement->add_option("--n", cfg.n, "single port count")
                    ->check(CLI::PositiveNumber);
  auto* ent_sweep = entanglement->add_option("--sweep", cfg.sweep_max,
                                             "report every n from 1 to N_MAX")
                        ->check(CLI::PositiveNumber);
  ent_n->excludes(ent_sweep);
  ent_sweep->excludes(ent_n);
  entanglement->add_option("--format", cfg.format, "csv|json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "closed-form metric tables over a port range");
  sweep->add_option("--metric", cfg.metric, "fidelity|probability")
      ->required()
      ->check(CLI::IsMember({"fidelity", "probability"}));
  sweep->add_option("--variants", cfg.variants, "comma-separated variant list")->required();
  sweep->add_option("--n-range", cfg.n_range, "port range A..B")->required();
  sweep->add_option("--format", cfg.format, "csv|json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> argv_storage;
  argv_storage.push_back("portbt");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(cfg, out, err);
    if (protocol->parsed()) return run_protocol(cfg, out, err);
    if (simulate->parsed()) return run_simulate(cfg, out, err);
    if (verify->parsed()) return run_verify(cfg, out, err);
    if (entanglement->parsed()) {
      if (cfg.sweep_max == 0 && ent_n->count() == 0) {
        err << "error: entanglement requires --n N or --sweep N_MAX\n";
        return kExitUsage;
      }
      return run_entanglement(cfg, out, err);
    }
    if (sweep->parsed()) return run_sweep(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no subcommand given\n";
  return kExitUsage;
}

}  // namespace portbt

#endif  // PORTBT_CLI_HPP
