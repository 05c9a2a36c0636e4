// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

// binomci command-line tool.  Talks to the core exclusively through
// the C API in binomci.h.
//
// Exit statuses: 0 success, 2 usage error, 3 numerical/infeasibility
// error, 4 I/O error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "binomci.h"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;
constexpr const char* kSchemaVersion = "1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(bci_status st, const std::string& what) {
  if (st == BCI_OK) return;
  std::string msg = what + ": " + bci_strerror(st);
  if (st == BCI_ERR_DOMAIN || st == BCI_ERR_CONFIG) throw UsageError(msg);
  throw NumericalError(msg);
}

struct IntervalSetHandle {
  bci_interval_set* ptr = nullptr;
  ~IntervalSetHandle() { bci_interval_set_destroy(ptr); }
};

// Shortest round-trip decimal for doubles; integers stay integral.
std::string csv_value(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt::format("{}", v.get<double>());
  if (v.is_number_integer()) return fmt::format("{}", v.get<long long>());
  if (v.is_null()) return "";
  return v.dump();
}

std::string to_csv(const std::vector<ordered_json>& rows) {
  std::string out;
  if (rows.empty()) return out;
  bool first = true;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
    if (!first) out += ',';
    out += it.key();
    first = false;
  }
  out += '\n';
  for (const auto& row : rows) {
    first = true;
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (!first) out += ',';
      out += csv_value(it.value());
      first = false;
    }
    out += '\n';
  }
  return out;
}

std::string to_json_doc(const ordered_json& params,
                        const std::vector<ordered_json>& rows) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["params"] = params;
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

void emit(const ordered_json& params, const std::vector<ordered_json>& rows,
          const std::string& format, const std::string& out_path) {
  std::string payload =
      format == "json" ? to_json_doc(params, rows) : to_csv(rows);
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw IoError("cannot open output file: " + out_path);
  f << payload;
  if (!f) throw IoError("write failed: " + out_path);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "start:step:stop" (inclusive) or a comma-separated list.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    auto parts = split(spec, ':');
    if (parts.size() != 3) throw UsageError("grid must be start:step:stop or a comma list");
    double start = std::stod(parts[0]);
    double step = std::stod(parts[1]);
    double stop = std::stod(parts[2]);
    if (!(step > 0.0) || stop < start) throw UsageError("bad grid range");
    for (long i = 0;; ++i) {
      double v = start + double(i) * step;
      if (v > stop + step * 1e-9) break;
      grid.push_back(v);
    }
  } else {
    for (const auto& tok : split(spec, ',')) grid.push_back(std::stod(tok));
  }
  if (grid.empty()) throw UsageError("empty grid");
  return grid;
}

std::vector<bci_method> parse_methods(const std::string& spec) {
  std::vector<bci_method> out;
  for (const auto& tok : split(spec, ',')) {
    bci_method m;
    check(bci_method_parse(tok.c_str(), &m), "method '" + tok + "'");
    out.push_back(m);
  }
  if (out.empty()) throw UsageError("no methods given");
  return out;
}

const char* convention_label(int c) {
  return c == BCI_CONVENTION_STRICT ? "strict" : "closed";
}

// Shared output options.
struct OutputOpts {
  std::string format = "csv";
  std::string out_path;
};

void add_output_opts(CLI::App* cmd, OutputOpts& opts) {
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opts.out_path, "write output to PATH instead of stdout");
}

// ---- interval ----

struct IntervalArgs {
  long n = 0;
  long k = 0;
  double delta = 0.0;
  double tol = 1e-10;
  std::string methods = "cp,rigorous,tuned,wald,wilson";
  bool methods_explicit = false;
  OutputOpts output;
};

int run_interval(const IntervalArgs& args) {
  std::vector<ordered_json> rows;
  for (bci_method m : parse_methods(args.methods)) {
    bci_interval iv;
    bci_status st = bci_interval_compute(m, args.n, args.k, args.delta, args.tol, &iv);
    if (st == BCI_ERR_CONFIG && m == BCI_METHOD_TUNED && !args.methods_explicit) {
      // delta has no tuned theta; drop the method from the default list
      continue;
    }
    check(st, std::string("interval ") + bci_method_name(m));
    rows.push_back({{"method", bci_method_name(m)},
                    {"n", args.n},
                    {"k", args.k},
                    {"delta", args.delta},
                    {"lower", iv.lower},
                    {"upper", iv.upper},
                    {"raw_lower", iv.raw_lower},
                    {"raw_upper", iv.raw_upper},
                    {"width", iv.upper - iv.lower}});
  }
  ordered_json params = {{"command", "interval"}, {"n", args.n},     {"k", args.k},
                         {"delta", args.delta},   {"tol", args.tol}, {"methods", args.methods}};
  emit(params, rows, args.output.format, args.output.out_path);
  return 0;
}

// ---- coverage ----

struct CoverageArgs {
  std::string method = "cp";
  long n = 0;
  double p = 0.0;
  double delta = 0.0;
  double tol = 1e-10;
  long mc_samples = 0;
  std::uint64_t seed = 0;
  OutputOpts output;
};

ordered_json coverage_row(const std::string& source, const char* method,
                          long n, double p, double delta,
                          const bci_coverage_record& rec,
                          std::optional<long> samples,
                          std::optional<std::uint64_t> seed) {
  ordered_json row = {{"method", method},
                      {"n", n},
                      {"p", p},
                      {"delta", delta},
                      {"source", source},
                      {"convention", convention_label(rec.convention)},
                      {"coverage", rec.coverage},
                      {"error_prob", rec.error_prob},
                      {"mean_width", rec.mean_width}};
  row["samples"] = samples ? ordered_json(*samples) : ordered_json(nullptr);
  row["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
  return row;
}

int run_coverage(const CoverageArgs& args) {
  bci_method m;
  check(bci_method_parse(args.method.c_str(), &m), "method");
  IntervalSetHandle set;
  check(bci_interval_set_create(m, args.n, args.delta, args.tol, &set.ptr),
        "interval set");

  std::vector<ordered_json> rows;
  bci_coverage_record rec;
  check(bci_interval_set_coverage(set.ptr, args.p, &rec), "coverage");
  rows.push_back(coverage_row("exact", bci_method_name(m), args.n, args.p,
                              args.delta, rec, std::nullopt, std::nullopt));
  if (args.mc_samples > 0) {
    bci_coverage_record mc;
    check(bci_interval_set_mc_coverage(set.ptr, args.p, args.mc_samples,
                                       args.seed, &mc),
          "monte carlo coverage");
    rows.push_back(coverage_row("mc", bci_method_name(m), args.n, args.p,
                                args.delta, mc, args.mc_samples, args.seed));
  }
  ordered_json params = {{"command", "coverage"}, {"method", args.method},
                         {"n", args.n},           {"p", args.p},
                         {"delta", args.delta},   {"tol", args.tol},
                         {"mc", args.mc_samples}, {"seed", args.seed}};
  emit(params, rows, args.output.format, args.output.out_path);
  return 0;
}

// ---- sweep ----

struct SweepArgs {
  std::string axis;
  std::string grid;
  long n = 0;
  double p = 0.5;
  double delta = 0.0;
  double tol = 1e-10;
  std::string methods = "cp,rigorous,tuned,wald,wilson";
  OutputOpts output;
};

int run_sweep(const SweepArgs& args) {
  auto methods = parse_methods(args.methods);
  std::vector<ordered_json> rows;

  struct Summary {
    double min_coverage = 1.0;
    double max_error = 0.0;
  };
  std::vector<Summary> summary(methods.size());
  bool coverage_axis = args.axis != "k";

  if (args.axis == "k") {
    std::vector<double> grid =
        args.grid.empty() ? std::vector<double>() : parse_grid(args.grid);
    if (grid.empty()) {
      for (long k = 0; k <= args.n; ++k) grid.push_back(double(k));
    }
    std::vector<IntervalSetHandle> sets(methods.size());
    for (size_t i = 0; i < methods.size(); ++i) {
      check(bci_interval_set_create(methods[i], args.n, args.delta, args.tol,
                                    &sets[i].ptr),
            "interval set");
    }
    for (double kv : grid) {
      long k = long(kv);
      if (double(k) != kv || k < 0 || k > args.n) throw UsageError("k grid values must be integers in [0, N]");
      for (size_t i = 0; i < methods.size(); ++i) {
        bci_interval iv;
        check(bci_interval_set_get(sets[i].ptr, k, &iv), "interval");
        rows.push_back({{"method", bci_method_name(methods[i])},
                        {"n", args.n},
                        {"k", k},
                        {"delta", args.delta},
                        {"lower", iv.lower},
                        {"upper", iv.upper},
                        {"raw_lower", iv.raw_lower},
                        {"raw_upper", iv.raw_upper},
                        {"width", iv.upper - iv.lower}});
      }
    }
  } else if (args.axis == "p") {
    if (args.grid.empty()) throw UsageError("--grid is required for axis p");
    auto grid = parse_grid(args.grid);
    std::vector<IntervalSetHandle> sets(methods.size());
    for (size_t i = 0; i < methods.size(); ++i) {
      check(bci_interval_set_create(methods[i], args.n, args.delta, args.tol,
                                    &sets[i].ptr),
            "interval set");
    }
    for (double p : grid) {
      for (size_t i = 0; i < methods.size(); ++i) {
        bci_coverage_record rec;
        check(bci_interval_set_coverage(sets[i].ptr, p, &rec), "coverage");
        rows.push_back(coverage_row("exact", bci_method_name(methods[i]),
                                    args.n, p, args.delta, rec, std::nullopt,
                                    std::nullopt));
        summary[i].min_coverage = std::min(summary[i].min_coverage, rec.coverage);
        summary[i].max_error = std::max(summary[i].max_error, rec.error_prob);
      }
    }
  } else if (args.axis == "n") {
    if (args.grid.empty()) throw UsageError("--grid is required for axis n");
    auto grid = parse_grid(args.grid);
    for (double nv : grid) {
      long n = long(nv);
      if (double(n) != nv || n < 1) throw UsageError("n grid values must be positive integers");
      for (size_t i = 0; i < methods.size(); ++i) {
        IntervalSetHandle set;
        check(bci_interval_set_create(methods[i], n, args.delta, args.tol,
                                      &set.ptr),
              "interval set");
        bci_coverage_record rec;
        check(bci_interval_set_coverage(set.ptr, args.p, &rec), "coverage");
        rows.push_back(coverage_row("exact", bci_method_name(methods[i]), n,
                                    args.p, args.delta, rec, std::nullopt,
                                    std::nullopt));
        summary[i].min_coverage = std::min(summary[i].min_coverage, rec.coverage);
        summary[i].max_error = std::max(summary[i].max_error, rec.error_prob);
      }
    }
  } else {
    throw UsageError("axis must be one of k, p, n");
  }

  ordered_json params = {{"command", "sweep"},   {"axis", args.axis},
                         {"grid", args.grid},    {"n", args.n},
                         {"p", args.p},          {"delta", args.delta},
                         {"tol", args.tol},      {"methods", args.methods}};
  emit(params, rows, args.output.format, args.output.out_path);

  if (!args.output.out_path.empty()) {
    fmt::print("{} rows -> {}\n", rows.size(), args.output.out_path);
    if (coverage_axis) {
      for (size_t i = 0; i < methods.size(); ++i) {
        fmt::print("{}: min coverage {}, max error_prob {}\n",
                   bci_method_name(methods[i]), summary[i].min_coverage,
                   summary[i].max_error);
      }
    }
  }
  return 0;
}

// ---- tune ----

struct TuneArgs {
  double delta = 0.0;
  std::string n_set = "10,50,100,500,1000";
  std::string p_grid;  // empty -> 999-point default
  double tol = 1e-6;
  OutputOpts output;
};

int run_tune(const TuneArgs& args) {
  std::vector<long> n_set;
  for (double v : parse_grid(args.n_set)) {
    long n = long(v);
    if (double(n) != v || n < 1) throw UsageError("--n-set entries must be positive integers");
    n_set.push_back(n);
  }
  std::vector<double> p_grid;
  if (args.p_grid.empty()) {
    for (int i = 1; i <= 999; ++i) p_grid.push_back(double(i) / 1000.0);
  } else {
    p_grid = parse_grid(args.p_grid);
  }

  double theta_star = 0.0;
  double theta_rig = 0.0;
  long binding_n = 0;
  double binding_p = 0.0;
  double min_cov = 0.0;
  check(bci_rigorous_theta(args.delta, &theta_rig), "rigorous theta");
  bci_status st = bci_tune_theta(n_set.data(), n_set.size(), args.delta,
                                 p_grid.data(), p_grid.size(), args.tol,
                                 &theta_star, &binding_n, &binding_p, &min_cov);
  if (st == BCI_ERR_INFEASIBLE) {
    throw NumericalError("tuning infeasible on the supplied grids");
  }
  check(st, "tune");

  std::vector<ordered_json> rows = {{{"delta", args.delta},
                                     {"theta_star", theta_star},
                                     {"theta_rigorous", theta_rig},
                                     {"binding_n", binding_n},
                                     {"binding_p", binding_p},
                                     {"min_coverage", min_cov}}};
  ordered_json params = {{"command", "tune"},   {"delta", args.delta},
                         {"n_set", args.n_set}, {"p_grid", args.p_grid},
                         {"tol", args.tol}};
  emit(params, rows, args.output.format, args.output.out_path);
  if (args.output.out_path.empty() && args.output.format == "csv") {
    fmt::print("theta* = {} (rigorous {}), binding cell N={}, p={}\n",
               theta_star, theta_rig, binding_n, binding_p);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binomial-proportion confidence intervals and exact coverage analysis"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  IntervalArgs iargs;
  auto* ci = app.add_subcommand("interval", "confidence limits for one (N, k, delta)");
  ci->add_option("--n", iargs.n, "number of trials")->required();
  ci->add_option("--k", iargs.k, "number of successes")->required();
  ci->add_option("--delta", iargs.delta, "confidence parameter in (0,1)")->required();
  ci->add_option("--tol", iargs.tol, "bisection tolerance");
  auto* mopt = ci->add_option("--methods", iargs.methods, "comma list of cp,rigorous,tuned,wald,wilson");
  ci->add_option("--method", iargs.methods, "alias for --methods")->excludes(mopt);
  add_output_opts(ci, iargs.output);

  CoverageArgs cargs;
  auto* cc = app.add_subcommand("coverage", "exact coverage of one method at (N, p, delta)");
  cc->add_option("--method", cargs.method, "method name");
  cc->add_option("--n", cargs.n, "number of trials")->required();
  cc->add_option("--p", cargs.p, "true success probability in (0,1)")->required();
  cc->add_option("--delta", cargs.delta, "confidence parameter")->required();
  cc->add_option("--tol", cargs.tol, "bisection tolerance");
  cc->add_option("--mc", cargs.mc_samples, "add a Monte Carlo row with this many samples");
  cc->add_option("--seed", cargs.seed, "Monte Carlo seed");
  add_output_opts(cc, cargs.output);

  SweepArgs sargs;
  auto* cs = app.add_subcommand("sweep", "tabulate limits or coverage along k, p or N");
  cs->add_option("--axis", sargs.axis, "k, p or n")->required();
  cs->add_option("--grid", sargs.grid, "start:step:stop or comma list");
  cs->add_option("--n", sargs.n, "trials (axes k and p)");
  cs->add_option("--p", sargs.p, "true p (axis n)");
  cs->add_option("--delta", sargs.delta, "confidence parameter")->required();
  cs->add_option("--tol", sargs.tol, "bisection tolerance");
  cs->add_option("--methods", sargs.methods, "comma list of methods");
  add_output_opts(cs, sargs.output);

  TuneArgs targs;
  auto* ct = app.add_subcommand("tune", "largest theta meeting the coverage floor");
  ct->add_option("--delta", targs.delta, "confidence parameter")->required();
  ct->add_option("--n-set", targs.n_set, "comma list of N values");
  ct->add_option("--p-grid", targs.p_grid, "p grid (default: 999 interior points)");
  ct->add_option("--tol", targs.tol, "theta bisection tolerance");
  add_output_opts(ct, targs.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    iargs.methods_explicit = mopt->count() > 0 || ci->count("--method") > 0;
    if (ci->parsed()) return run_interval(iargs);
    if (cc->parsed()) return run_coverage(cargs);
    if (cs->parsed()) return run_sweep(sargs);
    if (ct->parsed()) return run_tune(targs);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
