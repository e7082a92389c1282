// Copyright 2026 The whmeo Authors
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

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "whmeo/cli/report.hpp"
#include "whmeo/meo_opt.hpp"

namespace whmeo::cli {

enum class Command { verify_identity, meo, additivity, choi_check, collapse_check };

inline const char* command_name(Command c) {
  switch (c) {
    case Command::verify_identity: return "verify-identity";
    case Command::meo: return "meo";
    case Command::additivity: return "additivity";
    case Command::choi_check: return "choi-check";
    case Command::collapse_check: return "collapse-check";
  }
  return "?";
}

/// Parsed command line. Defaults are the library defaults; tol < 0 means
/// "use the command's default tolerance".
struct RunConfig {
  Command command = Command::meo;
  std::vector<std::size_t> dims;
  double p = 1.0;
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  double tol = -1.0;
  double gap_lower = kGapLowerTol;
  double gap_upper = kGapUpperTol;
  ReportFormat format = ReportFormat::json;
  LogBase log_base = LogBase::nats;
  OptimizerConfig optimizer;
  bool unsafe_p = false;
  bool timing = false;
};

/// "3,3,4" -> {3, 3, 4}
inline std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorKind::invalid_argument, "bad --dims entry '" + item + "' in '" + text + "'");
    }
    out.push_back(static_cast<std::size_t>(std::stoull(item)));
    pos = comma + 1;
  }
  return out;
}

namespace detail {

inline double default_tol(Command c) {
  switch (c) {
    case Command::verify_identity: return 1e-10;
    case Command::meo: return kGapUpperTol;
    case Command::additivity: return kGapUpperTol;
    case Command::choi_check: return 1e-10;
    case Command::collapse_check: return 0.0;
  }
  return 0.0;
}

inline Json dims_json(const SiteDims& dims) {
  Json j = Json::array();
  for (std::size_t d : dims) j.push_back(d);
  return j;
}

inline Json optimizer_json(const OptimizerConfig& o) {
  Json j;
  j["restarts"] = o.restarts;
  j["max_iters"] = o.max_iters;
  j["initial_step"] = o.initial_step;
  j["step_shrink"] = o.step_shrink;
  j["converge_tol"] = o.converge_tol;
  j["fd_step"] = o.fd_step;
  j["min_step"] = o.min_step;
  return j;
}

inline Case make_case(std::string id, Json input, double expected, double actual, double tol) {
  Case c;
  c.id = std::move(id);
  c.input = std::move(input);
  c.expected = expected;
  c.actual = actual;
  c.abs_error = std::abs(actual - expected);
  c.pass = c.abs_error <= tol;
  return c;
}

inline void run_verify_identity(const RunConfig& rc, double tol, Report& report) {
  const SiteDims dims(rc.dims);
  const double bound = purity_bound(dims);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rc.samples; ++k) {
    Rng rng(mix_seed(rc.seed, k));
    const PureState omega = random_pure_state(dims, rng);
    const double closed = purity_closed_form(dims, omega);
    const double brute = purity_brute_force(dims, omega);
    worst = std::max(worst, closed);
    Json input;
    input["sample"] = k;
    report.cases.push_back(make_case("sample-" + std::to_string(k), input, brute, closed, tol));
  }
  if (rc.samples > 0) {
    Case c;
    c.id = "bound";
    c.input["dims"] = dims_json(dims);
    c.expected = bound;
    c.actual = worst;
    c.abs_error = std::max(0.0, worst - bound);
    c.pass = c.abs_error <= tol;
    report.cases.push_back(c);
  }
}

inline void run_meo(const RunConfig& rc, double tol, Report& report) {
  const SiteDims dims(rc.dims);
  const OptResult r = minimize_entropy_output(ProductChannel(dims), rc.p, rc.optimizer);
  Json input;
  input["dims"] = dims_json(dims);
  input["p"] = rc.p;
  Case c;
  if (rc.p > kMaxRenyiOrder) {
    // no analytic value is claimed above order 2
    c.id = "meo";
    c.input = input;
    c.expected = std::numeric_limits<double>::quiet_NaN();
    c.actual = r.best_value;
    c.abs_error = std::numeric_limits<double>::quiet_NaN();
    c.pass = true;
    report.notes.push_back("p > 2: value reported without an expected value");
  } else {
    c = make_case("meo", input, additivity_rhs(dims), r.best_value, tol);
  }
  c.entropy_valued = true;
  report.cases.push_back(c);
  for (std::size_t k = 0; k < r.per_restart_values.size(); ++k) {
    report.notes.push_back("restart " + std::to_string(k) + ": " + format_real(r.per_restart_values[k]) + " nats after " +
                           std::to_string(r.iterations_used[k]) + " iterations");
  }
}

inline void run_additivity(const RunConfig& rc, Report& report) {
  const SiteDims dims(rc.dims);
  const AdditivityCertificate cert = certify_additivity(dims, rc.p, rc.optimizer, rc.gap_lower, rc.gap_upper);
  Case c;
  c.id = "gap";
  c.input["dims"] = dims_json(dims);
  c.input["p"] = rc.p;
  c.expected = cert.meo_sum_of_singles;
  c.actual = cert.meo_product_estimate;
  c.abs_error = std::abs(cert.gap);
  c.pass = cert.passes();
  c.entropy_valued = true;
  report.cases.push_back(c);
  report.notes.push_back("gap " + format_real(cert.gap) + " nats, window [" + format_real(-rc.gap_lower) + ", " +
                         format_real(rc.gap_upper) + "]");
  report.notes.push_back("argmin product distance " + format_real(cert.argmin_product_distance));
}

inline void run_choi_check(const RunConfig& rc, double tol, Report& report) {
  for (std::size_t d : rc.dims) {
    const WHChannel ch(d);
    const CptpReport cptp = verify_cptp(choi_matrix(ch), d);
    Json input;
    input["d"] = d;

    Case pos;
    pos.id = "choi-positivity-d" + std::to_string(d);
    pos.input = input;
    pos.expected = 0.0;
    pos.actual = cptp.min_eigenvalue;
    pos.abs_error = std::max(0.0, -cptp.min_eigenvalue);
    pos.pass = pos.abs_error <= tol;
    report.cases.push_back(pos);

    report.cases.push_back(make_case("trace-preservation-d" + std::to_string(d), input, 0.0, cptp.trace_preservation_error, tol));

    double worst = 0.0;
    const SiteDims single{d};
    for (std::size_t k = 0; k < rc.samples; ++k) {
      Rng rng(mix_seed(rc.seed, (std::uint64_t{d} << 32) | k));
      const Matrix u = random_unitary(d, rng);
      const DensityMatrix rho = random_density_matrix(single, rng);
      worst = std::max(worst, covariance_residual(ch, u, rho));
    }
    Json cov_input = input;
    cov_input["samples"] = rc.samples;
    report.cases.push_back(make_case("covariance-d" + std::to_string(d), cov_input, 0.0, worst, tol));
  }
}

inline void run_collapse_check(const RunConfig& rc, double tol, Report& report) {
  const SiteDims dims(rc.dims);
  if (dims.size() > kMaxEnumeratedSites) throw Error(ErrorKind::dimension_too_large, "too many sites to enumerate");
  const std::uint64_t subsets = std::uint64_t{1} << dims.size();
  std::int64_t weight_sum = 0;
  for (std::uint64_t bits = 0; bits < subsets; ++bits) {
    const SubsetMask mask(bits);
    const std::int64_t expected = collapse_weight(dims, mask);
    const std::int64_t actual = inclusion_exclusion_collapse(dims, mask);
    weight_sum += expected;
    Json input;
    Json sites = Json::array();
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (mask.contains(j)) sites.push_back(j + 1);
    }
    input["subset"] = sites;
    Case c = make_case("subset-" + std::to_string(bits), input, static_cast<double>(expected), static_cast<double>(actual), tol);
    c.pass = (actual == expected) || c.abs_error <= tol;
    report.cases.push_back(c);
  }
  std::int64_t full = 1;
  for (std::size_t d : dims) full *= static_cast<std::int64_t>(d) - 1;
  Case c = make_case("weight-completeness", Json::object(), static_cast<double>(full), static_cast<double>(weight_sum), tol);
  c.pass = (weight_sum == full) || c.abs_error <= tol;
  report.cases.push_back(c);
}

inline Json config_json(const RunConfig& rc, double tol) {
  Json j;
  j["dims"] = rc.dims;
  switch (rc.command) {
    case Command::meo:
    case Command::additivity:
      j["p"] = rc.p;
      j["seed"] = rc.seed;
      j["optimizer"] = optimizer_json(rc.optimizer);
      if (rc.command == Command::additivity) {
        j["gap_lower"] = rc.gap_lower;
        j["gap_upper"] = rc.gap_upper;
      } else {
        j["tol"] = tol;
        j["unsafe_p"] = rc.unsafe_p;
      }
      break;
    case Command::verify_identity:
    case Command::choi_check:
      j["seed"] = rc.seed;
      j["samples"] = rc.samples;
      j["tol"] = tol;
      break;
    case Command::collapse_check:
      j["tol"] = tol;
      break;
  }
  j["log_base"] = rc.log_base == LogBase::bits ? "bits" : "nats";
  return j;
}

}  // namespace detail

/// Runs a parsed configuration and returns the report.
inline Report execute(const RunConfig& rc) {
  const auto start = std::chrono::steady_clock::now();
  const double tol = rc.tol >= 0.0 ? rc.tol : detail::default_tol(rc.command);
  Report report;
  report.command = command_name(rc.command);
  report.log_base = rc.log_base;
  report.config = detail::config_json(rc, tol);
  switch (rc.command) {
    case Command::verify_identity: detail::run_verify_identity(rc, tol, report); break;
    case Command::meo: detail::run_meo(rc, tol, report); break;
    case Command::additivity: detail::run_additivity(rc, report); break;
    case Command::choi_check: detail::run_choi_check(rc, tol, report); break;
    case Command::collapse_check: detail::run_collapse_check(rc, tol, report); break;
  }
  if (rc.timing) {
    report.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

/// Entry point behind the whmeo executable. Exit codes: 0 all cases pass,
/// 1 some case failed, 2 usage error.
inline int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Werner-Holevo minimal output entropy toolkit", "whmeo"};
  app.require_subcommand(1);
  RunConfig rc;
  std::string dims_text;
  std::string format = "json";
  std::string log_base = "nats";

  auto add_common = [&](CLI::App* sub, bool needs_dims) {
    auto* opt = sub->add_option("--dims", dims_text, "comma-separated site dimensions, e.g. 3,3,4");
    if (needs_dims) opt->required();
    sub->add_option("--seed", rc.seed, "base seed");
    sub->add_option("--tol", rc.tol, "pass tolerance (command default if omitted)");
    sub->add_option("--format", format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--log-base", log_base, "nats | bits (presentation only)")->check(CLI::IsMember({"nats", "bits"}));
    sub->add_flag("--timing", rc.timing, "record wall time (makes the report run-dependent)");
  };
  auto add_optimizer = [&](CLI::App* sub) {
    sub->add_option("--p", rc.p, "Renyi order in [1, 2]; 1 is von Neumann");
    sub->add_option("--restarts", rc.optimizer.restarts, "random restarts");
    sub->add_option("--max-iters", rc.optimizer.max_iters, "iterations per restart");
    sub->add_option("--initial-step", rc.optimizer.initial_step, "initial step length on the sphere");
    sub->add_option("--step-shrink", rc.optimizer.step_shrink, "step factor after a rejected step");
    sub->add_option("--converge-tol", rc.optimizer.converge_tol, "stop when an accepted step gains less");
    sub->add_option("--fd-step", rc.optimizer.fd_step, "finite-difference step");
    sub->add_option("--min-step", rc.optimizer.min_step, "smallest trial step");
    sub->add_option("--threads", rc.optimizer.threads, "threads for restarts");
  };

  auto* verify = app.add_subcommand("verify-identity", "closed-form output purity vs brute force on random states");
  add_common(verify, true);
  verify->add_option("--samples", rc.samples, "random states");

  auto* meo = app.add_subcommand("meo", "minimal entropy output of the product channel");
  add_common(meo, true);
  add_optimizer(meo);
  meo->add_flag("--unsafe-p", rc.unsafe_p, "allow p > 2 (no expected value is checked)");

  auto* additivity = app.add_subcommand("additivity", "additivity certificate for a product of channels");
  add_common(additivity, true);
  add_optimizer(additivity);
  additivity->add_option("--gap-lower", rc.gap_lower, "allowed undershoot of the gap");
  additivity->add_option("--gap-upper", rc.gap_upper, "allowed overshoot of the gap");

  auto* choi = app.add_subcommand("choi-check", "CPTP and covariance checks for single channels");
  add_common(choi, false);
  choi->add_option("--samples", rc.samples, "random (U, rho) pairs per dimension");

  auto* collapse = app.add_subcommand("collapse-check", "integer inclusion-exclusion collapse for every subset");
  add_common(collapse, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::map<std::string, Command> commands{{"verify-identity", Command::verify_identity},
                                                {"meo", Command::meo},
                                                {"additivity", Command::additivity},
                                                {"choi-check", Command::choi_check},
                                                {"collapse-check", Command::collapse_check}};
  rc.command = commands.at(chosen->get_name());
  rc.format = format == "csv" ? ReportFormat::csv : format == "text" ? ReportFormat::text : ReportFormat::json;
  rc.log_base = log_base == "bits" ? LogBase::bits : LogBase::nats;

  Report report;
  try {
    if (dims_text.empty()) dims_text = rc.command == Command::choi_check ? "2,3,4,5" : "";
    rc.dims = parse_dims(dims_text);
    SiteDims validated(rc.dims);
    if (rc.command == Command::additivity && validated.size() < 2) {
      throw Error(ErrorKind::invalid_argument, "additivity needs at least two dimensions");
    }
    rc.optimizer.seed = rc.seed;
    if (rc.unsafe_p) rc.optimizer.order_range = OrderRange::unrestricted;
    if (rc.command == Command::meo || rc.command == Command::additivity) {
      check_order(rc.p, rc.command == Command::meo ? rc.optimizer.order_range : OrderRange::standard, true);
      rc.optimizer.validate();
      require_total_at_most(validated);
    }
    if (rc.command == Command::verify_identity) require_total_at_most(validated);
    report = execute(rc);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n\n" << chosen->help();
    return 2;
  }
  out << emit_report(report, rc.format);
  return report.pass() ? 0 : 1;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace whmeo::cli
