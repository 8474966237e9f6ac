#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "pdk/errors.hpp"
#include "pdk/io.hpp"
#include "pdk/validation.hpp"

namespace pdk::cli {

namespace {

using io::json;

struct RunConfig {
  std::string command;
  std::string config_path;
  std::string output_path;
  std::string format;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t n = 30;
  std::string mode = "psd";
  std::optional<double> min_sep;
  double tol_psd = 1e-12;
  double tol_spd_floor = 1e-12;
  std::string filter;
  std::string clause;
  bool embed_counterexample = false;
  unsigned threads = 0;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json load_config(const RunConfig& rc) {
  if (rc.config_path.empty()) throw ConfigError("--config is required for " + rc.command);
  return io::read_json_file(rc.config_path);
}

// The config is either a model document or an object whose "model" holds one.
const json& model_spec(const json& config) {
  return config.is_object() && config.contains("model") ? config.at("model") : config;
}

std::vector<double> parse_axis(const json& axis) {
  std::vector<double> values;
  if (axis.is_array()) {
    for (const json& v : axis) {
      if (!v.is_number()) throw ConfigError("grid axis entries must be numbers");
      values.push_back(v.get<double>());
    }
  } else if (axis.is_object()) {
    const double start = axis.value("start", 0.0);
    const double stop = axis.value("stop", 0.0);
    const int count = axis.value("num", 0);
    if (count < 1) throw ConfigError("grid axis \"num\" must be at least 1");
    for (int i = 0; i < count; ++i) {
      values.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
    }
  } else {
    throw ConfigError("a grid axis is an array or {\"start\", \"stop\", \"num\"}");
  }
  if (values.empty()) throw ConfigError("grid axes must be nonempty");
  return values;
}

std::vector<std::vector<double>> parse_grid(const json& config, std::size_t slots) {
  if (!config.is_object() || !config.contains("grid")) {
    throw ConfigError("eval needs a \"grid\" with one axis per space");
  }
  const json& grid = config.at("grid");
  if (!grid.is_array() || grid.size() != slots) {
    throw ConfigError("\"grid\" must list " + std::to_string(slots) + " axes");
  }
  std::vector<std::vector<double>> axes;
  for (const json& a : grid) axes.push_back(parse_axis(a));
  return axes;
}

CertifyMode parse_mode(const std::string& mode) {
  if (mode == "psd") return CertifyMode::Psd;
  if (mode == "spd") return CertifyMode::Spd;
  throw ConfigError("--mode must be psd or spd");
}

int cmd_eval(const RunConfig& rc, std::ostream& out) {
  const json config = load_config(rc);
  const KernelModel model = io::parse_model(model_spec(config));
  const auto axes = parse_grid(config, model.spaces().size());
  static const char* kNames[] = {"t", "u", "v"};

  std::vector<std::size_t> idx(axes.size(), 0);
  std::vector<double> d(axes.size());
  const bool as_json = rc.format == "json";
  json rows = json::array();
  if (!as_json) {
    for (std::size_t i = 0; i < axes.size(); ++i) out << kNames[i] << ',';
    out << "value\n";
  }
  while (true) {
    for (std::size_t i = 0; i < axes.size(); ++i) {
      d[i] = axes[i][idx[i]];
      if (!(d[i] >= 0.0) || !std::isfinite(d[i])) {
        throw DomainError(std::string("distance ") + kNames[i] + " = " + num(d[i]) +
                          " is not a finite nonnegative number");
      }
    }
    const double value = model(d);
    if (as_json) {
      rows.push_back(json{{"d", d}, {"value", value}});
    } else {
      for (double x : d) out << num(x) << ',';
      out << num(value) << '\n';
    }
    std::size_t k = axes.size();
    while (k > 0 && ++idx[k - 1] == axes[k - 1].size()) idx[--k] = 0;
    if (k == 0) break;
  }
  if (as_json) out << rows.dump(2) << '\n';
  return kExitPass;
}

CertifyOptions certify_options(const RunConfig& rc) {
  CertifyOptions o;
  o.n = rc.n;
  o.trials = rc.trials;
  o.seed = rc.seed;
  o.mode = parse_mode(rc.mode);
  o.min_sep = rc.min_sep.value_or(o.mode == CertifyMode::Spd ? 0.05 : 1e-6);
  o.tol_psd = rc.tol_psd;
  o.tol_spd_floor = rc.tol_spd_floor;
  o.threads = rc.threads;
  return o;
}

int cmd_gram(const RunConfig& rc, std::ostream& out) {
  const KernelModel model = io::parse_model(model_spec(load_config(rc)));
  CertifyOptions o = certify_options(rc);
  if (rc.n < 1 || rc.n > 512) throw ParameterError("--n must lie in [1, 512]");
  const auto points = sample_distinct(model.spaces(), rc.n, rc.seed, o.min_sep);
  const Eigen::MatrixXd a = gram(model, points);
  if (rc.format == "json") {
    json m = json::array();
    for (Eigen::Index j = 0; j < a.rows(); ++j) {
      json row = json::array();
      for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(a(j, k));
      m.push_back(std::move(row));
    }
    json pts = json::array();
    for (const auto& p : points) pts.push_back(io::to_json(p));
    out << json{{"n", a.rows()}, {"seed", rc.seed}, {"points", pts}, {"gram", m}}.dump(2) << '\n';
  } else {
    out << gram_csv(a);
  }
  return kExitPass;
}

int cmd_certify(const RunConfig& rc, std::ostream& out) {
  const KernelModel model = io::parse_model(model_spec(load_config(rc)));
  CertifyOptions o = certify_options(rc);
  if (rc.embed_counterexample || !rc.clause.empty()) {
    if (!rc.clause.empty()) {
      o.embed = parse_clause(rc.clause);
      if (!o.embed) throw ConfigError("unknown clause \"" + rc.clause + "\"");
    } else {
      o.embed = spd_report(model).violated;
      if (!o.embed) throw ArgumentError("the model violates no necessary condition to embed");
    }
  }

  const CertifyResult result = certify(model, o);

  std::size_t passed = 0;
  for (const auto& r : result.reports) passed += r.pass() ? 1 : 0;
  const GramReport& worst = result.worst_report();
  if (rc.format == "csv") {
    out << "trial,seed,n,min_eig,max_eig,scale,symmetry_residual,verdict\n";
    for (const auto& r : result.reports) {
      out << r.trial << ',' << r.seed << ',' << r.n << ',' << num(r.min_eig) << ','
          << num(r.max_eig) << ',' << num(r.scale) << ',' << num(r.symmetry_residual) << ','
          << to_string(r.verdict) << '\n';
    }
  } else {
    for (const auto& r : result.reports) out << io::to_json(r).dump() << '\n';
  }
  const json summary{{"summary",
                      {{"mode", to_string(o.mode)},
                       {"trials", result.reports.size()},
                       {"passed", passed},
                       {"pass", result.all_pass()},
                       {"worst_trial", worst.trial},
                       {"worst_min_eig", worst.min_eig},
                       {"worst_scale", worst.scale},
                       {"embedded_clause", o.embed ? json(to_string(*o.embed)) : json(nullptr)},
                       {"note", o.mode == CertifyMode::Spd
                                    ? "empirical evidence on sampled configurations, not a proof"
                                    : "empirical check on sampled configurations"}}}};
  if (rc.format == "csv") {
    out << "# " << summary.dump() << '\n';
  } else {
    out << summary.dump() << '\n';
  }
  return result.all_pass() ? kExitPass : kExitCertificationFailure;
}

int cmd_report(const RunConfig& rc, std::ostream& out) {
  const KernelModel model = io::parse_model(model_spec(load_config(rc)));
  out << io::to_json(spd_report(model)).dump(2) << '\n';
  return kExitPass;
}

int cmd_counterexample(const RunConfig& rc, std::ostream& out) {
  const KernelModel model = io::parse_model(model_spec(load_config(rc)));
  std::optional<ViolatedClause> clause;
  if (!rc.clause.empty()) {
    clause = parse_clause(rc.clause);
    if (!clause) throw ConfigError("unknown clause \"" + rc.clause + "\"");
  } else {
    clause = spd_report(model).violated;
    if (!clause) throw ArgumentError("the model violates no necessary condition");
  }
  out << io::to_json(counterexample_2x2(model, *clause)).dump(2) << '\n';
  return kExitPass;
}

int cmd_suite(const RunConfig& rc, std::ostream& out) {
  suite::SuiteOptions o;
  o.seed = rc.seed;
  o.filter = rc.filter;
  o.threads = rc.threads;
  if (!o.filter.empty()) {
    bool known = false;
    for (int id : suite::criterion_ids()) known = known || suite::matches_filter(id, o.filter);
    if (!known) throw ConfigError("--filter matches no criterion: " + o.filter);
  }
  const auto results = suite::run_suite(o);
  bool all = true;
  json rows = json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    if (rc.format == "json") {
      rows.push_back(json{{"criterion", r.id},
                          {"group", r.group},
                          {"title", r.title},
                          {"pass", r.pass},
                          {"detail", r.detail}});
    } else {
      out << "criterion " << r.id << " [" << r.group << "] " << (r.pass ? "PASS" : "FAIL") << ": "
          << r.title << " (" << r.detail << ")\n";
    }
  }
  if (rc.format == "json") {
    out << json{{"seed", rc.seed}, {"criteria", rows}, {"pass", all}}.dump(2) << '\n';
  } else {
    out << "suite " << (all ? "PASS" : "FAIL") << ": " << results.size() << " criteria, seed "
        << rc.seed << '\n';
  }
  return all ? kExitPass : kExitCertificationFailure;
}

void add_common(CLI::App* sub, RunConfig& rc, bool needs_config) {
  auto* config = sub->add_option("--config", rc.config_path, "JSON model or run config");
  if (needs_config) config->check(CLI::ExistingFile);
  sub->add_option("--output", rc.output_path, "write results here instead of stdout");
  sub->add_option("--seed", rc.seed, "64-bit seed for every random choice");
  sub->add_option("--threads", rc.threads, "worker threads (0: hardware concurrency)");
}

void add_sampling(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--n", rc.n, "points per configuration");
  sub->add_option("--min-sep", rc.min_sep, "minimum component separation of sampled points");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gneiting-type kernels: evaluation, Gram certification and condition reports", "pdk"};
  app.require_subcommand(1);
  RunConfig rc;
  const auto formats = CLI::IsMember({"csv", "json"});
  const auto modes = CLI::IsMember({"psd", "spd"});

  auto* eval = app.add_subcommand("eval", "evaluate a model on a grid of distances");
  add_common(eval, rc, true);
  eval->add_option("--format", rc.format, "csv or json")->check(formats);

  auto* gram_cmd = app.add_subcommand("gram", "Gram matrix on seeded sample points");
  add_common(gram_cmd, rc, true);
  add_sampling(gram_cmd, rc);
  gram_cmd->add_option("--format", rc.format, "csv or json")->check(formats);

  auto* cert = app.add_subcommand("certify", "PSD or SPD certification over seeded trials");
  add_common(cert, rc, true);
  add_sampling(cert, rc);
  cert->add_option("--trials", rc.trials, "number of trials");
  cert->add_option("--mode", rc.mode, "psd or spd")->check(modes);
  cert->add_option("--format", rc.format, "json (lines) or csv")->check(formats);
  cert->add_option("--tol-psd", rc.tol_psd, "PSD tolerance, scaled by n max|A|");
  cert->add_option("--tol-spd", rc.tol_spd_floor, "SPD floor, scaled by max|A|");
  cert->add_flag("--embed-counterexample", rc.embed_counterexample,
                 "plant the 2x2 counterexample of the violated clause in every trial");
  cert->add_option("--clause", rc.clause, "clause to embed");

  auto* report = app.add_subcommand("report", "strict positive definiteness condition report");
  add_common(report, rc, true);

  auto* cx = app.add_subcommand("counterexample", "2x2 singular Gram matrix for a violated clause");
  add_common(cx, rc, true);
  cx->add_option("--clause", rc.clause, "g_not_strict, h_not_strict, constant_in_x, constant_in_yz");

  auto* suite_cmd = app.add_subcommand("suite", "run the acceptance criteria");
  add_common(suite_cmd, rc, false);
  suite_cmd->add_option("--filter", rc.filter, "group name or criterion number");
  suite_cmd->add_option("--format", rc.format, "text summary or json")->check(formats);

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  rc.command = app.get_subcommands().front()->get_name();

  std::ostringstream buffer;
  int code = kExitPass;
  try {
    if (rc.command == "eval") code = cmd_eval(rc, buffer);
    else if (rc.command == "gram") code = cmd_gram(rc, buffer);
    else if (rc.command == "certify") code = cmd_certify(rc, buffer);
    else if (rc.command == "report") code = cmd_report(rc, buffer);
    else if (rc.command == "counterexample") code = cmd_counterexample(rc, buffer);
    else code = cmd_suite(rc, buffer);
  } catch (const TrialError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ParameterError& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ArgumentError& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ConstructionError& e) {
    err << "invalid model: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }

  if (rc.output_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(rc.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << rc.output_path << '\n';
      return kExitRuntimeError;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace pdk::cli
