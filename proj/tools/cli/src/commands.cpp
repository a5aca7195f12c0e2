// Copyright 2026 The qecdecay Authors
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

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qecdecay/analytics.hpp"
#include "qecdecay/errors.hpp"
#include "qecdecay/protocol.hpp"
#include "qecdecay/version.hpp"
#include "qecdecay_cli/cli.hpp"

namespace qecd::cli {
namespace {

using nlohmann::json;

struct ModelOptions {
  std::string model;
  double tau = 0.0;
  std::string cov_file;
};

struct ResolvedModel {
  CovarianceMatrix cov;
  std::optional<CovarianceModel> named;
  std::optional<double> tau;
  std::string label;
};

void add_model_options(CLI::App* cmd, ModelOptions& opts) {
  cmd->add_option("--model", opts.model, "correlated | uncorrelated | custom")
      ->check(CLI::IsMember({"correlated", "uncorrelated", "custom"}));
  cmd->add_option("--tau", opts.tau, "decay time constant tau (s) for the named models");
  cmd->add_option("--cov", opts.cov_file, "covariance file (3 rows of 3 reals) for the custom model");
}

ResolvedModel resolve_model(const ModelOptions& opts) {
  if (!opts.cov_file.empty()) {
    if (!opts.model.empty() && opts.model != "custom") {
      throw Error(ErrorCode::config, "--cov only applies to --model custom");
    }
    return {CovarianceMatrix(read_covariance_file(opts.cov_file)), std::nullopt, std::nullopt, "custom"};
  }
  if (opts.model == "custom") {
    throw Error(ErrorCode::config, "--model custom needs --cov FILE");
  }
  const std::string name = opts.model.empty() ? "correlated" : opts.model;
  const CovarianceModel model = name == "uncorrelated" ? CovarianceModel::uncorrelated
                                                       : CovarianceModel::totally_correlated;
  return {effective_covariance(model, opts.tau), model, opts.tau, name};
}

json covariance_json(const CovarianceMatrix& cov) {
  json rows = json::array();
  for (int j = 0; j < 3; ++j) rows.push_back({cov(j, 0), cov(j, 1), cov(j, 2)});
  return rows;
}

json model_json(const ResolvedModel& m) {
  json j{{"model", m.label}, {"covariance", covariance_json(m.cov)}};
  if (m.tau) j["tau"] = *m.tau;
  return j;
}

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') {
    throw Error(ErrorCode::config, std::string(kSeedEnv) + " is not an unsigned integer: " + env);
  }
  return v;
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  p += ".manifest.json";
  return p;
}

void write_manifest(const std::string& command, const std::vector<std::string>& args,
                    const std::vector<std::string>& replay_args, json parameters,
                    const std::vector<std::string>& outputs, std::optional<std::uint64_t> seed,
                    std::optional<std::size_t> samples) {
  json m{{"command", command},
         {"argv", args},
         {"replay_argv", replay_args},
         {"parameters", std::move(parameters)},
         {"seed", seed ? json(*seed) : json(nullptr)},
         {"samples", samples ? json(*samples) : json(nullptr)},
         {"version", kVersion},
         {"git", kGitDescribe},
         {"outputs", outputs}};
  write_file_atomically(manifest_path(outputs.front()), m.dump(2) + "\n");
}

struct DecayOptions {
  ModelOptions model;
  std::size_t points = 32;
  std::optional<double> tmax;
  std::string correction = "on";
  std::size_t mc = 0;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string out;
};

int cmd_decay(const DecayOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  const ResolvedModel m = resolve_model(o.model);
  const bool correction = o.correction == "on";
  double tmax = 0.0;
  if (o.tmax) {
    tmax = *o.tmax;
  } else {
    // three time constants of the fastest single-spin decay
    const double fastest = m.cov.matrix().diagonal().maxCoeff();
    if (!(fastest > 0.0)) {
      throw Error(ErrorCode::config, "--tmax is required when the covariance has a zero diagonal");
    }
    tmax = 6.0 / fastest;
  }
  const std::vector<double> times = uniform_grid(tmax, o.points);
  const std::uint64_t seed = o.seed ? *o.seed : default_seed();

  std::ostringstream csv;
  csv << "t,theta_analytic" << (o.mc > 0 ? ",theta_mc,mc_stderr" : "") << "\n";
  PipelineConfig cfg{.data = {0.0, 0.0, 1.0}, .channel = NoiseChannel{AnalyticAverage{}, Axis::x, m.cov},
                     .correction = correction};
  for (double t : times) {
    const double analytic = correction ? theta_general(m.cov, t) : uncorrected_decay(m.cov, t);
    csv << format_real(t) << "," << format_real(analytic);
    if (o.mc > 0) {
      const McPipelineResult r = run_pipeline_mc(cfg, t, o.mc, seed, o.threads);
      csv << "," << format_real(*r.result.theta) << "," << format_real(*r.theta_stderr);
    }
    csv << "\n";
  }
  write_file_atomically(o.out, csv.str());

  json params = model_json(m);
  params["points"] = o.points;
  params["tmax"] = tmax;
  params["correction"] = correction;
  params["mc_samples"] = o.mc;
  std::vector<std::string> replay = args;
  if (o.mc > 0 && !o.seed) {
    replay.push_back("--seed");
    replay.push_back(std::to_string(seed));
  }
  write_manifest("decay", args, replay, params, {o.out}, o.mc > 0 ? std::optional(seed) : std::nullopt,
                 o.mc > 0 ? std::optional(o.mc) : std::nullopt);
  out << "wrote " << times.size() << " rows to " << o.out << "\n";
  return kExitOk;
}

struct FitOptions {
  std::string in;
  std::string column;
  std::string model = "correlated";
  std::string corrected;
  std::string corrected_column;
  std::string out;
};

DecayCurve load_curve(const std::string& path, const std::string& column, Provenance provenance) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 2) {
    throw Error(ErrorCode::config, path + ": needs a time column and at least one value column");
  }
  const std::vector<double>& values = column.empty() ? table.columns[1] : table.column(column);
  return DecayCurve(table.columns[0], values, provenance);
}

int cmd_fit(const FitOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  const DecayCurve uncorrected = load_curve(o.in, o.column, Provenance::measured);
  std::optional<DecayCurve> corrected;
  if (!o.corrected.empty()) corrected = load_curve(o.corrected, o.corrected_column, Provenance::measured);
  const CovarianceModel model =
      o.model == "uncorrelated" ? CovarianceModel::uncorrelated : CovarianceModel::totally_correlated;

  const FitResult fit = fit_exponential_rate(uncorrected);
  const DecayCurve predicted = predict_corrected_curve(fit.rate, model, uncorrected.times());
  std::optional<DecayCurve> scaled;
  double prediction_corr = 0.0;
  if (corrected) {
    scaled = scale_to_rms(*corrected, predicted);
    prediction_corr = correlation_coefficient(scaled->values(), predicted.values());
  }

  std::ostringstream csv;
  csv << "t,predicted" << (scaled ? ",corrected_scaled" : "") << "\n";
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    csv << format_real(predicted.times()[i]) << "," << format_real(predicted.values()[i]);
    if (scaled) csv << "," << format_real(scaled->values()[i]);
    csv << "\n";
  }
  write_file_atomically(o.out, csv.str());

  json params{{"in", o.in}, {"model", o.model}, {"rate", fit.rate}, {"intercept", fit.intercept},
              {"log_fit_correlation", fit.correlation_coefficient}};
  if (corrected) {
    params["corrected"] = o.corrected;
    params["prediction_correlation"] = prediction_corr;
  }
  write_manifest("fit", args, args, params, {o.out}, std::nullopt, std::nullopt);

  out << "rate = " << format_real(fit.rate) << "\n";
  out << "tau = " << format_real(1.0 / fit.rate) << "\n";
  out << "log_fit_correlation = " << format_real(fit.correlation_coefficient) << "\n";
  if (corrected) out << "prediction_correlation = " << format_real(prediction_corr) << "\n";
  out << "wrote " << predicted.size() << " rows to " << o.out << "\n";
  return kExitOk;
}

struct NogoOptions {
  ModelOptions model;
  double step = 0.05;
  std::string out;
};

std::string mix_label(const AncillaMixture& m) {
  std::ostringstream os;
  os << "(" << m.mu_pp << ", " << m.mu_pm << ", " << m.mu_mp << ", " << m.mu_mm << ")";
  return os.str();
}

int cmd_nogo(const NogoOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  const ResolvedModel m = resolve_model(o.model);
  const NogoCertificate cert = mixed_ancilla_nogo_search(m.cov, o.step);

  out << "grid step " << o.step << ", " << cert.points_examined << " points, zero tolerance "
      << cert.zero_tolerance << "\n";
  out << "vertices (mu++, mu+-, mu-+, mu--):\n";
  for (const SimplexPoint& p : cert.vertices) {
    out << "  " << mix_label(p.mix) << "  dTheta'(0) = " << format_real(p.derivative)
        << "  Theta'(0) = " << format_real(p.theta_at_zero) << "\n";
  }
  out << "zeros of dTheta'(0): " << cert.zeros.size() << "\n";
  if (cert.ground_is_unique_zero()) {
    out << "unique zero at (1, 0, 0, 0)\n";
  } else {
    for (const SimplexPoint& p : cert.zeros) {
      if (p.mix.mu_pp != 1.0) {
        out << "(1, 0, 0, 0) is not the unique zero; e.g. " << mix_label(p.mix) << "\n";
        break;
      }
    }
  }
  out << "zeros with Theta'(0) = 1: " << cert.protected_points.size()
      << (cert.ground_is_unique_protected() ? " (only (1, 0, 0, 0))" : "") << "\n";
  out << "min |dTheta'(0)| off (1, 0, 0, 0): " << format_real(cert.min_margin_off_ground) << " at "
      << mix_label(cert.min_margin_point) << "\n";

  if (!o.out.empty()) {
    std::ostringstream csv;
    csv << "mu_pp,mu_pm,mu_mp,mu_mm,derivative,theta_at_zero\n";
    for (const SimplexPoint& p : cert.zeros) {
      csv << format_real(p.mix.mu_pp) << "," << format_real(p.mix.mu_pm) << "," << format_real(p.mix.mu_mp) << ","
          << format_real(p.mix.mu_mm) << "," << format_real(p.derivative) << "," << format_real(p.theta_at_zero)
          << "\n";
    }
    write_file_atomically(o.out, csv.str());
    json params = model_json(m);
    params["step"] = o.step;
    params["zeros"] = cert.zeros.size();
    write_manifest("nogo", args, args, params, {o.out}, std::nullopt, std::nullopt);
  }
  return kExitOk;
}

int cmd_derivatives(const ModelOptions& o, std::ostream& out) {
  const ResolvedModel m = resolve_model(o);
  const ThetaDerivatives d = theta_derivatives_at_zero(m.cov);
  out << "first = " << format_real(d.first) << "\n";
  out << "second = " << format_real(d.second) << "\n";
  out << "third = " << format_real(d.third) << "\n";
  out << "third_asymmetric = " << format_real(third_derivative_asymmetric(m.cov)) << "\n";
  if (m.named) {
    out << "inflection = " << format_real(inflection_point(*m.named, *m.tau)) << "\n";
  }
  return kExitOk;
}

int cmd_replay(const std::string& manifest, std::ostream& out, std::ostream& err) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open " + manifest);
  json m;
  try {
    in >> m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::config, manifest + ": " + e.what());
  }
  if (!m.contains("replay_argv") || !m["replay_argv"].is_array()) {
    throw Error(ErrorCode::config, manifest + ": no replay_argv array");
  }
  const auto argv = m["replay_argv"].get<std::vector<std::string>>();
  if (argv.empty() || argv.front() == "replay") {
    throw Error(ErrorCode::config, manifest + ": replay_argv does not name a replayable command");
  }
  if (m.value("version", "") != kVersion) {
    err << "warning: manifest written by version " << m.value("version", "?") << ", running " << kVersion << "\n";
  }
  return run(argv, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Three-spin error-correction decay simulator", "qecdecay"};
  app.set_version_flag("--version", std::string(kVersion) + " (" + kGitDescribe + ")");
  app.require_subcommand(1);

  DecayOptions decay;
  auto* decay_cmd = app.add_subcommand("decay", "tabulate the decay factor on a time grid");
  add_model_options(decay_cmd, decay.model);
  decay_cmd->add_option("--points", decay.points, "grid points including t = 0")->check(CLI::PositiveNumber);
  decay_cmd->add_option("--tmax", decay.tmax, "last grid time (s); default 3 tau");
  decay_cmd->add_option("--correction", decay.correction, "on | off")->check(CLI::IsMember({"on", "off"}));
  decay_cmd->add_option("--mc", decay.mc, "Monte Carlo samples per point (0 = analytic only)");
  decay_cmd->add_option("--seed", decay.seed, std::string("Monte Carlo seed; default $") + kSeedEnv + " or 0");
  decay_cmd->add_option("--threads", decay.threads, "worker threads (0 = all cores)");
  decay_cmd->add_option("--out", decay.out, "output CSV")->required();

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit an uncorrected decay and predict the corrected curve");
  fit_cmd->add_option("--in", fit.in, "uncorrected decay CSV (first column t)")->required();
  fit_cmd->add_option("--column", fit.column, "value column; default the second");
  fit_cmd->add_option("--model", fit.model, "correlated | uncorrelated")
      ->check(CLI::IsMember({"correlated", "uncorrelated"}));
  fit_cmd->add_option("--corrected", fit.corrected, "measured corrected decay CSV on the same grid");
  fit_cmd->add_option("--corrected-column", fit.corrected_column, "value column; default the second");
  fit_cmd->add_option("--out", fit.out, "output CSV")->required();

  NogoOptions nogo;
  auto* nogo_cmd = app.add_subcommand("nogo", "search the diagonal ancilla simplex for first-order protection");
  add_model_options(nogo_cmd, nogo.model);
  nogo_cmd->add_option("--step", nogo.step, "grid step; 1/step must be an integer");
  nogo_cmd->add_option("--out", nogo.out, "optional CSV of the zero-derivative grid points");

  ModelOptions deriv;
  auto* deriv_cmd = app.add_subcommand("derivatives", "print derivatives of the decay factor at t = 0");
  add_model_options(deriv_cmd, deriv);

  std::string manifest;
  auto* replay_cmd = app.add_subcommand("replay", "re-run the command recorded in a run manifest");
  replay_cmd->add_option("manifest", manifest, "manifest JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (decay_cmd->parsed()) return cmd_decay(decay, args, out);
    if (fit_cmd->parsed()) return cmd_fit(fit, args, out);
    if (nogo_cmd->parsed()) return cmd_nogo(nogo, args, out);
    if (deriv_cmd->parsed()) return cmd_derivatives(deriv, out);
    if (replay_cmd->parsed()) return cmd_replay(manifest, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qecd::cli
