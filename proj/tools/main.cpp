#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "report.hpp"
#include "wbell/experiment.hpp"
#include "wbell/inequalities.hpp"
#include "wbell/optimize.hpp"
#include "wbell/scenario.hpp"
#include "wbell/selection.hpp"

namespace {

using wbell::report::format_double;
using wbell::report::Json;
using wbell::report::RunReport;
using wbell::report::sign_linear_json;

namespace experiment = wbell::experiment;
namespace inequalities = wbell::inequalities;
namespace optimize = wbell::optimize;
namespace scenario = wbell::scenario;
namespace selection = wbell::selection;

Json distribution_json(const scenario::OutcomeDistribution& dist) {
  Json entries = Json::array();
  for (std::size_t mask = 0; mask < dist.size(); ++mask) {
    Json entry = Json::object();
    entry["outcome"] = dist.outcome_from_mask(mask);
    entry["p"] = dist.probability_by_mask(mask);
    entries.push_back(std::move(entry));
  }
  return entries;
}

Json counts_json(const experiment::CountsTable& table) {
  Json entries = Json::array();
  for (std::size_t mask = 0; mask < table.counts.size(); ++mask) {
    Json entry = Json::object();
    entry["outcome"] = scenario::outcome_from_mask(mask, table.setup.size());
    entry["n"] = table.counts[mask];
    entries.push_back(std::move(entry));
  }
  return entries;
}

Json estimate_json(const experiment::ChEstimate& estimate) {
  Json j = Json::object();
  j["value"] = estimate.value;
  j["sigma"] = estimate.sigma;
  j["ci95"] = Json::array({estimate.ci95_low, estimate.ci95_high});
  return j;
}

void emit(const RunReport& report, const std::string& format) {
  std::cout << (format == "json" ? wbell::report::to_json(report)
                                 : wbell::report::to_text(report));
}

scenario::QuantumState build_state(const std::string& name, double noise) {
  const scenario::QuantumState base =
      name == "ghz" ? scenario::make_ghz_state() : scenario::make_w_state();
  return noise > 0.0 ? scenario::white_noise(base, noise) : base;
}

void cmd_exact(const std::string& state_name, double noise,
               const std::string& format) {
  const scenario::QuantumState state = build_state(state_name, noise);
  const auto setups = scenario::experiment_setups();
  const auto names = scenario::experiment_setup_names();

  RunReport report;
  report.command = "exact";
  report.params["state"] = state_name;
  report.params["noise"] = noise;
  report.params["output"] = format;

  Json distributions = Json::object();
  std::vector<scenario::OutcomeDistribution> dists;
  for (std::size_t k = 0; k < setups.size(); ++k) {
    dists.push_back(scenario::born_distribution(state, setups[k]));
    distributions[names[k]] = distribution_json(dists.back());
  }
  report.results["distributions"] = std::move(distributions);

  try {
    const selection::CounterfactualCorrelations cf =
        selection::counterfactual_correlations(state);
    const selection::SignLinear chsh = inequalities::chsh_value(
        cf.c_zz, cf.c_zx, cf.c_xz, cf.c_xx,
        inequalities::ChshSpec::symbolic_xk());
    const inequalities::InequalityReport chsh_rep =
        inequalities::chsh_report(chsh);
    Json counterfactual = Json::object();
    counterfactual["c_zz"] = sign_linear_json(cf.c_zz);
    counterfactual["c_zx"] = sign_linear_json(cf.c_zx);
    counterfactual["c_xz"] = sign_linear_json(cf.c_xz);
    counterfactual["c_xx"] = sign_linear_json(cf.c_xx);
    counterfactual["chsh_value"] = sign_linear_json(chsh);
    counterfactual["chsh_lhv_bound"] = inequalities::kChshLhvBound;
    counterfactual["chsh_cirelson_bound"] = inequalities::kCirelsonBound;
    counterfactual["violates_lhv"] = chsh_rep.violated_lhv;
    counterfactual["violates_cirelson"] = chsh_rep.violated_cirelson;
    report.results["counterfactual"] = std::move(counterfactual);
  } catch (const std::invalid_argument&) {
    // Not the exact W state; the counterfactual chain does not apply.
    report.results["counterfactual"] = nullptr;
  }

  const double p_zz = selection::pair_prob_zz(dists[0]);
  const double mid = selection::middle_upper_bound(dists[1], dists[2], dists[3]);
  const double p_xx = selection::pair_prob_xx_same(dists[4]);
  const double ch_lower = p_zz - mid - p_xx;
  Json ch = Json::object();
  ch["p_zz"] = p_zz;
  ch["middle_upper_bound"] = mid;
  ch["p_xx_same"] = p_xx;
  ch["ch_value"] = inequalities::ch_value(p_zz, mid, mid, p_xx);
  ch["ch_lower"] = ch_lower;
  ch["ch_lhv_bound"] = 0.0;
  ch["cirelson_ch_bound"] =
      inequalities::map_chsh_bound_to_ch(inequalities::kCirelsonBound);
  ch["violates_lhv"] = inequalities::ch_report(ch_lower).violated_lhv;
  ch["violates_cirelson"] = inequalities::ch_report(ch_lower).violated_cirelson;
  report.results["ch"] = std::move(ch);

  const selection::CertaintyReport certainty =
      selection::epr_certainty_checks(state);
  Json certainty_json = Json::object();
  certainty_json["z_determined_by_other_zs"] = certainty.z_determined_by_other_zs;
  certainty_json["x_pair_match_given_z_minus"] =
      certainty.x_pair_match_given_z_minus;
  certainty_json["other_zs_minus_given_z_plus"] =
      certainty.other_zs_minus_given_z_plus;
  report.results["certainty"] = std::move(certainty_json);

  emit(report, format);
}

void cmd_lhv(const std::string& scenario_name, const std::string& format) {
  RunReport report;
  report.command = "lhv";
  report.params["scenario"] = scenario_name;
  report.params["output"] = format;

  if (scenario_name == "chsh") {
    const inequalities::LhvChshResult result = inequalities::lhv_enumerate_chsh();
    report.results["max_abs"] = result.max_abs;
    Json per = Json::array();
    for (const auto& entry : result.per_signs) {
      Json e = Json::object();
      e["m"] = entry.m;
      e["n"] = entry.n;
      e["max_abs"] = entry.max_abs;
      e["attain_count"] = entry.attain_count;
      per.push_back(std::move(e));
    }
    report.results["per_signs"] = std::move(per);
  } else if (scenario_name == "ch") {
    const inequalities::LhvChResult result = inequalities::lhv_enumerate_ch();
    report.results["min"] = result.min();
    report.results["max"] = result.max();
    report.results["attain_min_count"] = result.attain_min_count;
    report.results["attain_max_count"] = result.attain_max_count;
  } else {  // w-selection
    const inequalities::LhvWSelectionResult result =
        inequalities::lhv_enumerate_w_selection();
    report.results["max_abs"] = result.max_abs;
    report.results["case_count"] = result.cases.size();
    Json cases = Json::array();
    for (const auto& entry : result.cases) {
      Json e = Json::object();
      e["z"] = entry.z;
      e["x"] = entry.x;
      e["value"] = entry.value;
      cases.push_back(std::move(e));
    }
    report.results["cases"] = std::move(cases);
    report.results["quantum_counterfactual_value"] = 3.0;
  }
  emit(report, format);
}

void cmd_tsirelson(std::uint64_t samples, std::uint64_t seed,
                   const std::string& format) {
  const inequalities::TsirelsonResult result =
      inequalities::tsirelson_max(samples, seed);
  RunReport report;
  report.command = "tsirelson";
  report.params["samples"] = samples;
  report.params["seed"] = seed;
  report.params["output"] = format;
  report.seed = seed;
  report.results["sampled_max"] = result.sampled_max;
  report.results["refined_max"] = result.refined_max;
  report.results["cirelson_bound"] = inequalities::kCirelsonBound;
  report.results["within_bound"] =
      result.sampled_max <= inequalities::kCirelsonBound + wbell::tol::kCirelsonSlack &&
      result.refined_max <= inequalities::kCirelsonBound + wbell::tol::kCirelsonSlack;
  report.results["canonical_spectrum"] = inequalities::canonical_bell_spectrum();
  emit(report, format);
}

void cmd_optimize(const std::string& model_name, int grid, double tol,
                  std::uint64_t seed, const std::string& format) {
  const optimize::EvaluationModel model =
      model_name == "cond" ? optimize::EvaluationModel::CondProduct
                           : optimize::EvaluationModel::SymOperator;
  const optimize::ProbeReport probe =
      optimize::probe_paper_angles(model, grid, tol, seed);

  RunReport report;
  report.command = "optimize";
  report.params["model"] = model_name;
  report.params["grid"] = grid;
  report.params["tol"] = tol;
  report.params["seed"] = seed;
  report.params["output"] = format;
  report.seed = seed;
  report.results["canonical_value"] = probe.canonical_value;
  report.results["reference_angles"] =
      Json::array({optimize::kReferenceAlpha, optimize::kReferenceBeta});
  report.results["value_at_reference"] = probe.value_at_reference;
  report.results["box_maximum"] = probe.box_maximum;
  report.results["box_argmax"] = probe.box_argmax;
  report.results["target"] = probe.target;
  report.results["gap_at_reference"] = probe.gap_at_reference;
  report.results["gap_box_maximum"] = probe.gap_box_maximum;
  emit(report, format);
}

void cmd_simulate(std::uint64_t shots, std::uint64_t seed, double noise,
                  const std::string& format) {
  const scenario::QuantumState state = build_state("w", noise);
  const auto tables = experiment::simulate_experiment(state, shots, seed);
  const experiment::ChEstimate estimate = experiment::estimate_ch(
      tables[0], tables[1], tables[2], tables[3], tables[4]);

  RunReport report;
  report.command = "simulate";
  report.params["shots"] = shots;
  report.params["seed"] = seed;
  report.params["noise"] = noise;
  report.params["output"] = format;
  report.seed = seed;
  const auto names = scenario::experiment_setup_names();
  Json counts = Json::object();
  for (std::size_t k = 0; k < tables.size(); ++k)
    counts[names[k]] = counts_json(tables[k]);
  report.results["counts"] = std::move(counts);
  report.results["estimate"] = estimate_json(estimate);
  report.results["ch_lower_exact"] = selection::ch_lower_bound(state);
  report.results["cirelson_ch_bound"] =
      inequalities::map_chsh_bound_to_ch(inequalities::kCirelsonBound);
  emit(report, format);
}

void cmd_sweep(double from, double to, int steps, const std::string& mode,
               std::uint64_t shots, std::uint64_t seed,
               const std::string& format) {
  const experiment::SweepMode sweep_mode =
      mode == "sampled" ? experiment::SweepMode::with_sampling(shots, seed)
                        : experiment::SweepMode::exact();
  const std::vector<experiment::SweepPoint> points =
      experiment::noise_sweep(from, to, steps, sweep_mode);

  if (format == "csv") {
    std::string out = "p,ch_lower_exact,estimate,sigma\n";
    for (const auto& point : points) {
      out += format_double(point.p);
      out += ',';
      out += format_double(point.ch_lower_exact);
      out += ',';
      if (point.estimate) {
        out += format_double(point.estimate->value);
        out += ',';
        out += format_double(point.estimate->sigma);
      } else {
        out += ',';
      }
      out += '\n';
    }
    std::cout << out;
    return;
  }

  RunReport report;
  report.command = "sweep";
  report.params["from"] = from;
  report.params["to"] = to;
  report.params["steps"] = steps;
  report.params["mode"] = mode;
  report.params["shots"] = shots;
  report.params["seed"] = seed;
  report.params["output"] = format;
  if (mode == "sampled") report.seed = seed;
  Json rows = Json::array();
  for (const auto& point : points) {
    Json row = Json::object();
    row["p"] = point.p;
    row["ch_lower_exact"] = point.ch_lower_exact;
    if (point.estimate) {
      row["estimate"] = point.estimate->value;
      row["sigma"] = point.estimate->sigma;
    } else {
      row["estimate"] = nullptr;
      row["sigma"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  report.results["points"] = std::move(rows);
  emit(report, format);
}

void cmd_threshold(double target, const std::string& format) {
  const double p = experiment::noise_threshold(target);
  RunReport report;
  report.command = "threshold";
  report.params["target"] = target;
  report.params["output"] = format;
  report.results["p"] = p;
  report.results["ch_lower_at_p"] = selection::ch_lower_bound(
      scenario::white_noise(scenario::make_w_state(), p));
  emit(report, format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact values, local-hidden-variable bounds and Monte Carlo "
               "statistics for the two-qubit Bell test on post-selected "
               "three-qubit W states"};
  app.require_subcommand(1);

  std::string state_name = "w";
  std::string scenario_name;
  std::string model_name = "sym";
  std::string mode = "exact";
  std::string format = "json";
  double noise = 0.0;
  double from = 0.0;
  double to = 1.0;
  double tol = 1e-6;
  double target = 0.0;
  int steps = 11;
  int grid = 200;
  std::uint64_t samples = 100000;
  std::uint64_t shots = 100000;
  std::uint64_t seed = 0;

  const auto add_format = [&](CLI::App* cmd, bool with_csv) {
    cmd->add_option("--output", format, "Report format")
        ->check(CLI::IsMember(with_csv
                                  ? std::vector<std::string>{"json", "csv", "text"}
                                  : std::vector<std::string>{"json", "text"}))
        ->capture_default_str();
  };

  CLI::App* exact = app.add_subcommand(
      "exact", "Exact distributions, correlations and CH statistic");
  exact->add_option("--state", state_name, "Prepared state")
      ->check(CLI::IsMember({"w", "ghz"}))
      ->capture_default_str();
  exact->add_option("--noise", noise, "White-noise fraction p")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  add_format(exact, false);

  CLI::App* lhv = app.add_subcommand(
      "lhv", "Exact enumeration over deterministic local strategies");
  lhv->add_option("--scenario", scenario_name, "Which inequality to enumerate")
      ->check(CLI::IsMember({"chsh", "ch", "w-selection"}))
      ->required();
  add_format(lhv, false);

  CLI::App* tsirelson = app.add_subcommand(
      "tsirelson", "Sampled and refined verification of the 2*sqrt(2) ceiling");
  tsirelson->add_option("--samples", samples, "Random draws")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40))
      ->capture_default_str();
  tsirelson->add_option("--seed", seed, "RNG seed")->capture_default_str();
  add_format(tsirelson, false);

  CLI::App* optimize_cmd = app.add_subcommand(
      "optimize", "Maximize the two-angle W functional under a chosen model");
  optimize_cmd->add_option("--model", model_name, "Evaluation model")
      ->check(CLI::IsMember({"sym", "cond"}))
      ->capture_default_str();
  optimize_cmd->add_option("--grid", grid, "Grid points per axis")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  optimize_cmd->add_option("--tol", tol, "Refinement tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  optimize_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  add_format(optimize_cmd, false);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo run of the five-setup experiment");
  simulate->add_option("--shots", shots, "Shots per setup")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40))
      ->capture_default_str();
  simulate->add_option("--seed", seed, "RNG seed")->capture_default_str();
  simulate->add_option("--noise", noise, "White-noise fraction p")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  add_format(simulate, false);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "CH statistic across a white-noise grid");
  sweep->add_option("--from", from, "First noise fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sweep->add_option("--to", to, "Last noise fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sweep->add_option("--steps", steps, "Grid points")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  sweep->add_option("--mode", mode, "exact or sampled")
      ->check(CLI::IsMember({"exact", "sampled"}))
      ->capture_default_str();
  sweep->add_option("--shots", shots, "Shots per setup (sampled mode)")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40))
      ->capture_default_str();
  sweep->add_option("--seed", seed, "Base RNG seed (sampled mode)")
      ->capture_default_str();
  add_format(sweep, true);

  CLI::App* threshold = app.add_subcommand(
      "threshold", "Noise fraction at which the exact CH statistic hits a target");
  threshold->add_option("--target", target, "CH value to solve for")->required();
  add_format(threshold, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(exact)) {
      cmd_exact(state_name, noise, format);
    } else if (app.got_subcommand(lhv)) {
      cmd_lhv(scenario_name, format);
    } else if (app.got_subcommand(tsirelson)) {
      cmd_tsirelson(samples, seed, format);
    } else if (app.got_subcommand(optimize_cmd)) {
      cmd_optimize(model_name, grid, tol, seed, format);
    } else if (app.got_subcommand(simulate)) {
      cmd_simulate(shots, seed, noise, format);
    } else if (app.got_subcommand(sweep)) {
      cmd_sweep(from, to, steps, mode, shots, seed, format);
    } else if (app.got_subcommand(threshold)) {
      cmd_threshold(target, format);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
