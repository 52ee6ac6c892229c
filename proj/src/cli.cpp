#include "gospa/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gospa/documents.hpp"
#include "gospa/metrics.hpp"
#include "gospa/rfs.hpp"

namespace gospa::cli {

using nlohmann::ordered_json;

std::string format_number(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

namespace {

enum class OutputFormat { json, csv, text };

struct CommonOptions {
  std::string format = "text";
  int precision = 6;

  OutputFormat output() const {
    if (format == "json") return OutputFormat::json;
    if (format == "csv") return OutputFormat::csv;
    return OutputFormat::text;
  }
  // JSON numbers are rounded through the printed form so every format agrees.
  double rounded(double v) const { return std::stod(format_number(v, precision)); }
  std::string num(double v) const { return format_number(v, precision); }
};

struct ComputeOptions {
  std::string truth_file;
  std::string estimate_file;
  double c = 0.0;
  double alpha = 2.0;
  double p = 1.0;
  std::string metric = "gospa";
};

struct MeanOptions {
  std::string truth_file;
  std::string estimate_file;
  double c = 0.0;
  double alpha = 2.0;
  double p = 1.0;
  double p_prime = 0.0;  // 0 -> same as p
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::string metric = "gospa";
};

struct Table1Options {
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
};

std::string assignment_text(const AssignmentSet& a) {
  std::string s;
  for (const auto& [t, e] : a.pairs) {
    if (!s.empty()) s += ' ';
    s += "(" + std::to_string(t) + "," + std::to_string(e) + ")";
  }
  return s;
}

GospaParams metric_params(MetricKind kind, double c, double alpha, double p) {
  GospaParams params{c, kind == MetricKind::gospa ? alpha : 1.0, p, BaseDistance::euclidean()};
  params.validate();
  return params;
}

void cmd_compute(const ComputeOptions& opt, const CommonOptions& common, std::ostream& out) {
  const MetricKind kind = parse_metric_kind(opt.metric);
  const GospaParams params = metric_params(kind, opt.c, opt.alpha, opt.p);
  const TargetSet truth = load_point_set(opt.truth_file);
  const TargetSet estimate = load_point_set(opt.estimate_file);
  if (!truth.empty() && !estimate.empty() && truth.dimension() != estimate.dimension()) {
    throw InvalidInput("truth has dimension " + std::to_string(truth.dimension()) + " but estimate has " +
                       std::to_string(estimate.dimension()));
  }

  GospaBreakdown result;
  if (kind == MetricKind::gospa) {
    result = gospa(truth, estimate, params);
  } else {
    result.total = evaluate_metric(kind, truth, estimate, params);
  }
  const auto& dec = result.decomposition;

  switch (common.output()) {
    case OutputFormat::json: {
      ordered_json doc;
      doc["config"] = {{"metric", to_string(kind)}, {"c", params.c}, {"alpha", params.alpha},
                       {"p", params.p},             {"base", params.base.name()}};
      doc["truth_size"] = truth.size();
      doc["estimate_size"] = estimate.size();
      doc["total"] = common.rounded(result.total);
      if (dec) {
        ordered_json pairs = ordered_json::array();
        for (const auto& [t, e] : dec->assignment.pairs) pairs.push_back({t, e});
        doc["decomposition"] = {{"localization_cost_p", common.rounded(dec->localizationCostP)},
                                {"missed_count", dec->missedCount},
                                {"false_count", dec->falseCount},
                                {"missed_cost_p", common.rounded(dec->missedCostP)},
                                {"false_cost_p", common.rounded(dec->falseCostP)},
                                {"assignment", pairs}};
      }
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::csv:
      out << "metric,c,alpha,p,total,localization_cost_p,missed_count,false_count,missed_cost_p,false_cost_p,"
             "assignment\n";
      out << to_string(kind) << ',' << common.num(params.c) << ',' << common.num(params.alpha) << ','
          << common.num(params.p) << ',' << common.num(result.total);
      if (dec) {
        std::string pairs;
        for (const auto& [t, e] : dec->assignment.pairs)
          pairs += (pairs.empty() ? "" : ";") + std::to_string(t) + "-" + std::to_string(e);
        out << ',' << common.num(dec->localizationCostP) << ',' << dec->missedCount << ',' << dec->falseCount << ','
            << common.num(dec->missedCostP) << ',' << common.num(dec->falseCostP) << ',' << pairs;
      } else {
        out << ",,,,,,";
      }
      out << '\n';
      break;
    case OutputFormat::text:
      out << "metric " << to_string(kind) << "  c=" << common.num(params.c) << " alpha=" << common.num(params.alpha)
          << " p=" << common.num(params.p) << '\n';
      out << "total          " << common.num(result.total) << '\n';
      if (dec) {
        out << "localization^p " << common.num(dec->localizationCostP) << '\n';
        out << "missed         " << dec->missedCount << "  (cost^p " << common.num(dec->missedCostP) << ")\n";
        out << "false          " << dec->falseCount << "  (cost^p " << common.num(dec->falseCostP) << ")\n";
        out << "assignment     " << assignment_text(dec->assignment) << '\n';
      }
      break;
  }
}

void cmd_mean(const MeanOptions& opt, const CommonOptions& common, std::ostream& out) {
  const MetricKind kind = parse_metric_kind(opt.metric);
  const GospaParams params = metric_params(kind, opt.c, opt.alpha, opt.p);
  const EstimatorConfig cfg{opt.p_prime == 0.0 ? opt.p : opt.p_prime, opt.samples, opt.seed, opt.threads};
  cfg.validate();
  IndependentPair models{load_multi_bernoulli(opt.truth_file), load_multi_bernoulli(opt.estimate_file)};
  if (models.truth.dimension() != 0 && models.estimate.dimension() != 0 &&
      models.truth.dimension() != models.estimate.dimension()) {
    throw InvalidInput("truth and estimate models have different dimensions");
  }
  const MetricEstimate est = estimate_metric(PairSampler{std::move(models)}, params, cfg, kind);

  switch (common.output()) {
    case OutputFormat::json: {
      ordered_json doc;
      doc["config"] = {{"metric", to_string(kind)}, {"c", params.c},         {"alpha", params.alpha},
                       {"p", params.p},             {"p_prime", cfg.pPrime}, {"samples", cfg.samples},
                       {"seed", cfg.masterSeed},    {"base", params.base.name()}};
      doc["value"] = common.rounded(est.value);
      doc["standard_error"] = common.rounded(est.standardError);
      doc["samples"] = est.samples;
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::csv:
      out << "metric,c,alpha,p,p_prime,samples,seed,value,standard_error\n";
      out << to_string(kind) << ',' << common.num(params.c) << ',' << common.num(params.alpha) << ','
          << common.num(params.p) << ',' << common.num(cfg.pPrime) << ',' << cfg.samples << ',' << cfg.masterSeed
          << ',' << common.num(est.value) << ',' << common.num(est.standardError) << '\n';
      break;
    case OutputFormat::text:
      out << "metric " << to_string(kind) << "  c=" << common.num(params.c) << " alpha=" << common.num(params.alpha)
          << " p=" << common.num(params.p) << " p'=" << common.num(cfg.pPrime) << " samples=" << cfg.samples
          << " seed=" << cfg.masterSeed << '\n';
      out << "value          " << common.num(est.value) << '\n';
      out << "standard_error " << common.num(est.standardError) << '\n';
      break;
  }
}

std::string metric_title(MetricKind kind) {
  switch (kind) {
    case MetricKind::gospa:
      return "GOSPA (alpha=2)";
    case MetricKind::ospa:
      return "OSPA";
    case MetricKind::unnormalizedOspa:
      return "Unnormalized OSPA";
  }
  return "";
}

void cmd_table1(const Table1Options& opt, const CommonOptions& common, std::ostream& out) {
  if (opt.samples < 1) throw InvalidInput("table1: samples must be at least 1");
  const Table1Result table = run_table1({opt.samples, opt.seed, opt.threads});

  switch (common.output()) {
    case OutputFormat::json: {
      ordered_json doc;
      doc["config"] = {{"c", table.c},       {"alpha", 2.0},          {"base", "euclidean"},
                       {"samples", opt.samples}, {"seed", opt.seed}};
      doc["cells"] = ordered_json::array();
      for (const auto& cell : table.cells) {
        doc["cells"].push_back({{"metric", to_string(cell.metric)},
                                {"p", cell.exponent},
                                {"p_prime", cell.exponent},
                                {"n_missed", cell.nMissed},
                                {"n_false", cell.nFalse},
                                {"value", common.rounded(cell.estimate.value)},
                                {"standard_error", common.rounded(cell.estimate.standardError)}});
      }
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::csv:
      out << "metric,p_prime,p,n_false,n_missed,value,standard_error,samples\n";
      for (const auto& cell : table.cells) {
        out << to_string(cell.metric) << ',' << common.num(cell.exponent) << ',' << common.num(cell.exponent) << ','
            << cell.nFalse << ',' << cell.nMissed << ',' << common.num(cell.estimate.value) << ','
            << common.num(cell.estimate.standardError) << ',' << cell.estimate.samples << '\n';
      }
      break;
    case OutputFormat::text: {
      constexpr int kCol = 20;
      out << "c=" << common.num(table.c) << " samples=" << opt.samples << " seed=" << opt.seed
          << "  (value +/- standard error)\n";
      out << std::left << std::setw(20) << "" << std::setw(8) << "" << std::setw(3 * kCol) << "p'=p=1"
          << "p'=p=2\n";
      out << std::setw(20) << "metric" << std::setw(8) << "#false";
      for (double exponent : kTable1Exponents) {
        (void)exponent;
        for (int missed : kTable1MissedLevels) out << std::setw(kCol) << ("#missed=" + std::to_string(missed));
      }
      out << '\n';
      for (MetricKind metric : kTable1Metrics) {
        for (int n_false : kTable1FalseLevels) {
          out << std::setw(20) << (n_false == 0 ? metric_title(metric) : "") << std::setw(8) << n_false;
          for (double exponent : kTable1Exponents) {
            for (int missed : kTable1MissedLevels) {
              const auto& est = table.at(metric, exponent, missed, n_false).estimate;
              out << std::setw(kCol) << (common.num(est.value) + " +/- " + common.num(est.standardError));
            }
          }
          out << '\n';
        }
      }
      out << std::right;
      break;
    }
  }
}

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  cmd->add_option("--precision", common.precision, "Significant digits in printed numbers")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"GOSPA-family metrics between target sets and random finite sets", "gospa"};
  app.require_subcommand(1);

  CommonOptions common;

  ComputeOptions compute;
  auto* compute_cmd = app.add_subcommand("compute", "Metric between two point-set files");
  compute_cmd->add_option("truth", compute.truth_file, "Ground-truth point set (JSON or .csv)")->required();
  compute_cmd->add_option("estimate", compute.estimate_file, "Estimated point set (JSON or .csv)")->required();
  compute_cmd->add_option("--c", compute.c, "Cut-off distance")->required();
  compute_cmd->add_option("--alpha", compute.alpha, "Cardinality penalty parameter (gospa only)")
      ->capture_default_str();
  compute_cmd->add_option("--p", compute.p, "Exponent")->capture_default_str();
  compute_cmd->add_option("--metric", compute.metric, "gospa, ospa or uospa")
      ->check(CLI::IsMember({"gospa", "ospa", "uospa"}))
      ->capture_default_str();
  add_common(compute_cmd, common);

  MeanOptions mean;
  auto* mean_cmd = app.add_subcommand("mean", "Monte Carlo metric between two multi-Bernoulli model files");
  mean_cmd->add_option("truth", mean.truth_file, "Ground-truth model document")->required();
  mean_cmd->add_option("estimate", mean.estimate_file, "Estimate model document")->required();
  mean_cmd->add_option("--c", mean.c, "Cut-off distance")->required();
  mean_cmd->add_option("--alpha", mean.alpha, "Cardinality penalty parameter (gospa only)")->capture_default_str();
  mean_cmd->add_option("--p", mean.p, "Exponent of the set metric")->capture_default_str();
  mean_cmd->add_option("--p-prime", mean.p_prime, "Outer exponent (default: p)");
  mean_cmd->add_option("--samples", mean.samples, "Monte Carlo samples")->capture_default_str();
  mean_cmd->add_option("--seed", mean.seed, "Master seed")->capture_default_str();
  mean_cmd->add_option("--threads", mean.threads, "Worker threads (0 = all cores)")->capture_default_str();
  mean_cmd->add_option("--metric", mean.metric, "gospa, ospa or uospa")
      ->check(CLI::IsMember({"gospa", "ospa", "uospa"}))
      ->capture_default_str();
  add_common(mean_cmd, common);

  Table1Options table1;
  auto* table1_cmd = app.add_subcommand("table1", "Missed/false target scenario grid with c=8");
  table1_cmd->add_option("--samples", table1.samples, "Monte Carlo samples per cell")->capture_default_str();
  table1_cmd->add_option("--seed", table1.seed, "Master seed")->capture_default_str();
  table1_cmd->add_option("--threads", table1.threads, "Worker threads (0 = all cores)")->capture_default_str();
  add_common(table1_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compute_cmd->parsed()) {
      cmd_compute(compute, common, out);
    } else if (mean_cmd->parsed()) {
      cmd_mean(mean, common, out);
    } else if (table1_cmd->parsed()) {
      cmd_table1(table1, common, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace gospa::cli
