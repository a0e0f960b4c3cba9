// Command-line surface for the associated-sequence U-statistic toolkit:
// sample generation, Gini mean difference, block variance estimation,
// grid variation, lagged joint df estimation, and the replication tables.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "austat/generators.hpp"
#include "austat/io.hpp"
#include "austat/jointdf.hpp"
#include "austat/kernels.hpp"
#include "austat/montecarlo.hpp"
#include "austat/ustat.hpp"
#include "austat/variance_est.hpp"
#include "austat/variation.hpp"

namespace {

using austat::Index;
using nlohmann::json;

struct SchemeOpts {
  std::string label;
  std::string family;
  int m = 0;

  austat::GeneratorScheme resolve() const {
    if (!label.empty()) {
      austat::GeneratorScheme scheme = austat::scheme_from_label(label);
      if (m > 0) scheme.m = m;  // explicit --m overrides the label's window
      return scheme;
    }
    austat::GeneratorScheme scheme;
    if (family == "expmin") {
      scheme.family = austat::Family::ExpMin;
    } else if (family == "normalsum") {
      scheme.family = austat::Family::NormalSum;
    } else {
      throw CLI::ValidationError("--family must be expmin or normalsum");
    }
    scheme.m = m > 0 ? m : 1;
    return scheme;
  }
};

void add_scheme_options(CLI::App* cmd, SchemeOpts& opts, bool required) {
  auto* label = cmd->add_option("--scheme", opts.label, "Scheme label S1..S6");
  auto* family = cmd->add_option("--family", opts.family, "expmin | normalsum");
  cmd->add_option("--m", opts.m, "Window length (with --family, or to override a label)");
  if (required) {
    label->excludes(family);
    // one of the two must be present; validated in resolve()
  }
}

class OutputTarget {
public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

austat::ArrXd read_values_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return austat::read_values_csv(in);
}

austat::BlockRange parse_block_range(const std::string& text) {
  if (text == "lemma") return austat::BlockRange::Lemma;
  if (text == "simulation") return austat::BlockRange::Simulation;
  throw CLI::ValidationError("--block-range must be lemma or simulation");
}

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(static_cast<Index>(std::stoll(item)));
  }
  if (out.empty()) throw CLI::ValidationError("--n-list must name at least one n");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"U-statistics for stationary associated sequences"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "Generate a sample");
  SchemeOpts gen_scheme;
  add_scheme_options(gen, gen_scheme, true);
  Index gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_format = "csv";
  std::string gen_output = "-";
  gen->add_option("--n", gen_n, "Sample length")->required();
  gen->add_option("--seed", gen_seed, "Stream seed")->required();
  gen->add_option("--format", gen_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  gen->add_option("--output,-o", gen_output, "Output path (default stdout)");

  // ---- gini ----
  auto* gini = app.add_subcommand("gini", "Gini mean difference of a sample");
  SchemeOpts gini_scheme;
  add_scheme_options(gini, gini_scheme, false);
  std::string gini_input;
  Index gini_n = 0;
  std::uint64_t gini_seed = 0;
  bool gini_naive = false;
  std::string gini_output = "-";
  gini->add_option("--input,-i", gini_input, "Sample CSV (one value per line)");
  gini->add_option("--n", gini_n, "Sample length (with --scheme/--family)");
  gini->add_option("--seed", gini_seed, "Stream seed (with --scheme/--family)");
  gini->add_flag("--naive", gini_naive, "Use the O(n^2) pairwise sum");
  gini->add_option("--output,-o", gini_output, "Output path (default stdout)");

  // ---- estimate-sigma ----
  auto* esig = app.add_subcommand("estimate-sigma", "Block estimate of sigma_U");
  SchemeOpts esig_scheme;
  add_scheme_options(esig, esig_scheme, false);
  std::string esig_input;
  Index esig_n = 0;
  std::uint64_t esig_seed = 0;
  Index esig_ell = 0;
  double esig_exponent = 0.6;
  std::string esig_range = "lemma";
  std::string esig_output = "-";
  esig->add_option("--input,-i", esig_input, "Sample CSV");
  esig->add_option("--n", esig_n, "Sample length (with --scheme/--family)");
  esig->add_option("--seed", esig_seed, "Stream seed (with --scheme/--family)");
  esig->add_option("--ell", esig_ell, "Block length (default floor(n^exponent))");
  esig->add_option("--exponent", esig_exponent, "Block length exponent (default 3/5)");
  esig->add_option("--block-range", esig_range, "lemma | simulation");
  esig->add_option("--output,-o", esig_output, "Output path (default stdout)");

  // ---- variation ----
  auto* var = app.add_subcommand("variation", "Vitali / Hardy-Krause variation of a grid CSV");
  std::string var_input;
  bool var_hk = false;
  std::string var_output = "-";
  var->add_option("--input,-i", var_input, "Grid CSV (x,value or x,y,value)")->required();
  var->add_flag("--hk", var_hk, "Also compute the Hardy-Krause variation");
  var->add_option("--output,-o", var_output, "Output path (default stdout)");

  // ---- jointdf ----
  auto* jdf = app.add_subcommand("jointdf", "Histogram estimate of the lag-k joint df");
  SchemeOpts jdf_scheme;
  add_scheme_options(jdf, jdf_scheme, false);
  std::string jdf_input;
  Index jdf_n = 0;
  std::uint64_t jdf_seed = 0;
  Index jdf_lag = 1;
  Index jdf_grid = 21;
  std::string jdf_output = "-";
  jdf->add_option("--input,-i", jdf_input, "Sample CSV");
  jdf->add_option("--n", jdf_n, "Sample length (with --scheme/--family)");
  jdf->add_option("--seed", jdf_seed, "Stream seed (with --scheme/--family)");
  jdf->add_option("--lag", jdf_lag, "Lag k >= 1")->required();
  jdf->add_option("--grid-count", jdf_grid, "Grid points per axis (default 21)");
  jdf->add_option("--output,-o", jdf_output, "Output path (default stdout)");

  // ---- table ----
  auto* table = app.add_subcommand("table", "Replication table row");
  SchemeOpts table_scheme;
  add_scheme_options(table, table_scheme, true);
  Index table_n = 0;
  Index table_r = 2000;
  std::uint64_t table_seed = 0;
  int table_workers = 0;
  double table_exponent = 0.6;
  std::string table_range = "lemma";
  std::string table_format = "csv";
  std::string table_output = "-";
  table->add_option("--n", table_n, "Sample length")->required();
  table->add_option("--reps,-r", table_r, "Replication count (default 2000)");
  table->add_option("--seed", table_seed, "Master seed")->required();
  table->add_option("--workers", table_workers, "Worker threads (default hardware)");
  table->add_option("--exponent", table_exponent, "Block length exponent (default 3/5)");
  table->add_option("--block-range", table_range, "lemma | simulation");
  table->add_option("--format", table_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--output,-o", table_output, "Output path (default stdout)");

  // ---- clt-check ----
  auto* clt = app.add_subcommand("clt-check", "Standardized-statistic normality summary");
  SchemeOpts clt_scheme;
  add_scheme_options(clt, clt_scheme, true);
  Index clt_n = 0;
  Index clt_r = 2000;
  std::uint64_t clt_seed = 0;
  int clt_workers = 0;
  std::string clt_dump;
  std::string clt_output = "-";
  clt->add_option("--n", clt_n, "Sample length")->required();
  clt->add_option("--reps,-r", clt_r, "Replication count (default 2000)");
  clt->add_option("--seed", clt_seed, "Master seed")->required();
  clt->add_option("--workers", clt_workers, "Worker threads (default hardware)");
  clt->add_option("--dump-z", clt_dump, "Write standardized values to this CSV");
  clt->add_option("--output,-o", clt_output, "Output path (default stdout)");

  // ---- sup-check ----
  auto* sup = app.add_subcommand("sup-check", "Sup-deviation diagnostic series");
  SchemeOpts sup_scheme;
  add_scheme_options(sup, sup_scheme, true);
  std::string sup_nlist = "250,500,1000,2000";
  double sup_u = 1.1;
  double sup_p = 0.85;
  Index sup_grid = 512;
  std::uint64_t sup_seed = 0;
  std::string sup_output = "-";
  sup->add_option("--n-list", sup_nlist, "Comma-separated sample lengths");
  sup->add_option("--u", sup_u, "Exponent u > 1 (default 11/10)");
  sup->add_option("--p", sup_p, "Exponent p in (0,1) (default 17/20)");
  sup->add_option("--grid-size", sup_grid, "x-grid points (default 512)");
  sup->add_option("--seed", sup_seed, "Stream seed")->required();
  sup->add_option("--output,-o", sup_output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) {
      const austat::Sample sample = austat::generate(gen_scheme.resolve(), gen_n, gen_seed);
      OutputTarget out(gen_output);
      if (gen_format == "json") {
        out.stream() << austat::sample_to_json(sample).dump(2) << "\n";
      } else {
        austat::write_sample_csv(out.stream(), sample);
      }
    } else if (gini->parsed()) {
      austat::ArrXd values;
      if (!gini_input.empty()) {
        values = read_values_file(gini_input);
      } else {
        values = austat::generate(gini_scheme.resolve(), gini_n, gini_seed).values;
      }
      const austat::UStatResult result =
          gini_naive ? austat::u_stat_degree2(austat::gini_kernel(), values)
                     : austat::gini_fast(values);
      json j;
      j["kernel"] = result.kernel;
      j["n"] = result.n;
      j["degree"] = result.degree;
      j["value"] = result.value;
      OutputTarget out(gini_output);
      out.stream() << j.dump(2) << "\n";
    } else if (esig->parsed()) {
      austat::ArrXd values;
      if (!esig_input.empty()) {
        values = read_values_file(esig_input);
      } else {
        values = austat::generate(esig_scheme.resolve(), esig_n, esig_seed).values;
      }
      const Index ell =
          esig_ell > 0 ? esig_ell : austat::block_length(values.size(), esig_exponent);
      const austat::BlockEstimate estimate =
          austat::b_n_hat(values, ell, parse_block_range(esig_range));
      OutputTarget out(esig_output);
      out.stream() << austat::block_estimate_to_json(estimate).dump(2) << "\n";
    } else if (var->parsed()) {
      std::ifstream in(var_input, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open input file: " + var_input);
      const austat::GridFunction grid = austat::read_grid_csv(in);
      austat::VariationReport report;
      if (var_hk) {
        report = austat::hk_variation(grid);
      } else {
        report.vitali = austat::vitali_variation(grid);
      }
      OutputTarget out(var_output);
      out.stream() << austat::variation_report_to_json(report).dump(2) << "\n";
    } else if (jdf->parsed()) {
      austat::ArrXd values;
      if (!jdf_input.empty()) {
        values = read_values_file(jdf_input);
      } else {
        values = austat::generate(jdf_scheme.resolve(), jdf_n, jdf_seed).values;
      }
      const double lo = values.minCoeff();
      const double hi = values.maxCoeff();
      const austat::ArrXd grid = austat::ArrXd::LinSpaced(jdf_grid, lo, hi);
      const austat::JointDFEstimate estimate =
          austat::joint_df_grid(values, jdf_lag, grid, grid);
      OutputTarget out(jdf_output);
      austat::write_joint_df_csv(out.stream(), estimate);
    } else if (table->parsed()) {
      const austat::ReplicationSummary row =
          austat::run_table(table_scheme.resolve(), table_n, table_r, table_seed,
                            table_workers, parse_block_range(table_range), table_exponent);
      OutputTarget out(table_output);
      if (table_format == "json") {
        out.stream() << austat::replication_summary_to_json(row).dump(2) << "\n";
      } else {
        out.stream() << austat::replication_summary_csv_header() << "\n"
                     << austat::replication_summary_csv_row(row) << "\n";
      }
    } else if (clt->parsed()) {
      const austat::CltDiagnostic diag =
          austat::clt_diagnostic(clt_scheme.resolve(), clt_n, clt_r, clt_seed, clt_workers);
      if (!clt_dump.empty()) {
        std::ofstream zout(clt_dump, std::ios::binary);
        if (!zout) throw std::runtime_error("cannot open output file: " + clt_dump);
        zout << "z\n";
        for (Index i = 0; i < diag.z.size(); ++i)
          zout << austat::format_full(diag.z[i]) << "\n";
      }
      json j;
      j["two_sigma_u"] = diag.two_sigma_u;
      j["skewness"] = diag.skewness;
      j["kurtosis"] = diag.kurtosis;
      j["ks_distance"] = diag.ks_distance;
      OutputTarget out(clt_output);
      out.stream() << j.dump(2) << "\n";
    } else if (sup->parsed()) {
      const auto points = austat::sup_deviation_series(
          sup_scheme.resolve(), parse_index_list(sup_nlist), sup_u, sup_p, sup_grid, sup_seed);
      OutputTarget out(sup_output);
      out.stream() << "n,statistic\n";
      for (const auto& point : points)
        out.stream() << point.n << ',' << austat::format_full(point.statistic) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
