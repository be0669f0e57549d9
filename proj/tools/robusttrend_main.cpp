// Command-line front end: synthetic data generation, batch and streaming
// trend filtering, and the benchmark grid.

#include <CLI11.hpp>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "robusttrend/baselines.hpp"
#include "robusttrend/bench.hpp"
#include "robusttrend/csv.hpp"
#include "robusttrend/metrics.hpp"
#include "robusttrend/solver.hpp"
#include "robusttrend/streaming.hpp"
#include "robusttrend/synth.hpp"
#include "robusttrend/version.hpp"

namespace rt = robusttrend;

namespace {

std::string iso_timestamp() {
  char buf[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Sidecar manifest accompanying every output file: the full parameter set
/// needed to reproduce it. Identical manifests (timestamp aside) always
/// reproduce identical numeric outputs.
void write_manifest(const std::string& output_path, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>&
                        params) {
  std::ofstream out(output_path + ".manifest");
  out << "command = " << command << '\n';
  out << "version = " << rt::kVersion << '\n';
  out << "timestamp = " << iso_timestamp() << '\n';
  for (const auto& [key, value] : params) {
    out << key << " = " << value << '\n';
  }
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const auto range_pos = text.find("..");
  if (range_pos != std::string::npos) {
    const std::uint64_t lo = std::stoull(text.substr(0, range_pos));
    const std::uint64_t hi = std::stoull(text.substr(range_pos + 2));
    if (hi < lo) throw std::invalid_argument("seed range is reversed");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) seeds.push_back(std::stoull(item));
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  if (values.empty()) throw std::invalid_argument("empty numeric list");
  return values;
}

struct SolverFlags {
  double rho = 1.0;
  int max_iter = 500;
  double eps_abs = 1e-4;
  double eps_rel = 1e-4;
  double weight_floor = 1e-8;

  void attach(CLI::App* cmd) {
    cmd->add_option("--rho", rho, "ADMM penalty parameter");
    cmd->add_option("--max-iter", max_iter, "ADMM iteration cap");
    cmd->add_option("--eps-abs", eps_abs, "absolute stopping tolerance");
    cmd->add_option("--eps-rel", eps_rel, "relative stopping tolerance");
    cmd->add_option("--weight-floor", weight_floor,
                    "lower clamp for the loss weights");
  }

  rt::SolverConfig to_config() const {
    rt::SolverConfig cfg;
    cfg.rho = rho;
    cfg.max_iter = max_iter;
    cfg.eps_abs = eps_abs;
    cfg.eps_rel = eps_rel;
    cfg.weight_floor = weight_floor;
    return cfg;
  }
};

int run_generate(const rt::SyntheticSpec& spec, const std::string& output) {
  const rt::SyntheticDataset data = rt::generate(spec);
  std::ofstream out(output);
  if (!out) {
    std::cerr << "error: cannot open " << output << " for writing\n";
    return 1;
  }
  rt::write_dataset_csv(out, data);
  write_manifest(output, "generate",
                 {{"n", std::to_string(spec.n)},
                  {"amplitude", rt::format_double(spec.amplitude)},
                  {"noise_sigma", rt::format_double(spec.noise_sigma)},
                  {"outlier_ratio", rt::format_double(spec.outlier_ratio)},
                  {"outlier_amplitude",
                   rt::format_double(spec.outlier_amplitude)},
                  {"seed", std::to_string(spec.seed)}});
  std::cerr << "wrote " << spec.n << " rows, "
            << data.outlier_positions.size() << " outliers, "
            << data.change_points.size() << " change points to " << output
            << "\n";
  return 0;
}

int run_filter(const std::string& input, const std::string& output,
               const std::string& emit_plot, const rt::BaselineSpec& spec,
               const SolverFlags& flags) {
  std::ifstream in(input);
  if (!in) {
    std::cerr << "error: cannot open " << input << "\n";
    return 1;
  }
  const std::vector<double> values = rt::read_value_column(in);
  const rt::TimeSeries series(values);
  const rt::FilterResult result =
      rt::apply_filter(spec, series, flags.to_config());

  std::ofstream out(output);
  if (!out) {
    std::cerr << "error: cannot open " << output << " for writing\n";
    return 1;
  }
  rt::write_filter_csv(out, values, result.trend, result.residual);
  write_manifest(output, "filter",
                 {{"input", input},
                  {"method", rt::filter_kind_name(spec.kind)},
                  {"lambda", rt::format_double(spec.lambda)},
                  {"lambda1", rt::format_double(spec.lambda1)},
                  {"lambda2", rt::format_double(spec.lambda2)},
                  {"gamma", rt::format_double(spec.gamma)},
                  {"window", std::to_string(spec.window)},
                  {"rho", rt::format_double(flags.rho)},
                  {"max_iter", std::to_string(flags.max_iter)},
                  {"eps_abs", rt::format_double(flags.eps_abs)},
                  {"eps_rel", rt::format_double(flags.eps_rel)},
                  {"emit_plot", emit_plot.empty() ? "-" : emit_plot}});

  if (!emit_plot.empty()) {
    std::ofstream plot(emit_plot);
    for (std::size_t i = 0; i < result.trend.size(); ++i) {
      plot << i << '\t' << rt::format_double(result.trend[i]) << '\n';
    }
  }

  std::cerr << "method=" << rt::filter_kind_name(spec.kind)
            << " iterations=" << result.iterations
            << " converged=" << (result.converged ? "yes" : "no")
            << " primal=" << result.primal_residual_norm
            << " dual=" << result.dual_residual_norm << "\n";
  return 0;
}

int run_stream(std::size_t window, bool center, bool no_warm,
               bool compare_cold, double lambda1, double lambda2, double gamma,
               const SolverFlags& flags) {
  rt::SolverConfig cfg = flags.to_config();
  cfg.huber = rt::HuberParams{gamma};
  cfg.lambda1 = lambda1;
  cfg.lambda2 = lambda2;
  cfg.validate();

  rt::StreamingFilter filter(
      {.window = window, .warm_start = !no_warm, .emit_center = center}, cfg);
  std::optional<rt::StreamingFilter> cold;
  if (compare_cold && !no_warm) {
    cold.emplace(
        rt::StreamOptions{
            .window = window, .warm_start = false, .emit_center = center},
        cfg);
  }

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(std::cin, line)) {
    ++line_no;
    // Tolerate blank lines and surrounding whitespace.
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(begin, end - begin + 1);
    double sample = 0.0;
    try {
      std::size_t used = 0;
      sample = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      std::cerr << "error: line " << line_no << ": not a number: '" << token
                << "'\n";
      return 1;
    }
    const auto out = filter.push(sample);
    if (cold) cold->push(sample);
    if (out) std::cout << rt::format_double(*out) << '\n';
  }

  if (filter.solves() > 0) {
    std::cerr << "emitted=" << filter.emitted() << " mean_iterations="
              << double(filter.total_iterations()) / double(filter.solves());
    if (cold && cold->solves() > 0) {
      std::cerr << " cold_mean_iterations="
                << double(cold->total_iterations()) / double(cold->solves());
    }
    std::cerr << "\n";
  } else {
    std::cerr << "stream shorter than the window; nothing emitted\n";
  }
  return 0;
}

int run_bench(const std::string& methods_text, const std::string& ratios_text,
              const std::string& seeds_text, const std::string& preset,
              rt::SyntheticSpec data, const std::string& output) {
  rt::BenchSpec spec;
  spec.data = data;

  std::string methods = methods_text;
  std::string ratios = ratios_text;
  if (preset == "table1") {
    methods = "robusttrend,hp,l1,tv,mixed,rm";
    ratios = "0.01,0.05,0.10,0.20";
  } else if (preset == "table2") {
    methods = "robusttrend,hp,l1,tv,mixed,rm";
    ratios = "0.05";
  } else if (preset == "table3") {
    methods = "tv,tvhuber,l1,l1huber,robusttrendl2,robusttrend";
    ratios = "0.05";
  } else if (!preset.empty()) {
    std::cerr << "error: unknown preset '" << preset
              << "' (table1, table2, table3)\n";
    return 1;
  }

  {
    std::stringstream ss(methods);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (!name.empty()) spec.methods.push_back(rt::parse_filter_kind(name));
    }
  }
  spec.ratios = parse_double_list(ratios);
  spec.seeds = parse_seed_list(seeds_text);

  if (const char* env = std::getenv("ROBUSTTREND_WORKERS")) {
    spec.workers = std::max(1, std::atoi(env));
  }

  const rt::BenchResult result = rt::run_bench(spec);
  std::cout << rt::bench_text(result);

  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "error: cannot open " << output << " for writing\n";
      return 1;
    }
    out << rt::bench_csv(result);
    write_manifest(output, "bench",
                   {{"methods", methods},
                    {"ratios", ratios},
                    {"seeds", seeds_text},
                    {"preset", preset},
                    {"n", std::to_string(data.n)},
                    {"noise_sigma", rt::format_double(data.noise_sigma)}});
  }

  for (const rt::BenchCell& cell : result.cells) {
    if (!cell.ok) {
      std::cerr << "note: " << rt::filter_kind_name(cell.method) << " at "
                << cell.ratio << ": " << cell.error << " (reported as NA)\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robusttrend: robust trend filtering toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rt::kVersion);
  // Flags beat config-file values, which beat the built-in defaults. Keys
  // for a subcommand live in its [section] (or as subcommand.key=value).
  app.set_config("--config", "", "flat key=value config file");

  // generate
  auto* gen = app.add_subcommand("generate", "write a synthetic benchmark CSV");
  rt::SyntheticSpec spec;
  std::string gen_output;
  gen->add_option("--n", spec.n, "series length");
  gen->add_option("--amplitude", spec.amplitude, "waveform amplitude");
  gen->add_option("--noise-sigma", spec.noise_sigma, "Gaussian noise sigma");
  gen->add_option("--outlier-ratio", spec.outlier_ratio,
                  "fraction of samples turned into spikes/dips");
  gen->add_option("--outlier-amplitude", spec.outlier_amplitude,
                  "spike/dip magnitude");
  gen->add_option("--seed", spec.seed, "random seed");
  gen->add_option("-o,--output", gen_output, "output CSV path")->required();

  // filter
  auto* flt = app.add_subcommand("filter", "extract a trend from a CSV");
  std::string flt_input, flt_output = "trend.csv", flt_plot;
  std::string method = "robusttrend";
  rt::BaselineSpec bspec;
  bspec.lambda1 = 1.0;
  bspec.lambda2 = 5.0;
  bspec.gamma = 1.0;
  bspec.window = 41;
  SolverFlags flt_flags;
  flt->add_option("input", flt_input, "input CSV (reads the value column)")
      ->required();
  flt->add_option("-m,--method", method, "filter to run");
  flt->add_option("--lambda", bspec.lambda, "penalty (single-penalty filters)");
  flt->add_option("--lambda1", bspec.lambda1, "first-difference penalty");
  flt->add_option("--lambda2", bspec.lambda2, "second-difference penalty");
  flt->add_option("--gamma", bspec.gamma, "Huber transition point");
  flt->add_option("--window", bspec.window, "repeated median window");
  flt->add_option("-o,--output", flt_output, "output CSV path");
  flt->add_option("--emit-plot", flt_plot, "write index/trend TSV for plots");
  flt_flags.attach(flt);

  // stream
  auto* stm = app.add_subcommand(
      "stream", "online filtering: numbers on stdin, trend on stdout");
  std::size_t window = 101;
  bool center = false, no_warm = false, compare_cold = false;
  double s_lambda1 = 1.0, s_lambda2 = 5.0, s_gamma = 1.0;
  SolverFlags stm_flags;
  stm->add_option("--window,-w", window, "sliding window length");
  stm->add_flag("--center", center, "emit the window center, not the end");
  stm->add_flag("--cold", no_warm, "disable warm starts");
  stm->add_flag("--compare-cold", compare_cold,
                "also run cold starts and report both iteration means");
  stm->add_option("--lambda1", s_lambda1, "first-difference penalty");
  stm->add_option("--lambda2", s_lambda2, "second-difference penalty");
  stm->add_option("--gamma", s_gamma, "Huber transition point");
  stm_flags.attach(stm);

  // bench
  auto* bch = app.add_subcommand("bench", "benchmark grid over outlier ratios");
  std::string methods = "robusttrend,hp,l1,tv,mixed,rm";
  std::string ratios = "0.01,0.05,0.10,0.20";
  std::string seeds = "1..10";
  std::string preset, bch_output;
  rt::SyntheticSpec bch_data;
  bch->add_option("--methods", methods, "comma-separated method list");
  bch->add_option("--ratios", ratios, "comma-separated outlier ratios");
  bch->add_option("--seeds", seeds, "comma list or a..b range");
  bch->add_option("--preset", preset, "table1 | table2 | table3");
  bch->add_option("--n", bch_data.n, "series length");
  bch->add_option("--noise-sigma", bch_data.noise_sigma, "noise sigma");
  bch->add_option("--amplitude", bch_data.amplitude, "waveform amplitude");
  bch->add_option("--outlier-amplitude", bch_data.outlier_amplitude,
                  "spike/dip magnitude");
  bch->add_option("-o,--output", bch_output, "results CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      spec.validate();
      return run_generate(spec, gen_output);
    }
    if (flt->parsed()) {
      bspec.kind = rt::parse_filter_kind(method);
      return run_filter(flt_input, flt_output, flt_plot, bspec, flt_flags);
    }
    if (stm->parsed()) {
      return run_stream(window, center, no_warm, compare_cold, s_lambda1,
                        s_lambda2, s_gamma, stm_flags);
    }
    if (bch->parsed()) {
      return run_bench(methods, ratios, seeds, preset, bch_data, bch_output);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
