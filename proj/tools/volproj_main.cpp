#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "volproj/bounds.hpp"
#include "volproj/distortion.hpp"
#include "volproj/errors.hpp"
#include "volproj/gamma.hpp"
#include "volproj/io.hpp"
#include "volproj/linalg.hpp"
#include "volproj/parallel.hpp"
#include "volproj/randgen.hpp"
#include "volproj/stats.hpp"

namespace {

using nlohmann::json;
using namespace volproj;

constexpr std::uint64_t kDefaultSeed = 1729;

struct GlobalOptions {
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  bool deterministic = false;

  [[nodiscard]] ExecPolicy exec() const { return ExecPolicy{workers}; }
  [[nodiscard]] RandomSeed root() const { return RandomSeed{seed, 0}; }
};

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json num_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Worker count and the deterministic flag are deliberately left out of the
// emitted JSON: outputs must be byte-identical across worker counts.
json make_envelope(const std::string& command, json params, const GlobalOptions& g, json results,
                   const std::vector<std::string>& warnings) {
  json j;
  j["command"] = command;
  j["params"] = std::move(params);
  j["seed"] = g.seed;
  j["results"] = std::move(results);
  j["warnings"] = warnings;
  if (!g.deterministic) j["timestamp"] = iso_timestamp();
  return j;
}

void emit(const json& envelope, const std::string& copy_path = "") {
  const std::string text = envelope.dump(2) + "\n";
  std::cout << text;
  if (!copy_path.empty()) io::write_text_atomic(copy_path, text);
}

void warn(std::vector<std::string>& warnings, std::string message) {
  std::cerr << "volproj: warning: " << message << "\n";
  warnings.push_back(std::move(message));
}

PointSet generate_points(const std::string& mode, int n, int dim, double scale, RandomSeed seed) {
  if (n < 2) throw std::invalid_argument("gen: need n >= 2");
  if (dim < 1) throw std::invalid_argument("gen: need dim >= 1");
  if (!(scale > 0.0)) throw std::invalid_argument("gen: need scale > 0");
  Eigen::MatrixXd pts(dim, n);
  Rng rng(seed);
  if (mode == "gaussian") {
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < dim; ++r) pts(r, j) = scale * rng.normal();
  } else if (mode == "sphere") {
    for (int j = 0; j < n; ++j) {
      double norm2 = 0.0;
      do {
        for (int r = 0; r < dim; ++r) pts(r, j) = rng.normal();
        norm2 = pts.col(j).squaredNorm();
      } while (norm2 == 0.0);
      pts.col(j) *= scale / std::sqrt(norm2);
    }
  } else {  // simplex: origin plus scaled standard basis vectors
    if (dim < n - 1)
      throw std::invalid_argument("gen: simplex mode needs dim >= n-1 for affine independence");
    pts.setZero();
    for (int j = 1; j < n; ++j) pts(j - 1, j) = scale;
  }
  return PointSet(std::move(pts));
}

SubsetStrategy make_strategy(const std::string& mode, int samples, std::uint64_t cap) {
  SubsetStrategy s;
  s.mode = mode == "sampled" ? SubsetMode::sampled : SubsetMode::exhaustive;
  s.sample_count = samples;
  s.enumeration_cap = cap;
  return s;
}

json strategy_params(const std::string& mode, int samples, std::uint64_t cap) {
  return json{{"subset_mode", mode}, {"sample_count", samples}, {"enumeration_cap", cap}};
}

int effective_k(int requested, int d) { return requested > 0 ? requested : std::max(1, d / 2); }

void cap_warnings(std::vector<std::string>& warnings, int k, int d) {
  if (d < 3) warn(warnings, "d=" + std::to_string(d) + " is below the recommended minimum of 3");
  if (k > d / 2)
    warn(warnings, "k=" + std::to_string(k) + " exceeds floor(d/2)=" + std::to_string(d / 2) +
                       "; the volume guarantee does not cover subset sizes above the cap");
}

// ---------------------------------------------------------------------------
// gen

struct GenOpts {
  std::string mode = "gaussian";
  int n = 0;
  int dim = 0;
  double scale = 1.0;
  std::string output = "points.csv";
};

int cmd_gen(const GenOpts& o, const GlobalOptions& g) {
  const PointSet P = generate_points(o.mode, o.n, o.dim, o.scale, g.root());
  io::write_text_atomic(o.output, io::point_set_to_csv(P));
  const json params{{"mode", o.mode}, {"n", o.n},      {"dim", o.dim},
                    {"scale", o.scale}, {"output", o.output}};
  const json results{{"points_written", o.output}, {"n", P.n()}, {"dim", P.dim()}};
  emit(make_envelope("gen", params, g, results, {}));
  return 0;
}

// ---------------------------------------------------------------------------
// embed / report

struct MeasureOpts {
  std::string input;
  std::string output = "embedded.csv";
  std::string report_file;
  int d = 0;
  int k = 0;  // 0 = default floor(d/2)
  int trials = 20;
  std::optional<double> target;
  std::string subset_mode = "exhaustive";
  int samples = 10000;
  std::uint64_t cap = 1000000;
};

int cmd_embed(const MeasureOpts& o, const GlobalOptions& g) {
  const PointSet P = io::read_point_set_csv(o.input);
  const int k = effective_k(o.k, o.d);
  std::vector<std::string> warnings;
  cap_warnings(warnings, k, o.d);

  const SubsetStrategy strategy = make_strategy(o.subset_mode, o.samples, o.cap);
  const EmbedResult er = embed(P, o.d, k, o.trials, o.target, strategy, g.root(), g.exec());
  io::write_text_atomic(o.output, io::point_set_to_csv(apply_map(er.map, P)));

  json params = strategy_params(o.subset_mode, o.samples, o.cap);
  params["input"] = o.input;
  params["output"] = o.output;
  params["n"] = P.n();
  params["dim"] = P.dim();
  params["d"] = o.d;
  params["k"] = k;
  params["trials"] = o.trials;
  params["target"] = o.target ? json(*o.target) : json(nullptr);

  json results;
  results["report"] = io::report_to_json(er.report);
  results["map_scale"] = er.map.scale;
  results["trials_used"] = er.trials_used;
  results["points_written"] = o.output;
  results["theoretical_volume_bound"] =
      P.n() >= 16 && o.d >= 3 ? json(volume_distortion_bound(P.n(), o.d, 1.0)) : json(nullptr);
  emit(make_envelope("embed", params, g, results, warnings), o.report_file);
  return 0;
}

int cmd_report(const MeasureOpts& o, const GlobalOptions& g) {
  const PointSet P = io::read_point_set_csv(o.input);
  const int k = effective_k(o.k, o.d);
  std::vector<std::string> warnings;
  cap_warnings(warnings, k, o.d);

  const SubsetStrategy strategy = make_strategy(o.subset_mode, o.samples, o.cap);
  const LinearMap f = gaussian_matrix(o.d, P.dim(), g.root().derived(1));
  const DistortionReport rep = distortion_report(f, P, k, strategy, g.root().derived(2), g.exec());

  json params = strategy_params(o.subset_mode, o.samples, o.cap);
  params["input"] = o.input;
  params["n"] = P.n();
  params["dim"] = P.dim();
  params["d"] = o.d;
  params["k"] = k;

  json results;
  results["report"] = io::report_to_json(rep);
  results["theoretical_volume_bound"] =
      P.n() >= 16 && o.d >= 3 ? json(volume_distortion_bound(P.n(), o.d, 1.0)) : json(nullptr);
  emit(make_envelope("report", params, g, results, warnings), o.report_file);
  return 0;
}

// ---------------------------------------------------------------------------
// bounds

json threshold_search_json(int n, int d, int k, BoundMode mode, double split) {
  json j;
  try {
    const ThresholdSearch ts = search_thresholds(n, d, k, mode, split);
    j["feasible"] = true;
    j["k"] = ts.params.k;
    j["a"] = ts.params.a;
    j["b"] = ts.params.b;
    j["ratio"] = ts.params.b / ts.params.a;
    j["failure_bound"] = ts.failure_bound;
    j["implied_constant"] = ts.implied_constant ? json(*ts.implied_constant) : json(nullptr);
  } catch (const InfeasibleError& e) {
    j["feasible"] = false;
    j["error"] = e.what();
  }
  return j;
}

struct BoundsOpts {
  int n = 0;
  int d = 0;
  int k = 0;
  double split = 0.5;
};

int cmd_bounds(const BoundsOpts& o, const GlobalOptions& g) {
  std::vector<std::string> warnings;
  int k_vol = effective_k(o.k, o.d);
  if (k_vol > o.d / 2) {
    k_vol = std::max(1, o.d / 2);
    warn(warnings, "volume certificate k clamped to floor(d/2)=" + std::to_string(k_vol));
  }
  k_vol = std::min(k_vol, o.n - 1);

  json results;
  results["distance"] = threshold_search_json(o.n, o.d, 1, BoundMode::distance, o.split);
  results["volume"] = threshold_search_json(o.n, o.d, k_vol, BoundMode::volume, o.split);
  results["formulas"] = {
      {"distance_bound_c1", num_or_null(distance_distortion_bound(o.n, o.d, 1.0))},
      {"volume_bound_c1",
       o.n >= 16 ? json(volume_distortion_bound(o.n, o.d, 1.0)) : json(nullptr)}};

  const json params{{"n", o.n}, {"d", o.d}, {"k", k_vol}, {"split", o.split}};
  emit(make_envelope("bounds", params, g, results, warnings));
  return 0;  // infeasibility is reported in the JSON, not the exit code
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

int emit_checks(const std::string& target, json params, const GlobalOptions& g,
                const std::vector<Check>& checks, json extra = json::object()) {
  bool all_pass = true;
  json arr = json::array();
  for (const Check& c : checks) {
    all_pass = all_pass && c.pass;
    arr.push_back({{"name", c.name},
                   {"statistic", num_or_null(c.statistic)},
                   {"threshold", c.threshold},
                   {"pass", c.pass}});
  }
  json results = std::move(extra);
  results["checks"] = arr;
  results["pass"] = all_pass;
  params["target"] = target;
  emit(make_envelope("verify", std::move(params), g, std::move(results), {}));
  return all_pass ? 0 : 1;
}

struct GordonOpts {
  int d = 10;
  int s = 4;
  int reps = 100000;
  double epsilon = 0.01;
};

int cmd_verify_gordon(const GordonOpts& o, const GlobalOptions& g) {
  const OrderingReport rep = verify_gordon(o.d, o.s, o.reps, o.epsilon, g.root(), g.exec());
  const json params{{"d", o.d}, {"s", o.s}, {"reps", o.reps}, {"epsilon", o.epsilon}};
  const Check check{"chi_square_sandwich d=" + std::to_string(o.d) + " s=" + std::to_string(o.s),
                    rep.max_violation, rep.epsilon, rep.pass};
  return emit_checks("gordon", params, g, {check},
                     json{{"t", t_param(o.s, o.d)}, {"l", l_param(o.s, o.d)}});
}

struct StabilityOpts {
  int d = 9;
  int subset_size = 4;
  int reps = 10000;
  int dim_a = 10;
  int dim_b = 40;
  std::optional<double> threshold;
};

int cmd_verify_stability(const StabilityOpts& o, const GlobalOptions& g) {
  // Two synthetic sets of different ambient dimension and shape: a gaussian
  // cloud and a sphere sample. The ratio law should not see the difference.
  const int n_pts = o.subset_size + 2;
  const PointSet A = generate_points("gaussian", n_pts, o.dim_a, 1.0, g.root().derived(10));
  const PointSet B = generate_points("sphere", n_pts, o.dim_b, 1.0, g.root().derived(11));
  const StabilityResult r =
      verify_stability(A, B, o.d, o.subset_size, o.reps, g.root(), g.exec());
  const double threshold =
      o.threshold ? *o.threshold : ks_two_sample_critical(o.reps, o.reps, 0.01);

  const json params{{"d", o.d},         {"subset_size", o.subset_size}, {"reps", o.reps},
                    {"dim_a", o.dim_a}, {"dim_b", o.dim_b},             {"threshold", threshold}};
  const std::vector<Check> checks{
      {"point_set_independence (two-sample KS)", r.ks_ab, threshold, r.ks_ab <= threshold},
      {"matches_chi_square_product (two-sample KS)", r.ks_a_product, threshold,
       r.ks_a_product <= threshold}};
  return emit_checks("stability", params, g, checks,
                     json{{"subset_a", r.subset_a}, {"subset_b", r.subset_b}});
}

std::vector<Check> gamma_bound_checks() {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<Check> checks;

  double worst = kNegInf;
  for (int s = 1; s <= 8; ++s)
    for (int d = std::max(3, s); d <= 20; ++d)
      for (int ia = 1; ia <= 20; ++ia) {
        const double a = 0.05 * ia;
        const double exact =
            chi_square_cdf(static_cast<int>(t_param(s, d)), s * a * a);
        worst = std::max(worst, exact - contraction_tail_bound(s, d, a));
      }
  checks.push_back({"contraction_tail_bound dominates chi-square CDF", worst, 0.0, worst <= 0.0});

  worst = kNegInf;
  for (int s = 1; s <= 8; ++s)
    for (int d = std::max(3, s); d <= 20; ++d) {
      const double l = static_cast<double>(l_param(s, d));
      if (l <= 2.0) continue;
      for (const double factor : {1.01, 1.1, 1.25, 1.5, 2.0, 3.0}) {
        const double b = std::sqrt((2.0 * l + 4.0) / s) * factor;
        const double exact =
            chi_square_survival(static_cast<int>(l), s * b * b);
        worst = std::max(worst, exact - expansion_tail_bound(s, d, b));
      }
    }
  checks.push_back(
      {"expansion_tail_bound dominates chi-square survival", worst, 0.0, worst <= 0.0});

  worst = kNegInf;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double a = 0.5 + (20.0 - 0.5) * i / 9.0;
      const double x = 40.0 * j / 9.0;
      const double exact = regularized_lower_incomplete_gamma(a, x) * std::exp(log_gamma(a));
      worst = std::max(worst, exact - lower_incgamma_bound(a, x));
    }
  checks.push_back({"x^a/a dominates lower incomplete gamma", worst, 0.0, worst <= 0.0});

  worst = kNegInf;
  for (int i = 0; i < 10; ++i) {
    const double a = 0.5 + (20.0 - 0.5) * i / 9.0;
    for (const double factor : {1.01, 1.2, 1.5, 2.0}) {
      const double x = 2.0 * (a + 1.0) * factor;
      const double exact = regularized_upper_incomplete_gamma(a, x) * std::exp(log_gamma(a));
      worst = std::max(worst, exact - upper_incgamma_bound(a, x));
    }
  }
  checks.push_back({"2e^-x x^(a+1) dominates upper incomplete gamma", worst, 0.0, worst <= 0.0});

  worst = kNegInf;
  for (int i = 0; i <= 60; ++i) {
    const double a = 0.1 * std::pow(10.0, 4.0 * i / 60.0);
    const GammaBoundPair lb = log_stirling_bounds(a);
    const double lg = log_gamma(a + 1.0);
    worst = std::max(worst, std::max(lb.lower - lg, lg - lb.upper));
  }
  checks.push_back({"stirling sandwich brackets log_gamma(a+1)", worst, 0.0, worst < 0.0});

  return checks;
}

int cmd_verify_gamma_bounds(const GlobalOptions& g) {
  return emit_checks("gamma-bounds", json::object(), g, gamma_bound_checks());
}

// ---------------------------------------------------------------------------
// bench

struct BenchOpts {
  std::vector<int> n_list;
  std::vector<int> d_list;
  int k = 2;
  int trials = 5;
  int dim = 16;
  std::string output = "bench.csv";
};

int cmd_bench(const BenchOpts& o, const GlobalOptions& g) {
  std::string csv = "n,d,k,measured_distortion,theoretical_bound,trials,seed\n";
  int rows = 0;
  for (const int n : o.n_list)
    for (const int d : o.d_list) {
      const int k = std::max(1, std::min({o.k, d / 2, n - 1}));
      const PointSet P = generate_points("gaussian", n, o.dim, 1.0,
                                         g.root().derived(100 + static_cast<std::uint64_t>(rows)));
      const EmbedResult er = embed(P, d, k, o.trials, std::nullopt, SubsetStrategy{},
                                   g.root().derived(500 + static_cast<std::uint64_t>(rows)),
                                   g.exec());
      const double bound = n >= 16 && d >= 3 ? volume_distortion_bound(n, d, 1.0)
                                             : std::numeric_limits<double>::quiet_NaN();
      csv += std::to_string(n) + "," + std::to_string(d) + "," + std::to_string(k) + "," +
             io::format_double(er.report.distortion) + "," + io::format_double(bound) + "," +
             std::to_string(o.trials) + "," + std::to_string(g.seed) + "\n";
      ++rows;
    }
  io::write_text_atomic(o.output, csv);

  const json params{{"n_list", o.n_list}, {"d_list", o.d_list}, {"k", o.k},
                    {"trials", o.trials}, {"dim", o.dim},       {"output", o.output}};
  const json results{{"rows", rows}, {"csv_written", o.output}};
  emit(make_envelope("bench", params, g, results, {}));
  return 0;
}

// ---------------------------------------------------------------------------

template <typename Fn>
int run_guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const DegenerateInputError& e) {
    std::cerr << "volproj: degenerate input: " << e.what() << "\n";
    return 3;
  } catch (const CsvParseError& e) {
    std::cerr << "volproj: parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "volproj: I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "volproj: I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "volproj: invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "volproj: domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "volproj: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOptions g;
  CLI::App app{
      "volproj: random Gaussian embeddings with certified volume distortion.\n"
      "All logarithms are natural logs. Exit codes: 0 success/pass, 1 verification\n"
      "failure, 2 usage/parse/I-O error, 3 degenerate input."};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "Master RNG seed (env: VOLPROJ_SEED)")
      ->envname("VOLPROJ_SEED");
  app.add_option("--workers", g.workers, "Worker threads for Monte Carlo and subset scans")
      ->check(CLI::PositiveNumber);
  app.add_flag("--deterministic", g.deterministic,
               "Suppress the timestamp so outputs are byte-reproducible");

  GenOpts gen_o;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic point set CSV");
  gen->add_option("--mode", gen_o.mode, "gaussian | simplex | sphere")
      ->check(CLI::IsMember({"gaussian", "simplex", "sphere"}));
  gen->add_option("--n", gen_o.n, "Number of points (>= 2)")->required();
  gen->add_option("--dim", gen_o.dim, "Ambient dimension N")->required();
  gen->add_option("--scale", gen_o.scale, "Std-dev / edge length / radius");
  gen->add_option("-o,--output", gen_o.output, "Output CSV path");

  MeasureOpts embed_o;
  auto* embed_cmd = app.add_subcommand("embed", "Embed a point set into R^d with trial maps");
  embed_cmd->add_option("-i,--input", embed_o.input, "Input point-set CSV")->required();
  embed_cmd->add_option("-o,--output", embed_o.output, "Embedded points CSV path");
  embed_cmd->add_option("--report-file", embed_o.report_file, "Also write the JSON report here");
  embed_cmd->add_option("--d", embed_o.d, "Target dimension")->required();
  embed_cmd->add_option("--k", embed_o.k, "Max simplex dimension (default floor(d/2))");
  embed_cmd->add_option("--trials", embed_o.trials, "Random maps to try");
  embed_cmd->add_option("--target", embed_o.target, "Stop at this distortion");
  embed_cmd->add_option("--subset-mode", embed_o.subset_mode, "exhaustive | sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  embed_cmd->add_option("--samples", embed_o.samples, "Subsets per size when sampling");
  embed_cmd->add_option("--cap", embed_o.cap, "Max total subsets for exhaustive mode");

  MeasureOpts report_o;
  auto* report_cmd =
      app.add_subcommand("report", "Measure distortion of one seeded Gaussian map");
  report_cmd->add_option("-i,--input", report_o.input, "Input point-set CSV")->required();
  report_cmd->add_option("--report-file", report_o.report_file, "Also write the JSON report here");
  report_cmd->add_option("--d", report_o.d, "Target dimension")->required();
  report_cmd->add_option("--k", report_o.k, "Max simplex dimension (default floor(d/2))");
  report_cmd->add_option("--subset-mode", report_o.subset_mode, "exhaustive | sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  report_cmd->add_option("--samples", report_o.samples, "Subsets per size when sampling");
  report_cmd->add_option("--cap", report_o.cap, "Max total subsets for exhaustive mode");

  BoundsOpts bounds_o;
  auto* bounds_cmd =
      app.add_subcommand("bounds", "Search certified (a, b) thresholds for both modes");
  bounds_cmd->add_option("--n", bounds_o.n, "Number of points")->required();
  bounds_cmd->add_option("--d", bounds_o.d, "Target dimension")->required();
  bounds_cmd->add_option("--k", bounds_o.k, "Max simplex dimension (default floor(d/2))");
  bounds_cmd->add_option("--split", bounds_o.split,
                         "Failure budget fraction for the contraction side");

  auto* verify = app.add_subcommand("verify", "Monte Carlo / grid verification suites");
  verify->require_subcommand(1);
  verify->fallthrough();

  GordonOpts gordon_o;
  auto* gordon = verify->add_subcommand("gordon", "Chi-square sandwich ordering check");
  gordon->add_option("--d", gordon_o.d, "Dimension");
  gordon->add_option("--s", gordon_o.s, "Number of chi-square factors");
  gordon->add_option("--reps", gordon_o.reps, "Monte Carlo sample count");
  gordon->add_option("--epsilon", gordon_o.epsilon, "Allowed CDF violation");

  StabilityOpts stability_o;
  auto* stability =
      verify->add_subcommand("stability", "Point-set independence of the volume ratio law");
  stability->add_option("--d", stability_o.d, "Target dimension");
  stability->add_option("--subset-size", stability_o.subset_size, "Points per measured subset");
  stability->add_option("--reps", stability_o.reps, "Monte Carlo sample count");
  stability->add_option("--dim-a", stability_o.dim_a, "Ambient dimension of the first set");
  stability->add_option("--dim-b", stability_o.dim_b, "Ambient dimension of the second set");
  stability->add_option("--threshold", stability_o.threshold,
                        "KS threshold (default: 1% two-sample critical value)");

  auto* gamma_bounds =
      verify->add_subcommand("gamma-bounds", "Grid checks of the analytic tail bounds");

  BenchOpts bench_o;
  auto* bench = app.add_subcommand("bench", "Sweep embed over an (n, d) grid, write CSV");
  bench->add_option("--n-list", bench_o.n_list, "Point counts to sweep");
  bench->add_option("--d-list", bench_o.d_list, "Target dimensions to sweep");
  bench->add_option("--k", bench_o.k, "Max simplex dimension (clamped per row)");
  bench->add_option("--trials", bench_o.trials, "Random maps per grid point");
  bench->add_option("--dim", bench_o.dim, "Ambient dimension of generated clouds");
  bench->add_option("-o,--output", bench_o.output, "Output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  return run_guarded([&]() -> int {
    if (gen->parsed()) return cmd_gen(gen_o, g);
    if (embed_cmd->parsed()) return cmd_embed(embed_o, g);
    if (report_cmd->parsed()) return cmd_report(report_o, g);
    if (bounds_cmd->parsed()) return cmd_bounds(bounds_o, g);
    if (verify->parsed()) {
      if (gordon->parsed()) return cmd_verify_gordon(gordon_o, g);
      if (stability->parsed()) return cmd_verify_stability(stability_o, g);
      if (gamma_bounds->parsed()) return cmd_verify_gamma_bounds(g);
    }
    if (bench->parsed()) return cmd_bench(bench_o, g);
    return 2;
  });
}
