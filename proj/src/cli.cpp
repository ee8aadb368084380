#include "geflab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "geflab/errors.hpp"
#include "geflab/experiments.hpp"
#include "geflab/potential.hpp"
#include "geflab/serialize.hpp"
#include "geflab/zeros.hpp"

namespace geflab::cli {

namespace {

using nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

constexpr char kGenericHeader[] =
    "event,r,delta,trials,successes,uncertain,p_hat,p_low,p_high,ci_low,ci_high,"
    "log_p_hat,seed";
constexpr char kOmegaHeader[] = "r,log_prob_omega,conditional_samples,holes_certified";
constexpr char kProbeHeader[] =
    "delta,r,kappa,n_discs,max_deviation,deviation_over_sqrt_delta";
constexpr char kFitHeader[] =
    "event,window_min_r,window_max_r,amplitude,exponent,residual_rms";

// Accumulates rows for one output document; CSV sections each carry their
// own header line, the JSON form is a flat array of objects.
class OutputDoc {
 public:
  explicit OutputDoc(bool json) : json_(json) {}

  void begin_section(const char* header) {
    if (!json_) lines_.emplace_back(header);
  }

  void add_csv(const std::string& line) {
    if (!json_) lines_.push_back(line);
  }

  void add_json(ordered_json obj) {
    if (json_) array_.push_back(std::move(obj));
  }

  std::string render() const {
    if (json_) return array_.dump(2) + "\n";
    std::string out;
    for (const auto& l : lines_) {
      out += l;
      out += '\n';
    }
    return out;
  }

 private:
  bool json_;
  std::vector<std::string> lines_;
  ordered_json array_ = ordered_json::array();
};

void append_estimate(OutputDoc& doc, const McEstimate& est) {
  std::ostringstream row;
  row << est.event_name << ',' << format_double(est.r) << ','
      << (est.delta ? format_double(*est.delta) : "") << ',' << est.trials << ','
      << est.successes << ',' << est.uncertain << ',' << format_double(est.p_hat)
      << ',' << format_double(est.p_low_bound) << ',' << format_double(est.p_high_bound)
      << ',' << format_double(est.ci_low) << ',' << format_double(est.ci_high) << ','
      << (est.p_hat > 0.0 ? format_double(std::log(est.p_hat)) : "") << ','
      << est.master_seed;
  doc.add_csv(row.str());

  ordered_json obj;
  obj["event"] = est.event_name;
  obj["r"] = est.r;
  if (est.delta)
    obj["delta"] = *est.delta;
  else
    obj["delta"] = nullptr;
  obj["trials"] = est.trials;
  obj["successes"] = est.successes;
  obj["uncertain"] = est.uncertain;
  obj["p_hat"] = est.p_hat;
  obj["p_low"] = est.p_low_bound;
  obj["p_high"] = est.p_high_bound;
  obj["ci_low"] = est.ci_low;
  obj["ci_high"] = est.ci_high;
  if (est.p_hat > 0.0)
    obj["log_p_hat"] = std::log(est.p_hat);
  else
    obj["log_p_hat"] = nullptr;
  obj["seed"] = est.master_seed;
  doc.add_json(std::move(obj));
}

void append_fit(OutputDoc& doc, const FitResult& fit) {
  std::ostringstream row;
  row << "fit," << format_double(fit.window.front().first) << ','
      << format_double(fit.window.back().first) << ','
      << format_double(fit.amplitude) << ',' << format_double(fit.exponent) << ','
      << format_double(fit.residual_rms);
  doc.add_csv(row.str());

  ordered_json obj;
  obj["event"] = "fit";
  obj["window_min_r"] = fit.window.front().first;
  obj["window_max_r"] = fit.window.back().first;
  obj["amplitude"] = fit.amplitude;
  obj["exponent"] = fit.exponent;
  obj["residual_rms"] = fit.residual_rms;
  doc.add_json(std::move(obj));
}

int write_output(const OutputDoc& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << doc.render();
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "geflab: cannot open output file: " << path << "\n";
    return 1;
  }
  out << doc.render();
  return 0;
}

struct CommonOpts {
  std::vector<double> r_values;
  std::vector<double> deltas;
  long long trials = 10000;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string output_path;
  int workers = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool wants_r = true) {
  if (wants_r)
    cmd->add_option("--r", opts.r_values, "radius value(s), comma separated")
        ->delimiter(',')
        ->required();
  cmd->add_option("--trials", opts.trials, "Monte Carlo trials per row");
  cmd->add_option("--seed", opts.seed, "master seed");
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opts.output_path, "output path (default: stdout)");
  cmd->add_option("--workers", opts.workers,
                  "worker threads (0 = machine parallelism; env GEFLAB_WORKERS wins)");
}

int effective_workers(int flag_value) {
  if (const char* env = std::getenv("GEFLAB_WORKERS")) {
    int parsed = 0;
    const auto res = std::from_chars(env, env + std::string_view(env).size(), parsed);
    if (res.ec == std::errc{} && parsed >= 1) return parsed;
  }
  return flag_value;
}

std::optional<double> single_delta(const CommonOpts& opts) {
  if (opts.deltas.empty()) return std::nullopt;
  return opts.deltas.front();
}

// rows usable for a decay fit: p_hat strictly inside (0, 1)
std::vector<std::pair<double, double>> fit_points(
    const std::vector<McEstimate>& estimates) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& est : estimates)
    if (est.p_hat > 0.0 && est.p_hat < 1.0)
      pts.emplace_back(est.r, -std::log(est.p_hat));
  std::sort(pts.begin(), pts.end());
  return pts;
}

int run_event_command(EventSpec event, const CommonOpts& opts, bool with_fit,
                      bool also_abs_mean) {
  const int workers = effective_workers(opts.workers);
  OutputDoc doc(opts.format == "json");
  doc.begin_section(kGenericHeader);
  std::vector<McEstimate> estimates;
  for (double r : opts.r_values) {
    const McEstimate est = estimate_event_probability(event, r, single_delta(opts),
                                                      opts.trials, opts.seed, workers);
    append_estimate(doc, est);
    estimates.push_back(est);
    if (also_abs_mean) {
      const McEstimate abs_est = estimate_event_probability(
          EventSpec::AbsMeanHigh, r, std::nullopt, opts.trials, opts.seed, workers);
      append_estimate(doc, abs_est);
    }
  }
  if (with_fit && opts.r_values.size() >= 3) {
    const auto pts = fit_points(estimates);
    bool increasing = pts.size() >= 3;
    for (std::size_t i = 1; i < pts.size(); ++i)
      increasing = increasing && pts[i].first > pts[i - 1].first;
    if (increasing) {
      doc.begin_section(kFitHeader);
      append_fit(doc, fit_decay_exponent(pts));
    } else {
      std::cerr << "geflab: fit row skipped (need >= 3 distinct r with 0 < p_hat < 1)\n";
    }
  }
  return write_output(doc, opts.output_path);
}

int run_omega(const CommonOpts& opts) {
  const int workers = effective_workers(opts.workers);
  OutputDoc doc(opts.format == "json");
  doc.begin_section(kOmegaHeader);
  for (double r : opts.r_values) {
    const double logp = log_prob_omega(r);
    const int degree = conditional_omega_degree(r);
    const long long certified = parallel_map_reduce<long long>(
        opts.trials, workers, 0LL,
        [&](long long i) -> long long {
          const RngState rng = derive_trial_rng(opts.seed, 100, std::uint64_t(i));
          const TruncatedGef gef = sample_conditional_omega(r, rng, degree);
          const bool hole = classify_hole(gef, r).tag == HoleTag::Hole;
          const bool chain = verify_omega_chain(gef, r).chain_holds;
          return (hole && chain) ? 1 : 0;
        },
        [](long long a, long long b) { return a + b; });

    std::ostringstream row;
    row << format_double(r) << ',' << format_double(logp) << ',' << opts.trials << ','
        << certified;
    doc.add_csv(row.str());
    ordered_json obj;
    obj["r"] = r;
    obj["log_prob_omega"] = logp;
    obj["conditional_samples"] = opts.trials;
    obj["holes_certified"] = certified;
    doc.add_json(std::move(obj));
  }
  return write_output(doc, opts.output_path);
}

int run_probe(const CommonOpts& opts, const std::string& placement_name) {
  ProbePlacement placement = ProbePlacement::UniformRandom;
  if (placement_name == "centers") placement = ProbePlacement::Centers;
  if (placement_name == "corner") placement = ProbePlacement::CornerAdversarial;

  OutputDoc doc(opts.format == "json");
  doc.begin_section(kProbeHeader);
  std::uint64_t index = 0;
  for (double delta : opts.deltas) {
    for (double r : opts.r_values) {
      const RngState rng = derive_trial_rng(opts.seed, 101, index++);
      const PoissonProbe probe = make_poisson_probe(delta, r, placement, rng);
      const double dev = probe_deviation(probe);
      std::ostringstream row;
      row << format_double(delta) << ',' << format_double(r) << ','
          << format_double(probe.kappa) << ',' << probe.n_discs << ','
          << format_double(dev) << ',' << format_double(dev / std::sqrt(delta));
      doc.add_csv(row.str());
      ordered_json obj;
      obj["delta"] = delta;
      obj["r"] = r;
      obj["kappa"] = probe.kappa;
      obj["n_discs"] = probe.n_discs;
      obj["max_deviation"] = dev;
      obj["deviation_over_sqrt_delta"] = dev / std::sqrt(delta);
      doc.add_json(std::move(obj));
    }
  }
  return write_output(doc, opts.output_path);
}

int run_fit_file(const CommonOpts& opts, const std::string& input,
                 const std::string& event_filter) {
  std::ifstream in(input);
  if (!in) {
    std::cerr << "geflab: cannot open input file: " << input << "\n";
    return 1;
  }
  std::vector<std::pair<double, double>> pts;
  std::string event_seen;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("event,", 0) == 0 || line.rfind("r,", 0) == 0)
      continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() < 13 || fields[0] == "fit") continue;
    if (!event_filter.empty() && fields[0] != event_filter) continue;
    if (event_seen.empty()) event_seen = fields[0];
    if (fields[0] != event_seen) {
      std::cerr << "geflab: mixed events in input; use --event to select one\n";
      return 1;
    }
    try {
      const double r = std::stod(fields[1]);
      const double p_hat = std::stod(fields[6]);
      if (p_hat > 0.0 && p_hat < 1.0) pts.emplace_back(r, -std::log(p_hat));
    } catch (const std::exception&) {
      std::cerr << "geflab: malformed row: " << line << "\n";
      return 1;
    }
  }
  std::sort(pts.begin(), pts.end());
  OutputDoc doc(opts.format == "json");
  doc.begin_section(kFitHeader);
  append_fit(doc, fit_decay_exponent(pts));
  return write_output(doc, opts.output_path);
}

int run_sample(const CommonOpts& opts, bool dump_zeros) {
  const double r = opts.r_values.front();
  const TruncatedGef gef = sample_gef(r, derive_trial_rng(opts.seed, 0, 0));
  ordered_json j = gef_to_json(gef);
  if (dump_zeros) j["zeros"] = zeros_to_json(find_zeros(gef, r));
  // single-object JSON dump regardless of --format
  if (opts.output_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::ofstream out(opts.output_path, std::ios::binary);
  if (!out) {
    std::cerr << "geflab: cannot open output file: " << opts.output_path << "\n";
    return 1;
  }
  out << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"geflab: zero statistics of the Gaussian entire function"};
  app.require_subcommand(1);

  CommonOpts holes_opts, counts_opts, logm_opts, circlemean_opts, jensen_opts,
      omega_opts, probe_opts, fit_opts, sample_opts;

  auto* holes = app.add_subcommand("holes", "hole probability per radius, plus decay fit");
  add_common(holes, holes_opts);

  auto* counts = app.add_subcommand("counts", "zero-count deviation probability");
  add_common(counts, counts_opts);
  counts->add_option("--delta", counts_opts.deltas, "deviation threshold in (0, 1/4]")
      ->delimiter(',')
      ->required();

  auto* logm = app.add_subcommand("logm", "log max-modulus deviation probability");
  add_common(logm, logm_opts);
  logm->add_option("--delta", logm_opts.deltas, "deviation threshold in (0, 1/4]")
      ->delimiter(',')
      ->required();

  auto* circlemean =
      app.add_subcommand("circlemean", "low circle-mean and high |log| mean events");
  add_common(circlemean, circlemean_opts);
  circlemean
      ->add_option("--delta", circlemean_opts.deltas, "deviation threshold in (0, 1/4]")
      ->delimiter(',')
      ->required();

  auto* jensen = app.add_subcommand("jensen", "Jensen identity residual sweep");
  add_common(jensen, jensen_opts);

  auto* omega = app.add_subcommand(
      "omega", "exact log P(Omega_r) plus conditional-sample verification");
  add_common(omega, omega_opts);
  omega_opts.trials = 100;

  auto* probe = app.add_subcommand("probe", "Poisson-kernel probe deviation sweep");
  add_common(probe, probe_opts);
  probe->add_option("--delta", probe_opts.deltas, "delta sweep list")
      ->delimiter(',')
      ->required();
  std::string placement = "random";
  probe->add_option("--placement", placement, "probe point placement")
      ->check(CLI::IsMember({"random", "centers", "corner"}));

  auto* fit = app.add_subcommand("fit", "offline decay fit of a holes/counts CSV");
  add_common(fit, fit_opts, /*wants_r=*/false);
  std::string fit_input;
  std::string fit_event;
  fit->add_option("--input", fit_input, "CSV produced by holes/counts/logm/circlemean")
      ->required();
  fit->add_option("--event", fit_event, "event name to select from the input");

  auto* sample = app.add_subcommand("sample", "dump one sampled gef as JSON");
  add_common(sample, sample_opts);
  bool dump_zeros = false;
  sample->add_flag("--dump-zeros", dump_zeros, "include located zeros of the sample");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::cout << app.help();
      return 0;
    }
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  const auto validate = [](const CommonOpts& o, bool stochastic) -> const char* {
    if (o.r_values.empty()) return "at least one --r value is required";
    for (double r : o.r_values)
      if (!(r > 0.0)) return "--r values must be positive";
    if (stochastic && o.trials < 1) return "--trials must be >= 1";
    for (double d : o.deltas)
      if (!(d > 0.0) || d > 0.25) return "--delta must lie in (0, 1/4]";
    return nullptr;
  };

  try {
    const CommonOpts* active = nullptr;
    bool stochastic = true;
    if (holes->parsed()) active = &holes_opts;
    if (counts->parsed()) active = &counts_opts;
    if (logm->parsed()) active = &logm_opts;
    if (circlemean->parsed()) active = &circlemean_opts;
    if (jensen->parsed()) active = &jensen_opts;
    if (omega->parsed()) active = &omega_opts;
    if (probe->parsed()) {
      active = &probe_opts;
      stochastic = false;
    }
    if (sample->parsed()) {
      active = &sample_opts;
      stochastic = false;
    }
    if (active) {
      if (const char* msg = validate(*active, stochastic)) {
        std::cerr << "geflab: " << msg << "\n";
        return 2;
      }
    }

    if (holes->parsed())
      return run_event_command(EventSpec::Hole, holes_opts, /*with_fit=*/true, false);
    if (counts->parsed())
      return run_event_command(EventSpec::CountDeviation, counts_opts, false, false);
    if (logm->parsed())
      return run_event_command(EventSpec::LogMDeviation, logm_opts, false, false);
    if (circlemean->parsed())
      return run_event_command(EventSpec::CircleMeanLow, circlemean_opts, false,
                               /*also_abs_mean=*/true);
    if (jensen->parsed())
      return run_event_command(EventSpec::JensenResidual, jensen_opts, false, false);
    if (omega->parsed()) return run_omega(omega_opts);
    if (probe->parsed()) return run_probe(probe_opts, placement);
    if (fit->parsed()) return run_fit_file(fit_opts, fit_input, fit_event);
    if (sample->parsed()) return run_sample(sample_opts, dump_zeros);
  } catch (const std::domain_error& e) {
    std::cerr << "geflab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "geflab: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace geflab::cli
