#pragma once

// Command-line front end. Kept out of ovl.hpp since it pulls in CLI11.
//
// Exit codes: 0 success, 2 malformed input data, 3 invalid flags or flag
// combination.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ovl/empirical.hpp"
#include "ovl/estimator.hpp"
#include "ovl/experiments.hpp"
#include "ovl/io.hpp"
#include "ovl/oracle.hpp"
#include "ovl/sampling.hpp"

namespace ovl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitBadFlags = 3;

class FlagError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Writes to --out when given, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw FlagError("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }
  bool is_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

inline OracleResult oracle_for(int case_id) {
  if (case_id == 1) return oracle_case1();
  if (case_id == 2) return oracle_case2();
  throw FlagError("unknown case " + std::to_string(case_id) + " (expected 1 or 2)");
}

}  // namespace detail

struct EstimateOptions {
  std::string input;
  std::size_t crossovers = 1;
  std::string algorithm = "dp";
  std::string format = "json";
  std::string out;
};

inline int cmd_estimate(const EstimateOptions& opt, std::ostream& out) {
  const auto algo = parse_algorithm(opt.algorithm);
  if (opt.format != "json" && opt.format != "csv")
    throw FlagError("unknown format '" + opt.format + "'");
  const auto samples = io::read_samples_csv(opt.input);
  const LabeledDataset ds(samples);
  EstimateResult r;
  try {
    r = estimate(ds, opt.crossovers, algo);
  } catch (const std::length_error& e) {
    throw FlagError(e.what());
  }
  detail::Sink sink(opt.out, out);
  if (opt.format == "csv") {
    io::write_estimate_csv(sink.get(), r);
  } else {
    const io::json config = {{"input", opt.input},
                             {"crossovers", opt.crossovers},
                             {"algorithm", opt.algorithm}};
    sink.get() << io::envelope("estimate", config, io::to_json(r)).dump(2) << '\n';
  }
  return kExitOk;
}

struct SimulateOptions {
  int case_id = 1;
  std::size_t n = 10000;
  std::uint64_t seed = 0;
  std::string out;
};

/// Writes a labeled sample CSV. The oracle values for the case go to `out`
/// when the CSV goes to a file, and to `err` otherwise.
inline int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  const auto truth = detail::oracle_for(opt.case_id);
  if (opt.n == 0) throw FlagError("--n must be >= 1");
  const auto cs = paper_case(opt.case_id);
  const auto samples = sample_labeled(cs.mixture, opt.n, opt.seed);
  detail::Sink sink(opt.out, out);
  io::write_samples_csv(sink.get(), samples);
  const io::json config = {{"case", opt.case_id}, {"n", opt.n}, {"seed", opt.seed}};
  (sink.is_file() ? out : err) << io::envelope("simulate", config, io::to_json(truth)).dump(2)
                               << '\n';
  return kExitOk;
}

struct SweepOptions {
  int case_id = 1;
  std::vector<std::size_t> sizes{100, 1000, 10000};
  std::size_t trials = 30;
  std::uint64_t seed = 0;
  std::string protocol = "nested";
  std::string algorithm = "dp";
  unsigned threads = 1;
  std::string out;
};

/// Trial table as CSV (to --out, or stdout) and a JSON summary (to stdout
/// when the table goes to a file, otherwise to `err`).
inline int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  detail::oracle_for(opt.case_id);
  ExperimentConfig cfg;
  cfg.case_spec = paper_case(opt.case_id);
  cfg.sizes = opt.sizes;
  cfg.trials = opt.trials;
  cfg.seed = opt.seed;
  if (opt.protocol == "nested")
    cfg.protocol = Protocol::nested;
  else if (opt.protocol == "independent")
    cfg.protocol = Protocol::independent;
  else
    throw FlagError("unknown protocol '" + opt.protocol + "'");
  cfg.algorithm = parse_algorithm(opt.algorithm);
  cfg.threads = opt.threads;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw FlagError(e.what());
  }

  std::vector<TrialRecord> records;
  try {
    records = run_sweep(cfg);
  } catch (const std::length_error& e) {
    throw FlagError(e.what());
  }
  detail::Sink sink(opt.out, out);
  io::write_trials_csv(sink.get(), records, cfg.case_spec.n_crossovers);

  io::json summaries = io::json::array();
  for (const auto& s : summarize(records)) summaries.push_back(io::to_json(s));
  const io::json config = {{"case", opt.case_id},   {"sizes", opt.sizes},
                           {"trials", opt.trials},  {"seed", opt.seed},
                           {"protocol", opt.protocol}, {"algorithm", opt.algorithm}};
  const io::json payload = {{"truth", io::to_json(cfg.case_spec.truth)},
                            {"summaries", std::move(summaries)}};
  (sink.is_file() ? out : err) << io::envelope("sweep", config, payload).dump(2) << '\n';
  return kExitOk;
}

inline int cmd_oracle(int case_id, std::ostream& out) {
  const auto truth = detail::oracle_for(case_id);
  const io::json config = {{"case", case_id}};
  out << io::envelope("oracle", config, io::to_json(truth)).dump(2) << '\n';
  return kExitOk;
}

/// Parses argv and dispatches to a subcommand. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Overlap coefficient estimation by best multi-way split"};
  app.name("ovl");
  app.require_subcommand(1);

  EstimateOptions est;
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate OVL from a labeled CSV");
  estimate_cmd->add_option("--input", est.input, "CSV file with header x,label")->required();
  estimate_cmd->add_option("--crossovers", est.crossovers, "Number of crossover points n");
  estimate_cmd->add_option("--algorithm", est.algorithm, "dp | exhaustive | min-rho")
      ->check(CLI::IsMember({"dp", "exhaustive", "min-rho"}));
  estimate_cmd->add_option("--format", est.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  estimate_cmd->add_option("--out", est.out, "Output file (default stdout)");

  SimulateOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Draw a labeled sample for a test case");
  simulate_cmd->add_option("--case", sim.case_id, "Test case 1 or 2")->required();
  simulate_cmd->add_option("--n", sim.n, "Number of samples");
  simulate_cmd->add_option("--seed", sim.seed, "Random seed");
  simulate_cmd->add_option("--out", sim.out, "Output CSV (default stdout)");

  SweepOptions sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the multi-trial convergence experiment");
  sweep_cmd->add_option("--case", sw.case_id, "Test case 1 or 2")->required();
  sweep_cmd->add_option("--sizes", sw.sizes, "Comma-separated, strictly increasing")
      ->delimiter(',');
  sweep_cmd->add_option("--trials", sw.trials, "Number of trials");
  sweep_cmd->add_option("--seed", sw.seed, "Master seed");
  sweep_cmd->add_option("--protocol", sw.protocol, "nested | independent")
      ->check(CLI::IsMember({"nested", "independent"}));
  sweep_cmd->add_option("--algorithm", sw.algorithm, "dp | exhaustive | min-rho")
      ->check(CLI::IsMember({"dp", "exhaustive", "min-rho"}));
  sweep_cmd->add_option("--threads", sw.threads, "Worker threads (0 = all cores)");
  sweep_cmd->add_option("--out", sw.out, "Trial CSV (default stdout)");

  int oracle_case = 1;
  auto* oracle_cmd = app.add_subcommand("oracle", "Print true crossovers and OVL of a case");
  oracle_cmd->add_option("--case", oracle_case, "Test case 1 or 2")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadFlags;
  }

  try {
    if (*estimate_cmd) return cmd_estimate(est, out);
    if (*simulate_cmd) return cmd_simulate(sim, out, err);
    if (*sweep_cmd) return cmd_sweep(sw, out, err);
    if (*oracle_cmd) return cmd_oracle(oracle_case, out);
  } catch (const io::InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const FlagError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadFlags;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadFlags;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitBadFlags;
}

}  // namespace ovl::cli
