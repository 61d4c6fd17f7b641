#include "fkg/cli.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "fkg/random.hpp"

namespace fkg::cli {

namespace {

using io::Json;

enum class Verdict { pass, violation, finding };

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::violation: return "violation";
    case Verdict::finding: return "finding";
  }
  return "pass";
}

struct Outcome {
  Verdict verdict = Verdict::pass;
  Json detail;
};

Verdict failed(Mode mode) { return mode == Mode::verify ? Verdict::violation : Verdict::finding; }

// In verify mode every check except the FKG test itself and the series
// identity needs the FKG hypothesis; a measure that lacks it is an input
// error rather than a counterexample.
bool require_fkg(const Measure& mu, Mode mode, bool known_fkg, const std::string& path) {
  if (known_fkg) return true;
  const FkgReport fkg = check_fkg(mu);
  if (!fkg.holds && mode == Mode::verify) {
    throw Error(path + ": measure violates the FKG condition at A=" + std::to_string(fkg.witness->a.bits) +
                ", B=" + std::to_string(fkg.witness->b.bits) + " (use --mode explore)");
  }
  return fkg.holds;
}

const Json& measure_json(const Json& item) {
  return item.is_object() && item.contains("measure") ? item.at("measure") : item;
}

std::string measure_path(const Json& item, const std::string& path) {
  return item.is_object() && item.contains("measure") ? path + ".measure" : path;
}

Outcome evaluate(Command check, const Json& item, const std::string& path, Mode mode, bool known_fkg) {
  Outcome out;
  switch (check) {
    case Command::check_fkg: {
      const Measure mu = io::measure_from_json(measure_json(item), measure_path(item, path));
      const FkgReport report = check_fkg(mu);
      out.detail = io::to_json(report);
      if (!report.holds) out.verdict = failed(mode);
      break;
    }
    case Command::en: {
      const Instance inst = io::instance_from_json(item, path);
      const bool fkg = require_fkg(inst.measure(), mode, known_fkg, path);
      const Rational value = e_n(inst);
      out.detail = {{"n", inst.n()}, {"fkg", fkg}, {"e_n", io::to_json(value)}, {"nonnegative", sgn(value) >= 0}};
      if (sgn(value) < 0) out.verdict = failed(mode);
      break;
    }
    case Command::chain: {
      const Instance inst = io::instance_from_json(item, path);
      const bool fkg = require_fkg(inst.measure(), mode, known_fkg, path);
      const ChainReport report = verify_chain(inst);
      out.detail = io::to_json(report);
      out.detail["fkg"] = fkg;
      if (!report.holds()) out.verdict = failed(mode);
      break;
    }
    case Command::lemma: {
      const Instance inst = io::instance_from_json(item, path);
      if (inst.n() != 3) throw Error(path + ".generators: lemma needs exactly 3 generators (a, b, c)");
      const bool fkg = require_fkg(inst.measure(), mode, known_fkg, path);
      const LemmaResult result = lemma_check(inst.measure(), inst.generator(1), inst.generator(2), inst.generator(3));
      out.detail = io::to_json(result);
      out.detail["fkg"] = fkg;
      if (!result.holds()) out.verdict = failed(mode);
      break;
    }
    case Command::series_identity:
    case Command::series_nonneg: {
      const Measure mu = io::measure_from_json(measure_json(item), path + ".measure");
      if (!item.is_object() || !item.contains("series")) throw Error(path + ": missing field \"series\"");
      const bool allow_signed = mode == Mode::explore;
      const FnSeries p = io::fn_series_from_json(item.at("series"), mu.ground(), path + ".series", allow_signed);
      if (check == Command::series_identity) {
        const IdentityResult result = verify_identity_e4(mu, p);
        out.detail = io::to_json(result);
        if (!result.holds) out.verdict = failed(mode);
      } else {
        const bool fkg = require_fkg(mu, mode, known_fkg, path);
        const NonnegResult result = check_nonneg_e2(mu, p);
        out.detail = io::to_json(result);
        out.detail["fkg"] = fkg;
        if (!result.holds) out.verdict = failed(mode);
      }
      break;
    }
    case Command::search:
      throw Error("search cannot be nested");
  }
  return out;
}

// One random case for `search`, as the same JSON a file would carry.
Json generate_case(const RunConfig& config, std::uint64_t trial) {
  const std::uint64_t seed = trial_seed(config.seed, trial);
  Rng rng(seed);
  const GroundSet ground(config.m);
  const std::uint64_t measure_seed = rng.next();
  const Measure mu = config.mode == Mode::verify ? random_log_supermodular(measure_seed, ground)
                                                 : random_measure(measure_seed, ground);
  const auto random_subset = [&] {
    return static_cast<std::uint32_t>(rng.uniform(0, static_cast<std::int64_t>(ground.table_size()) - 1));
  };
  switch (config.check) {
    case Command::check_fkg:
      return io::to_json(mu);
    case Command::en:
    case Command::chain:
    case Command::lemma: {
      const int n = config.check == Command::lemma ? 3 : config.n;
      Json gens = Json::array();
      for (int i = 0; i < n; ++i) gens.push_back(random_subset());
      return {{"measure", io::to_json(mu)}, {"generators", std::move(gens)}};
    }
    case Command::series_identity:
    case Command::series_nonneg: {
      const std::int64_t coef_lo = config.mode == Mode::verify ? 0 : -3;
      Json coeffs = Json::array();
      for (int d = 1; d <= config.degree; ++d) {
        Json comb = Json::array();
        const auto atoms = rng.uniform(0, 2);
        for (std::int64_t a = 0; a < atoms; ++a) {
          comb.push_back({{"coef", io::to_json(rng.rational(coef_lo, 4, 4))}, {"gen", random_subset()}});
        }
        coeffs.push_back(std::move(comb));
      }
      return {{"measure", io::to_json(mu)}, {"series", {{"D", config.degree}, {"coeffs", std::move(coeffs)}}}};
    }
    case Command::search:
      break;
  }
  throw Error("search cannot be nested");
}

Json config_echo(const RunConfig& config) {
  Json echo = {{"command", command_name(config.command)},
               {"mode", config.mode == Mode::verify ? "verify" : "explore"}};
  if (config.command == Command::search) {
    echo["check"] = command_name(config.check);
    echo["seed"] = config.seed;
    echo["trials"] = config.trials;
    echo["m"] = config.m;
    echo["n"] = config.n;
    echo["degree"] = config.degree;
  } else {
    echo["input"] = config.input;
  }
  return echo;
}

Json read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("--input: cannot open \"" + path + "\"");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error("--input: invalid JSON: " + std::string(e.what()));
  }
}

struct Totals {
  int passed = 0, violations = 0, findings = 0;

  void add(Verdict v) {
    if (v == Verdict::pass) ++passed;
    if (v == Verdict::violation) ++violations;
    if (v == Verdict::finding) ++findings;
  }
};

Json run_file(const RunConfig& config, Totals& totals) {
  const Json input = read_input(config.input);
  const bool many = input.is_array();
  std::vector<Json> items;
  if (many) {
    items.assign(input.begin(), input.end());
  } else {
    items.push_back(input);
  }
  if (items.empty()) throw Error("--input: no cases in file");
  Json results = Json::array();
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string path = many ? "input[" + std::to_string(i) + "]" : "input";
    Outcome o = evaluate(config.command, items[i], path, config.mode, false);
    totals.add(o.verdict);
    Json entry = {{"case", i}, {"verdict", verdict_name(o.verdict)}};
    if (items[i].is_object() && items[i].contains("name")) entry["name"] = items[i]["name"];
    entry["result"] = std::move(o.detail);
    results.push_back(std::move(entry));
  }
  return results;
}

Json run_search(const RunConfig& config, Totals& totals) {
  const auto trials = static_cast<std::size_t>(config.trials);
  std::vector<Outcome> outcomes(trials);
  std::vector<Json> cases(trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const bool known_fkg = config.mode == Mode::verify;

  auto worker = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      try {
        cases[t] = generate_case(config, t);
        outcomes[t] = evaluate(config.check, cases[t], "trial[" + std::to_string(t) + "]", config.mode, known_fkg);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(config.workers, static_cast<int>(trials)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  Json results = Json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    totals.add(outcomes[t].verdict);
    Json entry = {{"trial", t}, {"seed", trial_seed(config.seed, t)}, {"verdict", verdict_name(outcomes[t].verdict)}};
    if (outcomes[t].verdict != Verdict::pass) {
      entry["case"] = std::move(cases[t]);
      entry["result"] = std::move(outcomes[t].detail);
    }
    results.push_back(std::move(entry));
  }
  return results;
}

}  // namespace

std::optional<Command> command_from_name(const std::string& name) {
  if (name == "check-fkg") return Command::check_fkg;
  if (name == "en") return Command::en;
  if (name == "chain") return Command::chain;
  if (name == "lemma") return Command::lemma;
  if (name == "series-identity") return Command::series_identity;
  if (name == "series-nonneg") return Command::series_nonneg;
  if (name == "search") return Command::search;
  return std::nullopt;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::check_fkg: return "check-fkg";
    case Command::en: return "en";
    case Command::chain: return "chain";
    case Command::lemma: return "lemma";
    case Command::series_identity: return "series-identity";
    case Command::series_nonneg: return "series-nonneg";
    case Command::search: return "search";
  }
  return "";
}

RunConfig parse_args(const std::vector<std::string>& args, std::string* help) {
  CLI::App app{"Exact verification of FKG correlation inequalities", "fkgcheck"};
  RunConfig config;
  std::string command;
  std::string check = "en";
  std::string mode = "verify";
  bool no_timestamp = false;
  app.add_option("command", command,
                 "check-fkg | en | chain | lemma | series-identity | series-nonneg | search")
      ->required();
  app.add_option("check", check, "check driven by search (default: en)");
  app.add_option("--input", config.input, "JSON input file");
  app.add_option("--seed", config.seed, "64-bit seed for search");
  app.add_option("--trials", config.trials, "number of random trials for search");
  app.add_option("--m", config.m, "ground set size (1..12)");
  app.add_option("--n", config.n, "number of functions (1..8)");
  app.add_option("--degree", config.degree, "series truncation degree D (1..10)");
  app.add_option("--mode", mode, "verify | explore");
  app.add_option("--workers", config.workers, "worker threads for search");
  app.add_option("--output", config.output, "report path (default: stdout)");
  app.add_flag("--no-timestamp", no_timestamp, "omit elapsed time from the report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    if (help) *help = app.help();
    return config;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  const auto cmd = command_from_name(command);
  if (!cmd) throw ConfigError("command: unknown command \"" + command + "\"");
  config.command = *cmd;
  const auto chk = command_from_name(check);
  if (!chk || *chk == Command::search) throw ConfigError("check: unknown search check \"" + check + "\"");
  config.check = *chk;
  if (mode == "verify") {
    config.mode = Mode::verify;
  } else if (mode == "explore") {
    config.mode = Mode::explore;
  } else {
    throw ConfigError("--mode: expected verify or explore, got \"" + mode + "\"");
  }
  config.timestamp = !no_timestamp;
  return config;
}

void validate(const RunConfig& config) {
  if (config.m < 1 || config.m > kMaxGroundSize) throw ConfigError("--m: must be in [1, 12]");
  if (config.n < 1 || config.n > kMaxPartitionSize) throw ConfigError("--n: must be in [1, 8]");
  if (config.degree < 1 || config.degree > kMaxDegree) throw ConfigError("--degree: must be in [1, 10]");
  if (config.workers < 1) throw ConfigError("--workers: must be >= 1");
  if (config.command == Command::search) {
    if (config.trials < 1) throw ConfigError("--trials: must be >= 1");
  } else if (config.input.empty()) {
    throw ConfigError("--input: required for " + command_name(config.command));
  }
}

Json execute(const RunConfig& config, int& status) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  Totals totals;
  Json report = {{"config", config_echo(config)}};
  report["results"] = config.command == Command::search ? run_search(config, totals) : run_file(config, totals);
  report["totals"] = {{"cases", totals.passed + totals.violations + totals.findings},
                      {"passed", totals.passed},
                      {"violations", totals.violations},
                      {"findings", totals.findings}};
  status = totals.violations > 0 ? kExitViolation : kExitOk;
  report["status"] = status == kExitOk ? "ok" : "violation";
  if (config.timestamp) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  }
  return report;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  int status = kExitOk;
  Json report;
  try {
    report = execute(config, status);
  } catch (const Error& e) {
    err << "fkgcheck: " << e.what() << "\n";
    return kExitInputError;
  }
  if (config.output.empty()) {
    out << report.dump(2) << "\n";
  } else {
    std::ofstream file(config.output);
    if (!file) {
      err << "fkgcheck: --output: cannot write \"" << config.output << "\"\n";
      return kExitInputError;
    }
    file << report.dump(2) << "\n";
  }
  return status;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string help;
  RunConfig config;
  try {
    config = parse_args(args, &help);
  } catch (const ConfigError& e) {
    std::cerr << "fkgcheck: " << e.what() << "\n";
    return kExitInputError;
  }
  if (!help.empty()) {
    std::cout << help;
    return kExitOk;
  }
  return run(config, std::cout, std::cerr);
}

}  // namespace fkg::cli
