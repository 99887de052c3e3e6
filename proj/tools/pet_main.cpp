// pet: Folner averages of polynomial unitary actions and their convergence
// instrumentation.  Subcommands: verify, run, metastable, gen.
//
// All arithmetic happens in the core library; this front end parses configs,
// schedules work, and formats CSV/JSON (doubles with 17 significant digits).

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "pet/convergence.hpp"
#include "pet/serialize.hpp"
#include "pet/verify.hpp"

namespace {

using pet::Json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct ConfigError {
  std::string pointer;
  std::string message;
};

const Json& require(const Json& root, const std::string& pointer, const char* type) {
  const Json* node = &root;
  std::string walked;
  std::size_t pos = 1;
  while (pos <= pointer.size()) {
    std::size_t slash = pointer.find('/', pos);
    std::string key = pointer.substr(pos, slash == std::string::npos ? std::string::npos
                                                                     : slash - pos);
    walked += "/" + key;
    if (!node->is_object() || !node->contains(key))
      throw ConfigError{walked, "missing required field"};
    node = &node->at(key);
    if (slash == std::string::npos) break;
    pos = slash + 1;
  }
  const std::string t = type;
  bool ok = (t == "object" && node->is_object()) || (t == "array" && node->is_array()) ||
            (t == "string" && node->is_string()) || (t == "number" && node->is_number()) ||
            (t == "integer" && node->is_number_integer()) || t == "any";
  if (!ok) throw ConfigError{pointer, std::string("expected ") + type};
  return *node;
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError{"", "cannot open config file '" + path + "'"};
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError{"", std::string("config is not valid JSON: ") + e.what()};
  }
  return j;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int thread_budget(int instances) {
  unsigned hw = std::thread::hardware_concurrency();
  int threads = static_cast<int>(hw ? hw : 1);
  if (const char* env = std::getenv("PET_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) threads = static_cast<int>(v);
  }
  return std::clamp(threads, 1, std::max(1, instances));
}

std::optional<pet::WreathParams> rep_params(const Json& cfg) {
  if (!cfg.contains("rep")) return std::nullopt;
  pet::WreathParams p;
  p.m = static_cast<int>(require(cfg, "/rep/m", "integer").get<std::int64_t>());
  p.n = static_cast<int>(require(cfg, "/rep/n", "integer").get<std::int64_t>());
  if (p.m < 2 || p.n < 2) throw ConfigError{"/rep", "m and n must both be >= 2"};
  return p;
}

int cmd_verify(const std::string& suite, bool as_json, std::uint64_t seed) {
  pet::verify::SuiteResult result;
  try {
    result = pet::verify::run_suite(suite, seed);
  } catch (const pet::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (as_json) {
    std::cout << result.to_json().dump(2) << "\n";
  } else {
    for (const auto& check : result.checks)
      std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name << " — " << check.detail
                << "\n";
  }
  return result.pass() ? 0 : kExitFail;
}

int cmd_run(const std::string& config_path, const std::string& out_path) {
  Json cfg = load_config(config_path);
  const Json& action_spec = require(cfg, "/action", "object");
  const Json& x_json = require(cfg, "/x", "array");
  const Json& schedule_json = require(cfg, "/n_values", "array");

  std::string folner = "z_initial_segments";
  if (cfg.contains("folner")) {
    folner = require(cfg, "/folner", "string").get<std::string>();
    if (folner != "z_initial_segments" && folner != "z_symmetric_intervals")
      throw ConfigError{"/folner", "unknown preset '" + folner + "'"};
  }

  std::vector<std::int64_t> schedule;
  for (const Json& n : schedule_json) {
    if (!n.is_number_integer() || n.get<std::int64_t>() < 0)
      throw ConfigError{"/n_values", "schedule entries must be integers >= 0"};
    schedule.push_back(n.get<std::int64_t>());
  }
  if (schedule.empty()) throw ConfigError{"/n_values", "schedule must be nonempty"};

  pet::UnitaryAction action = [&] {
    try {
      return pet::action_from_json(action_spec, rep_params(cfg));
    } catch (const pet::Error& e) {
      throw ConfigError{"/action", e.what()};
    }
  }();
  Eigen::VectorXd x = pet::vector_from_json(x_json);
  if (x.size() != action.dim())
    throw ConfigError{"/x", "vector dimension " + std::to_string(x.size()) +
                               " does not match the action dimension " +
                               std::to_string(action.dim())};

  std::int64_t lo = *std::min_element(schedule.begin(), schedule.end());
  std::int64_t hi = *std::max_element(schedule.begin(), schedule.end());

  pet::AverageSweep sweep(action, x, folner == "z_symmetric_intervals");
  std::vector<Eigen::VectorXd> window;
  window.reserve(static_cast<std::size_t>(hi - lo) + 1);
  for (std::int64_t n = 0; n <= hi; ++n) {
    Eigen::VectorXd av = sweep.next();
    if (n >= lo) window.push_back(std::move(av));
  }
  pet::PointNet net(lo, std::move(window));
  std::vector<double> spreads = pet::suffix_spreads(net);

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot open output file '" << out_path << "'\n";
    return kExitUsage;
  }
  out << "n,avg_norm,spread_from_n\n";
  for (std::int64_t n : schedule) {
    double norm = net.value(n).norm();
    double spread = spreads[static_cast<std::size_t>(n - lo)];
    out << n << "," << format_double(norm) << "," << format_double(spread) << "\n";
  }
  return 0;
}

int cmd_metastable(const std::string& config_path, const std::string& out_path) {
  Json cfg = load_config(config_path);
  double eps = require(cfg, "/eps", "number").get<double>();
  if (eps <= 0.0) throw ConfigError{"/eps", "eps must be > 0"};
  std::string sampling = require(cfg, "/sampling", "string").get<std::string>();
  std::int64_t bound = require(cfg, "/bound", "integer").get<std::int64_t>();
  if (bound < 0) throw ConfigError{"/bound", "bound must be >= 0"};
  std::int64_t start = cfg.contains("start")
                           ? require(cfg, "/start", "integer").get<std::int64_t>()
                           : 0;

  Json report;
  if (cfg.contains("action")) {
    // Single explicit instance.
    const Json& action_spec = require(cfg, "/action", "object");
    Eigen::VectorXd x = pet::vector_from_json(require(cfg, "/x", "array"));
    pet::UnitaryAction action = [&] {
      try {
        return pet::action_from_json(action_spec, rep_params(cfg));
      } catch (const pet::Error& e) {
        throw ConfigError{"/action", e.what()};
      }
    }();
    if (x.size() != action.dim()) throw ConfigError{"/x", "dimension mismatch"};
    pet::Sampling eta = [&] {
      try {
        return pet::Sampling::parse(sampling);
      } catch (const pet::FormatError& e) {
        throw ConfigError{"/sampling", e.what()};
      }
    }();
    auto sweep = std::make_shared<pet::AverageSweep>(action, x);
    auto last = std::make_shared<Eigen::VectorXd>();
    auto value = [sweep, last](std::int64_t j) {
      while (sweep->index() < j) *last = sweep->next();
      return *last;
    };
    pet::MetastabilityCertificate cert = pet::metastable_scan(value, start, bound, eps, eta);
    report = Json{{"eps", eps},
                  {"sampling", sampling},
                  {"bound", bound},
                  {"start", start},
                  {"all_found", cert.found},
                  {"aggregate_E", cert.found ? cert.witness : -1},
                  {"certificates", Json::array({pet::to_json(cert)})}};
  } else {
    pet::verify::MetastableExperiment exp;
    exp.eps = eps;
    exp.sampling = sampling;
    exp.bound = bound;
    exp.start = start;
    exp.instances =
        static_cast<int>(require(cfg, "/instances", "integer").get<std::int64_t>());
    if (exp.instances < 1) throw ConfigError{"/instances", "instance count must be >= 1"};
    exp.seed = cfg.contains("seed")
                   ? require(cfg, "/seed", "integer").get<std::uint64_t>()
                   : 42;
    if (cfg.contains("dim_min"))
      exp.dim_min = static_cast<int>(require(cfg, "/dim_min", "integer").get<std::int64_t>());
    if (cfg.contains("dim_max"))
      exp.dim_max = static_cast<int>(require(cfg, "/dim_max", "integer").get<std::int64_t>());
    try {
      report = pet::verify::run_metastable_experiment(exp, thread_budget(exp.instances));
    } catch (const pet::FormatError& e) {
      throw ConfigError{"/sampling", e.what()};
    }
  }

  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot open output file '" << out_path << "'\n";
      return kExitUsage;
    }
    out << report.dump(2) << "\n";
  }
  return 0;
}

int cmd_gen(const std::string& kind, const std::string& config_path, std::int64_t from,
            std::int64_t to) {
  if (to < from) {
    std::cerr << "error: --to must be >= --from\n";
    return kExitUsage;
  }
  Json spec;
  if (kind == "canonical_wreath") {
    // quadratic recurrence with a = alpha_0, b = beta, c = identity
    spec = Json{{"kind", "quadratic_recurrence"},
                {"a", pet::to_json(pet::LamplighterElement::alpha(0))},
                {"b", pet::to_json(pet::LamplighterElement::beta())},
                {"c", pet::to_json(pet::LamplighterElement())}};
  } else if (kind == "config") {
    if (config_path.empty()) {
      std::cerr << "error: --kind config requires --config\n";
      return kExitUsage;
    }
    spec = require(load_config(config_path), "/action", "object");
  } else {
    std::cerr << "error: unknown --kind '" << kind << "' (canonical_wreath or config)\n";
    return kExitUsage;
  }

  if (pet::spec_uses_lamplighter(spec)) {
    auto seq = pet::lamplighter_sequence_from_json(spec);
    for (std::int64_t j = from; j <= to; ++j)
      std::cout << j << "\t" << pet::to_json(seq(j)).dump() << "\n";
  } else {
    auto seq = pet::orthogonal_sequence_from_json(spec);
    for (std::int64_t j = from; j <= to; ++j)
      std::cout << j << "\t" << pet::matrix_to_json(seq(j).matrix()).dump() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Folner averages of polynomial unitary actions"};
  app.require_subcommand(1);

  std::string suite;
  bool as_json = false;
  std::uint64_t seed = 42;
  CLI::App* verify = app.add_subcommand("verify", "run a named invariant suite");
  verify->add_option("suite", suite, "group-laws|leibman|measures|descent|dct|all")
      ->required();
  verify->add_flag("--json", as_json, "emit a machine-readable JSON summary");
  verify->add_option("--seed", seed, "seed for randomized checks (default 42)");

  std::string run_config, run_out;
  CLI::App* run = app.add_subcommand("run", "average sweep to CSV");
  run->add_option("--config", run_config, "experiment config (JSON)")->required();
  run->add_option("--out", run_out, "output CSV path")->required();

  std::string meta_config, meta_out;
  CLI::App* meta = app.add_subcommand("metastable", "metastability certificates (JSON)");
  meta->add_option("--config", meta_config, "experiment config (JSON)")->required();
  meta->add_option("--out", meta_out, "output path (default stdout)");

  std::string gen_kind = "canonical_wreath", gen_config;
  std::int64_t gen_from = -5, gen_to = 10;
  CLI::App* gen = app.add_subcommand("gen", "print a sequence table");
  gen->add_option("--kind", gen_kind, "canonical_wreath|config");
  gen->add_option("--config", gen_config, "config holding an /action spec");
  gen->add_option("--from", gen_from, "first index (default -5)");
  gen->add_option("--to", gen_to, "last index (default 10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(suite, as_json, seed);
    if (*run) return cmd_run(run_config, run_out);
    if (*meta) return cmd_metastable(meta_config, meta_out);
    if (*gen) return cmd_gen(gen_kind, gen_config, gen_from, gen_to);
  } catch (const ConfigError& e) {
    if (e.pointer.empty())
      std::cerr << "config error: " << e.message << "\n";
    else
      std::cerr << "config error at " << e.pointer << ": " << e.message << "\n";
    return kExitUsage;
  } catch (const pet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
