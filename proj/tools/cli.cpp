#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "entmax/maximizer.hpp"
#include "entmax/residue.hpp"
#include "entmax/roots.hpp"
#include "entmax/verification.hpp"
#include "json_io.hpp"

namespace entmax::cli {

namespace {

using nlohmann::json;

enum class Output { kJson, kCsv };

struct Options {
  std::string input_path;
  std::optional<std::size_t> n;
  std::optional<std::size_t> r;
  std::optional<std::size_t> r_mod;
  std::optional<std::size_t> m;
  std::size_t starts = 32;
  std::uint64_t seed = 0;
  std::optional<double> grid_step;
  std::optional<Backend> backend;
  std::optional<Output> output;
  std::vector<std::string> claims;
  std::size_t trials = 10000;
  std::size_t n_max = 8;
  std::size_t theorem_n_max = 8;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t threads_from_env() {
  const char* raw = std::getenv("ENTMAX_THREADS");
  if (raw == nullptr || *raw == '\0') return 1;
  try {
    std::size_t pos = 0;
    const long value = std::stol(raw, &pos);
    if (pos != std::string(raw).size() || value < 0) throw std::invalid_argument("negative");
    return static_cast<std::size_t>(value);
  } catch (const std::exception&) {
    throw ValidationError("ENTMAX_THREADS must be a nonnegative integer, got '" + std::string(raw) + "'");
  }
}

json read_input(const Options& opt) {
  if (opt.input_path.empty()) throw ValidationError("--input is required for this command");
  std::ifstream in(opt.input_path);
  if (!in) throw ValidationError("cannot open input file '" + opt.input_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return io::parse_json(buf.str());
}

std::size_t require(const std::optional<std::size_t>& v, const char* flag) {
  if (!v) throw ValidationError(std::string(flag) + " is required for this command");
  return *v;
}

void emit_json(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

template <class T>
json exact_or_float(const CoeffSeq<T>& seq) {
  json arr = json::array();
  for (const auto& c : seq.coeffs()) {
    if constexpr (std::is_same_v<T, Rational>) {
      arr.push_back(c.str());
    } else {
      arr.push_back(c);
    }
  }
  return arr;
}

void write_law_csv(std::ostream& out, const CoeffSeq<double>& law,
                   const std::vector<std::string>* residue_labels) {
  out << "value,probability" << (residue_labels ? ",residue_class" : "") << "\n";
  for (std::size_t s = 0; s < law.size(); ++s) {
    out << s << "," << io::format_scalar(law[s]);
    if (residue_labels) out << "," << (*residue_labels)[s];
    out << "\n";
  }
}

template <class T>
CoeffSeq<double> float_view(const CoeffSeq<T>& seq) {
  if constexpr (std::is_same_v<T, Rational>) {
    return to_float(seq);
  } else {
    return seq;
  }
}

// ---- commands --------------------------------------------------------------

int cmd_sum(const Options& opt, std::ostream& out) {
  const auto config = io::config_from_json(read_input(opt), opt.backend.value_or(Backend::kFloat));
  return std::visit(
      [&](const auto& cfg) {
        const auto law = sum_law(cfg);
        if (opt.output.value_or(Output::kCsv) == Output::kCsv) {
          write_law_csv(out, float_view(law), nullptr);
        } else {
          emit_json(out, json{{"n", cfg.n()}, {"r", cfg.r()}, {"law", exact_or_float(law)}});
        }
        return kExitOk;
      },
      config);
}

int cmd_entropy(const Options& opt, std::ostream& out) {
  const auto config = io::config_from_json(read_input(opt), opt.backend.value_or(Backend::kFloat));
  const double h = std::visit([](const auto& cfg) { return shannon_entropy(sum_law(cfg)); }, config);
  if (opt.output.value_or(Output::kJson) == Output::kCsv) {
    out << "entropy_bits\n" << io::format_scalar(h) << "\n";
  } else {
    emit_json(out, json{{"entropy_bits", h}});
  }
  return kExitOk;
}

int cmd_split(const Options& opt, std::ostream& out) {
  const auto config = io::config_from_json(read_input(opt), opt.backend.value_or(Backend::kFloat));
  return std::visit(
      [&](const auto& cfg) {
        const std::size_t r_mod = opt.r_mod.value_or(cfg.r() >= 2 ? cfg.r() : 2);
        const auto law = sum_law(cfg);
        const auto split = residue_decompose(law, r_mod);
        if (opt.output.value_or(Output::kCsv) == Output::kCsv) {
          std::vector<std::string> labels(law.size());
          for (std::size_t s = 0; s < law.size(); ++s) labels[s] = std::to_string(s % r_mod);
          write_law_csv(out, float_view(law), &labels);
          return kExitOk;
        }
        using T = std::decay_t<decltype(split.part_masses[0])>;
        json parts = json::array();
        json masses = json::array();
        json entropies = json::array();
        for (std::size_t j = 0; j < r_mod; ++j) {
          parts.push_back(exact_or_float(split.parts[j]));
          masses.push_back(to_double(split.part_masses[j]));
          entropies.push_back(split.part_masses[j] == T(0)
                                  ? json(nullptr)
                                  : json(shannon_entropy(split.parts[j])));
        }
        json doc{{"r_mod", r_mod}, {"parts", parts}, {"part_masses", masses},
                 {"conditional_entropies", entropies}};
        if (cfg.r() == 2 && r_mod == 2) doc["parity_report"] = io::to_json(conditional_entropy_report(cfg));
        emit_json(out, doc);
        return kExitOk;
      },
      config);
}

template <class T>
json structure_report(const CoeffSeq<T>& seq, std::size_t m) {
  json doc;
  doc["coeffs"] = exact_or_float(seq);
  doc["order"] = m;
  const auto violations = ulc_violations(seq, m);
  doc["ulc"] = violations.empty();
  doc["ulc_violations"] = violations;
  doc["log_concave"] = is_log_concave(seq);
  if (seq.all_zero()) {
    doc["real_rooted"] = nullptr;
    doc["hurwitz_stable"] = nullptr;
  } else {
    doc["real_rooted"] = real_rooted(seq);
    doc["hurwitz_stable"] = hurwitz_stable(seq);
  }
  return doc;
}

int cmd_check_ulc(const Options& opt, std::ostream& out) {
  const json doc = read_input(opt);
  const Backend backend = opt.backend.value_or(Backend::kRational);
  if (doc.is_object() && doc.contains("coeffs")) {
    const AnySeq seq = io::coeffs_from_json(doc, backend);
    emit_json(out, std::visit(
                       [&](const auto& s) {
                         return structure_report(s, opt.m.value_or(s.declared_order()));
                       },
                       seq));
    return kExitOk;
  }
  const auto config = io::config_from_json(doc, backend);
  std::visit(
      [&](const auto& cfg) {
        const std::size_t r_mod = opt.r_mod.value_or(cfg.r() >= 2 ? cfg.r() : 2);
        const auto split = residue_decompose(sum_law(cfg), r_mod);
        json parts = json::array();
        for (const auto& part : split.parts) parts.push_back(structure_report(part, part.declared_order()));
        emit_json(out, json{{"backend", to_string(backend)}, {"n", cfg.n()}, {"r", cfg.r()},
                            {"r_mod", r_mod}, {"parts", parts}});
      },
      config);
  return kExitOk;
}

int cmd_bound(const Options& opt, std::ostream& out) {
  const ClosedForm form = closed_form(require(opt.n, "--n"), require(opt.r, "--r"));
  if (opt.output.value_or(Output::kJson) == Output::kCsv) {
    out << "n,r,w0,bound_bits\n"
        << form.n << "," << form.r << "," << io::format_scalar(form.w0) << ","
        << io::format_scalar(form.bound_bits) << "\n";
  } else {
    emit_json(out, io::to_json(form));
  }
  return kExitOk;
}

int cmd_attain(const Options& opt, std::ostream& out) {
  const std::size_t n = require(opt.n, "--n");
  const std::size_t r = opt.r.value_or(2);
  const auto config = conjectured_attaining_config(n, r);
  json doc = io::to_json(config);
  doc["entropy_bits"] = shannon_entropy(sum_law(config));
  doc["bound_bits"] = conjectured_max(n, r);
  if (r >= 2) doc["w0"] = optimal_weight(n, r);
  emit_json(out, doc);
  return kExitOk;
}

int cmd_optimize(const Options& opt, std::ostream& out) {
  const std::size_t n = require(opt.n, "--n");
  const std::size_t r = require(opt.r, "--r");
  if (opt.grid_step) {
    const GridResult grid = brute_force_grid(n, r, *opt.grid_step);
    json doc = io::to_json(grid.best_config);
    doc["best_entropy"] = grid.best_entropy;
    doc["entropy_bits"] = grid.best_entropy;
    doc["grid_step"] = *opt.grid_step;
    doc["configs_evaluated"] = grid.configs_evaluated;
    doc["bound_bits"] = conjectured_max(n, r);
    emit_json(out, doc);
    return kExitOk;
  }
  OptimizerOptions options;
  options.threads = threads_from_env();
  json doc = io::to_json(numeric_maximize(n, r, opt.starts, opt.seed, options));
  doc["entropy_bits"] = doc["numeric_best"];
  emit_json(out, doc);
  return kExitOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  VerifyOptions options;
  options.trials = opt.trials;
  options.n_max = opt.n_max;
  options.theorem_n_max = opt.theorem_n_max;
  options.starts = opt.starts;
  options.seed = opt.seed;
  options.optimizer.threads = threads_from_env();
  const auto ids = opt.claims.empty() ? claim_ids(options) : opt.claims;
  for (const auto& id : ids) {
    // Resolve every id before running anything.
    const bool known = id == "example-r3" || id == "prop-parity" || id == "fig-1" ||
                       (id.rfind("thm-main-n", 0) == 0 && id.size() > 10 &&
                        id.find_first_not_of("0123456789", 10) == std::string::npos &&
                        id.size() <= 14 && std::stoul(id.substr(10)) >= 1);
    if (!known) throw ValidationError("unknown claim id '" + id + "'");
  }
  json reports = json::array();
  bool all_passed = true;
  for (const auto& id : ids) {
    const CheckResult result = run_claim(id, options);
    all_passed = all_passed && result.passed;
    reports.push_back(io::to_json(result));
  }
  emit_json(out, reports);
  return all_passed ? kExitOk : kExitCheckFailed;
}

int cmd_figure(const Options& opt, std::ostream& out) {
  const std::size_t n = opt.n.value_or(4);
  const FigureData fig = figure_distribution(n);
  if (opt.output.value_or(Output::kCsv) == Output::kCsv) {
    std::vector<std::string> labels;
    for (std::size_t c : fig.residue_class) labels.emplace_back(c == 0 ? "even" : "odd");
    write_law_csv(out, fig.pmf, &labels);
  } else {
    json classes = json::array();
    for (std::size_t c : fig.residue_class) classes.push_back(c == 0 ? "even" : "odd");
    emit_json(out, json{{"n", n}, {"w0", optimal_weight(n, 2)}, {"law", fig.pmf.values()},
                        {"residue_class", classes}});
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact laws and entropies of sums of independent finite-alphabet variables"};
  app.name("entmax");
  app.require_subcommand(1);
  Options opt;

  const std::map<std::string, Backend> backends{{"rational", Backend::kRational},
                                                {"float", Backend::kFloat}};
  const std::map<std::string, Output> outputs{{"json", Output::kJson}, {"csv", Output::kCsv}};

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input_path, "PMF JSON file")->required();
  };
  auto add_format = [&](CLI::App* sub, bool with_backend) {
    if (with_backend) {
      sub->add_option("--backend", opt.backend, "Arithmetic backend")
          ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
    }
    sub->add_option("--output", opt.output, "Output format")
        ->transform(CLI::CheckedTransformer(outputs, CLI::ignore_case));
  };

  auto* sum = app.add_subcommand("sum", "Law of S_n for the configuration in --input");
  add_input(sum);
  add_format(sum, true);
  auto* entropy = app.add_subcommand("entropy", "Entropy of S_n in bits");
  add_input(entropy);
  add_format(entropy, true);
  auto* split = app.add_subcommand("split", "Residue-class split of the law of S_n");
  add_input(split);
  add_format(split, true);
  split->add_option("--r-mod", opt.r_mod, "Modulus (default r)")->check(CLI::Range(2, 1 << 20));
  auto* check = app.add_subcommand("check-ulc", "ULC, log-concavity, real roots, stability");
  add_input(check);
  add_format(check, true);
  check->add_option("--r-mod", opt.r_mod, "Modulus (default r)")->check(CLI::Range(2, 1 << 20));
  check->add_option("--m", opt.m, "ULC order for a coefficient file");
  auto* bound = app.add_subcommand("bound", "Closed-form weight and maximum");
  bound->add_option("--n", opt.n, "Number of summands")->required()->check(CLI::PositiveNumber);
  bound->add_option("--r", opt.r, "Largest symbol")->required()->check(CLI::PositiveNumber);
  add_format(bound, false);
  auto* attain = app.add_subcommand("attain", "Attaining configuration");
  attain->add_option("--n", opt.n, "Number of summands")->required()->check(CLI::PositiveNumber);
  attain->add_option("--r", opt.r, "Largest symbol (default 2)")->check(CLI::PositiveNumber);
  add_format(attain, false);
  auto* optimize = app.add_subcommand("optimize", "Numerical maximization of H(S_n)");
  optimize->add_option("--n", opt.n, "Number of summands")->required()->check(CLI::PositiveNumber);
  optimize->add_option("--r", opt.r, "Largest symbol")->required()->check(CLI::PositiveNumber);
  optimize->add_option("--starts", opt.starts, "Random starts")->check(CLI::PositiveNumber);
  optimize->add_option("--seed", opt.seed, "Seed");
  optimize->add_option("--grid-step", opt.grid_step, "Brute-force grid spacing instead");
  add_format(optimize, true);
  auto* verify = app.add_subcommand("verify", "Reproduce the checkable claims");
  verify->add_option("--claim", opt.claims, "Claim id (repeatable); default all");
  verify->add_option("--trials", opt.trials, "Random configs per n for prop-parity")
      ->check(CLI::PositiveNumber);
  verify->add_option("--n-max", opt.n_max, "Largest n for prop-parity")->check(CLI::PositiveNumber);
  verify->add_option("--theorem-n-max", opt.theorem_n_max, "Largest n for thm-main claims")
      ->check(CLI::PositiveNumber);
  verify->add_option("--starts", opt.starts, "Optimizer starts")->check(CLI::PositiveNumber);
  verify->add_option("--seed", opt.seed, "Seed");
  add_format(verify, true);
  auto* figure = app.add_subcommand("figure", "Plot-ready law of S_n under the attaining config");
  figure->add_option("--n", opt.n, "Number of summands (default 4)")->check(CLI::PositiveNumber);
  add_format(figure, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (sum->parsed()) return cmd_sum(opt, out);
    if (entropy->parsed()) return cmd_entropy(opt, out);
    if (split->parsed()) return cmd_split(opt, out);
    if (check->parsed()) return cmd_check_ulc(opt, out);
    if (bound->parsed()) return cmd_bound(opt, out);
    if (attain->parsed()) return cmd_attain(opt, out);
    if (optimize->parsed()) return cmd_optimize(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out);
    if (figure->parsed()) return cmd_figure(opt, out);
  } catch (const io::InputError& e) {
    err << "error: " << opt.input_path << ": " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const GridTooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace entmax::cli
