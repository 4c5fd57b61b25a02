#include "json_io.hpp"

#include <cstdio>
#include <sstream>

namespace entmax::io {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Rational exact_entry(const json& v, const std::string& field) {
  try {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    // Shortest round-trip decimal of the double, read exactly.
    if (v.is_number_float()) return Rational::parse(v.dump());
  } catch (const DomainError& e) {
    throw InputError(field + ": " + e.what());
  }
  throw InputError(field + ": expected a number or a fraction string, got " + std::string(v.type_name()));
}

double float_entry(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return exact_entry(v, field).to_double();
  throw InputError(field + ": expected a number or a fraction string, got " + std::string(v.type_name()));
}

template <class T>
T entry(const json& v, const std::string& field) {
  if constexpr (std::is_same_v<T, Rational>) {
    return exact_entry(v, field);
  } else {
    return float_entry(v, field);
  }
}

template <class T>
SumConfig<T> typed_config(const json& doc) {
  if (!doc.is_object()) throw InputError("top level: expected an object with \"r\" and \"pmfs\"");
  if (!doc.contains("r")) throw InputError("r: missing field");
  if (!doc.contains("pmfs")) throw InputError("pmfs: missing field");
  const json& jr = doc["r"];
  if (!jr.is_number_integer() || jr.get<long>() < 1) {
    throw InputError("r: expected an integer >= 1");
  }
  const auto r = static_cast<std::size_t>(jr.get<long>());
  const json& jp = doc["pmfs"];
  if (!jp.is_array() || jp.empty()) throw InputError("pmfs: expected a nonempty array");

  std::vector<FinitePmf<T>> pmfs;
  for (std::size_t i = 0; i < jp.size(); ++i) {
    const std::string field = "pmfs[" + std::to_string(i) + "]";
    if (!jp[i].is_array()) throw InputError(field + ": expected an array");
    if (jp[i].size() != r + 1) {
      throw InputError(field + ": expected " + std::to_string(r + 1) + " entries, got " +
                       std::to_string(jp[i].size()));
    }
    std::vector<T> probs;
    for (std::size_t x = 0; x < jp[i].size(); ++x) {
      probs.push_back(entry<T>(jp[i][x], field + "[" + std::to_string(x) + "]"));
    }
    try {
      pmfs.emplace_back(std::move(probs));
    } catch (const DomainError& e) {
      throw InputError(field + ": " + e.what());
    }
  }
  return SumConfig<T>(std::move(pmfs));
}

template <class T>
CoeffSeq<T> typed_coeffs(const json& doc) {
  const json& jc = doc["coeffs"];
  if (!jc.is_array() || jc.empty()) throw InputError("coeffs: expected a nonempty array");
  std::vector<T> c;
  for (std::size_t k = 0; k < jc.size(); ++k) {
    c.push_back(entry<T>(jc[k], "coeffs[" + std::to_string(k) + "]"));
  }
  std::size_t order = c.size() - 1;
  if (doc.contains("m")) {
    if (!doc["m"].is_number_integer() || doc["m"].get<long>() < 0) {
      throw InputError("m: expected a nonnegative integer");
    }
    order = static_cast<std::size_t>(doc["m"].get<long>());
  }
  try {
    return CoeffSeq<T>(std::move(c), order);
  } catch (const DomainError& e) {
    throw InputError(std::string("coeffs: ") + e.what());
  }
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte);
    std::ostringstream msg;
    msg << "line " << line << ", column " << column << ": malformed JSON (" << e.what() << ")";
    throw InputError(msg.str());
  }
}

AnyConfig config_from_json(const json& doc, Backend backend) {
  if (backend == Backend::kRational) return typed_config<Rational>(doc);
  return typed_config<double>(doc);
}

AnySeq coeffs_from_json(const json& doc, Backend backend) {
  if (!doc.is_object() || !doc.contains("coeffs")) throw InputError("coeffs: missing field");
  if (backend == Backend::kRational) return typed_coeffs<Rational>(doc);
  return typed_coeffs<double>(doc);
}

json to_json(const SumConfig<double>& config) {
  json pmfs = json::array();
  for (const auto& p : config.pmfs()) pmfs.push_back(std::vector<double>(p.probs().begin(), p.probs().end()));
  return json{{"r", config.r()}, {"pmfs", std::move(pmfs)}};
}

json to_json(const ClosedForm& form) {
  return json{{"n", form.n}, {"r", form.r}, {"w0", form.w0}, {"bound_bits", form.bound_bits}};
}

json to_json(const MaxReport& report) {
  json out = to_json(report.numeric_config);
  out["closed_form"] = to_json(report.closed_form);
  out["attaining_entropy"] = report.attaining_entropy;
  out["numeric_best"] = report.numeric_best;
  out["gap_bits"] = report.gap_bits;
  out["starts_used"] = report.starts_used;
  out["seed"] = report.seed;
  out["best_start"] = report.best_start;
  out["unconverged_starts"] = report.unconverged_starts;
  return out;
}

json to_json(const CheckResult& result) {
  json details = json::object();
  for (const auto& [key, value] : result.details) details[key] = value;
  return json{{"claim_id", result.claim_id}, {"passed", result.passed}, {"details", std::move(details)}};
}

json to_json(const ParityEntropyReport& report) {
  return json{{"w", report.w},
              {"h_even", report.h_even},
              {"h_odd", report.h_odd},
              {"bound_even", report.bound_even},
              {"bound_odd", report.bound_odd},
              {"even_class_empty", report.even_class_empty},
              {"odd_class_empty", report.odd_class_empty}};
}

std::string format_scalar(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace entmax::io
