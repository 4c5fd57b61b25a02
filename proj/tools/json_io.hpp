#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "entmax/distributions.hpp"
#include "entmax/maximizer.hpp"
#include "entmax/residue.hpp"
#include "entmax/verification.hpp"

namespace entmax::io {

// Malformed or invalid input; the message names the line/column or field.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

using AnyConfig = std::variant<SumConfig<double>, SumConfig<Rational>>;

// Parses JSON text, reporting syntax errors as "line L, column C: ...".
nlohmann::json parse_json(const std::string& text);

// {"r": 2, "pmfs": [[...], ...]}. Entries are JSON numbers or strings such
// as "1/3" or "0.15". In the rational backend numbers are read from their
// shortest decimal form, so 0.15 becomes exactly 15/100.
AnyConfig config_from_json(const nlohmann::json& doc, Backend backend);

// {"coeffs": [...], "m": optional order}
AnySeq coeffs_from_json(const nlohmann::json& doc, Backend backend);

nlohmann::json to_json(const SumConfig<double>& config);
nlohmann::json to_json(const ClosedForm& form);
nlohmann::json to_json(const MaxReport& report);
nlohmann::json to_json(const CheckResult& result);
nlohmann::json to_json(const ParityEntropyReport& report);

// 17 significant digits.
std::string format_scalar(double x);

}  // namespace entmax::io
