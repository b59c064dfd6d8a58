#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "olk/core.hpp"
#include "olk/orlicz.hpp"
#include "olk/weights.hpp"

namespace olk {

using Json = nlohmann::ordered_json;

/// Malformed input; `what()` names the offending field.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Number or the strings "inf" / "infinity".
double real_from_json(const Json& j, const std::string& field);
Json real_to_json(double x);

/// {"breakpoints": [...], "values": [...]}, {"seq": [...]} or a bare array (a sequence).
StepFn stepfn_from_json(const Json& j, const std::string& field);
Json stepfn_to_json(const StepFn& f);
Seq seq_from_json(const Json& j, const std::string& field);
Json seq_to_json(const Seq& x);

OrliczFn phi_from_json(const Json& j, const std::string& field = "phi");
Json phi_to_json(const OrliczFn& phi);

Weight weight_from_json(const Json& j, const std::string& field = "weight");
Json weight_to_json(const Weight& w);

/// Parse text, turning syntax errors into SpecError with line and column.
Json parse_json(const std::string& text, const std::string& source);

/// 64-bit FNV-1a hash rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace olk
