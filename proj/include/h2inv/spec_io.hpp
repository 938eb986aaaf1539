#pragma once

#include <string>

#include "h2inv/inner_function.hpp"

namespace h2inv {

/// Parse or validation failure with the offending location. line/column are
/// 1-based for syntax errors; semantic violations carry the field path in
/// the message and line 0.
class spec_parse_error : public std::runtime_error {
public:
    spec_parse_error(const std::string& msg, int line, int column)
        : std::runtime_error(msg), line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Inner-function spec document:
/// {
///   "unimodular": {"re": 1.0, "im": 0.0},            // optional, default 1
///   "zeros": [{"re": 0.5, "im": 0.0, "mult": 1}],    // optional
///   "atoms": [{"angle_radians": 0.0, "mass": 1.0}],  // optional
///   "zero_generator": {"kind": "phi-orbit",
///                      "z0": {"re": 0.0, "im": 0.0}, "a": 0.5, "count": 40}
///   // or {"kind": "explicit-sequence", "points": [{"re":..., "im":...}]}
///   // "zero_generators": [...] accepts several
/// }
/// Unknown keys are rejected; invariant violations carry the field path.
InnerFunctionSpec parse_spec(const std::string& json_text);
InnerFunctionSpec load_spec(const std::string& path);

std::string spec_to_json(const InnerFunctionSpec& spec);
void save_spec(const InnerFunctionSpec& spec, const std::string& path);

}  // namespace h2inv
