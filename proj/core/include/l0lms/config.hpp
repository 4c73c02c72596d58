#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "l0lms/sim.hpp"

namespace l0lms {

/// Configuration file error with the 1-based line it was detected on
/// (line 0 for document-level problems such as a missing section).
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

// Parse a flat key=value experiment description. Shared [system], [signal]
// and [run] blocks apply to every [algorithm.<label>] block; systems are
// materialized with their canonical parameter-derived seed. Unknown keys,
// unparsable values and violated invariants raise ParseError.
std::vector<LabeledConfig> parse_config(const std::string& text);

// Canonical text form; parse_config(emit_config(c)) == c. The entries must
// share system, signal and run settings (which anything accepted by
// parse_config does); otherwise std::invalid_argument.
std::string emit_config(const std::vector<LabeledConfig>& configs);

}  // namespace l0lms
