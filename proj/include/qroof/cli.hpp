#pragma once

// Command-line front end and its file formats.
//
// Channel file (UTF-8 JSON):
//   {"name": "optional", "kraus": [M_1, ..., M_m]},  1 <= m <= 8,
// each M a row-major 2x2 matrix of [re, im] pairs:
//   [[[re, im], [re, im]], [[re, im], [re, im]]]
//
// State file: {"bloch": [x, y, z]} or {"matrix": M}.
// State flag: --state "bloch:x,y,z".

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qroof/channels.hpp"
#include "qroof/linalg2.hpp"

namespace qroof::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kConstruction = 3,
  kNumerical = 4,
};

/// Thrown for malformed input files, flags and grid specs.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

KrausChannel channel_from_json(const nlohmann::json& j);
nlohmann::json channel_to_json(const KrausChannel& channel);
DensityOp state_from_json(const nlohmann::json& j);
DensityOp state_from_flag(const std::string& spec);

/// "start:stop:steps" -> steps evenly spaced values, endpoints included.
std::vector<double> parse_grid(const std::string& spec);

/// Serializes with every floating-point value written at 17 significant
/// digits; non-finite values become null.
void write_json(std::ostream& os, const nlohmann::json& j);
std::string format_real(double v);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qroof::cli
