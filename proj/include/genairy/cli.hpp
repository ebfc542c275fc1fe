#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "genairy/eval_result.hpp"

namespace genairy::cli {

// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kUsageError = 2,
    kNonConvergence = 3,
};

// One evaluated point as printed by `eval` and `table`.
struct OutputRecord {
    int n = 2;
    double x = 0.0;
    Method method = Method::series;
    double value = 0.0;
    double error_estimate = 0.0;
    std::optional<double> agree_ref;
    std::optional<double> rel_dev;
};

inline constexpr double kRelDevFloor = 1e-300;

// |value - ref| / max(|ref|, kRelDevFloor)
double relative_deviation(double value, double ref);

// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

std::string csv_header(bool with_reference);
std::string csv_row(const OutputRecord& r, bool with_reference);
nlohmann::ordered_json to_json(const OutputRecord& r);

// Runs the command line (without the program name). Output goes to `out`,
// diagnostics and one-line error reasons to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace genairy::cli
