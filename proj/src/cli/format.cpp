#include <array>
#include <charconv>
#include <cmath>

#include "genairy/cli.hpp"

namespace genairy::cli {

double relative_deviation(double value, double ref) {
    return std::abs(value - ref) / std::max(std::abs(ref), kRelDevFloor);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string csv_header(bool with_reference) {
    std::string h = "n,x,method,value,error_estimate";
    if (with_reference) h += ",agree_ref,rel_dev";
    return h;
}

std::string csv_row(const OutputRecord& r, bool with_reference) {
    std::string row = std::to_string(r.n) + "," + format_double(r.x) + "," +
                      std::string(to_string(r.method)) + "," + format_double(r.value) + "," +
                      format_double(r.error_estimate);
    if (with_reference) {
        row += "," + (r.agree_ref ? format_double(*r.agree_ref) : std::string());
        row += "," + (r.rel_dev ? format_double(*r.rel_dev) : std::string());
    }
    return row;
}

nlohmann::ordered_json to_json(const OutputRecord& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["x"] = r.x;
    j["method"] = std::string(to_string(r.method));
    j["value"] = r.value;
    j["error_estimate"] = r.error_estimate;
    if (r.agree_ref) j["agree_ref"] = *r.agree_ref;
    if (r.rel_dev) j["rel_dev"] = *r.rel_dev;
    return j;
}

}  // namespace genairy::cli
