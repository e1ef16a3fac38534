#include "cpd/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include "json.hpp"

#include "cpd/error.hpp"

namespace cpd::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view token, double& out) {
  // from_chars rejects a leading '+'.
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::vector<double> read_series(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool seen_data_line = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto comma = view.find(',');
    const std::string_view field = trim(view.substr(0, comma));
    double value = 0.0;
    const bool ok = parse_double(field, value);
    if (!seen_data_line) {
      seen_data_line = true;
      if (!ok) {
        // A header is a non-numeric first field that is not a float keyword.
        const bool looks_numeric = field.find_first_of("0123456789") != std::string_view::npos ||
                                   field == "nan" || field == "NaN" || field == "inf";
        if (!looks_numeric && !field.empty()) continue;
      }
    }
    if (!ok) throw ParseError(line_no, fmt::format("not a number: '{}'", field));
    if (!std::isfinite(value)) throw ParseError(line_no, fmt::format("non-finite value: '{}'", field));
    values.push_back(value);
  }
  if (values.empty()) throw ParseError(line_no, "no numeric values found");
  return values;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", value);
}

std::string json_double(double value) { return std::isfinite(value) ? format_double(value) : "null"; }

std::string signal_to_json(const PiecewiseSignal& signal) {
  std::string out = fmt::format("{{\"n\":{},\"change_points\":[{}],\"levels\":[", signal.size(),
                                fmt::join(signal.change_points(), ","));
  for (std::size_t k = 0; k < signal.levels().size(); ++k) {
    if (k) out += ',';
    out += json_double(signal.levels()[k]);
  }
  out += "]}";
  return out;
}

PiecewiseSignal signal_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    return PiecewiseSignal(j.at("n").get<int>(), j.at("change_points").get<std::vector<int>>(),
                           j.at("levels").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed signal JSON: ") + e.what());
  }
}

void write_rows_csv(std::ostream& out, std::span<const ExperimentRow> rows, bool header) {
  if (header) out << kRowHeader << '\n';
  for (const auto& row : rows) {
    out << row.rep << ',' << format_double(row.snr) << ',' << to_string(row.method) << ',' << row.k_true << ','
        << row.k_est << ',' << (row.k_correct ? 1 : 0) << ',' << row.max_err << ',' << format_double(row.hausdorff)
        << ',' << format_double(row.ms) << '\n';
  }
}

}  // namespace cpd::io
