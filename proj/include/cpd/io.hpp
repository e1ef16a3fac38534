#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cpd/experiments.hpp"
#include "cpd/signal.hpp"
#include "cpd/wbs.hpp"

namespace cpd::io {

/// Reads a numeric series: one value per line, blank lines and '#' comments
/// ignored, an optional non-numeric header on the first data line skipped.
/// For CSV lines only the first column is read. Throws ParseError naming the
/// line of the first bad record, or when no values are present.
std::vector<double> read_series(std::istream& in);

/// Every double with 17 significant digits; inf/nan
/// written as "inf", "-inf", "nan".
std::string format_double(double value);
/// As format_double, but non-finite values become JSON null.
std::string json_double(double value);

std::string signal_to_json(const PiecewiseSignal& signal);
PiecewiseSignal signal_from_json(const std::string& text);

inline constexpr const char* kRowHeader = "rep,snr,method,k_true,k_est,k_correct,max_err,hausdorff,ms";

void write_rows_csv(std::ostream& out, std::span<const ExperimentRow> rows, bool header = true);

}  // namespace cpd::io
