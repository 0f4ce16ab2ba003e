#pragma once

// Plain-text helpers shared by the trace, report and CLI writers.

#include <string>
#include <string_view>
#include <vector>

namespace wnql {

/// Shortest round-trip representation, locale independent.
std::string format_double(double v);

/// Joins already formatted fields with ','.
std::string csv_row(const std::vector<std::string> &fields);

/// Splits one CSV line on ','; no quoting is used by any file we write.
std::vector<std::string> split_csv(std::string_view line);

} // namespace wnql
