#ifndef PARAGEO_REPORT_HPP
#define PARAGEO_REPORT_HPP

#include <string>

#include "parageo/analysis.hpp"

namespace parageo {

inline constexpr int report_version = 1;

/// Structured report (stable key order, two-space indent, trailing newline).
std::string to_json(const AnalysisReport& rep);

/// Human-readable report.
std::string to_text(const AnalysisReport& rep);

} // namespace parageo

#endif // PARAGEO_REPORT_HPP
