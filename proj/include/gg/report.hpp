#ifndef GG_REPORT_HPP
#define GG_REPORT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "gg/registry.hpp"

namespace gg {

enum class OutputFormat { json, csv, text };

OutputFormat parse_format(std::string_view s);
std::string to_string(OutputFormat f);

inline constexpr int kReportVersion = 1;

/// {version, checks: [{id, params, order2, status, first_mismatch?, elapsed_ms}]}
std::string emit_json(const std::vector<VerificationReport>& reports);
std::vector<VerificationReport> parse_json(std::string_view text);

/// Header plus one row per check; params as "k=1;l=2".
std::string emit_csv(const std::vector<VerificationReport>& reports);
std::string emit_text(const std::vector<VerificationReport>& reports);

std::string emit(const std::vector<VerificationReport>& reports, OutputFormat f);

std::string format_params(const CheckParams& p);

}  // namespace gg

#endif
