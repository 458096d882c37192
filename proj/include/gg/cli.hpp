#ifndef GG_CLI_HPP
#define GG_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "gg/report.hpp"

namespace gg {

inline constexpr const char* kConfigEnv = "GGQ_CONFIG";

struct CliConfig {
    int default_order2 = 0;  // 0: each check's own default
    int parallelism = 1;
    OutputFormat output_format = OutputFormat::text;
    std::optional<std::string> out_path;
};

/// Reads a JSON config document; missing keys keep their defaults.
CliConfig load_config(const std::string& path);

/// Exit codes: 0 pass, 1 a check failed, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gg

#endif
