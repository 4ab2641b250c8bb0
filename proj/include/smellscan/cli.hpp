#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smellscan/config.hpp"
#include "smellscan/report.hpp"

namespace smellscan {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kSmellsFound = 1;
inline constexpr int kUsage = 2;
inline constexpr int kIo = 3;
}  // namespace exit_code

/// Malformed config line. `line` is 1-based, 0 when not tied to a line.
class ConfigParseError : public ConfigError {
public:
    ConfigParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Values set in a config file or on the command line; unset fields fall
/// through to the next layer (flags > config file > defaults).
struct ConfigOverrides {
    std::optional<std::size_t> long_statement_words;
    std::optional<std::size_t> long_class_lines;
    std::optional<std::size_t> long_method_lines;
    std::optional<std::size_t> long_loop_lines;
    std::optional<std::size_t> long_conditional_lines;
    std::optional<std::size_t> max_params;
    std::optional<std::size_t> dup_window;
    std::optional<DuplicateScope> scope;
    std::optional<Normalization> normalization;
    std::optional<ReportFormat> format;
    std::vector<std::string> include;
    std::vector<std::string> exclude;

    void apply_to(ScanConfig& config) const;
};

/// Parses `key = value` lines; `#` starts a comment line.
ConfigOverrides parse_config(std::string_view text);
ConfigOverrides parse_config_file(const std::filesystem::path& path);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace smellscan
