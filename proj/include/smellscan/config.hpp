#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace smellscan {

/// Every rule constant the detectors compare against. All rules use a strict
/// "greater than" test, so a unit sitting exactly at its threshold is clean.
struct Thresholds {
    std::size_t long_statement_words = 20;
    std::size_t long_class_lines = 60;
    std::size_t long_method_lines = 40;
    std::size_t long_loop_lines = 20;
    std::size_t long_conditional_lines = 10;
    std::size_t max_parameters = 5;
    std::size_t duplicate_window_lines = 3;

    bool operator==(const Thresholds&) const = default;
};

/// Whether duplicate-based rules (repetitive code, same function name)
/// compare within one file or across the whole scanned tree.
enum class DuplicateScope { PerFile, CorpusWide };

enum class Normalization { PerFile, PerLoc, Both };

struct ScanConfig {
    std::filesystem::path root_path;
    std::vector<std::string> include_globs{"*.py"};
    std::vector<std::string> exclude_globs;
    Thresholds thresholds;
    DuplicateScope duplicate_scope = DuplicateScope::PerFile;
    Normalization normalization = Normalization::Both;
};

/// Raised when a configuration value violates its invariants.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws ConfigError if any threshold is zero.
void validate(const Thresholds& thresholds);

std::string_view to_string(DuplicateScope scope);
std::string_view to_string(Normalization mode);

}  // namespace smellscan
