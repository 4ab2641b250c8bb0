#pragma once

// File discovery, robust decoding, and comment/blank stripping.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smellscan/config.hpp"
#include "smellscan/line_model.hpp"

namespace smellscan {

/// Fatal scan failure (root missing or unreadable).
class ScanError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SanitizationEntry {
    std::size_t line_number = 0;
    std::string reason;

    bool operator==(const SanitizationEntry&) const = default;
};

struct SourceFile {
    std::string path;  ///< relative to the scan root, '/' separated
    std::vector<std::string> raw_lines;
    std::vector<SanitizationEntry> sanitization_log;
    std::size_t effective_loc = 0;
    /// Indentation uses tabs on some lines and spaces on others.
    bool mixed_indentation = false;
};

/// Diagnostic lines destined for stderr. Each worker keeps its own and the
/// logs are concatenated in file order, so output never depends on scheduling.
class ScanLog {
public:
    void noise(std::string_view path, std::size_t line, std::string_view reason);
    void skip(std::string_view path, std::string_view reason);
    void warn(std::string_view path, std::string_view reason);
    void append(const ScanLog& other);

    const std::vector<std::string>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<std::string> entries_;
};

/// fnmatch-style glob. Patterns without '/' match the file name; patterns
/// containing '/' match the whole relative path.
bool glob_matches(std::string_view pattern, std::string_view relative_path);

/// Regular files under the root that pass the include/exclude filters, as
/// '/'-separated paths relative to the root, sorted lexicographically.
/// Symlinks are not followed. Unreadable subdirectories are logged and skipped.
std::vector<std::string> discover_files(const ScanConfig& config, ScanLog& log);

/// Splits raw bytes into lines and replaces each invalid UTF-8 sequence with
/// U+FFFD, recording one sanitization entry per affected line.
SourceFile sanitize_bytes(std::string path, std::string_view bytes);

/// Reads and sanitizes one file. Returns nullopt (and logs SKIP) on I/O failure.
std::optional<SourceFile> load_and_sanitize(const std::filesystem::path& root,
                                            const std::string& relative_path, ScanLog& log);

/// Drops blanks, full-line comments, trailing comments, and documentation
/// strings; returns the surviving lines classified, and sets
/// `file.effective_loc` and `file.mixed_indentation`.
std::vector<LineRecord> strip_comments_and_blanks(SourceFile& file);

}  // namespace smellscan
