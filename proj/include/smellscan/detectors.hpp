#pragma once

// The eight smell rules. Every detector is a pure function of its inputs.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smellscan/config.hpp"
#include "smellscan/ingest.hpp"
#include "smellscan/line_model.hpp"

namespace smellscan {

enum class SmellKind {
    RepetitiveCode,
    DeadCode,
    MultipleReturns,
    LongStatement,
    SameFunctionName,
    LongClassOrMethod,
    LongConditionalOrLoop,
    LongParameterList,
};

inline constexpr std::size_t kSmellKindCount = 8;

inline constexpr std::array<SmellKind, kSmellKindCount> kAllSmellKinds{
    SmellKind::RepetitiveCode,   SmellKind::DeadCode,          SmellKind::MultipleReturns,
    SmellKind::LongStatement,    SmellKind::SameFunctionName,  SmellKind::LongClassOrMethod,
    SmellKind::LongConditionalOrLoop, SmellKind::LongParameterList,
};

constexpr std::size_t index_of(SmellKind kind) { return static_cast<std::size_t>(kind); }

/// Identifier form, e.g. "DeadCode".
std::string_view to_string(SmellKind kind);
/// Table heading form, e.g. "Dead Codes".
std::string_view display_name(SmellKind kind);
std::optional<SmellKind> smell_kind_from_string(std::string_view name);

struct SmellFinding {
    SmellKind kind = SmellKind::RepetitiveCode;
    std::string path;
    std::size_t start_line = 0;
    std::size_t end_line = 0;
    std::optional<std::string> unit_name;
    /// Which block kind tripped a long-block rule (selects "Class" vs "Method").
    std::optional<BlockKind> block_kind;
    std::string message;

    bool operator==(const SmellFinding&) const = default;
};

/// Builds a finding and derives its message from the other fields.
SmellFinding make_finding(SmellKind kind, std::string path, std::size_t start_line, std::size_t end_line,
                          std::optional<std::string> unit_name = std::nullopt,
                          std::optional<BlockKind> block_kind = std::nullopt);

std::string describe(SmellKind kind, const std::optional<std::string>& unit_name,
                     const std::optional<BlockKind>& block_kind);

/// Total order used for report output: path, start line, kind, then the rest.
bool finding_less(const SmellFinding& a, const SmellFinding& b);

/// One file after ingestion and line modelling.
struct FileModel {
    SourceFile source;
    std::vector<LineRecord> lines;
    std::vector<Block> blocks;
};

/// Name of the innermost class or function whose span contains the line.
std::optional<std::string> enclosing_unit(const std::vector<Block>& forest, std::size_t physical_line);

/// Flags every window of `window` consecutive normalized lines that repeats an
/// earlier window. Files are visited in the given order; windows never cross
/// file boundaries.
std::vector<SmellFinding> detect_repetitive_code(std::span<const FileModel> files, std::size_t window);
std::vector<SmellFinding> detect_repetitive_code(const FileModel& file, std::size_t window);

/// Statements that follow a `return` at the same indentation. Only returns
/// whose innermost tracked block is `block` are considered.
std::vector<SmellFinding> detect_dead_code(const FileModel& file, const Block& block);

std::optional<SmellFinding> detect_multiple_returns(const FileModel& file, const Block& function);

/// `line_index` must be the first line of a logical statement.
std::optional<SmellFinding> detect_long_statement(const FileModel& file, std::size_t line_index,
                                                  std::size_t threshold);

struct SignatureSite {
    std::string path;
    std::size_t header_line = 0;
    std::size_t header_end_line = 0;
    FunctionSignature signature;
};

std::vector<SignatureSite> collect_signatures(const FileModel& file);

/// Groups by (name, arity); every member after the first in (path, line)
/// order is reported. Malformed signatures are ignored.
std::vector<SmellFinding> detect_same_function_names(std::span<const SignatureSite> sites);

std::optional<SmellFinding> detect_long_block(const FileModel& file, const Block& block,
                                              const Thresholds& thresholds);

std::optional<SmellFinding> detect_long_parameter_list(const FileModel& file, const Block& function,
                                                       std::size_t threshold);

/// All detectors whose result depends only on this file. Duplicate rules are
/// included only when the scope is per-file.
std::vector<SmellFinding> detect_file(const FileModel& file, const ScanConfig& config);

/// Cross-file duplicate rules; empty unless the scope is corpus-wide.
std::vector<SmellFinding> detect_corpus_scope(std::span<const FileModel> files, const ScanConfig& config);

/// Applies all eight rules and returns findings sorted by finding_less.
std::vector<SmellFinding> run_all_detectors(std::span<const FileModel> files, const ScanConfig& config);

}  // namespace smellscan
