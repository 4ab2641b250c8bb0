#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smellscan {

enum class LineKind { FunctionDef, ClassDef, ConditionalHeader, LoopHeader, ReturnStmt, Other };

/// One effective (uncommented, non-blank) physical line.
struct LineRecord {
    std::size_t physical_line = 0;  ///< 1-based line number in the original file
    std::string text;               ///< content after comment stripping, indentation kept
    std::size_t lead_spaces = 0;
    LineKind kind = LineKind::Other;
    std::size_t word_count = 0;
    std::size_t index = 0;          ///< position among the file's effective lines
    /// True when this line continues a statement opened on an earlier line
    /// (open bracket, trailing backslash, or a multi-line string literal).
    bool continuation = false;

    bool operator==(const LineRecord&) const = default;
};

enum class BlockKind { Class, Method, Loop, Conditional };

struct FunctionSignature {
    std::string name;
    std::vector<std::string> parameter_names;
    std::size_t arity = 0;
    /// No parenthesised parameter list could be found; arity is unknown.
    bool malformed = false;

    bool operator==(const FunctionSignature&) const = default;
};

/// An indentation-delimited unit. Its body is every effective line after the
/// header whose indentation is strictly deeper than the header's.
struct Block {
    BlockKind kind = BlockKind::Method;
    std::string name;                ///< class or function name, empty for loops/conditionals
    std::size_t header_line = 0;     ///< physical line of the header
    std::size_t header_end_line = 0; ///< last physical line of a multi-line header
    std::size_t header_lead_spaces = 0;
    std::size_t body_start = 0;      ///< equals header_line when the body is empty
    std::size_t body_end = 0;
    std::size_t body_effective_lines = 0;

    // Effective-line index range: [header_index, end_index) covers header and body.
    std::size_t header_index = 0;
    std::size_t body_index = 0;
    std::size_t end_index = 0;

    std::vector<Block> children;
    std::optional<FunctionSignature> signature;  ///< present iff kind == Method

    /// Last physical line covered by the block (header or body).
    std::size_t last_line() const { return body_effective_lines > 0 ? body_end : header_end_line; }
    bool contains_line(std::size_t physical) const {
        return physical >= header_line && physical <= last_line();
    }
};

/// Count of leading whitespace characters. Tabs weigh 1 like spaces.
std::size_t get_lead_spaces(std::string_view line);

/// Number of whitespace-separated tokens after left-stripping.
std::size_t count_words(std::string_view line);

/// Classifies by leading keyword. Continuation lines are always Other.
LineKind classify_line(const LineRecord& line);

/// Builds the block forest for one file's effective lines, ordered by header.
/// Lines must already carry their kinds.
std::vector<Block> extract_blocks(std::span<const LineRecord> lines);

/// Parses the function header starting at `header_index`, joining any
/// continuation lines that belong to it.
FunctionSignature get_function_signature(std::span<const LineRecord> lines, std::size_t header_index);

/// Single-line convenience overload.
FunctionSignature get_function_signature(std::string_view header_text);

/// Index one past the last line of the logical statement starting at `start`.
std::size_t logical_end(std::span<const LineRecord> lines, std::size_t start);

/// Calls `visit(block)` for every block in pre-order.
template <typename Visitor>
void for_each_block(const std::vector<Block>& forest, Visitor&& visit) {
    for (const auto& block : forest) {
        visit(block);
        for_each_block(block.children, visit);
    }
}

std::string_view to_string(BlockKind kind);
std::string_view to_string(LineKind kind);

}  // namespace smellscan
