#include "smellscan/line_model.hpp"

#include <algorithm>

namespace smellscan {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\f' || c == '\v' || c == '\r' || c == '\n'; }

bool is_ident_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_identifier(std::string_view s) {
    if (s.empty() || (s[0] >= '0' && s[0] <= '9')) return false;
    return std::all_of(s.begin(), s.end(), is_ident_char);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

// Identifier-like word starting at `pos` (after skipping whitespace); `pos`
// is advanced past it.
std::string_view next_word(std::string_view s, std::size_t& pos) {
    while (pos < s.size() && is_space(s[pos])) ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && is_ident_char(s[pos])) ++pos;
    return s.substr(start, pos - start);
}

// Text following the leading keyword(s), skipping an `async` prefix.
std::string_view after_keyword(std::string_view text, std::string_view& keyword) {
    std::size_t pos = 0;
    keyword = next_word(text, pos);
    if (keyword == "async") {
        std::size_t probe = pos;
        auto second = next_word(text, probe);
        if (second == "def" || second == "for" || second == "with") {
            keyword = second;
            pos = probe;
        }
    }
    return text.substr(pos);
}

bool is_header(LineKind kind) {
    return kind == LineKind::FunctionDef || kind == LineKind::ClassDef || kind == LineKind::ConditionalHeader ||
           kind == LineKind::LoopHeader;
}

BlockKind block_kind_of(LineKind kind) {
    switch (kind) {
        case LineKind::FunctionDef: return BlockKind::Method;
        case LineKind::ClassDef: return BlockKind::Class;
        case LineKind::LoopHeader: return BlockKind::Loop;
        default: return BlockKind::Conditional;
    }
}

std::string class_name(std::string_view header) {
    std::string_view keyword;
    auto rest = after_keyword(header, keyword);
    std::size_t pos = 0;
    return std::string(next_word(rest, pos));
}

std::vector<Block> build_forest(std::span<const LineRecord> lines, std::size_t begin, std::size_t end) {
    std::vector<Block> forest;
    std::size_t i = begin;
    while (i < end) {
        const auto& header = lines[i];
        if (header.continuation || !is_header(header.kind)) {
            ++i;
            continue;
        }
        const std::size_t header_stop = std::min(logical_end(lines, i), end);
        std::size_t k = header_stop;
        while (k < end && (lines[k].continuation || lines[k].lead_spaces > header.lead_spaces)) ++k;

        Block block;
        block.kind = block_kind_of(header.kind);
        block.header_line = header.physical_line;
        block.header_end_line = lines[header_stop - 1].physical_line;
        block.header_lead_spaces = header.lead_spaces;
        block.header_index = i;
        block.body_index = header_stop;
        block.end_index = k;
        block.body_effective_lines = k - header_stop;
        if (block.body_effective_lines > 0) {
            block.body_start = lines[header_stop].physical_line;
            block.body_end = lines[k - 1].physical_line;
        } else {
            block.body_start = block.body_end = header.physical_line;
        }
        if (block.kind == BlockKind::Method) {
            block.signature = get_function_signature(lines, i);
            block.name = block.signature->name;
        } else if (block.kind == BlockKind::Class) {
            block.name = class_name(header.text);
        }
        block.children = build_forest(lines, header_stop, k);
        forest.push_back(std::move(block));
        i = k;
    }
    return forest;
}

}  // namespace

std::size_t get_lead_spaces(std::string_view line) {
    std::size_t n = 0;
    while (n < line.size() && is_space(line[n])) ++n;
    return n;
}

std::size_t count_words(std::string_view line) {
    std::size_t words = 0;
    bool in_word = false;
    for (char c : line) {
        if (is_space(c)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++words;
        }
    }
    return words;
}

LineKind classify_line(const LineRecord& line) {
    if (line.continuation) return LineKind::Other;
    std::string_view keyword;
    after_keyword(line.text, keyword);
    if (keyword == "def") return LineKind::FunctionDef;
    if (keyword == "class") return LineKind::ClassDef;
    if (keyword == "if" || keyword == "elif" || keyword == "else") return LineKind::ConditionalHeader;
    if (keyword == "for" || keyword == "while") return LineKind::LoopHeader;
    if (keyword == "return") return LineKind::ReturnStmt;
    return LineKind::Other;
}

std::size_t logical_end(std::span<const LineRecord> lines, std::size_t start) {
    std::size_t j = start + 1;
    while (j < lines.size() && lines[j].continuation) ++j;
    return j;
}

std::vector<Block> extract_blocks(std::span<const LineRecord> lines) {
    return build_forest(lines, 0, lines.size());
}

FunctionSignature get_function_signature(std::span<const LineRecord> lines, std::size_t header_index) {
    const std::size_t stop = logical_end(lines, header_index);
    std::string joined;
    for (std::size_t i = header_index; i < stop; ++i) {
        if (!joined.empty()) joined += ' ';
        joined += trim(lines[i].text);
    }
    return get_function_signature(joined);
}

FunctionSignature get_function_signature(std::string_view header_text) {
    FunctionSignature sig;
    std::string_view keyword;
    const auto rest = after_keyword(trim(header_text), keyword);

    const auto open = rest.find('(');
    if (open == std::string_view::npos) {
        std::size_t pos = 0;
        while (pos < rest.size() && is_space(rest[pos])) ++pos;
        auto token = rest.substr(pos, rest.find_first_of(" \t", pos) - pos);
        while (!token.empty() && token.back() == ':') token.remove_suffix(1);
        sig.name = std::string(token);
        sig.malformed = true;
        return sig;
    }
    sig.name = std::string(trim(rest.substr(0, open)));

    // Split the parameter list on top-level commas.
    std::vector<std::string_view> items;
    int depth = 0;
    char quote = 0;
    std::size_t item_start = open + 1;
    bool closed = false;
    for (std::size_t i = open + 1; i < rest.size() && !closed; ++i) {
        const char c = rest[i];
        if (quote) {
            if (c == '\\') ++i;
            else if (c == quote) quote = 0;
            continue;
        }
        switch (c) {
            case '"': case '\'': quote = c; break;
            case '(': case '[': case '{': ++depth; break;
            case ']': case '}': --depth; break;
            case ')':
                if (depth == 0) {
                    items.push_back(rest.substr(item_start, i - item_start));
                    closed = true;
                } else {
                    --depth;
                }
                break;
            case ',':
                if (depth == 0) {
                    items.push_back(rest.substr(item_start, i - item_start));
                    item_start = i + 1;
                }
                break;
            default: break;
        }
    }
    if (!closed) {
        sig.malformed = true;
        return sig;
    }

    for (auto item : items) {
        item = item.substr(0, item.find_first_of("=:"));
        item = trim(item);
        while (!item.empty() && item.front() == '*') item.remove_prefix(1);
        item = trim(item);
        if (is_identifier(item)) sig.parameter_names.emplace_back(item);
    }
    sig.arity = sig.parameter_names.size();
    return sig;
}

std::string_view to_string(BlockKind kind) {
    switch (kind) {
        case BlockKind::Class: return "CLASS";
        case BlockKind::Method: return "METHOD";
        case BlockKind::Loop: return "LOOP";
        case BlockKind::Conditional: return "CONDITIONAL";
    }
    return "METHOD";
}

std::string_view to_string(LineKind kind) {
    switch (kind) {
        case LineKind::FunctionDef: return "function_def";
        case LineKind::ClassDef: return "class_def";
        case LineKind::ConditionalHeader: return "conditional_header";
        case LineKind::LoopHeader: return "loop_header";
        case LineKind::ReturnStmt: return "return_stmt";
        case LineKind::Other: return "other";
    }
    return "other";
}

}  // namespace smellscan
