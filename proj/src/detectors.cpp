#include "smellscan/detectors.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <tuple>
#include <unordered_set>
#include <utility>

namespace smellscan {

std::string_view to_string(SmellKind kind) {
    switch (kind) {
        case SmellKind::RepetitiveCode: return "RepetitiveCode";
        case SmellKind::DeadCode: return "DeadCode";
        case SmellKind::MultipleReturns: return "MultipleReturns";
        case SmellKind::LongStatement: return "LongStatement";
        case SmellKind::SameFunctionName: return "SameFunctionName";
        case SmellKind::LongClassOrMethod: return "LongClassOrMethod";
        case SmellKind::LongConditionalOrLoop: return "LongConditionalOrLoop";
        case SmellKind::LongParameterList: return "LongParameterList";
    }
    return "RepetitiveCode";
}

std::string_view display_name(SmellKind kind) {
    switch (kind) {
        case SmellKind::RepetitiveCode: return "Repetitive Codes";
        case SmellKind::DeadCode: return "Dead Codes";
        case SmellKind::MultipleReturns: return "Multiple Return Statements";
        case SmellKind::LongStatement: return "Long Statements";
        case SmellKind::SameFunctionName: return "Multiple Same Function Names";
        case SmellKind::LongClassOrMethod: return "Long Classes Or Methods";
        case SmellKind::LongConditionalOrLoop: return "Long Conditionals or Loops";
        case SmellKind::LongParameterList: return "Long Parameter List";
    }
    return "";
}

std::optional<SmellKind> smell_kind_from_string(std::string_view name) {
    for (auto kind : kAllSmellKinds) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

std::string describe(SmellKind kind, const std::optional<std::string>& unit_name,
                     const std::optional<BlockKind>& block_kind) {
    std::string base;
    switch (kind) {
        case SmellKind::RepetitiveCode: base = "Repetitive code found"; break;
        case SmellKind::DeadCode: base = "Dead Code found"; break;
        case SmellKind::MultipleReturns: base = "Multiple return statements found"; break;
        case SmellKind::LongStatement: base = "Long statement found"; break;
        case SmellKind::SameFunctionName: base = "Same function name found"; break;
        case SmellKind::LongClassOrMethod:
            base = block_kind == BlockKind::Class ? "Long Class found" : "Long Method found";
            break;
        case SmellKind::LongConditionalOrLoop:
            base = block_kind == BlockKind::Loop ? "Long Loop found" : "Long Conditional found";
            break;
        case SmellKind::LongParameterList: base = "Long parameter list found"; break;
    }
    if (unit_name) base += " in " + *unit_name;
    return base;
}

SmellFinding make_finding(SmellKind kind, std::string path, std::size_t start_line, std::size_t end_line,
                          std::optional<std::string> unit_name, std::optional<BlockKind> block_kind) {
    SmellFinding f;
    f.kind = kind;
    f.path = std::move(path);
    f.start_line = start_line;
    f.end_line = end_line;
    f.unit_name = std::move(unit_name);
    f.block_kind = block_kind;
    f.message = describe(f.kind, f.unit_name, f.block_kind);
    return f;
}

bool finding_less(const SmellFinding& a, const SmellFinding& b) {
    auto key = [](const SmellFinding& f) {
        return std::tie(f.path, f.start_line, f.kind, f.end_line, f.unit_name, f.block_kind, f.message);
    };
    return key(a) < key(b);
}

namespace {

void find_unit(const std::vector<Block>& forest, std::size_t line, std::optional<std::string>& unit) {
    for (const auto& block : forest) {
        if (!block.contains_line(line)) continue;
        if (block.kind == BlockKind::Method || block.kind == BlockKind::Class) unit = block.name;
        find_unit(block.children, line, unit);
        return;
    }
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\f\v\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\f\v\r");
    return s.substr(first, last - first + 1);
}

std::vector<SmellFinding> repetitive_code(const std::vector<const FileModel*>& files, std::size_t window) {
    std::vector<SmellFinding> out;
    if (window == 0) return out;
    std::unordered_set<std::string> seen;
    for (const FileModel* file : files) {
        const auto& lines = file->lines;
        if (lines.size() < window) continue;
        std::vector<std::string_view> normalized;
        normalized.reserve(lines.size());
        for (const auto& line : lines) normalized.push_back(trim(line.text));

        for (std::size_t p = 0; p + window <= lines.size(); ++p) {
            std::string key;
            for (std::size_t k = 0; k < window; ++k) {
                if (k) key += '\n';
                key += normalized[p + k];
            }
            if (seen.insert(std::move(key)).second) continue;
            const auto start = lines[p].physical_line;
            out.push_back(make_finding(SmellKind::RepetitiveCode, file->source.path, start,
                                       lines[p + window - 1].physical_line, enclosing_unit(file->blocks, start)));
        }
    }
    return out;
}

// Index ranges [header_index, end_index) of the given blocks.
using IndexRange = std::pair<std::size_t, std::size_t>;

bool in_any(const std::vector<IndexRange>& ranges, std::size_t i) {
    return std::any_of(ranges.begin(), ranges.end(),
                       [i](const IndexRange& r) { return i >= r.first && i < r.second; });
}

void nested_functions(const std::vector<Block>& children, std::vector<IndexRange>& out) {
    for (const auto& child : children) {
        if (child.kind == BlockKind::Method) {
            out.emplace_back(child.header_index, child.end_index);
        } else {
            nested_functions(child.children, out);
        }
    }
}

}  // namespace

std::optional<std::string> enclosing_unit(const std::vector<Block>& forest, std::size_t physical_line) {
    std::optional<std::string> unit;
    find_unit(forest, physical_line, unit);
    return unit;
}

std::vector<SmellFinding> detect_repetitive_code(std::span<const FileModel> files, std::size_t window) {
    std::vector<const FileModel*> ptrs;
    ptrs.reserve(files.size());
    for (const auto& f : files) ptrs.push_back(&f);
    return repetitive_code(ptrs, window);
}

std::vector<SmellFinding> detect_repetitive_code(const FileModel& file, std::size_t window) {
    return repetitive_code({&file}, window);
}

std::vector<SmellFinding> detect_dead_code(const FileModel& file, const Block& block) {
    std::vector<SmellFinding> out;
    const auto& lines = file.lines;
    std::vector<IndexRange> child_ranges;
    for (const auto& child : block.children) child_ranges.emplace_back(child.header_index, child.end_index);

    for (std::size_t i = block.body_index; i < block.end_index; ++i) {
        if (lines[i].kind != LineKind::ReturnStmt || in_any(child_ranges, i)) continue;
        const auto lead = lines[i].lead_spaces;
        const std::size_t first = logical_end(lines, i);
        std::size_t j = first;
        while (j < block.end_index && !lines[j].continuation && lines[j].lead_spaces == lead) {
            j = logical_end(lines, j);
        }
        if (j == first) continue;
        j = std::min(j, block.end_index);
        const auto start = lines[first].physical_line;
        out.push_back(make_finding(SmellKind::DeadCode, file.source.path, start, lines[j - 1].physical_line,
                                   enclosing_unit(file.blocks, start)));
    }
    return out;
}

std::optional<SmellFinding> detect_multiple_returns(const FileModel& file, const Block& function) {
    if (function.kind != BlockKind::Method) return std::nullopt;
    std::vector<IndexRange> excluded;
    nested_functions(function.children, excluded);

    std::size_t returns = 0;
    for (std::size_t i = function.body_index; i < function.end_index; ++i) {
        if (file.lines[i].kind == LineKind::ReturnStmt && !in_any(excluded, i)) ++returns;
    }
    if (returns < 2) return std::nullopt;
    return make_finding(SmellKind::MultipleReturns, file.source.path, function.header_line, function.last_line(),
                        function.name);
}

std::optional<SmellFinding> detect_long_statement(const FileModel& file, std::size_t line_index,
                                                  std::size_t threshold) {
    const auto& lines = file.lines;
    const std::size_t stop = logical_end(lines, line_index);
    std::size_t words = 0;
    for (std::size_t i = line_index; i < stop; ++i) words += lines[i].word_count;
    if (words <= threshold) return std::nullopt;
    const auto start = lines[line_index].physical_line;
    return make_finding(SmellKind::LongStatement, file.source.path, start, lines[stop - 1].physical_line,
                        enclosing_unit(file.blocks, start));
}

std::vector<SignatureSite> collect_signatures(const FileModel& file) {
    std::vector<SignatureSite> sites;
    for_each_block(file.blocks, [&](const Block& block) {
        if (block.kind == BlockKind::Method && block.signature) {
            sites.push_back({file.source.path, block.header_line, block.header_end_line, *block.signature});
        }
    });
    return sites;
}

std::vector<SmellFinding> detect_same_function_names(std::span<const SignatureSite> sites) {
    std::vector<const SignatureSite*> ordered;
    for (const auto& site : sites) {
        if (!site.signature.malformed) ordered.push_back(&site);
    }
    std::stable_sort(ordered.begin(), ordered.end(), [](const SignatureSite* a, const SignatureSite* b) {
        return std::tie(a->path, a->header_line) < std::tie(b->path, b->header_line);
    });

    std::vector<SmellFinding> out;
    std::map<std::pair<std::string, std::size_t>, bool> seen;
    for (const auto* site : ordered) {
        auto [it, first] = seen.try_emplace({site->signature.name, site->signature.arity}, true);
        if (first) continue;
        out.push_back(make_finding(SmellKind::SameFunctionName, site->path, site->header_line, site->header_end_line,
                                   site->signature.name));
    }
    return out;
}

std::optional<SmellFinding> detect_long_block(const FileModel& file, const Block& block,
                                              const Thresholds& thresholds) {
    std::size_t limit = 0;
    SmellKind kind = SmellKind::LongClassOrMethod;
    switch (block.kind) {
        case BlockKind::Class: limit = thresholds.long_class_lines; break;
        case BlockKind::Method: limit = thresholds.long_method_lines; break;
        case BlockKind::Loop:
            limit = thresholds.long_loop_lines;
            kind = SmellKind::LongConditionalOrLoop;
            break;
        case BlockKind::Conditional:
            limit = thresholds.long_conditional_lines;
            kind = SmellKind::LongConditionalOrLoop;
            break;
    }
    if (block.body_effective_lines <= limit) return std::nullopt;
    auto unit = kind == SmellKind::LongClassOrMethod ? std::optional<std::string>(block.name)
                                                     : enclosing_unit(file.blocks, block.header_line);
    return make_finding(kind, file.source.path, block.header_line, block.last_line(), std::move(unit), block.kind);
}

std::optional<SmellFinding> detect_long_parameter_list(const FileModel& file, const Block& function,
                                                       std::size_t threshold) {
    if (!function.signature || function.signature->malformed) return std::nullopt;
    if (function.signature->arity <= threshold) return std::nullopt;
    return make_finding(SmellKind::LongParameterList, file.source.path, function.header_line,
                        function.header_end_line, function.name);
}

std::vector<SmellFinding> detect_file(const FileModel& file, const ScanConfig& config) {
    const auto& t = config.thresholds;
    std::vector<SmellFinding> out;
    auto take = [&out](std::optional<SmellFinding> f) {
        if (f) out.push_back(std::move(*f));
    };
    auto take_all = [&out](std::vector<SmellFinding> fs) {
        std::move(fs.begin(), fs.end(), std::back_inserter(out));
    };

    if (config.duplicate_scope == DuplicateScope::PerFile) {
        take_all(detect_repetitive_code(file, t.duplicate_window_lines));
        const auto sites = collect_signatures(file);
        take_all(detect_same_function_names(sites));
    }

    for (std::size_t i = 0; i < file.lines.size(); i = logical_end(file.lines, i)) {
        take(detect_long_statement(file, i, t.long_statement_words));
    }

    for_each_block(file.blocks, [&](const Block& block) {
        take(detect_long_block(file, block, t));
        if (block.kind == BlockKind::Method) {
            take(detect_multiple_returns(file, block));
            take(detect_long_parameter_list(file, block, t.max_parameters));
        }
        if (block.kind != BlockKind::Class) take_all(detect_dead_code(file, block));
    });

    std::sort(out.begin(), out.end(), finding_less);
    return out;
}

std::vector<SmellFinding> detect_corpus_scope(std::span<const FileModel> files, const ScanConfig& config) {
    std::vector<SmellFinding> out;
    if (config.duplicate_scope != DuplicateScope::CorpusWide) return out;

    std::vector<const FileModel*> ordered;
    for (const auto& f : files) ordered.push_back(&f);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const FileModel* a, const FileModel* b) { return a->source.path < b->source.path; });
    out = repetitive_code(ordered, config.thresholds.duplicate_window_lines);

    std::vector<SignatureSite> sites;
    for (const auto* f : ordered) {
        auto s = collect_signatures(*f);
        std::move(s.begin(), s.end(), std::back_inserter(sites));
    }
    auto same = detect_same_function_names(sites);
    std::move(same.begin(), same.end(), std::back_inserter(out));
    return out;
}

std::vector<SmellFinding> run_all_detectors(std::span<const FileModel> files, const ScanConfig& config) {
    std::vector<SmellFinding> out;
    for (const auto& file : files) {
        auto per_file = detect_file(file, config);
        std::move(per_file.begin(), per_file.end(), std::back_inserter(out));
    }
    auto corpus = detect_corpus_scope(files, config);
    std::move(corpus.begin(), corpus.end(), std::back_inserter(out));
    std::sort(out.begin(), out.end(), finding_less);
    return out;
}

}  // namespace smellscan
