#include "smellscan/config.hpp"

namespace smellscan {

void validate(const Thresholds& t) {
    auto require = [](std::size_t value, const char* name) {
        if (value < 1) throw ConfigError(std::string(name) + " must be at least 1");
    };
    require(t.long_statement_words, "long_statement_words");
    require(t.long_class_lines, "long_class_lines");
    require(t.long_method_lines, "long_method_lines");
    require(t.long_loop_lines, "long_loop_lines");
    require(t.long_conditional_lines, "long_conditional_lines");
    require(t.max_parameters, "max_params");
    require(t.duplicate_window_lines, "dup_window");
}

std::string_view to_string(DuplicateScope scope) {
    return scope == DuplicateScope::PerFile ? "file" : "corpus";
}

std::string_view to_string(Normalization mode) {
    switch (mode) {
        case Normalization::PerFile: return "per_file";
        case Normalization::PerLoc: return "per_loc";
        case Normalization::Both: return "both";
    }
    return "both";
}

}  // namespace smellscan
