#include "smellscan/cli.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "smellscan/pipeline.hpp"

namespace smellscan {

ConfigParseError::ConfigParseError(std::size_t line, const std::string& message)
    : ConfigError(line ? "config line " + std::to_string(line) + ": " + message : message), line_(line) {}

void ConfigOverrides::apply_to(ScanConfig& config) const {
    auto& t = config.thresholds;
    if (long_statement_words) t.long_statement_words = *long_statement_words;
    if (long_class_lines) t.long_class_lines = *long_class_lines;
    if (long_method_lines) t.long_method_lines = *long_method_lines;
    if (long_loop_lines) t.long_loop_lines = *long_loop_lines;
    if (long_conditional_lines) t.long_conditional_lines = *long_conditional_lines;
    if (max_params) t.max_parameters = *max_params;
    if (dup_window) t.duplicate_window_lines = *dup_window;
    if (scope) config.duplicate_scope = *scope;
    if (normalization) config.normalization = *normalization;
    if (!include.empty()) config.include_globs = include;
    if (!exclude.empty()) config.exclude_globs = exclude;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<std::size_t> parse_count(std::string_view value) {
    std::size_t out = 0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return out;
}

std::optional<DuplicateScope> parse_scope(std::string_view v) {
    if (v == "file") return DuplicateScope::PerFile;
    if (v == "corpus") return DuplicateScope::CorpusWide;
    return std::nullopt;
}

std::optional<Normalization> parse_normalization(std::string_view v) {
    if (v == "per_file") return Normalization::PerFile;
    if (v == "per_loc") return Normalization::PerLoc;
    if (v == "both") return Normalization::Both;
    return std::nullopt;
}

}  // namespace

ConfigOverrides parse_config(std::string_view text) {
    ConfigOverrides o;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigParseError(line_no, "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigParseError(line_no, "missing value for '" + std::string(key) + "'");

        auto count = [&]() {
            auto n = parse_count(value);
            if (!n) throw ConfigParseError(line_no, "'" + std::string(key) + "' expects a positive integer, got '" +
                                                        std::string(value) + "'");
            if (*n < 1) throw ConfigParseError(line_no, "'" + std::string(key) + "' must be at least 1");
            return *n;
        };

        if (key == "long_statement_words") o.long_statement_words = count();
        else if (key == "long_class_lines") o.long_class_lines = count();
        else if (key == "long_method_lines") o.long_method_lines = count();
        else if (key == "long_loop_lines") o.long_loop_lines = count();
        else if (key == "long_conditional_lines") o.long_conditional_lines = count();
        else if (key == "max_params") o.max_params = count();
        else if (key == "dup_window") o.dup_window = count();
        else if (key == "scope") {
            o.scope = parse_scope(value);
            if (!o.scope) throw ConfigParseError(line_no, "scope must be 'file' or 'corpus'");
        } else if (key == "normalization") {
            o.normalization = parse_normalization(value);
            if (!o.normalization) throw ConfigParseError(line_no, "normalization must be per_file, per_loc or both");
        } else if (key == "format") {
            o.format = report_format_from_string(value);
            if (!o.format) throw ConfigParseError(line_no, "format must be text, csv or json");
        } else if (key == "include") {
            o.include.emplace_back(value);
        } else if (key == "exclude") {
            o.exclude.emplace_back(value);
        } else {
            throw ConfigParseError(line_no, "unknown key '" + std::string(key) + "'");
        }
    }
    return o;
}

ConfigOverrides parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigParseError(0, "cannot read config file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rule-based code smell detector for indentation-structured source trees"};
    app.name("smellscan");

    std::string root;
    std::string config_path;
    std::string format_name = "text";
    std::string out_path;
    std::string scope_name;
    std::string normalization_name;
    std::size_t long_statement_words = 0, long_class_lines = 0, long_method_lines = 0, long_loop_lines = 0,
                long_conditional_lines = 0, max_params = 0, dup_window = 0, jobs = 0;
    std::vector<std::string> include, exclude;
    bool fail_on_smell = false;
    bool quiet = false;

    app.add_option("root", root, "Directory to scan")->required();
    app.add_option("--config", config_path, "key = value config file");
    auto* format_opt = app.add_option("--format", format_name, "Report format")
                           ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--out", out_path, "Report destination (a directory for csv); default stdout");
    auto* scope_opt = app.add_option("--scope", scope_name, "Duplicate-rule scope")
                          ->check(CLI::IsMember({"file", "corpus"}));
    auto* norm_opt = app.add_option("--normalization", normalization_name, "Normalized summary denominators")
                         ->check(CLI::IsMember({"per_file", "per_loc", "both"}));
    auto* o_words = app.add_option("--long-statement-words", long_statement_words)->check(CLI::PositiveNumber);
    auto* o_class = app.add_option("--long-class-lines", long_class_lines)->check(CLI::PositiveNumber);
    auto* o_method = app.add_option("--long-method-lines", long_method_lines)->check(CLI::PositiveNumber);
    auto* o_loop = app.add_option("--long-loop-lines", long_loop_lines)->check(CLI::PositiveNumber);
    auto* o_cond = app.add_option("--long-conditional-lines", long_conditional_lines)->check(CLI::PositiveNumber);
    auto* o_params = app.add_option("--max-params", max_params)->check(CLI::PositiveNumber);
    auto* o_window = app.add_option("--dup-window", dup_window)->check(CLI::PositiveNumber);
    app.add_option("--include", include, "Include glob (repeatable)")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    app.add_option("--exclude", exclude, "Exclude glob (repeatable)")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    app.add_option("--jobs", jobs, "Worker threads, 0 = hardware concurrency");
    app.add_flag("--fail-on-smell", fail_on_smell, "Exit 1 when any smell is found");
    app.add_flag("--quiet", quiet, "Suppress the scan log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::kOk;
    } catch (const CLI::ParseError& e) {
        err << "smellscan: " << e.what() << '\n';
        return exit_code::kUsage;
    }

    ScanConfig config;
    config.root_path = root;
    std::optional<ReportFormat> format;
    try {
        if (!config_path.empty()) {
            const auto from_file = parse_config_file(config_path);
            from_file.apply_to(config);
            format = from_file.format;
        }
        ConfigOverrides flags;
        auto set = [](CLI::Option* opt, std::size_t value, std::optional<std::size_t>& slot) {
            if (opt->count() > 0) slot = value;
        };
        set(o_words, long_statement_words, flags.long_statement_words);
        set(o_class, long_class_lines, flags.long_class_lines);
        set(o_method, long_method_lines, flags.long_method_lines);
        set(o_loop, long_loop_lines, flags.long_loop_lines);
        set(o_cond, long_conditional_lines, flags.long_conditional_lines);
        set(o_params, max_params, flags.max_params);
        set(o_window, dup_window, flags.dup_window);
        if (scope_opt->count() > 0) flags.scope = parse_scope(scope_name);
        if (norm_opt->count() > 0) flags.normalization = parse_normalization(normalization_name);
        flags.include = include;
        flags.exclude = exclude;
        flags.apply_to(config);
        if (format_opt->count() > 0 || !format) format = report_format_from_string(format_name);
        validate(config.thresholds);
    } catch (const ConfigError& e) {
        err << "smellscan: " << e.what() << '\n';
        return exit_code::kUsage;
    }

    ScanResult result;
    try {
        result = scan(config, jobs);
    } catch (const ScanError& e) {
        err << "smellscan: " << e.what() << '\n';
        return exit_code::kIo;
    }

    if (!quiet) {
        for (const auto& line : result.log.entries()) err << line << '\n';
    }

    const ReportInputs inputs{config, result.report, result.summary, result.findings};
    try {
        emit(inputs, *format, out_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_path), out);
    } catch (const IoError& e) {
        err << "smellscan: " << e.what() << '\n';
        return exit_code::kIo;
    }

    if (fail_on_smell && result.report.grand_total > 0) return exit_code::kSmellsFound;
    return exit_code::kOk;
}

}  // namespace smellscan
