#include "smellscan/ingest.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

namespace smellscan {

namespace fs = std::filesystem;

void ScanLog::noise(std::string_view path, std::size_t line, std::string_view reason) {
    std::ostringstream os;
    os << "NOISE " << path << ':' << line << ' ' << reason;
    entries_.push_back(os.str());
}

void ScanLog::skip(std::string_view path, std::string_view reason) {
    entries_.push_back("SKIP " + std::string(path) + " " + std::string(reason));
}

void ScanLog::warn(std::string_view path, std::string_view reason) {
    entries_.push_back("WARN " + std::string(path) + " " + std::string(reason));
}

void ScanLog::append(const ScanLog& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool glob_matches(std::string_view pattern, std::string_view relative_path) {
    const std::string pat(pattern);
    std::string subject(relative_path);
    if (pat.find('/') == std::string::npos) {
        if (auto slash = subject.rfind('/'); slash != std::string::npos) subject = subject.substr(slash + 1);
    }
    return ::fnmatch(pat.c_str(), subject.c_str(), 0) == 0;
}

namespace {

bool any_match(const std::vector<std::string>& patterns, std::string_view path) {
    return std::any_of(patterns.begin(), patterns.end(),
                       [&](const std::string& p) { return glob_matches(p, path); });
}

void walk(const fs::path& root, const fs::path& dir, const ScanConfig& config, ScanLog& log,
          std::vector<std::string>& out) {
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    const auto rel_dir = dir.lexically_relative(root).generic_string();
    if (ec) {
        log.skip(rel_dir, "unreadable directory: " + ec.message());
        return;
    }
    for (const fs::directory_iterator end; it != end; it.increment(ec)) {
        if (ec) {
            log.skip(rel_dir, "directory listing failed: " + ec.message());
            return;
        }
        const auto& entry = *it;
        std::error_code status_ec;
        const auto status = entry.symlink_status(status_ec);
        if (status_ec || fs::is_symlink(status)) continue;

        const auto rel = entry.path().lexically_relative(root).generic_string();
        if (fs::is_directory(status)) {
            if (!any_match(config.exclude_globs, rel)) walk(root, entry.path(), config, log, out);
        } else if (fs::is_regular_file(status)) {
            if (any_match(config.include_globs, rel) && !any_match(config.exclude_globs, rel)) {
                out.push_back(rel);
            }
        }
    }
}

// Length of a valid UTF-8 sequence starting at `pos`, or 0 if invalid.
std::size_t valid_utf8_length(std::string_view s, std::size_t pos) {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    const unsigned char lead = byte(pos);
    if (lead < 0x80) return 1;

    std::size_t len = 0;
    unsigned char lo = 0x80, hi = 0xBF;  // bounds for the second byte
    if (lead >= 0xC2 && lead <= 0xDF) {
        len = 2;
    } else if (lead >= 0xE0 && lead <= 0xEF) {
        len = 3;
        if (lead == 0xE0) lo = 0xA0;  // overlong
        if (lead == 0xED) hi = 0x9F;  // surrogates
    } else if (lead >= 0xF0 && lead <= 0xF4) {
        len = 4;
        if (lead == 0xF0) lo = 0x90;
        if (lead == 0xF4) hi = 0x8F;
    } else {
        return 0;
    }
    if (pos + len > s.size()) return 0;
    if (byte(pos + 1) < lo || byte(pos + 1) > hi) return 0;
    for (std::size_t i = 2; i < len; ++i) {
        if ((byte(pos + i) & 0xC0) != 0x80) return 0;
    }
    return len;
}

constexpr std::string_view kReplacement = "\xEF\xBF\xBD";

}  // namespace

std::vector<std::string> discover_files(const ScanConfig& config, ScanLog& log) {
    const auto& root = config.root_path;
    std::error_code ec;
    if (!fs::exists(root, ec) || ec) throw ScanError("root does not exist: " + root.string());
    if (!fs::is_directory(root, ec) || ec) throw ScanError("root is not a directory: " + root.string());
    {
        fs::directory_iterator probe(root, ec);
        if (ec) throw ScanError("root is unreadable: " + root.string() + ": " + ec.message());
    }

    std::vector<std::string> out;
    walk(root, root, config, log, out);
    std::sort(out.begin(), out.end());
    return out;
}

SourceFile sanitize_bytes(std::string path, std::string_view bytes) {
    SourceFile file;
    file.path = std::move(path);

    std::size_t start = 0;
    while (start < bytes.size()) {
        auto nl = bytes.find('\n', start);
        const bool last = nl == std::string_view::npos;
        std::string_view raw = bytes.substr(start, last ? std::string_view::npos : nl - start);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

        std::string line;
        line.reserve(raw.size());
        bool dirty = false;
        for (std::size_t i = 0; i < raw.size();) {
            if (auto len = valid_utf8_length(raw, i); len > 0) {
                line.append(raw.substr(i, len));
                i += len;
                continue;
            }
            dirty = true;
            line.append(kReplacement);
            // One placeholder per run of undecodable bytes.
            while (i < raw.size() && valid_utf8_length(raw, i) == 0) ++i;
        }
        file.raw_lines.push_back(std::move(line));
        if (dirty) file.sanitization_log.push_back({file.raw_lines.size(), "undecodable bytes"});

        if (last) break;
        start = nl + 1;
    }
    return file;
}

std::optional<SourceFile> load_and_sanitize(const fs::path& root, const std::string& relative_path,
                                            ScanLog& log) {
    std::ifstream in(root / relative_path, std::ios::binary);
    if (!in) {
        log.skip(relative_path, "cannot open file");
        return std::nullopt;
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        log.skip(relative_path, "read error");
        return std::nullopt;
    }
    auto file = sanitize_bytes(relative_path, bytes);
    for (const auto& entry : file.sanitization_log) log.noise(file.path, entry.line_number, entry.reason);
    return file;
}

namespace {

struct OpenString {
    char quote = '"';
    bool triple = false;
    bool docstring = false;
};

bool is_string_prefix(char c) {
    switch (c) {
        case 'r': case 'R': case 'b': case 'B': case 'u': case 'U': case 'f': case 'F':
            return true;
        default:
            return false;
    }
}

// Position of the opening quote if the statement begins with a string
// literal (after indentation and an optional prefix), otherwise npos.
std::size_t statement_string_start(std::string_view line) {
    std::size_t i = line.find_first_not_of(" \t\f");
    if (i == std::string_view::npos) return i;
    std::size_t j = i;
    while (j < line.size() && j - i < 2 && is_string_prefix(line[j])) ++j;
    if (j < line.size() && (line[j] == '"' || line[j] == '\'')) return j;
    return std::string_view::npos;
}

bool opens_triple(std::string_view line, std::size_t i) {
    return i + 2 < line.size() && line[i + 1] == line[i] && line[i + 2] == line[i];
}

// Scans for the end of an open string from `i`. Returns the index one past
// the closing delimiter, or npos if the string stays open.
std::size_t find_string_close(std::string_view line, std::size_t i, const OpenString& s) {
    while (i < line.size()) {
        const char c = line[i];
        if (c == '\\') {
            i += 2;
            continue;
        }
        if (c == s.quote) {
            if (!s.triple) return i + 1;
            if (opens_triple(line, i)) return i + 3;
        }
        ++i;
    }
    return std::string_view::npos;
}

std::string_view rtrim(std::string_view s) {
    auto end = s.find_last_not_of(" \t\f\v\r");
    return end == std::string_view::npos ? std::string_view{} : s.substr(0, end + 1);
}

}  // namespace

std::vector<LineRecord> strip_comments_and_blanks(SourceFile& file) {
    std::vector<LineRecord> records;
    std::optional<OpenString> open;
    int depth = 0;
    bool backslash_pending = false;
    bool tab_indent = false;
    bool space_indent = false;

    for (std::size_t n = 0; n < file.raw_lines.size(); ++n) {
        const std::string_view line = file.raw_lines[n];

        if (open && open->docstring) {
            if (find_string_close(line, 0, *open) != std::string_view::npos) open.reset();
            continue;
        }

        const bool continuation = open.has_value() || depth > 0 || backslash_pending;
        backslash_pending = false;

        const std::size_t doc_quote = continuation ? std::string_view::npos : statement_string_start(line);
        std::size_t first_string_end = std::string_view::npos;
        std::size_t open_start = std::string_view::npos;  // where a still-open string began

        std::size_t code_end = line.size();  // truncation point for a trailing comment
        std::size_t i = 0;
        while (i < line.size()) {
            if (open) {
                auto close = find_string_close(line, i, *open);
                if (close == std::string_view::npos) {
                    i = line.size();
                    break;
                }
                open.reset();
                i = close;
                continue;
            }
            const char c = line[i];
            if (c == '#') {
                code_end = i;
                break;
            }
            if (c == '"' || c == '\'') {
                const bool triple = opens_triple(line, i);
                open = OpenString{c, triple, false};
                const std::size_t body = i + (triple ? 3 : 1);
                auto close = find_string_close(line, body, *open);
                if (close == std::string_view::npos) {
                    open_start = i;
                    i = line.size();
                    break;
                }
                open.reset();
                if (i == doc_quote) first_string_end = close;
                i = close;
                continue;
            }
            if (c == '(' || c == '[' || c == '{') ++depth;
            if ((c == ')' || c == ']' || c == '}') && depth > 0) --depth;
            ++i;
        }

        if (open && !open->triple) {
            // Single-quoted strings only survive a newline via a trailing backslash.
            if (!line.empty() && line.back() == '\\') {
                backslash_pending = true;
            }
            open.reset();
        } else if (!open) {
            auto code = rtrim(line.substr(0, code_end));
            if (!code.empty() && code.back() == '\\' && code_end == line.size()) backslash_pending = true;
        }

        // Documentation strings: a string literal standing alone as a statement.
        if (doc_quote != std::string_view::npos) {
            if (open && open->triple && open_start == doc_quote) {
                open->docstring = true;
                continue;
            }
            if (first_string_end != std::string_view::npos &&
                rtrim(line.substr(first_string_end, code_end - std::min(code_end, first_string_end))).empty()) {
                continue;
            }
        }

        auto text = rtrim(line.substr(0, code_end));
        if (text.find_first_not_of(" \t\f\v") == std::string_view::npos) continue;

        LineRecord rec;
        rec.physical_line = n + 1;
        rec.text = std::string(text);
        rec.lead_spaces = get_lead_spaces(rec.text);
        rec.word_count = count_words(rec.text);
        rec.index = records.size();
        rec.continuation = continuation;
        rec.kind = classify_line(rec);
        if (!continuation) {
            const auto indent = std::string_view(rec.text).substr(0, rec.lead_spaces);
            tab_indent |= indent.find('\t') != std::string_view::npos;
            space_indent |= indent.find(' ') != std::string_view::npos;
        }
        records.push_back(std::move(rec));
    }

    file.effective_loc = records.size();
    file.mixed_indentation = tab_indent && space_indent;
    return records;
}

}  // namespace smellscan
