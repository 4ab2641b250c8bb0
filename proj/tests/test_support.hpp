#pragma once

// Shared helpers for the test binaries: temp trees, in-memory models, and the
// independent oracles the detectors are checked against.

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "smellscan/detectors.hpp"
#include "smellscan/ingest.hpp"
#include "smellscan/pipeline.hpp"

namespace smellscan::testing {

namespace fs = std::filesystem;

class TempDir {
public:
    TempDir() {
        static std::mt19937_64 rng{std::random_device{}()};
        path_ = fs::temp_directory_path() / ("smellscan_test_" + std::to_string(rng()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }

    fs::path write(const std::string& relative, std::string_view content) const {
        const auto full = path_ / relative;
        fs::create_directories(full.parent_path());
        std::ofstream out(full, std::ios::binary);
        out << content;
        return full;
    }

private:
    fs::path path_;
};

inline FileModel model_from_text(std::string_view text, std::string path = "t.py") {
    return build_file_model(sanitize_bytes(std::move(path), text));
}

inline std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

inline std::size_t count_kind(const std::vector<SmellFinding>& findings, SmellKind kind) {
    std::size_t n = 0;
    for (const auto& f : findings) n += f.kind == kind;
    return n;
}

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline fs::path fixture_dir() { return fs::path(SMELLSCAN_FIXTURE_DIR); }

namespace oracle {

/// Runs a shell command and returns its stdout.
inline std::string shell(const std::string& command) {
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(::popen(command.c_str(), "r"), ::pclose);
    std::string out;
    if (!pipe) return out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
    return out;
}

/// `find -type f -name pattern | sort` listing, relative to `root`.
inline std::vector<std::string> recursive_listing(const fs::path& root, const std::string& name_pattern) {
    const auto raw = shell("cd '" + root.string() + "' && find . -type f -name '" + name_pattern +
                           "' | sed 's|^\\./||' | LC_ALL=C sort");
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < raw.size()) {
        auto nl = raw.find('\n', start);
        if (nl == std::string::npos) nl = raw.size();
        if (nl > start) out.push_back(raw.substr(start, nl - start));
        start = nl + 1;
    }
    return out;
}

struct WindowHit {
    std::string path;
    std::size_t start_line;
    std::size_t end_line;
    bool operator==(const WindowHit&) const = default;
    bool operator<(const WindowHit& o) const {
        return std::tie(path, start_line, end_line) < std::tie(o.path, o.start_line, o.end_line);
    }
};

inline std::string strip(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\f\v\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\f\v\r");
    return s.substr(first, last - first + 1);
}

/// Exhaustive all-pairs window comparison: a window is a repeat iff some
/// window earlier in corpus order matches it line for line.
inline std::vector<WindowHit> brute_force_repeats(const std::vector<const FileModel*>& files, std::size_t window) {
    struct Window {
        const FileModel* file;
        std::size_t pos;
    };
    std::vector<Window> all;
    for (const auto* f : files) {
        for (std::size_t p = 0; p + window <= f->lines.size(); ++p) all.push_back({f, p});
    }
    std::vector<WindowHit> hits;
    for (std::size_t b = 0; b < all.size(); ++b) {
        for (std::size_t a = 0; a < b; ++a) {
            bool same = true;
            for (std::size_t k = 0; k < window && same; ++k) {
                same = strip(all[a].file->lines[all[a].pos + k].text) == strip(all[b].file->lines[all[b].pos + k].text);
            }
            if (same) {
                const auto& lines = all[b].file->lines;
                hits.push_back({all[b].file->source.path, lines[all[b].pos].physical_line,
                                lines[all[b].pos + window - 1].physical_line});
                break;
            }
        }
    }
    return hits;
}

}  // namespace oracle

/// Random indentation-structured source for property and scale tests. The
/// output contains no strings or brackets so every line is its own statement.
class SourceGenerator {
public:
    explicit SourceGenerator(std::uint64_t seed, double repeat_rate = 0.1) : rng_(seed), repeat_rate_(repeat_rate) {}

    std::string file(std::size_t target_lines) {
        lines_.clear();
        while (lines_.size() < target_lines) top_level(target_lines);
        std::string out;
        for (const auto& l : lines_) out += l + "\n";
        return out;
    }

private:
    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    std::string ident() {
        static const char* names[] = {"alpha", "beta", "gamma", "delta", "item", "value", "total", "node", "count"};
        return std::string(names[pick(9)]) + (chance(0.5) ? std::to_string(pick(5)) : "");
    }

    void emit(std::size_t depth, std::string text) { lines_.push_back(std::string(depth * 4, ' ') + text); }

    void statement(std::size_t depth) {
        switch (pick(6)) {
            case 0: emit(depth, ident() + " = " + ident() + " + " + std::to_string(pick(100))); break;
            case 1: emit(depth, ident() + ".append(" + ident() + ")"); break;
            case 2: emit(depth, "log(" + ident() + ", " + ident() + ")"); break;
            case 3: {
                std::string s = ident() + " = " + ident();
                const std::size_t extra = pick(12);
                for (std::size_t i = 0; i < extra; ++i) s += " + " + ident();
                emit(depth, s);
                break;
            }
            case 4: emit(depth, "# note " + ident()); break;
            default: emit(depth, ident() + " += 1"); break;
        }
    }

    void repeat_snippet(std::size_t depth) {
        static const char* snippets[][3] = {
            {"conn = open_connection(host)", "conn.send(payload)", "conn.close()"},
            {"start = clock()", "run_step(state)", "elapsed = clock() - start"},
            {"cache.clear()", "cache.load(path)", "cache.verify()"},
        };
        const auto& s = snippets[pick(3)];
        for (const char* l : s) emit(depth, l);
    }

    void body(std::size_t depth, std::size_t budget, bool in_function) {
        const std::size_t n = 1 + pick(budget);
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = pick(10);
            if (chance(repeat_rate_)) {
                repeat_snippet(depth);
            } else if (r < 5 || depth > 4) {
                statement(depth);
            } else if (r == 5) {
                emit(depth, "if " + ident() + " > " + std::to_string(pick(10)) + ":");
                body(depth + 1, budget / 2 + 1, in_function);
                if (chance(0.3)) {
                    emit(depth, "else:");
                    body(depth + 1, budget / 2 + 1, in_function);
                }
            } else if (r == 6) {
                emit(depth, (chance(0.7) ? "for " + ident() + " in " + ident() + ":" : "while " + ident() + ":"));
                body(depth + 1, budget / 2 + 1, in_function);
            } else if (r == 7 && in_function) {
                emit(depth, chance(0.5) ? "return " + ident() : "return");
                if (chance(0.3)) statement(depth);
                return;
            } else {
                statement(depth);
            }
        }
    }

    void function(std::size_t depth, bool method) {
        std::string header = "def " + ident() + "(";
        std::size_t params = pick(8);
        if (method) header += params ? "self, " : "self";
        for (std::size_t i = 0; i < params; ++i) header += (i ? ", " : "") + std::string("p") + std::to_string(i);
        emit(depth, header + "):");
        body(depth + 1, 1 + pick(30), true);
    }

    void top_level(std::size_t target) {
        const auto r = pick(10);
        if (r < 5) {
            function(0, false);
        } else if (r < 7) {
            emit(0, "class " + ident() + "(Base):");
            const std::size_t methods = 1 + pick(3);
            for (std::size_t i = 0; i < methods && lines_.size() < target + 50; ++i) function(1, true);
        } else if (r < 8) {
            repeat_snippet(0);
        } else {
            statement(0);
        }
    }

    std::mt19937_64 rng_;
    double repeat_rate_;
    std::vector<std::string> lines_;
};

}  // namespace smellscan::testing
