#include "smellscan/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <system_error>

namespace smellscan {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::vector<FileSize> file_sizes(std::span<const FileModel> files) {
    std::vector<FileSize> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back({f.source.path, f.source.effective_loc});
    return out;
}

std::string bucket_label(const Bucket& bucket) {
    if (!bucket.upper) return std::to_string(bucket.lower) + "+";
    return std::to_string(bucket.lower) + "-" + std::to_string(*bucket.upper - 1);
}

BucketReport empty_report() {
    BucketReport r;
    for (std::size_t b = 0; b < kBucketCount; ++b) {
        r.buckets[b].lower = b * kBucketWidth;
        if (b + 1 < kBucketCount) r.buckets[b].upper = (b + 1) * kBucketWidth;
    }
    return r;
}

void recompute_totals(BucketReport& report) {
    report.row_totals.fill(0);
    report.grand_total = report.files_total = report.loc_total = 0;
    for (const auto& bucket : report.buckets) {
        for (std::size_t k = 0; k < kSmellKindCount; ++k) report.row_totals[k] += bucket.counts[k];
        report.files_total += bucket.files;
        report.loc_total += bucket.loc;
    }
    for (auto total : report.row_totals) report.grand_total += total;
}

void check_consistency(const BucketReport& report) {
    BucketReport expected = report;
    recompute_totals(expected);
    if (expected.row_totals != report.row_totals) throw ConsistencyError("bucket columns do not sum to row totals");
    if (expected.grand_total != report.grand_total) throw ConsistencyError("row totals do not sum to grand total");
    if (expected.files_total != report.files_total) throw ConsistencyError("bucket file counts do not sum to total");
    if (expected.loc_total != report.loc_total) throw ConsistencyError("bucket loc does not sum to total");
}

BucketReport bucket_findings(std::span<const SmellFinding> findings, std::span<const FileSize> files) {
    BucketReport report = empty_report();
    std::map<std::string, std::size_t, std::less<>> bucket_of;
    for (const auto& f : files) {
        const auto b = bucket_index(f.loc);
        bucket_of[f.path] = b;
        ++report.buckets[b].files;
        report.buckets[b].loc += f.loc;
    }
    for (const auto& finding : findings) {
        auto it = bucket_of.find(finding.path);
        if (it == bucket_of.end()) throw ConsistencyError("finding refers to unscanned file: " + finding.path);
        ++report.buckets[it->second].counts[index_of(finding.kind)];
    }
    recompute_totals(report);
    check_consistency(report);
    return report;
}

NormalizedSummary normalize(const BucketReport& report, Normalization mode) {
    NormalizedSummary s;
    s.mode = mode;
    if (report.files_total == 0) s.warnings.emplace_back("empty corpus: no files scanned");

    auto ratios = [&](std::size_t denominator, const char* name) {
        KindRatios r{};
        if (denominator == 0) {
            if (report.files_total != 0) s.warnings.push_back(std::string("zero denominator for ") + name);
            return r;
        }
        for (std::size_t k = 0; k < kSmellKindCount; ++k) {
            r[k] = static_cast<double>(report.row_totals[k]) / static_cast<double>(denominator);
        }
        return r;
    };
    if (mode != Normalization::PerLoc) s.per_file = ratios(report.files_total, "per_file");
    if (mode != Normalization::PerFile) s.per_loc = ratios(report.loc_total, "per_loc");

    for (std::size_t b = 0; b < kBucketCount; ++b) {
        const auto& bucket = report.buckets[b];
        for (std::size_t k = 0; k < kSmellKindCount; ++k) {
            s.per_bucket_per_loc[b][k] =
                bucket.loc == 0 ? 0.0 : static_cast<double>(bucket.counts[k]) / static_cast<double>(bucket.loc);
        }
    }
    return s;
}

std::string format_ratio(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", value);
    return buf;
}

std::optional<ReportFormat> report_format_from_string(std::string_view name) {
    if (name == "text") return ReportFormat::Text;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    return std::nullopt;
}

std::string csv_quote(std::string_view field) {
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string csv_path(std::string_view path) {
    return path.find_first_of(",\"\n") == std::string_view::npos ? std::string(path) : csv_quote(path);
}

std::string span_text(const SmellFinding& f) {
    std::string s = f.path + ":" + std::to_string(f.start_line);
    if (f.end_line != f.start_line) s += "-" + std::to_string(f.end_line);
    return s;
}

// Left-aligned first column, right-aligned numeric columns.
void write_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return;
    std::vector<std::size_t> widths(rows.front().size(), 0);
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
    }
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const auto pad = std::string(widths[c] - row[c].size(), ' ');
            if (c == 0) {
                line += row[c] + pad;
            } else {
                line += "  " + pad + row[c];
            }
        }
        out << line << '\n';
    }
}

double rounded(double v) { return std::round(v * 1000.0) / 1000.0; }

ordered_json ratios_json(const KindRatios& r) {
    ordered_json j = ordered_json::object();
    for (auto kind : kAllSmellKinds) j[std::string(to_string(kind))] = rounded(r[index_of(kind)]);
    return j;
}

ordered_json counts_json(const KindCounts& c) {
    ordered_json j = ordered_json::object();
    for (auto kind : kAllSmellKinds) j[std::string(to_string(kind))] = c[index_of(kind)];
    return j;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

template <typename Writer>
std::string render(Writer&& writer) {
    std::ostringstream os;
    writer(os);
    return os.str();
}

}  // namespace

void write_text(std::ostream& out, const ReportInputs& in) {
    const auto& report = in.report;
    out << "Scanned " << report.files_total << " files, " << report.loc_total << " uncommented loc, "
        << in.findings.size() << " findings\n\n";

    out << "Findings\n";
    if (in.findings.empty()) {
        out << "  (none)\n";
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& f : in.findings) rows.push_back({"  " + span_text(f), std::string(to_string(f.kind)), f.message});
        // Messages are free text, so keep them left-aligned at the end.
        std::size_t w0 = 0, w1 = 0;
        for (const auto& r : rows) {
            w0 = std::max(w0, r[0].size());
            w1 = std::max(w1, r[1].size());
        }
        for (const auto& r : rows) {
            out << r[0] << std::string(w0 - r[0].size(), ' ') << "  " << r[1] << std::string(w1 - r[1].size(), ' ')
                << "  " << r[2] << '\n';
        }
    }

    out << "\nSmell counts by file size (uncommented loc)\n";
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> header{"smell"};
    for (const auto& b : report.buckets) header.push_back(bucket_label(b));
    header.emplace_back("total");
    table.push_back(header);
    for (auto kind : kAllSmellKinds) {
        std::vector<std::string> row{std::string(display_name(kind))};
        for (const auto& b : report.buckets) row.push_back(std::to_string(b.counts[index_of(kind)]));
        row.push_back(std::to_string(report.row_totals[index_of(kind)]));
        table.push_back(row);
    }
    std::vector<std::string> totals{"All smells"}, files{"Number of files"}, loc{"Uncommented loc"};
    for (const auto& b : report.buckets) {
        std::size_t sum = 0;
        for (auto c : b.counts) sum += c;
        totals.push_back(std::to_string(sum));
        files.push_back(std::to_string(b.files));
        loc.push_back(std::to_string(b.loc));
    }
    totals.push_back(std::to_string(report.grand_total));
    files.push_back(std::to_string(report.files_total));
    loc.push_back(std::to_string(report.loc_total));
    table.push_back(totals);
    table.push_back(files);
    table.push_back(loc);
    write_table(out, table);

    out << "\nNormalized counts\n";
    std::vector<std::vector<std::string>> norm{{"smell", "count", "per_file", "per_loc"}};
    for (auto kind : kAllSmellKinds) {
        const auto k = index_of(kind);
        norm.push_back({std::string(display_name(kind)), std::to_string(report.row_totals[k]),
                        in.summary.per_file ? format_ratio((*in.summary.per_file)[k]) : "-",
                        in.summary.per_loc ? format_ratio((*in.summary.per_loc)[k]) : "-"});
    }
    write_table(out, norm);
}

void write_findings_csv(std::ostream& out, std::span<const SmellFinding> findings) {
    out << "kind,path,start_line,end_line,unit,message\n";
    for (const auto& f : findings) {
        out << to_string(f.kind) << ',' << csv_path(f.path) << ',' << f.start_line << ',' << f.end_line << ','
            << f.unit_name.value_or("") << ',' << csv_quote(f.message) << '\n';
    }
}

void write_buckets_csv(std::ostream& out, const BucketReport& report) {
    out << "kind";
    for (const auto& b : report.buckets) out << ',' << bucket_label(b);
    out << ",total\n";
    for (auto kind : kAllSmellKinds) {
        out << to_string(kind);
        for (const auto& b : report.buckets) out << ',' << b.counts[index_of(kind)];
        out << ',' << report.row_totals[index_of(kind)] << '\n';
    }
    out << "all";
    for (const auto& b : report.buckets) {
        std::size_t sum = 0;
        for (auto c : b.counts) sum += c;
        out << ',' << sum;
    }
    out << ',' << report.grand_total << '\n';
    out << "files";
    for (const auto& b : report.buckets) out << ',' << b.files;
    out << ',' << report.files_total << '\n';
    out << "loc";
    for (const auto& b : report.buckets) out << ',' << b.loc;
    out << ',' << report.loc_total << '\n';
}

void write_normalized_csv(std::ostream& out, const BucketReport& report, const NormalizedSummary& summary) {
    out << "kind,count,per_file,per_loc\n";
    for (auto kind : kAllSmellKinds) {
        const auto k = index_of(kind);
        out << to_string(kind) << ',' << report.row_totals[k] << ','
            << (summary.per_file ? format_ratio((*summary.per_file)[k]) : "") << ','
            << (summary.per_loc ? format_ratio((*summary.per_loc)[k]) : "") << '\n';
    }
}

void write_series_csv(std::ostream& out, const BucketReport& report, const NormalizedSummary& summary) {
    out << "kind";
    for (const auto& b : report.buckets) out << ',' << bucket_label(b);
    out << '\n';
    for (auto kind : kAllSmellKinds) {
        out << to_string(kind);
        for (std::size_t b = 0; b < kBucketCount; ++b) {
            out << ',' << format_ratio(summary.per_bucket_per_loc[b][index_of(kind)]);
        }
        out << '\n';
    }
}

ordered_json to_json(const ReportInputs& in) {
    const auto& cfg = in.config;
    const auto& t = cfg.thresholds;
    ordered_json doc;
    doc["version"] = kJsonReportVersion;
    doc["config_echo"] = {
        {"root", cfg.root_path.generic_string()},
        {"include", cfg.include_globs},
        {"exclude", cfg.exclude_globs},
        {"scope", to_string(cfg.duplicate_scope)},
        {"normalization", to_string(cfg.normalization)},
        {"thresholds",
         {{"long_statement_words", t.long_statement_words},
          {"long_class_lines", t.long_class_lines},
          {"long_method_lines", t.long_method_lines},
          {"long_loop_lines", t.long_loop_lines},
          {"long_conditional_lines", t.long_conditional_lines},
          {"max_params", t.max_parameters},
          {"dup_window", t.duplicate_window_lines}}},
    };
    doc["files_total"] = in.report.files_total;
    doc["loc_total"] = in.report.loc_total;

    ordered_json findings = ordered_json::array();
    for (const auto& f : in.findings) {
        ordered_json j;
        j["kind"] = to_string(f.kind);
        j["path"] = f.path;
        j["start_line"] = f.start_line;
        j["end_line"] = f.end_line;
        j["unit"] = f.unit_name ? ordered_json(*f.unit_name) : ordered_json(nullptr);
        j["message"] = f.message;
        findings.push_back(std::move(j));
    }
    doc["findings"] = std::move(findings);

    ordered_json buckets = ordered_json::array();
    for (const auto& b : in.report.buckets) {
        ordered_json j;
        j["label"] = bucket_label(b);
        j["lower"] = b.lower;
        j["upper"] = b.upper ? ordered_json(*b.upper) : ordered_json(nullptr);
        j["files"] = b.files;
        j["loc"] = b.loc;
        j["counts"] = counts_json(b.counts);
        buckets.push_back(std::move(j));
    }
    doc["buckets"] = std::move(buckets);

    ordered_json normalized;
    normalized["mode"] = to_string(in.summary.mode);
    normalized["row_totals"] = counts_json(in.report.row_totals);
    normalized["grand_total"] = in.report.grand_total;
    normalized["per_file"] = in.summary.per_file ? ratios_json(*in.summary.per_file) : ordered_json(nullptr);
    normalized["per_loc"] = in.summary.per_loc ? ratios_json(*in.summary.per_loc) : ordered_json(nullptr);
    ordered_json series = ordered_json::array();
    for (std::size_t b = 0; b < kBucketCount; ++b) {
        series.push_back({{"label", bucket_label(in.report.buckets[b])},
                          {"ratios", ratios_json(in.summary.per_bucket_per_loc[b])}});
    }
    normalized["per_bucket_per_loc"] = std::move(series);
    doc["normalized"] = std::move(normalized);
    return doc;
}

BucketReport report_from_json(const ordered_json& doc) {
    if (!doc.contains("buckets") || doc["buckets"].size() != kBucketCount) {
        throw ConsistencyError("report json must contain 11 buckets");
    }
    BucketReport report = empty_report();
    for (std::size_t b = 0; b < kBucketCount; ++b) {
        const auto& j = doc["buckets"][b];
        auto& bucket = report.buckets[b];
        if (j.at("lower").get<std::size_t>() != bucket.lower) throw ConsistencyError("bucket bounds mismatch");
        bucket.files = j.at("files").get<std::size_t>();
        bucket.loc = j.at("loc").get<std::size_t>();
        for (auto kind : kAllSmellKinds) {
            bucket.counts[index_of(kind)] = j.at("counts").at(std::string(to_string(kind))).get<std::size_t>();
        }
    }
    recompute_totals(report);

    if (doc.at("files_total").get<std::size_t>() != report.files_total ||
        doc.at("loc_total").get<std::size_t>() != report.loc_total) {
        throw ConsistencyError("document totals disagree with buckets");
    }
    KindCounts from_findings{};
    for (const auto& f : doc.at("findings")) {
        auto kind = smell_kind_from_string(f.at("kind").get<std::string>());
        if (!kind) throw ConsistencyError("unknown smell kind in findings");
        ++from_findings[index_of(*kind)];
    }
    if (from_findings != report.row_totals) throw ConsistencyError("findings disagree with bucket counts");
    return report;
}

void emit(const ReportInputs& in, ReportFormat format, const std::optional<fs::path>& destination,
          std::ostream& standard_out) {
    auto deliver = [&](const std::string& content, const fs::path& target) {
        if (destination) {
            write_file(target, content);
        } else {
            standard_out << content;
        }
    };

    switch (format) {
        case ReportFormat::Text:
            deliver(render([&](std::ostream& os) { write_text(os, in); }), destination.value_or(fs::path{}));
            break;
        case ReportFormat::Json:
            deliver(to_json(in).dump(2) + "\n", destination.value_or(fs::path{}));
            break;
        case ReportFormat::Csv: {
            const std::pair<const char*, std::string> parts[] = {
                {"findings.csv", render([&](std::ostream& os) { write_findings_csv(os, in.findings); })},
                {"buckets.csv", render([&](std::ostream& os) { write_buckets_csv(os, in.report); })},
                {"normalized.csv", render([&](std::ostream& os) { write_normalized_csv(os, in.report, in.summary); })},
                {"series.csv", render([&](std::ostream& os) { write_series_csv(os, in.report, in.summary); })},
            };
            if (destination) {
                std::error_code ec;
                fs::create_directories(*destination, ec);
                if (ec || !fs::is_directory(*destination)) {
                    throw IoError("cannot create output directory: " + destination->string());
                }
                for (const auto& [name, content] : parts) write_file(*destination / name, content);
            } else {
                bool first = true;
                for (const auto& [name, content] : parts) {
                    if (!first) standard_out << '\n';
                    first = false;
                    standard_out << "# " << name << '\n' << content;
                }
            }
            break;
        }
    }
    if (!destination) {
        standard_out.flush();
        if (!standard_out) throw IoError("failed writing report to standard output");
    }
}

}  // namespace smellscan
