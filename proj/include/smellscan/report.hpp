#pragma once

// Bucket table, normalized summary, and the text/csv/json emitters.

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "smellscan/config.hpp"
#include "smellscan/detectors.hpp"

namespace smellscan {

inline constexpr std::size_t kBucketCount = 11;
inline constexpr std::size_t kBucketWidth = 100;

using KindCounts = std::array<std::size_t, kSmellKindCount>;
using KindRatios = std::array<double, kSmellKindCount>;

/// Files whose effective loc falls in [lower, upper); the last bucket is open.
struct Bucket {
    std::size_t lower = 0;
    std::optional<std::size_t> upper;
    std::size_t files = 0;
    std::size_t loc = 0;
    KindCounts counts{};

    bool operator==(const Bucket&) const = default;
};

struct BucketReport {
    std::array<Bucket, kBucketCount> buckets;
    KindCounts row_totals{};
    std::size_t grand_total = 0;
    std::size_t files_total = 0;
    std::size_t loc_total = 0;

    bool operator==(const BucketReport&) const = default;
};

/// Broken report invariant, or a finding for a file that was never scanned.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FileSize {
    std::string path;
    std::size_t loc = 0;
};

std::vector<FileSize> file_sizes(std::span<const FileModel> files);

/// 0..9 for [k*100, (k+1)*100), 10 for 1000 and above.
constexpr std::size_t bucket_index(std::size_t loc) {
    return loc / kBucketWidth < kBucketCount - 1 ? loc / kBucketWidth : kBucketCount - 1;
}

std::string bucket_label(const Bucket& bucket);

/// An empty report with bucket bounds filled in.
BucketReport empty_report();

/// Recomputes row_totals, grand_total, files_total and loc_total from the buckets.
void recompute_totals(BucketReport& report);

/// Throws ConsistencyError unless row, column and grand sums agree.
void check_consistency(const BucketReport& report);

BucketReport bucket_findings(std::span<const SmellFinding> findings, std::span<const FileSize> files);

struct NormalizedSummary {
    Normalization mode = Normalization::Both;
    std::optional<KindRatios> per_file;
    std::optional<KindRatios> per_loc;
    /// counts / loc_in_bucket, 0 for empty buckets.
    std::array<KindRatios, kBucketCount> per_bucket_per_loc{};
    std::vector<std::string> warnings;
};

NormalizedSummary normalize(const BucketReport& report, Normalization mode);

/// Fixed three-decimal rendering, e.g. 0.254 or 13.220.
std::string format_ratio(double value);

enum class ReportFormat { Text, Csv, Json };

std::optional<ReportFormat> report_format_from_string(std::string_view name);

struct ReportInputs {
    const ScanConfig& config;
    const BucketReport& report;
    const NormalizedSummary& summary;
    std::span<const SmellFinding> findings;
};

void write_text(std::ostream& out, const ReportInputs& in);
void write_findings_csv(std::ostream& out, std::span<const SmellFinding> findings);
void write_buckets_csv(std::ostream& out, const BucketReport& report);
void write_normalized_csv(std::ostream& out, const BucketReport& report, const NormalizedSummary& summary);
/// Per-bucket smells per loc: the plottable size-trend series.
void write_series_csv(std::ostream& out, const BucketReport& report, const NormalizedSummary& summary);

inline constexpr int kJsonReportVersion = 1;

nlohmann::ordered_json to_json(const ReportInputs& in);

/// Rebuilds the bucket table from an emitted json document and checks it
/// against the document's findings.
BucketReport report_from_json(const nlohmann::ordered_json& doc);

/// Serializes to `destination`, or to `standard_out` when no destination is
/// given. For csv, a destination is a directory receiving findings.csv,
/// buckets.csv, normalized.csv and series.csv. Throws IoError.
void emit(const ReportInputs& in, ReportFormat format, const std::optional<std::filesystem::path>& destination,
          std::ostream& standard_out);

/// Quotes a CSV field, doubling embedded quotes.
std::string csv_quote(std::string_view field);

}  // namespace smellscan
