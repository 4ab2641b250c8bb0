#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "smellscan/config.hpp"
#include "smellscan/detectors.hpp"
#include "smellscan/ingest.hpp"
#include "smellscan/report.hpp"

namespace smellscan {

/// Strips comments, classifies lines and extracts blocks.
FileModel build_file_model(SourceFile source);

struct ScanResult {
    std::vector<FileModel> files;  ///< sorted by path
    std::vector<SmellFinding> findings;
    BucketReport report;
    NormalizedSummary summary;
    ScanLog log;
};

/// Full pipeline: discover, load, model, detect, aggregate. `jobs` = 0 picks
/// the hardware concurrency. Output is identical for every value of `jobs`.
/// Throws ScanError when the root is unusable.
ScanResult scan(const ScanConfig& config, std::size_t jobs = 1);

}  // namespace smellscan
