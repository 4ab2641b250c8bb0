#include "smellscan/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <iterator>
#include <thread>

namespace smellscan {

FileModel build_file_model(SourceFile source) {
    FileModel model;
    model.lines = strip_comments_and_blanks(source);
    model.blocks = extract_blocks(model.lines);
    model.source = std::move(source);
    return model;
}

namespace {

struct FileSlot {
    std::optional<FileModel> model;
    std::vector<SmellFinding> findings;
    ScanLog log;
};

void process(const ScanConfig& config, const std::string& path, FileSlot& slot) {
    auto source = load_and_sanitize(config.root_path, path, slot.log);
    if (!source) return;
    auto model = build_file_model(std::move(*source));
    if (model.source.mixed_indentation) slot.log.warn(path, "mixed tab/space indentation");
    for_each_block(model.blocks, [&](const Block& block) {
        if (block.signature && block.signature->malformed) {
            slot.log.warn(path, "malformed function signature at line " + std::to_string(block.header_line));
        }
    });
    slot.findings = detect_file(model, config);
    slot.model = std::move(model);
}

}  // namespace

ScanResult scan(const ScanConfig& config, std::size_t jobs) {
    validate(config.thresholds);
    ScanResult result;
    const auto paths = discover_files(config, result.log);

    std::vector<FileSlot> slots(paths.size());
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, paths.size());

    if (jobs <= 1) {
        for (std::size_t i = 0; i < paths.size(); ++i) process(config, paths[i], slots[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> workers;
        workers.reserve(jobs);
        for (std::size_t w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < paths.size(); i = next++) process(config, paths[i], slots[i]);
            });
        }
    }

    for (auto& slot : slots) {
        result.log.append(slot.log);
        std::move(slot.findings.begin(), slot.findings.end(), std::back_inserter(result.findings));
        if (slot.model) result.files.push_back(std::move(*slot.model));
    }
    auto corpus = detect_corpus_scope(result.files, config);
    std::move(corpus.begin(), corpus.end(), std::back_inserter(result.findings));
    std::sort(result.findings.begin(), result.findings.end(), finding_less);

    const auto sizes = file_sizes(result.files);
    result.report = bucket_findings(result.findings, sizes);
    result.summary = normalize(result.report, config.normalization);
    for (const auto& w : result.summary.warnings) result.log.warn("(report)", w);
    return result;
}

}  // namespace smellscan
