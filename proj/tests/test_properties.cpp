#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <map>

#include "smellscan/detectors.hpp"
#include "smellscan/pipeline.hpp"
#include "smellscan/report.hpp"
#include "test_support.hpp"

namespace smellscan {
namespace {

using testing::model_from_text;
using testing::SourceGenerator;
using testing::TempDir;

std::array<std::size_t, kSmellKindCount> counts_by_kind(const std::vector<SmellFinding>& findings) {
    std::array<std::size_t, kSmellKindCount> c{};
    for (const auto& f : findings) ++c[index_of(f.kind)];
    return c;
}

std::vector<SmellFinding> detect(const FileModel& m, const Thresholds& t) {
    ScanConfig cfg;
    cfg.thresholds = t;
    return run_all_detectors(std::span<const FileModel>(&m, 1), cfg);
}

TEST(Properties, RaisingAThresholdNeverAddsFindings) {
    std::array<std::size_t, kSmellKindCount> seen{};
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        SourceGenerator gen(seed);
        const auto m = model_from_text(gen.file(150));
        const Thresholds base{.long_statement_words = 8,
                              .long_class_lines = 15,
                              .long_method_lines = 8,
                              .long_loop_lines = 4,
                              .long_conditional_lines = 3,
                              .max_parameters = 3,
                              .duplicate_window_lines = 2};
        const auto before = counts_by_kind(detect(m, base));
        for (std::size_t k = 0; k < kSmellKindCount; ++k) seen[k] += before[k];
        Thresholds raised = base;
        raised.long_statement_words += 3;
        raised.long_class_lines += 10;
        raised.long_method_lines += 5;
        raised.long_loop_lines += 2;
        raised.long_conditional_lines += 2;
        raised.max_parameters += 2;
        raised.duplicate_window_lines += 1;
        const auto after = counts_by_kind(detect(m, raised));
        for (auto kind : {SmellKind::LongStatement, SmellKind::LongClassOrMethod, SmellKind::LongConditionalOrLoop,
                          SmellKind::LongParameterList}) {
            EXPECT_LE(after[index_of(kind)], before[index_of(kind)]) << "seed " << seed << " " << to_string(kind);
        }
        // Threshold-free rules do not move.
        for (auto kind : {SmellKind::DeadCode, SmellKind::MultipleReturns, SmellKind::SameFunctionName}) {
            EXPECT_EQ(after[index_of(kind)], before[index_of(kind)]) << "seed " << seed;
        }
    }
    // The generated sources must exercise every rule or the comparison is vacuous.
    for (auto kind : kAllSmellKinds) EXPECT_GT(seen[index_of(kind)], 0u) << to_string(kind);
}

TEST(Properties, MethodLengthBoundaryIsExactForManyThresholds) {
    for (std::size_t t = 1; t <= 45; t += 4) {
        Thresholds th;
        th.long_method_lines = t;
        for (std::size_t body : {t, t + 1}) {
            std::string src = "def f():\n";
            for (std::size_t i = 0; i < body; ++i) src += "    v" + std::to_string(i) + " = " + std::to_string(i) + "\n";
            const auto n = testing::count_kind(detect(model_from_text(src), th), SmellKind::LongClassOrMethod);
            EXPECT_EQ(n, body > t ? 1u : 0u) << "threshold " << t << " body " << body;
        }
    }
}

void check_forest(const std::vector<Block>& forest, const Block* parent) {
    for (std::size_t i = 0; i < forest.size(); ++i) {
        const auto& b = forest[i];
        EXPECT_LE(b.header_index, b.body_index);
        EXPECT_LE(b.body_index, b.end_index);
        EXPECT_LE(b.header_line, b.last_line());
        if (parent) {
            EXPECT_GT(b.header_lead_spaces, parent->header_lead_spaces);
            EXPECT_GE(b.header_index, parent->body_index);
            EXPECT_LE(b.end_index, parent->end_index);
        }
        if (i > 0) EXPECT_LE(forest[i - 1].end_index, b.header_index);
        check_forest(b.children, &b);
    }
}

TEST(Properties, BlocksNestAndNeverOverlap) {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        SourceGenerator gen(seed);
        const auto m = model_from_text(gen.file(120));
        check_forest(m.blocks, nullptr);
        std::size_t covered = 0;
        for (const auto& b : m.blocks) covered += 1 + b.body_effective_lines;
        EXPECT_LE(covered, m.source.effective_loc) << "seed " << seed;
    }
}

TEST(Properties, FindingsStayInsideTheirFile) {
    for (std::uint64_t seed = 200; seed < 230; ++seed) {
        SourceGenerator gen(seed, 0.3);
        const auto m = model_from_text(gen.file(200));
        for (const auto& f : detect(m, Thresholds{})) {
            EXPECT_GE(f.start_line, 1u);
            EXPECT_LE(f.start_line, f.end_line);
            EXPECT_LE(f.end_line, m.source.raw_lines.size());
            EXPECT_FALSE(f.message.empty());
        }
    }
}

// Comments and blank lines carry no code, so adding them only shifts line numbers.
TEST(Properties, CommentAndBlankInsertionOnlyShiftsLines) {
    for (std::uint64_t seed = 300; seed < 330; ++seed) {
        SourceGenerator gen(seed, 0.3);
        const auto text = gen.file(100);
        std::string padded;
        std::size_t n = 0;
        for (std::size_t start = 0; start < text.size();) {
            const auto nl = text.find('\n', start);
            const auto line = text.substr(start, nl - start + 1);
            if (n++ % 3 == 0) padded += (n % 2 ? "\n" : "        # inserted remark\n");
            padded += line;
            start = nl + 1;
        }
        EXPECT_EQ(counts_by_kind(detect(model_from_text(text), Thresholds{})),
                  counts_by_kind(detect(model_from_text(padded), Thresholds{})))
            << "seed " << seed;
    }
}

TEST(Properties, PerFileFindingsAreLocal) {
    SourceGenerator gen(400, 0.3);
    const auto a = model_from_text(gen.file(150), "a.py");
    const auto b = model_from_text(gen.file(150), "b.py");
    ScanConfig cfg;
    const std::vector<FileModel> alone{a};
    const std::vector<FileModel> both{a, b};
    auto only_a = [](std::vector<SmellFinding> v) {
        std::erase_if(v, [](const SmellFinding& f) { return f.path != "a.py"; });
        return v;
    };
    EXPECT_EQ(only_a(run_all_detectors(alone, cfg)), only_a(run_all_detectors(both, cfg)));
}

TEST(Properties, CorpusScopeFindsAtLeastPerFileDuplicates) {
    SourceGenerator gen(500, 0.4);
    std::vector<FileModel> files;
    for (int i = 0; i < 5; ++i) files.push_back(model_from_text(gen.file(80), "f" + std::to_string(i) + ".py"));
    ScanConfig per_file;
    ScanConfig corpus;
    corpus.duplicate_scope = DuplicateScope::CorpusWide;
    const auto pf = counts_by_kind(run_all_detectors(files, per_file));
    const auto cw = counts_by_kind(run_all_detectors(files, corpus));
    EXPECT_GE(cw[index_of(SmellKind::RepetitiveCode)], pf[index_of(SmellKind::RepetitiveCode)]);
    EXPECT_GE(cw[index_of(SmellKind::SameFunctionName)], pf[index_of(SmellKind::SameFunctionName)]);
}

TEST(Properties, ScanIsIndependentOfWorkerCount) {
    TempDir dir;
    SourceGenerator gen(600, 0.2);
    for (int i = 0; i < 40; ++i) dir.write("pkg" + std::to_string(i % 4) + "/m" + std::to_string(i) + ".py", gen.file(40 + 30 * i));
    ScanConfig cfg;
    cfg.root_path = dir.path();
    cfg.duplicate_scope = DuplicateScope::CorpusWide;
    const auto serial = scan(cfg, 1);
    for (std::size_t jobs : {2u, 7u, 0u}) {
        const auto parallel = scan(cfg, jobs);
        EXPECT_EQ(serial.findings, parallel.findings) << "jobs " << jobs;
        EXPECT_EQ(serial.log.entries(), parallel.log.entries());
        EXPECT_EQ(to_json({cfg, serial.report, serial.summary, serial.findings}).dump(),
                  to_json({cfg, parallel.report, parallel.summary, parallel.findings}).dump());
    }
}

TEST(Properties, ScanTablesAlwaysBalance) {
    for (std::uint64_t seed = 700; seed < 710; ++seed) {
        TempDir dir;
        SourceGenerator gen(seed, 0.2);
        std::mt19937_64 rng(seed);
        for (int i = 0; i < 15; ++i) dir.write("f" + std::to_string(i) + ".py", gen.file(rng() % 1300));
        ScanConfig cfg;
        cfg.root_path = dir.path();
        const auto r = scan(cfg);
        EXPECT_NO_THROW(check_consistency(r.report));
        EXPECT_EQ(r.report.grand_total, r.findings.size());
        EXPECT_EQ(r.report.files_total, 15u);
    }
}

}  // namespace
}  // namespace smellscan
