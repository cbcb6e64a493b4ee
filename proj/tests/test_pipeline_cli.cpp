#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "reclaim/errors.hpp"
#include "reclaim/io.hpp"
#include "reclaim/lake_index.hpp"
#include "reclaim/pipeline.hpp"
#include "reclaim/relops.hpp"
#include "support/fixtures.hpp"

using namespace reclaim;
using namespace reclaim::testsupport;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "reclaim_pipeline_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path parts_lake(const std::string& name, bool with_part_c = false) {
    const fs::path dir = temp_dir(name);
    write_table(part_a(), dir / "part_a.csv");
    write_table(part_b(), dir / "part_b.csv");
    if (with_part_c) write_table(part_c(), dir / "part_c.csv");
    return dir;
}

nlohmann::json parse_file(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in);
    return nlohmann::json::parse(in);
}

/// Run the CLI binary, capturing stdout into `out` when given.
int run_cli(const std::string& args, std::string* out = nullptr) {
    static std::size_t counter = 0;
    const fs::path capture =
        fs::temp_directory_path() / ("tabrec_out_" + std::to_string(counter++) + ".txt");
    const std::string command =
        std::string(TABREC_PATH) + " " + args + " > " + capture.string() + " 2>/dev/null";
    const int status = std::system(command.c_str());
    if (out) {
        std::ifstream in(capture);
        std::ostringstream buf;
        buf << in.rdbuf();
        *out = buf.str();
    }
    fs::remove(capture);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("two complementary parts reclaim the source perfectly") {
    const fs::path lake = parts_lake("perfect");
    const LakeIndex index = LakeIndex::build(lake, IoOptions{});
    const Table source = parts_source();

    const auto outcome =
        pipeline::reclaim_from_index(source, parts_key(), index, pipeline::ReclaimOptions{});
    CHECK(outcome.reclaimable);
    CHECK(relops::rows_equal_multiset(outcome.reclaimed, source));

    const auto& report = outcome.report;
    CHECK(report.source_name == "staff");
    CHECK(report.key == std::vector<std::string>{"id"});
    CHECK(report.lake_table_count == 2);
    REQUIRE(report.candidates.size() == 2);
    CHECK(report.candidates[0].lake_name == "part_a");
    CHECK(report.candidates[1].lake_name == "part_b");

    // part_a alone scores 20/24; adding part_b completes the instance.
    REQUIRE(report.traversal.size() == 2);
    CHECK(report.traversal[0].table == "part_a");
    CHECK(report.traversal[0].score == Approx(20.0 / 24.0));
    CHECK(report.traversal[1].table == "part_b");
    CHECK(report.traversal[1].score == Approx(1.0));
    CHECK(report.originating_tables == std::vector<std::string>{"part_a", "part_b"});

    REQUIRE(!report.integration.empty());
    CHECK(report.integration.back().op == "finalize");
    CHECK(report.metrics.ise == Approx(1.0));
    CHECK(report.metrics.recall == 1.0);
    CHECK(report.metrics.precision == 1.0);
    CHECK(report.metrics.kl_divergence == 0.0);
}

TEST_CASE("a lake with no matching values is not reclaimable") {
    const fs::path dir = temp_dir("unrelated");
    write_table(make_table("noise", {"z"}, {{"q1"}, {"q2"}}), dir / "noise.csv");
    const LakeIndex index = LakeIndex::build(dir, IoOptions{});
    const Table source = parts_source();

    const auto outcome =
        pipeline::reclaim_from_index(source, parts_key(), index, pipeline::ReclaimOptions{});
    CHECK(!outcome.reclaimable);
    CHECK(outcome.reclaimed.row_count() == 0);
    CHECK(outcome.reclaimed.columns() == source.columns());
    CHECK(outcome.reclaimed.name() == "reclaimed_staff");

    bool noted = false;
    for (const auto& w : outcome.report.warnings) {
        if (w.find("not reclaimable") != std::string::npos) noted = true;
    }
    CHECK(noted);
    // Empty reconstruction: half credit per key, nothing recalled, divergence
    // has no matched key to condition on.
    CHECK(outcome.report.metrics.ise == Approx(0.5));
    CHECK(outcome.report.metrics.recall == 0.0);
    CHECK(outcome.report.metrics.precision == 0.0);
    CHECK(std::isinf(outcome.report.metrics.kl_divergence));
}

TEST_CASE("no_pruning skips traversal and integrates every candidate") {
    const fs::path lake = parts_lake("no_pruning");
    const LakeIndex index = LakeIndex::build(lake, IoOptions{});
    const Table source = parts_source();

    pipeline::ReclaimOptions opts;
    opts.no_pruning = true;
    const auto outcome = pipeline::reclaim_from_index(source, parts_key(), index, opts);
    CHECK(outcome.reclaimable);
    CHECK(outcome.report.no_pruning);
    CHECK(outcome.report.traversal.empty());
    CHECK(outcome.report.originating_tables.size() == 2);
    CHECK(outcome.report.metrics.ise == Approx(1.0));
    CHECK(relops::rows_equal_multiset(outcome.reclaimed, source));
}

TEST_CASE("discovery warnings appear once in the report") {
    // part_b's matches are contained in part_c's, so discovery drops it with
    // a warning; expansion carries that warning forward and the report must
    // not collect it twice.
    const fs::path lake = parts_lake("warn_once", true);
    const LakeIndex index = LakeIndex::build(lake, IoOptions{});

    const auto outcome = pipeline::reclaim_from_index(parts_source(), parts_key(), index,
                                                      pipeline::ReclaimOptions{});
    std::size_t drops = 0;
    for (const auto& warning : outcome.report.warnings) {
        if (warning.rfind("candidate 'part_b' dropped", 0) == 0) ++drops;
    }
    CHECK(drops == 1);
}

TEST_CASE("an invalid source key is rejected up front") {
    const fs::path lake = parts_lake("bad_key");
    const LakeIndex index = LakeIndex::build(lake, IoOptions{});
    const Table dup = make_table("dup", {"id", "name"}, {{"1", "ann"}, {"1", "ann2"}});
    CHECK_THROWS_AS(
        pipeline::reclaim_from_index(dup, KeySpec{{"id"}}, index, pipeline::ReclaimOptions{}),
        SchemaError);
}

TEST_CASE("run_reclaim writes the reclaimed table and a readable report") {
    const fs::path lake = parts_lake("run_files");
    const fs::path src_dir = temp_dir("run_files_src");
    const fs::path source_path = src_dir / "staff.csv";
    write_table(parts_source(), source_path);

    const fs::path out_dir = src_dir / "out";
    const auto outcome = pipeline::run_reclaim(source_path, {"id"}, lake, out_dir,
                                               pipeline::ReclaimOptions{});
    CHECK(outcome.reclaimable);
    CHECK(outcome.report.reclaimed_path == (out_dir / "reclaimed_staff.csv").string());
    REQUIRE(fs::exists(out_dir / "reclaimed_staff.csv"));
    REQUIRE(fs::exists(out_dir / "report.json"));

    const Table round_trip = read_table(out_dir / "reclaimed_staff.csv");
    CHECK(relops::rows_equal_multiset(round_trip, parts_source()));

    const auto report = parse_file(out_dir / "report.json");
    CHECK(report.at("source") == "staff");
    CHECK(report.at("metrics").at("ise").get<double>() == Approx(1.0));
    CHECK(report.at("metrics").at("kl_divergence").get<double>() == Approx(0.0));
    CHECK(report.at("originating_tables").size() == 2);

    // A saved index file works in place of the lake directory.
    const fs::path index_path = src_dir / "lake_index.json";
    LakeIndex::build(lake, IoOptions{}).save(index_path);
    const auto via_index = pipeline::run_reclaim(source_path, {"id"}, index_path,
                                                 src_dir / "out2", pipeline::ReclaimOptions{});
    CHECK(via_index.reclaimable);
    CHECK(via_index.report.metrics.ise == Approx(1.0));
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("benchgen, index, reclaim, and eval chain end to end") {
    const fs::path root = temp_dir("cli_chain");
    const fs::path bench = root / "bench";

    std::string out;
    CHECK(run_cli("benchgen " + bench.string() +
                      " --seed 5 --bases 2 --rows 8 --columns 4 --queries 2 --complementary",
                  &out) == 0);
    CHECK(out.find("wrote") != std::string::npos);
    REQUIRE(fs::exists(bench / "manifest.json"));

    const auto manifest = parse_file(bench / "manifest.json");
    REQUIRE(!manifest.at("sources").empty());
    const auto& first = manifest.at("sources")[0];
    const fs::path source_csv = bench / first.at("file").get<std::string>();
    std::string key_flags;
    for (const auto& k : first.at("key")) {
        key_flags += " --key " + k.get<std::string>();
    }

    const fs::path index_path = root / "idx.json";
    CHECK(run_cli("index " + (bench / "lake").string() + " --out " + index_path.string(),
                  &out) == 0);
    CHECK(out.find("indexed") != std::string::npos);
    REQUIRE(fs::exists(index_path));

    const fs::path rec_dir = root / "rec";
    CHECK(run_cli("reclaim " + source_csv.string() + " " + index_path.string() + key_flags +
                      " --out " + rec_dir.string(),
                  &out) == 0);
    CHECK(out.find("reclaimed") != std::string::npos);
    const auto report = parse_file(rec_dir / "report.json");
    CHECK(report.at("metrics").at("ise").get<double>() == Approx(1.0));
    CHECK(report.at("metrics").at("recall").get<double>() == Approx(1.0));
    CHECK(report.at("metrics").at("precision").get<double>() == Approx(1.0));

    // The lake directory works in place of a saved index.
    CHECK(run_cli("reclaim " + source_csv.string() + " " + (bench / "lake").string() +
                      key_flags + " --out " + (root / "rec2").string()) == 0);

    const std::string reclaimed_csv = report.at("reclaimed_path").get<std::string>();
    CHECK(run_cli("eval " + source_csv.string() + " " + reclaimed_csv + key_flags, &out) == 0);
    const auto scores = nlohmann::json::parse(out);
    CHECK(scores.at("ise").get<double>() == Approx(1.0));
    CHECK(scores.at("kl_divergence").get<double>() == Approx(0.0));
}

TEST_CASE("a source foreign to the lake exits with the no-candidates code") {
    const fs::path root = temp_dir("cli_foreign");
    const fs::path lake = root / "lake";
    fs::create_directories(lake);
    write_table(part_a(), lake / "part_a.csv");
    const fs::path source = root / "stranger.csv";
    std::ofstream(source) << "pid,tag\nzz1,yy1\n";

    CHECK(run_cli("reclaim " + source.string() + " " + lake.string() + " --key pid") == 2);
}

TEST_CASE("bad invocations fail without doing work") {
    const fs::path root = temp_dir("cli_bad");

    CHECK(run_cli("") != 0);
    CHECK(run_cli("bogus") != 0);
    // Missing required --key.
    CHECK(run_cli("reclaim a.csv " + root.string()) != 0);
    // Out-of-range probability is rejected by flag validation.
    CHECK(run_cli("benchgen " + (root / "b").string() + " --null-rate 1.5") != 0);
    CHECK(!fs::exists(root / "b"));
    // Multi-character delimiter is rejected.
    CHECK(run_cli("index " + root.string() + " --delimiter ab") != 0);
    // An unusable lake directory is an IO failure, not a crash.
    CHECK(run_cli("index " + (root / "missing").string()) == 1);
}

}  // TEST_SUITE
