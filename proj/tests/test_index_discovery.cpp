#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "reclaim/discovery.hpp"
#include "reclaim/errors.hpp"
#include "reclaim/lake_index.hpp"
#include "support/fixtures.hpp"

using namespace reclaim;
using namespace reclaim::testsupport;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "reclaim_index_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

LakeIndex parts_index() {
    return LakeIndex::build_from_tables({part_a(), part_b(), part_c()}, IoOptions{});
}

}  // namespace

TEST_SUITE("lake_index") {
    TEST_CASE("postings and column cardinalities") {
        const LakeIndex index = parts_index();
        REQUIRE(index.tables().size() == 3);
        CHECK(index.table_id("part_b").has_value());
        CHECK_FALSE(index.table_id("nope").has_value());

        const std::size_t tb = *index.table_id("part_b");
        // part_b column atoms: id {1,2,3}, name {bob}, age {34}, gender {m},
        // level {} (all Null).
        CHECK(index.column_cardinality(tb, 0) == 3);
        CHECK(index.column_cardinality(tb, 1) == 1);
        CHECK(index.column_cardinality(tb, 4) == 0);

        std::size_t sum = 0;
        for (std::size_t t = 0; t < index.tables().size(); ++t) {
            for (std::size_t c = 0; c < index.table(t).column_count(); ++c) {
                sum += index.column_cardinality(t, c);
                const auto& ids = index.column_ids(t, c);
                CHECK(std::is_sorted(ids.begin(), ids.end()));
            }
        }
        CHECK(index.posting_count() == sum);
    }

    TEST_CASE("containment ranks by fraction then name") {
        const LakeIndex index = parts_index();
        const auto hits = index.column_containment({"1", "2", "3"});
        REQUIRE(hits.size() == 3);
        for (const auto& hit : hits) {
            CHECK(hit.column == "id");
            CHECK(hit.fraction == Approx(1.0));
            CHECK(hit.overlap_count == 3);
        }
        CHECK(hits[0].table == "part_a");
        CHECK(hits[1].table == "part_b");
        CHECK(hits[2].table == "part_c");

        const auto partial = index.column_containment({"ann", "zzz"});
        REQUIRE(partial.size() == 2);
        CHECK(partial[0].fraction == Approx(0.5));

        CHECK_THROWS_AS(index.column_containment({}), ContractError);
    }

    TEST_CASE("resolve reports only atoms the lake has seen") {
        const LakeIndex index = parts_index();
        const auto col = index.resolve({"ann", "bob", "nowhere"});
        CHECK(col.distinct_count == 3);
        CHECK(col.ids.size() == 2);
        CHECK(std::is_sorted(col.ids.begin(), col.ids.end()));
    }

    TEST_CASE("directory build skips bad files and sorts by name") {
        const fs::path dir = temp_dir("lake_ok");
        write_text(dir / "b_second.csv", "id,v\n1,x\n");
        write_text(dir / "a_first.csv", "id,v\n2,y\n");
        write_text(dir / "broken.csv", "id,v\n1\n");
        write_text(dir / "notes.txt", "not a table");

        std::vector<std::string> warnings;
        const LakeIndex index = LakeIndex::build(dir, IoOptions{}, &warnings);
        REQUIRE(index.tables().size() == 2);
        CHECK(index.table(0).name() == "a_first");
        CHECK(index.table(1).name() == "b_second");
        REQUIRE(warnings.size() == 1);
        CHECK(warnings[0].find("broken.csv") != std::string::npos);
    }

    TEST_CASE("an unusable directory is an io error") {
        const fs::path dir = temp_dir("lake_empty");
        CHECK_THROWS_AS(LakeIndex::build(dir, IoOptions{}), IoError);
        CHECK_THROWS_AS(LakeIndex::build(dir / "missing", IoOptions{}), IoError);
    }

    TEST_CASE("save and load round-trip deterministically") {
        const fs::path dir = temp_dir("lake_save");
        const LakeIndex index = parts_index();
        index.save(dir / "one.json");
        index.save(dir / "two.json");
        CHECK(read_bytes(dir / "one.json") == read_bytes(dir / "two.json"));

        const LakeIndex loaded = LakeIndex::load(dir / "one.json");
        CHECK(loaded.tables().size() == index.tables().size());
        CHECK(loaded.posting_count() == index.posting_count());
        const auto before = index.column_containment({"ann", "bob", "cal"});
        const auto after = loaded.column_containment({"ann", "bob", "cal"});
        REQUIRE(before.size() == after.size());
        for (std::size_t i = 0; i < before.size(); ++i) {
            CHECK(before[i].table == after[i].table);
            CHECK(before[i].column == after[i].column);
            CHECK(before[i].fraction == Approx(after[i].fraction));
        }

        write_text(dir / "bad.json", "{\"format\": \"other\"}");
        CHECK_THROWS_AS(LakeIndex::load(dir / "bad.json"), ParseError);
        CHECK_THROWS_AS(LakeIndex::load(dir / "absent.json"), IoError);
    }
}

TEST_SUITE("discovery") {
    TEST_CASE("diversify keeps raw-overlap survivors and penalizes repeats") {
        // Source column atoms resolve to ids {0,1,2,3}.
        ResolvedColumn source_col{{0, 1, 2, 3}, 4};
        const std::vector<std::uint32_t> full = {0, 1, 2, 3};
        const std::vector<std::uint32_t> pair = {0, 1};
        const std::vector<std::uint32_t> lone = {2};

        SUBCASE("an identical follower scores zero but survives") {
            std::vector<discovery::ColumnCandidate> ranked = {
                {"t1", "c", 1.0, &full},
                {"t2", "c", 1.0, &full},
            };
            const auto scored = discovery::diversify(ranked, source_col, 0.2);
            REQUIRE(scored.size() == 2);
            CHECK(scored[0].table == "t1");
            CHECK(scored[0].score == Approx(1.0));
            CHECK(scored[1].table == "t2");
            CHECK(scored[1].score == Approx(0.0));
        }

        SUBCASE("a redundant half goes negative yet is not cut") {
            std::vector<discovery::ColumnCandidate> ranked = {
                {"t1", "c", 1.0, &full},
                {"t2", "c", 0.5, &pair},
            };
            const auto scored = discovery::diversify(ranked, source_col, 0.2);
            REQUIRE(scored.size() == 2);
            // Raw 2/4 minus penalty 2/2: the cut tests raw overlap only.
            CHECK(scored[1].table == "t2");
            CHECK(scored[1].score == Approx(-0.5));
        }

        SUBCASE("the cut is on raw source overlap") {
            std::vector<discovery::ColumnCandidate> ranked = {
                {"t1", "c", 1.0, &full},
                {"t2", "c", 0.25, &lone},
            };
            const auto scored = discovery::diversify(ranked, source_col, 0.3);
            REQUIRE(scored.size() == 1);
            CHECK(scored[0].table == "t1");
        }

        SUBCASE("disjoint followers keep their raw score") {
            const std::vector<std::uint32_t> other = {2, 3};
            std::vector<discovery::ColumnCandidate> ranked = {
                {"t1", "c", 0.5, &pair},
                {"t2", "c", 0.5, &other},
            };
            const auto scored = discovery::diversify(ranked, source_col, 0.2);
            REQUIRE(scored.size() == 2);
            CHECK(scored[0].score == Approx(0.5));
            CHECK(scored[1].score == Approx(0.5));
        }
    }

    TEST_CASE("candidate retrieval on the parts lake") {
        const LakeIndex index = parts_index();
        const Table source = parts_source();
        const discovery::DiscoveryConfig cfg;

        const auto set = discovery::discover_candidates(index, source, parts_key(), cfg);
        // part_b's matched values are contained in part_c's, so it is pruned;
        // part_a survives because its gender values are its own.
        REQUIRE(set.candidates.size() == 2);
        std::set<std::string> names;
        for (const auto& cand : set.candidates) names.insert(cand.lake_name);
        CHECK(names == std::set<std::string>{"part_a", "part_c"});
        bool noted = false;
        for (const auto& w : set.warnings) {
            if (w.find("part_b") != std::string::npos && w.find("part_c") != std::string::npos) {
                noted = true;
            }
        }
        CHECK(noted);
        // Same-named columns map onto themselves.
        for (const auto& cand : set.candidates) {
            CHECK(cand.column_map.at("id") == "id");
            CHECK(cand.column_map.at("level") == "level");
        }
    }

    TEST_CASE("matched columns are renamed, collisions get prefixed") {
        Table lake("census", {"person", "years", "id"});
        lake.add_row(row_of({"ann", "34", "x1"}));
        lake.add_row(row_of({"bob", "27", "x2"}));
        lake.add_row(row_of({"cal", "41", "x3"}));
        const LakeIndex index = LakeIndex::build_from_tables({lake}, IoOptions{});

        const Table source = parts_source();
        const auto set =
            discovery::discover_candidates(index, source, parts_key(), discovery::DiscoveryConfig{});
        // "person" and "years" hold source values, but no column holds the
        // source ids, so the source cannot be keyed from this lake. The
        // renamed "id" column must not shadow the reserved source name.
        REQUIRE(set.candidates.size() == 1);
        const auto& cand = set.candidates[0];
        CHECK(cand.column_map.at("person") == "name");
        CHECK(cand.column_map.at("years") == "age");
        CHECK(cand.table.has_column("name"));
        CHECK(cand.table.has_column("age"));
        CHECK(cand.table.has_column("census.id"));
        CHECK_FALSE(cand.table.has_column("id"));
    }

    TEST_CASE("top_k limits the tables considered per column") {
        const LakeIndex index = parts_index();
        const Table source = parts_source();
        discovery::DiscoveryConfig cfg;
        cfg.top_k = 1;
        const auto set = discovery::discover_candidates(index, source, parts_key(), cfg);
        // Containment ties rank part_a first on every column it matches.
        REQUIRE(!set.candidates.empty());
        for (const auto& cand : set.candidates) {
            CHECK(cand.lake_name != "part_b");
        }
    }

    TEST_CASE("a source that cannot be keyed is rejected") {
        const LakeIndex index = parts_index();
        Table dup("dup", {"id", "name", "age", "gender", "level"});
        dup.add_row(row_of({"1", "ann", "34", "f", "ms"}));
        dup.add_row(row_of({"1", "bob", "27", "m", "bs"}));
        CHECK_THROWS_AS(
            discovery::discover_candidates(index, dup, parts_key(), discovery::DiscoveryConfig{}),
            SchemaError);
    }
}
