#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "reclaim/cell.hpp"
#include "reclaim/errors.hpp"
#include "reclaim/io.hpp"
#include "reclaim/table.hpp"

using namespace reclaim;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "reclaim_core_tests";
    fs::create_directories(dir);
    return dir / name;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_SUITE("cell") {
    TEST_CASE("identity equality treats equal nulls as equal") {
        CHECK(Cell::null() == Cell::null());
        CHECK(Cell::atom("a") == Cell::atom("a"));
        CHECK(Cell::atom("a") != Cell::atom("b"));
        CHECK(Cell::labeled(3) == Cell::labeled(3));
        CHECK(Cell::labeled(3) != Cell::labeled(4));
        CHECK(Cell::null() != Cell::atom("a"));
    }

    TEST_CASE("matches is the value relation: null matches nothing") {
        CHECK_FALSE(Cell::null().matches(Cell::null()));
        CHECK_FALSE(Cell::null().matches(Cell::atom("a")));
        CHECK(Cell::atom("a").matches(Cell::atom("a")));
        CHECK_FALSE(Cell::atom("a").matches(Cell::atom("b")));
        CHECK(Cell::labeled(7).matches(Cell::labeled(7)));
        CHECK_FALSE(Cell::labeled(7).matches(Cell::labeled(8)));
    }

    TEST_CASE("canonicalize trims and optionally folds case") {
        CHECK(canonicalize("  a b  ", false) == "a b");
        CHECK(canonicalize("\tA B\r", true) == "a b");
        CHECK(canonicalize("", false) == "");
        CHECK(canonicalize(canonicalize(" X ", true), true) == "x");
    }
}

TEST_SUITE("table") {
    TEST_CASE("construction rejects duplicate and empty column names") {
        CHECK_THROWS_AS(Table("t", {"a", "a"}), SchemaError);
        CHECK_THROWS_AS(Table("t", {"a", ""}), SchemaError);
    }

    TEST_CASE("add_row enforces arity") {
        Table t("t", {"a", "b"});
        t.add_row({Cell::atom("1"), Cell::atom("2")});
        CHECK_THROWS_AS(t.add_row({Cell::atom("1")}), ContractError);
    }

    TEST_CASE("key_projection groups rows and skips non-atom keys") {
        Table t("t", {"id", "v"});
        t.add_row({Cell::atom("1"), Cell::atom("x")});
        t.add_row({Cell::atom("1"), Cell::atom("y")});
        t.add_row({Cell::null(), Cell::atom("z")});
        const auto groups = key_projection(t, KeySpec{{"id"}});
        REQUIRE(groups.size() == 1);
        CHECK(groups.at({"1"}).size() == 2);
    }

    TEST_CASE("validate_source_key rejects nulls and duplicates") {
        Table ok("s", {"id", "v"});
        ok.add_row({Cell::atom("1"), Cell::atom("x")});
        CHECK_NOTHROW(validate_source_key(ok, KeySpec{{"id"}}));

        Table dup("s", {"id", "v"});
        dup.add_row({Cell::atom("1"), Cell::atom("x")});
        dup.add_row({Cell::atom("1"), Cell::atom("y")});
        CHECK_THROWS_AS(validate_source_key(dup, KeySpec{{"id"}}), SchemaError);

        Table nul("s", {"id", "v"});
        nul.add_row({Cell::null(), Cell::atom("x")});
        CHECK_THROWS_AS(validate_source_key(nul, KeySpec{{"id"}}), SchemaError);

        CHECK_THROWS_AS(validate_source_key(ok, KeySpec{{"missing"}}), SchemaError);
    }

    TEST_CASE("sorted_distinct_atoms skips nulls and labels") {
        Table t("t", {"a"});
        t.add_row({Cell::atom("b")});
        t.add_row({Cell::atom("a")});
        t.add_row({Cell::null()});
        t.add_row({Cell::labeled(1)});
        t.add_row({Cell::atom("b")});
        CHECK(sorted_distinct_atoms(t, 0) == std::vector<std::string>{"a", "b"});
    }
}

TEST_SUITE("io") {
    TEST_CASE("round-trips quoting, delimiters and nulls") {
        Table t("quoted", {"a", "b"});
        t.add_row({Cell::atom("x,y"), Cell::atom("line\nbreak")});
        t.add_row({Cell::atom("say \"hi\""), Cell::null()});
        const auto path = temp_file("quoted.csv");
        write_table(t, path);
        const Table back = read_table(path);
        REQUIRE(back.row_count() == 2);
        CHECK(back.at(0, 0) == Cell::atom("x,y"));
        CHECK(back.at(0, 1) == Cell::atom("line\nbreak"));
        CHECK(back.at(1, 0) == Cell::atom("say \"hi\""));
        CHECK(back.at(1, 1) == Cell::null());
        CHECK(back.name() == "quoted");
    }

    TEST_CASE("null tokens and case folding apply on read") {
        const auto path = temp_file("tokens.csv");
        write_text(path, "A,B\nNULL,X\nnan, Y \n");
        IoOptions opts;
        opts.case_fold = true;
        const Table t = read_table(path, opts);
        // Folding applies to values only; header names stay verbatim.
        CHECK(t.columns() == std::vector<std::string>{"A", "B"});
        CHECK(t.at(0, 0) == Cell::null());
        CHECK(t.at(0, 1) == Cell::atom("x"));
        CHECK(t.at(1, 0) == Cell::null());
        CHECK(t.at(1, 1) == Cell::atom("y"));
    }

    TEST_CASE("structural problems carry a line number") {
        const auto path = temp_file("ragged.csv");
        write_text(path, "a,b\n1\n");
        CHECK_THROWS_AS(read_table(path), ParseError);

        const auto unterminated = temp_file("unterminated.csv");
        write_text(unterminated, "a,b\n\"open,2\n");
        CHECK_THROWS_AS(read_table(unterminated), ParseError);

        CHECK_THROWS_AS(read_table(temp_file("missing.csv")), IoError);
    }

    TEST_CASE("labeled nulls must never be serialized") {
        Table t("labels", {"a"});
        t.add_row({Cell::labeled(1)});
        CHECK_THROWS_AS(write_table(t, temp_file("labels.csv")), ContractError);
    }

    TEST_CASE("custom delimiter") {
        const auto path = temp_file("semi.csv");
        IoOptions opts;
        opts.delimiter = ';';
        Table t("semi", {"a", "b"});
        t.add_row({Cell::atom("1,5"), Cell::atom("2")});
        write_table(t, path, opts);
        const Table back = read_table(path, opts);
        CHECK(back.at(0, 0) == Cell::atom("1,5"));
    }
}
