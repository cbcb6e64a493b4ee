#include "support/fixtures.hpp"

namespace reclaim::testsupport {

Row row_of(std::initializer_list<const char*> cells) {
    Row row;
    row.reserve(cells.size());
    for (const char* text : cells) {
        row.push_back(text == nullptr ? Cell::null() : Cell::atom(text));
    }
    return row;
}

Table make_table(std::string name, std::vector<std::string> columns,
                 std::initializer_list<std::initializer_list<const char*>> rows) {
    Table t(std::move(name), std::move(columns));
    for (const auto& cells : rows) t.add_row(row_of(cells));
    return t;
}

Table worked_source() {
    return make_table("people", {"id", "name", "age", "gender", "level"},
                      {
                          {"1", "avery", "34", "f", nullptr},
                          {"2", "blair", "27", "m", "bs"},
                          {"3", "casey", "41", "f", "phd"},
                      });
}

Table worked_variant_one() {
    // Row 1 fabricates a level where the source has none (one contradiction),
    // row 2 drops the level, row 3 is exact.
    return make_table("people_v1", {"id", "name", "age", "gender", "level"},
                      {
                          {"1", "avery", "34", "f", "bs"},
                          {"2", "blair", "27", "m", nullptr},
                          {"3", "casey", "41", "f", "phd"},
                      });
}

Table worked_variant_two() {
    // Row 1 drops the age and shares the source's Null level; row 2 drops the
    // level; row 3 is exact.
    return make_table("people_v2", {"id", "name", "age", "gender", "level"},
                      {
                          {"1", "avery", nullptr, "f", nullptr},
                          {"2", "blair", "27", "m", nullptr},
                          {"3", "casey", "41", "f", "phd"},
                      });
}

KeySpec worked_key() { return KeySpec{{"id"}}; }

Table parts_source() {
    return make_table("staff", {"id", "name", "age", "gender", "level"},
                      {
                          {"1", "ann", "34", "f", "ms"},
                          {"2", "bob", "27", "m", "bs"},
                          {"3", "cal", "41", "m", nullptr},
                      });
}

Table part_a() {
    // Trits against the source: [1,1,0,1,1], [1,0,1,0,1], [1,1,1,0,1] -> 20.
    return make_table("part_a", {"id", "name", "age", "gender", "level"},
                      {
                          {"1", "ann", nullptr, "f", "ms"},
                          {"2", nullptr, "27", nullptr, "bs"},
                          {"3", "cal", "41", nullptr, nullptr},
                      });
}

Table part_b() {
    // Fills exactly the cells part_a is missing: [1,0,1,0,0], [1,1,0,1,0],
    // [1,0,0,1,1] -> 17. The key-3 level Null sits on a source Null.
    return make_table("part_b", {"id", "name", "age", "gender", "level"},
                      {
                          {"1", nullptr, "34", nullptr, nullptr},
                          {"2", "bob", nullptr, "m", nullptr},
                          {"3", nullptr, nullptr, "m", nullptr},
                      });
}

Table part_c() {
    // Wrong gender on key 1 and a fabricated level on key 3:
    // [1,1,1,-1,1], [1,1,1,1,1], [1,1,1,1,-1] -> 20, tying part_a.
    return make_table("part_c", {"id", "name", "age", "gender", "level"},
                      {
                          {"1", "ann", "34", "m", "ms"},
                          {"2", "bob", "27", "m", "bs"},
                          {"3", "cal", "41", "m", "phd"},
                      });
}

KeySpec parts_key() { return KeySpec{{"id"}}; }

}  // namespace reclaim::testsupport
