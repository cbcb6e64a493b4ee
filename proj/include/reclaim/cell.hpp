#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace reclaim {

enum class CellKind : std::uint8_t { Null = 0, Atom = 1, LabeledNull = 2 };

/**
 * One table cell: a missing value (Null), a canonicalized non-empty string
 * (Atom), or a labeled null (a placeholder with a run-unique id that behaves
 * like an atom in value comparisons: equal ids match, distinct ids differ).
 *
 * Two comparison relations coexist and must not be conflated:
 *  - operator== / operator< are identity relations (Null equals Null) used
 *    for row deduplication, sorting, and set-semantics row intersection.
 *  - matches() is the value relation used by joins, complementation, and
 *    subsumption, where Null matches nothing, not even another Null.
 */
class Cell {
  public:
    Cell() : kind_(CellKind::Null) {}

    static Cell null() { return Cell(); }

    /// `text` must already be canonicalized and non-empty.
    static Cell atom(std::string text) {
        Cell c;
        c.kind_ = CellKind::Atom;
        c.text_ = std::move(text);
        return c;
    }

    static Cell labeled(std::uint64_t id) {
        Cell c;
        c.kind_ = CellKind::LabeledNull;
        c.label_ = id;
        return c;
    }

    CellKind kind() const { return kind_; }
    bool is_null() const { return kind_ == CellKind::Null; }
    bool is_atom() const { return kind_ == CellKind::Atom; }
    bool is_labeled() const { return kind_ == CellKind::LabeledNull; }
    /// Non-null for merge/subsumption purposes: an atom or a labeled null.
    bool has_value() const { return kind_ != CellKind::Null; }

    const std::string& text() const { return text_; }
    std::uint64_t label() const { return label_; }

    /// Value equality: Null matches nothing, including another Null.
    bool matches(const Cell& o) const {
        if (is_null() || o.is_null()) return false;
        return *this == o;
    }

    friend bool operator==(const Cell& a, const Cell& b) {
        if (a.kind_ != b.kind_) return false;
        switch (a.kind_) {
            case CellKind::Null: return true;
            case CellKind::Atom: return a.text_ == b.text_;
            case CellKind::LabeledNull: return a.label_ == b.label_;
        }
        return false;
    }
    friend bool operator!=(const Cell& a, const Cell& b) { return !(a == b); }

    friend bool operator<(const Cell& a, const Cell& b) {
        if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
        switch (a.kind_) {
            case CellKind::Null: return false;
            case CellKind::Atom: return a.text_ < b.text_;
            case CellKind::LabeledNull: return a.label_ < b.label_;
        }
        return false;
    }

  private:
    CellKind kind_;
    std::string text_;
    std::uint64_t label_ = 0;
};

/**
 * Canonicalize raw cell text: trim ASCII whitespace at both ends and,
 * when `case_fold` is set, lower-case ASCII letters. Idempotent.
 */
std::string canonicalize(std::string_view raw, bool case_fold);

}  // namespace reclaim
