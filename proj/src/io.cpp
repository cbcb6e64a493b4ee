#include "reclaim/io.hpp"

#include <fstream>
#include <sstream>

#include "reclaim/errors.hpp"

namespace reclaim {

namespace {

// Splits raw CSV text into records of raw fields, honoring quotes.
// Tracks line numbers for error messages.
class CsvScanner {
  public:
    CsvScanner(std::string text, char delimiter, std::string origin)
        : text_(std::move(text)), delim_(delimiter), origin_(std::move(origin)) {}

    // Returns false at end of input.
    bool next_record(std::vector<std::string>& fields) {
        fields.clear();
        if (pos_ >= text_.size()) return false;
        std::string field;
        bool in_quotes = false;
        bool saw_any = false;
        while (pos_ < text_.size()) {
            char ch = text_[pos_];
            if (in_quotes) {
                if (ch == '"') {
                    if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
                        field += '"';
                        pos_ += 2;
                    } else {
                        in_quotes = false;
                        ++pos_;
                    }
                } else {
                    if (ch == '\n') ++line_;
                    field += ch;
                    ++pos_;
                }
                continue;
            }
            if (ch == '"') {
                if (!field.empty()) {
                    // Stray quote inside an unquoted field: keep it literal.
                    field += ch;
                } else {
                    in_quotes = true;
                    saw_any = true;
                }
                ++pos_;
            } else if (ch == delim_) {
                fields.push_back(std::move(field));
                field.clear();
                saw_any = true;
                ++pos_;
            } else if (ch == '\r') {
                ++pos_;  // handled with the following \n, or ignored
            } else if (ch == '\n') {
                ++pos_;
                ++line_;
                fields.push_back(std::move(field));
                return true;
            } else {
                field += ch;
                saw_any = true;
                ++pos_;
            }
        }
        if (in_quotes) {
            throw ParseError(origin_ + ":" + std::to_string(line_) + ": unterminated quoted field");
        }
        if (saw_any || !field.empty() || !fields.empty()) {
            fields.push_back(std::move(field));
            return true;
        }
        return false;
    }

    std::size_t line() const { return line_; }

  private:
    std::string text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    char delim_;
    std::string origin_;
};

bool is_null_token(const std::string& canonical, const IoOptions& opts) {
    if (canonical.empty()) return true;
    for (const auto& tok : opts.null_tokens) {
        if (canonical == tok) return true;
    }
    return false;
}

void write_field(std::ostream& os, const std::string& text, char delim) {
    bool needs_quotes = false;
    for (char ch : text) {
        if (ch == delim || ch == '"' || ch == '\n' || ch == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) {
        os << text;
        return;
    }
    os << '"';
    for (char ch : text) {
        if (ch == '"') os << "\"\"";
        else os << ch;
    }
    os << '"';
}

}  // namespace

Table read_table(const std::filesystem::path& path, const IoOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    CsvScanner scanner(buffer.str(), opts.delimiter, path.string());

    std::vector<std::string> fields;
    if (!scanner.next_record(fields)) {
        throw SchemaError(path.string() + ": empty file (header required)");
    }
    std::vector<std::string> columns;
    columns.reserve(fields.size());
    for (auto& raw : fields) {
        std::string name = canonicalize(raw, false);
        if (name.empty()) {
            throw SchemaError(path.string() + ": empty column name in header");
        }
        columns.push_back(std::move(name));
    }
    Table t(path.stem().string(), std::move(columns));

    while (scanner.next_record(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
        if (fields.size() != t.column_count()) {
            throw ParseError(path.string() + ":" + std::to_string(scanner.line()) + ": row has " +
                             std::to_string(fields.size()) + " fields, header has " +
                             std::to_string(t.column_count()));
        }
        Row row;
        row.reserve(fields.size());
        for (auto& raw : fields) {
            std::string canonical = canonicalize(raw, opts.case_fold);
            if (is_null_token(canonical, opts)) {
                row.push_back(Cell::null());
            } else {
                row.push_back(Cell::atom(std::move(canonical)));
            }
        }
        t.add_row(std::move(row));
    }
    return t;
}

void write_table(const Table& t, const std::filesystem::path& path, const IoOptions& opts) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    for (std::size_t c = 0; c < t.column_count(); ++c) {
        if (c) out << opts.delimiter;
        write_field(out, t.columns()[c], opts.delimiter);
    }
    out << '\n';
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        for (std::size_t c = 0; c < t.column_count(); ++c) {
            if (c) out << opts.delimiter;
            const Cell& cell = t.at(r, c);
            switch (cell.kind()) {
                case CellKind::Null:
                    write_field(out, opts.null_output, opts.delimiter);
                    break;
                case CellKind::Atom:
                    write_field(out, cell.text(), opts.delimiter);
                    break;
                case CellKind::LabeledNull:
                    throw ContractError("table '" + t.name() +
                                        "': labeled null reached serialization (row " +
                                        std::to_string(r) + ")");
            }
        }
        out << '\n';
    }
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

}  // namespace reclaim
