#include "qci/io/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qci/errors.hpp"

namespace qci::io {

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\r\n") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& field) {
    if (!needs_quoting(field)) {
        out << field;
        return;
    }
    out << '"';
    for (char c : field) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

// One record, honoring quoted fields that may span lines. Returns false at
// end of input with no record.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    int c;
    while ((c = in.get()) != EOF) {
        any = true;
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(static_cast<char>(c));
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\r') {
            if (in.peek() == '\n') in.get();
            fields.push_back(std::move(field));
            return true;
        } else if (c == '\n') {
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(static_cast<char>(c));
        }
    }
    if (!any) return false;
    fields.push_back(std::move(field));
    return true;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::vector<std::string> record;
    if (!read_record(in, record))
        throw Error("csv: empty input, header row required");
    table.header = std::move(record);
    while (read_record(in, record)) {
        // Tolerate a trailing newline producing one empty field.
        if (record.size() == 1 && record[0].empty() && in.peek() == EOF)
            break;
        table.rows.push_back(record);
    }
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    return read_csv(in);
}

void write_csv(std::ostream& out, const CsvTable& table) {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        write_field(out, table.header[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            write_field(out, row[i]);
        }
        out << '\n';
    }
}

std::string to_csv_string(const CsvTable& table) {
    std::ostringstream out;
    write_csv(out, table);
    return out.str();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Sample load_sample_csv(const std::string& path, const std::string& column) {
    const CsvTable table = read_csv_file(path);
    std::size_t col = table.header.size();
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (table.header[i] == column) {
            col = i;
            break;
        }
    }
    if (col == table.header.size()) {
        std::string available;
        for (std::size_t i = 0; i < table.header.size(); ++i) {
            if (i) available += ", ";
            available += table.header[i];
        }
        throw Error("column '" + column + "' not found in " + path +
                    "; available columns: " + available);
    }
    if (table.rows.empty())
        throw Error(path + ": no data rows");

    std::vector<double> values;
    values.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        // +2: header is row 1.
        const std::string row_id = std::to_string(r + 2);
        if (col >= table.rows[r].size())
            throw Error(path + ": row " + row_id + " has no column '" +
                        column + "'");
        const std::string& cell = table.rows[r][col];
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (cell.empty() || end != cell.c_str() + cell.size())
            throw Error(path + ": row " + row_id + ", column '" + column +
                        "': cannot parse '" + cell + "' as a number");
        values.push_back(v);
    }
    try {
        return make_sample(std::move(values));
    } catch (const NonFiniteValueError& e) {
        throw Error(path + ": row " + std::to_string(e.index() + 2) +
                    ", column '" + column + "': value is not finite");
    }
}

}  // namespace qci::io
