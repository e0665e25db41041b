#include "homnet/csv.hpp"

#include <fstream>
#include <sstream>

#include "homnet/types.hpp"

namespace homnet::csv {

std::vector<Row> read(std::istream& in) {
    std::vector<Row> rows;
    std::string field;
    Row current;
    std::size_t line = 1;
    current.line = 1;
    bool quoted = false;
    bool any = false;  // record has content (field chars or a separator)

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&] {
        if (any) {
            end_field();
            rows.push_back(std::move(current));
        }
        current = Row{};
        current.line = line;
        any = false;
    };

    char c;
    while (in.get(c)) {
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty())
                    throw Error(Errc::ParseError,
                                "line " + std::to_string(line) + ": quote inside unquoted field");
                quoted = true;
                any = true;
                break;
            case ',':
                end_field();
                any = true;
                break;
            case '\r':
                break;
            case '\n':
                ++line;
                end_record();
                break;
            default:
                field += c;
                any = true;
        }
    }
    if (quoted)
        throw Error(Errc::ParseError, "line " + std::to_string(line) + ": unterminated quote");
    end_record();
    return rows;
}

std::vector<Row> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
    return read(in);
}

std::string escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace homnet::csv
