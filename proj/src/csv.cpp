#include "mailmine/csv.hpp"

#include <cctype>

namespace mailmine {

bool CsvReader::read_record(std::vector<std::string>& fields) {
    fields.clear();
    bad_ = false;
    int c = in_.get();
    if (c == EOF) return false;
    ++record_;

    if (first_) {
        first_ = false;
        // UTF-8 BOM
        if (c == 0xEF && in_.peek() == 0xBB) {
            in_.get();
            if (in_.peek() == 0xBF) in_.get();
            c = in_.get();
            if (c == EOF) return false;
        }
    }

    std::string field;
    bool quoted = false;
    while (true) {
        if (quoted) {
            if (c == EOF) {
                bad_ = true; // unterminated quote
                break;
            }
            if (c == '"') {
                int next = in_.peek();
                if (next == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(static_cast<char>(c));
            }
        } else {
            if (c == EOF || c == '\n') break;
            if (c == '\r') {
                if (in_.peek() == '\n') in_.get();
                break;
            }
            if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else if (c == '"' && field.empty()) {
                quoted = true;
            } else {
                field.push_back(static_cast<char>(c));
            }
        }
        c = in_.get();
    }
    fields.push_back(std::move(field));
    return true;
}

namespace {
std::string normalize_header(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string out;
    out.reserve(e - b);
    for (size_t i = b; i < e; ++i)
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i]))));
    return out;
}
} // namespace

int find_column(const std::vector<std::string>& header, const std::string& name) {
    for (size_t i = 0; i < header.size(); ++i)
        if (normalize_header(header[i]) == name) return static_cast<int>(i);
    return -1;
}

std::string csv_escape(const std::string& field) {
    bool needs = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out.push_back(ch);
    }
    out += "\"";
    return out;
}

} // namespace mailmine
