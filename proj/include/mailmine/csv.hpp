#pragma once

#include <functional>
#include <istream>
#include <string>
#include <vector>

namespace mailmine {

// RFC-4180-style reader: quoted fields, doubled-quote escapes, embedded
// commas and newlines inside quotes, LF or CRLF line ends. Tolerant of a
// UTF-8 BOM on the first record.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Reads one record into fields. Returns false at end of input.
    // On a structural problem (unterminated quote at EOF) the partial record
    // is returned and bad() is set; the caller decides whether to keep it.
    bool read_record(std::vector<std::string>& fields);

    bool bad() const { return bad_; }
    size_t record_number() const { return record_; } // 1-based, header included

private:
    std::istream& in_;
    bool bad_ = false;
    bool first_ = true;
    size_t record_ = 0;
};

// Lowercased, trimmed header lookup. Returns -1 when absent.
int find_column(const std::vector<std::string>& header, const std::string& name);

std::string csv_escape(const std::string& field);

} // namespace mailmine
