#pragma once

#include "mailmine/dates.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace mailmine {

// Canonical person handle. One address resolves to exactly one PersonId for
// the lifetime of an AliasTable.
struct PersonId {
    int32_t value = -1;
    bool valid() const { return value >= 0; }
    friend bool operator==(PersonId a, PersonId b) { return a.value == b.value; }
    friend bool operator!=(PersonId a, PersonId b) { return a.value != b.value; }
    friend bool operator<(PersonId a, PersonId b) { return a.value < b.value; }
};

struct Person {
    std::string first;
    std::string last;
    std::string primary_email; // also the canonical key in reports
};

enum class RecipientRole { To, Cc, Bcc };

struct Recipient {
    std::string address;
    RecipientRole role = RecipientRole::To;
};

struct EmailDoc {
    std::string id;
    UnixTime date = 0;
    std::string sender_raw;
    PersonId sender;
    std::vector<Recipient> recipients;
    std::string subject;
    std::string body;
    bool poi_flag = false;
};

// Address -> person map. Known aliases come from a roster file; unknown
// addresses get a synthesized person on first sight and keep it afterwards.
class AliasTable {
public:
    // Roster CSV columns: first, last, primary_email, aliases
    // (aliases semicolon-separated, may be empty).
    static AliasTable load_roster(std::istream& in);

    PersonId add_person(const std::string& first, const std::string& last,
                        const std::string& primary_email);
    void add_alias(const std::string& address, PersonId person);

    // Pure lookup, case-insensitive exact match.
    std::optional<PersonId> resolve(const std::string& address) const;
    // Lookup that synthesizes a person for unknown addresses. Stable: the
    // same address always yields the same PersonId within this table.
    PersonId resolve_or_add(const std::string& address);

    const Person& person(PersonId id) const;
    size_t person_count() const { return persons_.size(); }

private:
    std::vector<Person> persons_;
    std::unordered_map<std::string, int32_t> entries_; // normalized address -> index
};

struct DropReason {
    size_t record; // 1-based CSV record number, header = 1
    std::string reason;
};

struct ParseReport {
    size_t rows_read = 0;    // data rows, header excluded
    size_t rows_dropped = 0;
    std::vector<DropReason> drop_reasons;
};

struct Corpus {
    std::vector<EmailDoc> docs; // ascending by date, input order on ties
    AliasTable aliases;
    ParseReport report;
    // Optional per-doc relevance labels (aligned with docs) when the CSV
    // carried a label column, e.g. expert responsiveness scores.
    std::vector<std::optional<bool>> labels;
    bool has_labels = false;
};

struct ParseOptions {
    // Column names are matched case-insensitively against the header.
    std::string label_column = "responsive";
    std::string poi_column = "poi";
};

// Header must name date, sender, recipients (or to/cc/bcc), subject, body.
// Rows missing a date or sender are dropped and recorded, never fatal; a
// header without the required columns is.
Corpus parse_corpus(std::istream& in, const ParseOptions& opts = {});
Corpus parse_corpus(std::istream& in, AliasTable aliases, const ParseOptions& opts = {});

struct CorpusStats {
    size_t doc_count = 0;
    size_t total_words = 0; // whitespace tokens over subject + body
    std::map<std::string, size_t> per_sender_counts; // keyed by canonical email
    std::map<std::string, size_t> daily_counts;      // keyed "YYYY-MM-DD"
    std::vector<int64_t> body_lengths;               // bytes, doc order
};

CorpusStats corpus_stats(const Corpus& corpus);

} // namespace mailmine
