#include "mailmine/corpus.hpp"

#include "mailmine/csv.hpp"
#include "mailmine/errors.hpp"

#include <algorithm>
#include <cctype>

namespace mailmine {

namespace {

std::string lowercase_trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string out;
    out.reserve(e - b);
    for (size_t i = b; i < e; ++i)
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i]))));
    return out;
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_bool_flag(const std::string& raw) {
    std::string v = lowercase_trim(raw);
    return v == "1" || v == "true" || v == "t" || v == "yes" || v == "y";
}

// Recipient lists arrive as "a@x.com; b@y.com" or comma-separated.
void split_addresses(const std::string& raw, RecipientRole role,
                     std::vector<Recipient>& out,
                     std::unordered_map<std::string, bool>& seen) {
    size_t start = 0;
    for (size_t i = 0; i <= raw.size(); ++i) {
        if (i == raw.size() || raw[i] == ';' || raw[i] == ',') {
            std::string addr = trim(raw.substr(start, i - start));
            start = i + 1;
            if (addr.empty()) continue;
            std::string key = lowercase_trim(addr);
            if (seen.emplace(key, true).second) out.push_back(Recipient{addr, role});
        }
    }
}

} // namespace

AliasTable AliasTable::load_roster(std::istream& in) {
    AliasTable table;
    CsvReader reader(in);
    std::vector<std::string> row;
    if (!reader.read_record(row)) throw InputError("alias roster: empty file");
    int c_first = find_column(row, "first");
    int c_last = find_column(row, "last");
    int c_email = find_column(row, "primary_email");
    int c_aliases = find_column(row, "aliases");
    if (c_email < 0) throw InputError("alias roster: missing primary_email column");
    while (reader.read_record(row)) {
        auto field = [&](int idx) -> std::string {
            return (idx >= 0 && idx < static_cast<int>(row.size())) ? row[idx] : std::string();
        };
        std::string email = trim(field(c_email));
        if (email.empty()) continue;
        PersonId id = table.add_person(trim(field(c_first)), trim(field(c_last)), email);
        if (c_aliases >= 0) {
            std::string aliases = field(c_aliases);
            size_t start = 0;
            for (size_t i = 0; i <= aliases.size(); ++i) {
                if (i == aliases.size() || aliases[i] == ';') {
                    std::string a = trim(aliases.substr(start, i - start));
                    start = i + 1;
                    if (!a.empty()) table.add_alias(a, id);
                }
            }
        }
    }
    return table;
}

PersonId AliasTable::add_person(const std::string& first, const std::string& last,
                                const std::string& primary_email) {
    std::string key = lowercase_trim(primary_email);
    auto it = entries_.find(key);
    if (it != entries_.end()) return PersonId{it->second};
    PersonId id{static_cast<int32_t>(persons_.size())};
    persons_.push_back(Person{first, last, primary_email});
    entries_.emplace(key, id.value);
    return id;
}

void AliasTable::add_alias(const std::string& address, PersonId person) {
    std::string key = lowercase_trim(address);
    auto it = entries_.find(key);
    if (it != entries_.end() && it->second != person.value)
        throw InputError("alias '" + address + "' maps to two different persons");
    entries_.emplace(key, person.value);
}

std::optional<PersonId> AliasTable::resolve(const std::string& address) const {
    auto it = entries_.find(lowercase_trim(address));
    if (it == entries_.end()) return std::nullopt;
    return PersonId{it->second};
}

PersonId AliasTable::resolve_or_add(const std::string& address) {
    std::string key = lowercase_trim(address);
    auto it = entries_.find(key);
    if (it != entries_.end()) return PersonId{it->second};
    PersonId id{static_cast<int32_t>(persons_.size())};
    persons_.push_back(Person{"", "", key});
    entries_.emplace(key, id.value);
    return id;
}

const Person& AliasTable::person(PersonId id) const {
    if (!id.valid() || static_cast<size_t>(id.value) >= persons_.size())
        throw InternalError("invalid PersonId");
    return persons_[static_cast<size_t>(id.value)];
}

Corpus parse_corpus(std::istream& in, const ParseOptions& opts) {
    return parse_corpus(in, AliasTable{}, opts);
}

Corpus parse_corpus(std::istream& in, AliasTable aliases, const ParseOptions& opts) {
    Corpus corpus;
    corpus.aliases = std::move(aliases);

    CsvReader reader(in);
    std::vector<std::string> row;
    if (!reader.read_record(row)) throw InputError("corpus CSV: empty input");

    int c_id = find_column(row, "id");
    if (c_id < 0) c_id = find_column(row, "message_id");
    int c_date = find_column(row, "date");
    int c_sender = find_column(row, "sender");
    if (c_sender < 0) c_sender = find_column(row, "from");
    int c_recipients = find_column(row, "recipients");
    int c_to = find_column(row, "to");
    int c_cc = find_column(row, "cc");
    int c_bcc = find_column(row, "bcc");
    int c_subject = find_column(row, "subject");
    int c_body = find_column(row, "body");
    int c_poi = find_column(row, opts.poi_column);
    int c_label = find_column(row, opts.label_column);

    if (c_date < 0 || c_sender < 0 || c_subject < 0 || c_body < 0 ||
        (c_recipients < 0 && c_to < 0))
        throw InputError(
            "corpus CSV: header must name date, sender, recipients (or to), subject, body");

    const size_t width = row.size();
    struct Pending {
        EmailDoc doc;
        std::optional<bool> label;
        size_t input_order;
    };
    std::vector<Pending> pending;

    while (reader.read_record(row)) {
        corpus.report.rows_read++;
        size_t record = reader.record_number();
        auto drop = [&](const std::string& why) {
            corpus.report.rows_dropped++;
            corpus.report.drop_reasons.push_back(DropReason{record, why});
        };
        if (reader.bad()) {
            drop("unterminated quoted field");
            continue;
        }
        if (row.size() != width) {
            drop("field count " + std::to_string(row.size()) + " does not match header " +
                 std::to_string(width));
            continue;
        }
        auto field = [&](int idx) -> const std::string& {
            static const std::string empty;
            return idx >= 0 ? row[static_cast<size_t>(idx)] : empty;
        };

        std::string sender = trim(field(c_sender));
        if (sender.empty()) {
            drop("missing sender");
            continue;
        }
        std::string date_raw = trim(field(c_date));
        if (date_raw.empty()) {
            drop("missing date");
            continue;
        }
        auto when = parse_datetime(date_raw);
        if (!when) {
            drop("unparseable date '" + date_raw + "'");
            continue;
        }

        Pending p;
        p.input_order = pending.size();
        p.doc.id = c_id >= 0 && !trim(field(c_id)).empty()
                       ? trim(field(c_id))
                       : "row-" + std::to_string(record);
        p.doc.date = *when;
        p.doc.sender_raw = sender;
        p.doc.subject = field(c_subject);
        p.doc.body = field(c_body);
        if (c_poi >= 0) p.doc.poi_flag = parse_bool_flag(field(c_poi));
        if (c_label >= 0 && !trim(field(c_label)).empty())
            p.label = parse_bool_flag(field(c_label));

        std::unordered_map<std::string, bool> seen;
        if (c_recipients >= 0) split_addresses(field(c_recipients), RecipientRole::To,
                                               p.doc.recipients, seen);
        if (c_to >= 0) split_addresses(field(c_to), RecipientRole::To, p.doc.recipients, seen);
        if (c_cc >= 0) split_addresses(field(c_cc), RecipientRole::Cc, p.doc.recipients, seen);
        if (c_bcc >= 0) split_addresses(field(c_bcc), RecipientRole::Bcc, p.doc.recipients, seen);

        pending.push_back(std::move(p));
    }

    std::stable_sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
        return a.doc.date < b.doc.date;
    });

    corpus.has_labels = c_label >= 0;
    corpus.docs.reserve(pending.size());
    if (corpus.has_labels) corpus.labels.reserve(pending.size());
    for (auto& p : pending) {
        // Alias resolution happens after the sort so synthesized PersonIds
        // depend only on chronological first appearance, not CSV order.
        p.doc.sender = corpus.aliases.resolve_or_add(p.doc.sender_raw);
        corpus.docs.push_back(std::move(p.doc));
        if (corpus.has_labels) corpus.labels.push_back(p.label);
    }
    return corpus;
}

CorpusStats corpus_stats(const Corpus& corpus) {
    CorpusStats stats;
    stats.doc_count = corpus.docs.size();
    stats.body_lengths.reserve(corpus.docs.size());
    for (const auto& doc : corpus.docs) {
        size_t words = 0;
        for (const std::string* text : {&doc.subject, &doc.body}) {
            bool in_word = false;
            for (char c : *text) {
                bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
                if (!space && !in_word) ++words;
                in_word = !space;
            }
        }
        stats.total_words += words;
        stats.per_sender_counts[corpus.aliases.person(doc.sender).primary_email]++;
        stats.daily_counts[utc_day(doc.date)]++;
        stats.body_lengths.push_back(static_cast<int64_t>(doc.body.size()));
    }
    return stats;
}

} // namespace mailmine
