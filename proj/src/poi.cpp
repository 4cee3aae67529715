#include "mailmine/poi.hpp"

#include "mailmine/csv.hpp"
#include "mailmine/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

namespace mailmine {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

bool is_blank_cell(const std::string& raw) {
    std::string v = lower(trim(raw));
    return v.empty() || v == "nan" || v == "na" || v == "-";
}

bool parse_number(const std::string& raw, double& out) {
    std::string v = trim(raw);
    if (v.empty()) return false;
    // tolerate currency commas: 1,170,000
    std::string cleaned;
    for (char c : v)
        if (c != ',' && c != '$') cleaned.push_back(c);
    try {
        size_t used = 0;
        out = std::stod(cleaned, &used);
        return used == cleaned.size();
    } catch (...) {
        return false;
    }
}

} // namespace

FinancialLoad load_financials(std::istream& in, BlankFill fill) {
    FinancialLoad load;
    CsvReader reader(in);
    std::vector<std::string> header;
    if (!reader.read_record(header)) throw InputError("financial CSV: empty input");
    int c_person = find_column(header, "person");
    if (c_person < 0) c_person = find_column(header, "name");
    int c_poi = find_column(header, "poi");
    if (c_person < 0 || c_poi < 0)
        throw InputError("financial CSV: header must name person and poi columns");

    std::vector<int> numeric_cols;
    for (size_t i = 0; i < header.size(); ++i) {
        if (static_cast<int>(i) == c_person || static_cast<int>(i) == c_poi) continue;
        load.feature_names.push_back(trim(header[i]));
        numeric_cols.push_back(static_cast<int>(i));
    }

    struct Blank {
        size_t record; // index into load.records
        size_t column; // index into feature_names
    };
    std::vector<Blank> blanks;

    std::vector<std::string> row;
    while (reader.read_record(row)) {
        size_t record = reader.record_number();
        if (reader.bad() || row.size() != header.size()) {
            load.row_errors.emplace_back(record, "malformed row");
            continue;
        }
        FinancialRecord rec;
        rec.person = trim(row[static_cast<size_t>(c_person)]);
        if (rec.person.empty()) {
            load.row_errors.emplace_back(record, "missing person");
            continue;
        }
        std::string poi_raw = lower(trim(row[static_cast<size_t>(c_poi)]));
        rec.poi = poi_raw == "1" || poi_raw == "true" || poi_raw == "t" || poi_raw == "yes";

        bool bad = false;
        std::vector<Blank> row_blanks;
        for (size_t k = 0; k < numeric_cols.size(); ++k) {
            const std::string& cell = row[static_cast<size_t>(numeric_cols[k])];
            load.total_cells++;
            if (is_blank_cell(cell)) {
                load.blank_cells++;
                rec.features[load.feature_names[k]] = 0.0;
                row_blanks.push_back(Blank{load.records.size(), k});
                continue;
            }
            double v = 0.0;
            if (!parse_number(cell, v)) {
                load.row_errors.emplace_back(record, "non-numeric cell in column '" +
                                                         load.feature_names[k] + "': " + cell);
                bad = true;
                break;
            }
            rec.features[load.feature_names[k]] = v;
        }
        if (bad) continue;
        blanks.insert(blanks.end(), row_blanks.begin(), row_blanks.end());
        load.records.push_back(std::move(rec));
    }

    if (fill != BlankFill::Zero && !blanks.empty()) {
        for (size_t k = 0; k < load.feature_names.size(); ++k) {
            std::vector<double> known;
            std::set<size_t> blank_rows;
            for (const auto& b : blanks)
                if (b.column == k) blank_rows.insert(b.record);
            for (size_t r = 0; r < load.records.size(); ++r)
                if (!blank_rows.count(r))
                    known.push_back(load.records[r].features[load.feature_names[k]]);
            double value = 0.0;
            if (!known.empty()) {
                if (fill == BlankFill::Mean) {
                    for (double v : known) value += v;
                    value /= static_cast<double>(known.size());
                } else {
                    std::sort(known.begin(), known.end());
                    size_t mid = known.size() / 2;
                    value = known.size() % 2 ? known[mid]
                                             : (known[mid - 1] + known[mid]) / 2.0;
                }
            }
            for (size_t r : blank_rows) load.records[r].features[load.feature_names[k]] = value;
        }
    }
    return load;
}

std::vector<EmailFeatures> email_features(const Corpus& corpus,
                                          const std::set<PersonId>& poi_set,
                                          const std::map<PersonId, EmotionProfile>& profiles) {
    // Work on a copy of the alias table so receive-only addresses get
    // persons too (ids minted in chronological order, deterministic).
    AliasTable aliases = corpus.aliases;

    std::map<PersonId, EmailFeatures> by_person;
    auto touch = [&](PersonId id) -> EmailFeatures& {
        EmailFeatures& f = by_person[id];
        if (f.person_key.empty()) {
            f.person = id;
            f.person_key = aliases.person(id).primary_email;
        }
        return f;
    };

    for (const auto& doc : corpus.docs) {
        EmailFeatures& sender = touch(doc.sender);
        sender.from_messages++;

        bool sent_to_poi = false;
        std::set<PersonId> recipient_persons;
        for (const auto& rcpt : doc.recipients)
            recipient_persons.insert(aliases.resolve_or_add(rcpt.address));
        for (PersonId rid : recipient_persons) {
            EmailFeatures& r = touch(rid);
            r.to_messages++;
            if (rid != doc.sender) { // self-addressed mail never links to POIs
                if (poi_set.count(rid)) sent_to_poi = true;
                if (poi_set.count(doc.sender)) r.from_poi++;
            }
        }
        if (sent_to_poi) sender.to_poi++;
    }

    for (auto& [id, feats] : by_person) {
        auto it = profiles.find(id);
        if (it == profiles.end()) continue;
        feats.emotion_totals = it->second.counts;
        feats.valence = it->second.valence_sum;
        feats.deception = it->second.deception_hits;
    }

    std::vector<EmailFeatures> out;
    out.reserve(by_person.size());
    for (auto& [id, feats] : by_person) out.push_back(std::move(feats));
    return out;
}

LabeledDataset join_features(const std::vector<FinancialRecord>& fin,
                             const std::vector<std::string>& fin_feature_names,
                             const std::vector<EmailFeatures>& email, JoinMode mode) {
    std::unordered_map<std::string, const FinancialRecord*> fin_by_person;
    for (const auto& rec : fin)
        if (!fin_by_person.emplace(rec.person, &rec).second)
            throw InputError("join_features: duplicate person '" + rec.person +
                             "' in financial records");
    std::unordered_map<std::string, const EmailFeatures*> email_by_person;
    for (const auto& f : email)
        if (!email_by_person.emplace(f.person_key, &f).second)
            throw InputError("join_features: duplicate person '" + f.person_key +
                             "' in email features");

    std::vector<std::string> email_names = {"to_messages", "from_messages", "to_poi",
                                            "from_poi"};
    for (size_t e = 0; e < kEmotionCount; ++e)
        email_names.push_back(emotion_name(static_cast<Emotion>(e)));
    email_names.push_back("valence");
    email_names.push_back("deception");

    LabeledDataset ds;
    ds.positive_name = "person of interest";
    ds.negative_name = "not person of interest";
    bool use_fin = mode != JoinMode::EmailOnly;
    bool use_email = mode != JoinMode::FinancialOnly;
    if (use_fin)
        ds.feature_names.insert(ds.feature_names.end(), fin_feature_names.begin(),
                                fin_feature_names.end());
    if (use_email)
        ds.feature_names.insert(ds.feature_names.end(), email_names.begin(), email_names.end());

    // union of persons, financial order first, then email-only persons
    std::vector<std::string> persons;
    for (const auto& rec : fin) persons.push_back(rec.person);
    for (const auto& f : email)
        if (!fin_by_person.count(f.person_key)) persons.push_back(f.person_key);

    for (const auto& key : persons) {
        ds.row_ids.push_back(key);
        std::vector<double> row;
        row.reserve(ds.feature_names.size());
        const FinancialRecord* f = nullptr;
        const EmailFeatures* e = nullptr;
        if (auto it = fin_by_person.find(key); it != fin_by_person.end()) f = it->second;
        if (auto it = email_by_person.find(key); it != email_by_person.end()) e = it->second;
        if (use_fin) {
            for (const auto& name : fin_feature_names) {
                double v = 0.0;
                if (f) {
                    auto fit = f->features.find(name);
                    if (fit != f->features.end()) v = fit->second;
                }
                row.push_back(v);
            }
        }
        if (use_email) {
            if (e) {
                row.push_back(static_cast<double>(e->to_messages));
                row.push_back(static_cast<double>(e->from_messages));
                row.push_back(static_cast<double>(e->to_poi));
                row.push_back(static_cast<double>(e->from_poi));
                for (size_t k = 0; k < kEmotionCount; ++k)
                    row.push_back(static_cast<double>(e->emotion_totals[k]));
                row.push_back(static_cast<double>(e->valence));
                row.push_back(static_cast<double>(e->deception));
            } else {
                row.insert(row.end(), email_names.size(), 0.0);
            }
        }
        ds.rows.push_back(std::move(row));
        ds.labels.push_back(f && f->poi ? 1 : 0);
    }
    return ds;
}

RuleSet builtin_ruleset(const std::string& name) {
    auto cond = [](std::string feature, bool less, double threshold) {
        return RuleCondition{std::move(feature), less, threshold};
    };
    if (name == "fig4_responsive") {
        RuleSet rs;
        rs.positive_name = "responsive";
        rs.negative_name = "non-responsive";
        rs.group_headers[0] = "Non-responsive classification";
        rs.group_headers[1] = "Responsive classification";
        rs.rules = {
            Rule{{cond("california", true, 1.5), cond("demand", true, 0.5),
                  cond("bid", true, 0.5), cond("gas", true, 1.5)},
                 0},
            Rule{{cond("california", true, 1.5), cond("demand", true, 0.5),
                  cond("bid", true, 0.5), cond("gas", false, 1.5), cond("jeff", true, 0.5)},
                 0},
            Rule{{cond("california", true, 1.5), cond("demand", false, 0.5),
                  cond("system", true, 0.5)},
                 0},
            Rule{{cond("california", false, 1.5)}, 1},
            Rule{{cond("california", true, 1.5), cond("demand", true, 0.5),
                  cond("bid", true, 0.5), cond("gas", false, 1.5), cond("jeff", false, 0.5)},
                 1},
            Rule{{cond("california", true, 1.5), cond("demand", false, 0.5),
                  cond("system", false, 0.5)},
                 1},
            Rule{{cond("california", true, 1.5), cond("demand", true, 0.5),
                  cond("bid", false, 0.5)},
                 1},
        };
        return rs;
    }
    if (name == "fig6_poi") {
        RuleSet rs;
        rs.positive_name = "person of interest";
        rs.negative_name = "not person of interest";
        rs.group_headers[1] = "Person of Interest Classification";
        rs.group_headers[0] = "Not Person of Interest Classification";
        rs.currency_features = {"bonus"};
        rs.rules = {
            Rule{{cond("bonus", false, 550000.0), cond("from_messages", true, 520.0),
                  cond("anger", false, 10.5)},
                 1},
            Rule{{cond("bonus", false, 550000.0), cond("from_messages", true, 520.0),
                  cond("anger", true, 10.5)},
                 0},
            Rule{{cond("bonus", true, 550000.0)}, 0},
            Rule{{cond("bonus", false, 550000.0), cond("from_messages", false, 520.0)}, 0},
        };
        return rs;
    }
    if (name == "bonus_single_split") {
        RuleSet rs;
        rs.positive_name = "person of interest";
        rs.negative_name = "not person of interest";
        rs.currency_features = {"bonus"};
        rs.default_label = 0;
        rs.rules = {Rule{{cond("bonus", false, 1170000.0)}, 1}};
        return rs;
    }
    throw InputError("unknown builtin ruleset '" + name + "'");
}

} // namespace mailmine
