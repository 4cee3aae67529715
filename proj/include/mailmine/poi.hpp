#pragma once

#include "mailmine/corpus.hpp"
#include "mailmine/learn.hpp"
#include "mailmine/sentiment.hpp"

#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace mailmine {

struct FinancialRecord {
    std::string person; // key as it appears in the CSV
    std::map<std::string, double> features;
    bool poi = false;
};

enum class BlankFill { Zero, Median, Mean };

struct FinancialLoad {
    std::vector<FinancialRecord> records;
    std::vector<std::string> feature_names; // column order from the header
    size_t blank_cells = 0;
    size_t total_cells = 0;
    std::vector<std::pair<size_t, std::string>> row_errors; // (record, message)
};

// CSV with a person column, a poi column, and numeric columns. Blank and
// "NaN" cells fill with zero (or the column median/mean when asked); any
// other non-numeric cell drops the row into row_errors.
FinancialLoad load_financials(std::istream& in, BlankFill fill = BlankFill::Zero);

struct EmailFeatures {
    std::string person_key; // canonical email
    PersonId person;
    int64_t to_messages = 0;   // docs where the person is a recipient
    int64_t from_messages = 0; // docs the person sent
    int64_t to_poi = 0;        // sent docs with at least one POI recipient
    int64_t from_poi = 0;      // received docs sent by a POI
    EmotionCounts emotion_totals{};
    int64_t valence = 0;
    int64_t deception = 0;
};

// Per-person email traffic and sentiment features. Self-addressed mail never
// counts toward the POI-link counters.
std::vector<EmailFeatures> email_features(const Corpus& corpus,
                                          const std::set<PersonId>& poi_set,
                                          const std::map<PersonId, EmotionProfile>& profiles);

enum class JoinMode { FinancialOnly, Combined, EmailOnly };

// One row per person across both sources; the side a person is missing from
// contributes a zero block. POI labels come from the financial records.
// Duplicate person keys in either input are an error.
LabeledDataset join_features(const std::vector<FinancialRecord>& fin,
                             const std::vector<std::string>& fin_feature_names,
                             const std::vector<EmailFeatures>& email, JoinMode mode);

// Published rule sets: fig4_responsive (six stemmed-term counts),
// fig6_poi (bonus / from_messages / anger), bonus_single_split
// (bonus >= $1,170,000). Unknown names throw.
RuleSet builtin_ruleset(const std::string& name);

} // namespace mailmine
