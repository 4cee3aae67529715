#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace mailmine {

using TokenStream = std::vector<std::string>;

struct PipelineConfig {
    bool lowercase = true;
    bool strip_punct = true;
    bool strip_numbers = false;
    bool stem = true;
    std::unordered_set<std::string> stopwords; // matched after lowercasing

    static PipelineConfig discovery();  // stemmed, numbers kept, default stopwords
    static PipelineConfig sentiment();  // unstemmed, numbers stripped, no stopwords
};

// Lowercases (ASCII), replaces punctuation and symbols with spaces, strips
// digit runs when asked, and collapses whitespace. Non-ASCII letters pass
// through untouched; common Unicode punctuation blocks count as punctuation.
std::string normalize(std::string_view text, const PipelineConfig& config);

// Whitespace split of normalized text. Never yields empty tokens.
TokenStream tokenize(std::string_view text);

// normalize -> tokenize -> stopword removal -> stem.
TokenStream run_pipeline(std::string_view text, const PipelineConfig& config);

// The stock 174-term English stopword list.
const std::unordered_set<std::string>& default_stopwords();

// One lowercase term per line; blank lines and trailing whitespace ignored.
std::unordered_set<std::string> load_stopwords(std::istream& in);

} // namespace mailmine
