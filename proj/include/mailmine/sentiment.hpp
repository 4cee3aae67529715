#pragma once

#include "mailmine/corpus.hpp"
#include "mailmine/textpipe.hpp"

#include <array>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace mailmine {

// Fixed emotion axes, in report order.
enum class Emotion : uint8_t {
    Anger,
    Fear,
    Anticipation,
    Trust,
    Surprise,
    Sadness,
    Joy,
    Disgust,
};
inline constexpr size_t kEmotionCount = 8;
const char* emotion_name(Emotion e);
std::optional<Emotion> emotion_from_name(std::string_view name);

enum class LexiconKind { Valence, Emotion };

// TSV lexicons: valence = term<TAB>integer in [-5, 5]; emotion =
// term<TAB>emotion name, one pair per line, repeated terms accumulate.
struct Lexicon {
    LexiconKind kind = LexiconKind::Valence;
    std::unordered_map<std::string, int> valence;
    std::unordered_map<std::string, uint8_t> emotion_mask; // bit per Emotion
    size_t duplicate_valence_entries = 0; // last entry wins, count reported

    static Lexicon load(std::istream& in, LexiconKind kind);
};

int score_valence(const TokenStream& tokens, const Lexicon& lex);

using EmotionCounts = std::array<int64_t, kEmotionCount>;
EmotionCounts score_emotions(const TokenStream& tokens, const Lexicon& lex);

struct EmotionProfile {
    PersonId person;
    EmotionCounts counts{};
    int64_t valence_sum = 0;
    int64_t deception_hits = 0; // optional ninth channel
    int64_t token_total = 0;
    std::array<double, kEmotionCount> normalized{}; // counts / token_total

    void finalize();
};

struct LexiconSet {
    Lexicon valence;  // kind Valence
    Lexicon emotions; // kind Emotion
    // Optional ninth channel: newline-delimited deception terms. No standard
    // lexicon exists, so it defaults to absent.
    std::optional<std::unordered_set<std::string>> deceit;
};

// Per-sender profiles over concatenated subject+body token streams.
std::map<PersonId, EmotionProfile> sender_profiles(const Corpus& corpus,
                                                   const PipelineConfig& pipeline,
                                                   const LexiconSet& lexicons,
                                                   unsigned jobs = 1);

// Corpus-wide emotion shares; the eight fractions sum to one.
std::array<double, kEmotionCount> corpus_radar(const std::map<PersonId, EmotionProfile>& profiles);

enum class TimeBucket { Week, Month };

struct TimelinePoint {
    std::string period; // "2001-05" or "2001-W18"
    EmotionCounts emotions{};
    int64_t valence = 0;
    int64_t doc_count = 0;
};

// Calendar-bucket aggregation with empty buckets emitted as zeros so the
// axis stays continuous.
std::vector<TimelinePoint> timeline(const Corpus& corpus, TimeBucket bucket,
                                    const PipelineConfig& pipeline, const LexiconSet& lexicons);

// Agglomerative average-linkage clustering with cosine distance over the
// normalized emotion vector plus min-max-scaled valence.
struct Dendrogram {
    struct Node {
        int32_t left = -1;   // node indices; -1 marks a leaf
        int32_t right = -1;
        double height = 0.0;
        PersonId person;     // leaves only
    };
    std::vector<Node> nodes; // last node is the root
    int32_t root = -1;
};

Dendrogram cluster_profiles(const std::map<PersonId, EmotionProfile>& profiles);

} // namespace mailmine
