#include "mailmine/sentiment.hpp"

#include "mailmine/errors.hpp"
#include "mailmine/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace mailmine {

namespace {

constexpr std::array<const char*, kEmotionCount> kEmotionNames = {
    "anger", "fear", "anticipation", "trust", "surprise", "sadness", "joy", "disgust"};

std::string trim_lower(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string out;
    for (size_t i = b; i < e; ++i)
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i]))));
    return out;
}

} // namespace

const char* emotion_name(Emotion e) { return kEmotionNames[static_cast<size_t>(e)]; }

std::optional<Emotion> emotion_from_name(std::string_view name) {
    for (size_t i = 0; i < kEmotionCount; ++i)
        if (name == kEmotionNames[i]) return static_cast<Emotion>(i);
    return std::nullopt;
}

Lexicon Lexicon::load(std::istream& in, LexiconKind kind) {
    Lexicon lex;
    lex.kind = kind;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw InputError("lexicon line " + std::to_string(line_no) + ": expected term<TAB>value");
        std::string term = trim_lower(line.substr(0, tab));
        std::string value = trim_lower(line.substr(tab + 1));
        if (term.empty()) continue;
        if (kind == LexiconKind::Valence) {
            try {
                size_t used = 0;
                int v = std::stoi(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
                if (v < -5 || v > 5)
                    throw InputError("lexicon line " + std::to_string(line_no) + ": valence " +
                                     std::to_string(v) + " outside [-5, 5]");
                if (!lex.valence.emplace(term, v).second) {
                    lex.valence[term] = v; // last entry wins
                    lex.duplicate_valence_entries++;
                }
            } catch (const std::invalid_argument&) {
                throw InputError("lexicon line " + std::to_string(line_no) +
                                 ": bad valence integer '" + value + "'");
            } catch (const std::out_of_range&) {
                throw InputError("lexicon line " + std::to_string(line_no) +
                                 ": bad valence integer '" + value + "'");
            }
        } else {
            auto emo = emotion_from_name(value);
            if (!emo)
                throw InputError("lexicon line " + std::to_string(line_no) +
                                 ": unknown emotion '" + value + "'");
            lex.emotion_mask[term] |= static_cast<uint8_t>(1u << static_cast<unsigned>(*emo));
        }
    }
    return lex;
}

int score_valence(const TokenStream& tokens, const Lexicon& lex) {
    if (lex.kind != LexiconKind::Valence)
        throw InputError("score_valence: lexicon is not a valence lexicon");
    int sum = 0;
    for (const auto& tok : tokens) {
        auto it = lex.valence.find(tok);
        if (it != lex.valence.end()) sum += it->second;
    }
    return sum;
}

EmotionCounts score_emotions(const TokenStream& tokens, const Lexicon& lex) {
    if (lex.kind != LexiconKind::Emotion)
        throw InputError("score_emotions: lexicon is not an emotion lexicon");
    EmotionCounts counts{};
    for (const auto& tok : tokens) {
        auto it = lex.emotion_mask.find(tok);
        if (it == lex.emotion_mask.end()) continue;
        uint8_t mask = it->second;
        for (size_t e = 0; e < kEmotionCount; ++e)
            if (mask & (1u << e)) counts[e]++;
    }
    return counts;
}

void EmotionProfile::finalize() {
    if (token_total <= 0) {
        normalized.fill(0.0);
        return;
    }
    for (size_t e = 0; e < kEmotionCount; ++e)
        normalized[e] = static_cast<double>(counts[e]) / static_cast<double>(token_total);
}

namespace {

struct DocScore {
    EmotionCounts emotions{};
    int valence = 0;
    int64_t deception = 0;
    int64_t tokens = 0;
};

DocScore score_doc(const EmailDoc& doc, const PipelineConfig& pipeline,
                   const LexiconSet& lexicons) {
    DocScore score;
    TokenStream tokens = run_pipeline(doc.subject + "\n" + doc.body, pipeline);
    score.tokens = static_cast<int64_t>(tokens.size());
    score.valence = score_valence(tokens, lexicons.valence);
    score.emotions = score_emotions(tokens, lexicons.emotions);
    if (lexicons.deceit) {
        for (const auto& tok : tokens)
            if (lexicons.deceit->count(tok)) score.deception++;
    }
    return score;
}

} // namespace

std::map<PersonId, EmotionProfile> sender_profiles(const Corpus& corpus,
                                                   const PipelineConfig& pipeline,
                                                   const LexiconSet& lexicons, unsigned jobs) {
    size_t shards = shard_bounds(corpus.docs.size(), jobs).size();
    std::vector<std::map<PersonId, EmotionProfile>> partials(shards);

    parallel_shards(corpus.docs.size(), jobs, [&](size_t shard, size_t begin, size_t end) {
        auto& local = partials[shard];
        for (size_t d = begin; d < end; ++d) {
            const EmailDoc& doc = corpus.docs[d];
            DocScore s = score_doc(doc, pipeline, lexicons);
            EmotionProfile& prof = local[doc.sender];
            prof.person = doc.sender;
            for (size_t e = 0; e < kEmotionCount; ++e) prof.counts[e] += s.emotions[e];
            prof.valence_sum += s.valence;
            prof.deception_hits += s.deception;
            prof.token_total += s.tokens;
        }
    });

    std::map<PersonId, EmotionProfile> profiles;
    for (auto& part : partials) {
        for (auto& [person, p] : part) {
            EmotionProfile& prof = profiles[person];
            prof.person = person;
            for (size_t e = 0; e < kEmotionCount; ++e) prof.counts[e] += p.counts[e];
            prof.valence_sum += p.valence_sum;
            prof.deception_hits += p.deception_hits;
            prof.token_total += p.token_total;
        }
    }
    for (auto& [person, prof] : profiles) prof.finalize();
    return profiles;
}

std::array<double, kEmotionCount> corpus_radar(
    const std::map<PersonId, EmotionProfile>& profiles) {
    EmotionCounts totals{};
    int64_t grand = 0;
    for (const auto& [person, prof] : profiles)
        for (size_t e = 0; e < kEmotionCount; ++e) {
            totals[e] += prof.counts[e];
            grand += prof.counts[e];
        }
    if (grand == 0) throw InputError("corpus_radar: no emotion hits in any profile");
    std::array<double, kEmotionCount> shares{};
    for (size_t e = 0; e < kEmotionCount; ++e)
        shares[e] = static_cast<double>(totals[e]) / static_cast<double>(grand);
    return shares;
}

std::vector<TimelinePoint> timeline(const Corpus& corpus, TimeBucket bucket,
                                    const PipelineConfig& pipeline, const LexiconSet& lexicons) {
    std::map<std::string, TimelinePoint> buckets;
    for (const auto& doc : corpus.docs) {
        std::string key = bucket == TimeBucket::Month ? utc_month(doc.date)
                                                      : utc_iso_week(doc.date);
        DocScore s = score_doc(doc, pipeline, lexicons);
        TimelinePoint& point = buckets[key];
        point.period = key;
        for (size_t e = 0; e < kEmotionCount; ++e) point.emotions[e] += s.emotions[e];
        point.valence += s.valence;
        point.doc_count++;
    }

    std::vector<TimelinePoint> series;
    if (buckets.empty()) return series;
    std::string cursor = buckets.begin()->first;
    const std::string last = buckets.rbegin()->first;
    while (true) {
        auto it = buckets.find(cursor);
        if (it != buckets.end()) {
            series.push_back(it->second);
        } else {
            TimelinePoint zero;
            zero.period = cursor;
            series.push_back(zero); // gap kept on the axis
        }
        if (cursor == last) break;
        cursor = bucket == TimeBucket::Month ? next_month(cursor) : next_iso_week(cursor);
    }
    return series;
}

Dendrogram cluster_profiles(const std::map<PersonId, EmotionProfile>& profiles) {
    // usable profiles: nonzero normalized emotion vector
    std::vector<const EmotionProfile*> items;
    for (const auto& [person, prof] : profiles) {
        bool nonzero = false;
        for (double v : prof.normalized)
            if (v != 0.0) nonzero = true;
        if (nonzero) items.push_back(&prof);
    }
    if (items.size() < 2)
        throw InputError("cluster_profiles: need at least two profiles with emotion signal");

    // nine dimensions: eight normalized emotions + min-max scaled valence
    double vmin = std::numeric_limits<double>::max(), vmax = std::numeric_limits<double>::lowest();
    for (const auto* p : items) {
        vmin = std::min(vmin, static_cast<double>(p->valence_sum));
        vmax = std::max(vmax, static_cast<double>(p->valence_sum));
    }
    const size_t n = items.size();
    std::vector<std::array<double, 9>> vec(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t e = 0; e < kEmotionCount; ++e) vec[i][e] = items[i]->normalized[e];
        vec[i][8] = vmax > vmin
                        ? (static_cast<double>(items[i]->valence_sum) - vmin) / (vmax - vmin)
                        : 0.0;
    }
    auto cosine_distance = [&](size_t a, size_t b) {
        double dot = 0.0, na = 0.0, nb = 0.0;
        for (size_t k = 0; k < 9; ++k) {
            dot += vec[a][k] * vec[b][k];
            na += vec[a][k] * vec[a][k];
            nb += vec[b][k] * vec[b][k];
        }
        return 1.0 - dot / std::sqrt(na * nb);
    };

    Dendrogram dg;
    struct Cluster {
        int32_t node;    // index into dg.nodes
        size_t size;
        size_t lowest;   // lowest member profile index, for tie-breaking
        bool alive = true;
    };
    std::vector<Cluster> clusters;
    for (size_t i = 0; i < n; ++i) {
        Dendrogram::Node leaf;
        leaf.person = items[i]->person;
        dg.nodes.push_back(leaf);
        clusters.push_back(Cluster{static_cast<int32_t>(i), 1, i, true});
    }

    // pairwise distances, updated with the Lance-Williams average rule
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) dist[i][j] = dist[j][i] = cosine_distance(i, j);

    size_t remaining = n;
    while (remaining > 1) {
        double best = std::numeric_limits<double>::max();
        size_t bi = 0, bj = 0;
        bool found = false;
        for (size_t i = 0; i < clusters.size(); ++i) {
            if (!clusters[i].alive) continue;
            for (size_t j = i + 1; j < clusters.size(); ++j) {
                if (!clusters[j].alive) continue;
                double d = dist[i][j];
                if (!found || d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                    found = true;
                } else if (d == best) {
                    // lowest profile index wins ties
                    size_t cur_lo = std::min(clusters[i].lowest, clusters[j].lowest);
                    size_t cur_hi = std::max(clusters[i].lowest, clusters[j].lowest);
                    size_t old_lo = std::min(clusters[bi].lowest, clusters[bj].lowest);
                    size_t old_hi = std::max(clusters[bi].lowest, clusters[bj].lowest);
                    if (cur_lo < old_lo || (cur_lo == old_lo && cur_hi < old_hi)) {
                        bi = i;
                        bj = j;
                    }
                }
            }
        }

        Dendrogram::Node merge;
        merge.left = clusters[bi].node;
        merge.right = clusters[bj].node;
        merge.height = best;
        dg.nodes.push_back(merge);
        int32_t merged_node = static_cast<int32_t>(dg.nodes.size() - 1);

        size_t si = clusters[bi].size, sj = clusters[bj].size;
        for (size_t k = 0; k < clusters.size(); ++k) {
            if (!clusters[k].alive || k == bi || k == bj) continue;
            double d = (static_cast<double>(si) * dist[bi][k] +
                        static_cast<double>(sj) * dist[bj][k]) /
                       static_cast<double>(si + sj);
            dist[bi][k] = dist[k][bi] = d;
        }
        clusters[bi].node = merged_node;
        clusters[bi].size = si + sj;
        clusters[bi].lowest = std::min(clusters[bi].lowest, clusters[bj].lowest);
        clusters[bj].alive = false;
        --remaining;
    }
    dg.root = static_cast<int32_t>(dg.nodes.size() - 1);
    return dg;
}

} // namespace mailmine
