#include "mailmine/porter2.hpp"

#include <array>
#include <cctype>

// Implements the English (Porter2) stemming algorithm: mark R1/R2 once on
// the prefix, then run suffix steps 0..5 with longest-match semantics.
// R1/R2 stay valid as integer positions because every edit happens at the
// tail of the word.

namespace mailmine {

namespace {

bool is_v(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool is_double_pair(char a, char b) {
    if (a != b) return false;
    switch (a) {
        case 'b': case 'd': case 'f': case 'g': case 'm':
        case 'n': case 'p': case 'r': case 't':
            return true;
        default:
            return false;
    }
}

bool valid_li_ending(char c) {
    switch (c) {
        case 'c': case 'd': case 'e': case 'g': case 'h':
        case 'k': case 'm': case 'n': case 'r': case 't':
            return true;
        default:
            return false;
    }
}

bool ends_with(const std::string& w, std::string_view suf) {
    return w.size() >= suf.size() && w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
}

// Position one past the first non-vowel that follows a vowel, from `start`.
size_t after_vowel_consonant(const std::string& w, size_t start) {
    size_t i = start;
    while (i < w.size() && !is_v(w[i])) ++i;
    if (i == w.size()) return i;
    ++i;
    while (i < w.size() && is_v(w[i])) ++i;
    if (i == w.size()) return i;
    return i + 1;
}

// Does w[0..end) end in a short syllable?
bool ends_short_syllable(const std::string& w, size_t end) {
    if (end == 2) return is_v(w[0]) && !is_v(w[1]);
    if (end < 3) return false;
    char last = w[end - 1];
    if (is_v(last) || last == 'w' || last == 'x' || last == 'Y') return false;
    return is_v(w[end - 2]) && !is_v(w[end - 3]);
}

struct Exception1 {
    std::string_view word;
    std::string_view stem;
};

constexpr std::array<Exception1, 18> kException1 = {{
    {"skis", "ski"},
    {"skies", "sky"},
    {"dying", "die"},
    {"lying", "lie"},
    {"tying", "tie"},
    {"idly", "idl"},
    {"gently", "gentl"},
    {"ugly", "ugli"},
    {"early", "earli"},
    {"only", "onli"},
    {"singly", "singl"},
    {"sky", "sky"},
    {"news", "news"},
    {"howe", "howe"},
    {"atlas", "atlas"},
    {"cosmos", "cosmos"},
    {"bias", "bias"},
    {"andes", "andes"},
}};

constexpr std::array<std::string_view, 8> kException2 = {
    "inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed",
};

struct Stemmer {
    std::string w;
    size_t p1 = 0;
    size_t p2 = 0;

    bool in_r1(size_t pos) const { return pos >= p1; }
    bool in_r2(size_t pos) const { return pos >= p2; }

    void mark_regions() {
        p1 = w.size();
        p2 = w.size();
        size_t start = 0;
        if (w.rfind("gener", 0) == 0) start = 5;
        else if (w.rfind("commun", 0) == 0) start = 6;
        else if (w.rfind("arsen", 0) == 0) start = 5;
        p1 = start != 0 ? start : after_vowel_consonant(w, 0);
        p2 = after_vowel_consonant(w, p1);
    }

    void prelude() {
        if (!w.empty() && w[0] == '\'') w.erase(0, 1);
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] == 'y' && (i == 0 || is_v(w[i - 1]))) w[i] = 'Y';
    }

    void step_0() {
        if (ends_with(w, "'s'")) w.resize(w.size() - 3);
        else if (ends_with(w, "'s")) w.resize(w.size() - 2);
        else if (ends_with(w, "'")) w.resize(w.size() - 1);
    }

    void step_1a() {
        if (ends_with(w, "sses")) {
            w.resize(w.size() - 2);
            return;
        }
        if (ends_with(w, "ied") || ends_with(w, "ies")) {
            // keep "ie" when only one letter precedes the suffix
            w.resize(w.size() - (w.size() > 4 ? 2 : 1));
            return;
        }
        if (ends_with(w, "us") || ends_with(w, "ss")) return;
        if (ends_with(w, "s")) {
            // delete only if a vowel occurs before the penultimate letter
            for (size_t i = 0; i + 2 < w.size(); ++i) {
                if (is_v(w[i])) {
                    w.resize(w.size() - 1);
                    return;
                }
            }
        }
    }

    void step_1b() {
        struct Rule {
            std::string_view suf;
            bool to_ee;
        };
        static constexpr std::array<Rule, 6> rules = {{
            {"eedly", true},
            {"ingly", false},
            {"edly", false},
            {"eed", true},
            {"ing", false},
            {"ed", false},
        }};
        for (const auto& r : rules) {
            if (!ends_with(w, r.suf)) continue;
            size_t pos = w.size() - r.suf.size();
            if (r.to_ee) {
                if (in_r1(pos)) w.replace(pos, r.suf.size(), "ee");
                return;
            }
            bool has_vowel = false;
            for (size_t i = 0; i < pos; ++i)
                if (is_v(w[i])) {
                    has_vowel = true;
                    break;
                }
            if (!has_vowel) return;
            w.resize(pos);
            if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
                w.push_back('e');
            } else if (w.size() >= 2 && is_double_pair(w[w.size() - 2], w[w.size() - 1])) {
                w.resize(w.size() - 1);
            } else if (w.size() == p1 && ends_short_syllable(w, w.size())) {
                w.push_back('e');
            }
            return;
        }
    }

    void step_1c() {
        size_t n = w.size();
        if (n < 3) return;
        char last = w[n - 1];
        if ((last == 'y' || last == 'Y') && !is_v(w[n - 2])) w[n - 1] = 'i';
    }

    struct Map {
        std::string_view suf;
        std::string_view rep;
    };

    void step_2() {
        static constexpr std::array<Map, 24> rules = {{
            {"ization", "ize"}, {"ational", "ate"}, {"fulness", "ful"}, {"ousness", "ous"},
            {"iveness", "ive"}, {"tional", "tion"}, {"biliti", "ble"},  {"lessli", "less"},
            {"entli", "ent"},   {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
            {"ousli", "ous"},   {"iviti", "ive"},   {"fulli", "ful"},   {"enci", "ence"},
            {"anci", "ance"},   {"abli", "able"},   {"izer", "ize"},    {"ator", "ate"},
            {"alli", "al"},     {"bli", "ble"},     {"ogi", "og"},      {"li", ""},
        }};
        for (const auto& r : rules) {
            if (!ends_with(w, r.suf)) continue;
            size_t pos = w.size() - r.suf.size();
            if (!in_r1(pos)) return;
            if (r.suf == "ogi") {
                if (pos >= 1 && w[pos - 1] == 'l') w.replace(pos, r.suf.size(), r.rep);
            } else if (r.suf == "li") {
                if (pos >= 1 && valid_li_ending(w[pos - 1])) w.resize(pos);
            } else {
                w.replace(pos, r.suf.size(), r.rep);
            }
            return;
        }
    }

    void step_3() {
        static constexpr std::array<Map, 9> rules = {{
            {"ational", "ate"},
            {"tional", "tion"},
            {"alize", "al"},
            {"icate", "ic"},
            {"iciti", "ic"},
            {"ative", ""},
            {"ical", "ic"},
            {"ness", ""},
            {"ful", ""},
        }};
        for (const auto& r : rules) {
            if (!ends_with(w, r.suf)) continue;
            size_t pos = w.size() - r.suf.size();
            if (!in_r1(pos)) return;
            if (r.suf == "ative") {
                if (in_r2(pos)) w.resize(pos);
            } else {
                w.replace(pos, r.suf.size(), r.rep);
            }
            return;
        }
    }

    void step_4() {
        static constexpr std::array<std::string_view, 18> rules = {{
            "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism",
            "ate",   "iti",  "ous",  "ive",  "ize",  "ion",  "al",  "er",  "ic",
        }};
        for (const auto& suf : rules) {
            if (!ends_with(w, suf)) continue;
            size_t pos = w.size() - suf.size();
            if (!in_r2(pos)) return;
            if (suf == "ion") {
                if (pos >= 1 && (w[pos - 1] == 's' || w[pos - 1] == 't')) w.resize(pos);
            } else {
                w.resize(pos);
            }
            return;
        }
    }

    void step_5() {
        size_t n = w.size();
        if (n == 0) return;
        if (w[n - 1] == 'e') {
            if (in_r2(n - 1) || (in_r1(n - 1) && !ends_short_syllable(w, n - 1)))
                w.resize(n - 1);
        } else if (w[n - 1] == 'l') {
            if (in_r2(n - 1) && n >= 2 && w[n - 2] == 'l') w.resize(n - 1);
        }
    }

    void postlude() {
        for (char& c : w)
            if (c == 'Y') c = 'y';
    }
};

} // namespace

std::string porter2_stem(std::string_view word) {
    std::string lower;
    lower.reserve(word.size());
    for (char c : word)
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

    for (const auto& ex : kException1)
        if (lower == ex.word) return std::string(ex.stem);
    if (lower.size() <= 2) return lower;

    Stemmer st;
    st.w = std::move(lower);
    st.prelude();
    st.mark_regions();
    st.step_0();
    st.step_1a();

    bool stop = false;
    for (const auto& ex : kException2)
        if (st.w == ex) {
            stop = true;
            break;
        }
    if (!stop) {
        st.step_1b();
        st.step_1c();
        st.step_2();
        st.step_3();
        st.step_4();
        st.step_5();
    }
    st.postlude();
    return st.w;
}

} // namespace mailmine
