#include "mailmine/textpipe.hpp"

#include "mailmine/porter2.hpp"

#include <cctype>
#include <cstdint>
#include <istream>

namespace mailmine {

namespace {

// Decodes one UTF-8 codepoint; ill-formed bytes decode as themselves so the
// scan always advances.
uint32_t decode_utf8(std::string_view s, size_t& i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
        ++i;
        return c;
    }
    int extra = 0;
    uint32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
        extra = 1;
        cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
        extra = 2;
        cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
        extra = 3;
        cp = c & 0x07;
    } else {
        ++i;
        return c;
    }
    if (i + extra >= s.size()) {
        ++i;
        return c;
    }
    for (int k = 1; k <= extra; ++k) {
        unsigned char cc = static_cast<unsigned char>(s[i + k]);
        if ((cc & 0xC0) != 0x80) {
            ++i;
            return c;
        }
        cp = (cp << 6) | (cc & 0x3F);
    }
    i += extra + 1;
    return cp;
}

bool is_unicode_punct(uint32_t cp) {
    return (cp >= 0x00A1 && cp <= 0x00BF) || cp == 0x00D7 || cp == 0x00F7 ||
           (cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x20A0 && cp <= 0x20CF) ||
           (cp >= 0x2100 && cp <= 0x2BFF) || (cp >= 0x3000 && cp <= 0x303F);
}

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

} // namespace

std::string normalize(std::string_view text, const PipelineConfig& config) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    auto emit_space = [&] {
        if (!out.empty()) pending_space = true;
    };
    size_t i = 0;
    while (i < text.size()) {
        uint32_t cp = decode_utf8(text, i);
        if (cp < 0x80) {
            char c = static_cast<char>(cp);
            if (std::isspace(static_cast<unsigned char>(c))) {
                emit_space();
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                if (!config.strip_numbers) {
                    if (pending_space) {
                        out.push_back(' ');
                        pending_space = false;
                    }
                    out.push_back(c);
                }
                // stripped digits vanish without forcing a word break
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                if (pending_space) {
                    out.push_back(' ');
                    pending_space = false;
                }
                out.push_back(config.lowercase
                                  ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
                                  : c);
            } else {
                // ASCII punctuation or control
                if (config.strip_punct) emit_space();
                else {
                    if (pending_space) {
                        out.push_back(' ');
                        pending_space = false;
                    }
                    out.push_back(c);
                }
            }
        } else {
            if (is_unicode_punct(cp)) {
                if (config.strip_punct) emit_space();
                else {
                    if (pending_space) {
                        out.push_back(' ');
                        pending_space = false;
                    }
                    append_utf8(out, cp);
                }
            } else {
                if (pending_space) {
                    out.push_back(' ');
                    pending_space = false;
                }
                append_utf8(out, cp);
            }
        }
    }
    return out;
}

TokenStream tokenize(std::string_view text) {
    TokenStream tokens;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) tokens.emplace_back(text.substr(start, i - start));
    }
    return tokens;
}

TokenStream run_pipeline(std::string_view text, const PipelineConfig& config) {
    TokenStream tokens = tokenize(normalize(text, config));
    TokenStream out;
    out.reserve(tokens.size());
    for (auto& tok : tokens) {
        if (!config.stopwords.empty() && config.stopwords.count(tok)) continue;
        out.push_back(config.stem ? porter2_stem(tok) : std::move(tok));
    }
    return out;
}

PipelineConfig PipelineConfig::discovery() {
    PipelineConfig c;
    c.strip_numbers = false;
    c.stem = true;
    c.stopwords = default_stopwords();
    return c;
}

PipelineConfig PipelineConfig::sentiment() {
    PipelineConfig c;
    c.strip_numbers = true;
    c.stem = false; // lexicon entries are surface words
    return c;
}

const std::unordered_set<std::string>& default_stopwords() {
    static const std::unordered_set<std::string> words = {
        "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours",
        "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself",
        "it", "its", "itself", "they", "them", "their", "theirs", "themselves", "what", "which",
        "who", "whom", "this", "that", "these", "those", "am", "is", "are", "was", "were", "be",
        "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing", "would",
        "should", "could", "ought", "i'm", "you're", "he's", "she's", "it's", "we're", "they're",
        "i've", "you've", "we've", "they've", "i'd", "you'd", "he'd", "she'd", "we'd", "they'd",
        "i'll", "you'll", "he'll", "she'll", "we'll", "they'll", "isn't", "aren't", "wasn't",
        "weren't", "hasn't", "haven't", "hadn't", "doesn't", "don't", "didn't", "won't",
        "wouldn't", "shan't", "shouldn't", "can't", "cannot", "couldn't", "mustn't", "let's",
        "that's", "who's", "what's", "here's", "there's", "when's", "where's", "why's", "how's",
        "a", "an", "the", "and", "but", "if", "or", "because", "as", "until", "while", "of", "at",
        "by", "for", "with", "about", "against", "between", "into", "through", "during", "before",
        "after", "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
        "under", "again", "further", "then", "once", "here", "there", "when", "where", "why",
        "how", "all", "any", "both", "each", "few", "more", "most", "other", "some", "such", "no",
        "nor", "not", "only", "own", "same", "so", "than", "too", "very",
    };
    return words;
}

std::unordered_set<std::string> load_stopwords(std::istream& in) {
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        words.insert(line.substr(b));
    }
    return words;
}

} // namespace mailmine
