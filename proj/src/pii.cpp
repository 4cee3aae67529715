#include "mailmine/pii.hpp"

#include "mailmine/csv.hpp"
#include "mailmine/errors.hpp"
#include "mailmine/parallel.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace mailmine {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool is_alnum(char c) { return is_digit(c) || is_alpha(c); }
char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool boundary_before(std::string_view t, size_t pos) {
    return pos == 0 || !is_alnum(t[pos - 1]);
}
bool boundary_after(std::string_view t, size_t pos) {
    return pos >= t.size() || !is_alnum(t[pos]);
}

// Case-insensitive search for a plain ASCII needle.
size_t ifind(std::string_view hay, std::string_view needle, size_t from) {
    if (needle.empty() || hay.size() < needle.size()) return std::string_view::npos;
    for (size_t i = from; i + needle.size() <= hay.size(); ++i) {
        size_t j = 0;
        while (j < needle.size() && lower(hay[i + j]) == lower(needle[j])) ++j;
        if (j == needle.size()) return i;
    }
    return std::string_view::npos;
}

struct Candidate {
    size_t begin;
    size_t end;
    bool validated;
    std::string matched_override; // password values carry the value, not the span
};

using Sink = std::vector<std::pair<PiiCategory, Candidate>>;

void emit(Sink& sink, PiiCategory cat, size_t begin, size_t end, bool validated,
          std::string matched_override = {}) {
    sink.emplace_back(cat, Candidate{begin, end, validated, std::move(matched_override)});
}

// ------------------------------------------------------------------ SSN ---

bool ssn_structure_ok(std::string_view area, std::string_view group, std::string_view serial) {
    int a = (area[0] - '0') * 100 + (area[1] - '0') * 10 + (area[2] - '0');
    if (a == 0 || a == 666 || a >= 900) return false;
    if (group == "00") return false;
    if (serial == "0000") return false;
    return true;
}

void scan_ssn(std::string_view t, Sink& sink) {
    for (size_t i = 0; i < t.size(); ++i) {
        if (!is_digit(t[i]) || !boundary_before(t, i)) continue;
        if (i > 0 && t[i - 1] == '-') continue;
        size_t run = i;
        while (run < t.size() && is_digit(t[run])) ++run;
        size_t len = run - i;

        // ddd-dd-dddd / ddd dd dddd with a consistent separator
        if (len == 3 && run < t.size() && (t[run] == '-' || t[run] == ' ')) {
            char sep = t[run];
            size_t p = run + 1;
            auto digits_exact = [&](size_t count) {
                size_t q = p;
                while (q < t.size() && is_digit(t[q])) ++q;
                if (q - p != count) return false;
                p = q;
                return true;
            };
            if (digits_exact(2) && p < t.size() && t[p] == sep) {
                ++p;
                size_t serial_start = p;
                if (digits_exact(4) && boundary_after(t, p) && !(p < t.size() && t[p] == '-')) {
                    if (ssn_structure_ok(t.substr(i, 3), t.substr(i + 4, 2),
                                         t.substr(serial_start, 4)))
                        emit(sink, PiiCategory::Ssn, i, p, true);
                    i = p - 1;
                    continue;
                }
            }
        }
        // bare nine-digit run: reported but never validated (zip+4 hazard)
        if (len == 9 && boundary_after(t, run)) emit(sink, PiiCategory::Ssn, i, run, false);
        i = run - 1;
    }
}

// ---------------------------------------------------------- credit card ---

bool issuer_ok(std::string_view digits) {
    size_t n = digits.size();
    if (digits[0] == '4') return n == 13 || n == 16;                      // Visa
    if (digits[0] == '5' && digits[1] >= '1' && digits[1] <= '5') return n == 16; // MasterCard
    if (digits[0] == '3' && (digits[1] == '4' || digits[1] == '7')) return n == 15; // AMEX
    return false;
}

void scan_credit_card(std::string_view t, Sink& sink) {
    for (size_t i = 0; i < t.size(); ++i) {
        if (!is_digit(t[i]) || !boundary_before(t, i)) continue;
        if (i > 0 && (t[i - 1] == '-' || t[i - 1] == '.')) continue;
        std::string digits;
        char sep = '\0';
        size_t p = i, last_digit_end = i;
        bool mixed_sep = false;
        while (p < t.size()) {
            if (is_digit(t[p])) {
                digits.push_back(t[p]);
                last_digit_end = ++p;
            } else if ((t[p] == ' ' || t[p] == '-') && p + 1 < t.size() && is_digit(t[p + 1])) {
                if (sep == '\0') sep = t[p];
                else if (sep != t[p]) mixed_sep = true;
                ++p;
            } else {
                break;
            }
            if (digits.size() > 19) break;
        }
        if (digits.size() >= 2 && digits.size() <= 16 && !mixed_sep &&
            boundary_after(t, last_digit_end) && issuer_ok(digits)) {
            emit(sink, PiiCategory::CreditCard, i, last_digit_end, luhn_valid(digits));
        }
        i = last_digit_end > i ? last_digit_end - 1 : i;
    }
}

// ---------------------------------------------------------------- phone ---

bool nanp_lead(char c) { return c >= '2' && c <= '9'; }

// NANP forms: optional +1 / 1 prefix, parenthesised or separated or bare
// area code, exchange, four digits. Area and exchange lead with 2-9.
void scan_phone(std::string_view t, Sink& sink) {
    for (size_t i = 0; i < t.size(); ++i) {
        char c = t[i];
        if (c != '+' && c != '(' && !is_digit(c)) continue;
        if (is_digit(c) && !boundary_before(t, i)) continue;
        if (i > 0 && (t[i - 1] == '-' || t[i - 1] == '.')) continue;

        size_t p = i;
        // country prefix
        if (t[p] == '+') {
            if (p + 1 >= t.size() || t[p + 1] != '1') continue;
            p += 2;
            if (p < t.size() && (t[p] == ' ' || t[p] == '-' || t[p] == '.')) ++p;
        } else if (t[p] == '1' && p + 1 < t.size() && (t[p + 1] == ' ' || t[p + 1] == '-' ||
                                                       t[p + 1] == '.')) {
            p += 2;
        }

        auto digits_exact = [&](size_t& q, size_t count, bool lead_2_9) {
            size_t r = q;
            while (r < t.size() && is_digit(t[r])) ++r;
            if (r - q != count) return false;
            if (lead_2_9 && !nanp_lead(t[q])) return false;
            q = r;
            return true;
        };

        bool paren = false;
        char sep = '\0';
        if (p < t.size() && t[p] == '(') {
            paren = true;
            ++p;
            if (!digits_exact(p, 3, true)) continue;
            if (p >= t.size() || t[p] != ')') continue;
            ++p;
            if (p < t.size() && t[p] == ' ') ++p;
        } else {
            size_t q = p;
            // bare ten digits or separated groups
            size_t run = q;
            while (run < t.size() && is_digit(t[run])) ++run;
            if (run - q == 10) {
                if (!nanp_lead(t[q]) || !nanp_lead(t[q + 3])) continue;
                if (!boundary_after(t, run) || (run < t.size() && t[run] == '-')) continue;
                emit(sink, PiiCategory::Phone, i, run, false);
                i = run - 1;
                continue;
            }
            if (!digits_exact(p, 3, true)) continue;
            if (p >= t.size() || (t[p] != '-' && t[p] != '.' && t[p] != ' ')) continue;
            sep = t[p];
            ++p;
        }
        if (!digits_exact(p, 3, true)) continue;
        if (paren) {
            if (p < t.size() && (t[p] == '-' || t[p] == '.' || t[p] == ' ')) ++p;
            else continue;
        } else {
            if (p >= t.size() || t[p] != sep) continue;
            ++p;
        }
        size_t q = p;
        if (!digits_exact(q, 4, false)) continue;
        if (!boundary_after(t, q) || (q < t.size() && t[q] == '-')) continue;
        emit(sink, PiiCategory::Phone, i, q, false);
        i = q - 1;
    }
}

// ----------------------------------------------------------------- date ---

bool read_int(std::string_view t, size_t& p, size_t min_len, size_t max_len, int& out) {
    size_t q = p;
    int v = 0;
    while (q < t.size() && is_digit(t[q]) && q - p < max_len) {
        v = v * 10 + (t[q] - '0');
        ++q;
    }
    if (q - p < min_len || (q < t.size() && is_digit(t[q]))) return false;
    out = v;
    p = q;
    return true;
}

constexpr std::array<std::string_view, 12> kMonthNames = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

// numeric m/d/y and m/d (or m/yy), ISO y-m-d, and month-name forms
void scan_date(std::string_view t, Sink& sink) {
    for (size_t i = 0; i < t.size(); ++i) {
        char c = t[i];
        if (is_digit(c)) {
            if (!boundary_before(t, i) || (i > 0 && (t[i - 1] == '/' || t[i - 1] == '-')))
                continue;
            size_t p = i;
            int a = 0;
            // ISO y-m-d
            if (read_int(t, p, 4, 4, a) && a >= 1900 && a <= 2099 && p < t.size() &&
                t[p] == '-') {
                size_t q = p + 1;
                int mo = 0, dy = 0;
                if (read_int(t, q, 1, 2, mo) && mo >= 1 && mo <= 12 && q < t.size() &&
                    t[q] == '-') {
                    ++q;
                    if (read_int(t, q, 1, 2, dy) && dy >= 1 && dy <= 31 &&
                        boundary_after(t, q) && !(q < t.size() && (t[q] == '-' || t[q] == '/'))) {
                        emit(sink, PiiCategory::Date, i, q, false);
                        i = q - 1;
                        continue;
                    }
                }
            }
            // m/d/y, m/d, m/yy, m/yyyy
            p = i;
            if (!read_int(t, p, 1, 2, a) || a < 1 || a > 12) continue;
            if (p >= t.size() || t[p] != '/') continue;
            size_t q = p + 1;
            int b = 0;
            size_t b_start = q;
            if (!read_int(t, q, 1, 4, b)) continue;
            size_t b_len = q - b_start;
            size_t end = q;
            // second part: a day (1..31), a two-digit year (00..99), or a
            // four-digit year
            bool two_part_ok = (b_len == 2 && b <= 99) || (b_len == 1 && b >= 1) ||
                               (b_len == 4 && b >= 1900 && b <= 2099);
            if (q < t.size() && t[q] == '/') {
                int y = 0;
                size_t r = q + 1, y_start = r;
                if ((b_len <= 2 && b >= 1 && b <= 31) && read_int(t, r, 1, 4, y) &&
                    (r - y_start == 2 || (r - y_start == 4 && y >= 1000 && y <= 2999)) &&
                    boundary_after(t, r) && !(r < t.size() && (t[r] == '/' || t[r] == '-'))) {
                    emit(sink, PiiCategory::Date, i, r, false);
                    i = r - 1;
                }
                continue;
            }
            if (two_part_ok && boundary_after(t, end) &&
                !(end < t.size() && (t[end] == '/' || t[end] == '-'))) {
                emit(sink, PiiCategory::Date, i, end, false);
                i = end - 1;
            }
        } else if (is_alpha(c) && boundary_before(t, i)) {
            // Month-name forms: "May 2, 2001", "May 2001", "2 May 2001" is
            // caught from the digit (handled below via lookbehind-free pass).
            size_t w = i;
            while (w < t.size() && is_alpha(t[w])) ++w;
            size_t wlen = w - i;
            if (wlen < 3 || wlen > 9) continue;
            int month = 0;
            for (size_t m = 0; m < kMonthNames.size(); ++m) {
                const auto& name = kMonthNames[m];
                if (wlen == 3 || wlen == name.size()) {
                    size_t j = 0;
                    while (j < wlen && lower(t[i + j]) == name[j]) ++j;
                    if (j == wlen) {
                        month = static_cast<int>(m) + 1;
                        break;
                    }
                }
            }
            if (month == 0) {
                i = w - 1;
                continue;
            }
            size_t p = w;
            if (p < t.size() && t[p] == ' ') ++p;
            else {
                i = w - 1;
                continue;
            }
            int day = 0, year = 0;
            size_t q = p;
            if (read_int(t, q, 1, 2, day) && day >= 1 && day <= 31) {
                size_t end = q;
                size_t r = q;
                if (r < t.size() && t[r] == ',') ++r;
                if (r < t.size() && t[r] == ' ') {
                    ++r;
                    if (read_int(t, r, 4, 4, year) && year >= 1000 && year <= 2999 &&
                        boundary_after(t, r)) {
                        emit(sink, PiiCategory::Date, i, r, false);
                        i = r - 1;
                        continue;
                    }
                }
                if (boundary_after(t, end)) {
                    emit(sink, PiiCategory::Date, i, end, false);
                    i = end - 1;
                    continue;
                }
            } else if (read_int(t, q, 4, 4, year) && year >= 1000 && year <= 2999 &&
                       boundary_after(t, q)) {
                emit(sink, PiiCategory::Date, i, q, false); // "May 2001"
                i = q - 1;
                continue;
            }
            i = w - 1;
        }
    }
    // "2 May 2001" / "2 May"
    for (size_t i = 0; i < t.size(); ++i) {
        if (!is_digit(t[i]) || !boundary_before(t, i)) continue;
        size_t p = i;
        int day = 0;
        if (!read_int(t, p, 1, 2, day) || day < 1 || day > 31) continue;
        if (p >= t.size() || t[p] != ' ') continue;
        size_t w = p + 1, wend = w;
        while (wend < t.size() && is_alpha(t[wend])) ++wend;
        size_t wlen = wend - w;
        if (wlen < 3 || wlen > 9) continue;
        int month = 0;
        for (size_t m = 0; m < kMonthNames.size(); ++m) {
            const auto& name = kMonthNames[m];
            if (wlen == 3 || wlen == name.size()) {
                size_t j = 0;
                while (j < wlen && lower(t[w + j]) == name[j]) ++j;
                if (j == wlen) {
                    month = static_cast<int>(m) + 1;
                    break;
                }
            }
        }
        if (month == 0) continue;
        size_t end = wend;
        size_t r = wend;
        if (r + 1 < t.size() && t[r] == ' ' && is_digit(t[r + 1])) {
            ++r;
            int year = 0;
            if (read_int(t, r, 4, 4, year) && year >= 1000 && year <= 2999 &&
                boundary_after(t, r)) {
                emit(sink, PiiCategory::Date, i, r, false);
                continue;
            }
        }
        emit(sink, PiiCategory::Date, i, end, false);
    }
}

// ----------------------------------------------------------------- IBAN ---

struct IbanLength {
    char cc[3];
    uint8_t len;
};

constexpr IbanLength kIbanLengths[] = {
    {"AD", 24}, {"AE", 23}, {"AL", 28}, {"AT", 20}, {"AZ", 28}, {"BA", 20}, {"BE", 16},
    {"BG", 22}, {"BH", 22}, {"BR", 29}, {"BY", 28}, {"CH", 21}, {"CR", 22}, {"CY", 28},
    {"CZ", 24}, {"DE", 22}, {"DK", 18}, {"DO", 28}, {"EE", 20}, {"EG", 29}, {"ES", 24},
    {"FI", 18}, {"FO", 18}, {"FR", 27}, {"GB", 22}, {"GE", 22}, {"GI", 23}, {"GL", 18},
    {"GR", 27}, {"GT", 28}, {"HR", 21}, {"HU", 28}, {"IE", 22}, {"IL", 23}, {"IQ", 23},
    {"IS", 26}, {"IT", 27}, {"JO", 30}, {"KW", 30}, {"KZ", 20}, {"LB", 28}, {"LC", 32},
    {"LI", 21}, {"LT", 20}, {"LU", 20}, {"LV", 21}, {"MC", 27}, {"MD", 24}, {"ME", 22},
    {"MK", 19}, {"MR", 27}, {"MT", 31}, {"MU", 30}, {"NL", 18}, {"NO", 15}, {"PK", 24},
    {"PL", 28}, {"PS", 29}, {"PT", 25}, {"QA", 29}, {"RO", 24}, {"RS", 22}, {"SA", 24},
    {"SE", 24}, {"SI", 19}, {"SK", 24}, {"SM", 27}, {"TN", 24}, {"TR", 26}, {"UA", 29},
    {"VG", 24}, {"XK", 20},
};

int iban_country_length(char a, char b) {
    for (const auto& e : kIbanLengths)
        if (e.cc[0] == a && e.cc[1] == b) return e.len;
    return -1;
}

void scan_iban(std::string_view t, Sink& sink) {
    for (size_t i = 0; i + 15 <= t.size(); ++i) {
        if (!(t[i] >= 'A' && t[i] <= 'Z') || !boundary_before(t, i)) continue;
        size_t run = i;
        while (run < t.size() && ((t[run] >= 'A' && t[run] <= 'Z') || is_digit(t[run]))) ++run;
        size_t len = run - i;
        if (len >= 15 && len <= 34 && iban_valid(t.substr(i, len)))
            emit(sink, PiiCategory::Iban, i, run, true);
        i = run; // skip the whole token either way
    }
}

// ------------------------------------------------------ password in URL ---

void scan_password_in_url(std::string_view t, Sink& sink) {
    size_t pos = 0;
    while (true) {
        size_t at = ifind(t, "http", pos);
        if (at == std::string_view::npos) return;
        size_t scheme_end = at + 4;
        if (scheme_end < t.size() && (t[scheme_end] == 's' || t[scheme_end] == 'S')) ++scheme_end;
        if (t.substr(scheme_end, 3) != "://") {
            pos = at + 4;
            continue;
        }
        size_t url_end = scheme_end + 3;
        while (url_end < t.size() && !std::isspace(static_cast<unsigned char>(t[url_end])) &&
               t[url_end] != '"' && t[url_end] != '\'' && t[url_end] != '<' && t[url_end] != '>')
            ++url_end;
        std::string_view url = t.substr(at, url_end - at);
        size_t qmark = url.find('?');
        if (qmark != std::string_view::npos) {
            size_t param_start = qmark + 1;
            while (param_start < url.size()) {
                size_t param_end = url.find_first_of("&;", param_start);
                if (param_end == std::string_view::npos) param_end = url.size();
                std::string_view param = url.substr(param_start, param_end - param_start);
                size_t eq = param.find('=');
                if (eq != std::string_view::npos) {
                    std::string key;
                    for (size_t k = 0; k < eq; ++k) key.push_back(lower(param[k]));
                    if (key == "password" || key == "passwd" || key == "pwd") {
                        std::string_view value = param.substr(eq + 1);
                        if (!value.empty()) {
                            size_t vbegin = at + param_start + eq + 1;
                            emit(sink, PiiCategory::PasswordInUrl, vbegin,
                                 vbegin + value.size(), false, std::string(value));
                        }
                    }
                }
                param_start = param_end + 1;
            }
        }
        pos = url_end;
    }
}

// ------------------------------------------- keyword-gated token scans ----

std::vector<std::pair<size_t, size_t>> keyword_spans(std::string_view t,
                                                     std::string_view keyword) {
    std::vector<std::pair<size_t, size_t>> spans;
    size_t pos = 0;
    while (true) {
        size_t at = ifind(t, keyword, pos);
        if (at == std::string_view::npos) break;
        spans.emplace_back(at, at + keyword.size());
        pos = at + keyword.size();
    }
    return spans;
}

bool near_keyword(const std::vector<std::pair<size_t, size_t>>& keywords, size_t begin,
                  size_t end, size_t window) {
    for (const auto& [kb, ke] : keywords) {
        if (end + window >= kb && begin <= ke + window) return true;
    }
    return false;
}

void scan_passport(std::string_view t, Sink& sink) {
    auto keywords = keyword_spans(t, "passport");
    if (keywords.empty()) return;
    for (size_t i = 0; i < t.size(); ++i) {
        if (!is_alnum(t[i]) || !boundary_before(t, i)) continue;
        size_t run = i;
        bool has_digit = false;
        while (run < t.size() && is_alnum(t[run])) {
            if (is_digit(t[run])) has_digit = true;
            ++run;
        }
        if (run - i == 9 && has_digit && near_keyword(keywords, i, run, 40))
            emit(sink, PiiCategory::Passport, i, run, false);
        i = run;
    }
}

struct DlCompiled {
    std::string pattern;
};

bool dl_token_matches(std::string_view token, const std::string& pattern) {
    if (token.size() != pattern.size()) return false;
    for (size_t i = 0; i < token.size(); ++i) {
        char p = pattern[i], c = token[i];
        if (p == 'A') {
            if (!(c >= 'A' && c <= 'Z')) return false;
        } else if (p == '9') {
            if (!is_digit(c)) return false;
        } else if (p != c) {
            return false;
        }
    }
    return true;
}

void scan_drivers_license(std::string_view t, const DlFormatTable& table, Sink& sink) {
    if (table.entries.empty()) return;
    auto keywords = keyword_spans(t, "license");
    {
        // standalone uppercase "DL" tokens also open the gate
        for (size_t i = 0; i + 2 <= t.size(); ++i) {
            if (t[i] == 'D' && t[i + 1] == 'L' && boundary_before(t, i) &&
                boundary_after(t, i + 2))
                keywords.emplace_back(i, i + 2);
        }
    }
    if (keywords.empty()) return;
    std::sort(keywords.begin(), keywords.end());

    for (size_t i = 0; i < t.size(); ++i) {
        if (!is_alnum(t[i]) || !boundary_before(t, i)) continue;
        size_t run = i;
        while (run < t.size() && is_alnum(t[run])) ++run;
        std::string_view token = t.substr(i, run - i);
        if (near_keyword(keywords, i, run, 40)) {
            for (const auto& e : table.entries) {
                if (dl_token_matches(token, e.pattern)) {
                    emit(sink, PiiCategory::DriversLicense, i, run, false);
                    break; // states sharing a pattern report once
                }
            }
        }
        i = run;
    }
}

// --------------------------------------------- optional email/IP scans ----

void scan_email(std::string_view t, Sink& sink) {
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] != '@') continue;
        size_t b = i;
        auto local_char = [](char c) {
            return is_alnum(c) || c == '.' || c == '_' || c == '%' || c == '+' || c == '-';
        };
        while (b > 0 && local_char(t[b - 1])) --b;
        if (b == i) continue;
        size_t e = i + 1;
        auto domain_char = [](char c) { return is_alnum(c) || c == '.' || c == '-'; };
        while (e < t.size() && domain_char(t[e])) ++e;
        while (e > i + 1 && (t[e - 1] == '.' || t[e - 1] == '-')) --e;
        std::string_view domain = t.substr(i + 1, e - i - 1);
        size_t dot = domain.rfind('.');
        if (dot == std::string_view::npos || domain.size() - dot - 1 < 2) continue;
        bool tld_alpha = true;
        for (size_t k = dot + 1; k < domain.size(); ++k)
            if (!is_alpha(domain[k])) tld_alpha = false;
        if (tld_alpha) emit(sink, PiiCategory::Email, b, e, false);
        i = e;
    }
}

void scan_ip(std::string_view t, Sink& sink) {
    for (size_t i = 0; i < t.size(); ++i) {
        if (!is_digit(t[i]) || !boundary_before(t, i)) continue;
        if (i > 0 && t[i - 1] == '.') continue;
        size_t p = i;
        int octets = 0;
        bool ok = true;
        while (octets < 4) {
            int v = 0;
            if (!read_int(t, p, 1, 3, v) || v > 255) {
                ok = false;
                break;
            }
            ++octets;
            if (octets < 4) {
                if (p < t.size() && t[p] == '.') ++p;
                else {
                    ok = false;
                    break;
                }
            }
        }
        if (ok && boundary_after(t, p) && !(p < t.size() && t[p] == '.'))
            emit(sink, PiiCategory::IpAddress, i, p, false);
    }
}

std::string make_context(std::string_view t, size_t begin, size_t end) {
    size_t cb = begin >= 30 ? begin - 30 : 0;
    size_t ce = std::min(t.size(), end + 30);
    std::string ctx(t.substr(cb, ce - cb));
    for (char& c : ctx)
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    if (ctx.size() > 80) ctx.resize(80);
    return ctx;
}

} // namespace

const char* category_name(PiiCategory cat) {
    switch (cat) {
        case PiiCategory::Ssn: return "ssn";
        case PiiCategory::CreditCard: return "credit_card";
        case PiiCategory::PasswordInUrl: return "password_in_url";
        case PiiCategory::Passport: return "passport";
        case PiiCategory::DriversLicense: return "drivers_license";
        case PiiCategory::Iban: return "iban";
        case PiiCategory::Date: return "date";
        case PiiCategory::Phone: return "phone";
        case PiiCategory::Email: return "email";
        case PiiCategory::IpAddress: return "ip_address";
    }
    return "unknown";
}

DlFormatTable DlFormatTable::load(std::istream& in) {
    DlFormatTable table;
    CsvReader reader(in);
    std::vector<std::string> row;
    if (!reader.read_record(row)) throw InputError("DL format table: empty file");
    int c_state = find_column(row, "state");
    int c_pattern = find_column(row, "pattern");
    if (c_state < 0 || c_pattern < 0)
        throw InputError("DL format table: header must name state and pattern");
    while (reader.read_record(row)) {
        if (static_cast<int>(row.size()) <= std::max(c_state, c_pattern)) continue;
        const std::string& state = row[static_cast<size_t>(c_state)];
        const std::string& pattern = row[static_cast<size_t>(c_pattern)];
        if (state.empty() || pattern.empty())
            throw InputError("DL format table: empty state or pattern");
        for (const auto& e : table.entries)
            if (e.state == state) throw InputError("DL format table: duplicate state " + state);
        table.entries.push_back(Entry{state, pattern});
    }
    return table;
}

bool luhn_valid(std::string_view digits) {
    if (digits.size() < 13 || digits.size() > 19) return false;
    int sum = 0;
    bool twice = false;
    for (size_t i = digits.size(); i-- > 0;) {
        char c = digits[i];
        if (!is_digit(c)) return false;
        int d = c - '0';
        if (twice) {
            d *= 2;
            if (d > 9) d -= 9;
        }
        sum += d;
        twice = !twice;
    }
    return sum % 10 == 0;
}

bool iban_valid(std::string_view s) {
    if (s.size() < 15 || s.size() > 34) return false;
    if (!(s[0] >= 'A' && s[0] <= 'Z') || !(s[1] >= 'A' && s[1] <= 'Z')) return false;
    if (!is_digit(s[2]) || !is_digit(s[3])) return false;
    int expected = iban_country_length(s[0], s[1]);
    if (expected < 0 || static_cast<size_t>(expected) != s.size()) return false;
    for (size_t i = 4; i < s.size(); ++i)
        if (!is_digit(s[i]) && !(s[i] >= 'A' && s[i] <= 'Z')) return false;

    // Rearranged mod-97: BBAN + country + check digits, letters as 10..35.
    int rem = 0;
    auto feed = [&rem](char c) {
        if (c >= 'A' && c <= 'Z') {
            int v = c - 'A' + 10;
            rem = (rem * 10 + v / 10) % 97;
            rem = (rem * 10 + v % 10) % 97;
        } else {
            rem = (rem * 10 + (c - '0')) % 97;
        }
    };
    for (size_t i = 4; i < s.size(); ++i) feed(s[i]);
    for (size_t i = 0; i < 4; ++i) feed(s[i]);
    return rem == 1;
}

std::vector<PiiFinding> scan_document(std::string_view text, const DetectorConfig& config,
                                      std::string_view doc_id) {
    Sink sink;
    if (config.ssn) scan_ssn(text, sink);
    if (config.credit_card) scan_credit_card(text, sink);
    if (config.password_in_url) scan_password_in_url(text, sink);
    if (config.passport) scan_passport(text, sink);
    if (config.drivers_license) scan_drivers_license(text, config.dl_table, sink);
    if (config.iban) scan_iban(text, sink);
    if (config.date) scan_date(text, sink);
    if (config.phone) scan_phone(text, sink);
    if (config.email) scan_email(text, sink);
    if (config.ip_address) scan_ip(text, sink);

    // Longest-leftmost wins inside a category; categories never suppress
    // each other.
    std::sort(sink.begin(), sink.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        if (a.second.begin != b.second.begin) return a.second.begin < b.second.begin;
        return a.second.end > b.second.end;
    });
    std::vector<PiiFinding> findings;
    size_t i = 0;
    while (i < sink.size()) {
        PiiCategory cat = sink[i].first;
        size_t kept_end = 0;
        for (; i < sink.size() && sink[i].first == cat; ++i) {
            const Candidate& c = sink[i].second;
            if (!findings.empty() && findings.back().category == cat && c.begin < kept_end)
                continue;
            PiiFinding f;
            f.category = cat;
            f.begin = c.begin;
            f.end = c.end;
            f.validated = c.validated;
            f.matched = c.matched_override.empty() ? std::string(text.substr(c.begin, c.end - c.begin))
                                                   : c.matched_override;
            f.context = make_context(text, c.begin, c.end);
            f.doc_id = std::string(doc_id);
            kept_end = c.end;
            findings.push_back(std::move(f));
        }
    }
    std::sort(findings.begin(), findings.end(), [](const PiiFinding& a, const PiiFinding& b) {
        if (a.begin != b.begin) return a.begin < b.begin;
        if (a.end != b.end) return a.end < b.end;
        return static_cast<int>(a.category) < static_cast<int>(b.category);
    });
    return findings;
}

PiiReport scan_corpus(const Corpus& corpus, const DetectorConfig& config, bool keep_findings,
                      unsigned jobs) {
    PiiReport report;
    auto enable = [&](bool on, PiiCategory cat) {
        if (on) report.counts[cat] = 0;
    };
    enable(config.ssn, PiiCategory::Ssn);
    enable(config.credit_card, PiiCategory::CreditCard);
    enable(config.password_in_url, PiiCategory::PasswordInUrl);
    enable(config.passport, PiiCategory::Passport);
    enable(config.drivers_license, PiiCategory::DriversLicense);
    enable(config.iban, PiiCategory::Iban);
    enable(config.date, PiiCategory::Date);
    enable(config.phone, PiiCategory::Phone);
    enable(config.email, PiiCategory::Email);
    enable(config.ip_address, PiiCategory::IpAddress);

    struct Partial {
        std::map<PiiCategory, int64_t> counts;
        std::vector<PiiFinding> findings;
    };
    std::vector<Partial> partials(shard_bounds(corpus.docs.size(), jobs).size());

    parallel_shards(corpus.docs.size(), jobs, [&](size_t shard, size_t begin, size_t end) {
        Partial& part = partials[shard];
        for (size_t d = begin; d < end; ++d) {
            const EmailDoc& doc = corpus.docs[d];
            std::string text = doc.subject + "\n" + doc.body;
            auto found = scan_document(text, config, doc.id);
            for (auto& f : found) {
                part.counts[f.category]++;
                if (keep_findings) part.findings.push_back(std::move(f));
            }
        }
    });

    for (auto& part : partials) {
        for (const auto& [cat, n] : part.counts) report.counts[cat] += n;
        if (keep_findings)
            report.findings.insert(report.findings.end(),
                                   std::make_move_iterator(part.findings.begin()),
                                   std::make_move_iterator(part.findings.end()));
    }
    for (const auto& [cat, n] : report.counts) report.grand_total += n;
    for (const auto& [cat, n] : report.counts)
        report.percentages[cat] =
            report.grand_total > 0
                ? static_cast<double>(n) / static_cast<double>(report.grand_total)
                : 0.0;
    return report;
}

std::string redact(std::string_view text, std::vector<PiiFinding> findings, RedactStyle style) {
    if (findings.empty()) return std::string(text);
    std::sort(findings.begin(), findings.end(), [](const PiiFinding& a, const PiiFinding& b) {
        if (a.begin != b.begin) return a.begin < b.begin;
        return a.end > b.end;
    });
    // merge overlaps; the widest-leftmost span decides the category
    struct Span {
        size_t begin, end;
        PiiCategory cat;
    };
    std::vector<Span> spans;
    for (const auto& f : findings) {
        if (f.end > text.size() || f.begin > f.end)
            throw InputError("redact: finding span outside the text");
        if (!spans.empty() && f.begin < spans.back().end) {
            spans.back().end = std::max(spans.back().end, f.end);
        } else {
            spans.push_back(Span{f.begin, f.end, f.category});
        }
    }

    std::string out;
    out.reserve(text.size());
    size_t pos = 0;
    for (const auto& span : spans) {
        out.append(text.substr(pos, span.begin - pos));
        std::string_view matched = text.substr(span.begin, span.end - span.begin);
        if (style == RedactStyle::Label) {
            std::string label = category_name(span.cat);
            for (char& c : label) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            out += "[" + label + "]";
        } else {
            bool keep_last4 =
                span.cat == PiiCategory::CreditCard || span.cat == PiiCategory::Ssn;
            size_t alnum_total = 0;
            for (char c : matched)
                if (is_alnum(c)) ++alnum_total;
            size_t keep_from = keep_last4 && alnum_total > 4 ? alnum_total - 4 : alnum_total;
            if (!keep_last4) keep_from = alnum_total; // mask everything
            size_t seen = 0;
            for (char c : matched) {
                if (keep_last4) {
                    if (is_alnum(c)) {
                        out.push_back(seen < keep_from ? 'X' : c);
                        ++seen;
                    } else {
                        out.push_back(c);
                    }
                } else {
                    out.push_back('X');
                }
            }
        }
        pos = span.end;
    }
    out.append(text.substr(pos));
    return out;
}

} // namespace mailmine
