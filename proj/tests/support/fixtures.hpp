#pragma once

// Shared fixture generators and independent oracles for the test suites.
// Everything here is deliberately written without reusing the library's
// implementation paths it is meant to check.

#include "mailmine/learn.hpp"
#include "mailmine/rng.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fixtures {

using mailmine::Rng;

// ------------------------------------------------------------- oracles ----

// Luhn, written digit-by-digit from the left for independence from the
// right-to-left implementation in the library.
inline bool luhn_oracle(const std::string& digits) {
    if (digits.size() < 13 || digits.size() > 19) return false;
    int sum = 0;
    bool odd_length = digits.size() % 2 == 1;
    for (size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < '0' || digits[i] > '9') return false;
        int d = digits[i] - '0';
        bool double_it = odd_length ? (i % 2 == 1) : (i % 2 == 0);
        if (double_it) {
            d *= 2;
            if (d > 9) d -= 9;
        }
        sum += d;
    }
    return sum % 10 == 0;
}

// Mod-97 via an explicit digit-string expansion and long division.
inline int iban_mod97_oracle(const std::string& iban) {
    std::string rearranged = iban.substr(4) + iban.substr(0, 4);
    std::string digits;
    for (char c : rearranged) {
        if (c >= 'A' && c <= 'Z') digits += std::to_string(c - 'A' + 10);
        else digits.push_back(c);
    }
    int rem = 0;
    for (char c : digits) rem = (rem * 10 + (c - '0')) % 97;
    return rem;
}

// --------------------------------------------------------- PII fixture ----

// Lorem pool: pure alphabetic, no month names, no detector keywords.
inline const std::vector<std::string>& lorem_pool() {
    static const std::vector<std::string> words = {
        "lorem",     "ipsum",    "dolor",   "sit",      "amet",      "consectetur",
        "adipiscing","elit",     "sed",     "eiusmod",  "tempor",    "incididunt",
        "labore",    "dolore",   "magna",   "aliqua",   "enim",      "minim",
        "veniam",    "quis",     "nostrud", "exercitation", "ullamco", "laboris",
        "nisi",      "aliquip",  "commodo", "consequat","duis",      "aute",
        "irure",     "reprehenderit", "voluptate", "velit", "esse",  "cillum",
        "fugiat",    "nulla",    "pariatur","excepteur","sint",      "occaecat",
        "cupidatat", "proident", "sunt",    "culpa",    "officia",   "deserunt",
        "mollit",    "anim",     "laborum",
    };
    return words;
}

inline std::string lorem(Rng& rng, size_t count) {
    const auto& pool = lorem_pool();
    std::string out;
    for (size_t i = 0; i < count; ++i) {
        if (!out.empty()) out += " ";
        out += pool[static_cast<size_t>(rng.uniform_index(pool.size()))];
    }
    return out;
}

inline std::string random_digits(Rng& rng, size_t count) {
    std::string out;
    for (size_t i = 0; i < count; ++i)
        out.push_back(static_cast<char>('0' + rng.uniform_index(10)));
    return out;
}

// Valid payment-card number: random issuer shape plus a Luhn check digit.
inline std::string make_card(Rng& rng) {
    std::string digits;
    switch (rng.uniform_index(4)) {
        case 0: digits = "4" + random_digits(rng, 14); break;        // Visa 16
        case 1: digits = "4" + random_digits(rng, 11); break;        // Visa 13
        case 2: digits = "5" + std::to_string(1 + rng.uniform_index(5)) +
                         random_digits(rng, 13);
                break;                                               // MasterCard 16
        default: digits = (rng.uniform_index(2) ? "34" : "37") + random_digits(rng, 12);
    }
    digits.push_back('0');
    for (int check = 0; check <= 9; ++check) {
        digits.back() = static_cast<char>('0' + check);
        if (luhn_oracle(digits)) break;
    }
    return digits;
}

inline std::string group4(const std::string& digits, char sep) {
    std::string out;
    for (size_t i = 0; i < digits.size(); ++i) {
        if (i > 0 && i % 4 == 0) out.push_back(sep);
        out.push_back(digits[i]);
    }
    return out;
}

// Valid IBAN for a handful of registered countries.
inline std::string make_iban(Rng& rng) {
    struct Country {
        const char* code;
        size_t length;
    };
    static const Country countries[] = {
        {"GB", 22}, {"DE", 22}, {"FR", 27}, {"NL", 18}, {"ES", 24},
    };
    const Country& c = countries[rng.uniform_index(5)];
    std::string bban;
    for (size_t i = 0; i < 4; ++i)
        bban.push_back(static_cast<char>('A' + rng.uniform_index(26)));
    bban += random_digits(rng, c.length - 8); // 2 cc + 2 check + 4 letters
    // choose check digits so the rearranged number is 1 mod 97
    std::string iban = std::string(c.code) + "00" + bban;
    int rem = iban_mod97_oracle(iban);
    int check = 98 - rem;
    iban[2] = static_cast<char>('0' + check / 10);
    iban[3] = static_cast<char>('0' + check % 10);
    return iban;
}

inline std::string make_ssn(Rng& rng) {
    int area = 0;
    do {
        area = 100 + static_cast<int>(rng.uniform_index(799));
    } while (area == 666);
    int group = 1 + static_cast<int>(rng.uniform_index(99));
    int serial = 1 + static_cast<int>(rng.uniform_index(9999));
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03d-%02d-%04d", area, group, serial);
    return buf;
}

inline std::string make_phone(Rng& rng) {
    int area = 200 + static_cast<int>(rng.uniform_index(700));  // 200..899
    int exch = 200 + static_cast<int>(rng.uniform_index(700));
    int last = static_cast<int>(rng.uniform_index(10000));
    char buf[32];
    switch (rng.uniform_index(4)) {
        case 0: std::snprintf(buf, sizeof buf, "(%03d) %03d-%04d", area, exch, last); break;
        case 1: std::snprintf(buf, sizeof buf, "%03d-%03d-%04d", area, exch, last); break;
        case 2: std::snprintf(buf, sizeof buf, "%03d.%03d.%04d", area, exch, last); break;
        default: std::snprintf(buf, sizeof buf, "+1 %03d %03d %04d", area, exch, last); break;
    }
    return buf;
}

inline std::string make_date_text(Rng& rng) {
    int month = 1 + static_cast<int>(rng.uniform_index(12));
    int day = 1 + static_cast<int>(rng.uniform_index(28));
    int year = 1999 + static_cast<int>(rng.uniform_index(4));
    char buf[40];
    switch (rng.uniform_index(3)) {
        case 0: std::snprintf(buf, sizeof buf, "%d/%d/%04d", month, day, year); break;
        case 1: std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day); break;
        default: std::snprintf(buf, sizeof buf, "%02d/%02d", month, year % 100); break;
    }
    return buf;
}

inline std::string make_password_url(Rng& rng) {
    std::string value;
    for (size_t i = 0; i < 6 + rng.uniform_index(4); ++i)
        value.push_back(static_cast<char>('a' + rng.uniform_index(26)));
    value.push_back(static_cast<char>('0' + rng.uniform_index(10)));
    return "http://mail.example.com/account?userid=" + random_digits(rng, 4) +
           "&password=" + value;
}

inline std::string make_passport(Rng& rng) {
    // letter + 8 digits: never collides with the bare-SSN digit scan
    std::string value;
    value.push_back(static_cast<char>('A' + rng.uniform_index(26)));
    value += random_digits(rng, 8);
    return "passport " + value;
}

inline std::string make_dl(Rng& rng) {
    // California shape A9999999, letter-led to stay clear of bare SSNs
    std::string value;
    value.push_back(static_cast<char>('A' + rng.uniform_index(26)));
    value += random_digits(rng, 7);
    return "license " + value;
}

struct PiiFixture {
    std::string corpus_csv;
    std::map<std::string, int64_t> planted; // category name -> count
};

// One planted item per document, padded with digit-free lorem so detector
// windows never straddle two plants.
inline PiiFixture make_pii_fixture(size_t per_category, uint64_t seed) {
    Rng rng(seed);
    PiiFixture fx;
    fx.corpus_csv = "id,date,sender,recipients,subject,body\n";
    struct Maker {
        const char* category;
        std::string (*make)(Rng&);
    };
    static const Maker makers[] = {
        {"ssn", [](Rng& r) { return make_ssn(r); }},
        {"credit_card",
         [](Rng& r) {
             std::string digits = make_card(r);
             switch (r.uniform_index(3)) {
                 case 0: return digits;
                 case 1: return group4(digits, ' ');
                 default: return group4(digits, '-');
             }
         }},
        {"password_in_url", [](Rng& r) { return make_password_url(r); }},
        {"passport", [](Rng& r) { return make_passport(r); }},
        {"drivers_license", [](Rng& r) { return make_dl(r); }},
        {"iban", [](Rng& r) { return make_iban(r); }},
        {"date", [](Rng& r) { return make_date_text(r); }},
        {"phone", [](Rng& r) { return make_phone(r); }},
    };
    size_t doc = 0;
    for (const auto& maker : makers) {
        for (size_t i = 0; i < per_category; ++i) {
            std::string body = lorem(rng, 8 + rng.uniform_index(7)) + " " + maker.make(rng) +
                               " " + lorem(rng, 8 + rng.uniform_index(7));
            int day = 1 + static_cast<int>(doc % 28);
            char date[32];
            std::snprintf(date, sizeof date, "2001-03-%02dT0%d:00:00Z", day,
                          static_cast<int>(doc % 10));
            fx.corpus_csv += "doc-" + std::to_string(doc) + "," + date + ",user" +
                             std::to_string(doc % 17) + "@example.com,peer@example.com," +
                             lorem(rng, 3) + ",\"" + body + "\"\n";
            fx.planted[maker.category]++;
            ++doc;
        }
    }
    return fx;
}

// --------------------------------------------- responsive-corpus fixture --

// 200 docs, 30 responsive ones carrying marker stems; markers never appear
// in the negative class.
inline std::string make_responsive_corpus(uint64_t seed) {
    Rng rng(seed);
    const std::vector<std::string> markers = {"california", "demand", "bid"};
    std::string csv = "id,date,sender,recipients,subject,body,responsive\n";
    for (size_t d = 0; d < 200; ++d) {
        bool positive = d % 20 < 3; // 30 of 200
        std::string body = lorem(rng, 20 + rng.uniform_index(10));
        if (positive) {
            for (const auto& marker : markers) {
                size_t copies = 1 + rng.uniform_index(3);
                for (size_t k = 0; k < copies; ++k) body += " " + marker;
            }
        }
        char date[32];
        std::snprintf(date, sizeof date, "2000-%02d-%02d", 1 + static_cast<int>(d / 28) % 12,
                      1 + static_cast<int>(d % 28));
        csv += "m" + std::to_string(d) + "," + date + ",sender" + std::to_string(d % 23) +
               "@example.com,peer@example.com," + lorem(rng, 2) + ",\"" + body + "\"," +
               (positive ? "1" : "0") + "\n";
    }
    return csv;
}

// ------------------------------------------------ insider-pay fixtures ----

// 145 rows shaped to reproduce the published single-split error matrix:
// 116 TN, 11 FP, 8 FN, 10 TP against bonus >= 1,170,000.
inline std::string make_fig5_financials(uint64_t seed) {
    Rng rng(seed);
    std::string csv = "person,poi,salary,bonus,exercised_stock_options\n";
    size_t row = 0;
    auto add = [&](bool poi, double bonus_lo, double bonus_hi, size_t count) {
        for (size_t i = 0; i < count; ++i) {
            double bonus = bonus_lo + rng.uniform_real() * (bonus_hi - bonus_lo);
            double salary = 80000 + rng.uniform_real() * 900000;
            double options = rng.uniform_real() * 5e6;
            csv += "person" + std::to_string(row++) + "," + (poi ? "1" : "0") + "," +
                   std::to_string(static_cast<long long>(salary)) + "," +
                   std::to_string(static_cast<long long>(bonus)) + "," +
                   std::to_string(static_cast<long long>(options)) + "\n";
        }
    };
    add(false, 0, 1000000, 116);       // predicted not-POI, actual not-POI
    add(false, 1200000, 2500000, 11);  // predicted POI, actual not-POI
    add(true, 100000, 900000, 8);      // predicted not-POI, actual POI
    add(true, 1300000, 3000000, 10);   // predicted POI, actual POI
    return csv;
}

// 145 rows x 23 numeric columns with roughly 45% of cells blank.
inline std::string make_sparse_financials(uint64_t seed) {
    Rng rng(seed);
    std::string csv = "person,poi";
    for (int c = 0; c < 23; ++c) csv += ",col" + std::to_string(c);
    csv += "\n";
    for (int r = 0; r < 145; ++r) {
        csv += "person" + std::to_string(r) + "," + (r % 8 == 0 ? "1" : "0");
        for (int c = 0; c < 23; ++c) {
            if (rng.uniform_real() < 0.45) csv += ",";
            else csv += "," + std::to_string(static_cast<long long>(rng.uniform_real() * 1e6));
        }
        csv += "\n";
    }
    return csv;
}

// --------------------------------------------------- depth-2 CART oracle --

struct OracleSplit {
    int feature = -1; // -1 = leaf
    double threshold = 0.0;
};

struct OracleTree {
    OracleSplit root;
    OracleSplit left;  // applies when root splits
    OracleSplit right;
    double total_gini = 0.0; // sum over leaves of n_leaf * gini(leaf)
};

inline double oracle_gini(int64_t c0, int64_t c1) {
    int64_t n = c0 + c1;
    if (n == 0) return 0.0;
    double p0 = double(c0) / double(n), p1 = double(c1) / double(n);
    return 1.0 - p0 * p0 - p1 * p1;
}

inline std::vector<double> oracle_thresholds(const mailmine::LabeledDataset& ds,
                                             const std::vector<size_t>& rows, int feature) {
    std::vector<double> values;
    for (size_t r : rows) values.push_back(ds.rows[r][static_cast<size_t>(feature)]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<double> mids;
    for (size_t i = 0; i + 1 < values.size(); ++i)
        mids.push_back((values[i] + values[i + 1]) / 2.0);
    return mids;
}

// Best single split of a row set, as (leaf gini total, split); the leaf
// option (no split) is included.
inline std::pair<double, OracleSplit> oracle_best_child(const mailmine::LabeledDataset& ds,
                                                        const std::vector<size_t>& rows) {
    int64_t c0 = 0, c1 = 0;
    for (size_t r : rows) (ds.labels[r] ? c1 : c0)++;
    double leaf_total = double(c0 + c1) * oracle_gini(c0, c1);
    double best = leaf_total;
    OracleSplit best_split; // leaf
    for (int f = 0; f < static_cast<int>(ds.feature_names.size()); ++f) {
        for (double t : oracle_thresholds(ds, rows, f)) {
            int64_t l0 = 0, l1 = 0, r0 = 0, r1 = 0;
            for (size_t r : rows) {
                bool left = ds.rows[r][static_cast<size_t>(f)] < t;
                if (left) (ds.labels[r] ? l1 : l0)++;
                else (ds.labels[r] ? r1 : r0)++;
            }
            double total = double(l0 + l1) * oracle_gini(l0, l1) +
                           double(r0 + r1) * oracle_gini(r0, r1);
            if (total < best - 1e-12) {
                best = total;
                best_split = OracleSplit{f, t};
            }
        }
    }
    return {best, best_split};
}

// Exhaustive search over every depth<=2 tree; also reports how many root
// splits achieve the optimum so fixtures can assert uniqueness.
inline std::pair<OracleTree, int> oracle_depth2(const mailmine::LabeledDataset& ds) {
    std::vector<size_t> all(ds.rows.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;

    OracleTree best;
    {
        auto [leaf_total, split] = oracle_best_child(ds, all);
        (void)split;
        int64_t c0 = 0, c1 = 0;
        for (size_t r : all) (ds.labels[r] ? c1 : c0)++;
        best.total_gini = double(c0 + c1) * oracle_gini(c0, c1); // no-split tree
    }
    int optimal_roots = 0;
    for (int f = 0; f < static_cast<int>(ds.feature_names.size()); ++f) {
        for (double t : oracle_thresholds(ds, all, f)) {
            std::vector<size_t> left_rows, right_rows;
            for (size_t r : all) {
                if (ds.rows[r][static_cast<size_t>(f)] < t) left_rows.push_back(r);
                else right_rows.push_back(r);
            }
            auto [left_total, left_split] = oracle_best_child(ds, left_rows);
            auto [right_total, right_split] = oracle_best_child(ds, right_rows);
            double total = left_total + right_total;
            if (total < best.total_gini - 1e-12) {
                best = OracleTree{OracleSplit{f, t}, left_split, right_split, total};
                optimal_roots = 1;
            } else if (total <= best.total_gini + 1e-12 && best.root.feature >= 0) {
                ++optimal_roots;
            }
        }
    }
    return {best, optimal_roots};
}

// The 12-row two-feature fixture whose unique depth-2 optimum the greedy
// trainer must reproduce: root x@5.5, left y@7, right y@2.
inline mailmine::LabeledDataset make_depth2_fixture() {
    mailmine::LabeledDataset ds;
    ds.feature_names = {"x", "y"};
    auto add = [&](double x, double y, int label) {
        ds.rows.push_back({x, y});
        ds.labels.push_back(label);
    };
    add(1, 4, 0);
    add(2, 4, 0);
    add(3, 5, 0);
    add(4, 5, 0);
    add(4, 4, 0);
    add(2, 9, 1);
    add(7, 4, 1);
    add(8, 5, 1);
    add(9, 4, 1);
    add(8, 4, 1);
    add(7, 5, 1);
    add(9, 0, 0);
    return ds;
}

} // namespace fixtures
