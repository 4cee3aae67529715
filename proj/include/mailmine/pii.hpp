#pragma once

#include "mailmine/corpus.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mailmine {

enum class PiiCategory {
    Ssn,
    CreditCard,
    PasswordInUrl,
    Passport,
    DriversLicense,
    Iban,
    Date,
    Phone,
    Email,     // behind a flag; excluded from the standard report
    IpAddress, // behind a flag
};

const char* category_name(PiiCategory cat);

struct PiiFinding {
    PiiCategory category;
    size_t begin = 0; // byte offsets into the scanned text (subject\nbody)
    size_t end = 0;
    std::string matched;
    bool validated = false; // only credit_card, iban and structured ssn validate
    std::string context;    // <= 80 chars around the match
    std::string doc_id;
};

// State driver's-license formats: pattern alphabet A = letter, 9 = digit,
// anything else literal. Loaded from CSV (state,pattern). An empty table
// leaves the detector inert.
struct DlFormatTable {
    struct Entry {
        std::string state;
        std::string pattern;
    };
    std::vector<Entry> entries;

    static DlFormatTable load(std::istream& in);
};

struct DetectorConfig {
    bool ssn = true;
    bool credit_card = true;
    bool password_in_url = true;
    bool passport = true;
    bool drivers_license = true;
    bool iban = true;
    bool date = true;
    bool phone = true;
    bool email = false;
    bool ip_address = false;
    DlFormatTable dl_table;
};

// Mod-10 check over 13..19 digits; anything else is false, never an error.
bool luhn_valid(std::string_view digits);

// ISO 13616 shape (2 letters, 2 digits, 11..30 alphanumerics), country
// length register, and mod-97 remainder 1.
bool iban_valid(std::string_view s);

// Candidate spans per enabled detector, sorted by start offset. Overlaps
// within one category keep the longest-leftmost span; different categories
// may overlap freely.
std::vector<PiiFinding> scan_document(std::string_view text, const DetectorConfig& config,
                                      std::string_view doc_id = {});

struct PiiReport {
    std::map<PiiCategory, int64_t> counts; // every enabled category present
    std::map<PiiCategory, double> percentages;
    int64_t grand_total = 0;
    std::vector<PiiFinding> findings; // populated when keep_findings
};

PiiReport scan_corpus(const Corpus& corpus, const DetectorConfig& config,
                      bool keep_findings = false, unsigned jobs = 1);

enum class RedactStyle { Mask, Label };

// Mask: X out matched characters (cards and SSNs keep their last four
// alphanumerics, separators stay). Label: the span becomes "[CATEGORY]".
// Overlapping spans are merged first.
std::string redact(std::string_view text, std::vector<PiiFinding> findings, RedactStyle style);

} // namespace mailmine
