#include "doctest.h"

#include "mailmine/corpus.hpp"
#include "mailmine/errors.hpp"
#include "mailmine/pii.hpp"

#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>

using namespace mailmine;

namespace {

DetectorConfig full_config() {
    DetectorConfig config;
    std::ifstream in(MAILMINE_DATA_DIR "/dl_formats.csv");
    REQUIRE(in.good());
    config.dl_table = DlFormatTable::load(in);
    return config;
}

std::vector<PiiFinding> of_category(const std::vector<PiiFinding>& findings, PiiCategory cat) {
    std::vector<PiiFinding> out;
    for (const auto& f : findings)
        if (f.category == cat) out.push_back(f);
    return out;
}

} // namespace

TEST_CASE("luhn: worked checks") {
    CHECK(luhn_valid("4111111111111111"));       // digit-sum 30
    CHECK_FALSE(luhn_valid("4111111111111112")); // +1 breaks it
    CHECK(luhn_valid("0000000000000"));
    CHECK_FALSE(luhn_valid("123"));           // too short, false not an error
    CHECK_FALSE(luhn_valid("41111111111111ab"));
    CHECK(luhn_valid("378282246310005")); // AMEX shape
}

TEST_CASE("luhn agrees with the independent oracle on random numbers") {
    Rng rng(100);
    for (int i = 0; i < 2000; ++i) {
        std::string digits = fixtures::random_digits(rng, 13 + rng.uniform_index(4));
        CHECK(luhn_valid(digits) == fixtures::luhn_oracle(digits));
    }
}

TEST_CASE("iban: shape, country length and mod-97") {
    CHECK(iban_valid("GB82WEST12345698765432"));
    CHECK_FALSE(iban_valid("GB82WEST12345698765431")); // perturbed check digit
    CHECK_FALSE(iban_valid("XX00"));
    CHECK_FALSE(iban_valid("XX82WEST12345698765432")); // unknown country
    CHECK_FALSE(iban_valid("GB82WEST1234569876543"));  // wrong length for GB
    CHECK_FALSE(iban_valid("gb82west12345698765432")); // lowercase rejected
}

TEST_CASE("iban: generated valid ones pass, 1000 mutations all fail") {
    Rng rng(4242);
    int mutations_checked = 0;
    while (mutations_checked < 1000) {
        std::string iban = fixtures::make_iban(rng);
        REQUIRE(iban_valid(iban));
        REQUIRE(fixtures::iban_mod97_oracle(iban) == 1);
        for (int m = 0; m < 5; ++m) {
            std::string mutated = iban;
            size_t pos = rng.uniform_index(mutated.size());
            char c = mutated[pos];
            if (c >= '0' && c <= '9')
                mutated[pos] = static_cast<char>('0' + (c - '0' + 1 + rng.uniform_index(9)) % 10);
            else
                mutated[pos] = static_cast<char>('A' + (c - 'A' + 1 + rng.uniform_index(25)) % 26);
            if (mutated == iban) continue;
            CHECK_FALSE(iban_valid(mutated));
            ++mutations_checked;
        }
    }
}

TEST_CASE("scan_document: canonical SSN") {
    DetectorConfig config;
    auto findings = scan_document("SSN is 123-45-6789", config);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].category == PiiCategory::Ssn);
    CHECK(findings[0].matched == "123-45-6789");
    CHECK(findings[0].validated);
    CHECK(findings[0].begin == 7);
    CHECK(findings[0].end == 18);
}

TEST_CASE("scan_document: SSN structural exclusions and bare runs") {
    DetectorConfig config;
    CHECK(scan_document("000-12-3456", config).empty());
    CHECK(scan_document("666-12-3456", config).empty());
    CHECK(scan_document("987-00-3456", config).empty());
    CHECK(scan_document("987-12-0000", config).empty());
    auto bare = scan_document("zip+4 run 123456789 here", config);
    REQUIRE(bare.size() == 1);
    CHECK(bare[0].category == PiiCategory::Ssn);
    CHECK_FALSE(bare[0].validated);
    // embedded in a longer token: no finding
    CHECK(scan_document("A123456789", config).empty());
    CHECK(scan_document("1234567890", config).empty());
}

TEST_CASE("scan_document: password inside a URL") {
    DetectorConfig config;
    auto findings = scan_document("see http://x.com/a?userid=5&password=hunter2 now", config);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].category == PiiCategory::PasswordInUrl);
    CHECK(findings[0].matched == "hunter2");
    // passwd/pwd synonyms, https, value stops at the next parameter
    auto more = scan_document("https://y.org/l?pwd=abc123&next=z", config);
    REQUIRE(more.size() == 1);
    CHECK(more[0].matched == "abc123");
    // no query parameter names outside URLs
    CHECK(scan_document("my password=secret here", config).empty());
}

TEST_CASE("scan_document: the card-and-expiry pattern") {
    DetectorConfig config;
    auto findings = scan_document("card 4111 1111 1111 1111 exp 11/01", config);
    REQUIRE(findings.size() == 2);
    CHECK(findings[0].category == PiiCategory::CreditCard);
    CHECK(findings[0].matched == "4111 1111 1111 1111");
    CHECK(findings[0].validated);
    CHECK(findings[1].category == PiiCategory::Date);
    CHECK(findings[1].matched == "11/01");
}

TEST_CASE("scan_document: non-Luhn card with issuer prefix is reported unvalidated") {
    DetectorConfig config;
    auto findings = scan_document("number 4111111111111112 on file", config);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].category == PiiCategory::CreditCard);
    CHECK_FALSE(findings[0].validated);
    // non-issuer prefixes are not candidates at all
    CHECK(scan_document("number 1111111111111111 on file", config).empty());
    // 17+ digits: not a card
    CHECK(of_category(scan_document("41111111111111119", config), PiiCategory::CreditCard)
              .empty());
}

TEST_CASE("scan_document: phone forms") {
    DetectorConfig config;
    for (const char* text : {"call (256) 555-0142 today", "call 256-555-0142 today",
                             "call 256.555.0142 today", "call +1 256 555 0142 today",
                             "call 2565550142 today", "call 1-256-555-0142 today"}) {
        CAPTURE(text);
        auto findings = scan_document(text, config);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].category == PiiCategory::Phone);
    }
    // NANP constraints: area/exchange lead with 2-9
    CHECK(scan_document("111-555-0142", config).empty());
    CHECK(scan_document("256-155-0142", config).empty());
}

TEST_CASE("scan_document: date forms") {
    DetectorConfig config;
    for (const char* text : {"on 10/26/2001 we", "on 2001-10-26 we", "on 10/26/01 we",
                             "on 11/01 we", "on March 5, 2001 we", "on 5 March 2001 we",
                             "on March 2001 we"}) {
        CAPTURE(text);
        auto findings = scan_document(text, config);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].category == PiiCategory::Date);
    }
    CHECK(scan_document("13/26/2001", config).empty());  // no month 13
    CHECK(scan_document("ratio 1/2/3/4", config).empty()); // slash chains skipped
}

TEST_CASE("scan_document: keyword gating for passports and licenses") {
    DetectorConfig config = full_config();
    auto hit = scan_document("my passport K12345678 expires", config);
    REQUIRE(hit.size() == 1);
    CHECK(hit[0].category == PiiCategory::Passport);
    CHECK(hit[0].matched == "K12345678");
    // same token without the keyword nearby: nothing
    CHECK(scan_document("my K12345678 expires", config).empty());
    // keyword too far away (>40 chars)
    std::string padding(60, 'x');
    CHECK(scan_document("passport " + padding + " K12345678", config).empty());

    auto dl = scan_document("CA license A1234567 on file", config);
    REQUIRE(dl.size() == 1);
    CHECK(dl[0].category == PiiCategory::DriversLicense);
    auto dl2 = scan_document("DL B7654321 on file", config);
    REQUIRE(dl2.size() == 1);
    CHECK(dl2[0].category == PiiCategory::DriversLicense);
    CHECK(scan_document("B7654321 on file", config).empty());
    // lowercase "dl" is not the token gate
    CHECK(scan_document("dl B7654321 on file", config).empty());
}

TEST_CASE("scan_document: iban in context, only when fully valid") {
    DetectorConfig config;
    auto findings = scan_document("wire to GB82WEST12345698765432 today", config);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].category == PiiCategory::Iban);
    CHECK(findings[0].validated);
    CHECK(scan_document("wire to GB82WEST12345698765431 today", config).empty());
}

TEST_CASE("scan_document: email and ip are opt-in") {
    DetectorConfig config;
    CHECK(scan_document("mail bob@example.com from 10.1.2.3", config).empty());
    config.email = true;
    config.ip_address = true;
    auto findings = scan_document("mail bob@example.com from 10.1.2.3", config);
    REQUIRE(findings.size() == 2);
    CHECK(findings[0].category == PiiCategory::Email);
    CHECK(findings[0].matched == "bob@example.com");
    CHECK(findings[1].category == PiiCategory::IpAddress);
    CHECK(findings[1].matched == "10.1.2.3");
    CHECK(of_category(scan_document("version 10.1.2.300", config), PiiCategory::IpAddress)
              .empty());
}

TEST_CASE("scan_document: overlaps within a category keep the longest-leftmost") {
    DetectorConfig config;
    // "25 March 2001" also matches "March 2001" from the month-name pass
    auto findings = scan_document("sent 25 March 2001 indeed", config);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].matched == "25 March 2001");
}

TEST_CASE("scan_document: findings are sorted and deterministic") {
    DetectorConfig config;
    std::string text = "call 256-555-0142 about card 4111111111111111 by 3/15/2001";
    auto a = scan_document(text, config);
    auto b = scan_document(text, config);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].begin == b[i].begin);
        CHECK(a[i].category == b[i].category);
        if (i > 0) CHECK(a[i - 1].begin <= a[i].begin);
    }
    REQUIRE(a.size() == 3);
    CHECK(a[0].category == PiiCategory::Phone);
    CHECK(a[1].category == PiiCategory::CreditCard);
    CHECK(a[2].category == PiiCategory::Date);
}

TEST_CASE("scan_corpus: planted fixture has perfect recall and precision") {
    fixtures::PiiFixture fx = fixtures::make_pii_fixture(6, 77);
    std::istringstream in(fx.corpus_csv);
    Corpus corpus = parse_corpus(in);
    REQUIRE(corpus.docs.size() == 48);

    PiiReport report = scan_corpus(corpus, full_config(), true, 2);
    for (const auto& [name, expected] : fx.planted) {
        bool found = false;
        for (const auto& [cat, count] : report.counts) {
            if (category_name(cat) == name) {
                CAPTURE(name);
                CHECK(count == expected);
                found = true;
            }
        }
        CHECK(found);
    }
    CHECK(report.grand_total == 48);

    // percentages sum to one
    double sum = 0.0;
    for (const auto& [cat, p] : report.percentages) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

    // every validated card finding passes the independent oracle
    for (const auto& f : report.findings) {
        if (f.category == PiiCategory::CreditCard) {
            std::string digits;
            for (char c : f.matched)
                if (c >= '0' && c <= '9') digits.push_back(c);
            CHECK(f.validated == fixtures::luhn_oracle(digits));
        }
        if (f.category == PiiCategory::Iban)
            CHECK(fixtures::iban_mod97_oracle(f.matched) == 1);
    }
}

TEST_CASE("scan_corpus: empty corpus reports zero everywhere") {
    std::istringstream in("date,sender,recipients,subject,body\n");
    Corpus corpus = parse_corpus(in);
    PiiReport report = scan_corpus(corpus, DetectorConfig{});
    CHECK(report.grand_total == 0);
    for (const auto& [cat, count] : report.counts) CHECK(count == 0);
    for (const auto& [cat, p] : report.percentages) CHECK(p == 0.0);
    CHECK(report.counts.size() == 8); // every default category present
}

TEST_CASE("scan_corpus: three SSNs, two cards, one IBAN give sixths") {
    std::string csv =
        "id,date,sender,recipients,subject,body\n"
        "m1,2001-05-02,a@x.com,b@x.com,s,\"ssn 321-54-9876 noted\"\n"
        "m2,2001-05-03,a@x.com,b@x.com,s,\"ssn 452-38-1122 and ssn 519-22-7788\"\n"
        "m3,2001-05-04,a@x.com,b@x.com,s,\"card 4111111111111111 here\"\n"
        "m4,2001-05-05,a@x.com,b@x.com,s,\"card 378282246310005 there\"\n"
        "m5,2001-05-06,a@x.com,b@x.com,s,\"wire GB82WEST12345698765432 now\"\n";
    std::istringstream in(csv);
    Corpus corpus = parse_corpus(in);
    DetectorConfig config; // no DL table needed
    PiiReport report = scan_corpus(corpus, config);
    CHECK(report.counts.at(PiiCategory::Ssn) == 3);
    CHECK(report.counts.at(PiiCategory::CreditCard) == 2);
    CHECK(report.counts.at(PiiCategory::Iban) == 1);
    CHECK(report.grand_total == 6);
    CHECK(report.percentages.at(PiiCategory::Ssn) == doctest::Approx(0.5));
    CHECK(report.percentages.at(PiiCategory::CreditCard) == doctest::Approx(1.0 / 3.0));
    CHECK(report.percentages.at(PiiCategory::Iban) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("scan_corpus: aggregation equals per-document sums and ignores jobs") {
    fixtures::PiiFixture fx = fixtures::make_pii_fixture(3, 5);
    std::istringstream in(fx.corpus_csv);
    Corpus corpus = parse_corpus(in);
    DetectorConfig config = full_config();

    PiiReport serial = scan_corpus(corpus, config, true, 1);
    PiiReport parallel = scan_corpus(corpus, config, true, 7);
    CHECK(serial.grand_total == parallel.grand_total);
    REQUIRE(serial.findings.size() == parallel.findings.size());
    for (size_t i = 0; i < serial.findings.size(); ++i) {
        CHECK(serial.findings[i].doc_id == parallel.findings[i].doc_id);
        CHECK(serial.findings[i].begin == parallel.findings[i].begin);
    }

    std::map<PiiCategory, int64_t> manual;
    for (const auto& doc : corpus.docs)
        for (const auto& f : scan_document(doc.subject + "\n" + doc.body, config, doc.id))
            manual[f.category]++;
    for (const auto& [cat, count] : serial.counts) {
        CHECK(count == (manual.count(cat) ? manual[cat] : 0));
    }
}

TEST_CASE("scan_document: random-text fuzz stays deterministic and in bounds") {
    DetectorConfig config = full_config();
    config.email = true;
    config.ip_address = true;
    Rng rng(31415);
    const std::string alphabet =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .,-/()@:?&=+'\"\n\t";
    for (int round = 0; round < 1500; ++round) {
        size_t len = rng.uniform_index(300);
        std::string text;
        for (size_t i = 0; i < len; ++i)
            text.push_back(alphabet[static_cast<size_t>(rng.uniform_index(alphabet.size()))]);
        auto a = scan_document(text, config);
        auto b = scan_document(text, config);
        REQUIRE(a.size() == b.size());
        size_t last_begin = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            const PiiFinding& f = a[i];
            CHECK(f.begin <= f.end);
            CHECK(f.end <= text.size());
            CHECK(f.begin >= last_begin);
            last_begin = f.begin;
            CHECK(f.context.size() <= 80);
            if (f.category != PiiCategory::PasswordInUrl)
                CHECK(f.matched == text.substr(f.begin, f.end - f.begin));
            CHECK(f.begin == b[i].begin);
            CHECK(f.category == b[i].category);
        }
    }
}

TEST_CASE("scan_corpus: planted fixtures stay perfect across seeds") {
    for (uint64_t seed : {11ull, 222ull, 3333ull}) {
        fixtures::PiiFixture fx = fixtures::make_pii_fixture(10, seed);
        std::istringstream in(fx.corpus_csv);
        Corpus corpus = parse_corpus(in);
        PiiReport report = scan_corpus(corpus, full_config(), false, 3);
        int64_t expected_total = 0;
        for (const auto& [name, expected] : fx.planted) {
            expected_total += expected;
            for (const auto& [cat, count] : report.counts)
                if (name == category_name(cat)) {
                    CAPTURE(seed);
                    CAPTURE(name);
                    CHECK(count == expected);
                }
        }
        CHECK(report.grand_total == expected_total);
    }
}

TEST_CASE("redact: mask and label styles") {
    DetectorConfig config;
    std::string text = "SSN is 123-45-6789";
    auto findings = scan_document(text, config);
    REQUIRE(findings.size() == 1);
    CHECK(redact(text, findings, RedactStyle::Mask) == "SSN is XXX-XX-6789");
    CHECK(redact(text, findings, RedactStyle::Label) == "SSN is [SSN]");
    CHECK(redact(text, {}, RedactStyle::Mask) == text);

    std::string card_text = "card 4111 1111 1111 1111 ok";
    auto card = scan_document(card_text, config);
    REQUIRE(!card.empty());
    CHECK(redact(card_text, card, RedactStyle::Mask) == "card XXXX XXXX XXXX 1111 ok");

    std::string phone_text = "call 256-555-0142";
    auto phone = scan_document(phone_text, config);
    CHECK(redact(phone_text, phone, RedactStyle::Mask) == "call XXXXXXXXXXXX");
}

TEST_CASE("redact: overlapping spans merge before replacement") {
    std::string text = "abcdefghij";
    std::vector<PiiFinding> findings(2);
    findings[0].category = PiiCategory::Phone;
    findings[0].begin = 2;
    findings[0].end = 6;
    findings[1].category = PiiCategory::Date;
    findings[1].begin = 4;
    findings[1].end = 9;
    // merged span [2, 9) takes the leftmost-widest member's category
    CHECK(redact(text, findings, RedactStyle::Mask) == "abXXXXXXXj");
    CHECK(redact(text, findings, RedactStyle::Label) == "ab[PHONE]j");

    std::vector<PiiFinding> outside(1);
    outside[0].begin = 5;
    outside[0].end = 99;
    CHECK_THROWS_AS(redact(text, outside, RedactStyle::Mask), InputError);
}

TEST_CASE("dl format table: loading and validation") {
    std::istringstream good("state,pattern\nCA,A9999999\nTX,99999999\n");
    DlFormatTable table = DlFormatTable::load(good);
    CHECK(table.entries.size() == 2);

    std::istringstream dup("state,pattern\nCA,A9999999\nCA,Z9\n");
    CHECK_THROWS_AS(DlFormatTable::load(dup), InputError);
    std::istringstream empty_pattern("state,pattern\nCA,\n");
    CHECK_THROWS_AS(DlFormatTable::load(empty_pattern), InputError);
    std::istringstream bad_header("a,b\n1,2\n");
    CHECK_THROWS_AS(DlFormatTable::load(bad_header), InputError);
}
