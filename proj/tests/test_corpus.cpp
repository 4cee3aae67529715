#include "doctest.h"

#include "mailmine/corpus.hpp"
#include "mailmine/errors.hpp"

#include <fstream>
#include <sstream>

using namespace mailmine;

namespace {

Corpus parse(const std::string& csv, const ParseOptions& opts = {}) {
    std::istringstream in(csv);
    return parse_corpus(in, opts);
}

AliasTable roster() {
    std::ifstream in(MAILMINE_FIXTURES_DIR "/poi_roster.csv");
    REQUIRE(in.good());
    return AliasTable::load_roster(in);
}

} // namespace

TEST_CASE("parse_corpus: rows missing date or sender are dropped and reported") {
    Corpus c = parse(
        "id,date,sender,recipients,subject,body\n"
        "m1,2001-05-02,alice@x.com,bob@x.com,hello,one\n"
        "m2,,bob@x.com,alice@x.com,oops,two\n"
        "m3,2001-05-03,carol@x.com,alice@x.com,again,three\n");
    CHECK(c.docs.size() == 2);
    CHECK(c.report.rows_read == 3);
    CHECK(c.report.rows_dropped == 1);
    REQUIRE(c.report.drop_reasons.size() == 1);
    CHECK(c.report.drop_reasons[0].record == 3); // header is record 1
    CHECK(c.report.drop_reasons[0].reason == "missing date");
}

TEST_CASE("parse_corpus: docs come out in chronological order") {
    Corpus c = parse(
        "date,sender,recipients,subject,body\n"
        "2001-05-02,a@x.com,b@x.com,s1,b1\n"
        "1999-12-31,b@x.com,a@x.com,s2,b2\n"
        "2000-07-01,c@x.com,a@x.com,s3,b3\n");
    REQUIRE(c.docs.size() == 3);
    CHECK(format_iso8601(c.docs[0].date).substr(0, 10) == "1999-12-31");
    CHECK(format_iso8601(c.docs[1].date).substr(0, 10) == "2000-07-01");
    CHECK(format_iso8601(c.docs[2].date).substr(0, 10) == "2001-05-02");
}

TEST_CASE("parse_corpus: ties keep input order") {
    Corpus c = parse(
        "id,date,sender,recipients,subject,body\n"
        "first,2001-05-02T10:00:00Z,a@x.com,b@x.com,s,b\n"
        "second,2001-05-02T10:00:00Z,b@x.com,a@x.com,s,b\n"
        "third,2001-05-02T10:00:00Z,c@x.com,a@x.com,s,b\n");
    REQUIRE(c.docs.size() == 3);
    CHECK(c.docs[0].id == "first");
    CHECK(c.docs[1].id == "second");
    CHECK(c.docs[2].id == "third");
}

TEST_CASE("parse_corpus: unparseable header is fatal, bad rows are not") {
    std::istringstream bad_header("nope,nothing\na,b\n");
    CHECK_THROWS_AS(parse_corpus(bad_header), InputError);

    Corpus c = parse(
        "date,sender,recipients,subject,body\n"
        "2001-05-02,a@x.com,b@x.com,s,b\n"
        "2001-05-03,b@x.com,c@x.com,only,four,fields,extra,extra\n"
        "not-a-date,c@x.com,a@x.com,s,b\n");
    CHECK(c.docs.size() == 1);
    CHECK(c.report.rows_dropped == 2);
}

TEST_CASE("parse_corpus: recipients merge to/cc/bcc with roles and dedupe") {
    Corpus c = parse(
        "date,sender,to,cc,bcc,subject,body\n"
        "2001-05-02,a@x.com,\"b@x.com; c@x.com\",b@x.com,d@x.com,s,b\n");
    REQUIRE(c.docs.size() == 1);
    const auto& r = c.docs[0].recipients;
    REQUIRE(r.size() == 3); // b deduped across to/cc
    CHECK(r[0].address == "b@x.com");
    CHECK(r[0].role == RecipientRole::To);
    CHECK(r[1].address == "c@x.com");
    CHECK(r[2].address == "d@x.com");
    CHECK(r[2].role == RecipientRole::Bcc);
}

TEST_CASE("parse_corpus: poi and label columns") {
    Corpus c = parse(
        "date,sender,recipients,subject,body,poi,responsive\n"
        "2001-05-02,a@x.com,b@x.com,s,b,1,true\n"
        "2001-05-03,b@x.com,a@x.com,s,b,0,\n",
        ParseOptions{});
    REQUIRE(c.docs.size() == 2);
    CHECK(c.docs[0].poi_flag);
    CHECK_FALSE(c.docs[1].poi_flag);
    REQUIRE(c.has_labels);
    CHECK(c.labels[0] == std::optional<bool>{true});
    CHECK_FALSE(c.labels[1].has_value());
}

TEST_CASE("alias table: roster lookups are case-insensitive") {
    AliasTable table = roster();
    auto jeff = table.resolve("jeff.skilling@enron.com");
    REQUIRE(jeff.has_value());
    CHECK(table.person(*jeff).first == "Jeffrey");
    CHECK(table.person(*jeff).last == "Skilling");

    auto upper = table.resolve("JEFF.SKILLING@ENRON.COM");
    REQUIRE(upper.has_value());
    CHECK(*upper == *jeff);

    auto alias = table.resolve("jeffrey.skilling@enron.com");
    REQUIRE(alias.has_value());
    CHECK(*alias == *jeff);

    CHECK_FALSE(table.resolve("unknown@example.com").has_value());
}

TEST_CASE("alias table: unknown addresses get one stable synthesized person") {
    AliasTable table = roster();
    PersonId fresh = table.resolve_or_add("unknown@example.com");
    CHECK(fresh.valid());
    CHECK(table.resolve_or_add("unknown@example.com") == fresh);
    CHECK(table.resolve_or_add("UNKNOWN@EXAMPLE.COM") == fresh);
    PersonId other = table.resolve_or_add("someone.else@example.com");
    CHECK(other != fresh);
}

TEST_CASE("alias table: conflicting alias is rejected") {
    AliasTable table;
    PersonId a = table.add_person("A", "A", "a@x.com");
    PersonId b = table.add_person("B", "B", "b@x.com");
    table.add_alias("shared@x.com", a);
    CHECK_THROWS_AS(table.add_alias("shared@x.com", b), InputError);
}

TEST_CASE("corpus_stats: empty corpus gives all-zero stats") {
    Corpus c = parse("date,sender,recipients,subject,body\n");
    CorpusStats stats = corpus_stats(c);
    CHECK(stats.doc_count == 0);
    CHECK(stats.total_words == 0);
    CHECK(stats.per_sender_counts.empty());
    CHECK(stats.daily_counts.empty());
}

TEST_CASE("corpus_stats: same-day docs aggregate into one daily bucket") {
    Corpus c = parse(
        "date,sender,recipients,subject,body\n"
        "2001-05-02T08:00:00Z,a@x.com,b@x.com,s,b\n"
        "2001-05-02T20:00:00Z,b@x.com,a@x.com,s,b\n");
    CorpusStats stats = corpus_stats(c);
    REQUIRE(stats.daily_counts.size() == 1);
    CHECK(stats.daily_counts.at("2001-05-02") == 2);
}

TEST_CASE("corpus_stats: word totals match a hand count") {
    // 10 docs; hand count of whitespace tokens over subject+body = 30
    std::string csv = "date,sender,recipients,subject,body\n";
    const char* bodies[10] = {
        "one two three",      // subject "s" = 1 token, body 3 -> 4
        "a b",                // 3
        "",                   // 1
        "word",               // 2
        "five words in a row",// 6
        "x",                  // 2
        "tab\tseparated here",// 4  (subject + 3)
        "",                   // 1
        "double  spaced",     // 3
        "end of list",        // 4
    };
    for (int i = 0; i < 10; ++i)
        csv += "2001-05-0" + std::to_string(i % 9 + 1) + ",a@x.com,b@x.com,s,\"" +
               std::string(bodies[i]) + "\"\n";
    Corpus c = parse(csv);
    REQUIRE(c.docs.size() == 10);
    CorpusStats stats = corpus_stats(c);
    CHECK(stats.total_words == 30);
    CHECK(stats.per_sender_counts.at("a@x.com") == 10);
    CHECK(stats.body_lengths.size() == 10);

    size_t sender_sum = 0, daily_sum = 0;
    for (const auto& [who, n] : stats.per_sender_counts) sender_sum += n;
    for (const auto& [day, n] : stats.daily_counts) daily_sum += n;
    CHECK(sender_sum == stats.doc_count);
    CHECK(daily_sum == stats.doc_count);
}

TEST_CASE("ingest is deterministic") {
    std::string csv =
        "date,sender,recipients,subject,body\n"
        "2001-05-02,zed@x.com,a@x.com,s1,b1\n"
        "2001-05-01,ann@x.com,zed@x.com,s2,b2\n";
    Corpus c1 = parse(csv);
    Corpus c2 = parse(csv);
    REQUIRE(c1.docs.size() == c2.docs.size());
    for (size_t i = 0; i < c1.docs.size(); ++i) {
        CHECK(c1.docs[i].id == c2.docs[i].id);
        CHECK(c1.docs[i].sender.value == c2.docs[i].sender.value);
        CHECK(c1.docs[i].date == c2.docs[i].date);
    }
}
