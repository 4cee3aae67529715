#include "mailmine/dates.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace mailmine {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static const int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

struct Cursor {
    std::string_view s;
    size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }
    void skip_ws() {
        while (!done() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    // Reads 1..max_digits decimal digits; fails on none.
    std::optional<int> digits(int max_digits) {
        int value = 0, count = 0;
        while (!done() && count < max_digits && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            value = value * 10 + (s[pos] - '0');
            ++pos;
            ++count;
        }
        if (count == 0) return std::nullopt;
        return value;
    }
    std::string_view word() {
        size_t start = pos;
        while (!done() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
        return s.substr(start, pos - start);
    }
};

int month_from_name(std::string_view w) {
    static const std::array<std::string_view, 12> names = {"jan", "feb", "mar", "apr",
                                                           "may", "jun", "jul", "aug",
                                                           "sep", "oct", "nov", "dec"};
    if (w.size() < 3) return 0;
    char a = static_cast<char>(std::tolower(static_cast<unsigned char>(w[0])));
    char b = static_cast<char>(std::tolower(static_cast<unsigned char>(w[1])));
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(w[2])));
    std::string key{a, b, c};
    for (size_t i = 0; i < names.size(); ++i)
        if (key == names[i]) return static_cast<int>(i) + 1;
    return 0;
}

// Obsolete zone names RFC 2822 still allows.
std::optional<int> zone_offset_minutes(std::string_view name) {
    struct Zone {
        std::string_view name;
        int minutes;
    };
    static const Zone zones[] = {{"UT", 0},     {"GMT", 0},    {"Z", 0},
                                 {"EST", -300}, {"EDT", -240}, {"CST", -360},
                                 {"CDT", -300}, {"MST", -420}, {"MDT", -360},
                                 {"PST", -480}, {"PDT", -420}, {"UTC", 0}};
    for (const auto& z : zones)
        if (name == z.name) return z.minutes;
    return std::nullopt;
}

std::optional<UnixTime> assemble(int y, int mo, int d, int h, int mi, int se, int offset_min) {
    if (!is_valid_civil(y, mo, d)) return std::nullopt;
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || se < 0 || se > 60) return std::nullopt;
    if (se == 60) se = 59; // clamp leap second
    int64_t days = days_from_civil(y, mo, d);
    int64_t t = days * 86400 + h * 3600 + mi * 60 + se;
    return t - static_cast<int64_t>(offset_min) * 60;
}

// [weekday,] day month year [hh:mm[:ss]] [zone]
std::optional<UnixTime> parse_rfc2822(std::string_view text) {
    Cursor c{text};
    c.skip_ws();
    // optional day-of-week
    {
        size_t mark = c.pos;
        std::string_view w = c.word();
        if (!w.empty()) {
            c.skip_ws();
            if (c.eat(',')) {
                c.skip_ws();
            } else if (month_from_name(w) == 0) {
                // bare weekday without comma ("Wed 2 May ...")
                if (w.size() < 3) return std::nullopt;
            } else {
                c.pos = mark; // it was the month of a "May 2 2001" style — not RFC 2822
                return std::nullopt;
            }
        }
    }
    auto day = c.digits(2);
    if (!day) return std::nullopt;
    c.skip_ws();
    int month = month_from_name(c.word());
    if (month == 0) return std::nullopt;
    c.skip_ws();
    auto year = c.digits(4);
    if (!year) return std::nullopt;
    int y = *year;
    if (y < 100) y += (y < 50) ? 2000 : 1900; // two-digit years per RFC 2822 §4.3
    int h = 0, mi = 0, se = 0, offset = 0;
    c.skip_ws();
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        auto hh = c.digits(2);
        if (!c.eat(':')) return std::nullopt;
        auto mm = c.digits(2);
        if (!hh || !mm) return std::nullopt;
        h = *hh;
        mi = *mm;
        if (c.eat(':')) {
            auto ss = c.digits(2);
            if (!ss) return std::nullopt;
            se = *ss;
        }
        c.skip_ws();
        if (c.peek() == '+' || c.peek() == '-') {
            int sign = c.eat('+') ? 1 : (c.eat('-'), -1);
            auto zz = c.digits(4);
            if (!zz) return std::nullopt;
            offset = sign * ((*zz / 100) * 60 + (*zz % 100));
        } else if (std::isalpha(static_cast<unsigned char>(c.peek()))) {
            auto z = zone_offset_minutes(c.word());
            if (!z) return std::nullopt;
            offset = *z;
        }
    }
    c.skip_ws();
    // Trailing comments like "(PDT)" are tolerated.
    if (!c.done() && c.peek() != '(') return std::nullopt;
    return assemble(y, month, *day, h, mi, se, offset);
}

// YYYY-MM-DD[( |T)hh:mm[:ss][Z|±hh[:]mm]]
std::optional<UnixTime> parse_iso8601(std::string_view text) {
    Cursor c{text};
    c.skip_ws();
    auto year = c.digits(4);
    if (!year || *year < 1000) return std::nullopt;
    if (!c.eat('-')) return std::nullopt;
    auto month = c.digits(2);
    if (!month || !c.eat('-')) return std::nullopt;
    auto day = c.digits(2);
    if (!day) return std::nullopt;
    int h = 0, mi = 0, se = 0, offset = 0;
    if (c.eat('T') || c.eat(' ')) {
        c.skip_ws();
        auto hh = c.digits(2);
        if (!hh || !c.eat(':')) return std::nullopt;
        auto mm = c.digits(2);
        if (!mm) return std::nullopt;
        h = *hh;
        mi = *mm;
        if (c.eat(':')) {
            auto ss = c.digits(2);
            if (!ss) return std::nullopt;
            se = *ss;
        }
        if (c.eat('Z') || c.eat('z')) {
            offset = 0;
        } else if (c.peek() == '+' || c.peek() == '-') {
            int sign = c.eat('+') ? 1 : (c.eat('-'), -1);
            auto oh = c.digits(2);
            if (!oh) return std::nullopt;
            int om = 0;
            c.eat(':');
            if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
                auto m2 = c.digits(2);
                if (!m2) return std::nullopt;
                om = *m2;
            }
            offset = sign * (*oh * 60 + om);
        }
    }
    c.skip_ws();
    if (!c.done()) return std::nullopt;
    return assemble(*year, *month, *day, h, mi, se, offset);
}

} // namespace

// Howard Hinnant's civil-days algorithms.
int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

CivilDate civil_from_days(int64_t z) {
    z += 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t y = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

bool is_valid_civil(int y, int m, int d) {
    if (y < 1 || y > 9999 || m < 1 || m > 12 || d < 1) return false;
    return d <= days_in_month(y, m);
}

std::optional<UnixTime> parse_datetime(std::string_view text) {
    if (auto t = parse_iso8601(text)) return t;
    return parse_rfc2822(text);
}

std::string format_iso8601(UnixTime t) {
    int64_t days = t / 86400;
    int64_t sod = t % 86400;
    if (sod < 0) {
        sod += 86400;
        --days;
    }
    CivilDate cd = civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", cd.year, cd.month, cd.day,
                  static_cast<int>(sod / 3600), static_cast<int>(sod / 60 % 60),
                  static_cast<int>(sod % 60));
    return buf;
}

namespace {
CivilDate civil_of(UnixTime t) {
    int64_t days = t / 86400;
    if (t % 86400 < 0) --days;
    return civil_from_days(days);
}
} // namespace

std::string utc_day(UnixTime t) {
    CivilDate cd = civil_of(t);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", cd.year, cd.month, cd.day);
    return buf;
}

std::string utc_month(UnixTime t) {
    CivilDate cd = civil_of(t);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", cd.year, cd.month);
    return buf;
}

std::string utc_iso_week(UnixTime t) {
    int64_t days = t / 86400;
    if (t % 86400 < 0) --days;
    // ISO week: Monday-based; the week containing Thursday determines the year.
    int64_t weekday = ((days % 7) + 10) % 7; // 0 = Monday (1970-01-01 was a Thursday)
    int64_t thursday = days - weekday + 3;
    CivilDate th = civil_from_days(thursday);
    int64_t jan1 = days_from_civil(th.year, 1, 1);
    int week = static_cast<int>((thursday - jan1) / 7) + 1;
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-W%02d", th.year, week);
    return buf;
}

std::string next_month(const std::string& month_key) {
    int y = std::atoi(month_key.substr(0, 4).c_str());
    int m = std::atoi(month_key.substr(5, 2).c_str());
    if (++m > 12) {
        m = 1;
        ++y;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02d", y, m);
    return buf;
}

std::string next_iso_week(const std::string& week_key) {
    int y = std::atoi(week_key.substr(0, 4).c_str());
    int w = std::atoi(week_key.substr(6, 2).c_str());
    // Monday of the given ISO week, advanced by 7 days.
    int64_t jan4 = days_from_civil(y, 1, 4); // Jan 4 is always in week 1
    int64_t jan4_weekday = ((jan4 % 7) + 10) % 7;
    int64_t monday = jan4 - jan4_weekday + static_cast<int64_t>(w - 1) * 7 + 7;
    return utc_iso_week(monday * 86400);
}

} // namespace mailmine
