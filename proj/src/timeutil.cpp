#include "mobnet/timeutil.hpp"

#include "mobnet/errors.hpp"

#include <cctype>
#include <cstdio>

namespace mobnet {

namespace {

using namespace std::chrono;

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    int digits(std::size_t count)
    {
        int value = 0;
        for (std::size_t i = 0; i < count; ++i) {
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail();
            value = value * 10 + (text_[pos_++] - '0');
        }
        return value;
    }

    void expect(char c)
    {
        if (pos_ >= text_.size() || text_[pos_] != c) fail();
        ++pos_;
    }

    bool accept(char c)
    {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool at_end() const { return pos_ == text_.size(); }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip() { ++pos_; }

    [[noreturn]] void fail() const
    {
        throw ParseError("unrecognized timestamp '" + std::string(text_) + "' (expected RFC 3339)");
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

Date scan_date(Scanner& s)
{
    int y = s.digits(4);
    s.expect('-');
    int m = s.digits(2);
    s.expect('-');
    int d = s.digits(2);
    year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) s.fail();
    return sys_days{ymd};
}

} // namespace

Interval make_interval(TimePoint start, TimePoint end)
{
    if (!(start < end)) throw ArgumentError("interval start must precede its end");
    return Interval{start, end};
}

TimePoint parse_rfc3339(std::string_view text)
{
    Scanner s(text);
    Date date = scan_date(s);
    if (!(s.accept('T') || s.accept('t') || s.accept(' '))) s.fail();
    int hh = s.digits(2);
    s.expect(':');
    int mm = s.digits(2);
    s.expect(':');
    int ss = s.digits(2);
    if (hh > 23 || mm > 59 || ss > 60) s.fail();
    if (s.accept('.')) {
        // Sub-second precision is below the 8-hour granularity; drop it.
        if (!std::isdigit(static_cast<unsigned char>(s.peek()))) s.fail();
        while (std::isdigit(static_cast<unsigned char>(s.peek()))) s.skip();
    }
    seconds offset{0};
    if (s.accept('Z') || s.accept('z')) {
    } else if (s.peek() == '+' || s.peek() == '-') {
        int sign = s.peek() == '-' ? -1 : 1;
        s.skip();
        int oh = s.digits(2);
        s.expect(':');
        int om = s.digits(2);
        if (oh > 23 || om > 59) s.fail();
        offset = sign * (hours{oh} + minutes{om});
    } else {
        s.fail();
    }
    if (!s.at_end()) s.fail();
    return TimePoint{date} + hours{hh} + minutes{mm} + seconds{ss} - offset;
}

Date parse_date(std::string_view text)
{
    Scanner s(text);
    Date d = scan_date(s);
    if (!s.at_end()) throw ParseError("unrecognized date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    return d;
}

std::string format_date(Date d)
{
    year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_rfc3339(TimePoint t)
{
    Date d = floor<days>(t);
    hh_mm_ss<seconds> hms{t - d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", static_cast<int>(hms.hours().count()),
                  static_cast<int>(hms.minutes().count()), static_cast<int>(hms.seconds().count()));
    return format_date(d) + buf;
}

TimePoint floor_to_flow_window(TimePoint t)
{
    Date d = floor<days>(t);
    auto into_day = t - TimePoint{d};
    return TimePoint{d} + floor<hours>(into_day) / kFlowWindow.count() * kFlowWindow.count();
}

Date iso_week_start(Date d)
{
    weekday wd{d};
    return d - days{(wd.c_encoding() + 6) % 7};
}

} // namespace mobnet
