#include "pathinsert/time.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace pathinsert {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') {
      if (c == '-' && &c == s.data()) continue;
      return false;
    }
  }
  return true;
}

int64_t to_int(const std::string& s) {
  int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

// "HH:MM" or "HH:MM:SS"
int64_t parse_clock(const std::string& s) {
  int h = 0, m = 0, sec = 0;
  int n = std::sscanf(s.c_str(), "%d:%d:%d", &h, &m, &sec);
  if (n < 2) throw std::invalid_argument("bad clock time: '" + s + "'");
  if (h < 0 || m < 0 || m > 59 || sec < 0 || sec > 59)
    throw std::invalid_argument("bad clock time: '" + s + "'");
  return int64_t(h) * 3600 + m * 60 + sec;
}

}  // namespace

TimePoint parse_time(const std::string& text) {
  if (all_digits(text)) return TimePoint{to_int(text)};
  auto t_pos = text.find('T');
  if (t_pos == std::string::npos) return TimePoint{parse_clock(text)};
  int y = 0, mo = 0, d = 0;
  if (std::sscanf(text.c_str(), "%d-%d-%d", &y, &mo, &d) != 3)
    throw std::invalid_argument("bad timestamp: '" + text + "'");
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{unsigned(mo)}, day{unsigned(d)}};
  if (!ymd.ok()) throw std::invalid_argument("bad date: '" + text + "'");
  int64_t days = sys_days{ymd}.time_since_epoch().count();
  return TimePoint{days * 86400 + parse_clock(text.substr(t_pos + 1))};
}

Duration parse_duration(const std::string& text) {
  int64_t v = to_int(text);
  if (v < 0) throw std::invalid_argument("negative duration: '" + text + "'");
  return Duration{v};
}

std::string format_time(TimePoint t) {
  char buf[40];
  int64_t days = t.sec >= 0 ? t.sec / 86400 : (t.sec - 86399) / 86400;
  int64_t rem = t.sec - days * 86400;
  int h = int(rem / 3600), m = int(rem % 3600 / 60), s = int(rem % 60);
  if (days == 0) {
    std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", h, m, s);
    return buf;
  }
  using namespace std::chrono;
  year_month_day ymd{sys_days{std::chrono::days{days}}};
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()), h, m, s);
  return buf;
}

std::string format_seconds(TimePoint t) { return std::to_string(t.sec); }

}  // namespace pathinsert
