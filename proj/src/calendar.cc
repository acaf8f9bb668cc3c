// Copyright 2026 The Restrictplan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "restrictplan/calendar.h"

#include <charconv>
#include <cstdio>
#include <ctime>

#include "restrictplan/errors.h"

namespace restrictplan {

namespace {

using std::chrono::year_month_day;

bool ParseFixed(std::string_view text, int *out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::optional<Date> Date::FromCivil(int year, unsigned month, unsigned day) {
  year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                     std::chrono::day{day}};
  if (!ymd.ok()) return std::nullopt;
  return Date(std::chrono::sys_days{ymd});
}

Date Date::Civil(int year, unsigned month, unsigned day) {
  auto d = FromCivil(year, month, day);
  if (!d) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "impossible date %04d-%02u-%02u", year,
                  month, day);
    throw ValidationError(ValidationIssue::kInvalidDate, buf);
  }
  return *d;
}

std::optional<Date> Date::ParseIso(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y, m, d;
  if (!ParseFixed(text.substr(0, 4), &y) || !ParseFixed(text.substr(5, 2), &m) ||
      !ParseFixed(text.substr(8, 2), &d)) {
    return std::nullopt;
  }
  if (m < 1 || d < 1) return std::nullopt;
  return FromCivil(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

Date Date::FromSerial(int serial) {
  return Date(std::chrono::sys_days{std::chrono::days{serial}});
}

int Date::year() const { return int(year_month_day{days_}.year()); }
unsigned Date::month() const { return unsigned(year_month_day{days_}.month()); }
unsigned Date::day() const { return unsigned(year_month_day{days_}.day()); }

std::string Date::ToIso() const {
  year_month_day ymd{days_};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

bool MonthDay::Valid() const {
  if (month < 1 || month > 12 || day < 1) return false;
  // Leap year 2000 caps February at 29.
  return day <= DaysInMonth(2000, month);
}

std::string MonthDay::ToIso() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "--%02u-%02u", month, day);
  return buf;
}

std::optional<MonthDay> MonthDay::ParseIso(std::string_view text) {
  if (text.size() != 7 || text.substr(0, 2) != "--" || text[4] != '-') {
    return std::nullopt;
  }
  int m, d;
  if (!ParseFixed(text.substr(2, 2), &m) || !ParseFixed(text.substr(5, 2), &d)) {
    return std::nullopt;
  }
  if (m < 1 || d < 1) return std::nullopt;
  MonthDay md{static_cast<unsigned>(m), static_cast<unsigned>(d)};
  if (!md.Valid()) return std::nullopt;
  return md;
}

bool IsLeapYear(int year) { return std::chrono::year{year}.is_leap(); }

unsigned DaysInMonth(int year, unsigned month) {
  std::chrono::year_month_day_last last{
      std::chrono::year{year},
      std::chrono::month_day_last{std::chrono::month{month}}};
  return unsigned(last.day());
}

Date ResolveMonthDay(MonthDay md, int year, bool as_end) {
  if (md.month == 2 && md.day == 29 && !IsLeapYear(year)) {
    return as_end ? Date::Civil(year, 2, 28) : Date::Civil(year, 3, 1);
  }
  return Date::Civil(year, md.month, md.day);
}

std::string UtcTimestampNow() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace restrictplan
