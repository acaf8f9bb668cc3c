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

#ifndef RESTRICTPLAN_CALENDAR_H_
#define RESTRICTPLAN_CALENDAR_H_

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace restrictplan {

// Whole calendar day in the proleptic Gregorian calendar. No time of day,
// no time zone.
class Date {
 public:
  Date() = default;

  // Returns nullopt for impossible dates such as 31.02.2021.
  static std::optional<Date> FromCivil(int year, unsigned month, unsigned day);

  // Throws ValidationError for impossible dates.
  static Date Civil(int year, unsigned month, unsigned day);

  // Parses "YYYY-MM-DD".
  static std::optional<Date> ParseIso(std::string_view text);

  int year() const;
  unsigned month() const;
  unsigned day() const;

  // Days since 1970-01-01.
  int serial() const {
    return static_cast<int>(days_.time_since_epoch().count());
  }
  static Date FromSerial(int serial);

  Date AddDays(int n) const { return Date(days_ + std::chrono::days{n}); }

  std::string ToIso() const;

  friend auto operator<=>(const Date &, const Date &) = default;
  friend bool operator==(const Date &, const Date &) = default;

 private:
  explicit Date(std::chrono::sys_days days) : days_(days) {}

  std::chrono::sys_days days_{};
};

// Month and day without a year, used by annually recurring periods.
// February 29 is a legal value.
struct MonthDay {
  unsigned month = 1;
  unsigned day = 1;

  bool Valid() const;

  // "--MM-DD" (ISO 8601 month-day form).
  std::string ToIso() const;
  static std::optional<MonthDay> ParseIso(std::string_view text);

  friend auto operator<=>(const MonthDay &, const MonthDay &) = default;
  friend bool operator==(const MonthDay &, const MonthDay &) = default;
};

bool IsLeapYear(int year);
unsigned DaysInMonth(int year, unsigned month);

// Resolves a month-day in a concrete year. Feb 29 maps to Feb 28 when
// `as_end` and to Mar 1 otherwise in non-leap years.
Date ResolveMonthDay(MonthDay md, int year, bool as_end);

inline MonthDay ToMonthDay(Date d) { return {d.month(), d.day()}; }

// Current UTC timestamp, "YYYY-MM-DDTHH:MM:SSZ".
std::string UtcTimestampNow();

}  // namespace restrictplan

#endif  // RESTRICTPLAN_CALENDAR_H_
