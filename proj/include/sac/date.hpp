#pragma once

#include <compare>
#include <optional>
#include <string>

namespace sac {

/// Proleptic Gregorian calendar date.
struct Date {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31

  auto operator<=>(const Date&) const = default;

  /// Days since 1970-01-01.
  long to_days() const;
  static Date from_days(long days);

  Date plus_days(long n) const { return from_days(to_days() + n); }

  /// "YYYY-MM-DD"
  std::string to_string() const;

  /// Strict ISO-8601 calendar date; rejects impossible dates.
  static std::optional<Date> parse(const std::string& text);

  static Date today_utc();
};

}  // namespace sac
