#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace sizevix {

// Calendar month, ordered lexicographically by (year, month); the text
// form is YYYYMM.
struct MonthKey {
  int year = 0;
  int month = 1;

  auto operator<=>(const MonthKey&) const = default;

  MonthKey next() const;
  std::string str() const;

  static MonthKey from_yyyymm(std::string_view token);
  // Accepts YYYY-MM-DD (the day is dropped).
  static MonthKey from_iso_date(std::string_view token);
};

// Contiguous monthly observations: months strictly increasing with no gaps,
// all values finite. validate() enforces the invariant with a named error.
struct MonthlySeries {
  std::vector<MonthKey> months;
  std::vector<double> values;

  std::size_t size() const { return months.size(); }
  bool empty() const { return months.empty(); }
  MonthKey first() const { return months.front(); }
  MonthKey last() const { return months.back(); }

  void validate(const std::string& name) const;

  // Restricts to [from, to]; errors if the series does not cover the range.
  MonthlySeries slice(MonthKey from, MonthKey to, const std::string& name) const;
};

}  // namespace sizevix
