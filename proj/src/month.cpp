#include "sizevix/month.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace sizevix {

namespace {

int parse_int(std::string_view s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::runtime_error("invalid integer '" + std::string(s) + "'");
  return value;
}

}  // namespace

MonthKey MonthKey::next() const {
  return month == 12 ? MonthKey{year + 1, 1} : MonthKey{year, month + 1};
}

std::string MonthKey::str() const {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%04d%02d", year, month);
  return buf;
}

MonthKey MonthKey::from_yyyymm(std::string_view token) {
  if (token.size() != 6)
    throw std::runtime_error("invalid month '" + std::string(token) + "': expected YYYYMM");
  const int ym = parse_int(token);
  const MonthKey key{ym / 100, ym % 100};
  if (key.month < 1 || key.month > 12)
    throw std::runtime_error("invalid month '" + std::string(token) + "': month out of 1..12");
  return key;
}

MonthKey MonthKey::from_iso_date(std::string_view token) {
  if (token.size() < 7 || token[4] != '-')
    throw std::runtime_error("invalid date '" + std::string(token) + "': expected YYYY-MM-DD");
  const int year = parse_int(token.substr(0, 4));
  const int month = parse_int(token.substr(5, 2));
  if (month < 1 || month > 12)
    throw std::runtime_error("invalid date '" + std::string(token) + "': month out of 1..12");
  return {year, month};
}

void MonthlySeries::validate(const std::string& name) const {
  if (months.size() != values.size())
    throw std::runtime_error(name + ": months/values length mismatch");
  if (months.empty()) throw std::runtime_error(name + ": no observations");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw std::runtime_error(name + ": non-finite value at " + months[i].str());
    if (i > 0 && months[i] != months[i - 1].next()) {
      if (months[i] <= months[i - 1])
        throw std::runtime_error(name + ": months not strictly increasing at " + months[i].str());
      throw std::runtime_error(name + ": gap between " + months[i - 1].str() + " and " +
                               months[i].str());
    }
  }
}

MonthlySeries MonthlySeries::slice(MonthKey from, MonthKey to, const std::string& name) const {
  if (empty() || from < first() || to > last() || to < from)
    throw std::runtime_error(name + ": does not cover requested range " + from.str() + ".." +
                             to.str());
  MonthlySeries out;
  for (std::size_t i = 0; i < months.size(); ++i) {
    if (months[i] < from || to < months[i]) continue;
    out.months.push_back(months[i]);
    out.values.push_back(values[i]);
  }
  return out;
}

}  // namespace sizevix
