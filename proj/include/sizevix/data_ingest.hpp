#pragma once

#include <array>
#include <filesystem>
#include <utility>

#include "sizevix/month.hpp"

namespace sizevix {

// Ten size-sorted portfolios (1 = smallest, 10 = largest benchmark), three
// monthly series each: average market cap ($M), price return (%/month,
// simple) and total return (%/month, simple). All 30 series must share one
// contiguous month range; sizes must be strictly positive.
struct DecilePanel {
  std::array<MonthlySeries, 10> size;
  std::array<MonthlySeries, 10> price_return;
  std::array<MonthlySeries, 10> total_return;

  void validate() const;
  std::pair<MonthKey, MonthKey> range() const;
};

// Decile panel aligned with the volatility index (index points) and the
// annualized short-rate (%); every series covers exactly `range`.
struct MonthlyPanel {
  DecilePanel deciles;
  MonthlySeries vix;
  MonthlySeries riskfree;
  std::pair<MonthKey, MonthKey> range;

  void validate() const;
};

// Per-month model inputs derived from a panel. For T panel months there are
// T-1 return observations (indexed by the month the return starts in) and
// T relative-size observations. All returns are on the log scale and the
// volatility series is rescaled to index/100.
struct ModelDataset {
  std::vector<MonthKey> months;                // length T
  std::vector<double> vol;                     // length T-1, VIX/100
  std::vector<double> bench_return;            // length T-1, log price return of decile 10
  std::vector<double> bench_premium;           // length T-1
  std::array<std::vector<double>, 9> ret;      // deciles 1..9, length T-1
  std::array<std::vector<double>, 9> premium;  // deciles 1..9, length T-1
  std::array<std::vector<double>, 9> rel_size; // deciles 1..9, length T

  std::size_t n_obs() const { return bench_return.size(); }
};

// Reads sizes.csv / price_returns.csv / total_returns.csv from `dir`; each
// file is one header row then rows `YYYYMM,d1,...,d10`.
DecilePanel load_french_deciles(const std::filesystem::path& dir);

// Writes the three files in the exact format load_french_deciles reads.
void save_french_deciles(const DecilePanel& panel, const std::filesystem::path& dir);

// Two-column export CSV: header `DATE,<anything>` or `observation_date,...`,
// dates YYYY-MM-DD, one observation per month. A "." value (the exporter's
// missing-data marker) and duplicate months are hard errors.
MonthlySeries load_fred_series(const std::filesystem::path& file, const std::string& name);

// Aligns the three sources on the intersection of their ranges.
MonthlyPanel assemble_panel(DecilePanel deciles, MonthlySeries vix, MonthlySeries riskfree);

ModelDataset build_dataset(const MonthlyPanel& panel);

}  // namespace sizevix
