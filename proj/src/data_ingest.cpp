#include "sizevix/data_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sizevix/csv.hpp"

namespace sizevix {

namespace {

constexpr std::array<const char*, 3> kDecileFiles = {"sizes.csv", "price_returns.csv",
                                                     "total_returns.csv"};

std::array<MonthlySeries, 10> load_decile_file(const std::filesystem::path& file) {
  const auto rows = read_csv(file);
  if (rows.size() < 2) throw std::runtime_error(file.string() + ": no data rows");
  std::array<MonthlySeries, 10> series;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 11) {
      std::ostringstream msg;
      msg << file.string() << " row " << r + 1 << ": expected 10 value columns, got "
          << (row.empty() ? 0 : row.size() - 1);
      throw std::runtime_error(msg.str());
    }
    MonthKey key;
    try {
      key = MonthKey::from_yyyymm(row[0]);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << file.string() << " row " << r + 1 << ": " << e.what();
      throw std::runtime_error(msg.str());
    }
    for (int d = 0; d < 10; ++d) {
      const std::string context = file.string() + " row " + std::to_string(r + 1);
      series[d].months.push_back(key);
      series[d].values.push_back(parse_double(row[d + 1], context));
    }
  }
  return series;
}

double monthly_log_riskfree(double annual_percent) {
  return std::log1p(annual_percent / 100.0) / 12.0;
}

}  // namespace

void DecilePanel::validate() const {
  const auto check_block = [this](const std::array<MonthlySeries, 10>& block, const char* what) {
    for (int d = 0; d < 10; ++d) {
      const std::string name = std::string(what) + " decile " + std::to_string(d + 1);
      block[d].validate(name);
      if (block[d].first() != size[0].first() || block[d].last() != size[0].last())
        throw std::runtime_error(name + ": month range differs from decile-1 sizes");
    }
  };
  check_block(size, "size");
  check_block(price_return, "price return");
  check_block(total_return, "total return");
  for (int d = 0; d < 10; ++d)
    for (std::size_t i = 0; i < size[d].values.size(); ++i)
      if (!(size[d].values[i] > 0.0))
        throw std::runtime_error("size decile " + std::to_string(d + 1) +
                                 ": nonpositive size at " + size[d].months[i].str());
}

std::pair<MonthKey, MonthKey> DecilePanel::range() const {
  return {size[0].first(), size[0].last()};
}

void MonthlyPanel::validate() const {
  deciles.validate();
  vix.validate("vix");
  riskfree.validate("riskfree");
  const auto check_range = [this](const MonthlySeries& s, const char* name) {
    if (s.first() != range.first || s.last() != range.second)
      throw std::runtime_error(std::string(name) + ": does not cover the panel range exactly");
  };
  check_range(deciles.size[0], "deciles");
  check_range(vix, "vix");
  check_range(riskfree, "riskfree");
  for (double v : vix.values)
    if (!(v > 0.0)) throw std::runtime_error("vix: nonpositive value");
}

DecilePanel load_french_deciles(const std::filesystem::path& dir) {
  DecilePanel panel;
  panel.size = load_decile_file(dir / kDecileFiles[0]);
  panel.price_return = load_decile_file(dir / kDecileFiles[1]);
  panel.total_return = load_decile_file(dir / kDecileFiles[2]);
  panel.validate();
  return panel;
}

void save_french_deciles(const DecilePanel& panel, const std::filesystem::path& dir) {
  panel.validate();
  const std::array<const std::array<MonthlySeries, 10>*, 3> blocks = {
      &panel.size, &panel.price_return, &panel.total_return};
  for (int b = 0; b < 3; ++b) {
    std::string out = "month,d1,d2,d3,d4,d5,d6,d7,d8,d9,d10\n";
    const auto& block = *blocks[b];
    for (std::size_t i = 0; i < block[0].size(); ++i) {
      out += block[0].months[i].str();
      for (int d = 0; d < 10; ++d) {
        out += ',';
        out += format_double(block[d].values[i]);
      }
      out += '\n';
    }
    write_text_file(dir / kDecileFiles[b], out);
  }
}

MonthlySeries load_fred_series(const std::filesystem::path& file, const std::string& name) {
  const auto rows = read_csv(file);
  if (rows.empty()) throw std::runtime_error(name + ": no observations in " + file.string());
  std::size_t start = 0;
  if (!rows[0].empty()) {
    std::string head = rows[0][0];
    std::transform(head.begin(), head.end(), head.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (head == "date" || head == "observation_date") start = 1;
  }
  if (rows.size() <= start) throw std::runtime_error(name + ": no observations in " + file.string());
  MonthlySeries series;
  for (std::size_t r = start; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 2)
      throw std::runtime_error(name + " row " + std::to_string(r + 1) +
                               ": expected DATE,VALUE");
    const MonthKey key = MonthKey::from_iso_date(row[0]);
    if (!series.months.empty() && key <= series.months.back()) {
      if (key == series.months.back())
        throw std::runtime_error(name + ": duplicate month " + key.str());
      throw std::runtime_error(name + ": months out of order at " + key.str());
    }
    if (row[1] == ".")
      throw std::runtime_error(name + ": missing value (\".\") at " + key.str());
    series.months.push_back(key);
    series.values.push_back(parse_double(row[1], name + " " + key.str()));
  }
  series.validate(name);
  return series;
}

MonthlyPanel assemble_panel(DecilePanel deciles, MonthlySeries vix, MonthlySeries riskfree) {
  deciles.validate();
  vix.validate("vix");
  riskfree.validate("riskfree");
  const auto [dfirst, dlast] = deciles.range();
  const MonthKey from = std::max({dfirst, vix.first(), riskfree.first()});
  const MonthKey to = std::min({dlast, vix.last(), riskfree.last()});
  if (to < from) throw std::runtime_error("panel sources have no common months");
  MonthlyPanel panel;
  if (from != dfirst || to != dlast) {
    for (int d = 0; d < 10; ++d) {
      panel.deciles.size[d] = deciles.size[d].slice(from, to, "size");
      panel.deciles.price_return[d] = deciles.price_return[d].slice(from, to, "price return");
      panel.deciles.total_return[d] = deciles.total_return[d].slice(from, to, "total return");
    }
  } else {
    panel.deciles = std::move(deciles);
  }
  panel.vix = vix.slice(from, to, "vix");
  panel.riskfree = riskfree.slice(from, to, "riskfree");
  panel.range = {from, to};
  panel.validate();
  return panel;
}

ModelDataset build_dataset(const MonthlyPanel& panel) {
  panel.validate();
  const std::size_t t_len = panel.vix.size();
  if (t_len < 2) throw std::runtime_error("build_dataset: need at least 2 months");
  ModelDataset ds;
  ds.months = panel.vix.months;
  const std::size_t n = t_len - 1;

  ds.vol.reserve(n);
  for (std::size_t t = 0; t < n; ++t) ds.vol.push_back(panel.vix.values[t] / 100.0);

  const auto& bench_size = panel.deciles.size[9];
  const auto log_return = [](const MonthlySeries& s, std::size_t t) {
    return std::log(s.values[t + 1] / s.values[t]);
  };
  const auto log_premium = [&panel](const MonthlySeries& total, std::size_t t) {
    return std::log1p(total.values[t] / 100.0) -
           monthly_log_riskfree(panel.riskfree.values[t]);
  };

  ds.bench_return.reserve(n);
  ds.bench_premium.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    ds.bench_return.push_back(log_return(bench_size, t));
    ds.bench_premium.push_back(log_premium(panel.deciles.total_return[9], t));
  }

  for (int d = 0; d < 9; ++d) {
    auto& r = ds.ret[d];
    auto& p = ds.premium[d];
    auto& c = ds.rel_size[d];
    r.reserve(n);
    p.reserve(n);
    c.reserve(t_len);
    const auto& target_size = panel.deciles.size[d];
    for (std::size_t t = 0; t < t_len; ++t)
      c.push_back(std::log(target_size.values[t] / bench_size.values[t]));
    for (std::size_t t = 0; t < n; ++t) {
      r.push_back(log_return(target_size, t));
      p.push_back(log_premium(panel.deciles.total_return[d], t));
    }
  }
  return ds;
}

}  // namespace sizevix
