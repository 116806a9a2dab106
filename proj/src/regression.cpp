#include "sizevix/regression.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "sizevix/special.hpp"

namespace sizevix {

OlsFit ols_fit(const std::vector<std::vector<double>>& columns, const std::vector<double>& y) {
  const std::size_t p = columns.size();
  const std::size_t n = y.size();
  if (p < 1) throw std::invalid_argument("ols_fit: no predictor columns");
  for (const auto& col : columns)
    if (col.size() != n) throw std::invalid_argument("ols_fit: column length != y length");
  if (n <= p) throw std::invalid_argument("ols_fit: insufficient data (n <= p)");

  Eigen::MatrixXd x(n, p);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = 0; i < n; ++i) x(i, j) = columns[j][i];
  Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(n));

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < 1e-10 * sv(0))
    throw std::runtime_error("ols_fit: design matrix is rank deficient");

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::VectorXd beta = qr.solve(yv);
  const Eigen::VectorXd resid = yv - x * beta;

  OlsFit fit;
  fit.n = n;
  fit.p = p;
  fit.coefficients.assign(beta.data(), beta.data() + p);
  fit.residuals.assign(resid.data(), resid.data() + n);

  const double dof = static_cast<double>(n - p);
  fit.s2 = resid.squaredNorm() / dof;
  fit.s2_ci95 = {dof * fit.s2 / chi2_quantile(0.975, dof),
                 dof * fit.s2 / chi2_quantile(0.025, dof)};

  // (X'X)^-1 from the triangular factor of the QR decomposition.
  const Eigen::MatrixXd r =
      qr.matrixQR().topRows(p).template triangularView<Eigen::Upper>();
  const Eigen::MatrixXd rinv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd xtx_inv = rinv * rinv.transpose();

  fit.std_errors.resize(p);
  fit.t_pvalues.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    fit.std_errors[j] = std::sqrt(fit.s2 * xtx_inv(j, j));
    const double t = fit.coefficients[j] / fit.std_errors[j];
    fit.t_pvalues[j] = student_t_two_sided_p(t, dof);
  }
  return fit;
}

double ljung_box_abs(const std::vector<double>& residuals, std::size_t lags) {
  const std::size_t n = residuals.size();
  if (lags < 1) throw std::invalid_argument("ljung_box_abs: need lags >= 1");
  if (n <= lags) throw std::invalid_argument("ljung_box_abs: need more observations than lags");

  std::vector<double> a(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = std::abs(residuals[i]);
    mean += a[i];
  }
  mean /= static_cast<double>(n);
  double c0 = 0.0;
  for (double& v : a) {
    v -= mean;
    c0 += v * v;
  }
  if (c0 == 0.0) throw std::runtime_error("ljung_box_abs: |residuals| has zero variance");

  double q = 0.0;
  const double nd = static_cast<double>(n);
  for (std::size_t k = 1; k <= lags; ++k) {
    double ck = 0.0;
    for (std::size_t i = k; i < n; ++i) ck += a[i] * a[i - k];
    const double rho = ck / c0;
    q += rho * rho / (nd - static_cast<double>(k));
  }
  q *= nd * (nd + 2.0);
  return chi2_sf(q, static_cast<double>(lags));
}

double jarque_bera(const std::vector<double>& residuals) {
  const std::size_t n = residuals.size();
  if (n < 4) throw std::invalid_argument("jarque_bera: need at least 4 observations");
  const double nd = static_cast<double>(n);
  double mean = 0.0;
  for (double v : residuals) mean += v;
  mean /= nd;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : residuals) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= nd;
  m3 /= nd;
  m4 /= nd;
  if (m2 == 0.0) throw std::runtime_error("jarque_bera: zero variance");
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2);
  const double jb = nd / 6.0 * (skew * skew + 0.25 * (kurt - 3.0) * (kurt - 3.0));
  return std::exp(-0.5 * jb);
}

namespace {

SizeCapmFit fit_size_capm(const ModelDataset& ds, int decile, FitKind kind) {
  if (decile < 1 || decile > 9)
    throw std::invalid_argument("size-CAPM fit: decile must be in 1..9");
  const std::size_t n = ds.n_obs();
  if (n < 30) throw std::invalid_argument("size-CAPM fit: need at least 30 observations");

  const auto& target = kind == FitKind::Returns ? ds.ret[decile - 1] : ds.premium[decile - 1];
  const auto& bench = kind == FitKind::Returns ? ds.bench_return : ds.bench_premium;
  const auto& c = ds.rel_size[decile - 1];

  std::vector<double> y(n), ones(n, 1.0), c_col(n), cross(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double v = ds.vol[t];
    y[t] = (target[t] - bench[t]) / v;
    c_col[t] = c[t];
    cross[t] = c[t] * bench[t] / v;
  }

  const OlsFit ols = ols_fit({ones, c_col, cross}, y);

  SizeCapmFit fit;
  fit.decile = decile;
  fit.kind = kind;
  fit.intercept = ols.coefficients[0];
  fit.alpha_slope = ols.coefficients[1];
  fit.beta_slope = ols.coefficients[2];
  fit.s2 = ols.s2;
  fit.s2_ci95 = ols.s2_ci95;
  fit.t_pvalues = {ols.t_pvalues[0], ols.t_pvalues[1], ols.t_pvalues[2]};
  fit.ljung_box_p = ljung_box_abs(ols.residuals);
  fit.jarque_bera_p = jarque_bera(ols.residuals);
  fit.residuals = ols.residuals;
  return fit;
}

}  // namespace

SizeCapmFit fit_returns_model(const ModelDataset& ds, int decile) {
  return fit_size_capm(ds, decile, FitKind::Returns);
}

SizeCapmFit fit_premia_model(const ModelDataset& ds, int decile) {
  return fit_size_capm(ds, decile, FitKind::Premia);
}

}  // namespace sizevix
