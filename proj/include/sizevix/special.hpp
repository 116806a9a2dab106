#pragma once

#include <functional>
#include <vector>

namespace sizevix {

double normal_pdf(double x);
double normal_cdf(double x);
double normal_sf(double x);

// Regularized incomplete gamma P(a, x) and its complement Q(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

double chi2_cdf(double x, double dof);
double chi2_sf(double x, double dof);
double chi2_quantile(double p, double dof);

// Two-sided p-value of a Student-t statistic with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);
double student_t_quantile(double p, double dof);

// Survival function of the Kolmogorov distribution, P(sup|B| > lambda).
double kolmogorov_sf(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

// One-sample Kolmogorov-Smirnov test against a continuous CDF; the p-value
// is the asymptotic Kolmogorov one.
KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);

}  // namespace sizevix
