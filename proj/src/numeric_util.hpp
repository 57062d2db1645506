#pragma once

// Small numeric helpers shared by the equilibrium and blow-up code.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "emdyn/polyalg.hpp"

namespace emdyn::detail {

// Best rational approximations of x with denominator up to max_den, keeping
// only those within 1e-7 relative of x.
inline std::vector<Rational> convergents(double x, long max_den) {
  std::vector<Rational> out;
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  double v = x;
  for (int i = 0; i < 40 && std::isfinite(v); ++i) {
    double a = std::floor(v);
    if (std::abs(a) > 1e15) break;
    mpz_class ai(a);
    mpz_class h = ai * h0 + h1, k = ai * k0 + k1;
    if (k > max_den) break;
    Rational q(h, k);
    q.canonicalize();
    if (std::abs(q.get_d() - x) <= 1e-7 * (1 + std::abs(x))) out.push_back(q);
    h1 = h0; h0 = h; k1 = k0; k0 = k;
    double frac = v - a;
    if (frac == 0) break;
    v = 1 / frac;
  }
  return out;
}

// Real roots of sum coeffs[k] u^k, with multiplicities from clustering.
inline std::vector<std::pair<double, int>> real_roots(std::vector<double> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  std::vector<std::pair<double, int>> out;
  int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) return out;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -coeffs[i] / coeffs[n];
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) {
    auto l = es.eigenvalues()[i];
    if (std::abs(l.imag()) <= 1e-7 * (1 + std::abs(l.real()))) xs.push_back(l.real());
  }
  std::sort(xs.begin(), xs.end());
  for (double x : xs) {
    if (!out.empty() && std::abs(out.back().first - x) <= 1e-7 * (1 + std::abs(x))) ++out.back().second;
    else out.push_back({x, 1});
  }
  return out;
}

}  // namespace emdyn::detail
