#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "csheaf/cyclo.hpp"
#include "csheaf/groups.hpp"

// Independent floating-point references used to cross-check exact results.
namespace oracle {

inline std::complex<double> eval(const csheaf::Cyclo& z) {
  const double pi = std::acos(-1.0);
  int m = z.order();
  std::complex<double> acc = 0;
  for (size_t i = 0; i < z.coeffs().size(); ++i) {
    double a = 2 * pi * static_cast<double>(i) / m;
    acc += z.coeffs()[i].get_d() * std::complex<double>(std::cos(a), std::sin(a));
  }
  return acc;
}

inline bool close(const csheaf::Cyclo& z, std::complex<double> w, double tol = 1e-8) {
  return std::abs(eval(z) - w) <= tol * (1 + std::abs(w));
}

// Character degrees of g, from eigenvectors of a random combination of class matrices.
// A generic combination has simple eigenvalues; each eigenvector v (normalized so v[0] = 1)
// is omega_chi(C_j) = |C_j| chi(g_j) / chi(1), and chi(1)^2 = |G| / sum_j |omega_j|^2 / |C_j|.
struct Eigenbasis {
  std::vector<long> degrees;
  std::vector<std::vector<double>> absValues;  // |chi(g_j)| per character, rows sorted
};

// A generic combination has simple eigenvalues; each eigenvector v (normalized so v[0] = 1)
// is omega_chi(C_j) = |C_j| chi(g_j) / chi(1), and chi(1)^2 = |G| / sum_j |omega_j|^2 / |C_j|.
inline Eigenbasis classMatrixEigenbasis(const csheaf::FiniteGroup& g) {
  const auto& cl = g.classes();
  int k = static_cast<int>(cl.count());
  std::vector<Eigen::MatrixXd> mats(k, Eigen::MatrixXd::Zero(k, k));
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < k; ++c) {
      int z = cl.reps[c];
      for (int x : cl.members[i]) mats[i](cl.classOf[g.mul(g.inv(x), z)], c) += 1;
    }
  // omega_i omega_j = sum_c M_i(j, c) omega_c, so omega is a right eigenvector of each M_i.
  Eigen::MatrixXd comb = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) comb += std::sin(1.0 + 0.7 * i * i) * mats[i];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comb);
  Eigenbasis out;
  for (int e = 0; e < k; ++e) {
    Eigen::VectorXcd v = es.eigenvectors().col(e);
    v /= v[0];
    double s = 0;
    for (int j = 0; j < k; ++j) s += std::norm(v[j]) / static_cast<double>(cl.sizes[j]);
    double deg = std::sqrt(static_cast<double>(g.order()) / s);
    out.degrees.push_back(std::lround(deg));
    std::vector<double> row;
    // rounded so that the sort is stable under floating-point noise
    for (int j = 0; j < k; ++j) row.push_back(std::round(std::abs(v[j]) * deg / static_cast<double>(cl.sizes[j]) * 1e6) / 1e6);
    out.absValues.push_back(std::move(row));
  }
  std::sort(out.degrees.begin(), out.degrees.end());
  std::sort(out.absValues.begin(), out.absValues.end());
  return out;
}

// Character degrees of g, from eigenvectors of a random combination of class matrices.
inline std::vector<long> characterDegrees(const csheaf::FiniteGroup& g) { return classMatrixEigenbasis(g).degrees; }

}  // namespace oracle
