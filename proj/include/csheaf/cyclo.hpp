#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace csheaf {

using Rational = mpq_class;

class CycloError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kMaxCycloOrder = 10000;

// Element of Q(mu_m) in the power basis 1, z, ..., z^(phi(m)-1) reduced mod Phi_m.
// Orders m = 2 (mod 4) are folded into m/2, so Q(mu_6) and Q(mu_3) share a representation.
class Cyclo {
 public:
  Cyclo() : order_(1), c_(1) {}
  Cyclo(long n) : order_(1), c_{Rational(n)} {}
  Cyclo(const Rational& r) : order_(1), c_{r} {}

  static Cyclo zeta(int m, long k = 1);
  // Sum of c[i] * zeta_m^i for 0 <= i < c.size(); c may be longer than phi(m).
  static Cyclo fromPowers(int m, const std::vector<Rational>& c);
  static Cyclo fromCoeffs(int m, std::vector<Rational> c);

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool isZero() const;
  bool isRational() const;
  Rational rational() const;

  Cyclo conjugate() const { return galois(-1); }
  Cyclo galois(long k) const;
  Cyclo embed(int m) const;
  Cyclo inverse() const;

  // (n, k) with z = zeta_n^k, gcd(k, n) = 1 and n minimal.
  std::optional<std::pair<int, int>> rootOfUnity() const;
  // Smallest d with z in Q(mu_d).
  int conductor() const;
  Cyclo inMinimalField() const;
  // z in Z[mu_m, 1/p]; p <= 1 means no prime is inverted.
  bool inRing(int m, int p) const;

  std::complex<double> approx() const;
  std::string str() const;

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator/=(const Cyclo& o);
  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }
  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  // Total order used for deterministic sorting: by coefficient vectors in Q(mu_lcm).
  static int compare(const Cyclo& a, const Cyclo& b);

 private:
  Cyclo(int m, std::vector<Rational> c) : order_(m), c_(std::move(c)) {}
  int order_;
  std::vector<Rational> c_;
};

// Canonicalized a/b.
Rational frac(long a, long b);

int eulerPhi(int m);
int normalizeOrder(int m);
long gcdl(long a, long b);
long lcml(long a, long b);
// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomicPolynomial(int m);

// Legendre-symbol Gauss sum sum_{a in F_p^x} (a/p) zeta_p^a for odd p; 1+i for p = 2.
Cyclo gaussSumLambda(int p);

}  // namespace csheaf
