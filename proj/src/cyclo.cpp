#include "csheaf/cyclo.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace csheaf {

long gcdl(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long lcml(long a, long b) { return a / gcdl(a, b) * b; }

Rational frac(long a, long b) {
  if (b == 0) throw CycloError("division by zero");
  Rational r(a, b);
  r.canonicalize();
  return r;
}

int eulerPhi(int m) {
  int result = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

int normalizeOrder(int m) {
  if (m <= 0) throw CycloError("cyclotomic order must be positive");
  if (m % 4 == 2) m /= 2;
  if (m > kMaxCycloOrder) throw CycloError("cyclotomic order exceeds cap: " + std::to_string(m));
  return m;
}

const std::vector<long>& cyclotomicPolynomial(int m) {
  static std::mutex mu;
  static std::map<int, std::vector<long>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  // x^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<long> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    const std::vector<long>& den = cyclotomicPolynomial(d);
    int dn = static_cast<int>(num.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    std::vector<long> q(dn - dd + 1, 0);
    for (int i = dn; i >= dd; --i) {
      long c = num[i];
      q[i - dd] = c;
      if (c == 0) continue;
      for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    num = std::move(q);
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(m, std::move(num)).first->second;
}

namespace {

// Remainder of v modulo Phi_m, as phi(m) coefficients.
std::vector<Rational> reduceMod(int m, std::vector<Rational> v) {
  const std::vector<long>& phi = cyclotomicPolynomial(m);
  int deg = static_cast<int>(phi.size()) - 1;
  for (int i = static_cast<int>(v.size()) - 1; i >= deg; --i) {
    if (sgn(v[i]) == 0) continue;
    Rational c = v[i];
    for (int j = 0; j < deg; ++j) {
      if (phi[j] != 0) v[i - deg + j] -= c * phi[j];
    }
    v[i] = 0;
  }
  v.resize(deg);
  return v;
}

std::vector<long> divisors(int n) {
  std::vector<long> out;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// Solve A x = b over Q where A has full column rank and b lies in its column space.
std::optional<std::vector<Rational>> solveExact(std::vector<std::vector<Rational>> a,
                                                std::vector<Rational> b) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  std::vector<size_t> pivotCol;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    Rational inv = 1 / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivotCol.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (sgn(b[i]) != 0) return std::nullopt;
  std::vector<Rational> x(cols);
  for (size_t i = 0; i < r; ++i) x[pivotCol[i]] = b[i];
  return x;
}

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly polySub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Poly polyMul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

void polyDivMod(Poly a, const Poly& b, Poly& q, Poly& r) {
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  Rational lead = b.back();
  for (int i = static_cast<int>(a.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
    if (sgn(a[i]) == 0) continue;
    Rational c = a[i] / lead;
    size_t shift = i - (b.size() - 1);
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  trim(a);
  r = std::move(a);
  trim(q);
}

}  // namespace

Cyclo Cyclo::fromPowers(int m, const std::vector<Rational>& c) {
  if (m <= 0) throw CycloError("cyclotomic order must be positive");
  if (m % 4 == 2) {
    // zeta_{2k}^i = (-1)^i zeta_k^{i(k+1)/2} for odd k.
    int k = m / 2;
    std::vector<Rational> folded(k);
    for (size_t i = 0; i < c.size(); ++i) {
      if (sgn(c[i]) == 0) continue;
      long e = static_cast<long>(i % m) * ((k + 1) / 2) % k;
      if ((i % m) % 2 == 0)
        folded[e] += c[i];
      else
        folded[e] -= c[i];
    }
    return fromPowers(k, folded);
  }
  m = normalizeOrder(m);
  std::vector<Rational> v(std::max<size_t>(m, 1));
  for (size_t i = 0; i < c.size(); ++i) v[i % m] += c[i];
  return Cyclo(m, reduceMod(m, std::move(v)));
}

Cyclo Cyclo::fromCoeffs(int m, std::vector<Rational> c) {
  if (m % 4 == 2) return fromPowers(m, c);
  m = normalizeOrder(m);
  if (static_cast<int>(c.size()) != eulerPhi(m)) throw CycloError("coefficient vector length must equal phi(m)");
  return Cyclo(m, std::move(c));
}

Cyclo Cyclo::zeta(int m, long k) {
  long e = ((k % m) + m) % m;
  std::vector<Rational> v(e + 1);
  v[e] = 1;
  return fromPowers(m, v);
}

bool Cyclo::isZero() const {
  for (const auto& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

bool Cyclo::isRational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

Rational Cyclo::rational() const {
  if (!isRational()) throw CycloError("value is not rational: " + str());
  return c_[0];
}

Cyclo Cyclo::galois(long k) const {
  if (order_ == 1) return *this;
  long kk = ((k % order_) + order_) % order_;
  if (gcdl(kk, order_) != 1) throw CycloError("galois exponent not coprime to order");
  std::vector<Rational> v(order_);
  for (size_t i = 0; i < c_.size(); ++i) v[(i * kk) % order_] += c_[i];
  return Cyclo(order_, reduceMod(order_, std::move(v)));
}

Cyclo Cyclo::embed(int m) const {
  if (m <= 0 || (normalizeOrder(m) % order_ != 0 && m % order_ != 0))
    throw CycloError("embed target " + std::to_string(m) + " is not a multiple of " + std::to_string(order_));
  int target = normalizeOrder(m);
  if (target == order_) return *this;
  int step = target / order_;
  std::vector<Rational> v(target);
  for (size_t i = 0; i < c_.size(); ++i) v[i * step] = c_[i];
  return Cyclo(target, reduceMod(target, std::move(v)));
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

namespace {
int commonOrder(int a, int b) { return normalizeOrder(static_cast<int>(lcml(a, b))); }
}  // namespace

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  if (o.order_ != order_) {
    int m = commonOrder(order_, o.order_);
    *this = embed(m);
    Cyclo b = o.embed(m);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    return *this;
  }
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  if (o.order_ == 1) {
    for (auto& x : c_) x *= o.c_[0];
    return *this;
  }
  if (order_ == 1) {
    Rational s = c_[0];
    *this = o;
    for (auto& x : c_) x *= s;
    return *this;
  }
  int m = commonOrder(order_, o.order_);
  Cyclo a = embed(m);
  Cyclo b = o.embed(m);
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (sgn(b.c_[j]) == 0) continue;
      v[i + j] += a.c_[i] * b.c_[j];
    }
  }
  *this = Cyclo(m, reduceMod(m, std::move(v)));
  return *this;
}

Cyclo Cyclo::inverse() const {
  if (isZero()) throw CycloError("division by zero");
  if (order_ == 1) return Cyclo(Rational(1 / c_[0]));
  const std::vector<long>& phi = cyclotomicPolynomial(order_);
  Poly r0(phi.begin(), phi.end());
  for (size_t i = 0; i < phi.size(); ++i) r0[i] = Rational(phi[i]);
  Poly r1 = c_;
  trim(r1);
  Poly u0, u1{Rational(1)};
  while (r1.size() > 1) {
    Poly q, r;
    polyDivMod(r0, r1, q, r);
    Poly u2 = polySub(u0, polyMul(q, u1));
    r0 = std::move(r1);
    r1 = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r1.empty()) throw CycloError("element not invertible");
  Rational c = r1[0];
  for (auto& x : u1) x /= c;
  return fromPowers(order_, u1);
}

Cyclo& Cyclo::operator/=(const Cyclo& o) {
  if (o.isZero()) throw CycloError("division by zero");
  return *this *= o.inverse();
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.order_ == b.order_) return a.c_ == b.c_;
  return (a - b).isZero();
}

int Cyclo::compare(const Cyclo& a, const Cyclo& b) {
  int m = commonOrder(a.order_, b.order_);
  Cyclo x = a.embed(m), y = b.embed(m);
  for (size_t i = 0; i < x.c_.size(); ++i) {
    int c = cmp(x.c_[i], y.c_[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

std::optional<std::pair<int, int>> Cyclo::rootOfUnity() const {
  if (*this * conjugate() != Cyclo(1)) return std::nullopt;
  int n = order_;
  // Work in exponents of zeta_{2n}; -zeta_n^k = zeta_{2n}^{2k+n}.
  for (int k = 0; k < n; ++k) {
    Cyclo z = zeta(n, k);
    for (int sign = 0; sign < 2; ++sign) {
      Cyclo cand = sign ? -z : z;
      if (cand != *this) continue;
      long e = (2L * k + (sign ? n : 0)) % (2L * n);
      long g = gcdl(e, 2L * n);
      if (e == 0) return std::make_pair(1, 0);
      int ord = static_cast<int>(2L * n / g);
      return std::make_pair(ord, static_cast<int>(e / g));
    }
  }
  return std::nullopt;
}

int Cyclo::conductor() const {
  if (isRational()) return 1;
  int n = order_;
  for (long d : divisors(n)) {
    if (d == n) return n;
    if (d % 4 == 2 || d == 1) continue;
    bool fixed = true;
    for (long k = d + 1; k < n && fixed; k += d) {
      if (gcdl(k, n) == 1 && galois(k) != *this) fixed = false;
    }
    if (fixed) return static_cast<int>(d);
  }
  return n;
}

Cyclo Cyclo::inMinimalField() const {
  int d = conductor();
  if (d == order_) return *this;
  if (d == 1) return Cyclo(c_[0]);
  int phiD = eulerPhi(d);
  size_t rows = c_.size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(phiD));
  for (int j = 0; j < phiD; ++j) {
    Cyclo col = zeta(d, j).embed(order_);
    for (size_t i = 0; i < rows; ++i) a[i][j] = col.c_[i];
  }
  auto x = solveExact(std::move(a), c_);
  if (!x) throw CycloError("internal: subfield solve failed");
  return Cyclo(d, std::move(*x));
}

bool Cyclo::inRing(int m, int p) const {
  int target = normalizeOrder(m);
  if (target % conductor() != 0) return false;
  for (const auto& x : c_) {
    mpz_class den = x.get_den();
    if (p > 1) {
      while (den % p == 0) den /= p;
    }
    if (den != 1) return false;
  }
  return true;
}

std::complex<double> Cyclo::approx() const {
  std::complex<double> s = 0;
  for (size_t i = 0; i < c_.size(); ++i) {
    double ang = 2.0 * std::numbers::pi * static_cast<double>(i) / order_;
    s += c_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

std::string Cyclo::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    Rational c = c_[i];
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (i == 0) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << "*";
    os << "z" << order_;
    if (i > 1) os << "^" << i;
  }
  if (first) return "0";
  return os.str();
}

Cyclo gaussSumLambda(int p) {
  if (p == 2) return Cyclo(1) + Cyclo::zeta(4);
  std::vector<Rational> v(p);
  for (int a = 1; a < p; ++a) {
    long base = a, e = (p - 1) / 2, r = 1;
    while (e > 0) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    v[a] = (r == 1) ? 1 : -1;
  }
  return Cyclo::fromPowers(p, v);
}

}  // namespace csheaf
