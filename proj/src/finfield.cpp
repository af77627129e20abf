#include "csheaf/finfield.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace csheaf {

bool isPrime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long modInverse(long a, long p) {
  long r = 1, e = p - 2;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

Poly polyMod(Poly a, const Poly& b, int p) {
  trim(a);
  long lead = modInverse(b.back(), p);
  while (a.size() >= b.size()) {
    long c = a.back() * lead % p;
    size_t shift = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] = static_cast<int>(((a[shift + j] - c * b[j]) % p + p) % p);
    trim(a);
  }
  return a;
}

Poly polyMulMod(const Poly& a, const Poly& b, const Poly& f, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = static_cast<int>((r[i + j] + 1L * a[i] * b[j]) % p);
  return polyMod(r, f, p);
}

Poly polyGcd(Poly a, Poly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = polyMod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// f is irreducible iff gcd(f, x^(p^k) - x) = 1 for all k <= d/2.
bool isIrreducible(const Poly& f, int p) {
  int d = static_cast<int>(f.size()) - 1;
  Poly xpow{0, 1};
  for (int k = 1; k <= d / 2; ++k) {
    Poly base = xpow, acc{1};
    for (int e = p; e > 0; e >>= 1) {
      if (e & 1) acc = polyMulMod(acc, base, f, p);
      base = polyMulMod(base, base, f, p);
    }
    xpow = acc;
    Poly diff = xpow;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] - 1 + p) % p;
    trim(diff);
    Poly g = polyGcd(f, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace

FiniteField::FiniteField(int p, int d) : p_(p), d_(d) {
  if (!isPrime(p)) throw FieldError("field characteristic is not prime: " + std::to_string(p));
  if (d < 1) throw FieldError("field degree must be positive");
  std::uint64_t sz = 1;
  for (int i = 0; i < d; ++i) {
    sz *= p;
    if (sz > kMaxFieldSize) throw CapExceeded("field size p^d exceeds 2^20");
  }
  size_ = static_cast<Elt>(sz);
  pp_.resize(d + 1);
  pp_[0] = 1;
  for (int i = 1; i <= d; ++i) pp_[i] = pp_[i - 1] * p;

  if (d == 1) {
    modulus_ = {0, 1};
  } else {
    for (Elt t = 0; t < size_; ++t) {
      Poly f(d + 1);
      Elt u = t;
      for (int i = 0; i < d; ++i) {
        f[i] = static_cast<int>(u % p);
        u /= p;
      }
      f[d] = 1;
      if (f[0] == 0) continue;
      if (isIrreducible(f, p)) {
        modulus_ = f;
        break;
      }
    }
  }

  // Multiplication in the residue ring, used only to build the log tables.
  auto mulPoly = [&](Elt a, Elt b) {
    Poly pa = digits(a), pb = digits(b);
    trim(pa);
    trim(pb);
    Poly r = polyMulMod(pa, pb, modulus_, p);
    Elt out = 0;
    for (size_t i = 0; i < r.size(); ++i) out += static_cast<Elt>(r[i]) * pp_[i];
    return out;
  };

  Elt n = size_ - 1;
  exp_.assign(2 * static_cast<size_t>(n) + 1, 0);
  log_.assign(size_, 0);
  for (Elt g = (d == 1 ? 1 : p); g < size_; ++g) {
    Elt x = 1;
    std::uint32_t ord = 0;
    do {
      exp_[ord] = x;
      x = (d == 1) ? static_cast<Elt>(1UL * x * g % p) : mulPoly(x, g);
      ++ord;
    } while (x != 1 && ord <= n);
    if (ord == n) break;
  }
  for (Elt i = 0; i < n; ++i) {
    log_[exp_[i]] = i;
    exp_[i + n] = exp_[i];
  }
}

FieldPtr FiniteField::get(int p, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  FieldPtr f(new FiniteField(p, degree));
  cache.emplace(key, f);
  return f;
}

FieldPtr buildField(int p, int degree) { return FiniteField::get(p, degree); }

FiniteField::Elt FiniteField::add(Elt a, Elt b) const {
  if (p_ == 2) return a ^ b;
  Elt out = 0;
  for (int i = 0; i < d_; ++i) {
    Elt s = (a % p_ + b % p_) % p_;
    out += s * pp_[i];
    a /= p_;
    b /= p_;
  }
  return out;
}

FiniteField::Elt FiniteField::neg(Elt a) const {
  if (p_ == 2) return a;
  Elt out = 0;
  for (int i = 0; i < d_; ++i) {
    Elt s = (p_ - a % p_) % p_;
    out += s * pp_[i];
    a /= p_;
  }
  return out;
}

FiniteField::Elt FiniteField::inv(Elt a) const {
  if (a == 0) throw FieldError("inverse of zero");
  Elt n = size_ - 1;
  return exp_[(n - log_[a]) % n];
}

FiniteField::Elt FiniteField::pow(Elt a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  std::uint64_t n = size_ - 1;
  return exp_[static_cast<std::uint64_t>(log_[a]) * (e % n) % n];
}

FiniteField::Elt FiniteField::frobeniusPower(Elt x, int k) const {
  k %= d_;
  if (k == 0 || x == 0) return x;
  return pow(x, pp_[k]);
}

FiniteField::Elt FiniteField::frobenius(Elt x, std::uint64_t q) const {
  int s = 0;
  std::uint64_t t = 1;
  while (t < q) {
    t *= p_;
    ++s;
  }
  if (t != q || s == 0 || d_ % s != 0) throw FieldError("frobenius base " + std::to_string(q) + " incompatible with " + name());
  return frobeniusPower(x, s);
}

FiniteField::Elt FiniteField::trace(Elt x, int s) const {
  if (s <= 0 || d_ % s != 0) throw FieldError("trace target degree must divide " + std::to_string(d_));
  Elt acc = 0, y = x;
  for (int i = 0; i < d_ / s; ++i) {
    acc = add(acc, y);
    y = frobeniusPower(y, s);
  }
  return acc;
}

int FiniteField::traceToPrime(Elt x, int s) const {
  if (s <= 0) s = d_;
  Elt acc = 0, y = x;
  for (int i = 0; i < s; ++i) {
    acc = add(acc, y);
    y = frobeniusPower(y, 1);
  }
  if (acc >= static_cast<Elt>(p_)) throw FieldError("element does not lie in the stated subfield");
  return static_cast<int>(acc);
}

Cyclo FiniteField::additiveCharacter(Elt x, int s) const {
  return Cyclo::zeta(p_, traceToPrime(x, s));
}

std::vector<int> FiniteField::digits(Elt x) const {
  std::vector<int> out(d_);
  for (int i = 0; i < d_; ++i) {
    out[i] = static_cast<int>(x % p_);
    x /= p_;
  }
  return out;
}

std::string FiniteField::name() const {
  std::ostringstream os;
  os << "F_" << size_;
  return os.str();
}

FqElement FqElement::operator+(const FqElement& o) const {
  if (field != o.field) throw FieldError("field mismatch");
  return {field, field->add(value, o.value)};
}
FqElement FqElement::operator-(const FqElement& o) const {
  if (field != o.field) throw FieldError("field mismatch");
  return {field, field->sub(value, o.value)};
}
FqElement FqElement::operator*(const FqElement& o) const {
  if (field != o.field) throw FieldError("field mismatch");
  return {field, field->mul(value, o.value)};
}
FqElement FqElement::operator/(const FqElement& o) const {
  if (field != o.field) throw FieldError("field mismatch");
  return {field, field->mul(value, field->inv(o.value))};
}

FqElement frobenius(const FqElement& x, std::uint64_t q) { return {x.field, x.field->frobenius(x.value, q)}; }

FqElement traceToBase(const FqElement& x, const FieldPtr& base) {
  if (base->p() != x.field->p() || x.field->degree() % base->degree() != 0)
    throw FieldError("incompatible fields for trace");
  FiniteField::Elt t = x.field->trace(x.value, base->degree());
  auto emb = Embedding::get(base, x.field);
  auto back = emb->pullback(t);
  if (!back) throw FieldError("internal: trace left the base field");
  return {base, *back};
}

Cyclo additiveCharacter(const FqElement& x) { return x.field->additiveCharacter(x.value); }

Embedding::Embedding(FieldPtr small, FieldPtr big) : small_(std::move(small)), big_(std::move(big)) {
  if (small_->p() != big_->p() || big_->degree() % small_->degree() != 0)
    throw FieldError("no embedding " + small_->name() + " -> " + big_->name());
  const auto& f = small_->modulus();
  FiniteField::Elt root = 0;
  bool found = false;
  for (FiniteField::Elt y = 0; y < big_->size() && !found; ++y) {
    FiniteField::Elt acc = 0;
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) acc = big_->add(big_->mul(acc, y), big_->scalar(f[i]));
    if (acc == 0) {
      root = y;
      found = true;
    }
  }
  if (!found) throw FieldError("internal: no root of defining polynomial");
  image_.resize(small_->size());
  for (FiniteField::Elt x = 0; x < small_->size(); ++x) {
    std::vector<int> dg = small_->digits(x);
    FiniteField::Elt acc = 0;
    for (int i = static_cast<int>(dg.size()) - 1; i >= 0; --i) acc = big_->add(big_->mul(acc, root), big_->scalar(dg[i]));
    image_[x] = acc;
    preimage_.emplace(acc, x);
  }
}

std::shared_ptr<const Embedding> Embedding::get(const FieldPtr& small, const FieldPtr& big) {
  static std::mutex mu;
  static std::map<std::pair<const FiniteField*, const FiniteField*>, std::shared_ptr<const Embedding>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(small.get(), big.get());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const Embedding> e(new Embedding(small, big));
  cache.emplace(key, e);
  return e;
}

std::optional<FiniteField::Elt> Embedding::pullback(FiniteField::Elt y) const {
  auto it = preimage_.find(y);
  if (it == preimage_.end()) return std::nullopt;
  return it->second;
}

}  // namespace csheaf
