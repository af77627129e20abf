#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "csheaf/cyclo.hpp"

namespace csheaf {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::uint32_t kMaxFieldSize = 1u << 20;

bool isPrime(long n);

// F_{p^d} = F_p[x]/(f) with f the monic irreducible of degree d whose
// lower coefficients, read as a base-p integer, are smallest.
// Elements are encoded as sum c_i p^i where c_i is the coefficient of x^i.
class FiniteField {
 public:
  using Elt = std::uint32_t;

  static std::shared_ptr<const FiniteField> get(int p, int degree);

  int p() const { return p_; }
  int degree() const { return d_; }
  Elt size() const { return size_; }
  const std::vector<int>& modulus() const { return modulus_; }
  Elt generator() const { return exp_[1]; }

  Elt add(Elt a, Elt b) const;
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt neg(Elt a) const;
  Elt mul(Elt a, Elt b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elt inv(Elt a) const;
  Elt pow(Elt a, std::uint64_t e) const;
  Elt scalar(long c) const { return static_cast<Elt>(((c % p_) + p_) % p_); }

  // x^(p^k).
  Elt frobeniusPower(Elt x, int k) const;
  // x^q for q = p^s with s dividing the degree.
  Elt frobenius(Elt x, std::uint64_t q) const;
  // Tr from this field to its subfield F_{p^s}.
  Elt trace(Elt x, int s) const;
  // Tr_{F_{p^s}/F_p}(x) for x in the subfield F_{p^s}, as an integer mod p.
  int traceToPrime(Elt x, int s) const;
  bool inSubfield(Elt x, int s) const { return frobeniusPower(x, s) == x; }
  // zeta_p^{Tr_{F_{p^s}/F_p}(x)}, defaulting to the whole field.
  Cyclo additiveCharacter(Elt x, int s = 0) const;

  std::vector<int> digits(Elt x) const;
  std::string name() const;

 private:
  FiniteField(int p, int d);
  int p_;
  int d_;
  Elt size_;
  std::vector<int> modulus_;
  std::vector<Elt> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elt> pp_;  // powers of p
};

using FieldPtr = std::shared_ptr<const FiniteField>;

FieldPtr buildField(int p, int degree);

struct FqElement {
  FieldPtr field;
  FiniteField::Elt value = 0;

  FqElement operator+(const FqElement& o) const;
  FqElement operator-(const FqElement& o) const;
  FqElement operator*(const FqElement& o) const;
  FqElement operator/(const FqElement& o) const;
  bool operator==(const FqElement& o) const { return field == o.field && value == o.value; }
};

FqElement frobenius(const FqElement& x, std::uint64_t q);
FqElement traceToBase(const FqElement& x, const FieldPtr& base);
Cyclo additiveCharacter(const FqElement& x);

// Embedding F_{p^a} -> F_{p^b}, a | b, via the smallest root of the smaller modulus.
class Embedding {
 public:
  static std::shared_ptr<const Embedding> get(const FieldPtr& small, const FieldPtr& big);
  FiniteField::Elt map(FiniteField::Elt x) const { return image_[x]; }
  std::optional<FiniteField::Elt> pullback(FiniteField::Elt y) const;
  const FieldPtr& small() const { return small_; }
  const FieldPtr& big() const { return big_; }

 private:
  Embedding(FieldPtr small, FieldPtr big);
  FieldPtr small_, big_;
  std::vector<FiniteField::Elt> image_;
  std::unordered_map<FiniteField::Elt, FiniteField::Elt> preimage_;
};

}  // namespace csheaf
