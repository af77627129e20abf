#include "csheaf/classfun.hpp"

#include <map>
#include <stdexcept>

namespace csheaf {

ClassFunction convolve(const ClassFunction& f1, const ClassFunction& f2) {
  if (f1.group != f2.group) throw std::invalid_argument("convolution of functions on different groups");
  const auto& g = *f1.group;
  const auto& cl = g.classes();
  size_t k = cl.count();
  ClassFunction out = zeroFunction(f1.group);
  std::vector<long> counts(k * k);
  for (size_t c = 0; c < k; ++c) {
    std::fill(counts.begin(), counts.end(), 0);
    int z = cl.reps[c];
    for (size_t h = 0; h < g.order(); ++h) {
      int hi = static_cast<int>(h);
      ++counts[cl.classOf[hi] * k + cl.classOf[g.mul(g.inv(hi), z)]];
    }
    Cyclo s;
    for (size_t i = 0; i < k; ++i) {
      if (f1.values[i].isZero()) continue;
      for (size_t j = 0; j < k; ++j)
        if (counts[i * k + j] && !f2.values[j].isZero()) s += f1.values[i] * f2.values[j] * Cyclo(counts[i * k + j]);
    }
    out.values[c] = s;
  }
  return out;
}

std::vector<ClassFunction> minimalIdempotents(const GroupPtr& g) {
  const auto& t = g->characterTable();
  std::vector<ClassFunction> out;
  long n = static_cast<long>(g->order());
  for (size_t i = 0; i < t.size(); ++i) {
    Cyclo scale(frac(t.degrees()[i], n));
    ClassFunction e = zeroFunction(g);
    for (size_t c = 0; c < e.values.size(); ++c) e.values[c] = scale * t.row(i)[c];
    out.push_back(std::move(e));
  }
  return out;
}

Cyclo actionScalar(const ClassFunction& f, const ClassFunction& chi) {
  if (f.group != chi.group) throw std::invalid_argument("function and character on different groups");
  const auto& cl = f.group->classes();
  Cyclo s;
  for (size_t c = 0; c < cl.count(); ++c)
    if (!f.values[c].isZero()) s += f.values[c] * chi.values[c].conjugate() * Cyclo(cl.sizes[c]);
  return s / chi.values[0];
}

Cyclo unnormalizedInner(const ClassFunction& f1, const ClassFunction& f2) {
  if (f1.group != f2.group) throw std::invalid_argument("inner product of functions on different groups");
  const auto& cl = f1.group->classes();
  Cyclo s;
  for (size_t c = 0; c < cl.count(); ++c) s += f1.values[c] * f2.values[c].conjugate() * Cyclo(cl.sizes[c]);
  return s;
}

FormSystemPtr formSystem(const UnipotentScheme& g) {
  auto fs = std::make_shared<FormSystem>();
  fs->q = g.q();
  fs->dim = g.dim();
  for (const auto& f : g.h1().forms) {
    fs->groups.push_back(f.group);
    fs->labels.push_back(f.label);
  }
  return fs;
}

GroupoidFunction GroupoidFunction::operator+(const GroupoidFunction& o) const {
  if (forms != o.forms) throw std::invalid_argument("groupoid functions on different form systems");
  GroupoidFunction r = *this;
  for (size_t a = 0; a < parts.size(); ++a) r.parts[a] = parts[a] + o.parts[a];
  return r;
}

GroupoidFunction GroupoidFunction::operator*(const Cyclo& s) const {
  GroupoidFunction r = *this;
  for (auto& p : r.parts) p = p * s;
  return r;
}

bool GroupoidFunction::operator==(const GroupoidFunction& o) const { return forms == o.forms && parts == o.parts; }

bool GroupoidFunction::isZero() const {
  for (const auto& p : parts)
    if (!p.isZero()) return false;
  return true;
}

GroupoidFunction zeroGroupoidFunction(const FormSystemPtr& forms) {
  GroupoidFunction r{forms, {}};
  for (const auto& g : forms->groups) r.parts.push_back(zeroFunction(g));
  return r;
}

GroupoidFunction supportedOn(const FormSystemPtr& forms, size_t alpha, const ClassFunction& f) {
  if (f.group != forms->groups.at(alpha)) throw std::invalid_argument("function does not live on the form");
  auto r = zeroGroupoidFunction(forms);
  r.parts[alpha] = f;
  return r;
}

Cyclo groupoidInner(const GroupoidFunction& a, const GroupoidFunction& b) {
  if (a.forms != b.forms) throw std::invalid_argument("groupoid functions on different form systems");
  Cyclo s;
  for (size_t i = 0; i < a.parts.size(); ++i) s += normalizedInner(a.parts[i], b.parts[i]);
  long qd = 1;
  for (int i = 0; i < a.forms->dim; ++i) qd *= a.forms->q;
  return s * Cyclo(qd);
}

ClassFunction induceClassFunction(const GroupPtr& h, const GroupPtr& g, const ClassFunction& f) {
  if (h == g) return f;
  return induceCharacter(h, g, f);
}

GroupoidFunction induceAcrossForms(const FormSystemPtr& forms, const std::vector<FormPiece>& pieces) {
  auto r = zeroGroupoidFunction(forms);
  for (const auto& p : pieces) {
    if (p.alpha >= forms->groups.size()) throw std::invalid_argument("piece maps to an unknown form");
    const auto& g = forms->groups[p.alpha];
    if (p.f.group->law() != g->law()) throw std::invalid_argument("incompatible inclusion of point groups");
    r.parts[p.alpha] = r.parts[p.alpha] + induceClassFunction(p.f.group, g, p.f);
  }
  return r;
}

bool isNonnegativeRational(const Cyclo& z) { return z.isRational() && z.rational() >= 0; }

PositivityCertificate isPositive(const ClassFunction& f) {
  const auto& t = f.group->characterTable();
  PositivityCertificate c;
  bool byCoeff = true, byScalar = true;
  for (size_t i = 0; i < t.size(); ++i) {
    auto chi = t.character(f.group, i);
    c.coefficients.push_back(normalizedInner(f, chi));
    c.scalars.push_back(actionScalar(f, chi));
    byCoeff = byCoeff && isNonnegativeRational(c.coefficients.back());
    byScalar = byScalar && isNonnegativeRational(c.scalars.back());
  }
  c.positive = byCoeff;
  c.consistent = byCoeff == byScalar;
  return c;
}

}  // namespace csheaf
