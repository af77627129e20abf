#pragma once

#include <memory>
#include <string>
#include <vector>

#include "csheaf/groups.hpp"
#include "csheaf/unipotent.hpp"

namespace csheaf {

// (f1 * f2)(g) = sum_h f1(h) f2(h^{-1} g)
ClassFunction convolve(const ClassFunction& f1, const ClassFunction& f2);

// e_chi = chi(1)/|G| chi, in table order.
std::vector<ClassFunction> minimalIdempotents(const GroupPtr& g);

// Scalar by which sum_g f(g) g^{-1} acts in the irreducible with character chi:
// (1/chi(1)) sum_g f(g) conj(chi(g)), so that e_chi acts by 1 on chi.
Cyclo actionScalar(const ClassFunction& f, const ClassFunction& chi);

// sum_g f1(g) conj(f2(g))
Cyclo unnormalizedInner(const ClassFunction& f1, const ClassFunction& f2);

// Groups of F_q-points of all pure inner forms, with q and dim G.
struct FormSystem {
  long q = 1;
  int dim = 0;
  std::vector<GroupPtr> groups;
  std::vector<std::string> labels;
};
using FormSystemPtr = std::shared_ptr<const FormSystem>;

FormSystemPtr formSystem(const UnipotentScheme& g);

// One class function per pure inner form.
struct GroupoidFunction {
  FormSystemPtr forms;
  std::vector<ClassFunction> parts;

  GroupoidFunction operator+(const GroupoidFunction& o) const;
  GroupoidFunction operator*(const Cyclo& s) const;
  bool operator==(const GroupoidFunction& o) const;
  bool isZero() const;
};

GroupoidFunction zeroGroupoidFunction(const FormSystemPtr& forms);
// chi placed on form `alpha`, zero elsewhere
GroupoidFunction supportedOn(const FormSystemPtr& forms, size_t alpha, const ClassFunction& f);

// q^{dim G} sum_alpha (1/|G^alpha(F_q)|) sum_g f1(g) conj(f2(g))
Cyclo groupoidInner(const GroupoidFunction& a, const GroupoidFunction& b);

ClassFunction induceClassFunction(const GroupPtr& h, const GroupPtr& g, const ClassFunction& f);

// A function on the points of one form of a subgroup, and the form of G it maps to.
struct FormPiece {
  size_t alpha;
  ClassFunction f;  // on a subgroup of forms->groups[alpha]
};

// t_alpha = sum over pieces mapping to alpha of the induced functions; zero where nothing maps.
GroupoidFunction induceAcrossForms(const FormSystemPtr& forms, const std::vector<FormPiece>& pieces);

struct PositivityCertificate {
  bool positive = false;
  std::vector<Cyclo> coefficients;  // <f, chi> in table order
  std::vector<Cyclo> scalars;       // actionScalar(f, chi) in table order
  bool consistent = false;          // both criteria agree
};

// f is a nonnegative rational combination of irreducible characters.
PositivityCertificate isPositive(const ClassFunction& f);

bool isNonnegativeRational(const Cyclo& z);

}  // namespace csheaf
