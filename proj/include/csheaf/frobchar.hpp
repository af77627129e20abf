#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csheaf/classfun.hpp"
#include "csheaf/groups.hpp"

namespace csheaf {

// A finite group with an automorphism F of order N and the extension
// Z/N x| Gamma in which sigma gamma sigma^{-1} = F(gamma).
// F-conjugation is gamma . x = gamma x F(gamma)^{-1}, so that the twisted
// classes are the Gamma-conjugacy classes of the coset Gamma sigma.
class TwistedGroup {
 public:
  TwistedGroup(GroupPtr gamma, std::vector<int> f);

  const GroupPtr& gamma() const { return gamma_; }
  const std::vector<int>& frobenius() const { return f_; }
  int order() const { return n_; }
  const GroupPtr& tilde() const { return tilde_; }
  int sigma() const { return sigma_; }
  // Index in tilde() of gamma and of gamma * sigma.
  int inTilde(int g) const { return tilde_->index(static_cast<Key>(g)); }
  int timesSigma(int g) const { return timesSigma_[g]; }

  const ConjugacyClasses& fClasses() const { return fClasses_; }
  long twistedCentralizerOrder(size_t c) const { return static_cast<long>(gamma_->order()) / fClasses_.sizes[c]; }
  // {d : d g F(d)^{-1} = g}
  GroupPtr twistedCentralizer(int g) const;
  // Conjugacy class of F(x) for each class x.
  const std::vector<int>& classPermutation() const { return classPerm_; }

 private:
  GroupPtr gamma_;
  std::vector<int> f_;
  int n_ = 1;
  GroupPtr tilde_;
  int sigma_ = 0;
  std::vector<int> timesSigma_;
  ConjugacyClasses fClasses_;
  std::vector<int> classPerm_;
};

// Irreducible characters of Gamma (table indices) with chi o F = chi.
std::vector<int> fInvariantIrreps(const TwistedGroup& t);

// Rows of the table of Gamma~ restricting to the given irreducible of Gamma.
std::vector<int> extensionsOfIrrep(const TwistedGroup& t, int irrep);

struct TwistedCharacter {
  int irrep = 0;
  int extension = 0;          // row of the table of Gamma~
  std::vector<Cyclo> values;  // chi~(gamma sigma) per F-conjugacy class
};

TwistedCharacter twistedCharacter(const TwistedGroup& t, int irrep, int extension);
// Value at an arbitrary gamma.
Cyclo twistedValue(const TwistedGroup& t, int extension, int g);

std::vector<TwistedCharacter> twistedCharacterBasis(const TwistedGroup& t);

// Exact rank by Gaussian elimination.
size_t exactRank(std::vector<std::vector<Cyclo>> m);

struct TraceFormulaResult {
  Cyclo classSum;      // sum_i W(gamma_i sigma) / |Z(gamma_i F)|
  Cyclo average;       // (1/|Gamma|) sum_gamma W(gamma sigma)
  Cyclo invariantTrace;  // trace of sigma on W^Gamma, from the decomposition of W
  bool holds = false;
};

// W is a class function on tilde().
TraceFormulaResult traceFormulaCheck(const TwistedGroup& t, const ClassFunction& w);

// Smallest ring among the N extensions of an F-invariant irreducible.
struct ExtensionRing {
  int irrep = 0;
  int canonicalConductor = 1;   // conductor of the values of the canonical extension
  std::optional<int> withinBound;  // an extension with values in Z[mu_m, 1/p]
  int bestConductor = 1;
};

ExtensionRing extensionValueRing(const TwistedGroup& t, int irrep, int m, int p);

// A finite transitive U-set with a compatible bijection F_X(u.x) = F(u).F_X(x).
struct HomogeneousSpace {
  size_t points = 0;
  std::vector<std::vector<int>> action;  // action[u][x]
  std::vector<int> frobenius;
};

// Optional central subgroup A of U acting trivially on X, fixed by F, with a character.
struct CentralCharacter {
  std::vector<int> subgroup;
  std::vector<Cyclo> values;
};

struct TVector {
  int irrep = 0;      // irreducible of the stabilizer
  int extension = 0;  // row of the stabilizer's extended table
  // values[alpha][x] at the F-twisted fixed points of form alpha (zero elsewhere)
  std::vector<std::vector<Cyclo>> values;
};

struct HomogeneousBasis {
  int basePoint = 0;
  int gamma0 = 0;  // gamma0 F_X(x) = x
  GroupPtr stabilizer;
  std::vector<int> stabilizerFrobenius;
  std::vector<int> formReps;                  // U-indices of twisted class representatives
  std::vector<std::vector<int>> fixedPoints;  // X^alpha(F_q)
  std::vector<TVector> vectors;
  size_t orbitCount = 0;       // U-orbits on twisted pairs
  size_t targetDimension = 0;  // dimension of the (chi-isotypic) invariant function space
  size_t rank = 0;
  bool invariant = false;  // vectors are invariant (and chi-equivariant) on all pairs
  bool isBasis = false;
};

HomogeneousBasis homogeneousTBasis(const TwistedGroup& u, const HomogeneousSpace& x,
                                   const std::optional<CentralCharacter>& ext = std::nullopt);

// Forms of Gamma: twisted centralizers of the twisted class representatives, as a form system with dim 0.
FormSystemPtr twistedFormSystem(const TwistedGroup& t);

struct DoubleFunction {
  int classRep = 0;  // x in Gamma
  long centralizerOrder = 0;
  int irrep = 0;  // irreducible of Z(x)
  GroupoidFunction values;
};

struct DrinfeldDouble {
  FormSystemPtr forms;
  bool pGroup = false;
  std::vector<DoubleFunction> functions;
  size_t dimension = 0;  // sum over forms of the number of classes
  long maxStabilizerExponent = 1;
};

DrinfeldDouble drinfeldDoubleTraceFunctions(const TwistedGroup& t);

std::vector<std::vector<Cyclo>> groupoidGram(const std::vector<GroupoidFunction>& fs);
bool isIdentityMatrix(const std::vector<std::vector<Cyclo>>& m);
// M M^* = I
bool isUnitary(const std::vector<std::vector<Cyclo>>& m);

}  // namespace csheaf
