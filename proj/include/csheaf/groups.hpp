#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "csheaf/cyclo.hpp"
#include "csheaf/finfield.hpp"

namespace csheaf {

using Key = std::uint64_t;

struct GroupLaw {
  std::function<Key(Key, Key)> mul;
  std::function<Key(Key)> inv;
  Key identity = 0;
  std::function<std::string(Key)> show;
};

using LawPtr = std::shared_ptr<const GroupLaw>;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;
class CharacterTable;

struct ConjugacyClasses {
  std::vector<int> classOf;               // element index -> class index
  std::vector<std::vector<int>> members;  // sorted element indices
  std::vector<int> reps;
  std::vector<long> sizes;
  std::vector<int> inverse;  // class of g^{-1}
  size_t count() const { return reps.size(); }
};

// Element 0 is always the identity.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  static constexpr size_t kMaxOrder = 10000;
  static constexpr size_t kTableLimit = 2048;

  // Breadth-first closure under right multiplication by the generators;
  // each layer is sorted by encoding.
  static GroupPtr closure(LawPtr law, const std::vector<Key>& gens, size_t cap = kMaxOrder);
  // Explicit element set (identity placed first, rest sorted by encoding); closure is verified.
  static GroupPtr fromElements(LawPtr law, std::vector<Key> keys);

  size_t order() const { return keys_.size(); }
  int mul(int a, int b) const;
  int inv(int a) const { return inverse_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inverse_[g]); }  // g x g^{-1}
  int power(int a, long e) const;
  int elementOrder(int a) const;
  long exponent() const;
  bool isAbelian() const;

  Key key(int a) const { return keys_[a]; }
  std::optional<int> find(Key k) const;
  int index(Key k) const;
  const LawPtr& law() const { return law_; }
  const std::vector<int>& generators() const { return gens_; }
  // Word in generator positions from the BFS tree (empty for the identity).
  std::vector<int> word(int a) const;
  std::string show(int a) const;
  std::string wordString(int a) const;

  const ConjugacyClasses& classes() const;
  const CharacterTable& characterTable() const;
  // Index of the class of g^t for t in [0, exponent).
  const std::vector<std::vector<int>>& powerMaps() const;

  // Subgroup of elements satisfying pred, as a group on the same law.
  GroupPtr subgroup(const std::function<bool(int)>& pred) const;
  GroupPtr centralizer(int x) const;
  // Indices in this group of the elements of sub (same law, keys must be present).
  std::vector<int> inclusionOf(const FiniteGroup& sub) const;

  // An automorphism as a permutation of indices; throws if not a group automorphism.
  void checkAutomorphism(const std::vector<int>& perm) const;

 private:
  FiniteGroup() = default;
  void finalize();
  void computeGenerators();

  LawPtr law_;
  std::vector<Key> keys_;
  std::unordered_map<Key, int> index_;
  std::vector<int> inverse_;
  std::vector<int> table_;
  std::vector<int> gens_;
  std::vector<int> parent_, parentGen_;

  mutable std::once_flag classesOnce_, tableOnce_, powerOnce_;
  mutable std::unique_ptr<ConjugacyClasses> classes_;
  mutable std::unique_ptr<CharacterTable> table2_;
  mutable std::unique_ptr<std::vector<std::vector<int>>> powerMaps_;
};

// Class function data: one value per conjugacy class.
struct ClassFunction {
  GroupPtr group;
  std::vector<Cyclo> values;

  Cyclo at(int element) const { return values[group->classes().classOf[element]]; }
  ClassFunction operator+(const ClassFunction& o) const;
  ClassFunction operator-(const ClassFunction& o) const;
  ClassFunction operator*(const Cyclo& s) const;
  bool operator==(const ClassFunction& o) const;
  bool isZero() const;
  ClassFunction conjugate() const;
};

ClassFunction zeroFunction(const GroupPtr& g);
ClassFunction delta1(const GroupPtr& g);
ClassFunction constantFunction(const GroupPtr& g, const Cyclo& c);
// Values given on every element; throws if not constant on classes.
ClassFunction classFunctionFromElements(const GroupPtr& g, const std::vector<Cyclo>& perElement);

class CharacterTable {
 public:
  CharacterTable(const FiniteGroup& g);
  size_t size() const { return rows_.size(); }
  const std::vector<std::vector<Cyclo>>& rows() const { return rows_; }
  const std::vector<Cyclo>& row(size_t i) const { return rows_[i]; }
  const std::vector<long>& degrees() const { return degrees_; }
  long exponent() const { return exponent_; }
  long prime() const { return ell_; }
  ClassFunction character(const GroupPtr& g, size_t i) const { return {g, rows_[i]}; }

 private:
  std::vector<std::vector<Cyclo>> rows_;
  std::vector<long> degrees_;
  long exponent_ = 1;
  long ell_ = 0;
};

// (1/|G|) sum_g f1(g) conj(f2(g)).
Cyclo normalizedInner(const ClassFunction& a, const ClassFunction& b);

// Permutation groups on {0..n-1}; keys pack 4 bits per point (n <= 16).
LawPtr permutationLaw(int n);
Key packPermutation(const std::vector<int>& images);
std::vector<int> unpackPermutation(Key k, int n);
// Parses cycle notation such as "(1 2)(3 4)" with 1-based points.
Key parseCycles(const std::string& s, int n);

GroupPtr cyclicGroup(int n);
GroupPtr elementaryAbelian(int p, int k);
GroupPtr dihedralGroup(int n);  // order 2n
GroupPtr symmetricGroup(int n);
GroupPtr heisenbergGroup(int p);  // UL_3(F_p)

// A x Gamma with (a,g)(a',g') = (aa', act(a'^{-1})(g) g'); act[a] is a permutation of Gamma's indices.
// Keys are a * |Gamma| + g.
GroupPtr semidirectProduct(const GroupPtr& a, const GroupPtr& gamma, const std::vector<std::vector<int>>& act);

// Orbits of x -> g x F(g)^{-1} for an automorphism F given on indices; ordered like
// conjugacy classes (identity first, ascending size, smallest representative key).
// `inverse` is left empty.
ConjugacyClasses twistedConjugacyClasses(const FiniteGroup& g, const std::vector<int>& f);

ClassFunction induceCharacter(const GroupPtr& h, const GroupPtr& g, const ClassFunction& f);
ClassFunction restrictCharacter(const GroupPtr& g, const GroupPtr& h, const ClassFunction& f);

}  // namespace csheaf
