#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "csheaf/finfield.hpp"
#include "csheaf/groups.hpp"

namespace csheaf {

enum class SchemeKind { Additive, Unitriangular, ExampleA4, Constant };

struct SchemeSpec {
  SchemeKind kind = SchemeKind::Unitriangular;
  int p = 2;
  int s = 1;  // q = p^s
  int n = 3;  // matrix size for UL
  int k = 1;  // power for G_a^k and (Z/p)^k
};

struct PointGroup {
  int level = 1;
  GroupPtr group;
  std::vector<int> frobenius;  // x -> x^q entrywise, on indices
};

struct PureInnerForm {
  int pi0Rep = 0;               // representative of the twisted class in pi0
  long twistedCentralizer = 1;  // |Z_{pi0}(gamma F)|
  int stableLevel = 1;          // first M at which the fixed set is complete
  int level = 1;                // level at which `group` is realized
  Key twist = 0;                // section(gamma) at `level`
  GroupPtr group;               // G^alpha(F_q) inside G(F_{q^level})
  std::string label;
};

struct InnerForms {
  int level = 1;  // common level of all forms
  std::vector<PureInnerForm> forms;
};

// Point-group functor n -> G(F_{q^n}) of a builtin unipotent group over F_q.
// Points are coordinate vectors over F_{q^n} packed in mixed radix.
class UnipotentScheme {
 public:
  static constexpr size_t kPointCap = 10000;
  static constexpr size_t kEnumerationCap = size_t(1) << 22;

  explicit UnipotentScheme(SchemeSpec spec);

  const SchemeSpec& spec() const { return spec_; }
  int p() const { return spec_.p; }
  long q() const { return q_; }
  int dim() const { return dim_; }
  bool connected() const { return pi0_->order() == 1; }
  std::string name() const;

  size_t coordinateCount() const { return names_.size(); }
  const std::vector<std::string>& coordinateNames() const { return names_; }
  int coordinateIndex(const std::string& name) const;
  // Upper-triangular position (i, j) of a coordinate, 0-based; (0, t) for G_a^k and constants.
  std::pair<int, int> position(int coord) const { return pos_[coord]; }

  FieldPtr field(int level) const;
  // Radix of a coordinate at a level.
  std::uint32_t radix(int level) const;
  std::vector<FiniteField::Elt> unpack(Key k, int level) const;
  Key pack(const std::vector<FiniteField::Elt>& c, int level) const;
  bool isPoint(const std::vector<FiniteField::Elt>& c) const;
  LawPtr law(int level) const;
  Key frobenius(Key k, int level) const;
  // Maps a point at level `from` into level `to` (from | to) through the field embedding.
  Key embed(Key k, int from, int to) const;

  size_t pointCount(int level) const;
  void forEachPoint(int level, const std::function<void(Key)>& fn) const;
  PointGroup pointsOver(int level) const;

  // Component group with its Frobenius (trivial on all builtins) and an
  // Fr-equivariant homomorphic section into G(F_q).
  const GroupPtr& pi0() const { return pi0_; }
  const std::vector<int>& pi0Frobenius() const { return pi0F_; }
  int pi0Of(Key k, int level) const;
  Key section(int pi0Index, int level) const;

  // p^r, the exponent of the point groups at levels 1 and 2 (where within the cap).
  long exponent() const;

  // Twisted classes of pi0 with their point groups at a common level.
  const InnerForms& h1() const;
  // {g in G(F_{q^level}) : t Fr(g) t^{-1} = g} with t = section(pi0Rep).
  std::vector<Key> twistedFixedPoints(int pi0Rep, int level) const;
  // Index in h1() of the form whose class contains the pi0 element.
  int formOf(int pi0Index) const;

 private:
  Key mulKeys(Key a, Key b, int level) const;
  Key invKey(Key a, int level) const;

  SchemeSpec spec_;
  long q_ = 1;
  int dim_ = 0;
  std::vector<std::string> names_;
  std::vector<std::pair<int, int>> pos_;
  std::vector<std::vector<int>> at_;  // at_[i][j] coordinate index or -1
  GroupPtr pi0_;
  std::vector<int> pi0F_;

  mutable std::mutex mu_;
  mutable std::map<int, LawPtr> laws_;
  mutable std::unique_ptr<InnerForms> forms_;
  mutable std::vector<int> formOf_;
};

using SchemePtr = std::shared_ptr<const UnipotentScheme>;

SchemePtr makeScheme(SchemeSpec spec);

}  // namespace csheaf
