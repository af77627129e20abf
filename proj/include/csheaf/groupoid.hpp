#pragma once

#include <string>
#include <vector>

#include "csheaf/groups.hpp"

namespace csheaf {

// A finite groupoid presented as a disjoint union of connected components,
// each with `objects` isomorphic objects and automorphism group `group`.
// Hom(x_a, x_b) inside a component is identified with the group, composition
// (b, c, h) o (a, b, g) = (a, c, h g).
struct GroupoidComponent {
  GroupPtr group;
  long objects = 1;
  std::string label;
};

struct Morphism {
  int component;
  long source, target;
  int element;
};

class FiniteGroupoid {
 public:
  explicit FiniteGroupoid(std::vector<GroupoidComponent> comps);

  size_t componentCount() const { return comps_.size(); }
  const GroupoidComponent& component(size_t i) const { return comps_[i]; }
  long objectCount() const;

  Morphism compose(const Morphism& second, const Morphism& first) const;
  Morphism inverse(const Morphism& m) const;
  Morphism identity(int component, long object) const { return {component, object, object, 0}; }

  // sum over isomorphism classes of 1/|Aut|
  Rational mass() const;

  // Exhaustive associativity and inverse check on all composable triples of one component.
  bool checkAxioms(size_t component) const;

 private:
  std::vector<GroupoidComponent> comps_;
};

// Inertia groupoid; component (i, c) for each class c of component i, with the
// centralizer of the class representative and objects * |c| objects.
struct Inertia {
  FiniteGroupoid groupoid;
  std::vector<std::pair<int, int>> origin;  // (component, class) per inertia component
};

Inertia inertia(const FiniteGroupoid& g);

// sum over pi_0 of f1 conj(f2) / |Aut|
Cyclo l2InnerProduct(const FiniteGroupoid& g, const std::vector<Cyclo>& f1, const std::vector<Cyclo>& f2);

struct GroupoidCharacter {
  int component;
  int irrep;
  std::vector<Cyclo> values;  // on pi_0 of the inertia groupoid
};

std::vector<GroupoidCharacter> groupoidIrrepCharacters(const FiniteGroupoid& g, const Inertia& in);

std::vector<std::vector<Cyclo>> gramMatrix(const FiniteGroupoid& g, const std::vector<std::vector<Cyclo>>& fs);

}  // namespace csheaf
