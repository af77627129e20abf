#include "csheaf/groupoid.hpp"

#include <stdexcept>

namespace csheaf {

FiniteGroupoid::FiniteGroupoid(std::vector<GroupoidComponent> comps) : comps_(std::move(comps)) {
  for (const auto& c : comps_) {
    if (!c.group) throw std::invalid_argument("groupoid component without automorphism group");
    if (c.objects < 1) throw std::invalid_argument("groupoid component must have an object");
  }
}

long FiniteGroupoid::objectCount() const {
  long n = 0;
  for (const auto& c : comps_) n += c.objects;
  return n;
}

Morphism FiniteGroupoid::compose(const Morphism& second, const Morphism& first) const {
  if (second.component != first.component || second.source != first.target)
    throw std::invalid_argument("morphisms are not composable");
  const auto& g = comps_[first.component].group;
  return {first.component, first.source, second.target, g->mul(second.element, first.element)};
}

Morphism FiniteGroupoid::inverse(const Morphism& m) const {
  return {m.component, m.target, m.source, comps_[m.component].group->inv(m.element)};
}

Rational FiniteGroupoid::mass() const {
  Rational m = 0;
  for (const auto& c : comps_) m += Rational(1, static_cast<unsigned long>(c.group->order()));
  m.canonicalize();
  return m;
}

bool FiniteGroupoid::checkAxioms(size_t ci) const {
  const auto& c = comps_.at(ci);
  int comp = static_cast<int>(ci);
  long n = c.objects;
  int order = static_cast<int>(c.group->order());
  for (long a = 0; a < n; ++a)
    for (int x = 0; x < order; ++x) {
      Morphism f{comp, a, (a + 1) % n, x};
      Morphism back = compose(inverse(f), f);
      if (back.element != 0 || back.source != a || back.target != a) return false;
      for (int y = 0; y < order; ++y) {
        Morphism g{comp, f.target, (f.target + 1) % n, y};
        for (int z = 0; z < order; z += 1 + order / 16) {
          Morphism h{comp, g.target, a, z};
          Morphism l = compose(h, compose(g, f)), r = compose(compose(h, g), f);
          if (l.element != r.element || l.source != r.source || l.target != r.target) return false;
        }
      }
    }
  return true;
}

Inertia inertia(const FiniteGroupoid& g) {
  std::vector<GroupoidComponent> comps;
  std::vector<std::pair<int, int>> origin;
  for (size_t i = 0; i < g.componentCount(); ++i) {
    const auto& c = g.component(i);
    const auto& cl = c.group->classes();
    for (size_t k = 0; k < cl.count(); ++k) {
      comps.push_back({c.group->centralizer(cl.reps[k]), c.objects * cl.sizes[k],
                       c.label + "[" + c.group->show(cl.reps[k]) + "]"});
      origin.emplace_back(static_cast<int>(i), static_cast<int>(k));
    }
  }
  return {FiniteGroupoid(std::move(comps)), std::move(origin)};
}

Cyclo l2InnerProduct(const FiniteGroupoid& g, const std::vector<Cyclo>& f1, const std::vector<Cyclo>& f2) {
  if (f1.size() != g.componentCount() || f2.size() != g.componentCount())
    throw std::invalid_argument("function length does not match pi_0");
  Cyclo s;
  for (size_t i = 0; i < f1.size(); ++i)
    s += f1[i] * f2[i].conjugate() / Cyclo(static_cast<long>(g.component(i).group->order()));
  return s;
}

std::vector<GroupoidCharacter> groupoidIrrepCharacters(const FiniteGroupoid& g, const Inertia& in) {
  std::vector<GroupoidCharacter> out;
  for (size_t i = 0; i < g.componentCount(); ++i) {
    const auto& t = g.component(i).group->characterTable();
    for (size_t r = 0; r < t.size(); ++r) {
      GroupoidCharacter ch{static_cast<int>(i), static_cast<int>(r),
                           std::vector<Cyclo>(in.groupoid.componentCount())};
      for (size_t j = 0; j < in.origin.size(); ++j)
        if (in.origin[j].first == static_cast<int>(i)) ch.values[j] = t.row(r)[in.origin[j].second];
      out.push_back(std::move(ch));
    }
  }
  return out;
}

std::vector<std::vector<Cyclo>> gramMatrix(const FiniteGroupoid& g, const std::vector<std::vector<Cyclo>>& fs) {
  std::vector<std::vector<Cyclo>> m(fs.size(), std::vector<Cyclo>(fs.size()));
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = 0; j < fs.size(); ++j) m[i][j] = l2InnerProduct(g, fs[i], fs[j]);
  return m;
}

}  // namespace csheaf
