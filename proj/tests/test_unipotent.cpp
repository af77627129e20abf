#include <doctest.h>

#include <algorithm>

#include "csheaf/unipotent.hpp"

using namespace csheaf;

namespace {

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<long> sortedSizes(const GroupPtr& g) {
  auto s = g->classes().sizes;
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST_CASE("unipotent: point groups") {
  auto ga = makeScheme({SchemeKind::Additive, 2, 1, 0, 1});
  auto pg = ga->pointsOver(1);
  CHECK(pg.group->order() == 2);
  CHECK(pg.frobenius == std::vector<int>{0, 1});

  auto ul3 = makeScheme({SchemeKind::Unitriangular, 2, 1, 3, 0});
  auto d4 = ul3->pointsOver(1).group;
  CHECK(d4->order() == 8);
  CHECK(sortedSizes(d4) == sortedSizes(dihedralGroup(4)));
  CHECK(ul3->exponent() == 4);
  CHECK(makeScheme({SchemeKind::Unitriangular, 3, 1, 3, 0})->exponent() == 3);

  auto a4 = makeScheme({SchemeKind::ExampleA4, 2, 1, 3, 0});
  CHECK(a4->pointsOver(1).group->order() == 8);
  CHECK(a4->pointsOver(2).group->order() == 32);
  CHECK(a4->dim() == 2);
  CHECK(!a4->connected());

  CHECK_THROWS_AS(makeScheme({SchemeKind::Unitriangular, 2, 1, 4, 0})->pointsOver(3), CapExceeded);
}

TEST_CASE("unipotent: UL4 multiplication and inverses") {
  auto ul4 = makeScheme({SchemeKind::Unitriangular, 3, 1, 4, 0});
  auto pg = ul4->pointsOver(1);
  CHECK(pg.group->order() == 729);
  auto law = ul4->law(1);
  for (int i = 0; i < 729; i += 17) {
    Key g = pg.group->key(i);
    CHECK(law->mul(g, law->inv(g)) == 0);
    CHECK(law->mul(law->inv(g), g) == 0);
  }
}

TEST_CASE("unipotent: Lang cardinalities and Frobenius") {
  std::vector<SchemeSpec> specs{{SchemeKind::Additive, 3, 1, 0, 2},
                                {SchemeKind::Unitriangular, 2, 1, 3, 0},
                                {SchemeKind::Unitriangular, 3, 1, 3, 0},
                                {SchemeKind::ExampleA4, 2, 1, 3, 0},
                                {SchemeKind::ExampleA4, 3, 1, 3, 0},
                                {SchemeKind::Constant, 2, 1, 0, 2}};
  for (const auto& sp : specs) {
    auto g = makeScheme(sp);
    for (int n = 1; n <= 3; ++n) {
      if (g->pointCount(n) > UnipotentScheme::kPointCap) continue;
      auto pg = g->pointsOver(n);
      CHECK(static_cast<long>(pg.group->order()) == ipow(g->q(), n * g->dim()) * static_cast<long>(g->pi0()->order()));
      pg.group->checkAutomorphism(pg.frobenius);
      // Fr^n is the identity on F_{q^n}-points
      for (size_t x = 0; x < pg.group->order(); ++x) {
        int y = static_cast<int>(x);
        for (int i = 0; i < n; ++i) y = pg.frobenius[y];
        CHECK(y == static_cast<int>(x));
      }
    }
  }
}

TEST_CASE("unipotent: H1 and pure inner forms") {
  auto ul3 = makeScheme({SchemeKind::Unitriangular, 2, 1, 3, 0});
  CHECK(ul3->h1().forms.size() == 1);

  auto a4 = makeScheme({SchemeKind::ExampleA4, 2, 1, 3, 0});
  const auto& forms = a4->h1();
  REQUIRE(forms.forms.size() == 2);
  CHECK(forms.level == 2);
  CHECK(forms.forms[0].stableLevel == 1);
  CHECK(forms.forms[1].stableLevel == 2);
  for (const auto& f : forms.forms) CHECK(f.group->order() == 8);

  // the trivial form is G(F_q), elementwise
  auto base = a4->pointsOver(1).group;
  std::vector<Key> embedded, fixed;
  for (size_t i = 0; i < base->order(); ++i) embedded.push_back(a4->embed(base->key(static_cast<int>(i)), 1, 2));
  for (size_t i = 0; i < forms.forms[0].group->order(); ++i) fixed.push_back(forms.forms[0].group->key(static_cast<int>(i)));
  std::sort(embedded.begin(), embedded.end());
  std::sort(fixed.begin(), fixed.end());
  CHECK(embedded == fixed);

  // every point of the twisted form has component equal to its own class, and the section element lies in it
  const auto& tw = forms.forms[1];
  CHECK(tw.group->find(tw.twist).has_value());

  auto a43 = makeScheme({SchemeKind::ExampleA4, 3, 1, 3, 0});
  CHECK(a43->h1().forms.size() == 3);
  for (const auto& f : a43->h1().forms) CHECK(f.group->order() == 27);

  auto c = makeScheme({SchemeKind::Constant, 2, 1, 0, 2});
  CHECK(c->h1().forms.size() == 4);
  for (const auto& f : c->h1().forms) CHECK(f.group->order() == 4);
}
