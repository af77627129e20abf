#include <doctest.h>

#include "csheaf/classfun.hpp"

using namespace csheaf;

TEST_CASE("classfun: convolution algebra") {
  for (auto g : {dihedralGroup(4), heisenbergGroup(3), symmetricGroup(4)}) {
    const auto& t = g->characterTable();
    auto d = delta1(g);
    auto a = t.character(g, 1) + t.character(g, t.size() - 1) * Cyclo(3);
    auto b = t.character(g, 2) * Cyclo::zeta(4) + delta1(g);
    auto c = t.character(g, 0) - t.character(g, 1);
    CHECK(convolve(d, a) == a);
    CHECK(convolve(a, d) == a);
    CHECK(convolve(a, b) == convolve(b, a));
    CHECK(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)));
  }
}

TEST_CASE("classfun: minimal idempotents") {
  auto triv = cyclicGroup(1);
  REQUIRE(minimalIdempotents(triv).size() == 1);
  CHECK(minimalIdempotents(triv)[0] == delta1(triv));
  for (auto g : {dihedralGroup(4), heisenbergGroup(3), heisenbergGroup(2), elementaryAbelian(2, 3)}) {
    auto es = minimalIdempotents(g);
    const auto& t = g->characterTable();
    auto sum = zeroFunction(g);
    for (size_t i = 0; i < es.size(); ++i) {
      sum = sum + es[i];
      for (size_t j = 0; j < es.size(); ++j) {
        CHECK(convolve(es[i], es[j]) == (i == j ? es[i] : zeroFunction(g)));
        CHECK(actionScalar(es[i], t.character(g, j)) == Cyclo(i == j ? 1 : 0));
      }
    }
    CHECK(sum == delta1(g));
  }
  // p-group idempotents live in Z[mu_{p^r}, 1/p]
  auto h = heisenbergGroup(3);
  for (const auto& e : minimalIdempotents(h))
    for (const auto& v : e.values) CHECK(v.inRing(3, 3));
  auto d4 = dihedralGroup(4);
  for (const auto& e : minimalIdempotents(d4))
    for (const auto& v : e.values) CHECK(v.inRing(4, 2));
}

TEST_CASE("classfun: inner products") {
  auto g = heisenbergGroup(3);
  const auto& t = g->characterTable();
  CHECK(unnormalizedInner(delta1(g), delta1(g)) == Cyclo(1));
  for (size_t i = 0; i < t.size(); ++i)
    for (size_t j = 0; j < t.size(); ++j)
      CHECK(unnormalizedInner(t.character(g, i), t.character(g, j)) == Cyclo(i == j ? 27 : 0));
  CHECK(actionScalar(delta1(g), t.character(g, 10)) == Cyclo(1));
}

TEST_CASE("classfun: groupoid inner product") {
  auto ul3 = makeScheme({SchemeKind::Unitriangular, 2, 1, 3, 0});
  auto fs = formSystem(*ul3);
  auto g = fs->groups[0];
  const auto& t = g->characterTable();
  for (size_t i = 0; i < t.size(); ++i) {
    auto a = supportedOn(fs, 0, t.character(g, i));
    // connected: q^dim = |G(F_q)|, so this is the unnormalized inner product
    CHECK(groupoidInner(a, a) == unnormalizedInner(t.character(g, i), t.character(g, i)));
  }
  auto a4 = makeScheme({SchemeKind::ExampleA4, 2, 1, 3, 0});
  auto fa = formSystem(*a4);
  REQUIRE(fa->groups.size() == 2);
  auto x = supportedOn(fa, 1, fa->groups[1]->characterTable().character(fa->groups[1], 4));
  auto y = supportedOn(fa, 0, delta1(fa->groups[0])) + x * Cyclo::zeta(3);
  CHECK(groupoidInner(x, x) == Cyclo(4));
  CHECK(groupoidInner(x, y) == groupoidInner(y, x).conjugate());
}

TEST_CASE("classfun: positivity") {
  auto s4 = symmetricGroup(4);
  const auto& t = s4->characterTable();
  for (const auto& e : minimalIdempotents(s4)) {
    auto c = isPositive(e);
    CHECK(c.positive);
    CHECK(c.consistent);
  }
  auto bad = isPositive(t.character(s4, 1) - t.character(s4, 2));
  CHECK(!bad.positive);
  CHECK(bad.consistent);

  // closed under sums and induction
  auto a4 = s4->subgroup([&](int x) {
    auto im = unpackPermutation(s4->key(x), 4);
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inv += im[i] > im[j];
    return inv % 2 == 0;
  });
  for (const auto& e : minimalIdempotents(a4)) {
    CHECK(isPositive(e).positive);
    CHECK(isPositive(induceClassFunction(a4, s4, e)).positive);
    CHECK(isPositive(e + minimalIdempotents(a4)[0]).positive);
  }
}

TEST_CASE("classfun: induction across forms") {
  auto ul3 = makeScheme({SchemeKind::Unitriangular, 2, 1, 3, 0});
  auto fs = formSystem(*ul3);
  auto g = fs->groups[0];
  auto h = g->centralizer(g->classes().reps[1]);
  auto f = delta1(h);
  auto t = induceAcrossForms(fs, {{0, f}});
  CHECK(t.parts[0] == induceCharacter(h, g, f));

  auto a4 = makeScheme({SchemeKind::ExampleA4, 2, 1, 3, 0});
  auto fa = formSystem(*a4);
  auto g0 = fa->groups[0];
  auto h0 = g0->subgroup([&](int x) { return a4->pi0Of(g0->key(x), 2) == 0; });
  auto ta = induceAcrossForms(fa, {{0, delta1(h0)}});
  CHECK(!ta.parts[0].isZero());
  CHECK(ta.parts[1].isZero());
}
