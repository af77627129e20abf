#include <doctest.h>

#include "csheaf/groupoid.hpp"

using namespace csheaf;

namespace {

bool isIdentity(const std::vector<std::vector<Cyclo>>& m) {
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != Cyclo(i == j ? 1 : 0)) return false;
  return true;
}

std::vector<std::vector<Cyclo>> values(const std::vector<GroupoidCharacter>& cs) {
  std::vector<std::vector<Cyclo>> out;
  for (const auto& c : cs) out.push_back(c.values);
  return out;
}

}  // namespace

TEST_CASE("groupoid: inertia of BG is the conjugation groupoid") {
  FiniteGroupoid bd4({{dihedralGroup(4), 1, "D4"}});
  auto in = inertia(bd4);
  CHECK(in.groupoid.componentCount() == 5);
  CHECK(in.groupoid.objectCount() == 8);
  // sum over classes of 1/|Z(x)| is 1
  CHECK(in.groupoid.mass() == Rational(1));
  CHECK(bd4.checkAxioms(0));
}

TEST_CASE("groupoid: L2 inner products") {
  auto s3 = symmetricGroup(3);
  FiniteGroupoid bs3({{s3, 1, "S3"}});
  CHECK(l2InnerProduct(bs3, {Cyclo(1)}, {Cyclo(1)}) == Cyclo(Rational(1, 6)));
  FiniteGroupoid discrete({{cyclicGroup(1), 1, "a"}, {cyclicGroup(1), 1, "b"}, {cyclicGroup(1), 1, "c"}});
  CHECK(l2InnerProduct(discrete, {1, 1, 1}, {1, 1, 1}) == Cyclo(3));
  // on the inertia groupoid, class functions pair as the normalized inner product
  auto in = inertia(bs3);
  const auto& t = s3->characterTable();
  for (size_t i = 0; i < t.size(); ++i)
    for (size_t j = 0; j < t.size(); ++j)
      CHECK(l2InnerProduct(in.groupoid, t.row(i), t.row(j)) ==
            normalizedInner(t.character(s3, i), t.character(s3, j)));
}

TEST_CASE("groupoid: irreducible characters are orthonormal") {
  FiniteGroupoid bd4({{dihedralGroup(4), 1, "D4"}});
  auto in = inertia(bd4);
  auto chars = groupoidIrrepCharacters(bd4, in);
  CHECK(chars.size() == 5);
  CHECK(isIdentity(gramMatrix(in.groupoid, values(chars))));

  FiniteGroupoid two({{cyclicGroup(3), 2, "C3"}, {dihedralGroup(4), 3, "D4"}});
  auto in2 = inertia(two);
  auto chars2 = groupoidIrrepCharacters(two, in2);
  CHECK(chars2.size() == 8);
  CHECK(isIdentity(gramMatrix(in2.groupoid, values(chars2))));
  CHECK(two.checkAxioms(0));
  CHECK(two.checkAxioms(1));

  FiniteGroupoid discrete({{cyclicGroup(1), 1, "a"}, {cyclicGroup(1), 4, "b"}});
  auto ind = groupoidIrrepCharacters(discrete, inertia(discrete));
  CHECK(ind[0].values == std::vector<Cyclo>{1, 0});
  CHECK(ind[1].values == std::vector<Cyclo>{0, 1});
}

TEST_CASE("groupoid: mass does not depend on object counts") {
  FiniteGroupoid a({{dihedralGroup(4), 1, ""}, {cyclicGroup(3), 1, ""}});
  FiniteGroupoid b({{dihedralGroup(4), 5, ""}, {cyclicGroup(3), 2, ""}});
  CHECK(a.mass() == b.mass());
  CHECK(a.mass() == Rational(11, 24));
}
