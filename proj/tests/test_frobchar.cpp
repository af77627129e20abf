#include <doctest.h>

#include <numeric>
#include <set>

#include "csheaf/frobchar.hpp"
#include "oracle.hpp"

using namespace csheaf;

namespace {

std::vector<int> autFromKeys(const GroupPtr& g, const std::function<Key(Key)>& f) {
  std::vector<int> out(g->order());
  for (size_t i = 0; i < g->order(); ++i) out[i] = g->index(f(g->key(static_cast<int>(i))));
  return out;
}

std::vector<int> inversion(const GroupPtr& g) {
  std::vector<int> out(g->order());
  for (size_t i = 0; i < g->order(); ++i) out[i] = g->inv(static_cast<int>(i));
  return out;
}

std::vector<int> identityAut(const GroupPtr& g) {
  std::vector<int> out(g->order());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// (a, b, c) -> (-a, -b, c)
std::vector<int> heisenbergTorus(const GroupPtr& g, Key p) {
  return autFromKeys(g, [p](Key x) {
    Key a = x % p, b = (x / p) % p, c = x / (p * p);
    return (p - a) % p + p * ((p - b) % p) + p * p * c;
  });
}

// brute-force count of orbits of x -> s x F(s)^{-1}
size_t naiveTwistedClassCount(const FiniteGroup& g, const std::vector<int>& f) {
  std::set<std::set<int>> orbits;
  for (size_t x = 0; x < g.order(); ++x) {
    std::set<int> o;
    for (size_t s = 0; s < g.order(); ++s)
      o.insert(g.mul(g.mul(static_cast<int>(s), static_cast<int>(x)), g.inv(f[s])));
    orbits.insert(o);
  }
  return orbits.size();
}

}  // namespace

TEST_CASE("frobchar: twisted classes and invariant irreducibles") {
  auto z3 = cyclicGroup(3);
  TwistedGroup t1(z3, inversion(z3));
  CHECK(t1.order() == 2);
  CHECK(t1.tilde()->order() == 6);
  CHECK(!t1.tilde()->isAbelian());
  CHECK(t1.fClasses().count() == 1);
  CHECK(fInvariantIrreps(t1).size() == 1);
  CHECK(extensionsOfIrrep(t1, 0).size() == 2);

  auto v4 = elementaryAbelian(2, 2);
  TwistedGroup t2(v4, autFromKeys(v4, [](Key k) { return (k >> 1) | ((k & 1) << 1); }));
  CHECK(t2.tilde()->order() == 8);
  CHECK(t2.tilde()->characterTable().degrees() == std::vector<long>{1, 1, 1, 1, 2});
  CHECK(t2.fClasses().count() == 2);
  auto inv2 = fInvariantIrreps(t2);
  CHECK(inv2.size() == 2);
  for (int i : inv2) CHECK(extensionsOfIrrep(t2, i).size() == 2);

  auto h = heisenbergGroup(3);
  TwistedGroup t3(h, heisenbergTorus(h, 3));
  CHECK(t3.order() == 2);
  CHECK(t3.fClasses().count() == naiveTwistedClassCount(*h, t3.frobenius()));
  CHECK(t3.fClasses().count() == 3);
  CHECK(fInvariantIrreps(t3).size() == 3);

  TwistedGroup t4(h, identityAut(h));
  CHECK(t4.order() == 1);
  CHECK(t4.fClasses().count() == 11);
  for (size_t g = 0; g < h->order(); ++g) CHECK(t4.timesSigma(static_cast<int>(g)) == t4.inTilde(static_cast<int>(g)));

  CHECK_THROWS(TwistedGroup(h, inversion(h)));
}

TEST_CASE("frobchar: twisted character basis") {
  auto h = heisenbergGroup(3);
  auto v4 = elementaryAbelian(2, 2);
  auto d4 = dihedralGroup(4);
  std::vector<TwistedGroup> cases{
      TwistedGroup(cyclicGroup(3), inversion(cyclicGroup(3))),
      TwistedGroup(v4, autFromKeys(v4, [](Key k) { return (k >> 1) | ((k & 1) << 1); })),
      TwistedGroup(h, heisenbergTorus(h, 3)),
      TwistedGroup(d4, autFromKeys(d4, [](Key k) {
        // r -> r, s -> rs
        Key i = k % 4, j = k / 4;
        return ((i + j) % 4) + 4 * j;
      })),
  };
  for (const auto& t : cases) {
    auto basis = twistedCharacterBasis(t);
    REQUIRE(basis.size() == t.fClasses().count());
    std::vector<std::vector<Cyclo>> m;
    for (const auto& b : basis) m.push_back(b.values);
    CHECK(exactRank(m) == basis.size());
    const auto& g = *t.gamma();
    // (1/|Gamma|) sum_gamma chi~(gamma sigma) conj(psi~(gamma sigma)) = delta
    for (const auto& a : basis)
      for (const auto& b : basis) {
        Cyclo s;
        for (size_t x = 0; x < g.order(); ++x)
          s += twistedValue(t, a.extension, static_cast<int>(x)) *
               twistedValue(t, b.extension, static_cast<int>(x)).conjugate();
        CHECK(s / Cyclo(static_cast<long>(g.order())) == Cyclo(a.irrep == b.irrep ? 1 : 0));
      }
  }
}

TEST_CASE("frobchar: exact rank") {
  std::vector<std::vector<Cyclo>> m{{Cyclo(1), Cyclo::zeta(3)}, {Cyclo::zeta(3), Cyclo::zeta(3, 2)}, {Cyclo(0), Cyclo(0)}};
  CHECK(exactRank(m) == 1);
  m[2][1] = Cyclo(1);
  CHECK(exactRank(m) == 2);
  CHECK(exactRank({}) == 0);
}

TEST_CASE("frobchar: trace formula on irreducibles of the extension") {
  auto h = heisenbergGroup(3);
  auto v4 = elementaryAbelian(2, 2);
  for (const auto& t : {TwistedGroup(h, heisenbergTorus(h, 3)), TwistedGroup(cyclicGroup(5), inversion(cyclicGroup(5))),
                        TwistedGroup(v4, autFromKeys(v4, [](Key k) { return (k >> 1) | ((k & 1) << 1); }))}) {
    const auto& tab = t.tilde()->characterTable();
    for (size_t i = 0; i < tab.size(); ++i) {
      auto r = traceFormulaCheck(t, tab.character(t.tilde(), i));
      CHECK(r.holds);
      // numeric cross-check of the average
      std::complex<double> avg = 0;
      for (size_t x = 0; x < t.gamma()->order(); ++x)
        avg += oracle::eval(tab.character(t.tilde(), i).at(t.timesSigma(static_cast<int>(x))));
      CHECK(oracle::close(r.average, avg / static_cast<double>(t.gamma()->order())));
    }
  }
}

TEST_CASE("frobchar: extension value rings") {
  auto h = heisenbergGroup(3);
  TwistedGroup t(h, heisenbergTorus(h, 3));
  for (int i : fInvariantIrreps(t)) {
    auto er = extensionValueRing(t, i, 3, 3);
    CHECK(er.bestConductor <= er.canonicalConductor);
    CHECK(er.withinBound.has_value());
  }
}

TEST_CASE("frobchar: homogeneous T-basis on a point") {
  auto h = heisenbergGroup(3);
  TwistedGroup t(h, heisenbergTorus(h, 3));
  HomogeneousSpace pt{1, std::vector<std::vector<int>>(h->order(), std::vector<int>{0}), {0}};
  auto hb = homogeneousTBasis(t, pt);
  CHECK(hb.isBasis);
  CHECK(hb.orbitCount == t.fClasses().count());
  CHECK(hb.vectors.size() == 3);
}

TEST_CASE("frobchar: chi-isotypic T-basis") {
  auto u = heisenbergGroup(2);
  TwistedGroup t(u, identityAut(u));
  // X = U / Z(U) under left multiplication; Z(U) = {0, c}
  int c = u->index(4);
  std::vector<int> coset(u->order());
  std::vector<int> reps;
  for (size_t g = 0; g < u->order(); ++g) {
    int gi = static_cast<int>(g);
    int other = u->mul(gi, c);
    if (other > gi) {
      coset[g] = coset[other] = static_cast<int>(reps.size());
      reps.push_back(gi);
    } else if (other == gi) {
      coset[g] = static_cast<int>(reps.size());
      reps.push_back(gi);
    }
  }
  for (size_t g = 0; g < u->order(); ++g) coset[g] = coset[std::min(static_cast<int>(g), u->mul(static_cast<int>(g), c))];
  HomogeneousSpace x;
  x.points = reps.size();
  REQUIRE(x.points == 4);
  x.action.assign(u->order(), std::vector<int>(4));
  for (size_t g = 0; g < u->order(); ++g)
    for (int y = 0; y < 4; ++y) x.action[g][y] = coset[u->mul(static_cast<int>(g), reps[y])];
  x.frobenius = {0, 1, 2, 3};

  auto plain = homogeneousTBasis(t, x);
  CHECK(plain.stabilizer->order() == 2);
  CHECK(plain.orbitCount == 2);
  CHECK(plain.isBasis);

  CentralCharacter chi{{0, c}, {Cyclo(1), Cyclo(-1)}};
  auto iso = homogeneousTBasis(t, x, chi);
  CHECK(iso.targetDimension == 1);
  CHECK(iso.vectors.size() == 1);
  CHECK(iso.isBasis);

  CentralCharacter bad{{0, c}, {Cyclo(1), Cyclo::zeta(3)}};
  CHECK_THROWS(homogeneousTBasis(t, x, bad));
}

TEST_CASE("frobchar: Drinfeld double trace functions") {
  struct Case {
    TwistedGroup t;
    size_t dim;
  };
  auto d4 = dihedralGroup(4);
  auto h = heisenbergGroup(3);
  auto v4 = elementaryAbelian(2, 2);
  std::vector<Case> cases{{TwistedGroup(d4, identityAut(d4)), 22},
                          {TwistedGroup(h, identityAut(h)), 105},
                          {TwistedGroup(v4, autFromKeys(v4, [](Key k) { return (k >> 1) | ((k & 1) << 1); })), 0},
                          {TwistedGroup(h, heisenbergTorus(h, 3)), 0}};
  for (auto& cs : cases) {
    auto dd = drinfeldDoubleTraceFunctions(cs.t);
    CHECK(dd.pGroup);
    if (cs.dim) CHECK(dd.dimension == cs.dim);
    REQUIRE(dd.functions.size() == dd.dimension);
    std::vector<GroupoidFunction> fs;
    for (const auto& f : dd.functions) fs.push_back(f.values);
    CHECK(isIdentityMatrix(groupoidGram(fs)));
    // change of basis to the irreducible characters of all forms
    std::vector<std::vector<Cyclo>> m;
    for (const auto& f : fs) {
      std::vector<Cyclo> row;
      for (size_t a = 0; a < dd.forms->groups.size(); ++a) {
        const auto& g = dd.forms->groups[a];
        for (size_t i = 0; i < g->characterTable().size(); ++i)
          row.push_back(groupoidInner(f, supportedOn(dd.forms, a, g->characterTable().character(g, i))));
      }
      m.push_back(std::move(row));
    }
    CHECK(isUnitary(m));
  }
}
