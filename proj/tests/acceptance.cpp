// One line per acceptance criterion: PASS/FAIL, wall time and budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "csheaf/classfun.hpp"
#include "csheaf/frobchar.hpp"
#include "csheaf/groupoid.hpp"
#include "csheaf/lpackets.hpp"
#include "fixture.hpp"
#include "oracle.hpp"

using namespace csheaf;
namespace app = csheaf::app;

namespace {

std::string fixturePath(const std::string& name) { return std::string(CSHEAF_FIXTURE_DIR) + "/" + name + ".fx"; }
app::Fixture fixture(const std::string& name) { return app::loadFixture(fixturePath(name)); }

struct Outcome {
  bool ok = true;
  std::ostringstream why;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double budget, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget) out.require(false, "over time budget");
  if (!out.ok) ++failures;
  std::printf("[%s] %d %-44s %8.3f s (budget %g s)%s%s\n", out.ok ? "PASS" : "FAIL", id, name.c_str(), secs, budget,
              out.ok ? "" : "  ", out.why.str().c_str());
  std::fflush(stdout);
}

std::vector<long> sortedDegrees(const GroupPtr& g) {
  auto d = g->characterTable().degrees();
  std::sort(d.begin(), d.end());
  return d;
}

void characterTableChecks(Outcome& o, const std::string& tag, const GroupPtr& g, const std::vector<long>& degrees) {
  const auto& tab = g->characterTable();
  const auto& cl = g->classes();
  o.require(sortedDegrees(g) == degrees, tag + ": degrees");
  long sum = 0;
  for (long d : tab.degrees()) sum += d * d;
  o.require(sum == static_cast<long>(g->order()), tag + ": sum of squares");
  for (size_t i = 0; i < tab.size(); ++i)
    for (size_t j = 0; j < tab.size(); ++j)
      o.require(normalizedInner(tab.character(g, i), tab.character(g, j)) == Cyclo(i == j ? 1 : 0), tag + ": rows");
  for (size_t c = 0; c < cl.count(); ++c)
    for (size_t d = 0; d < cl.count(); ++d) {
      Cyclo s;
      for (size_t i = 0; i < tab.size(); ++i) s += tab.row(i)[c] * tab.row(i)[d].conjugate();
      o.require(s == Cyclo(c == d ? static_cast<long>(g->order()) / cl.sizes[c] : 0), tag + ": columns");
    }
  auto orc = oracle::classMatrixEigenbasis(*g);
  o.require(orc.degrees == degrees, tag + ": oracle degrees");
  std::vector<std::vector<double>> exact;
  for (const auto& row : tab.rows()) {
    std::vector<double> r;
    for (const auto& z : row) r.push_back(std::round(std::abs(oracle::eval(z)) * 1e6) / 1e6);
    exact.push_back(std::move(r));
  }
  std::sort(exact.begin(), exact.end());
  bool match = exact.size() == orc.absValues.size();
  for (size_t i = 0; match && i < exact.size(); ++i)
    for (size_t j = 0; j < exact[i].size(); ++j) match = match && std::abs(exact[i][j] - orc.absValues[i][j]) <= 1e-6;
  o.require(match, tag + ": oracle absolute values");
}

const char* kTwistedFixtures[] = {"z3_inversion", "v4_swap", "heisenberg27_torus"};

TwistedGroup twisted(const std::string& name) {
  auto fx = fixture(name);
  auto g = app::buildGroup(fx);
  return TwistedGroup(g, app::buildAutomorphism(fx, g));
}

PacketPartition partition(const std::string& name, int jobs = 4) {
  auto fx = fixture(name);
  auto g = app::buildScheme(*fx.scheme);
  return packetPartition(g, app::buildPairs(fx, g, fx.nmax), jobs);
}

ClassFunction randomFunction(const GroupPtr& g, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  ClassFunction f = zeroFunction(g);
  for (auto& v : f.values) v = Cyclo(frac(d(rng), 1 + (d(rng) & 1))) + Cyclo::zeta(4) * Cyclo(d(rng));
  return f;
}

}  // namespace

int main() {
  criterion(1, "character tables UL3(F2), Heisenberg-27", 2.0, [](Outcome& o) {
    auto ul3 = app::buildScheme("UL 3 2")->pointsOver(1).group;
    characterTableChecks(o, "UL3(F2)", ul3, {1, 1, 1, 1, 2});
    characterTableChecks(o, "H27", heisenbergGroup(3), {1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3});
  });

  criterion(2, "twisted basis dimension", 5.0, [](Outcome& o) {
    for (const char* name : kTwistedFixtures) {
      auto t = twisted(name);
      size_t classes = t.fClasses().count();
      o.require(classes == fInvariantIrreps(t).size(), std::string(name) + ": count");
      std::vector<std::vector<Cyclo>> m;
      for (const auto& tc : twistedCharacterBasis(t)) m.push_back(tc.values);
      o.require(m.size() == classes && exactRank(m) == classes, std::string(name) + ": invertible");
    }
  });

  criterion(3, "trace formula on every irreducible of the extension", 5.0, [](Outcome& o) {
    for (const char* name : kTwistedFixtures) {
      auto t = twisted(name);
      const auto& tab = t.tilde()->characterTable();
      for (size_t i = 0; i < tab.size(); ++i) {
        auto r = traceFormulaCheck(t, tab.character(t.tilde(), i));
        o.require(r.holds && r.classSum == r.invariantTrace && r.average == r.invariantTrace,
                  std::string(name) + ": irreducible " + std::to_string(i));
      }
    }
  });

  criterion(4, "Drinfeld double orthonormality D4, Heisenberg-27", 30.0, [](Outcome& o) {
    for (auto [name, expected] : {std::pair<const char*, size_t>{"d4_identity", 22}, {"heisenberg27_identity", 105}}) {
      auto t = twisted(name);
      auto dd = drinfeldDoubleTraceFunctions(t);
      size_t irrOfCentralizers = 0;
      const auto& cl = t.gamma()->classes();
      for (size_t c = 0; c < cl.count(); ++c) irrOfCentralizers += t.gamma()->centralizer(cl.reps[c])->characterTable().size();
      o.require(irrOfCentralizers == expected, std::string(name) + ": centralizer count");
      o.require(dd.functions.size() == irrOfCentralizers, std::string(name) + ": function count");
      std::vector<GroupoidFunction> fs;
      for (const auto& f : dd.functions) fs.push_back(f.values);
      o.require(isIdentityMatrix(groupoidGram(fs)), std::string(name) + ": Gram matrix");
    }
  });

  criterion(5, "L-packets of UL3(F_q), q = 2, 3, 4", 60.0, [](Outcome& o) {
    for (auto [name, q] : {std::pair<const char*, long>{"ul3_q2", 2}, {"ul3_q3", 3}, {"ul3_q4", 4}}) {
      std::string tag = name;
      auto fx = fixture(name);
      auto g = app::buildScheme(*fx.scheme);
      auto part = packetPartition(g, app::buildPairs(fx, g, fx.nmax), 4);
      o.require(part.packets.size() == static_cast<size_t>(q * q + q - 1), tag + ": packet count");
      o.require(part.complete, tag + ": partition");
      auto easy = verifyEasy(*g, part);
      o.require(easy.applicable && easy.passed, tag + ": chi = q^(dim - d_e) t");
      for (const auto& lp : part.packets) {
        o.require(lp.members.size() == 1, tag + ": singleton");
        o.require(lp.ne && lp.valueAtOne[0] == Cyclo(Rational(1) / Rational(static_cast<long>(std::pow(q, *lp.ne)))),
                  tag + ": t(1) = q^-n_e");
        o.require(verifySumSquares(*g, lp).holds, tag + ": sum of squares");
      }
    }
  });

  criterion(6, "vanishing idempotent on the nontrivial form", 5.0, [](Outcome& o) {
    auto part = partition("example_a4_p2");
    o.require(part.forms->groups.size() == 2, "two pure inner forms");
    bool found = false;
    for (const auto& lp : part.packets)
      found = found || (lp.t.parts[1].isZero() && !lp.valueAtOne[0].isZero() && lp.pair == 0);
    o.require(found, "pair on the trivial form with t = 0 on the other form and t(1) != 0");
    o.require(part.complete, "partition");
  });

  criterion(7, "value rings", 1.0, [](Outcome& o) {
    for (const char* name : {"ul3_q2", "ga_q2", "ga_q3", "example_a4_p2"}) {
      auto fx = fixture(name);
      auto g = app::buildScheme(*fx.scheme);
      auto part = packetPartition(g, app::buildPairs(fx, g, fx.nmax), 4);
      auto r = verifyValueRings(*g, part);
      o.require(r.charactersIntegral, std::string(name) + ": characters integral");
      o.require(r.idempotentsInRing, std::string(name) + ": idempotents");
      o.require(r.lambdaNorm && r.lambdaInRing, std::string(name) + ": lambda");
    }
    auto h = heisenbergGroup(3);
    for (const auto& e : minimalIdempotents(h))
      for (const auto& v : e.values) o.require(v.inRing(3, 3), "H27 idempotents");
    for (const auto& row : h->characterTable().rows())
      for (const auto& v : row) o.require(v.inRing(3, 1), "H27 characters");
    // q = 2: no rational lambda with lambda conj(lambda) = 1/2, while 1 + i has norm 2
    o.require(!isRationalSquare(frac(1, 2)), "1/2 is not a rational square");
    Cyclo lambda = gaussSumLambda(2);
    o.require(lambda == Cyclo(1) + Cyclo::zeta(4), "lambda = 1 + i");
    o.require(lambda * lambda.conjugate() == Cyclo(2) && !lambda.isRational(), "lambda conj(lambda) = 2");
  });

  criterion(8, "groupoid character theory", 1.0, [](Outcome& o) {
    for (const char* name : {"groupoid_bd4", "groupoid_two"}) {
      auto gd = app::buildGroupoid(*fixture(name).groupoid);
      auto in = inertia(gd);
      std::vector<std::vector<Cyclo>> vals;
      for (const auto& c : groupoidIrrepCharacters(gd, in)) vals.push_back(c.values);
      o.require(isIdentityMatrix(gramMatrix(in.groupoid, vals)), std::string(name) + ": Gram matrix");
      for (size_t c = 0; c < gd.componentCount(); ++c) o.require(gd.checkAxioms(c), std::string(name) + ": axioms");
    }
    o.require(app::buildGroupoid(*fixture("groupoid_two").groupoid).componentCount() == 2, "two components");
  });

  criterion(9, "property suites", 30.0, [](Outcome& o) {
    std::mt19937 rng(20261016);
    std::vector<GroupPtr> groups{dihedralGroup(4), heisenbergGroup(3), symmetricGroup(4), app::buildScheme("exampleA4 2")->pointsOver(1).group};
    for (const auto& g : groups) {
      for (int trial = 0; trial < 3; ++trial) {
        auto a = randomFunction(g, rng), b = randomFunction(g, rng), c = randomFunction(g, rng);
        o.require(convolve(a, b) == convolve(b, a), "commutative");
        o.require(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)), "associative");
        o.require(convolve(a, b + c) == convolve(a, b) + convolve(a, c), "distributive");
      }
      auto f = randomFunction(g, rng);
      o.require(convolve(delta1(g), f) == f, "delta_1 is the unit");
      auto es = minimalIdempotents(g);
      ClassFunction total = zeroFunction(g);
      for (size_t i = 0; i < es.size(); ++i) {
        total = total + es[i];
        for (size_t j = 0; j < es.size(); ++j)
          o.require(convolve(es[i], es[j]) == (i == j ? es[i] : zeroFunction(g)), "idempotent orthogonality");
      }
      o.require(total == delta1(g), "idempotents sum to delta_1");
      // positivity: characters and idempotents are positive; closed under sums and induction
      const auto& tab = g->characterTable();
      for (size_t i = 0; i + 1 < tab.size(); ++i) {
        auto s = tab.character(g, i) + es[i + 1] * Cyclo(frac(3, 2));
        o.require(isPositive(tab.character(g, i)).positive && isPositive(s).positive, "closed under sums");
      }
      auto h = g->centralizer(g->classes().reps.back());
      for (size_t i = 0; i < h->characterTable().size(); ++i) {
        auto chi = h->characterTable().character(h, i);
        o.require(isPositive(induceClassFunction(h, g, chi)).positive, "closed under induction");
      }
      o.require(!isPositive(tab.character(g, 0) * Cyclo(-1)).positive, "negative is not positive");
    }
    // Lang cardinalities on every scheme fixture for n <= 3
    for (const char* name : {"ul3_q2", "ul3_q3", "ul3_q4", "ga_q2", "ga_q3", "ga2_q2", "example_a4_p2", "example_a4_p3", "constant_z2sq"}) {
      auto g = app::buildScheme(*fixture(name).scheme);
      for (int n = 1; n <= 3; ++n) {
        long want = static_cast<long>(std::pow(g->q(), n * g->dim())) * static_cast<long>(g->pi0()->order());
        long count = 0;
        g->forEachPoint(n, [&](Key) { ++count; });
        o.require(count == want, std::string(name) + ": |G(F_q^" + std::to_string(n) + ")|");
        if (g->pointCount(n) <= UnipotentScheme::kPointCap)
          o.require(static_cast<long>(g->pointsOver(n).group->order()) == want, std::string(name) + ": point group");
      }
    }
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
