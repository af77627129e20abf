#include <doctest.h>

#include "csheaf/lpackets.hpp"
#include "oracle.hpp"

using namespace csheaf;

namespace {

SchemePtr ul3(int p, int s) { return makeScheme({SchemeKind::Unitriangular, p, s, 3, 1}); }

}  // namespace

TEST_CASE("lpackets: rational squares") {
  CHECK(isRationalSquare(Rational(4, 9)));
  CHECK(isRationalSquare(Rational(0)));
  CHECK(!isRationalSquare(Rational(1, 2)));
  CHECK(!isRationalSquare(Rational(2)));
  CHECK(!isRationalSquare(Rational(-1)));
}

TEST_CASE("lpackets: stabilizer checks") {
  for (int p : {2, 3}) {
    auto g = ul3(p, 1);
    auto pairs = standardPairs(g, 2);
    REQUIRE(pairs.size() == static_cast<size_t>(p * p + p - 1));
    for (const auto& pr : pairs) {
      auto rep = stabilizerCheck(pr);
      CHECK(rep.passed);
      for (const auto& lv : rep.levels) CHECK(!lv.skipped);
    }
    // central pair: stabilizer is H at every level
    auto rep = stabilizerCheck(pairs.back());
    for (const auto& lv : rep.levels) CHECK(lv.stabilizerOrder == std::lround(std::pow(p, 2 * lv.level)));
  }
  auto a4 = makeScheme({SchemeKind::ExampleA4, 2, 1, 3, 1});
  auto pairs = standardPairs(a4, 2);
  REQUIRE(pairs.size() == 4);
  for (const auto& pr : pairs) CHECK(stabilizerCheck(pr).passed);
  // beta = 1 on the trivial form: the normalizer in U_0 is H_0
  auto rep = stabilizerCheck(pairs[0]);
  CHECK(rep.levels[0].stabilizerOrder == 4);

  // a wrong normalizer claim is caught
  auto bad = ul3(2, 1);
  auto wrong = standardPairs(bad, 1).back();
  wrong.normalizer = {0, 1, 2};
  CHECK(!stabilizerCheck(wrong).passed);
}

TEST_CASE("lpackets: pair validation") {
  auto g = ul3(2, 1);
  AdmissiblePairData pr;
  pr.scheme = g;
  pr.h = {g->coordinateIndex("12"), g->coordinateIndex("23")};
  pr.coefficients = {1, 0};
  pr.normalizer = {0, 1, 2};
  CHECK_THROWS_AS(validatePair(pr), std::invalid_argument);  // not a subgroup
  pr.h = {g->coordinateIndex("13")};
  pr.coefficients = {1};
  pr.normalizer = {g->coordinateIndex("23")};
  CHECK_THROWS_AS(validatePair(pr), std::invalid_argument);  // H not inside G'
  pr.normalizer = {0, 1, 2};
  pr.coefficients = {7};
  CHECK_THROWS_AS(validatePair(pr), std::invalid_argument);
  auto a4 = makeScheme({SchemeKind::ExampleA4, 2, 1, 3, 1});
  AdmissiblePairData d;
  d.scheme = a4;
  d.h = {a4->coordinateIndex("12")};
  d.coefficients = {1};
  d.normalizer = {0, 1, 2};
  CHECK_THROWS_AS(validatePair(d), std::invalid_argument);  // disconnected H
  // on the twisted form, l = b + gamma c needs gamma^2 + gamma = 1
  d.baseForm = 1;
  d.h = {a4->coordinateIndex("13"), a4->coordinateIndex("23")};
  d.coeffDegree = 2;
  d.coefficients = {1, 1};
  d.normalizer = d.h;
  CHECK_THROWS_AS(validatePair(d), std::invalid_argument);
}

TEST_CASE("lpackets: Heisenberg idempotents") {
  auto g = ul3(3, 1);
  auto pairs = standardPairs(g);
  for (const auto& pr : pairs) {
    auto pieces = heisenbergIdempotents(pr);
    REQUIRE(pieces.size() == 1);
    CHECK(convolve(pieces[0].f, pieces[0].f) == pieces[0].f);
  }
  auto central = heisenbergIdempotents(pairs.back())[0];
  CHECK(central.group->order() == 9);
  CHECK(central.f.values[0] == Cyclo(frac(1, 9)));
  auto ga = makeScheme({SchemeKind::Additive, 2, 1, 3, 2});
  auto triv = heisenbergIdempotents(standardPairs(ga)[0])[0];
  CHECK(triv.f == constantFunction(triv.group, Cyclo(frac(1, 4))));
}

TEST_CASE("lpackets: easy groups UL3") {
  for (auto [p, s] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{2, 2}}) {
    auto g = ul3(p, s);
    long q = g->q();
    auto part = packetPartition(g, standardPairs(g), 2);
    CHECK(part.packets.size() == static_cast<size_t>(q * q + q - 1));
    CHECK(part.complete);
    for (const auto& lp : part.packets) {
      CHECK(lp.idempotent);
      CHECK(lp.positive);
      REQUIRE(lp.ne.has_value());
      CHECK(lp.valueAtOne[0] == Cyclo(Rational(1) / Rational(static_cast<long>(std::pow(q, *lp.ne)))));
      auto ss = verifySumSquares(*g, lp);
      CHECK(ss.applicable);
      CHECK(ss.holds);
    }
    CHECK(*part.packets.front().ne == 3);
    CHECK(*part.packets.back().ne == 1);
    auto easy = verifyEasy(*g, part);
    CHECK(easy.passed);
    // oracle: the packet degrees are the character degrees
    std::vector<long> degs;
    for (const auto& lp : part.packets) degs.push_back(lp.members[0].degree);
    std::sort(degs.begin(), degs.end());
    CHECK(degs == oracle::characterDegrees(*part.forms->groups[0]));
  }
}

TEST_CASE("lpackets: additive groups") {
  auto g = makeScheme({SchemeKind::Additive, 3, 1, 3, 1});
  auto part = packetPartition(g, standardPairs(g));
  CHECK(part.packets.size() == 3);
  CHECK(part.complete);
  CHECK(verifyEasy(*g, part).passed);
}

TEST_CASE("lpackets: vanishing idempotent on the twisted form") {
  auto g = makeScheme({SchemeKind::ExampleA4, 2, 1, 3, 1});
  auto part = packetPartition(g, standardPairs(g));
  REQUIRE(part.forms->groups.size() == 2);
  CHECK(part.complete);
  const auto& lb = part.packets[0];  // l = b on the trivial form
  CHECK(lb.t.parts[1].isZero());
  CHECK(lb.valueAtOne[0] == Cyclo(frac(1, 2)));
  CHECK(lb.members.size() == 1);
  CHECK(lb.members[0].degree == 2);
  // the pair living on the twisted form vanishes on the trivial one
  const auto& lt = part.packets[3];
  CHECK(lt.t.parts[0].isZero());
  CHECK(!lt.t.parts[1].isZero());
  // G' = U pairs give packets spanning both forms
  for (int k : {1, 2}) {
    CHECK(part.packets[k].members.size() == 4);
    CHECK(!part.packets[k].ne.has_value());
  }
  size_t total = 0;
  for (const auto& lp : part.packets) {
    total += lp.members.size();
    CHECK(lp.idempotent);
  }
  CHECK(total == 10);

  auto g3 = makeScheme({SchemeKind::ExampleA4, 3, 1, 3, 1});
  auto part3 = packetPartition(g3, standardPairs(g3), 4);
  CHECK(part3.forms->groups.size() == 3);
  CHECK(part3.packets.size() == 9);
  CHECK(part3.complete);
}

TEST_CASE("lpackets: constant groups") {
  auto g = makeScheme({SchemeKind::Constant, 2, 1, 3, 2});
  auto part = packetPartition(g, standardPairs(g));
  CHECK(part.packets.size() == 1);
  CHECK(part.packets[0].members.size() == 16);
  CHECK(part.complete);
}

TEST_CASE("lpackets: incomplete lists and bad data") {
  auto g = ul3(2, 1);
  auto pairs = standardPairs(g);
  pairs.pop_back();
  auto part = packetPartition(g, pairs);
  CHECK(!part.complete);
  CHECK(part.leftovers.size() == 1);
  auto dup = standardPairs(g);
  dup.push_back(dup[0]);
  CHECK_THROWS_AS(packetPartition(g, dup), PacketError);
}

TEST_CASE("lpackets: value rings") {
  auto ga2 = makeScheme({SchemeKind::Additive, 2, 1, 3, 1});
  auto r2 = verifyValueRings(*ga2, packetPartition(ga2, standardPairs(ga2)));
  CHECK(r2.passed);
  CHECK(!r2.halfPowerRational);
  CHECK(r2.lambda == Cyclo(1) + Cyclo::zeta(4));
  for (const auto& it : r2.items) CHECK(it.rationalScaling == false);

  auto ga3 = makeScheme({SchemeKind::Additive, 3, 1, 3, 1});
  auto r3 = verifyValueRings(*ga3, packetPartition(ga3, standardPairs(ga3)));
  CHECK(r3.passed);
  CHECK(r3.lambda * r3.lambda.conjugate() == Cyclo(3));
  CHECK(oracle::close(r3.lambda, std::complex<double>(0, std::sqrt(3.0))));

  auto u4 = ul3(2, 2);
  auto r4 = verifyValueRings(*u4, packetPartition(u4, standardPairs(u4)));
  CHECK(r4.passed);
  CHECK(r4.lambda == Cyclo(2) * Cyclo::zeta(4));
  CHECK(r4.halfPowerRational);
  for (const auto& it : r4.items) CHECK(it.unitNorm == true);

  auto a4 = makeScheme({SchemeKind::ExampleA4, 2, 1, 3, 1});
  CHECK(verifyValueRings(*a4, packetPartition(a4, standardPairs(a4))).passed);
}
