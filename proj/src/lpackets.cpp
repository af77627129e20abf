#include "csheaf/lpackets.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace csheaf {

namespace {

using Elt = FiniteField::Elt;

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Rational qPower(long q, long e) {
  Rational r(ipow(q, static_cast<int>(std::labs(e))));
  return e >= 0 ? r : Rational(1) / r;
}

template <class Fn>
void parallelFor(size_t n, int jobs, Fn fn) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex m;
  std::vector<std::thread> pool;
  for (int j = 0; j < std::min<int>(jobs, static_cast<int>(n)); ++j)
    pool.emplace_back([&] {
      for (size_t i; (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// Base-field degree of the coordinates over F_p.
int baseDegree(const UnipotentScheme& g) { return g.spec().kind == SchemeKind::Constant ? 1 : g.spec().s; }

std::vector<char> mask(const UnipotentScheme& g, const std::vector<int>& coords) {
  std::vector<char> m(g.coordinateCount(), 0);
  for (int c : coords) m.at(c) = 1;
  return m;
}

bool inPattern(const UnipotentScheme& g, const std::vector<char>& m, Key k, int level) {
  auto c = g.unpack(k, level);
  for (size_t i = 0; i < c.size(); ++i)
    if (!m[i] && c[i]) return false;
  return true;
}

// Component group of a coordinate pattern, as pi0 indices.
std::vector<int> patternPi0(const UnipotentScheme& g, const std::vector<char>& m) {
  std::vector<int> out;
  for (size_t x = 0; x < g.pi0()->order(); ++x)
    if (inPattern(g, m, g.section(static_cast<int>(x), 1), 1)) out.push_back(static_cast<int>(x));
  return out;
}

int patternDim(const UnipotentScheme& g, const std::vector<char>& m) {
  if (g.spec().kind == SchemeKind::Constant) return 0;
  int d = static_cast<int>(std::count(m.begin(), m.end(), 1));
  if (g.spec().kind == SchemeKind::ExampleA4 && m[g.coordinateIndex("12")]) --d;
  return d;
}

// l(h) for a point at `level`, a multiple of the coefficient degree.
Elt ell(const AdmissiblePairData& pr, Key k, int level) {
  const auto& g = *pr.scheme;
  auto f = g.field(level);
  auto e = Embedding::get(g.field(pr.coeffDegree), f);
  auto c = g.unpack(k, level);
  Elt v = 0;
  for (size_t i = 0; i < pr.h.size(); ++i) v = f->add(v, f->mul(e->map(pr.coefficients[i]), c[pr.h[i]]));
  return v;
}

// exponent of psi_n(h) = zeta_p^{Tr(l(h))}
int psiExponent(const AdmissiblePairData& pr, Key k, int level) {
  auto f = pr.scheme->field(level);
  return f->traceToPrime(ell(pr, k, level), f->degree());
}

std::vector<Key> patternPoints(const UnipotentScheme& g, const std::vector<char>& m, int level) {
  std::vector<Key> out;
  g.forEachPoint(level, [&](Key k) {
    if (inPattern(g, m, k, level)) out.push_back(k);
  });
  return out;
}

// Elementary points of H at a level: one coordinate set to a power of the field generator's basis.
std::vector<Key> elementaryPoints(const AdmissiblePairData& pr, int level) {
  const auto& g = *pr.scheme;
  std::vector<Key> out;
  int deg = g.field(level)->degree();
  for (int t : pr.h)
    for (int i = 0; i < deg; ++i) {
      std::vector<Elt> c(g.coordinateCount(), 0);
      c[t] = static_cast<Elt>(ipow(g.p(), i));
      out.push_back(g.pack(c, level));
    }
  return out;
}

std::string coordList(const UnipotentScheme& g, const std::vector<int>& cs) {
  std::string s;
  for (int c : cs) s += (s.empty() ? "" : ",") + g.coordinateNames()[c];
  return s.empty() ? "1" : s;
}

}  // namespace

std::string pairLabel(const AdmissiblePairData& pr) {
  const auto& g = *pr.scheme;
  std::ostringstream os;
  if (pr.baseForm) os << "form=" << g.pi0()->show(pr.baseForm) << " ";
  os << "H=" << coordList(g, pr.h) << " l=";
  bool any = false;
  for (size_t i = 0; i < pr.h.size(); ++i)
    if (pr.coefficients[i]) {
      os << (any ? "+" : "") << pr.coefficients[i] << "*x" << g.coordinateNames()[pr.h[i]];
      any = true;
    }
  if (!any) os << "0";
  if (pr.coeffDegree > 1) os << " (F_q^" << pr.coeffDegree << ")";
  os << " G'=" << coordList(g, pr.normalizer);
  return os.str();
}

bool isRationalSquare(const Rational& r) {
  if (r < 0) return false;
  return mpz_perfect_square_p(r.get_num_mpz_t()) && mpz_perfect_square_p(r.get_den_mpz_t());
}

void validatePair(const AdmissiblePairData& pr) {
  if (!pr.scheme) throw std::invalid_argument("pair without a scheme");
  const auto& g = *pr.scheme;
  if (!g.pi0()->isAbelian()) throw std::invalid_argument("non-abelian component groups are not supported");
  for (size_t x = 0; x < g.pi0Frobenius().size(); ++x)
    if (g.pi0Frobenius()[x] != static_cast<int>(x))
      throw std::invalid_argument("component groups with nontrivial Frobenius are not supported");
  if (pr.baseForm < 0 || pr.baseForm >= static_cast<int>(g.pi0()->order()))
    throw std::invalid_argument("base form outside pi0");
  if (pr.coeffDegree < 1) throw std::invalid_argument("coefficient degree must be positive");
  if (g.spec().kind == SchemeKind::Constant && pr.coeffDegree != 1)
    throw std::invalid_argument("constant groups take coefficients in F_p");
  if (pr.coefficients.size() != pr.h.size()) throw std::invalid_argument("one coefficient per coordinate of H");
  auto mh = mask(g, pr.h), mg = mask(g, pr.normalizer);
  if (std::set<int>(pr.h.begin(), pr.h.end()).size() != pr.h.size())
    throw std::invalid_argument("repeated coordinate in H");
  for (size_t i = 0; i < mh.size(); ++i)
    if (mh[i] && !mg[i]) throw std::invalid_argument("H is not contained in G'");
  if (patternPi0(g, mh).size() != 1) throw std::invalid_argument("H must be connected");
  auto f = g.field(pr.coeffDegree);
  for (Elt c : pr.coefficients)
    if (c >= f->size()) throw std::invalid_argument("coefficient outside F_q^" + std::to_string(pr.coeffDegree));

  int d = pr.coeffDegree;
  auto hpts = patternPoints(g, mh, d);
  try {
    FiniteGroup::fromElements(g.law(d), hpts);
  } catch (const std::exception&) {
    throw std::invalid_argument("H is not a subgroup: " + coordList(g, pr.h));
  }
  // l must intertwine the twisted Frobenius of the base form with x -> x^q
  int level = static_cast<int>(lcml(d, g.h1().forms[g.formOf(pr.baseForm)].stableLevel));
  auto L = g.law(level);
  Key t = g.section(pr.baseForm, level), tinv = L->inv(t);
  auto big = g.field(level);
  std::vector<Key> test = elementaryPoints(pr, level);
  if (g.pointCount(level) <= (size_t(1) << 16)) test = patternPoints(g, mh, level);
  for (Key h : test) {
    Key fh = L->mul(L->mul(t, g.frobenius(h, level)), tinv);
    if (!inPattern(g, mh, fh, level)) throw std::invalid_argument("H is not stable under the twisted Frobenius");
    if (ell(pr, fh, level) != big->frobeniusPower(ell(pr, h, level), baseDegree(g)))
      throw std::invalid_argument("linear form is not defined over the base form");
  }
}

std::vector<AdmissiblePairData> standardPairs(const SchemePtr& gp, int nmax) {
  const auto& g = *gp;
  std::vector<AdmissiblePairData> out;
  auto add = [&](int base, std::vector<int> h, int d, std::vector<Elt> coeffs, std::vector<int> norm) {
    AdmissiblePairData pr;
    pr.scheme = gp;
    pr.baseForm = base;
    pr.h = std::move(h);
    pr.coeffDegree = d;
    pr.coefficients = std::move(coeffs);
    pr.normalizer = std::move(norm);
    pr.nmax = nmax;
    pr.label = pairLabel(pr);
    out.push_back(std::move(pr));
  };
  auto all = [&] {
    std::vector<int> v(g.coordinateCount());
    std::iota(v.begin(), v.end(), 0);
    return v;
  };
  Elt q = static_cast<Elt>(g.q());
  switch (g.spec().kind) {
    case SchemeKind::Additive: {
      std::vector<Elt> c(g.coordinateCount(), 0);
      while (true) {
        add(0, all(), 1, c, all());
        size_t i = 0;
        while (i < c.size() && ++c[i] == q) c[i++] = 0;
        if (i == c.size()) break;
      }
      break;
    }
    case SchemeKind::Unitriangular: {
      if (g.spec().n == 2) {
        for (Elt a = 0; a < q; ++a) add(0, {0}, 1, {a}, {0});
        break;
      }
      if (g.spec().n != 3) throw std::invalid_argument("no standard pair family for " + g.name());
      int c12 = g.coordinateIndex("12"), c13 = g.coordinateIndex("13"), c23 = g.coordinateIndex("23");
      for (Elt b = 0; b < q; ++b)
        for (Elt a = 0; a < q; ++a) add(0, {c12, c13, c23}, 1, {a, 0, b}, all());
      for (Elt z = 1; z < q; ++z) add(0, {c13, c23}, 1, {z, 0}, {c13, c23});
      break;
    }
    case SchemeKind::ExampleA4: {
      int cb = g.coordinateIndex("13"), cc = g.coordinateIndex("23");
      int p = g.p();
      auto fq = g.field(1);
      // l = beta b + gamma c; conjugation by a in F_p shifts gamma by a beta
      for (Elt beta = 1; beta < q; ++beta)
        for (Elt gamma = 0; gamma < q; ++gamma) {
          bool minimal = true;
          for (int a = 1; a < p; ++a)
            if (fq->add(gamma, fq->mul(fq->scalar(a), beta)) < gamma) minimal = false;
          if (minimal) add(0, {cb, cc}, 1, {beta, gamma}, {cb, cc});
        }
      for (Elt gamma = 0; gamma < q; ++gamma) add(0, {cb, cc}, 1, {0, gamma}, all());
      // on the form twisted by a0: gamma^q - gamma = a0 beta, so gamma lies in F_{q^p}
      auto fbig = g.field(p);
      auto emb = Embedding::get(fq, fbig);
      for (int a0 = 1; a0 < p; ++a0)
        for (Elt beta = 1; beta < q; ++beta) {
          Elt be = emb->map(beta);
          Elt rhs = fbig->mul(fbig->scalar(a0), be);
          for (Elt gamma = 0; gamma < fbig->size(); ++gamma) {
            if (fbig->sub(fbig->frobeniusPower(gamma, g.spec().s), gamma) != rhs) continue;
            bool minimal = true;
            for (int a = 1; a < p; ++a)
              if (fbig->add(gamma, fbig->mul(fbig->scalar(a), be)) < gamma) minimal = false;
            if (minimal) add(g.pi0()->index(static_cast<Key>(a0)), {cb, cc}, p, {be, gamma}, {cb, cc});
          }
        }
      break;
    }
    case SchemeKind::Constant:
      add(0, {}, 1, {}, all());
      break;
  }
  return out;
}

StabilizerReport stabilizerCheck(const AdmissiblePairData& pr) {
  validatePair(pr);
  const auto& g = *pr.scheme;
  auto mh = mask(g, pr.h), mg = mask(g, pr.normalizer);
  StabilizerReport rep;
  rep.passed = true;
  for (int j = 1; j <= std::max(1, pr.nmax); ++j) {
    StabilizerLevel lv;
    lv.level = pr.coeffDegree * j;
    int n = lv.level;
    if (g.pointCount(n) > UnipotentScheme::kEnumerationCap) {
      lv.skipped = true;
      rep.levels.push_back(lv);
      continue;
    }
    auto L = g.law(n);
    int p = g.p();
    auto gens = elementaryPoints(pr, n);
    auto hpts = patternPoints(g, mh, n);
    std::vector<int> genExp;
    for (Key a : gens) genExp.push_back(psiExponent(pr, a, n));
    lv.homomorphism = true;
    for (size_t i = 0; i < gens.size() && lv.homomorphism; ++i)
      for (Key h : hpts) {
        Key ah = L->mul(gens[i], h);
        if (!inPattern(g, mh, ah, n) || psiExponent(pr, ah, n) != (genExp[i] + psiExponent(pr, h, n)) % p) {
          lv.homomorphism = false;
          break;
        }
      }
    lv.matches = true;
    lv.separates = true;
    g.forEachPoint(n, [&](Key x) {
      Key xinv = L->inv(x);
      bool normalizes = true, fixes = true;
      for (size_t i = 0; i < gens.size(); ++i) {
        Key c = L->mul(L->mul(x, gens[i]), xinv);
        if (!inPattern(g, mh, c, n)) {
          normalizes = false;
          break;
        }
        if (psiExponent(pr, c, n) != genExp[i]) fixes = false;
      }
      bool stab = normalizes && fixes;
      bool claimed = inPattern(g, mg, x, n);
      lv.stabilizerOrder += stab;
      lv.normalizerOrder += claimed;
      if (stab != claimed) lv.matches = false;
      if (!normalizes) {
        bool found = false;
        for (Key h : hpts) {
          Key c = L->mul(L->mul(x, h), xinv);
          if (inPattern(g, mh, c, n) && psiExponent(pr, c, n) != psiExponent(pr, h, n)) {
            found = true;
            break;
          }
        }
        if (!found) lv.separates = false;
      }
    });
    rep.passed = rep.passed && lv.homomorphism && lv.matches && lv.separates;
    rep.levels.push_back(lv);
  }
  if (rep.levels.empty() || rep.levels[0].skipped) rep.passed = false;
  return rep;
}

std::vector<HeisenbergPiece> heisenbergIdempotents(const AdmissiblePairData& pr) {
  validatePair(pr);
  const auto& g = *pr.scheme;
  const auto& forms = g.h1();
  int level = forms.level;
  int wide = static_cast<int>(lcml(level, pr.coeffDegree));
  auto mh = mask(g, pr.h), mg = mask(g, pr.normalizer);
  auto pi0g = patternPi0(g, mg);
  long expected = ipow(g.q(), patternDim(g, mg)) * static_cast<long>(pi0g.size());
  Rational scale = qPower(g.q(), -patternDim(g, mh));
  auto fw = g.field(wide);
  int sb = baseDegree(g);
  std::vector<HeisenbergPiece> out;
  for (int x : pi0g) {
    HeisenbergPiece piece;
    piece.pi0 = x;
    piece.form = g.formOf(g.pi0()->mul(x, pr.baseForm));
    const auto& ga = forms.forms[piece.form].group;
    piece.group = ga->subgroup([&](int i) { return inPattern(g, mg, ga->key(i), level); });
    if (static_cast<long>(piece.group->order()) != expected)
      throw PacketError(pr.label + ": normalizer form has " + std::to_string(piece.group->order()) +
                        " points, expected " + std::to_string(expected));
    std::vector<Cyclo> vals(piece.group->order());
    for (size_t i = 0; i < vals.size(); ++i) {
      Key k = piece.group->key(static_cast<int>(i));
      if (!inPattern(g, mh, k, level)) continue;
      Elt v = ell(pr, g.embed(k, level, wide), wide);
      if (!fw->inSubfield(v, sb)) throw PacketError(pr.label + ": l(h) is not in F_q on a twisted form");
      vals[i] = Cyclo::zeta(g.p(), fw->traceToPrime(v, sb)) * Cyclo(scale);
    }
    try {
      piece.f = classFunctionFromElements(piece.group, vals);
    } catch (const std::exception&) {
      throw PacketError(pr.label + ": psi is not invariant under G'");
    }
    out.push_back(std::move(piece));
  }
  return out;
}

GroupoidFunction inducedIdempotent(const AdmissiblePairData& pr, const FormSystemPtr& forms) {
  auto pieces = heisenbergIdempotents(pr);
  std::vector<FormPiece> fp;
  for (auto& p : pieces) fp.push_back({static_cast<size_t>(p.form), p.f});
  return induceAcrossForms(forms, fp);
}

PacketPartition packetPartition(const SchemePtr& gp, const std::vector<AdmissiblePairData>& pairs, int jobs) {
  const auto& g = *gp;
  PacketPartition part;
  part.forms = formSystem(g);
  const auto& groups = part.forms->groups;
  part.packets.resize(pairs.size());
  parallelFor(pairs.size(), jobs, [&](size_t k) {
    if (pairs[k].scheme.get() != gp.get()) throw std::invalid_argument("pair on a different scheme");
    LPacket& lp = part.packets[k];
    lp.pair = static_cast<int>(k);
    lp.label = pairs[k].label;
    lp.t = inducedIdempotent(pairs[k], part.forms);
    lp.idempotent = true;
    lp.positive = true;
    for (const auto& f : lp.t.parts) {
      lp.valueAtOne.push_back(f.values[0]);
      lp.idempotent = lp.idempotent && convolve(f, f) == f;
      lp.positive = lp.positive && isPositive(f).positive;
    }
    if (g.connected() && lp.valueAtOne[0].isRational() && lp.valueAtOne[0].rational() > 0) {
      Rational v = 1 / lp.valueAtOne[0].rational();
      for (int n = 0; n <= 64; ++n) {
        Rational qn = qPower(g.q(), n);
        if (qn > v) break;
        if (qn == v) {
          lp.ne = n;
          lp.de = Rational(g.dim() - n, 2);
          lp.de->canonicalize();
        }
      }
    }
  });
  std::vector<std::vector<int>> owner(groups.size());
  for (size_t a = 0; a < groups.size(); ++a) {
    const auto& tab = groups[a]->characterTable();
    owner[a].assign(tab.size(), -1);
    for (size_t i = 0; i < tab.size(); ++i) {
      auto chi = tab.character(groups[a], i);
      for (size_t k = 0; k < part.packets.size(); ++k) {
        Cyclo s = actionScalar(part.packets[k].t.parts[a], chi);
        if (s.isZero()) continue;
        if (s != Cyclo(1))
          throw PacketError(part.packets[k].label + ": action scalar " + s.str() + " on " + part.forms->labels[a] +
                            " irreducible " + std::to_string(i) + " is not 0 or 1");
        if (owner[a][i] >= 0)
          throw PacketError("irreducible " + std::to_string(i) + " of " + part.forms->labels[a] +
                            " lies in two packets: " + part.packets[owner[a][i]].label + " and " +
                            part.packets[k].label);
        owner[a][i] = static_cast<int>(k);
        part.packets[k].members.push_back({static_cast<int>(a), static_cast<int>(i), tab.degrees()[i]});
      }
      if (owner[a][i] < 0) part.leftovers.push_back({static_cast<int>(a), static_cast<int>(i), tab.degrees()[i]});
    }
  }
  bool deltas = true;
  for (size_t a = 0; a < groups.size(); ++a) {
    auto sum = zeroFunction(groups[a]);
    for (const auto& lp : part.packets) sum = sum + lp.t.parts[a];
    part.sumIsDelta.push_back(sum == delta1(groups[a]));
    deltas = deltas && part.sumIsDelta.back();
  }
  part.complete = part.leftovers.empty() && deltas;
  return part;
}

SumSquaresReport verifySumSquares(const UnipotentScheme& g, const LPacket& packet) {
  SumSquaresReport r;
  if (!packet.ne) return r;
  r.applicable = true;
  for (const auto& m : packet.members) r.lhs += Rational(m.degree * m.degree);
  r.rhs = qPower(g.q(), g.dim() - *packet.ne);
  r.holds = r.lhs == r.rhs;
  return r;
}

EasyReport verifyEasy(const UnipotentScheme& g, const PacketPartition& part) {
  EasyReport r;
  auto kind = g.spec().kind;
  r.applicable = kind == SchemeKind::Unitriangular || kind == SchemeKind::Additive;
  if (!r.applicable) return r;
  const auto& gr = part.forms->groups[0];
  const auto& tab = gr->characterTable();
  bool ok = true;
  size_t hits = 0;
  for (size_t k = 0; k < part.packets.size(); ++k) {
    const auto& lp = part.packets[k];
    EasyItem it;
    it.packet = static_cast<int>(k);
    it.singleton = lp.members.size() == 1;
    hits += lp.members.size();
    it.integralDe = lp.de && lp.de->get_den() == 1;
    if (it.singleton && it.integralDe) {
      long de = lp.de->get_num().get_si();
      const auto& m = lp.members[0];
      it.degreeMatches = m.degree == ipow(g.q(), static_cast<int>(de));
      auto scaled = lp.t.parts[0] * Cyclo(ipow(g.q(), g.dim() - static_cast<int>(de)));
      it.characterMatches = scaled == tab.character(gr, m.irrep);
    }
    ok = ok && it.singleton && it.integralDe && it.degreeMatches && it.characterMatches;
    r.items.push_back(it);
  }
  r.allHitOnce = part.leftovers.empty() && hits == tab.size();
  r.passed = ok && r.allHitOnce;
  return r;
}

ValueRingReport verifyValueRings(const UnipotentScheme& g, const PacketPartition& part) {
  ValueRingReport r;
  int p = g.p();
  r.exponent = g.exponent();
  for (const auto& gr : part.forms->groups) r.exponent = lcml(r.exponent, gr->exponent());
  int m2 = static_cast<int>(r.exponent * r.exponent);
  r.lambda = Cyclo(1);
  for (int i = 0; i < g.spec().s; ++i) r.lambda *= gaussSumLambda(p);
  r.lambdaNorm = r.lambda * r.lambda.conjugate() == Cyclo(g.q());
  r.lambdaInRing = r.lambda.inRing(m2, p);
  r.halfPowerRational = isRationalSquare(Rational(1, g.q()));
  r.charactersIntegral = true;
  r.idempotentsInRing = true;
  for (const auto& gr : part.forms->groups) {
    for (const auto& row : gr->characterTable().rows())
      for (const auto& v : row) r.charactersIntegral = r.charactersIntegral && v.inRing(static_cast<int>(r.exponent), 0);
    for (const auto& e : minimalIdempotents(gr))
      for (const auto& v : e.values) r.idempotentsInRing = r.idempotentsInRing && v.inRing(static_cast<int>(r.exponent), p);
  }
  bool ok = r.lambdaNorm && r.lambdaInRing && r.charactersIntegral && r.idempotentsInRing;
  for (size_t k = 0; k < part.packets.size(); ++k) {
    const auto& lp = part.packets[k];
    ValueRingItem it;
    it.packet = static_cast<int>(k);
    Cyclo c(1);
    if (lp.ne) {
      it.rationalScaling = isRationalSquare(qPower(g.q(), *lp.ne));
      for (int i = 0; i < *lp.ne; ++i) c *= -r.lambda;
    }
    auto T = lp.t * c;
    it.scaledInRing = true;
    for (const auto& f : T.parts)
      for (const auto& v : f.values) it.scaledInRing = it.scaledInRing && v.inRing(m2, p);
    if (lp.ne && lp.members.size() == 1) it.unitNorm = groupoidInner(T, T) == Cyclo(1);
    ok = ok && it.scaledInRing && it.unitNorm.value_or(true);
    r.items.push_back(it);
  }
  r.passed = ok;
  return r;
}

}  // namespace csheaf
