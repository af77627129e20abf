#include "commands.hpp"

#include <cstdio>
#include <numeric>
#include <sstream>

namespace csheaf::app {

namespace {

constexpr size_t kMatrixPrintLimit = 32;

std::string approxString(const Cyclo& z) {
  auto c = z.approx();
  char buf[96];
  double re = c.real() == 0 ? 0.0 : c.real(), im = c.imag() == 0 ? 0.0 : c.imag();
  if (std::abs(im) < 5e-13) std::snprintf(buf, sizeof buf, "%.6f", re);
  else std::snprintf(buf, sizeof buf, "%.6f%+.6fi", re, im);
  return buf;
}

json exact(const Cyclo& z) { return json{{"exact", z.str()}, {"approx", approxString(z)}}; }
json exact(const Rational& r) { return exact(Cyclo(r)); }
std::string str(const Rational& r) { return r.get_str(); }

json strings(const std::vector<Cyclo>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(z.str());
  return out;
}

json matrixJson(const std::vector<std::vector<Cyclo>>& m) {
  if (m.size() > kMatrixPrintLimit) return json("omitted: dimension " + std::to_string(m.size()));
  json out = json::array();
  for (const auto& row : m) out.push_back(strings(row));
  return out;
}

bool isIdentity(const std::vector<std::vector<Cyclo>>& m) { return isIdentityMatrix(m); }

long ipow(long b, long e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

struct Builder {
  Report& r;
  void check(const std::string& id, bool ok, json lhs, json rhs) { r.checks.push_back({id, ok, std::move(lhs), std::move(rhs)}); }
  template <class T>
  void equal(const std::string& id, const T& a, const T& b) {
    if constexpr (std::is_same_v<T, Cyclo> || std::is_same_v<T, Rational>)
      check(id, a == b, exact(a), exact(b));
    else
      check(id, a == b, json(a), json(b));
  }
};

int pairNmax(const Fixture& fx, const Options& opt) { return opt.nmax > 0 ? opt.nmax : fx.nmax; }

// ---- finite groups ----

void chartable(const Fixture& fx, Report& r) {
  Builder b{r};
  auto g = buildGroup(fx);
  const auto& cl = g->classes();
  const auto& tab = g->characterTable();
  json classes = json::array();
  for (size_t c = 0; c < cl.count(); ++c) classes.push_back({{"rep", g->show(cl.reps[c])}, {"size", cl.sizes[c]}});
  json rows = json::array();
  Table t{"chartable", {"irrep", "degree"}, {}};
  for (size_t c = 0; c < cl.count(); ++c) t.header.push_back(g->show(cl.reps[c]));
  for (size_t i = 0; i < tab.size(); ++i) {
    rows.push_back(strings(tab.row(i)));
    std::vector<std::string> row{std::to_string(i), std::to_string(tab.degrees()[i])};
    for (const auto& z : tab.row(i)) row.push_back(z.str());
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  r.result["chartable"] = {{"order", g->order()}, {"classes", classes}, {"degrees", tab.degrees()}, {"table", rows}};

  long sum = 0;
  for (long d : tab.degrees()) sum += d * d;
  b.equal("chartable.sum-squares", sum, static_cast<long>(g->order()));

  std::vector<std::vector<Cyclo>> gram(tab.size(), std::vector<Cyclo>(tab.size()));
  for (size_t i = 0; i < tab.size(); ++i)
    for (size_t j = 0; j < tab.size(); ++j)
      gram[i][j] = normalizedInner(tab.character(g, i), tab.character(g, j));
  b.check("chartable.row-orthogonality", isIdentity(gram), matrixJson(gram), "identity");

  // sum_chi chi(c) conj(chi(d)) = delta_cd |Z(c)|
  std::vector<std::vector<Cyclo>> col(cl.count(), std::vector<Cyclo>(cl.count()));
  bool ok = true;
  for (size_t c = 0; c < cl.count(); ++c)
    for (size_t d = 0; d < cl.count(); ++d) {
      for (size_t i = 0; i < tab.size(); ++i) col[c][d] += tab.row(i)[c] * tab.row(i)[d].conjugate();
      Cyclo want = c == d ? Cyclo(static_cast<long>(g->order()) / cl.sizes[c]) : Cyclo(0);
      ok = ok && col[c][d] == want;
    }
  json centralizers = json::array();
  for (size_t c = 0; c < cl.count(); ++c) centralizers.push_back(static_cast<long>(g->order()) / cl.sizes[c]);
  b.check("chartable.column-orthogonality", ok, matrixJson(col), json{{"diagonal", centralizers}});
}

TwistedGroup twistedFromFixture(const Fixture& fx) {
  auto g = buildGroup(fx);
  return TwistedGroup(g, buildAutomorphism(fx, g));
}

void twistedBasis(const Fixture& fx, Report& r) {
  Builder b{r};
  auto t = twistedFromFixture(fx);
  const auto& g = t.gamma();
  const auto& fc = t.fClasses();
  json classes = json::array();
  for (size_t c = 0; c < fc.count(); ++c)
    classes.push_back({{"rep", g->show(fc.reps[c])}, {"size", fc.sizes[c]}, {"centralizer", t.twistedCentralizerOrder(c)}});
  auto inv = fInvariantIrreps(t);
  auto basis = twistedCharacterBasis(t);
  std::vector<std::vector<Cyclo>> m;
  json chars = json::array();
  Table tab{"twisted-characters", {"irrep", "extension"}, {}};
  for (size_t c = 0; c < fc.count(); ++c) tab.header.push_back(g->show(fc.reps[c]));
  for (const auto& tc : basis) {
    m.push_back(tc.values);
    chars.push_back({{"irrep", tc.irrep}, {"extension", tc.extension}, {"values", strings(tc.values)}});
    std::vector<std::string> row{std::to_string(tc.irrep), std::to_string(tc.extension)};
    for (const auto& z : tc.values) row.push_back(z.str());
    tab.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(tab));
  r.result["twisted-basis"] = {{"automorphismOrder", t.order()},
                               {"extensionOrder", t.tilde()->order()},
                               {"fClasses", classes},
                               {"invariantIrreps", inv},
                               {"characters", chars}};
  b.equal("twisted.count", fc.count(), inv.size());
  size_t rank = exactRank(m);
  b.check("twisted.invertible", rank == fc.count() && m.size() == fc.count(),
          json{{"rank", rank}, {"rows", m.size()}}, json{{"classes", fc.count()}});
}

void traceFormula(const Fixture& fx, Report& r) {
  Builder b{r};
  auto t = twistedFromFixture(fx);
  const auto& tilde = t.tilde();
  const auto& tab = tilde->characterTable();
  json items = json::array();
  for (size_t i = 0; i < tab.size(); ++i) {
    auto res = traceFormulaCheck(t, tab.character(tilde, i));
    items.push_back({{"irrep", i},
                     {"classSum", res.classSum.str()},
                     {"average", res.average.str()},
                     {"invariantTrace", res.invariantTrace.str()}});
    b.check("trace-formula." + std::to_string(i), res.holds,
            json{{"classSum", exact(res.classSum)}, {"average", exact(res.average)}},
            json{{"invariantTrace", exact(res.invariantTrace)}});
  }
  r.result["trace-formula"] = {{"extensionOrder", tilde->order()}, {"items", items}};
}

void drinfeldDouble(const Fixture& fx, Report& r) {
  Builder b{r};
  auto t = twistedFromFixture(fx);
  auto dd = drinfeldDoubleTraceFunctions(t);
  std::vector<GroupoidFunction> fs;
  json funcs = json::array();
  Table tab{"double", {"function", "classRep", "centralizerOrder", "irrep"}, {}};
  for (size_t i = 0; i < dd.functions.size(); ++i) {
    const auto& f = dd.functions[i];
    fs.push_back(f.values);
    funcs.push_back({{"classRep", t.gamma()->show(f.classRep)}, {"centralizerOrder", f.centralizerOrder}, {"irrep", f.irrep}});
    tab.rows.push_back({std::to_string(i), t.gamma()->show(f.classRep), std::to_string(f.centralizerOrder), std::to_string(f.irrep)});
  }
  r.tables.push_back(std::move(tab));
  auto gram = groupoidGram(fs);
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
  long exp = t.gamma()->exponent();
  r.result["double"] = {{"pGroup", dd.pGroup},
                        {"dimension", dd.dimension},
                        {"forms", dd.forms->labels},
                        {"functions", funcs},
                        {"gram", matrixJson(gram)},
                        {"maxStabilizerExponent", dd.maxStabilizerExponent}};
  b.equal("double.count", dd.functions.size(), dd.dimension);
  b.check("double.orthonormal", isIdentity(gram), matrixJson(gram), "identity");
  b.check("double.unitary", isUnitary(m), matrixJson(m), "unitary");
  b.check("double.stabilizer-exponent", dd.maxStabilizerExponent <= exp * exp,
          json(dd.maxStabilizerExponent), json{{"atMost", exp * exp}});
}

// ---- unipotent schemes ----

SchemePtr schemeFromFixture(const Fixture& fx) {
  if (!fx.scheme) throw FixtureError("fixture lacks 'scheme'");
  return buildScheme(*fx.scheme);
}

void langChecks(const UnipotentScheme& g, Builder& b, json& out) {
  json lang = json::array();
  for (int n = 1; n <= 3; ++n) {
    long want = ipow(g.q(), static_cast<long>(n) * g.dim()) * static_cast<long>(g.pi0()->order());
    if (g.pointCount(n) > UnipotentScheme::kPointCap) {
      lang.push_back({{"n", n}, {"skipped", true}, {"expected", want}});
      continue;
    }
    auto pg = g.pointsOver(n);
    long got = static_cast<long>(pg.group->order());
    lang.push_back({{"n", n}, {"order", got}, {"expected", want}});
    b.equal("lang.cardinality." + std::to_string(n), got, want);
    bool aut = true;
    try {
      pg.group->checkAutomorphism(pg.frobenius);
    } catch (const std::invalid_argument&) {
      aut = false;
    }
    b.check("lang.frobenius-automorphism." + std::to_string(n), aut, json(aut), json(true));
  }
  out["lang"] = lang;
}

void h1(const Fixture& fx, Report& r) {
  Builder b{r};
  auto g = schemeFromFixture(fx);
  const auto& forms = g->h1();
  json list = json::array();
  Rational mass = 0;
  for (const auto& f : forms.forms) {
    list.push_back({{"pi0Rep", g->pi0()->show(f.pi0Rep)}, {"twistedCentralizer", f.twistedCentralizer}, {"label", f.label}});
    mass += Rational(1, f.twistedCentralizer);
  }
  json out{{"scheme", g->name()}, {"q", g->q()}, {"dim", g->dim()}, {"pi0Order", g->pi0()->order()}, {"forms", list}};
  b.equal("h1.mass", mass, Rational(1));
  if (g->connected()) b.equal("h1.connected", forms.forms.size(), size_t(1));
  langChecks(*g, b, out);
  r.result["h1"] = out;
}

void innerForms(const Fixture& fx, Report& r) {
  Builder b{r};
  auto g = schemeFromFixture(fx);
  const auto& forms = g->h1();
  json list = json::array();
  Table tab{"forms", {"form", "label", "order", "stableLevel", "level", "classes"}, {}};
  for (size_t a = 0; a < forms.forms.size(); ++a) {
    const auto& f = forms.forms[a];
    long order = static_cast<long>(f.group->order());
    list.push_back({{"label", f.label},
                    {"order", order},
                    {"stableLevel", f.stableLevel},
                    {"level", f.level},
                    {"flagged", f.stableLevel > 1},
                    {"classes", f.group->classes().count()},
                    {"degrees", f.group->characterTable().degrees()}});
    tab.rows.push_back({std::to_string(a), f.label, std::to_string(order), std::to_string(f.stableLevel),
                        std::to_string(f.level), std::to_string(f.group->classes().count())});
    b.equal("forms.cardinality." + std::to_string(a), order, ipow(g->q(), g->dim()) * f.twistedCentralizer);
  }
  r.tables.push_back(std::move(tab));
  // the trivial form is G(F_q) elementwise
  auto base = g->pointsOver(1);
  std::vector<Key> a, c;
  for (size_t i = 0; i < base.group->order(); ++i) a.push_back(g->embed(base.group->key(static_cast<int>(i)), 1, forms.level));
  const auto& triv = forms.forms[0].group;
  for (size_t i = 0; i < triv->order(); ++i) c.push_back(triv->key(static_cast<int>(i)));
  std::sort(a.begin(), a.end());
  std::sort(c.begin(), c.end());
  b.check("forms.trivial-elementwise", a == c, json{{"order", c.size()}}, json{{"order", a.size()}});
  r.result["forms"] = {{"scheme", g->name()}, {"commonLevel", forms.level}, {"forms", list}};
}

struct PacketRun {
  SchemePtr g;
  std::vector<AdmissiblePairData> pairs;
  PacketPartition part;
};

PacketRun runPackets(const Fixture& fx, const Options& opt) {
  PacketRun pr;
  pr.g = schemeFromFixture(fx);
  pr.pairs = buildPairs(fx, pr.g, pairNmax(fx, opt));
  pr.part = packetPartition(pr.g, pr.pairs, opt.jobs);
  return pr;
}

json valueJson(const GroupoidFunction& t) {
  json out = json::array();
  for (const auto& part : t.parts) out.push_back(strings(part.values));
  return out;
}

void packets(const Fixture& fx, const Options& opt, const PacketRun& run, Report& r) {
  Builder b{r};
  const auto& part = run.part;
  const auto& g = *run.g;
  json pairs = json::array();
  for (size_t k = 0; k < run.pairs.size(); ++k) {
    auto st = stabilizerCheck(run.pairs[k]);
    json levels = json::array();
    for (const auto& l : st.levels)
      levels.push_back({{"level", l.level},
                        {"skipped", l.skipped},
                        {"homomorphism", l.homomorphism},
                        {"stabilizerOrder", l.stabilizerOrder},
                        {"normalizerOrder", l.normalizerOrder},
                        {"matches", l.matches},
                        {"separates", l.separates}});
    pairs.push_back({{"label", run.pairs[k].label}, {"evidence", "point-level"}, {"levels", levels}});
    json lhs = json::array(), rhs = json::array();
    for (const auto& l : st.levels) {
      if (l.skipped) continue;
      lhs.push_back({{"level", l.level}, {"stabilizerOrder", l.stabilizerOrder}, {"homomorphism", l.homomorphism}, {"separates", l.separates}});
      rhs.push_back({{"level", l.level}, {"normalizerOrder", l.normalizerOrder}});
    }
    b.check("stabilizer." + std::to_string(k), st.passed, lhs, rhs);
  }
  json list = json::array();
  Table tab{"packets", {"packet", "label", "form", "irrep", "degree"}, {}};
  for (size_t k = 0; k < part.packets.size(); ++k) {
    const auto& lp = part.packets[k];
    json members = json::array();
    for (const auto& m : lp.members) {
      members.push_back({{"form", m.form}, {"irrep", m.irrep}, {"degree", m.degree}});
      tab.rows.push_back({std::to_string(k), lp.label, std::to_string(m.form), std::to_string(m.irrep), std::to_string(m.degree)});
    }
    json item{{"label", lp.label}, {"members", members}, {"valueAtOne", strings(lp.valueAtOne)},
              {"idempotent", lp.idempotent}, {"positive", lp.positive}, {"values", valueJson(lp.t)}};
    if (lp.ne) item["ne"] = *lp.ne;
    if (lp.de) item["de"] = str(*lp.de);
    list.push_back(item);
    b.check("packets.idempotent." + std::to_string(k), lp.idempotent, "t * t = t", json(lp.idempotent));
    b.check("packets.positive." + std::to_string(k), lp.positive, "t positive", json(lp.positive));
  }
  r.tables.push_back(std::move(tab));
  json leftovers = json::array();
  for (const auto& m : part.leftovers) leftovers.push_back({{"form", m.form}, {"irrep", m.irrep}, {"degree", m.degree}});
  json sums = json::array();
  for (bool s : part.sumIsDelta) sums.push_back(s);
  if (fx.complete) {
    for (size_t a = 0; a < part.sumIsDelta.size(); ++a)
      b.check("packets.sum-delta." + std::to_string(a), part.sumIsDelta[a], "sum of t on form " + std::to_string(a), "delta_1");
    b.check("packets.partition", part.leftovers.empty(), json{{"leftovers", leftovers}}, json{{"leftovers", json::array()}});
  }
  r.result["packets"] = {{"scheme", g.name()},
                         {"nmax", pairNmax(fx, opt)},
                         {"forms", part.forms->labels},
                         {"pairs", pairs},
                         {"packets", list},
                         {"leftovers", leftovers},
                         {"sumIsDelta", sums},
                         {"complete", part.complete},
                         {"asserted", fx.complete}};
}

void easy(const Fixture& fx, const PacketRun& run, Report& r) {
  Builder b{r};
  const auto& g = *run.g;
  auto rep = verifyEasy(g, run.part);
  json items = json::array();
  if (rep.applicable) {
    const auto& gr = run.part.forms->groups[0];
    for (const auto& it : rep.items) {
      const auto& lp = run.part.packets[it.packet];
      std::string k = std::to_string(it.packet);
      items.push_back({{"packet", it.packet}, {"singleton", it.singleton}, {"integralDe", it.integralDe},
                       {"degreeMatches", it.degreeMatches}, {"characterMatches", it.characterMatches}});
      b.equal("easy.singleton." + k, lp.members.size(), size_t(1));
      b.check("easy.integral-de." + k, it.integralDe, lp.de ? json(str(*lp.de)) : json(nullptr), "integer");
      if (!it.singleton || !it.integralDe) continue;
      long de = lp.de->get_num().get_si();
      const auto& m = lp.members[0];
      b.check("easy.degree." + k, it.degreeMatches, json(m.degree), json(ipow(g.q(), de)));
      auto scaled = lp.t.parts[0] * Cyclo(ipow(g.q(), g.dim() - de));
      b.check("easy.character." + k, it.characterMatches, strings(gr->characterTable().row(m.irrep)), strings(scaled.values));
      if (lp.ne) b.equal("easy.value-at-one." + k, lp.valueAtOne[0], Cyclo(Rational(1, ipow(g.q(), *lp.ne))));
    }
    if (fx.complete)
      b.check("easy.hit-once", rep.allHitOnce,
              json{{"packets", run.part.packets.size()}, {"leftovers", run.part.leftovers.size()}},
              json{{"irreducibles", gr->characterTable().size()}});
  }
  r.result["easy"] = {{"applicable", rep.applicable}, {"packets", run.part.packets.size()}, {"items", items}, {"passed", rep.passed}};
}

void sumsq(const PacketRun& run, Report& r) {
  Builder b{r};
  json items = json::array();
  for (size_t k = 0; k < run.part.packets.size(); ++k) {
    auto s = verifySumSquares(*run.g, run.part.packets[k]);
    if (!s.applicable) {
      items.push_back({{"packet", k}, {"applicable", false}});
      continue;
    }
    items.push_back({{"packet", k}, {"applicable", true}, {"lhs", str(s.lhs)}, {"rhs", str(s.rhs)}});
    b.check("sumsq." + std::to_string(k), s.holds, exact(s.lhs), exact(s.rhs));
  }
  r.result["sumsq"] = {{"items", items}};
}

void rings(const PacketRun& run, Report& r) {
  Builder b{r};
  const auto& g = *run.g;
  auto rep = verifyValueRings(g, run.part);
  int m2 = static_cast<int>(rep.exponent * rep.exponent);
  std::string ring = "Z[mu_" + std::to_string(m2) + ", 1/" + std::to_string(g.p()) + "]";
  b.check("rings.lambda-norm", rep.lambdaNorm, exact(rep.lambda * rep.lambda.conjugate()), exact(Cyclo(g.q())));
  b.check("rings.lambda-in-ring", rep.lambdaInRing, exact(rep.lambda), ring);
  b.check("rings.characters-integral", rep.charactersIntegral, "irreducible values",
          "Z[mu_" + std::to_string(rep.exponent) + "]");
  b.check("rings.idempotents-in-ring", rep.idempotentsInRing, "minimal idempotents",
          "Z[mu_" + std::to_string(rep.exponent) + ", 1/" + std::to_string(g.p()) + "]");
  json items = json::array();
  for (const auto& it : rep.items) {
    std::string k = std::to_string(it.packet);
    json item{{"packet", it.packet}, {"scaledInRing", it.scaledInRing}};
    if (it.rationalScaling) item["rationalScaling"] = *it.rationalScaling;
    if (it.unitNorm) item["unitNorm"] = *it.unitNorm;
    items.push_back(item);
    b.check("rings.scaled." + k, it.scaledInRing, "(-lambda)^ne t", ring);
    if (it.unitNorm) b.check("rings.unit-norm." + k, *it.unitNorm, "<T, T>", exact(Cyclo(1)));
  }
  r.result["rings"] = {{"exponent", rep.exponent},
                       {"lambda", exact(rep.lambda)},
                       {"halfPowerRational", rep.halfPowerRational},
                       {"items", items}};
}

void groupoidForms(const PacketRun& run, Report& r) {
  Builder b{r};
  const auto& forms = run.part.forms;
  Cyclo qd(ipow(forms->q, forms->dim));
  // irreducibles of all forms, each q^{dim} times an orthonormal vector
  std::vector<GroupoidFunction> chars;
  std::vector<std::pair<int, int>> where;
  for (size_t a = 0; a < forms->groups.size(); ++a) {
    const auto& gr = forms->groups[a];
    for (size_t i = 0; i < gr->characterTable().size(); ++i) {
      chars.push_back(supportedOn(forms, a, gr->characterTable().character(gr, i)));
      where.emplace_back(static_cast<int>(a), static_cast<int>(i));
    }
  }
  bool ortho = true;
  json bad = nullptr;
  for (size_t i = 0; i < chars.size() && ortho; ++i)
    for (size_t j = 0; j < chars.size() && ortho; ++j) {
      Cyclo v = groupoidInner(chars[i], chars[j]);
      Cyclo want = i == j ? qd : Cyclo(0);
      if (v != want) {
        ortho = false;
        bad = {{"i", i}, {"j", j}, {"value", exact(v)}, {"expected", exact(want)}};
      }
    }
  b.check("groupoid.forms-orthonormal", ortho, ortho ? json("q^dim * identity") : bad, "q^dim * identity");
  // packet functions pair to zero with irreducibles outside their packet
  std::map<std::pair<int, int>, size_t> owner;
  for (size_t k = 0; k < run.part.packets.size(); ++k)
    for (const auto& m : run.part.packets[k].members) owner[{m.form, m.irrep}] = k;
  bool blocks = true;
  bad = nullptr;
  for (size_t k = 0; k < run.part.packets.size() && blocks; ++k)
    for (size_t c = 0; c < chars.size() && blocks; ++c) {
      auto it = owner.find(where[c]);
      if (it != owner.end() && it->second == k) continue;
      Cyclo v = groupoidInner(run.part.packets[k].t, chars[c]);
      if (!v.isZero()) {
        blocks = false;
        bad = {{"packet", k}, {"form", where[c].first}, {"irrep", where[c].second}, {"value", exact(v)}};
      }
    }
  b.check("groupoid.packet-blocks", blocks, blocks ? json("block diagonal") : bad, "block diagonal");
  r.result["groupoid-forms"] = {{"irreducibles", chars.size()}, {"qdim", qd.str()}};
}

void groupoidSpec(const Fixture& fx, Report& r) {
  Builder b{r};
  auto gd = buildGroupoid(*fx.groupoid);
  auto in = inertia(gd);
  auto chars = groupoidIrrepCharacters(gd, in);
  std::vector<std::vector<Cyclo>> vals;
  for (const auto& c : chars) vals.push_back(c.values);
  auto gram = gramMatrix(in.groupoid, vals);
  bool axioms = true;
  for (size_t c = 0; c < gd.componentCount(); ++c) axioms = axioms && gd.checkAxioms(c);
  b.check("groupoid.axioms", axioms, json(axioms), json(true));
  b.check("groupoid.bg-orthonormal", isIdentity(gram), matrixJson(gram), "identity");
  b.equal("groupoid.count", chars.size(), in.groupoid.componentCount());
  r.result["groupoid"] = {{"components", gd.componentCount()},
                          {"objects", gd.objectCount()},
                          {"mass", str(gd.mass())},
                          {"characters", chars.size()},
                          {"gram", matrixJson(gram)}};
}

void needGroup(const Fixture& fx) {
  if (!fx.group) throw FixtureError("command needs 'group' in the fixture");
}

}  // namespace

bool Report::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

json Report::toJson() const {
  json cs = json::array();
  for (const auto& c : checks) cs.push_back({{"id", c.id}, {"passed", c.passed}, {"lhs", c.lhs}, {"rhs", c.rhs}});
  return {{"command", command}, {"fixture", fixture}, {"result", result}, {"checks", cs}, {"passed", passed()}};
}

namespace {
std::string cell(const json& j) {
  std::string s = j.is_string() ? j.get<std::string>() : j.dump();
  for (auto& ch : s)
    if (ch == '|') ch = '/';
  return s;
}
}  // namespace

std::string Report::toMarkdown() const {
  std::ostringstream os;
  os << "# " << command << (fixture.empty() ? "" : " on " + fixture) << "\n\n";
  os << "Result: " << (passed() ? "PASS" : "FAIL") << "\n\n";
  os << "| check | passed | lhs | rhs |\n|---|---|---|---|\n";
  for (const auto& c : checks) os << "| " << c.id << " | " << (c.passed ? "yes" : "no") << " | " << cell(c.lhs) << " | " << cell(c.rhs) << " |\n";
  for (const auto& t : tables) {
    os << "\n## " << t.name << "\n\n|";
    for (const auto& h : t.header) os << " " << h << " |";
    os << "\n|";
    for (size_t i = 0; i < t.header.size(); ++i) os << "---|";
    os << "\n";
    for (const auto& row : t.rows) {
      os << "|";
      for (const auto& x : row) os << " " << cell(x) << " |";
      os << "\n";
    }
  }
  return os.str();
}

std::string toCsv(const Table& t) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  for (size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << quote(t.header[i]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << quote(row[i]);
    os << "\n";
  }
  return os.str();
}

Report runCommand(const std::string& command, const std::string& suite, const Fixture& fx, const Options& opt) {
  Report r;
  r.command = command == "verify" ? "verify " + suite : command;
  r.fixture = fx.name;
  if (command == "chartable") {
    needGroup(fx);
    chartable(fx, r);
  } else if (command == "h1") {
    h1(fx, r);
  } else if (command == "forms") {
    innerForms(fx, r);
  } else if (command == "twisted-basis") {
    needGroup(fx);
    twistedBasis(fx, r);
  } else if (command == "trace-formula") {
    needGroup(fx);
    traceFormula(fx, r);
  } else if (command == "double") {
    needGroup(fx);
    drinfeldDouble(fx, r);
  } else if (command == "packets") {
    packets(fx, opt, runPackets(fx, opt), r);
  } else if (command == "verify") {
    bool all = suite == "all";
    if (suite == "easy" || suite == "sumsq" || suite == "rings") {
      auto run = runPackets(fx, opt);
      if (suite == "easy") easy(fx, run, r);
      if (suite == "sumsq") sumsq(run, r);
      if (suite == "rings") rings(run, r);
    } else if (suite == "groupoid") {
      if (!fx.groupoid && !fx.scheme) throw FixtureError("verify groupoid needs 'groupoid' or 'scheme'");
      if (fx.groupoid) groupoidSpec(fx, r);
      if (fx.scheme) groupoidForms(runPackets(fx, opt), r);
    } else if (all) {
      if (!fx.group && !fx.scheme && !fx.groupoid) throw FixtureError("fixture has nothing to verify");
      if (fx.group) {
        chartable(fx, r);
        twistedBasis(fx, r);
        traceFormula(fx, r);
        auto t = twistedFromFixture(fx);
        bool pGroup = false;
        {
          long n = static_cast<long>(t.gamma()->order());
          for (long p = 2; p <= n; ++p)
            if (n % p == 0) {
              while (n % p == 0) n /= p;
              pGroup = n == 1;
              break;
            }
          if (t.gamma()->order() == 1) pGroup = true;
        }
        if (pGroup) drinfeldDouble(fx, r);
      }
      if (fx.scheme) {
        h1(fx, r);
        innerForms(fx, r);
        auto run = runPackets(fx, opt);
        packets(fx, opt, run, r);
        easy(fx, run, r);
        sumsq(run, r);
        rings(run, r);
        groupoidForms(run, r);
      }
      if (fx.groupoid) groupoidSpec(fx, r);
    } else {
      throw FixtureError("unknown verify suite '" + suite + "'");
    }
  } else {
    throw FixtureError("unknown command '" + command + "'");
  }
  return r;
}

}  // namespace csheaf::app
