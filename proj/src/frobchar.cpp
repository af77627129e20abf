#include "csheaf/frobchar.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace csheaf {

namespace {

int permutationOrder(const std::vector<int>& f) {
  std::vector<char> seen(f.size(), 0);
  long n = 1;
  for (size_t i = 0; i < f.size(); ++i) {
    if (seen[i]) continue;
    long len = 0;
    for (size_t j = i; !seen[j]; j = static_cast<size_t>(f[j])) {
      seen[j] = 1;
      ++len;
    }
    n = lcml(n, len);
  }
  return static_cast<int>(n);
}

bool isPrimePower(long n) {
  if (n <= 1) return n == 1;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  return true;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

TwistedGroup::TwistedGroup(GroupPtr gamma, std::vector<int> f) : gamma_(std::move(gamma)), f_(std::move(f)) {
  gamma_->checkAutomorphism(f_);
  n_ = permutationOrder(f_);
  auto a = cyclicGroup(n_);
  size_t m = gamma_->order();
  std::vector<std::vector<int>> act(a->order());
  for (size_t i = 0; i < a->order(); ++i) {
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    for (Key e = 0; e < a->key(static_cast<int>(i)); ++e)
      for (auto& x : p) x = f_[x];
    act[i] = std::move(p);
  }
  tilde_ = semidirectProduct(a, gamma_, act);
  sigma_ = n_ > 1 ? tilde_->index(static_cast<Key>(a->index(1)) * m) : 0;
  timesSigma_.resize(m);
  for (size_t g = 0; g < m; ++g) timesSigma_[g] = tilde_->mul(tilde_->index(static_cast<Key>(g)), sigma_);
  fClasses_ = twistedConjugacyClasses(*gamma_, f_);
  const auto& cl = gamma_->classes();
  for (size_t c = 0; c < cl.count(); ++c) classPerm_.push_back(cl.classOf[f_[cl.reps[c]]]);
}

GroupPtr TwistedGroup::twistedCentralizer(int g) const {
  const auto& G = *gamma_;
  return G.subgroup([&](int d) { return G.mul(G.mul(d, g), G.inv(f_[d])) == g; });
}

std::vector<int> fInvariantIrreps(const TwistedGroup& t) {
  const auto& tab = t.gamma()->characterTable();
  const auto& perm = t.classPermutation();
  std::vector<int> out;
  for (size_t i = 0; i < tab.size(); ++i) {
    bool inv = true;
    for (size_t c = 0; c < perm.size() && inv; ++c) inv = tab.row(i)[perm[c]] == tab.row(i)[c];
    if (inv) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> extensionsOfIrrep(const TwistedGroup& t, int irrep) {
  const auto& g = *t.gamma();
  const auto& tt = *t.tilde();
  const auto& row = g.characterTable().row(irrep);
  const auto& cl = g.classes();
  const auto& tcl = tt.classes();
  std::vector<int> out;
  const auto& ttab = tt.characterTable();
  for (size_t r = 0; r < ttab.size(); ++r) {
    if (ttab.degrees()[r] != g.characterTable().degrees()[irrep]) continue;
    bool ok = true;
    for (size_t c = 0; c < cl.count() && ok; ++c)
      ok = ttab.row(r)[tcl.classOf[t.inTilde(cl.reps[c])]] == row[c];
    if (ok) out.push_back(static_cast<int>(r));
  }
  return out;
}

Cyclo twistedValue(const TwistedGroup& t, int extension, int g) {
  const auto& tt = *t.tilde();
  return tt.characterTable().row(extension)[tt.classes().classOf[t.timesSigma(g)]];
}

TwistedCharacter twistedCharacter(const TwistedGroup& t, int irrep, int extension) {
  TwistedCharacter tc{irrep, extension, {}};
  for (int rep : t.fClasses().reps) tc.values.push_back(twistedValue(t, extension, rep));
  return tc;
}

std::vector<TwistedCharacter> twistedCharacterBasis(const TwistedGroup& t) {
  std::vector<TwistedCharacter> out;
  for (int i : fInvariantIrreps(t)) {
    auto ext = extensionsOfIrrep(t, i);
    if (ext.empty()) throw std::logic_error("F-invariant irreducible without extension");
    out.push_back(twistedCharacter(t, i, ext[0]));
  }
  return out;
}

size_t exactRank(std::vector<std::vector<Cyclo>> m) {
  size_t rank = 0;
  if (m.empty()) return 0;
  size_t cols = m[0].size();
  for (size_t c = 0; c < cols && rank < m.size(); ++c) {
    size_t piv = rank;
    while (piv < m.size() && m[piv][c].isZero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    Cyclo inv = m[rank][c].inverse();
    for (size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c].isZero()) continue;
      Cyclo factor = m[r][c] * inv;
      for (size_t k = c; k < cols; ++k)
        if (!m[rank][k].isZero()) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

TraceFormulaResult traceFormulaCheck(const TwistedGroup& t, const ClassFunction& w) {
  if (w.group != t.tilde()) throw std::invalid_argument("W must be a class function on the extended group");
  const auto& g = *t.gamma();
  TraceFormulaResult r;
  const auto& fc = t.fClasses();
  for (size_t c = 0; c < fc.count(); ++c)
    r.classSum += w.at(t.timesSigma(fc.reps[c])) / Cyclo(t.twistedCentralizerOrder(c));
  for (size_t x = 0; x < g.order(); ++x) r.average += w.at(t.timesSigma(static_cast<int>(x)));
  r.average /= Cyclo(static_cast<long>(g.order()));
  // sigma acts on the lambda_j-isotypic part of W^Gamma by zeta_N^j
  const auto& tt = *t.tilde();
  const auto& tcl = tt.classes();
  int n = t.order();
  Key m = g.order();
  auto a = cyclicGroup(n);
  for (int j = 0; j < n; ++j) {
    ClassFunction lam = zeroFunction(t.tilde());
    for (size_t c = 0; c < tcl.count(); ++c) {
      Key e = a->key(static_cast<int>(tt.key(tcl.reps[c]) / m));
      lam.values[c] = Cyclo::zeta(n, static_cast<long>(e) * j);
    }
    r.invariantTrace += normalizedInner(w, lam) * Cyclo::zeta(n, j);
  }
  r.holds = r.classSum == r.average && r.average == r.invariantTrace;
  return r;
}

ExtensionRing extensionValueRing(const TwistedGroup& t, int irrep, int m, int p) {
  ExtensionRing er;
  er.irrep = irrep;
  const auto& tab = t.tilde()->characterTable();
  auto ext = extensionsOfIrrep(t, irrep);
  if (ext.empty()) throw std::logic_error("F-invariant irreducible without extension");
  bool first = true;
  for (int e : ext) {
    long cond = 1;
    bool in = true;
    for (const auto& v : tab.row(e)) {
      cond = lcml(cond, v.conductor());
      in = in && v.inRing(m, p);
    }
    if (first) {
      er.canonicalConductor = static_cast<int>(cond);
      er.bestConductor = static_cast<int>(cond);
      first = false;
    }
    er.bestConductor = std::min(er.bestConductor, static_cast<int>(cond));
    if (in && !er.withinBound) er.withinBound = e;
  }
  return er;
}

HomogeneousBasis homogeneousTBasis(const TwistedGroup& tu, const HomogeneousSpace& X,
                                   const std::optional<CentralCharacter>& ext) {
  const auto& U = *tu.gamma();
  const auto& F = tu.frobenius();
  size_t nu = U.order(), nx = X.points;
  if (nx == 0) throw std::invalid_argument("empty U-set");
  if (X.action.size() != nu || X.frobenius.size() != nx) throw std::invalid_argument("malformed U-set");
  for (const auto& row : X.action)
    if (row.size() != nx) throw std::invalid_argument("malformed U-set");
  for (int s : U.generators())
    for (size_t v = 0; v < nu; ++v)
      for (size_t y = 0; y < nx; ++y)
        if (X.action[U.mul(s, static_cast<int>(v))][y] != X.action[s][X.action[v][y]])
          throw std::invalid_argument("not a group action");
  for (size_t v = 0; v < nu; ++v)
    for (size_t y = 0; y < nx; ++y)
      if (X.frobenius[X.action[v][y]] != X.action[F[v]][X.frobenius[y]])
        throw std::invalid_argument("F_X is not compatible with F");
  std::vector<int> rep(nx, -1);
  rep[0] = 0;
  std::vector<int> queue{0};
  for (size_t i = 0; i < queue.size(); ++i)
    for (int s : U.generators()) {
      int y = X.action[s][queue[i]];
      if (rep[y] < 0) {
        rep[y] = U.mul(s, rep[queue[i]]);
        queue.push_back(y);
      }
    }
  if (queue.size() != nx) throw std::invalid_argument("action is not transitive");

  std::vector<int> aIndex(nu, -1);
  if (ext) {
    if (ext->subgroup.size() != ext->values.size()) throw std::invalid_argument("malformed central character");
    for (size_t i = 0; i < ext->subgroup.size(); ++i) aIndex[ext->subgroup[i]] = static_cast<int>(i);
    for (int a : ext->subgroup) {
      if (F[a] != a) throw std::invalid_argument("F must fix the central subgroup");
      for (int s : U.generators())
        if (U.mul(a, s) != U.mul(s, a)) throw std::invalid_argument("subgroup is not central");
      for (size_t y = 0; y < nx; ++y)
        if (X.action[a][y] != static_cast<int>(y)) throw std::invalid_argument("central subgroup must act trivially");
      for (int b : ext->subgroup) {
        int ab = aIndex[U.mul(a, b)];
        if (ab < 0 || ext->values[ab] != ext->values[aIndex[a]] * ext->values[aIndex[b]])
          throw std::invalid_argument("central character is not a homomorphism");
      }
    }
  }

  HomogeneousBasis hb;
  hb.basePoint = 0;
  hb.gamma0 = -1;
  for (size_t v = 0; v < nu && hb.gamma0 < 0; ++v)
    if (X.action[v][X.frobenius[0]] == 0) hb.gamma0 = static_cast<int>(v);
  int g0 = hb.gamma0, g0inv = U.inv(g0);
  hb.stabilizer = U.subgroup([&](int v) { return X.action[v][0] == 0; });
  const auto& S = *hb.stabilizer;
  auto incl = U.inclusionOf(S);
  std::vector<int> sIndex(nu, -1);
  for (size_t i = 0; i < incl.size(); ++i) sIndex[incl[i]] = static_cast<int>(i);
  hb.stabilizerFrobenius.resize(S.order());
  for (size_t i = 0; i < S.order(); ++i) hb.stabilizerFrobenius[i] = sIndex[U.conj(g0, F[incl[i]])];
  TwistedGroup ts(hb.stabilizer, hb.stabilizerFrobenius);

  std::vector<int> irreps;
  const auto& stab = S.characterTable();
  for (int i : fInvariantIrreps(ts)) {
    bool keep = true;
    if (ext)
      for (size_t k = 0; k < ext->subgroup.size() && keep; ++k)
        keep = stab.row(i)[S.classes().classOf[sIndex[ext->subgroup[k]]]] ==
               ext->values[k] * Cyclo(stab.degrees()[i]);
    if (keep) irreps.push_back(i);
  }

  // twisted pairs (gamma, y) with gamma F_X(y) = y
  std::vector<std::pair<int, int>> pairs;
  std::unordered_map<long, int> pairIndex;
  for (size_t v = 0; v < nu; ++v)
    for (size_t y = 0; y < nx; ++y)
      if (X.action[v][X.frobenius[y]] == static_cast<int>(y)) {
        pairIndex[static_cast<long>(v) * static_cast<long>(nx) + static_cast<long>(y)] = static_cast<int>(pairs.size());
        pairs.emplace_back(static_cast<int>(v), static_cast<int>(y));
      }
  auto act = [&](int d, const std::pair<int, int>& pr) {
    int gam = U.mul(U.mul(d, pr.first), U.inv(F[d]));
    return pairIndex.at(static_cast<long>(gam) * static_cast<long>(nx) + X.action[d][pr.second]);
  };
  UnionFind uf(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i)
    for (int s : U.generators()) uf.unite(static_cast<int>(i), act(s, pairs[i]));
  std::vector<int> orbitReps;
  std::vector<int> orbitOf(pairs.size());
  std::unordered_map<int, int> rootToOrbit;
  for (size_t i = 0; i < pairs.size(); ++i) {
    int r = uf.find(static_cast<int>(i));
    auto it = rootToOrbit.find(r);
    if (it == rootToOrbit.end()) {
      it = rootToOrbit.emplace(r, static_cast<int>(orbitReps.size())).first;
      orbitReps.push_back(static_cast<int>(i));
    }
    orbitOf[i] = it->second;
  }
  hb.orbitCount = orbitReps.size();
  if (!ext) {
    hb.targetDimension = hb.orbitCount;
  } else {
    // A permutes orbits; an A-orbit contributes iff chi is trivial on its stabilizer
    std::vector<char> done(hb.orbitCount, 0);
    for (size_t o = 0; o < hb.orbitCount; ++o) {
      if (done[o]) continue;
      const auto& pr = pairs[orbitReps[o]];
      bool ok = true;
      for (size_t k = 0; k < ext->subgroup.size(); ++k) {
        int a = ext->subgroup[k];
        int moved = orbitOf[pairIndex.at(static_cast<long>(U.mul(a, pr.first)) * static_cast<long>(nx) + pr.second)];
        done[moved] = 1;
        if (moved == static_cast<int>(o) && ext->values[k] != Cyclo(1)) ok = false;
      }
      hb.targetDimension += ok;
    }
  }

  const auto& fc = tu.fClasses();
  hb.formReps = fc.reps;
  hb.fixedPoints.resize(fc.count());
  for (size_t a = 0; a < fc.count(); ++a)
    for (size_t y = 0; y < nx; ++y)
      if (X.action[fc.reps[a]][X.frobenius[y]] == static_cast<int>(y)) hb.fixedPoints[a].push_back(static_cast<int>(y));

  auto sOf = [&](int gam, int y) {
    int u = rep[y];
    int s = U.mul(U.mul(U.mul(U.inv(u), gam), F[u]), g0inv);
    if (sIndex[s] < 0) throw std::logic_error("twisted element outside the stabilizer");
    return sIndex[s];
  };

  bool invariant = true;
  std::vector<std::vector<Cyclo>> matrix;
  for (int i : irreps) {
    auto exts = extensionsOfIrrep(ts, i);
    if (exts.empty()) throw std::logic_error("F-invariant irreducible without extension");
    TVector tv;
    tv.irrep = i;
    tv.extension = exts[0];
    std::vector<Cyclo> onPairs(pairs.size());
    for (size_t k = 0; k < pairs.size(); ++k) onPairs[k] = twistedValue(ts, tv.extension, sOf(pairs[k].first, pairs[k].second));
    for (size_t k = 0; k < pairs.size() && invariant; ++k) {
      for (int s : U.generators())
        if (onPairs[act(s, pairs[k])] != onPairs[k]) invariant = false;
      if (ext)
        for (size_t j = 0; j < ext->subgroup.size(); ++j) {
          int moved = pairIndex.at(static_cast<long>(U.mul(ext->subgroup[j], pairs[k].first)) * static_cast<long>(nx) +
                                   pairs[k].second);
          if (onPairs[moved] != ext->values[j] * onPairs[k]) invariant = false;
        }
    }
    tv.values.assign(fc.count(), std::vector<Cyclo>(nx));
    for (size_t a = 0; a < fc.count(); ++a)
      for (int y : hb.fixedPoints[a])
        tv.values[a][y] = onPairs[pairIndex.at(static_cast<long>(fc.reps[a]) * static_cast<long>(nx) + y)];
    std::vector<Cyclo> row;
    for (int r : orbitReps) row.push_back(onPairs[r]);
    matrix.push_back(std::move(row));
    hb.vectors.push_back(std::move(tv));
  }
  hb.invariant = invariant;
  hb.rank = exactRank(matrix);
  hb.isBasis = invariant && hb.rank == hb.vectors.size() && hb.rank == hb.targetDimension;
  return hb;
}

FormSystemPtr twistedFormSystem(const TwistedGroup& t) {
  auto fs = std::make_shared<FormSystem>();
  fs->q = 1;
  fs->dim = 0;
  for (int r : t.fClasses().reps) {
    fs->groups.push_back(t.twistedCentralizer(r));
    fs->labels.push_back("alpha=" + t.gamma()->show(r));
  }
  return fs;
}

DrinfeldDouble drinfeldDoubleTraceFunctions(const TwistedGroup& t) {
  const auto& G = *t.gamma();
  DrinfeldDouble dd;
  dd.forms = twistedFormSystem(t);
  dd.pGroup = isPrimePower(static_cast<long>(G.order()));
  for (const auto& g : dd.forms->groups) dd.dimension += g->classes().count();
  const auto& cl = G.classes();
  const auto& perm = t.classPermutation();
  for (size_t c = 0; c < cl.count(); ++c) {
    if (perm[c] != static_cast<int>(c)) continue;
    std::vector<int> pts{cl.reps[c]};
    for (int x : cl.members[c])
      if (x != cl.reps[c]) pts.push_back(x);
    std::unordered_map<int, int> pos;
    for (size_t i = 0; i < pts.size(); ++i) pos[pts[i]] = static_cast<int>(i);
    HomogeneousSpace X;
    X.points = pts.size();
    X.action.assign(G.order(), std::vector<int>(pts.size()));
    for (size_t u = 0; u < G.order(); ++u)
      for (size_t i = 0; i < pts.size(); ++i) X.action[u][i] = pos.at(G.conj(static_cast<int>(u), pts[i]));
    for (size_t i = 0; i < pts.size(); ++i) X.frobenius.push_back(pos.at(t.frobenius()[pts[i]]));
    auto hb = homogeneousTBasis(t, X);
    if (!hb.isBasis) throw std::logic_error("Drinfeld double T-vectors are not a basis on a class");
    dd.maxStabilizerExponent = std::max(dd.maxStabilizerExponent, hb.stabilizer->exponent());
    for (const auto& tv : hb.vectors) {
      DoubleFunction df;
      df.classRep = cl.reps[c];
      df.centralizerOrder = static_cast<long>(G.order()) / cl.sizes[c];
      df.irrep = tv.irrep;
      df.values = zeroGroupoidFunction(dd.forms);
      for (size_t a = 0; a < dd.forms->groups.size(); ++a) {
        const auto& ga = *dd.forms->groups[a];
        const auto& gcl = ga.classes();
        for (size_t k = 0; k < gcl.count(); ++k) {
          int inG = G.index(ga.key(gcl.reps[k]));
          auto it = pos.find(inG);
          if (it != pos.end()) df.values.parts[a].values[k] = tv.values[a][it->second];
        }
      }
      dd.functions.push_back(std::move(df));
    }
  }
  return dd;
}

std::vector<std::vector<Cyclo>> groupoidGram(const std::vector<GroupoidFunction>& fs) {
  std::vector<std::vector<Cyclo>> m(fs.size(), std::vector<Cyclo>(fs.size()));
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = i; j < fs.size(); ++j) {
      m[i][j] = groupoidInner(fs[i], fs[j]);
      m[j][i] = m[i][j].conjugate();
    }
  return m;
}

bool isIdentityMatrix(const std::vector<std::vector<Cyclo>>& m) {
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j)
      if (m[i][j] != Cyclo(i == j ? 1 : 0)) return false;
  return true;
}

bool isUnitary(const std::vector<std::vector<Cyclo>>& m) {
  size_t n = m.size();
  for (size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) return false;
    for (size_t j = 0; j < n; ++j) {
      Cyclo s;
      for (size_t k = 0; k < n; ++k)
        if (!m[i][k].isZero() && !m[j][k].isZero()) s += m[i][k] * m[j][k].conjugate();
      if (s != Cyclo(i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

}  // namespace csheaf
