#include "csheaf/groups.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace csheaf {

GroupPtr FiniteGroup::closure(LawPtr law, const std::vector<Key>& gens, size_t cap) {
  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->law_ = law;
  g->keys_.push_back(law->identity);
  g->index_.emplace(law->identity, 0);
  g->parent_.push_back(-1);
  g->parentGen_.push_back(-1);

  std::vector<Key> uniqueGens;
  for (Key k : gens)
    if (k != law->identity && std::find(uniqueGens.begin(), uniqueGens.end(), k) == uniqueGens.end())
      uniqueGens.push_back(k);

  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::map<Key, std::pair<int, int>> found;
    for (int x : frontier) {
      for (size_t s = 0; s < uniqueGens.size(); ++s) {
        Key y = law->mul(g->keys_[x], uniqueGens[s]);
        if (g->index_.count(y) || found.count(y)) continue;
        found.emplace(y, std::make_pair(x, static_cast<int>(s)));
      }
    }
    frontier.clear();
    for (const auto& [y, src] : found) {
      int idx = static_cast<int>(g->keys_.size());
      g->keys_.push_back(y);
      g->index_.emplace(y, idx);
      g->parent_.push_back(src.first);
      g->parentGen_.push_back(src.second);
      frontier.push_back(idx);
    }
    if (g->keys_.size() > cap)
      throw CapExceeded("group closure exceeds " + std::to_string(cap) + " elements");
  }
  for (Key k : uniqueGens) g->gens_.push_back(g->index_.at(k));
  g->finalize();
  return g;
}

GroupPtr FiniteGroup::fromElements(LawPtr law, std::vector<Key> keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  auto idPos = std::find(keys.begin(), keys.end(), law->identity);
  if (idPos == keys.end()) throw std::invalid_argument("subset does not contain the identity");
  keys.erase(idPos);
  keys.insert(keys.begin(), law->identity);
  if (keys.size() > kMaxOrder) throw CapExceeded("group exceeds " + std::to_string(kMaxOrder) + " elements");

  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->law_ = law;
  g->keys_ = keys;
  for (size_t i = 0; i < keys.size(); ++i) g->index_.emplace(keys[i], static_cast<int>(i));

  // Greedy generating set; every product met along the way must stay inside the subset.
  std::vector<Key> gens;
  std::unordered_set<Key> reached{law->identity};
  for (Key k : keys) {
    if (reached.count(k)) continue;
    gens.push_back(k);
    std::deque<Key> queue(reached.begin(), reached.end());
    while (!queue.empty()) {
      Key x = queue.front();
      queue.pop_front();
      for (Key s : gens) {
        Key y = law->mul(x, s);
        if (!g->index_.count(y)) throw std::invalid_argument("subset is not closed under multiplication");
        if (reached.insert(y).second) queue.push_back(y);
      }
    }
  }
  for (Key k : gens) g->gens_.push_back(g->index_.at(k));
  g->computeGenerators();
  g->finalize();
  return g;
}

// Breadth-first words for an explicit element list.
void FiniteGroup::computeGenerators() {
  size_t n = keys_.size();
  parent_.assign(n, -1);
  parentGen_.assign(n, -1);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (size_t s = 0; s < gens_.size(); ++s) {
      int y = index_.at(law_->mul(keys_[x], keys_[gens_[s]]));
      if (seen[y]) continue;
      seen[y] = 1;
      parent_[y] = x;
      parentGen_[y] = static_cast<int>(s);
      queue.push_back(y);
    }
  }
}

void FiniteGroup::finalize() {
  size_t n = keys_.size();
  inverse_.resize(n);
  for (size_t i = 0; i < n; ++i) inverse_[i] = index(law_->inv(keys_[i]));
  if (n <= kTableLimit) {
    table_.resize(n * n);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) table_[a * n + b] = index(law_->mul(keys_[a], keys_[b]));
  }
}

int FiniteGroup::mul(int a, int b) const {
  if (!table_.empty()) return table_[static_cast<size_t>(a) * keys_.size() + b];
  return index(law_->mul(keys_[a], keys_[b]));
}

int FiniteGroup::power(int a, long e) const {
  if (e < 0) {
    a = inverse_[a];
    e = -e;
  }
  int r = 0, base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

int FiniteGroup::elementOrder(int a) const {
  int o = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++o;
  return o;
}

long FiniteGroup::exponent() const {
  long e = 1;
  for (size_t i = 0; i < keys_.size(); ++i) e = lcml(e, elementOrder(static_cast<int>(i)));
  return e;
}

bool FiniteGroup::isAbelian() const {
  for (int a : gens_)
    for (int b : gens_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::optional<int> FiniteGroup::find(Key k) const {
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int FiniteGroup::index(Key k) const {
  auto it = index_.find(k);
  if (it == index_.end()) throw std::out_of_range("element not in group");
  return it->second;
}

std::vector<int> FiniteGroup::word(int a) const {
  std::vector<int> w;
  for (int x = a; x != 0; x = parent_[x]) w.push_back(parentGen_[x]);
  std::reverse(w.begin(), w.end());
  return w;
}

std::string FiniteGroup::show(int a) const {
  if (law_->show) return law_->show(keys_[a]);
  return std::to_string(keys_[a]);
}

std::string FiniteGroup::wordString(int a) const {
  std::vector<int> w = word(a);
  if (w.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < w.size();) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (i) os << "*";
    os << "g" << (w[i] + 1);
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

const ConjugacyClasses& FiniteGroup::classes() const {
  std::call_once(classesOnce_, [this] {
    size_t n = keys_.size();
    std::vector<int> label(n, -1);
    std::vector<std::vector<int>> raw;
    for (size_t start = 0; start < n; ++start) {
      if (label[start] >= 0) continue;
      int id = static_cast<int>(raw.size());
      std::vector<int> orbit{static_cast<int>(start)};
      label[start] = id;
      for (size_t pos = 0; pos < orbit.size(); ++pos) {
        for (int s : gens_) {
          int y = conj(s, orbit[pos]);
          if (label[y] < 0) {
            label[y] = id;
            orbit.push_back(y);
          }
        }
      }
      std::sort(orbit.begin(), orbit.end());
      raw.push_back(std::move(orbit));
    }
    auto repKey = [&](const std::vector<int>& c) {
      Key best = keys_[c[0]];
      for (int x : c) best = std::min(best, keys_[x]);
      return best;
    };
    std::vector<size_t> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      bool ida = raw[a][0] == 0, idb = raw[b][0] == 0;
      if (ida != idb) return ida;
      if (raw[a].size() != raw[b].size()) return raw[a].size() < raw[b].size();
      return repKey(raw[a]) < repKey(raw[b]);
    });
    auto cls = std::make_unique<ConjugacyClasses>();
    cls->classOf.assign(n, -1);
    for (size_t c = 0; c < order.size(); ++c) {
      const auto& mem = raw[order[c]];
      Key rk = repKey(mem);
      cls->reps.push_back(index_.at(rk));
      cls->sizes.push_back(static_cast<long>(mem.size()));
      for (int x : mem) cls->classOf[x] = static_cast<int>(c);
      cls->members.push_back(mem);
    }
    for (size_t c = 0; c < cls->reps.size(); ++c) cls->inverse.push_back(cls->classOf[inverse_[cls->reps[c]]]);
    classes_ = std::move(cls);
  });
  return *classes_;
}

const std::vector<std::vector<int>>& FiniteGroup::powerMaps() const {
  std::call_once(powerOnce_, [this] {
    const auto& cls = classes();
    long e = exponent();
    auto pm = std::make_unique<std::vector<std::vector<int>>>(cls.count());
    for (size_t c = 0; c < cls.count(); ++c) {
      auto& row = (*pm)[c];
      row.resize(e);
      int x = 0;
      for (long t = 0; t < e; ++t) {
        row[t] = cls.classOf[x];
        x = mul(x, cls.reps[c]);
      }
    }
    powerMaps_ = std::move(pm);
  });
  return *powerMaps_;
}

const CharacterTable& FiniteGroup::characterTable() const {
  std::call_once(tableOnce_, [this] { table2_ = std::make_unique<CharacterTable>(*this); });
  return *table2_;
}

GroupPtr FiniteGroup::subgroup(const std::function<bool(int)>& pred) const {
  std::vector<Key> keys;
  for (size_t i = 0; i < keys_.size(); ++i)
    if (pred(static_cast<int>(i))) keys.push_back(keys_[i]);
  return fromElements(law_, std::move(keys));
}

GroupPtr FiniteGroup::centralizer(int x) const {
  return subgroup([&](int g) { return mul(g, x) == mul(x, g); });
}

std::vector<int> FiniteGroup::inclusionOf(const FiniteGroup& sub) const {
  std::vector<int> out(sub.order());
  for (size_t i = 0; i < sub.order(); ++i) out[i] = index(sub.key(static_cast<int>(i)));
  return out;
}

void FiniteGroup::checkAutomorphism(const std::vector<int>& perm) const {
  size_t n = keys_.size();
  if (perm.size() != n) throw std::invalid_argument("automorphism has wrong length");
  std::vector<char> hit(n, 0);
  for (int x : perm) {
    if (x < 0 || static_cast<size_t>(x) >= n || hit[x]) throw std::invalid_argument("map is not a bijection");
    hit[x] = 1;
  }
  for (int s : gens_)
    for (size_t b = 0; b < n; ++b)
      if (perm[mul(s, static_cast<int>(b))] != mul(perm[s], perm[b]))
        throw std::invalid_argument("map is not a homomorphism");
}

// ---------------------------------------------------------------- class functions

ClassFunction ClassFunction::operator+(const ClassFunction& o) const {
  if (group != o.group) throw std::invalid_argument("class functions on different groups");
  ClassFunction r = *this;
  for (size_t i = 0; i < values.size(); ++i) r.values[i] += o.values[i];
  return r;
}

ClassFunction ClassFunction::operator-(const ClassFunction& o) const {
  if (group != o.group) throw std::invalid_argument("class functions on different groups");
  ClassFunction r = *this;
  for (size_t i = 0; i < values.size(); ++i) r.values[i] -= o.values[i];
  return r;
}

ClassFunction ClassFunction::operator*(const Cyclo& s) const {
  ClassFunction r = *this;
  for (auto& v : r.values) v *= s;
  return r;
}

bool ClassFunction::operator==(const ClassFunction& o) const {
  if (group != o.group || values.size() != o.values.size()) return false;
  for (size_t i = 0; i < values.size(); ++i)
    if (values[i] != o.values[i]) return false;
  return true;
}

bool ClassFunction::isZero() const {
  for (const auto& v : values)
    if (!v.isZero()) return false;
  return true;
}

ClassFunction ClassFunction::conjugate() const {
  ClassFunction r = *this;
  for (auto& v : r.values) v = v.conjugate();
  return r;
}

ClassFunction zeroFunction(const GroupPtr& g) { return {g, std::vector<Cyclo>(g->classes().count())}; }

ClassFunction delta1(const GroupPtr& g) {
  ClassFunction f = zeroFunction(g);
  f.values[0] = 1;
  return f;
}

ClassFunction constantFunction(const GroupPtr& g, const Cyclo& c) {
  return {g, std::vector<Cyclo>(g->classes().count(), c)};
}

ClassFunction classFunctionFromElements(const GroupPtr& g, const std::vector<Cyclo>& perElement) {
  const auto& cls = g->classes();
  ClassFunction f = zeroFunction(g);
  for (size_t c = 0; c < cls.count(); ++c) {
    f.values[c] = perElement[cls.reps[c]];
    for (int x : cls.members[c])
      if (perElement[x] != f.values[c]) throw std::invalid_argument("function is not constant on conjugacy classes");
  }
  return f;
}

Cyclo normalizedInner(const ClassFunction& a, const ClassFunction& b) {
  if (a.group != b.group) throw std::invalid_argument("class functions on different groups");
  const auto& cls = a.group->classes();
  Cyclo s;
  for (size_t c = 0; c < cls.count(); ++c) s += a.values[c] * b.values[c].conjugate() * Cyclo(cls.sizes[c]);
  return s / Cyclo(static_cast<long>(a.group->order()));
}

// ---------------------------------------------------------------- Dixon

namespace {

long mulmod(long a, long b, long m) { return static_cast<long>((static_cast<__int128>(a) * b) % m); }

long powmod(long a, long e, long m) {
  long r = 1;
  a %= m;
  if (a < 0) a += m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

long invmod(long a, long m) { return powmod(a, m - 2, m); }

long primitiveRoot(long ell) {
  std::vector<long> factors;
  long n = ell - 1;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) factors.push_back(n);
  for (long g = 2;; ++g) {
    bool ok = true;
    for (long f : factors)
      if (powmod(g, (ell - 1) / f, ell) == 1) ok = false;
    if (ok) return g;
  }
}

using Mat = std::vector<std::vector<long>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& a, long ell) {
  std::vector<int> pivots;
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    long inv = invmod(a[r][c], ell);
    for (auto& x : a[r]) x = mulmod(x, inv, ell);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      long f = a[i][c];
      for (size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - mulmod(f, a[r][j], ell)) % ell + ell) % ell;
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  a.resize(r);
  return pivots;
}

std::vector<std::vector<long>> nullspace(Mat a, long ell) {
  size_t cols = a.empty() ? 0 : a[0].size();
  std::vector<int> piv = rref(a, ell);
  std::vector<char> isPiv(cols, 0);
  for (int p : piv) isPiv[p] = 1;
  std::vector<std::vector<long>> out;
  for (size_t f = 0; f < cols; ++f) {
    if (isPiv[f]) continue;
    std::vector<long> v(cols, 0);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = (ell - a[i][f]) % ell;
    out.push_back(std::move(v));
  }
  return out;
}

// Characteristic polynomial via Hessenberg reduction; coefficients constant term first.
std::vector<long> charpoly(Mat h, long ell) {
  int n = static_cast<int>(h.size());
  for (int m = 1; m < n - 1; ++m) {
    int i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (int j = 0; j < n; ++j) std::swap(h[j][i], h[j][m]);
    }
    long t = invmod(h[m][m - 1], ell);
    for (int r = m + 1; r < n; ++r) {
      long u = mulmod(h[r][m - 1], t, ell);
      if (u == 0) continue;
      for (int j = 0; j < n; ++j) h[r][j] = ((h[r][j] - mulmod(u, h[m][j], ell)) % ell + ell) % ell;
      for (int j = 0; j < n; ++j) h[j][m] = (h[j][m] + mulmod(u, h[j][r], ell)) % ell;
    }
  }
  std::vector<std::vector<long>> p(n + 1);
  p[0] = {1};
  for (int m = 1; m <= n; ++m) {
    std::vector<long> next(m + 1, 0);
    const auto& prev = p[m - 1];
    for (size_t k = 0; k < prev.size(); ++k) {
      next[k + 1] = (next[k + 1] + prev[k]) % ell;
      next[k] = ((next[k] - mulmod(h[m - 1][m - 1], prev[k], ell)) % ell + ell) % ell;
    }
    long prod = 1;
    for (int i = m - 1; i >= 1; --i) {
      prod = mulmod(prod, h[i][i - 1], ell);
      long coef = mulmod(h[i - 1][m - 1], prod, ell);
      if (coef == 0) continue;
      const auto& pi = p[i - 1];
      for (size_t k = 0; k < pi.size(); ++k) next[k] = ((next[k] - mulmod(coef, pi[k], ell)) % ell + ell) % ell;
    }
    p[m] = std::move(next);
  }
  return p[n];
}

}  // namespace

CharacterTable::CharacterTable(const FiniteGroup& g) {
  if (g.order() > FiniteGroup::kMaxOrder) throw CapExceeded("character table needs |G| <= 10^4");
  const auto& cls = g.classes();
  const auto& pm = g.powerMaps();
  size_t k = cls.count();
  long order = static_cast<long>(g.order());
  exponent_ = g.exponent();
  long e = exponent_;

  double bound = 2.0 * std::sqrt(static_cast<double>(order));
  long ell = e + 1;
  while (ell <= bound || !isPrime(ell)) ell += e;
  ell_ = ell;

  std::map<size_t, Mat> classMatrices;
  auto classMatrix = [&](size_t i) -> const Mat& {
    auto it = classMatrices.find(i);
    if (it != classMatrices.end()) return it->second;
    Mat m(k, std::vector<long>(k, 0));
    for (int x : cls.members[i]) {
      int xi = g.inv(x);
      for (size_t c = 0; c < k; ++c) {
        int j = cls.classOf[g.mul(xi, cls.reps[c])];
        m[j][c] += 1;
      }
    }
    for (auto& row : m)
      for (auto& v : row) v %= ell;
    return classMatrices.emplace(i, std::move(m)).first->second;
  };

  struct Space {
    Mat basis;  // rows, reduced echelon
    std::vector<int> pivots;
  };
  std::vector<Space> spaces;
  {
    Space all;
    all.basis.assign(k, std::vector<long>(k, 0));
    for (size_t i = 0; i < k; ++i) all.basis[i][i] = 1;
    for (size_t i = 0; i < k; ++i) all.pivots.push_back(static_cast<int>(i));
    spaces.push_back(std::move(all));
  }

  for (size_t ci = 1; ci < k && spaces.size() < k; ++ci) {
    const Mat& m = classMatrix(ci);
    std::vector<Space> next;
    for (auto& sp : spaces) {
      size_t d = sp.basis.size();
      if (d == 1) {
        next.push_back(std::move(sp));
        continue;
      }
      // Restriction of M to the space, in the coordinates read off the pivot columns.
      Mat a(d, std::vector<long>(d, 0));
      for (size_t r = 0; r < d; ++r) {
        std::vector<long> img(k, 0);
        for (size_t j = 0; j < k; ++j) {
          long acc = 0;
          for (size_t c = 0; c < k; ++c)
            if (m[j][c] && sp.basis[r][c]) acc = (acc + mulmod(m[j][c], sp.basis[r][c], ell)) % ell;
          img[j] = acc;
        }
        for (size_t s = 0; s < d; ++s) a[s][r] = img[sp.pivots[s]];
      }
      std::vector<long> cp = charpoly(a, ell);
      std::vector<long> roots;
      for (long lam = 0; lam < ell; ++lam) {
        long acc = 0;
        for (int i = static_cast<int>(cp.size()) - 1; i >= 0; --i) acc = (mulmod(acc, lam, ell) + cp[i]) % ell;
        if (acc == 0) roots.push_back(lam);
      }
      if (roots.size() == 1) {
        next.push_back(std::move(sp));
        continue;
      }
      size_t total = 0;
      for (long lam : roots) {
        Mat shifted = a;
        for (size_t s = 0; s < d; ++s) shifted[s][s] = (shifted[s][s] - lam + ell) % ell;
        auto ns = nullspace(shifted, ell);
        Space part;
        for (const auto& coords : ns) {
          std::vector<long> v(k, 0);
          for (size_t s = 0; s < d; ++s)
            if (coords[s])
              for (size_t c = 0; c < k; ++c) v[c] = (v[c] + mulmod(coords[s], sp.basis[s][c], ell)) % ell;
          part.basis.push_back(std::move(v));
        }
        part.pivots = rref(part.basis, ell);
        total += part.basis.size();
        next.push_back(std::move(part));
      }
      if (total != d) throw std::runtime_error("internal: class matrix not diagonalizable over F_ell");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != k) throw std::runtime_error("internal: eigenspace splitting did not separate all characters");

  long z = powmod(primitiveRoot(ell), (ell - 1) / e, ell);
  long invE = invmod(e % ell, ell);
  long orderMod = order % ell;
  std::vector<std::pair<long, std::vector<Cyclo>>> rows;
  for (auto& sp : spaces) {
    std::vector<long> v = sp.basis[0];
    if (v[0] == 0) throw std::runtime_error("internal: eigenvector vanishes at the identity class");
    long s0 = invmod(v[0], ell);
    for (auto& x : v) x = mulmod(x, s0, ell);
    long s = 0;
    for (size_t j = 0; j < k; ++j)
      s = (s + mulmod(mulmod(v[j], v[cls.inverse[j]], ell), invmod(cls.sizes[j] % ell, ell), ell)) % ell;
    long target = mulmod(orderMod, invmod(s, ell), ell);
    long deg = 0;
    for (long dd = 1; dd * dd <= order; ++dd)
      if (mulmod(dd, dd, ell) == target) deg = dd;
    if (deg == 0) throw std::runtime_error("internal: no degree matches");
    std::vector<long> theta(k);
    for (size_t j = 0; j < k; ++j) theta[j] = mulmod(mulmod(deg, v[j], ell), invmod(cls.sizes[j] % ell, ell), ell);
    std::vector<Cyclo> values(k);
    for (size_t j = 0; j < k; ++j) {
      std::vector<Rational> mult(e);
      for (long sidx = 0; sidx < e; ++sidx) {
        long acc = 0;
        for (long t = 0; t < e; ++t) {
          long zt = powmod(z, ((e - sidx) % e) * t % e, ell);
          acc = (acc + mulmod(theta[pm[j][t]], zt, ell)) % ell;
        }
        long mcount = mulmod(acc, invE, ell);
        if (mcount > deg) throw std::runtime_error("internal: eigenvalue multiplicity out of range");
        mult[sidx] = mcount;
      }
      values[j] = Cyclo::fromPowers(static_cast<int>(e), mult);
    }
    rows.emplace_back(deg, std::move(values));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    auto trivial = [](const std::vector<Cyclo>& v) {
      return std::all_of(v.begin(), v.end(), [](const Cyclo& x) { return x == Cyclo(1); });
    };
    bool ta = trivial(a.second), tb = trivial(b.second);
    if (ta != tb) return ta;
    for (size_t j = 0; j < a.second.size(); ++j) {
      int c = Cyclo::compare(a.second[j], b.second[j]);
      if (c != 0) return c < 0;
    }
    return false;
  });
  long sumSq = 0;
  for (auto& [d, vals] : rows) {
    degrees_.push_back(d);
    rows_.push_back(std::move(vals));
    sumSq += d * d;
  }
  if (sumSq != order) throw std::runtime_error("internal: degree squares do not sum to |G|");
}

// ---------------------------------------------------------------- catalog

LawPtr permutationLaw(int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("permutation degree must be in 1..16");
  auto law = std::make_shared<GroupLaw>();
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  law->identity = packPermutation(id);
  law->mul = [n](Key a, Key b) {
    // (a*b)(i) = a(b(i))
    Key out = 0;
    for (int i = 0; i < n; ++i) {
      Key bi = (b >> (4 * i)) & 0xF;
      Key abi = (a >> (4 * bi)) & 0xF;
      out |= abi << (4 * i);
    }
    return out;
  };
  law->inv = [n](Key a) {
    Key out = 0;
    for (int i = 0; i < n; ++i) {
      Key ai = (a >> (4 * i)) & 0xF;
      out |= static_cast<Key>(i) << (4 * ai);
    }
    return out;
  };
  law->show = [n](Key a) {
    std::vector<int> img = unpackPermutation(a, n);
    std::vector<char> seen(n, 0);
    std::ostringstream os;
    for (int i = 0; i < n; ++i) {
      if (seen[i] || img[i] == i) continue;
      os << "(";
      for (int j = i; !seen[j]; j = img[j]) {
        seen[j] = 1;
        if (j != i) os << " ";
        os << (j + 1);
      }
      os << ")";
    }
    std::string s = os.str();
    return s.empty() ? std::string("()") : s;
  };
  return law;
}

Key packPermutation(const std::vector<int>& images) {
  Key k = 0;
  for (size_t i = 0; i < images.size(); ++i) k |= static_cast<Key>(images[i]) << (4 * i);
  return k;
}

std::vector<int> unpackPermutation(Key k, int n) {
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = static_cast<int>((k >> (4 * i)) & 0xF);
  return out;
}

Key parseCycles(const std::string& s, int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<int> cycle;
  std::string num;
  auto flushNum = [&] {
    if (num.empty()) return;
    int v = std::stoi(num) - 1;
    if (v < 0 || v >= n) throw std::invalid_argument("cycle point out of range: " + num);
    cycle.push_back(v);
    num.clear();
  };
  // Cycles compose right to left, matching the law's a(b(i)).
  std::vector<std::vector<int>> cycles;
  for (char ch : s) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      num.push_back(ch);
    } else if (ch == '(') {
      cycle.clear();
    } else if (ch == ')') {
      flushNum();
      cycles.push_back(cycle);
    } else if (ch == ' ' || ch == ',') {
      flushNum();
    } else {
      throw std::invalid_argument("bad character in cycle notation");
    }
  }
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    const auto& c = *it;
    std::vector<int> step(n);
    std::iota(step.begin(), step.end(), 0);
    for (size_t i = 0; i < c.size(); ++i) step[c[i]] = c[(i + 1) % c.size()];
    for (int i = 0; i < n; ++i) img[i] = step[img[i]];
  }
  return packPermutation(img);
}

GroupPtr cyclicGroup(int n) {
  auto law = std::make_shared<GroupLaw>();
  law->identity = 0;
  law->mul = [n](Key a, Key b) { return (a + b) % n; };
  law->inv = [n](Key a) { return (n - a) % n; };
  law->show = [](Key a) { return std::to_string(a); };
  return FiniteGroup::closure(law, n > 1 ? std::vector<Key>{1} : std::vector<Key>{});
}

GroupPtr elementaryAbelian(int p, int k) {
  auto law = std::make_shared<GroupLaw>();
  law->identity = 0;
  law->mul = [p, k](Key a, Key b) {
    Key out = 0, pw = 1;
    for (int i = 0; i < k; ++i) {
      out += ((a % p + b % p) % p) * pw;
      a /= p;
      b /= p;
      pw *= p;
    }
    return out;
  };
  law->inv = [p, k](Key a) {
    Key out = 0, pw = 1;
    for (int i = 0; i < k; ++i) {
      out += ((p - a % p) % p) * pw;
      a /= p;
      pw *= p;
    }
    return out;
  };
  law->show = [p, k](Key a) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < k; ++i) {
      if (i) os << ",";
      os << a % p;
      a /= p;
    }
    os << ")";
    return os.str();
  };
  std::vector<Key> gens;
  Key pw = 1;
  for (int i = 0; i < k; ++i, pw *= p) gens.push_back(pw);
  return FiniteGroup::closure(law, gens);
}

GroupPtr dihedralGroup(int n) {
  // key = i + n*j represents r^i s^j.
  auto law = std::make_shared<GroupLaw>();
  law->identity = 0;
  law->mul = [n](Key a, Key b) {
    long i = static_cast<long>(a % n), j = static_cast<long>(a / n);
    long i2 = static_cast<long>(b % n), j2 = static_cast<long>(b / n);
    long ri = ((i + (j ? -i2 : i2)) % n + n) % n;
    return static_cast<Key>(ri + n * ((j + j2) % 2));
  };
  law->inv = [n](Key a) {
    long i = static_cast<long>(a % n), j = static_cast<long>(a / n);
    if (j) return a;
    return static_cast<Key>((n - i) % n);
  };
  law->show = [n](Key a) {
    long i = static_cast<long>(a % n), j = static_cast<long>(a / n);
    std::string s;
    if (i) s += "r^" + std::to_string(i);
    if (j) s += s.empty() ? "s" : "*s";
    return s.empty() ? std::string("1") : s;
  };
  return FiniteGroup::closure(law, {static_cast<Key>(n > 1 ? 1 : 0), static_cast<Key>(n)});
}

GroupPtr symmetricGroup(int n) {
  auto law = permutationLaw(n);
  std::vector<Key> gens;
  if (n >= 2) gens.push_back(parseCycles("(1 2)", n));
  if (n >= 3) {
    std::string c = "(";
    for (int i = 1; i <= n; ++i) c += std::to_string(i) + (i < n ? " " : ")");
    gens.push_back(parseCycles(c, n));
  }
  return FiniteGroup::closure(law, gens);
}

GroupPtr heisenbergGroup(int p) {
  // key = a + p b + p^2 c for [[1,a,c],[0,1,b],[0,0,1]].
  auto law = std::make_shared<GroupLaw>();
  Key P = p;
  law->identity = 0;
  law->mul = [P](Key x, Key y) {
    Key a = x % P, b = (x / P) % P, c = x / (P * P);
    Key a2 = y % P, b2 = (y / P) % P, c2 = y / (P * P);
    return (a + a2) % P + P * ((b + b2) % P) + P * P * ((c + c2 + a * b2) % P);
  };
  law->inv = [P](Key x) {
    Key a = x % P, b = (x / P) % P, c = x / (P * P);
    Key na = (P - a) % P, nb = (P - b) % P;
    Key nc = ((a * b) % P + P - c) % P;
    return na + P * nb + P * P * nc;
  };
  law->show = [P](Key x) {
    std::ostringstream os;
    os << "[" << x % P << "," << (x / P) % P << "," << x / (P * P) << "]";
    return os.str();
  };
  return FiniteGroup::closure(law, {1, P});
}

GroupPtr semidirectProduct(const GroupPtr& a, const GroupPtr& gamma, const std::vector<std::vector<int>>& act) {
  if (act.size() != a->order()) throw std::invalid_argument("action must list one automorphism per element");
  for (const auto& perm : act) gamma->checkAutomorphism(perm);
  for (size_t x = 0; x < a->order(); ++x)
    for (size_t y = 0; y < a->order(); ++y) {
      const auto& lhs = act[a->mul(static_cast<int>(x), static_cast<int>(y))];
      for (size_t g = 0; g < gamma->order(); ++g)
        if (lhs[g] != act[x][act[y][g]]) throw std::invalid_argument("action is not a homomorphism");
    }
  Key n = gamma->order();
  auto actCopy = std::make_shared<std::vector<std::vector<int>>>(act);
  auto law = std::make_shared<GroupLaw>();
  law->identity = 0;
  law->mul = [a, gamma, actCopy, n](Key x, Key y) {
    int ax = static_cast<int>(x / n), gx = static_cast<int>(x % n);
    int ay = static_cast<int>(y / n), gy = static_cast<int>(y % n);
    int twisted = (*actCopy)[a->inv(ay)][gx];
    return static_cast<Key>(a->mul(ax, ay)) * n + static_cast<Key>(gamma->mul(twisted, gy));
  };
  law->inv = [a, gamma, actCopy, n](Key x) {
    int ax = static_cast<int>(x / n), gx = static_cast<int>(x % n);
    return static_cast<Key>(a->inv(ax)) * n + static_cast<Key>(gamma->inv((*actCopy)[ax][gx]));
  };
  law->show = [a, gamma, n](Key x) {
    int ax = static_cast<int>(x / n), gx = static_cast<int>(x % n);
    return "(" + a->show(ax) + "; " + gamma->show(gx) + ")";
  };
  std::vector<Key> gens;
  for (int s : a->generators()) gens.push_back(static_cast<Key>(s) * n);
  for (int t : gamma->generators()) gens.push_back(static_cast<Key>(t));
  return FiniteGroup::closure(law, gens);
}

ConjugacyClasses twistedConjugacyClasses(const FiniteGroup& g, const std::vector<int>& f) {
  g.checkAutomorphism(f);
  size_t n = g.order();
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> raw;
  for (size_t start = 0; start < n; ++start) {
    if (label[start] >= 0) continue;
    int id = static_cast<int>(raw.size());
    std::vector<int> orbit{static_cast<int>(start)};
    label[start] = id;
    for (size_t pos = 0; pos < orbit.size(); ++pos)
      for (int s : g.generators()) {
        int y = g.mul(g.mul(s, orbit[pos]), g.inv(f[s]));
        if (label[y] < 0) {
          label[y] = id;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    raw.push_back(std::move(orbit));
  }
  auto repKey = [&](const std::vector<int>& c) {
    Key best = g.key(c[0]);
    for (int x : c) best = std::min(best, g.key(x));
    return best;
  };
  std::vector<size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    bool ida = raw[a][0] == 0, idb = raw[b][0] == 0;
    if (ida != idb) return ida;
    if (raw[a].size() != raw[b].size()) return raw[a].size() < raw[b].size();
    return repKey(raw[a]) < repKey(raw[b]);
  });
  ConjugacyClasses out;
  out.classOf.assign(n, -1);
  for (size_t c = 0; c < order.size(); ++c) {
    auto& mem = raw[order[c]];
    out.reps.push_back(g.index(repKey(mem)));
    out.sizes.push_back(static_cast<long>(mem.size()));
    for (int x : mem) out.classOf[x] = static_cast<int>(c);
    out.members.push_back(std::move(mem));
  }
  return out;
}

ClassFunction induceCharacter(const GroupPtr& h, const GroupPtr& g, const ClassFunction& f) {
  if (f.group != h) throw std::invalid_argument("function does not live on the subgroup");
  std::vector<int> inc = g->inclusionOf(*h);
  const auto& cg = g->classes();
  std::vector<Cyclo> sums(cg.count());
  for (size_t x = 0; x < h->order(); ++x) sums[cg.classOf[inc[x]]] += f.at(static_cast<int>(x));
  ClassFunction out = zeroFunction(g);
  long og = static_cast<long>(g->order()), oh = static_cast<long>(h->order());
  for (size_t c = 0; c < cg.count(); ++c) {
    if (sums[c].isZero()) continue;
    out.values[c] = sums[c] * Cyclo(frac(og, cg.sizes[c] * oh));
  }
  return out;
}

ClassFunction restrictCharacter(const GroupPtr& g, const GroupPtr& h, const ClassFunction& f) {
  if (f.group != g) throw std::invalid_argument("function does not live on the ambient group");
  std::vector<int> inc = g->inclusionOf(*h);
  const auto& ch = h->classes();
  ClassFunction out = zeroFunction(h);
  for (size_t c = 0; c < ch.count(); ++c) out.values[c] = f.at(inc[ch.reps[c]]);
  return out;
}

}  // namespace csheaf
