#include "csheaf/unipotent.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace csheaf {

namespace {

using Elt = FiniteField::Elt;

// Self-contained arithmetic for one level, so laws outlive the scheme object.
struct Level {
  SchemeKind kind;
  int p;
  FieldPtr f;  // null for constant groups
  std::uint32_t radix;
  size_t ncoord;
  int size;  // matrix size
  std::vector<std::pair<int, int>> pos;
  std::vector<std::vector<int>> at;

  std::vector<Elt> unpack(Key k) const {
    std::vector<Elt> c(ncoord);
    for (size_t i = 0; i < ncoord; ++i) {
      c[i] = static_cast<Elt>(k % radix);
      k /= radix;
    }
    return c;
  }
  Key pack(const std::vector<Elt>& c) const {
    Key k = 0;
    for (size_t i = ncoord; i-- > 0;) k = k * radix + c[i];
    return k;
  }
  Elt add(Elt a, Elt b) const { return f ? f->add(a, b) : (a + b) % p; }
  Elt neg(Elt a) const { return f ? f->neg(a) : (p - a) % p; }

  Key mul(Key x, Key y) const {
    auto a = unpack(x), b = unpack(y);
    std::vector<Elt> c(ncoord);
    if (kind == SchemeKind::Additive || kind == SchemeKind::Constant) {
      for (size_t i = 0; i < ncoord; ++i) c[i] = add(a[i], b[i]);
      return pack(c);
    }
    for (size_t t = 0; t < ncoord; ++t) {
      auto [i, j] = pos[t];
      Elt v = f->add(a[t], b[t]);
      for (int m = i + 1; m < j; ++m) v = f->add(v, f->mul(a[at[i][m]], b[at[m][j]]));
      c[t] = v;
    }
    return pack(c);
  }

  Key inv(Key x) const {
    auto a = unpack(x);
    std::vector<Elt> c(ncoord);
    if (kind == SchemeKind::Additive || kind == SchemeKind::Constant) {
      for (size_t i = 0; i < ncoord; ++i) c[i] = neg(a[i]);
      return pack(c);
    }
    // (g^{-1})_{ij} = -g_{ij} - sum_{i<m<j} g_{im} (g^{-1})_{mj}, by increasing j - i
    for (int d = 1; d < size; ++d)
      for (int i = 0; i + d < size; ++i) {
        int j = i + d, t = at[i][j];
        Elt v = f->neg(a[t]);
        for (int m = i + 1; m < j; ++m) v = f->sub(v, f->mul(a[at[i][m]], c[at[m][j]]));
        c[t] = v;
      }
    return pack(c);
  }

  std::string show(Key x) const {
    auto a = unpack(x);
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < ncoord; ++i) os << (i ? "," : "") << a[i];
    os << ")";
    return os.str();
  }
};

std::shared_ptr<Level> makeLevel(const SchemeSpec& spec, const std::vector<std::pair<int, int>>& pos,
                                 const std::vector<std::vector<int>>& at, int level) {
  auto L = std::make_shared<Level>();
  L->kind = spec.kind;
  L->p = spec.p;
  L->ncoord = pos.size();
  L->pos = pos;
  L->at = at;
  L->size = static_cast<int>(at.size());
  if (spec.kind == SchemeKind::Constant) {
    L->radix = static_cast<std::uint32_t>(spec.p);
  } else {
    L->f = FiniteField::get(spec.p, spec.s * level);
    L->radix = L->f->size();
  }
  long double span = 1;
  for (size_t i = 0; i < L->ncoord; ++i) span *= L->radix;
  if (span > 1.8e19L) throw CapExceeded("point encoding exceeds 64 bits");
  return L;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

UnipotentScheme::UnipotentScheme(SchemeSpec spec) : spec_(spec) {
  if (!isPrime(spec_.p)) throw FieldError("p must be prime");
  if (spec_.s < 1) throw std::invalid_argument("s must be positive");
  q_ = ipow(spec_.p, spec_.s);
  switch (spec_.kind) {
    case SchemeKind::Unitriangular:
    case SchemeKind::ExampleA4: {
      int n = spec_.kind == SchemeKind::ExampleA4 ? 3 : spec_.n;
      if (n < 2) throw std::invalid_argument("matrix size must be at least 2");
      spec_.n = n;
      at_.assign(n, std::vector<int>(n, -1));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          at_[i][j] = static_cast<int>(pos_.size());
          pos_.emplace_back(i, j);
          names_.push_back(std::to_string(i + 1) + std::to_string(j + 1));
        }
      dim_ = static_cast<int>(pos_.size());
      if (spec_.kind == SchemeKind::ExampleA4) {
        dim_ = 2;
        pi0_ = elementaryAbelian(spec_.p, 1);
      }
      break;
    }
    case SchemeKind::Additive:
    case SchemeKind::Constant:
      if (spec_.k < 1) throw std::invalid_argument("k must be positive");
      at_.assign(1, std::vector<int>(1, -1));
      for (int t = 0; t < spec_.k; ++t) {
        pos_.emplace_back(0, t);
        names_.push_back(std::to_string(t + 1));
      }
      if (spec_.kind == SchemeKind::Additive) {
        dim_ = spec_.k;
      } else {
        dim_ = 0;
        pi0_ = elementaryAbelian(spec_.p, spec_.k);
      }
      break;
  }
  if (!pi0_) pi0_ = cyclicGroup(1);
  pi0F_.resize(pi0_->order());
  std::iota(pi0F_.begin(), pi0F_.end(), 0);
}

std::string UnipotentScheme::name() const {
  std::ostringstream os;
  switch (spec_.kind) {
    case SchemeKind::Unitriangular: os << "UL" << spec_.n; break;
    case SchemeKind::ExampleA4: os << "exampleA4"; break;
    case SchemeKind::Additive: os << "Ga^" << spec_.k; break;
    case SchemeKind::Constant: os << "(Z/" << spec_.p << ")^" << spec_.k; break;
  }
  os << " over F_" << q_;
  return os.str();
}

int UnipotentScheme::coordinateIndex(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown coordinate '" + name + "' for " + this->name());
}

FieldPtr UnipotentScheme::field(int level) const {
  if (spec_.kind == SchemeKind::Constant) return FiniteField::get(spec_.p, 1);
  return FiniteField::get(spec_.p, spec_.s * level);
}

std::uint32_t UnipotentScheme::radix(int level) const {
  return spec_.kind == SchemeKind::Constant ? static_cast<std::uint32_t>(spec_.p) : field(level)->size();
}

std::vector<FiniteField::Elt> UnipotentScheme::unpack(Key k, int level) const {
  std::uint32_t r = radix(level);
  std::vector<Elt> c(pos_.size());
  for (size_t i = 0; i < c.size(); ++i) {
    c[i] = static_cast<Elt>(k % r);
    k /= r;
  }
  return c;
}

Key UnipotentScheme::pack(const std::vector<FiniteField::Elt>& c, int level) const {
  std::uint32_t r = radix(level);
  Key k = 0;
  for (size_t i = c.size(); i-- > 0;) k = k * r + c[i];
  return k;
}

bool UnipotentScheme::isPoint(const std::vector<FiniteField::Elt>& c) const {
  if (spec_.kind == SchemeKind::ExampleA4) return c[at_[0][1]] < static_cast<Elt>(spec_.p);
  return true;
}

LawPtr UnipotentScheme::law(int level) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = laws_.find(level);
  if (it != laws_.end()) return it->second;
  auto L = makeLevel(spec_, pos_, at_, level);
  auto law = std::make_shared<GroupLaw>();
  law->identity = 0;
  law->mul = [L](Key a, Key b) { return L->mul(a, b); };
  law->inv = [L](Key a) { return L->inv(a); };
  law->show = [L](Key a) { return L->show(a); };
  laws_[level] = law;
  return law;
}

Key UnipotentScheme::mulKeys(Key a, Key b, int level) const { return law(level)->mul(a, b); }
Key UnipotentScheme::invKey(Key a, int level) const { return law(level)->inv(a); }

Key UnipotentScheme::frobenius(Key k, int level) const {
  if (spec_.kind == SchemeKind::Constant) return k;
  auto f = field(level);
  auto c = unpack(k, level);
  for (auto& x : c) x = f->frobeniusPower(x, spec_.s);
  return pack(c, level);
}

Key UnipotentScheme::embed(Key k, int from, int to) const {
  if (from == to || spec_.kind == SchemeKind::Constant) return k;
  auto e = Embedding::get(field(from), field(to));
  auto c = unpack(k, from);
  for (auto& x : c) x = e->map(x);
  return pack(c, to);
}

size_t UnipotentScheme::pointCount(int level) const {
  long double n = 1;
  for (size_t i = 0; i < pos_.size(); ++i) n *= radix(level);
  if (spec_.kind == SchemeKind::ExampleA4) n = n / radix(level) * spec_.p;
  if (n > 1e18L) return static_cast<size_t>(-1);
  return static_cast<size_t>(n);
}

void UnipotentScheme::forEachPoint(int level, const std::function<void(Key)>& fn) const {
  if (pointCount(level) > kEnumerationCap)
    throw CapExceeded(name() + ": too many points at level " + std::to_string(level));
  std::uint32_t r = radix(level);
  std::vector<Elt> c(pos_.size(), 0);
  std::vector<std::uint32_t> lim(pos_.size(), r);
  if (spec_.kind == SchemeKind::ExampleA4) lim[at_[0][1]] = static_cast<std::uint32_t>(spec_.p);
  while (true) {
    fn(pack(c, level));
    size_t i = 0;
    while (i < c.size() && ++c[i] == lim[i]) c[i++] = 0;
    if (i == c.size()) break;
  }
}

PointGroup UnipotentScheme::pointsOver(int level) const {
  if (level < 1) throw std::invalid_argument("level must be positive");
  if (pointCount(level) > kPointCap)
    throw CapExceeded(name() + ": |G(F_q^" + std::to_string(level) + ")| exceeds " + std::to_string(kPointCap));
  std::vector<Key> keys;
  forEachPoint(level, [&](Key k) { keys.push_back(k); });
  PointGroup pg;
  pg.level = level;
  pg.group = FiniteGroup::fromElements(law(level), std::move(keys));
  pg.frobenius.resize(pg.group->order());
  for (size_t i = 0; i < pg.group->order(); ++i)
    pg.frobenius[i] = pg.group->index(frobenius(pg.group->key(static_cast<int>(i)), level));
  return pg;
}

int UnipotentScheme::pi0Of(Key k, int level) const {
  switch (spec_.kind) {
    case SchemeKind::ExampleA4: return pi0_->index(unpack(k, level)[at_[0][1]]);
    case SchemeKind::Constant: return pi0_->index(k);
    default: return 0;
  }
}

Key UnipotentScheme::section(int pi0Index, int level) const {
  Key g = pi0_->key(pi0Index);
  switch (spec_.kind) {
    case SchemeKind::ExampleA4: {
      std::vector<Elt> c(pos_.size(), 0);
      c[at_[0][1]] = static_cast<Elt>(g);
      return pack(c, level);
    }
    case SchemeKind::Constant: return g;
    default: return 0;
  }
}

long UnipotentScheme::exponent() const {
  long e = pointsOver(1).group->exponent();
  if (pointCount(2) <= kPointCap) e = std::max(e, pointsOver(2).group->exponent());
  return e;
}

std::vector<Key> UnipotentScheme::twistedFixedPoints(int pi0Rep, int level) const {
  Key t = section(pi0Rep, level), tinv = invKey(t, level);
  auto L = law(level);
  std::vector<Key> out;
  forEachPoint(level, [&](Key g) {
    if (L->mul(L->mul(t, frobenius(g, level)), tinv) == g) out.push_back(g);
  });
  return out;
}

const InnerForms& UnipotentScheme::h1() const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (forms_) return *forms_;
  }
  auto cls = twistedConjugacyClasses(*pi0_, pi0F_);
  auto out = std::make_unique<InnerForms>();
  int common = 1;
  for (size_t c = 0; c < cls.count(); ++c) {
    PureInnerForm f;
    f.pi0Rep = cls.reps[c];
    f.twistedCentralizer = static_cast<long>(pi0_->order()) / cls.sizes[c];
    long double target = static_cast<long double>(ipow(q_, dim_)) * f.twistedCentralizer;
    int M = 0;
    for (int m = 1; m <= 64 && M == 0; ++m)
      if (static_cast<long double>(twistedFixedPoints(f.pi0Rep, m).size()) == target) M = m;
    if (M == 0) throw std::runtime_error(name() + ": twisted fixed points never reach the Lang cardinality");
    f.stableLevel = M;
    f.label = "alpha=" + pi0_->show(f.pi0Rep);
    common = static_cast<int>(lcml(common, M));
    out->forms.push_back(std::move(f));
  }
  out->level = common;
  for (auto& f : out->forms) {
    f.level = common;
    f.twist = section(f.pi0Rep, common);
    auto keys = twistedFixedPoints(f.pi0Rep, common);
    if (keys.size() > kPointCap) throw CapExceeded(name() + ": inner form point group exceeds the cap");
    f.group = FiniteGroup::fromElements(law(common), std::move(keys));
  }
  std::vector<int> formOf(pi0_->order());
  for (size_t x = 0; x < pi0_->order(); ++x) formOf[x] = cls.classOf[x];
  std::lock_guard<std::mutex> lock(mu_);
  if (!forms_) {
    forms_ = std::move(out);
    formOf_ = std::move(formOf);
  }
  return *forms_;
}

int UnipotentScheme::formOf(int pi0Index) const {
  h1();
  return formOf_.at(pi0Index);
}

SchemePtr makeScheme(SchemeSpec spec) { return std::make_shared<const UnipotentScheme>(spec); }

}  // namespace csheaf
