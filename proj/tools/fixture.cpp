#include "fixture.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace csheaf::app {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

long toInt(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FixtureError("expected an integer for " + what + ", got '" + s + "'");
  }
}

int toSmall(const std::string& s, const std::string& what, long lo = 1, long hi = 1 << 20) {
  long v = toInt(s, what);
  if (v < lo || v > hi) throw FixtureError(what + " out of range: " + s);
  return static_cast<int>(v);
}

GroupPtr namedGroup(const std::vector<std::string>& w) {
  if (w.empty()) throw FixtureError("empty group spec");
  const auto& kind = w[0];
  auto need = [&](size_t n) {
    if (w.size() != n + 1) throw FixtureError("group '" + kind + "' takes " + std::to_string(n) + " arguments");
  };
  if (kind == "cyclic") {
    need(1);
    return cyclicGroup(toSmall(w[1], "cyclic order"));
  }
  if (kind == "elementary") {
    need(2);
    int p = toSmall(w[1], "prime", 2, 1000);
    if (!isPrime(p)) throw FixtureError("elementary: p must be prime");
    return elementaryAbelian(p, toSmall(w[2], "rank", 1, 20));
  }
  if (kind == "dihedral") {
    need(1);
    return dihedralGroup(toSmall(w[1], "dihedral n", 1, 5000));
  }
  if (kind == "symmetric") {
    need(1);
    return symmetricGroup(toSmall(w[1], "symmetric n", 1, 16));
  }
  if (kind == "heisenberg") {
    need(1);
    int p = toSmall(w[1], "prime", 2, 1000);
    if (!isPrime(p)) throw FixtureError("heisenberg: p must be prime");
    return heisenbergGroup(p);
  }
  throw FixtureError("unknown group '" + kind + "'");
}

}  // namespace

Fixture parseFixture(const std::string& text) {
  Fixture fx;
  std::istringstream is(text);
  std::string line;
  int lineNo = 0;
  std::map<std::string, int> seen;
  while (std::getline(is, line)) {
    ++lineNo;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw FixtureError("line " + std::to_string(lineNo) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (value.empty()) throw FixtureError("line " + std::to_string(lineNo) + ": empty value for '" + key + "'");
    if (key != "pair" && seen[key]++) throw FixtureError("line " + std::to_string(lineNo) + ": repeated key '" + key + "'");
    if (key == "name") fx.name = value;
    else if (key == "group") fx.group = value;
    else if (key == "automorphism") fx.automorphism = value;
    else if (key == "scheme") fx.scheme = value;
    else if (key == "groupoid") fx.groupoid = value;
    else if (key == "pair_family") {
      if (value != "standard") throw FixtureError("unknown pair_family '" + value + "'");
      fx.pairFamily = value;
    } else if (key == "pair") fx.pairs.push_back(value);
    else if (key == "level") fx.level = toSmall(value, "level", 1, 64);
    else if (key == "nmax") fx.nmax = toSmall(value, "nmax", 1, 64);
    else if (key == "complete") {
      if (value != "true" && value != "false") throw FixtureError("complete must be true or false");
      fx.complete = value == "true";
    } else
      throw FixtureError("line " + std::to_string(lineNo) + ": unknown key '" + key + "'");
  }
  return fx;
}

Fixture loadFixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot read fixture " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parseFixture(ss.str());
}

SchemePtr buildScheme(const std::string& spec) {
  auto w = words(spec);
  if (w.empty()) throw FixtureError("empty scheme spec");
  SchemeSpec s;
  auto prime = [&](const std::string& x) {
    int p = toSmall(x, "prime", 2, 1000);
    if (!isPrime(p)) throw FixtureError("p must be prime: " + x);
    return p;
  };
  auto opt = [&](size_t i) { return w.size() > i ? toSmall(w[i], "s", 1, 20) : 1; };
  if (w[0] == "UL" && (w.size() == 3 || w.size() == 4)) {
    s.kind = SchemeKind::Unitriangular;
    s.n = toSmall(w[1], "matrix size", 2, 8);
    s.p = prime(w[2]);
    s.s = opt(3);
  } else if (w[0] == "Ga" && (w.size() == 3 || w.size() == 4)) {
    s.kind = SchemeKind::Additive;
    s.k = toSmall(w[1], "power", 1, 16);
    s.p = prime(w[2]);
    s.s = opt(3);
  } else if (w[0] == "exampleA4" && (w.size() == 2 || w.size() == 3)) {
    s.kind = SchemeKind::ExampleA4;
    s.p = prime(w[1]);
    s.s = opt(2);
  } else if (w[0] == "constant" && w.size() == 3) {
    s.kind = SchemeKind::Constant;
    s.p = prime(w[1]);
    s.k = toSmall(w[2], "rank", 1, 16);
  } else {
    throw FixtureError("bad scheme spec '" + spec + "'");
  }
  return makeScheme(s);
}

GroupPtr buildGroup(const Fixture& fx) {
  if (!fx.group) throw FixtureError("fixture lacks 'group'");
  const auto& spec = *fx.group;
  if (spec.rfind("perm", 0) == 0) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw FixtureError("perm spec needs 'perm n: gens'");
    auto head = words(spec.substr(0, colon));
    if (head.size() != 2) throw FixtureError("perm spec needs a degree");
    int n = toSmall(head[1], "permutation degree", 1, 16);
    std::vector<Key> gens;
    try {
      for (const auto& g : split(spec.substr(colon + 1), ',')) gens.push_back(parseCycles(g, n));
    } catch (const std::invalid_argument& e) {
      throw FixtureError(std::string("perm spec: ") + e.what());
    }
    return FiniteGroup::closure(permutationLaw(n), gens);
  }
  if (trim(spec) == "points") {
    if (!fx.scheme) throw FixtureError("group = points needs a scheme");
    return buildScheme(*fx.scheme)->pointsOver(fx.level).group;
  }
  return namedGroup(words(spec));
}

std::vector<int> buildAutomorphism(const Fixture& fx, const GroupPtr& g) {
  std::string spec = fx.automorphism.value_or("identity");
  auto w = words(spec);
  std::vector<int> f(g->order());
  auto fromKeys = [&](const std::function<Key(Key)>& fn) {
    for (size_t i = 0; i < g->order(); ++i) {
      auto img = g->find(fn(g->key(static_cast<int>(i))));
      if (!img) throw FixtureError("automorphism '" + spec + "' leaves the group");
      f[i] = *img;
    }
  };
  auto gw = words(fx.group.value_or(""));
  if (w.empty() || w[0] == "identity") {
    std::iota(f.begin(), f.end(), 0);
  } else if (w[0] == "inverse") {
    for (size_t i = 0; i < g->order(); ++i) f[i] = g->inv(static_cast<int>(i));
  } else if (w[0] == "power" && w.size() == 2) {
    long k = toInt(w[1], "power");
    for (size_t i = 0; i < g->order(); ++i) f[i] = g->power(static_cast<int>(i), k);
  } else if (w[0] == "swap") {
    if (gw.size() != 3 || gw[0] != "elementary") throw FixtureError("swap needs group = elementary p k");
    Key p = toSmall(gw[1], "prime");
    int k = toSmall(gw[2], "rank");
    fromKeys([&](Key x) {
      std::vector<Key> d(k);
      for (int i = 0; i < k; ++i, x /= p) d[i] = x % p;
      Key out = 0;
      for (int i = 0; i < k; ++i) out = out * p + d[i];
      return out;
    });
  } else if (w[0] == "torus") {
    if (gw.size() != 2 || gw[0] != "heisenberg") throw FixtureError("torus needs group = heisenberg p");
    auto ds = split(spec.substr(5), ',');
    if (ds.size() == 1) ds = words(ds[0]);
    if (ds.size() != 3) throw FixtureError("torus takes three entries");
    long p = toSmall(gw[1], "prime");
    std::vector<long> d;
    for (const auto& x : ds) {
      long v = ((toInt(x, "torus entry") % p) + p) % p;
      if (v == 0) throw FixtureError("torus entries must be units mod p");
      d.push_back(v);
    }
    auto inv = [&](long a) {
      for (long b = 1; b < p; ++b)
        if (a * b % p == 1) return b;
      return 1L;
    };
    // conjugation by diag(d1, d2, d3) on [[1,a,c],[0,1,b],[0,0,1]]
    long ta = d[0] * inv(d[1]) % p, tb = d[1] * inv(d[2]) % p, tc = d[0] * inv(d[2]) % p;
    Key P = static_cast<Key>(p);
    fromKeys([&](Key x) {
      Key a = x % P, b = (x / P) % P, c = x / (P * P);
      return (a * ta) % P + P * ((b * tb) % P) + P * P * ((c * tc) % P);
    });
  } else if (w[0] == "field-frobenius") {
    if (!fx.group || trim(*fx.group) != "points" || !fx.scheme)
      throw FixtureError("field-frobenius needs group = points and a scheme");
    auto pg = buildScheme(*fx.scheme)->pointsOver(fx.level);
    if (pg.group->order() != g->order()) throw FixtureError("internal: point group mismatch");
    for (size_t i = 0; i < g->order(); ++i) f[i] = g->index(pg.group->key(pg.frobenius[i]));
  } else {
    throw FixtureError("unknown automorphism '" + spec + "'");
  }
  try {
    g->checkAutomorphism(f);
  } catch (const std::invalid_argument& e) {
    throw FixtureError("automorphism '" + spec + "': " + e.what());
  }
  return f;
}

AdmissiblePairData parsePair(const std::string& line, const SchemePtr& g, int nmax) {
  AdmissiblePairData pr;
  pr.scheme = g;
  pr.nmax = nmax;
  std::map<int, long> coeff;
  bool haveH = false, haveN = false;
  auto coords = [&](const std::string& v) {
    std::vector<int> out;
    if (v == "all") {
      out.resize(g->coordinateCount());
      std::iota(out.begin(), out.end(), 0);
      return out;
    }
    if (v == "1" || v == "none") return out;
    try {
      for (const auto& c : split(v, ',')) out.push_back(g->coordinateIndex(c));
    } catch (const std::invalid_argument& e) {
      throw FixtureError(e.what());
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  for (const auto& tok : words(line)) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw FixtureError("pair token without ':' in '" + line + "'");
    std::string k = tok.substr(0, colon), v = tok.substr(colon + 1);
    if (k == "base" || k == "form") {
      pr.baseForm = toSmall(v, "base form", 0, 1 << 20);
    } else if (k == "H") {
      pr.h = coords(v);
      haveH = true;
    } else if (k == "normalizer") {
      pr.normalizer = coords(v);
      haveN = true;
    } else if (k == "degree") {
      pr.coeffDegree = toSmall(v, "coefficient degree", 1, 16);
    } else if (k == "coeff") {
      for (const auto& item : split(v, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw FixtureError("coefficient '" + item + "' needs coord=value");
        int c;
        try {
          c = g->coordinateIndex(item.substr(0, eq));
        } catch (const std::invalid_argument& e) {
          throw FixtureError(e.what());
        }
        coeff[c] = toInt(item.substr(eq + 1), "coefficient");
      }
    } else {
      throw FixtureError("unknown pair field '" + k + "'");
    }
  }
  if (!haveH || !haveN) throw FixtureError("pair needs H: and normalizer: in '" + line + "'");
  for (int c : pr.h) {
    long v = coeff.count(c) ? coeff[c] : 0;
    if (v < 0) throw FixtureError("coefficients are field encodings and must be nonnegative");
    pr.coefficients.push_back(static_cast<FiniteField::Elt>(v));
    coeff.erase(c);
  }
  if (!coeff.empty()) throw FixtureError("coefficient on a coordinate outside H in '" + line + "'");
  try {
    validatePair(pr);
  } catch (const std::invalid_argument& e) {
    throw FixtureError("pair '" + line + "': " + e.what());
  }
  pr.label = pairLabel(pr);
  return pr;
}

std::vector<AdmissiblePairData> buildPairs(const Fixture& fx, const SchemePtr& g, int nmax) {
  std::vector<AdmissiblePairData> out;
  if (fx.pairFamily) {
    try {
      out = standardPairs(g, nmax);
    } catch (const std::invalid_argument& e) {
      throw FixtureError(e.what());
    }
  }
  for (const auto& line : fx.pairs) out.push_back(parsePair(line, g, nmax));
  if (out.empty()) throw FixtureError("fixture has no pairs (use pair_family = standard or pair = ...)");
  return out;
}

FiniteGroupoid buildGroupoid(const std::string& spec) {
  std::vector<GroupoidComponent> comps;
  for (const auto& part : split(spec, ';')) {
    auto star = part.find('*');
    std::string gs = trim(part.substr(0, star));
    long objects = star == std::string::npos ? 1 : toInt(trim(part.substr(star + 1)), "object count");
    if (objects < 1) throw FixtureError("object count must be positive");
    comps.push_back({namedGroup(words(gs)), objects, gs});
  }
  if (comps.empty()) throw FixtureError("empty groupoid spec");
  return FiniteGroupoid(std::move(comps));
}

}  // namespace csheaf::app
