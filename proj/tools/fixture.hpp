#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csheaf/frobchar.hpp"
#include "csheaf/groupoid.hpp"
#include "csheaf/lpackets.hpp"

namespace csheaf::app {

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `key = value` lines; `#` starts a comment; `pair` may repeat.
struct Fixture {
  std::string name;
  std::optional<std::string> group;
  std::optional<std::string> automorphism;
  std::optional<std::string> scheme;
  std::optional<std::string> groupoid;
  std::optional<std::string> pairFamily;
  std::vector<std::string> pairs;
  int level = 1;
  int nmax = 3;
  bool complete = true;
};

Fixture parseFixture(const std::string& text);
Fixture loadFixture(const std::string& path);

// UL <n> <p> [s] | Ga <k> <p> [s] | exampleA4 <p> [s] | constant <p> <k>
SchemePtr buildScheme(const std::string& spec);

// cyclic n | elementary p k | dihedral n | symmetric n | heisenberg p |
// perm n: (1 2)(3 4), (1 2 3) | points (G(F_{q^level}) of the fixture scheme)
GroupPtr buildGroup(const Fixture& fx);

// identity | inverse | swap | power k | torus d1 d2 d3 | field-frobenius
std::vector<int> buildAutomorphism(const Fixture& fx, const GroupPtr& g);

// base:<pi0> H:<coords> coeff:<coord>=<value>,... degree:<d> normalizer:<coords>|all
AdmissiblePairData parsePair(const std::string& line, const SchemePtr& g, int nmax);
std::vector<AdmissiblePairData> buildPairs(const Fixture& fx, const SchemePtr& g, int nmax);

// "<group spec> * <objects>; ..."
FiniteGroupoid buildGroupoid(const std::string& spec);

}  // namespace csheaf::app
