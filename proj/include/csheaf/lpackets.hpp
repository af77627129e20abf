#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csheaf/classfun.hpp"
#include "csheaf/unipotent.hpp"

namespace csheaf {

class PacketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A coordinate subgroup H with psi_n = zeta_p^{Tr(l(h))} for a linear form l,
// defined over the base form `baseForm`, and a claimed normalizer G' given by a
// coordinate pattern. Coefficients live in F_{q^coeffDegree}.
struct AdmissiblePairData {
  SchemePtr scheme;
  int baseForm = 0;  // pi0 element twisting the Frobenius
  std::vector<int> h;
  int coeffDegree = 1;
  std::vector<FiniteField::Elt> coefficients;  // one per coordinate of h
  std::vector<int> normalizer;
  int nmax = 3;
  std::string label;
};

// Throws std::invalid_argument when the data is inconsistent.
void validatePair(const AdmissiblePairData& pair);

std::string pairLabel(const AdmissiblePairData& pair);

// Complete lists for UL_2, UL_3, G_a^k, exampleA4 and constant groups.
std::vector<AdmissiblePairData> standardPairs(const SchemePtr& g, int nmax = 3);

struct StabilizerLevel {
  int level = 0;
  bool skipped = false;
  bool homomorphism = false;
  long stabilizerOrder = 0;
  long normalizerOrder = 0;
  bool matches = false;    // stabilizer of psi_n equals G'(F_{q^n})
  bool separates = false;  // psi and psi^g differ on H and H^g for every g outside
};

// Point-level evidence only.
struct StabilizerReport {
  std::vector<StabilizerLevel> levels;
  bool passed = false;
};

StabilizerReport stabilizerCheck(const AdmissiblePairData& pair);

struct HeisenbergPiece {
  int pi0 = 0;  // x in pi0(G'); the form of G' twisted by x * baseForm
  int form = 0;  // index in h1() of the image form of G
  GroupPtr group;  // G'^beta(F_q) inside the points of that form
  ClassFunction f;  // q^{-dim H} psi on H^beta(F_q), zero elsewhere
};

std::vector<HeisenbergPiece> heisenbergIdempotents(const AdmissiblePairData& pair);
GroupoidFunction inducedIdempotent(const AdmissiblePairData& pair, const FormSystemPtr& forms);

struct PacketMember {
  int form = 0;
  int irrep = 0;
  long degree = 0;
};

struct LPacket {
  int pair = 0;
  std::string label;
  GroupoidFunction t;
  std::vector<PacketMember> members;
  std::vector<Cyclo> valueAtOne;  // t at the identity of each form
  bool idempotent = false;
  bool positive = false;
  std::optional<int> ne;          // t(1) = q^{-n_e}; connected G only
  std::optional<Rational> de;     // (dim G - n_e) / 2
};

struct PacketPartition {
  FormSystemPtr forms;
  std::vector<LPacket> packets;
  std::vector<PacketMember> leftovers;
  std::vector<bool> sumIsDelta;  // per form
  bool complete = false;         // no leftovers and sums equal delta_1
};

// Throws PacketError on a scalar outside {0, 1} or on overlapping packets.
PacketPartition packetPartition(const SchemePtr& g, const std::vector<AdmissiblePairData>& pairs, int jobs = 1);

struct SumSquaresReport {
  bool applicable = false;
  Rational lhs;  // sum of chi(1)^2
  Rational rhs;  // q^{2 d_e}
  bool holds = false;
};

SumSquaresReport verifySumSquares(const UnipotentScheme& g, const LPacket& packet);

struct EasyItem {
  int packet = 0;
  bool singleton = false;
  bool integralDe = false;
  bool degreeMatches = false;     // chi(1) = q^{d_e}
  bool characterMatches = false;  // chi = q^{dim G - d_e} t
};

struct EasyReport {
  bool applicable = false;
  std::vector<EasyItem> items;
  bool allHitOnce = false;
  bool passed = false;
};

EasyReport verifyEasy(const UnipotentScheme& g, const PacketPartition& part);

struct ValueRingItem {
  int packet = 0;
  std::optional<bool> rationalScaling;  // q^{n_e} is a rational square
  bool scaledInRing = false;     // (-lambda)^{n_e} t in Z[mu_{p^{2r}}, 1/p]
  std::optional<bool> unitNorm;  // for singleton packets of connected G
};

struct ValueRingReport {
  long exponent = 1;  // p^r
  Cyclo lambda;       // lambda * conj(lambda) = q
  bool lambdaNorm = false;
  bool lambdaInRing = false;
  bool charactersIntegral = false;  // all irreducible values in Z[mu_{p^r}]
  bool idempotentsInRing = false;   // minimal idempotents in Z[mu_{p^r}, 1/p]
  bool halfPowerRational = false;   // q^{-1} has a rational square root
  std::vector<ValueRingItem> items;
  bool passed = false;
};

ValueRingReport verifyValueRings(const UnipotentScheme& g, const PacketPartition& part);

// r = s^2 for some rational s
bool isRationalSquare(const Rational& r);

}  // namespace csheaf
