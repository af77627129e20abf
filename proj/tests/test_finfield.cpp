#include <doctest.h>

#include "csheaf/finfield.hpp"

using namespace csheaf;

TEST_CASE("finfield: prime fields") {
  auto f = FiniteField::get(7, 1);
  CHECK(f->size() == 7);
  for (FiniteField::Elt a = 1; a < 7; ++a) {
    CHECK(f->mul(a, f->inv(a)) == 1);
    CHECK(f->add(a, f->neg(a)) == 0);
  }
  CHECK(f->mul(3, 5) == 1);
  CHECK(f->add(4, 5) == 2);
  CHECK_THROWS_AS(FiniteField::get(6, 1), FieldError);
  CHECK_THROWS_AS(f->inv(0), FieldError);
}

TEST_CASE("finfield: moduli and multiplicative structure") {
  CHECK(FiniteField::get(2, 2)->modulus() == std::vector<int>{1, 1, 1});
  CHECK(FiniteField::get(2, 3)->modulus() == std::vector<int>{1, 1, 0, 1});
  CHECK(FiniteField::get(3, 2)->modulus() == std::vector<int>{1, 0, 1});
  for (auto [p, d] : {std::pair{2, 4}, {3, 2}, {5, 2}, {3, 3}, {2, 8}}) {
    auto f = FiniteField::get(p, d);
    auto g = f->generator();
    // generator has full order
    FiniteField::Elt x = 1;
    std::uint32_t ord = 0;
    do {
      x = f->mul(x, g);
      ++ord;
    } while (x != 1);
    CHECK(ord == f->size() - 1);
    // distributivity on a sample
    for (FiniteField::Elt a = 0; a < f->size(); a += 7)
      for (FiniteField::Elt b = 1; b < f->size(); b += 11) {
        FiniteField::Elt c = (a * 3 + b) % f->size();
        CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
      }
  }
}

TEST_CASE("finfield: frobenius and trace") {
  auto f = FiniteField::get(3, 4);
  for (FiniteField::Elt x = 0; x < f->size(); ++x) {
    CHECK(f->frobeniusPower(x, 4) == x);
    CHECK(f->frobenius(x, 9) == f->frobeniusPower(x, 2));
    CHECK(f->inSubfield(f->trace(x, 2), 2));
    // transitivity: Tr_{81/3} = Tr_{9/3} o Tr_{81/9}
    CHECK(f->traceToPrime(x, 4) == f->traceToPrime(f->trace(x, 2), 2));
  }
  CHECK_THROWS_AS(f->frobenius(1, 27), FieldError);
  // subfield F_9 inside F_81 has exactly 9 elements
  int n = 0;
  for (FiniteField::Elt x = 0; x < f->size(); ++x) n += f->inSubfield(x, 2);
  CHECK(n == 9);
}

TEST_CASE("finfield: additive character sums vanish") {
  for (auto [p, d] : {std::pair{2, 1}, {2, 3}, {3, 2}, {5, 1}, {7, 2}}) {
    auto f = FiniteField::get(p, d);
    Cyclo s;
    for (FiniteField::Elt x = 0; x < f->size(); ++x) s += f->additiveCharacter(x);
    CHECK(s.isZero());
    // psi(x + y) = psi(x) psi(y)
    for (FiniteField::Elt x = 0; x < f->size(); x += 3)
      for (FiniteField::Elt y = 0; y < f->size(); y += 5)
        CHECK(f->additiveCharacter(f->add(x, y)) == f->additiveCharacter(x) * f->additiveCharacter(y));
  }
}

TEST_CASE("finfield: embeddings") {
  auto small = FiniteField::get(2, 2), big = FiniteField::get(2, 4);
  auto e = Embedding::get(small, big);
  for (FiniteField::Elt a = 0; a < 4; ++a) {
    CHECK(big->inSubfield(e->map(a), 2));
    CHECK(e->pullback(e->map(a)) == a);
    for (FiniteField::Elt b = 0; b < 4; ++b) {
      CHECK(e->map(small->mul(a, b)) == big->mul(e->map(a), e->map(b)));
      CHECK(e->map(small->add(a, b)) == big->add(e->map(a), e->map(b)));
    }
  }
  CHECK_THROWS_AS(Embedding::get(FiniteField::get(2, 3), big), FieldError);
  FqElement x{big, 7};
  auto t = traceToBase(x, small);
  CHECK(t.field == small);
  CHECK(e->map(t.value) == big->trace(7, 2));
}

TEST_CASE("finfield: size cap") {
  CHECK_THROWS_AS(FiniteField::get(2, 21), CapExceeded);
  CHECK_NOTHROW(FiniteField::get(2, 10));
}
