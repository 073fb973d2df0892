#include "doctest.h"

#include <random>

#include "gact/cyclotomic.hpp"

using namespace gact;

TEST_CASE("roots of unity: defining relations") {
  auto f = CycField::get(4);
  CHECK(Cyc::root_of_unity(f, 0, 1) == Cyc::one(f));
  Cyc i = Cyc::root_of_unity(f, 1, 4);
  CHECK(i * i == -Cyc::one(f));
  CHECK(i.conj() == -i);

  auto f3 = CycField::get(3);
  Cyc w = Cyc::root_of_unity(f3, 1, 3);
  CHECK(w * w * w == Cyc::one(f3));
  CHECK(w != Cyc::one(f3));

  CHECK_THROWS_AS(Cyc::root_of_unity(f3, 1, 4), Error);
}

TEST_CASE("root_of_unity(k,n)^n = 1 for all k") {
  for (long n : {1L, 2L, 3L, 4L, 6L, 8L, 12L}) {
    auto f = CycField::get(n);
    for (long k = 0; k < n; ++k) {
      Cyc z = Cyc::root_of_unity(f, k, n);
      Cyc acc = Cyc::one(f);
      for (long j = 0; j < n; ++j) acc *= z;
      CHECK(acc == Cyc::one(f));
    }
  }
}

TEST_CASE("basic arithmetic identities") {
  auto f = CycField::get(4);
  Cyc one = Cyc::one(f);
  CHECK((one + (-one)).is_zero());
  Cyc i = Cyc::root_of_unity(f, 1, 4);
  // invert(1+i) = (1-i)/2, checked by multiplying back
  Cyc z = one + i;
  Cyc inv = z.inverse();
  CHECK(z * inv == one);
  CHECK(inv == Rat(1, 2) * (one - i));
}

TEST_CASE("division by zero rejected") {
  auto f = CycField::get(4);
  CHECK_THROWS_AS(Cyc::zero(f).inverse(), Error);
}

namespace {

Cyc random_scalar(const FieldPtr& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<Rat> c(f->degree());
  for (auto& x : c) {
    x = Rat(num(rng), den(rng));
    x.canonicalize();
  }
  return Cyc(f, std::move(c));
}

}  // namespace

TEST_CASE("field axioms at all supported orders, randomized") {
  std::mt19937 rng(7);
  for (long n : {1L, 2L, 3L, 4L, 6L, 8L, 12L}) {
    auto f = CycField::get(n);
    for (int trial = 0; trial < 40; ++trial) {
      Cyc a = random_scalar(f, rng);
      Cyc b = random_scalar(f, rng);
      Cyc c = random_scalar(f, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b).conj() == a.conj() * b.conj());
      CHECK((a + b).conj() == a.conj() + b.conj());
      CHECK(a.conj().conj() == a);
      if (!a.is_zero()) CHECK(a * a.inverse() == Cyc::one(f));
      // |a|^2 is real: fixed by conjugation
      Cyc m = modulus_squared(a);
      CHECK(m.conj() == m);
    }
  }
}

TEST_CASE("string round-trip is exact") {
  std::mt19937 rng(11);
  for (long n : {1L, 4L, 12L}) {
    auto f = CycField::get(n);
    for (int trial = 0; trial < 25; ++trial) {
      Cyc a = random_scalar(f, rng);
      CHECK(Cyc::parse(f, a.to_string()) == a);
    }
    CHECK(Cyc::parse(f, Cyc::zero(f).to_string()) == Cyc::zero(f));
  }
}

TEST_CASE("numeric embedding matches known values") {
  auto f = CycField::get(8);
  Cyc z = Cyc::root_of_unity(f, 1, 8);
  auto c = z.to_complex();
  CHECK(std::abs(c.real() - std::sqrt(0.5)) < 1e-12);
  CHECK(std::abs(c.imag() - std::sqrt(0.5)) < 1e-12);
  CHECK(z.is_root_of_unity());
  CHECK_FALSE((Cyc::one(f) + Cyc::one(f)).is_root_of_unity());
}

TEST_CASE("rational square root") {
  Rat out;
  CHECK(rational_sqrt(Rat(9, 4), out));
  CHECK(out == Rat(3, 2));
  CHECK_FALSE(rational_sqrt(Rat(2), out));
  CHECK_FALSE(rational_sqrt(Rat(-1), out));
  CHECK(rational_sqrt(Rat(0), out));
  CHECK(out == 0);
}
