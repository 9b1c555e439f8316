#include <mpfr.h>

#include <cmath>
#include <tuple>

#include <catch_amalgamated.hpp>

#include "laminar/error.hpp"
#include "laminar/field.hpp"
#include "support.hpp"

using namespace laminar;
using laminar::testing::Gen;

namespace {

// Sign of a + b sqrt2 + c sqrt3 + d sqrt6 from a 128-bit MPFR evaluation.
// Each term carries relative error below 2^-125, so a sum exceeding
// 2^-120 times the absolute term mass has a certain sign; 2 means "cannot tell".
int mpfr_sign(const FieldElem& x) {
  mpfr_t acc, term, root, mass;
  mpfr_inits2(128, acc, term, root, mass, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(acc, x.a().get_mpq_t(), MPFR_RNDN);
  mpfr_abs(mass, acc, MPFR_RNDN);
  const std::pair<const mpq_class*, int> parts[] = {{&x.b(), 2}, {&x.c(), 3}, {&x.d(), 6}};
  for (const auto& [coef, radicand] : parts) {
    mpfr_sqrt_ui(root, static_cast<unsigned long>(radicand), MPFR_RNDN);
    mpfr_mul_q(term, root, coef->get_mpq_t(), MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
    mpfr_abs(term, term, MPFR_RNDN);
    mpfr_add(mass, mass, term, MPFR_RNDN);
  }
  mpfr_mul_2si(mass, mass, -120, MPFR_RNDN);
  int result = 2;
  mpfr_abs(term, acc, MPFR_RNDN);
  if (mpfr_greater_p(term, mass)) result = mpfr_sgn(acc) > 0 ? 1 : -1;
  mpfr_clears(acc, term, root, mass, static_cast<mpfr_ptr>(nullptr));
  return result;
}

}  // namespace

TEST_CASE("field_sign on reference elements") {
  CHECK(field_sign(FieldElem(0, 0, 0, 0)) == 0);
  CHECK(field_sign(FieldElem(-1, 1, 0, 0)) == 1);
  CHECK(field_sign(FieldElem(-3, 0, 1, 0)) == -1);
  // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6, so this is exactly zero.
  const FieldElem s = FieldElem::sqrt2() + FieldElem::sqrt3();
  CHECK(field_sign(s * s - FieldElem(5, 0, 0, 2)) == 0);
  // Pell convergents p/q with p^2 - n q^2 = 1 sit just above sqrt(n); far
  // enough out the difference is invisible to a double evaluation.
  for (const auto& [n, p0, q0] : {std::tuple{2, 3, 2}, std::tuple{3, 2, 1}, std::tuple{6, 5, 2}}) {
    mpz_class p = p0, q = q0;
    for (int i = 0; i < 25; ++i) {
      const mpz_class np = p0 * p + n * q0 * q;
      const mpz_class nq = q0 * p + p0 * q;
      p = np;
      q = nq;
    }
    const FieldElem root = n == 2 ? FieldElem::sqrt2() : n == 3 ? FieldElem::sqrt3() : FieldElem::sqrt6();
    const FieldElem diff = root - FieldElem(mpq_class(p, q));
    CHECK(field_sign(diff) == -1);
    CHECK(field_sign(-diff) == 1);
  }
}

TEST_CASE("field_sign agrees with a 128-bit evaluation") {
  Gen gen(11);
  int decided = 0;
  for (int i = 0; i < 10000; ++i) {
    const FieldElem x = gen.field();
    const int oracle = mpfr_sign(x);
    if (oracle == 2) continue;
    ++decided;
    REQUIRE(field_sign(x) == oracle);
  }
  CHECK(decided > 9900);
}

TEST_CASE("field_sign on constructed near-zero elements") {
  // x = u*v - w with v nearly u^-1 w: the exact path has to decide these.
  Gen gen(12);
  for (int i = 0; i < 500; ++i) {
    const FieldElem u = gen.field(9, 5);
    if (u.is_zero()) continue;
    const FieldElem w = gen.field(9, 5);
    const FieldElem v = w / u;
    const FieldElem tiny(mpq_class(gen.integer(-3, 3), mpz_class("1000000000000000000000")), 0, 0, 0);
    const FieldElem x = u * v - w + tiny;
    CHECK(field_sign(x) == sgn(tiny.a()));
  }
}

TEST_CASE("field arithmetic round trips") {
  Gen gen(13);
  for (int i = 0; i < 2000; ++i) {
    const FieldElem x = gen.field();
    const FieldElem y = gen.field();
    if (!y.is_zero()) REQUIRE((x * y) / y == x);
    if (!x.is_zero()) REQUIRE(field_sign(x) * field_sign(-x) == -1);
    REQUIRE((x + y) - y == x);
    REQUIRE(x * (y + FieldElem(1)) == x * y + x);
  }
}

TEST_CASE("division by zero throws") {
  CHECK_THROWS_AS(FieldElem(1) / FieldElem(0), Error);
  CHECK_THROWS_AS(FieldElem().inverse(), Error);
}

TEST_CASE("floor and frac") {
  CHECK(floor(FieldElem::sqrt2()) == 1);
  CHECK(floor(-FieldElem::sqrt2()) == -2);
  CHECK(floor(FieldElem::sqrt6() * 10) == 24);
  CHECK(floor(FieldElem(mpq_class(-7, 2))) == -4);
  CHECK(frac(FieldElem(3)) == FieldElem(0));
  CHECK(frac(FieldElem::sqrt3()) == FieldElem::sqrt3() - FieldElem(1));
  Gen gen(14);
  for (int i = 0; i < 500; ++i) {
    const FieldElem x = gen.field();
    const FieldElem f = frac(x);
    REQUIRE(field_sign(f) >= 0);
    REQUIRE(f < FieldElem(1));
  }
}

TEST_CASE("field_sqrt") {
  Gen gen(15);
  for (int i = 0; i < 300; ++i) {
    const FieldElem x = abs(gen.field(6, 4));
    const auto r = field_sqrt(x * x);
    REQUIRE(r.has_value());
    REQUIRE(*r == x);
  }
  CHECK(field_sqrt(FieldElem(2)) == FieldElem::sqrt2());
  CHECK(field_sqrt(FieldElem(6)) == FieldElem::sqrt6());
  CHECK(field_sqrt(FieldElem(5, 0, 0, 2)) == FieldElem::sqrt2() + FieldElem::sqrt3());
  CHECK_FALSE(field_sqrt(FieldElem(5)).has_value());
  CHECK_FALSE(field_sqrt(FieldElem(-4)).has_value());
  CHECK_FALSE(field_sqrt(FieldElem::sqrt2()).has_value());
}

TEST_CASE("text encoding") {
  const FieldElem x(mpq_class(1, 2), -3, 0, mpq_class(4, 6));
  CHECK(x.to_string() == "1/2,-3/1,0/1,2/3");
  CHECK(FieldElem::parse(x.to_string()) == x);
  CHECK(FieldElem::parse("3,0,0,-1") == FieldElem(3, 0, 0, -1));
  CHECK(FieldElem::parse("2/4,0,0,0") == FieldElem::rational(1, 2));
  CHECK_THROWS_AS(FieldElem::parse("1,2,3"), Error);
  CHECK_THROWS_AS(FieldElem::parse("1,2,3,x"), Error);
  CHECK_THROWS_AS(FieldElem::parse("1,2,3,1/0"), Error);
  Gen gen(16);
  for (int i = 0; i < 500; ++i) {
    const FieldElem y = gen.field();
    REQUIRE(FieldElem::parse(y.to_string()) == y);
  }
}

TEST_CASE("hash respects equality") {
  const FieldElem x = FieldElem::rational(2, 4) + FieldElem::sqrt3();
  const FieldElem y = FieldElem(mpq_class(1, 2), 0, 1, 0);
  CHECK(x == y);
  CHECK(x.hash() == y.hash());
}
