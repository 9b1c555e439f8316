#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace laminar {

// Element a + b*sqrt2 + c*sqrt3 + d*sqrt6 of the biquadratic field Q(sqrt2, sqrt3).
//
// Every boundary point the library manipulates exactly has coordinates in this
// field. Equality is coefficient-wise (1, sqrt2, sqrt3, sqrt6 is a Q-basis), and
// the sign of an element is decided exactly, see field_sign().
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  FieldElem(const mpq_class& v) : a_(v) { a_.canonicalize(); }  // NOLINT
  FieldElem(mpq_class a, mpq_class b, mpq_class c, mpq_class d);

  static FieldElem rational(long num, long den);
  static FieldElem sqrt2() { return {0, 1, 0, 0}; }
  static FieldElem sqrt3() { return {0, 0, 1, 0}; }
  static FieldElem sqrt6() { return {0, 0, 0, 1}; }

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  const mpq_class& c() const { return c_; }
  const mpq_class& d() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && is_rational(); }
  bool is_rational() const { return sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }

  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);

  friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
  friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }
  friend FieldElem operator*(FieldElem x, const FieldElem& y) { return x *= y; }
  friend FieldElem operator/(FieldElem x, const FieldElem& y) { return x /= y; }
  FieldElem operator-() const;

  friend bool operator==(const FieldElem& x, const FieldElem& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }
  friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }

  // Multiplicative inverse via the three nontrivial Galois conjugates.
  FieldElem inverse() const;

  // Nearest double; used for rendering and sampling only.
  double to_double() const;

  // "<a>,<b>,<c>,<d>" with each coefficient "<num>/<den>" in lowest terms.
  std::string to_string() const;
  // Accepts the canonical form and also bare integers ("3") per coefficient.
  static FieldElem parse(std::string_view text);

  std::size_t hash() const;

 private:
  mpq_class a_, b_, c_, d_;
};

// Exact sign of the real embedding (sqrt2 ~ 1.414.., sqrt3 ~ 1.732..).
int field_sign(const FieldElem& x);

inline int compare(const FieldElem& x, const FieldElem& y) { return field_sign(x - y); }
inline bool operator<(const FieldElem& x, const FieldElem& y) { return compare(x, y) < 0; }
inline bool operator>(const FieldElem& x, const FieldElem& y) { return compare(x, y) > 0; }
inline bool operator<=(const FieldElem& x, const FieldElem& y) { return compare(x, y) <= 0; }
inline bool operator>=(const FieldElem& x, const FieldElem& y) { return compare(x, y) >= 0; }

FieldElem abs(const FieldElem& x);

// Largest integer n with n <= x.
mpz_class floor(const FieldElem& x);

// x - floor(x), the representative of x modulo 1 in [0, 1).
FieldElem frac(const FieldElem& x);

// Non-negative square root when it lies in the field, otherwise nullopt.
std::optional<FieldElem> field_sqrt(const FieldElem& x);

// Canonical "<num>/<den>" rendering of a rational.
std::string rational_to_string(const mpq_class& q);
mpq_class parse_rational(std::string_view text);

struct FieldElemHash {
  std::size_t operator()(const FieldElem& x) const { return x.hash(); }
};

}  // namespace laminar
