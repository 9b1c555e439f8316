#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "laminar/field.hpp"

namespace laminar {

// Exact coordinate systems on the circle at infinity.
//
//   ExtReal   : x in R u {inf} = boundary of the upper half plane.
//   DiskAngle : theta in [0, 1), the point exp(2 pi i theta) of the unit circle.
//   SignedExp : s * exp(a t) with s = +-1 and t in the field, plus the two
//               limit points 0 and inf (the scale a is fixed per context).
//
// The Cayley map z -> i(1+z)/(1-z) identifies the unit circle with R u {inf};
// under it DiskAngle theta corresponds to x = -cot(pi theta), so increasing
// theta, increasing x and increasing s*exp(at) all run counterclockwise.
enum class Chart { ExtReal, DiskAngle, SignedExp };

const char* chart_name(Chart c) noexcept;
Chart parse_chart(std::string_view name);

class BoundaryPoint {
 public:
  enum class Kind : unsigned char { Finite, Infinity, Zero };

  static BoundaryPoint real(FieldElem x);
  static BoundaryPoint real(long x) { return real(FieldElem(x)); }
  static BoundaryPoint infinity();
  static BoundaryPoint angle(const FieldElem& theta);  // reduced mod 1
  static BoundaryPoint exp(int sign, FieldElem t);
  static BoundaryPoint exp_zero();
  static BoundaryPoint exp_infinity();

  Chart chart() const { return chart_; }
  Kind kind() const { return kind_; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  // Real value (ExtReal), angle (DiskAngle) or exponent (SignedExp).
  const FieldElem& value() const { return value_; }
  // +1/-1 ray of a SignedExp point; 0 elsewhere.
  int sign() const { return sign_; }

  friend bool operator==(const BoundaryPoint& x, const BoundaryPoint& y) {
    return x.chart_ == y.chart_ && x.kind_ == y.kind_ && x.sign_ == y.sign_ && x.value_ == y.value_;
  }
  friend bool operator!=(const BoundaryPoint& x, const BoundaryPoint& y) { return !(x == y); }

  // Canonical text encoding: "r:<field>" | "r:inf" | "θ:<field>" |
  // "e:+,<field>" | "e:-,<field>" | "e:0" | "e:inf".
  std::string encode() const;
  static BoundaryPoint decode(std::string_view text);

  // Position on the unit circle in turns, [0, 1). Floating point; for
  // rendering and sampling. `scale` is the SignedExp scale a.
  double to_turns(double scale = 1.0) const;

  std::size_t hash() const;

 private:
  Chart chart_ = Chart::ExtReal;
  Kind kind_ = Kind::Finite;
  int sign_ = 0;
  FieldElem value_;
};

struct BoundaryPointHash {
  std::size_t operator()(const BoundaryPoint& p) const { return p.hash(); }
};

// Total order of a chart obtained by cutting the circle at its base point
// (r:inf, theta = 0, e:inf). It runs counterclockwise. Both points must share
// a chart.
int linear_compare(const BoundaryPoint& x, const BoundaryPoint& y);

struct LinearLess {
  bool operator()(const BoundaryPoint& x, const BoundaryPoint& y) const {
    return linear_compare(x, y) < 0;
  }
};

enum class Orientation : int { Negative = -1, Degenerate = 0, Positive = 1 };

inline int to_int(Orientation o) { return static_cast<int>(o); }

// The circular order phi(x, y, z): +1 when (x, y, z) runs counterclockwise,
// -1 when clockwise, 0 when two of the points coincide. Points in different
// charts are converted to the chart of x when an exact conversion exists.
Orientation circular_order(const BoundaryPoint& x, const BoundaryPoint& y, const BoundaryPoint& z);

// Exact chart change. Throws InexactConversion when the image is not
// representable in the target chart over Q(sqrt2, sqrt3).
BoundaryPoint chart_convert(const BoundaryPoint& x, Chart target);

// Some point strictly inside the open counterclockwise arc (from, to). The
// result is deterministic and lies in the same chart.
BoundaryPoint point_between(const BoundaryPoint& from, const BoundaryPoint& to);

}  // namespace laminar
