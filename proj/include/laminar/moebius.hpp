#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "laminar/boundary.hpp"
#include "laminar/field.hpp"

namespace laminar {

// x -> (p x + q) / (r x + s) on the extended real line, ps - qr > 0.
// Stored in projective canonical form: the first nonzero entry in row-major
// order is 1, so two maps are equal iff they act identically.
class MobiusMap {
 public:
  MobiusMap() : MobiusMap(1, 0, 0, 1) {}
  MobiusMap(FieldElem p, FieldElem q, FieldElem r, FieldElem s);

  static MobiusMap translation(const FieldElem& t) { return {1, t, 0, 1}; }
  static MobiusMap scaling(const FieldElem& k) { return {k, 0, 0, 1}; }

  const FieldElem& p() const { return p_; }
  const FieldElem& q() const { return q_; }
  const FieldElem& r() const { return r_; }
  const FieldElem& s() const { return s_; }

  FieldElem det() const { return p_ * s_ - q_ * r_; }
  FieldElem trace() const { return p_ + s_; }
  bool is_identity() const;

  BoundaryPoint operator()(const BoundaryPoint& x) const;

  // this o other
  MobiusMap operator*(const MobiusMap& other) const;
  MobiusMap inverse() const;

  friend bool operator==(const MobiusMap& x, const MobiusMap& y) {
    return x.p_ == y.p_ && x.q_ == y.q_ && x.r_ == y.r_ && x.s_ == y.s_;
  }
  std::size_t hash() const;

 private:
  FieldElem p_, q_, r_, s_;
};

// theta -> theta + delta (mod 1) on DiskAngle points.
struct AngleShift {
  FieldElem delta;  // in [0, 1)

  explicit AngleShift(const FieldElem& d = FieldElem()) : delta(frac(d)) {}
  friend bool operator==(const AngleShift& x, const AngleShift& y) { return x.delta == y.delta; }
};

// (s, t) -> (eps s, eps t + tau) on SignedExp points, that is z -> e^tau z
// for eps = +1 and z -> -e^tau / z for eps = -1. The limit points 0 and inf
// are fixed by the first kind and swapped by the second.
struct ExpAffine {
  int eps = 1;
  FieldElem tau;

  ExpAffine() = default;
  ExpAffine(int e, FieldElem t);
  friend bool operator==(const ExpAffine& x, const ExpAffine& y) { return x.eps == y.eps && x.tau == y.tau; }
};

using ChartAction = std::variant<MobiusMap, AngleShift, ExpAffine>;

Chart action_chart(const ChartAction& g);
bool is_identity(const ChartAction& g);
ChartAction identity_like(const ChartAction& g);

// Exact image. Throws ChartMismatch when x is not in the chart g acts on.
BoundaryPoint act(const ChartAction& g, const BoundaryPoint& x);

// g o h. Throws ChartMismatch for actions on different charts.
ChartAction compose(const ChartAction& g, const ChartAction& h);
ChartAction inverse(const ChartAction& g);

std::string action_key(const ChartAction& g);
std::size_t action_hash(const ChartAction& g);

struct ChartActionHash {
  std::size_t operator()(const ChartAction& g) const { return action_hash(g); }
};

enum class ElementType { Identity, Elliptic, Parabolic, Hyperbolic };

const char* to_string(ElementType t) noexcept;

ElementType classify(const MobiusMap& g);
ElementType classify(const ChartAction& g);

// A real root of A x^2 + B x + C outside Q(sqrt2, sqrt3), kept as the monic
// quadratic x^2 + b x + c together with the branch (+1 larger, -1 smaller).
struct SymbolicRoot {
  FieldElem b, c;
  int branch = 1;

  static SymbolicRoot of(const FieldElem& A, const FieldElem& B, const FieldElem& C, int branch);
  FieldElem discriminant() const { return b * b - FieldElem(4) * c; }
  double approx() const;
  // Exact sign of (root - y).
  int compare(const FieldElem& y) const;
  friend bool operator==(const SymbolicRoot& x, const SymbolicRoot& y) {
    return x.branch == y.branch && x.b == y.b && x.c == y.c;
  }
};

using FixedPoint = std::variant<BoundaryPoint, SymbolicRoot>;

std::string to_string(const FixedPoint& f);
bool same_point(const FixedPoint& x, const FixedPoint& y);

// Fixed points on the circle: empty for Identity and Elliptic, one for
// Parabolic, two for Hyperbolic (ordered by the cut order of the chart).
std::vector<FixedPoint> fixed_points(const MobiusMap& g);
std::vector<FixedPoint> fixed_points(const ChartAction& g);

// All group elements expressible as words of length <= radius in the
// generators and their inverses, distinct, ordered by word length and then
// by first discovery. The identity comes first; an empty generating set gives
// the identity Mobius map.
std::vector<ChartAction> ball_enumerate(const std::vector<ChartAction>& generators, int radius);

}  // namespace laminar
