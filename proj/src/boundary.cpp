#include "laminar/boundary.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>

#include "laminar/error.hpp"

namespace laminar {

namespace {

constexpr int kAngleDenominator = 24;

// cot(pi k / 24) for k = 1..23, all of which lie in Q(sqrt2, sqrt3).
const std::array<FieldElem, kAngleDenominator>& cot_table() {
  static const std::array<FieldElem, kAngleDenominator> table = [] {
    std::array<FieldElem, kAngleDenominator> t;
    const FieldElem c1(2, 1, 1, 1);  // cot(pi/24) = 2 + sqrt2 + sqrt3 + sqrt6
    t[1] = c1;
    for (int k = 1; k + 1 < kAngleDenominator; ++k)
      t[k + 1] = (t[k] * c1 - FieldElem(1)) / (t[k] + c1);
    return t;
  }();
  return table;
}

std::optional<int> angle_index(const FieldElem& theta) {
  if (!theta.is_rational()) return std::nullopt;
  const mpq_class scaled = theta.a() * kAngleDenominator;
  if (scaled.get_den() != 1) return std::nullopt;
  return static_cast<int>(scaled.get_num().get_si());
}

BoundaryPoint angle_to_real(const BoundaryPoint& x) {
  const auto k = angle_index(x.value());
  if (!k) throw Error(ErrorCode::InexactConversion, x.encode() + " has no exact extended-real image");
  if (*k == 0) return BoundaryPoint::infinity();
  return BoundaryPoint::real(-cot_table()[*k]);
}

BoundaryPoint real_to_angle(const BoundaryPoint& x) {
  if (x.is_infinity()) return BoundaryPoint::angle(FieldElem(0));
  const auto& table = cot_table();
  for (int k = 1; k < kAngleDenominator; ++k) {
    if (table[k] == -x.value()) return BoundaryPoint::angle(FieldElem::rational(k, kAngleDenominator));
  }
  throw Error(ErrorCode::InexactConversion, x.encode() + " has no exact disk-angle image");
}

BoundaryPoint exp_to_real(const BoundaryPoint& x) {
  switch (x.kind()) {
    case BoundaryPoint::Kind::Infinity: return BoundaryPoint::infinity();
    case BoundaryPoint::Kind::Zero: return BoundaryPoint::real(0);
    case BoundaryPoint::Kind::Finite:
      if (x.value().is_zero()) return BoundaryPoint::real(x.sign());
      break;
  }
  throw Error(ErrorCode::InexactConversion, x.encode() + " has no exact extended-real image");
}

BoundaryPoint real_to_exp(const BoundaryPoint& x) {
  if (x.is_infinity()) return BoundaryPoint::exp_infinity();
  const FieldElem& v = x.value();
  if (v.is_zero()) return BoundaryPoint::exp_zero();
  if (v == FieldElem(1)) return BoundaryPoint::exp(1, FieldElem(0));
  if (v == FieldElem(-1)) return BoundaryPoint::exp(-1, FieldElem(0));
  throw Error(ErrorCode::InexactConversion, x.encode() + " has no exact signed-exponent image");
}

// Rank of the coarse position of a SignedExp point in the cut order.
int exp_block(const BoundaryPoint& x) {
  switch (x.kind()) {
    case BoundaryPoint::Kind::Infinity: return 0;
    case BoundaryPoint::Kind::Zero: return 2;
    case BoundaryPoint::Kind::Finite: return x.sign() < 0 ? 1 : 3;
  }
  return 0;
}

bool is_base(const BoundaryPoint& x) {
  if (x.chart() == Chart::DiskAngle) return x.value().is_zero();
  return x.is_infinity();
}

// A point linearly after x (the cut order has no maximum).
BoundaryPoint after(const BoundaryPoint& x) {
  switch (x.chart()) {
    case Chart::ExtReal:
      return x.is_infinity() ? BoundaryPoint::real(0) : BoundaryPoint::real(x.value() + 1);
    case Chart::DiskAngle:
      return BoundaryPoint::angle((x.value() + 1) / 2);
    case Chart::SignedExp:
      switch (x.kind()) {
        case BoundaryPoint::Kind::Infinity: return BoundaryPoint::exp(-1, FieldElem(0));
        case BoundaryPoint::Kind::Zero: return BoundaryPoint::exp(1, FieldElem(0));
        case BoundaryPoint::Kind::Finite:
          return BoundaryPoint::exp(x.sign(), x.value() + x.sign());
      }
  }
  return x;
}

// A point linearly strictly between the base point and x; x is not the base.
BoundaryPoint before(const BoundaryPoint& x) {
  switch (x.chart()) {
    case Chart::ExtReal: return BoundaryPoint::real(x.value() - 1);
    case Chart::DiskAngle: return BoundaryPoint::angle(x.value() / 2);
    case Chart::SignedExp:
      if (x.kind() == BoundaryPoint::Kind::Zero) return BoundaryPoint::exp(-1, FieldElem(0));
      return BoundaryPoint::exp(x.sign(), x.value() - x.sign());
  }
  return x;
}

// A point linearly strictly between x < y.
BoundaryPoint linear_mid(const BoundaryPoint& x, const BoundaryPoint& y) {
  if (is_base(x)) return before(y);
  switch (x.chart()) {
    case Chart::ExtReal: return BoundaryPoint::real((x.value() + y.value()) / 2);
    case Chart::DiskAngle: return BoundaryPoint::angle((x.value() + y.value()) / 2);
    case Chart::SignedExp: {
      const int bx = exp_block(x);
      const int by = exp_block(y);
      if (bx == by) return BoundaryPoint::exp(x.sign(), (x.value() + y.value()) / 2);
      if (bx == 1 && by == 2) return after(x);
      if (bx == 2) return before(y);
      return BoundaryPoint::exp_zero();
    }
  }
  return x;
}

}  // namespace

const char* chart_name(Chart c) noexcept {
  switch (c) {
    case Chart::ExtReal: return "ext_real";
    case Chart::DiskAngle: return "disk_angle";
    case Chart::SignedExp: return "signed_exp";
  }
  return "unknown";
}

Chart parse_chart(std::string_view name) {
  if (name == "ext_real") return Chart::ExtReal;
  if (name == "disk_angle") return Chart::DiskAngle;
  if (name == "signed_exp") return Chart::SignedExp;
  throw Error(ErrorCode::ParseError, "unknown chart '" + std::string(name) + "'");
}

BoundaryPoint BoundaryPoint::real(FieldElem x) {
  BoundaryPoint p;
  p.chart_ = Chart::ExtReal;
  p.value_ = std::move(x);
  return p;
}

BoundaryPoint BoundaryPoint::infinity() {
  BoundaryPoint p;
  p.chart_ = Chart::ExtReal;
  p.kind_ = Kind::Infinity;
  return p;
}

BoundaryPoint BoundaryPoint::angle(const FieldElem& theta) {
  BoundaryPoint p;
  p.chart_ = Chart::DiskAngle;
  p.value_ = frac(theta);
  return p;
}

BoundaryPoint BoundaryPoint::exp(int sign, FieldElem t) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::ParseError, "ray sign must be +1 or -1");
  BoundaryPoint p;
  p.chart_ = Chart::SignedExp;
  p.sign_ = sign;
  p.value_ = std::move(t);
  return p;
}

BoundaryPoint BoundaryPoint::exp_zero() {
  BoundaryPoint p;
  p.chart_ = Chart::SignedExp;
  p.kind_ = Kind::Zero;
  return p;
}

BoundaryPoint BoundaryPoint::exp_infinity() {
  BoundaryPoint p;
  p.chart_ = Chart::SignedExp;
  p.kind_ = Kind::Infinity;
  return p;
}

std::string BoundaryPoint::encode() const {
  switch (chart_) {
    case Chart::ExtReal:
      return is_infinity() ? "r:inf" : "r:" + value_.to_string();
    case Chart::DiskAngle:
      return "θ:" + value_.to_string();
    case Chart::SignedExp:
      if (kind_ == Kind::Infinity) return "e:inf";
      if (kind_ == Kind::Zero) return "e:0";
      return std::string("e:") + (sign_ > 0 ? "+," : "-,") + value_.to_string();
  }
  return {};
}

BoundaryPoint BoundaryPoint::decode(std::string_view text) {
  auto strip = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (text.substr(0, prefix.size()) == prefix) return text.substr(prefix.size());
    return std::nullopt;
  };
  if (auto rest = strip("r:")) {
    if (*rest == "inf") return infinity();
    return real(FieldElem::parse(*rest));
  }
  if (auto rest = strip("θ:")) return angle(FieldElem::parse(*rest));
  if (auto rest = strip("e:")) {
    if (*rest == "inf") return exp_infinity();
    if (*rest == "0") return exp_zero();
    if (rest->size() > 2 && (*rest)[1] == ',' && ((*rest)[0] == '+' || (*rest)[0] == '-'))
      return exp((*rest)[0] == '+' ? 1 : -1, FieldElem::parse(rest->substr(2)));
  }
  throw Error(ErrorCode::ParseError, "bad boundary point '" + std::string(text) + "'");
}

double BoundaryPoint::to_turns(double scale) const {
  double x = 0.0;
  switch (chart_) {
    case Chart::DiskAngle: return value_.to_double();
    case Chart::ExtReal:
      if (is_infinity()) return 0.0;
      x = value_.to_double();
      break;
    case Chart::SignedExp:
      if (kind_ == Kind::Infinity) return 0.0;
      if (kind_ == Kind::Zero) return 0.5;
      x = sign_ * std::exp(scale * value_.to_double());
      break;
  }
  const double t = 0.5 + std::atan(x) / std::numbers::pi;
  return t >= 1.0 ? t - 1.0 : t;
}

std::size_t BoundaryPoint::hash() const {
  std::size_t h = value_.hash();
  const std::size_t tag = static_cast<std::size_t>(chart_) * 16 + static_cast<std::size_t>(kind_) * 4 +
                          static_cast<std::size_t>(sign_ + 1);
  return h ^ (tag * 0x100000001b3ull + (h << 6) + (h >> 2));
}

int linear_compare(const BoundaryPoint& x, const BoundaryPoint& y) {
  if (x.chart() != y.chart()) throw Error(ErrorCode::ChartMismatch, x.encode() + " vs " + y.encode());
  switch (x.chart()) {
    case Chart::ExtReal:
      if (x.is_infinity() || y.is_infinity()) return int(y.is_infinity()) - int(x.is_infinity());
      return compare(x.value(), y.value());
    case Chart::DiskAngle:
      return compare(x.value(), y.value());
    case Chart::SignedExp: {
      const int bx = exp_block(x);
      const int by = exp_block(y);
      if (bx != by) return bx < by ? -1 : 1;
      if (bx == 1) return compare(y.value(), x.value());
      if (bx == 3) return compare(x.value(), y.value());
      return 0;
    }
  }
  return 0;
}

BoundaryPoint chart_convert(const BoundaryPoint& x, Chart target) {
  if (x.chart() == target) return x;
  switch (x.chart()) {
    case Chart::ExtReal:
      return target == Chart::DiskAngle ? real_to_angle(x) : real_to_exp(x);
    case Chart::DiskAngle: {
      const BoundaryPoint r = angle_to_real(x);
      return target == Chart::ExtReal ? r : real_to_exp(r);
    }
    case Chart::SignedExp: {
      const BoundaryPoint r = exp_to_real(x);
      return target == Chart::ExtReal ? r : real_to_angle(r);
    }
  }
  return x;
}

Orientation circular_order(const BoundaryPoint& x, const BoundaryPoint& y0, const BoundaryPoint& z0) {
  auto bring = [&](const BoundaryPoint& p) {
    if (p.chart() == x.chart()) return p;
    try {
      return chart_convert(p, x.chart());
    } catch (const Error& e) {
      throw Error(ErrorCode::IncomparableCharts, x.encode() + " vs " + p.encode());
    }
  };
  const BoundaryPoint y = bring(y0);
  const BoundaryPoint z = bring(z0);
  const int xy = linear_compare(x, y);
  const int yz = linear_compare(y, z);
  const int zx = linear_compare(z, x);
  if (xy == 0 || yz == 0 || zx == 0) return Orientation::Degenerate;
  // Exactly one of the three cyclic steps descends when the triple is a
  // rotation of a sorted one; two descend otherwise.
  const int descents = int(xy > 0) + int(yz > 0) + int(zx > 0);
  return descents == 1 ? Orientation::Positive : Orientation::Negative;
}

BoundaryPoint point_between(const BoundaryPoint& from, const BoundaryPoint& to) {
  const int c = linear_compare(from, to);
  if (c == 0) throw Error(ErrorCode::DegenerateChord, "empty arc at " + from.encode());
  if (c < 0) return linear_mid(from, to);
  // The arc wraps through the base point.
  if (!is_base(to)) {
    switch (from.chart()) {
      case Chart::ExtReal: return BoundaryPoint::infinity();
      case Chart::DiskAngle: return BoundaryPoint::angle(FieldElem(0));
      case Chart::SignedExp: return BoundaryPoint::exp_infinity();
    }
  }
  return after(from);
}

}  // namespace laminar
