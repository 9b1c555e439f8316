#include "laminar/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "laminar/error.hpp"

namespace laminar {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)); }

[[noreturn]] void mismatch(const ChartAction& g, const BoundaryPoint& x) {
  throw Error(ErrorCode::ChartMismatch,
              std::string(chart_name(action_chart(g))) + " action applied to " + x.encode());
}

}  // namespace

MobiusMap::MobiusMap(FieldElem p, FieldElem q, FieldElem r, FieldElem s)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), s_(std::move(s)) {
  if (field_sign(det()) <= 0)
    throw Error(ErrorCode::NonPositiveDeterminant,
                "[" + p_.to_string() + "; " + q_.to_string() + "; " + r_.to_string() + "; " + s_.to_string() + "]");
  const FieldElem lead = !p_.is_zero() ? p_ : q_;
  if (lead != FieldElem(1)) {
    const FieldElem inv = lead.inverse();
    p_ *= inv;
    q_ *= inv;
    r_ *= inv;
    s_ *= inv;
  }
}

bool MobiusMap::is_identity() const { return q_.is_zero() && r_.is_zero() && p_ == s_; }

BoundaryPoint MobiusMap::operator()(const BoundaryPoint& x) const {
  if (x.chart() != Chart::ExtReal) mismatch(*this, x);
  if (x.is_infinity()) {
    if (r_.is_zero()) return x;
    return BoundaryPoint::real(p_ / r_);
  }
  const FieldElem den = r_ * x.value() + s_;
  if (den.is_zero()) return BoundaryPoint::infinity();
  return BoundaryPoint::real((p_ * x.value() + q_) / den);
}

MobiusMap MobiusMap::operator*(const MobiusMap& o) const {
  return {p_ * o.p_ + q_ * o.r_, p_ * o.q_ + q_ * o.s_, r_ * o.p_ + s_ * o.r_, r_ * o.q_ + s_ * o.s_};
}

MobiusMap MobiusMap::inverse() const { return {s_, -q_, -r_, p_}; }

std::size_t MobiusMap::hash() const {
  return mix(mix(mix(p_.hash(), q_.hash()), r_.hash()), s_.hash());
}

ExpAffine::ExpAffine(int e, FieldElem t) : eps(e), tau(std::move(t)) {
  if (e != 1 && e != -1) throw Error(ErrorCode::ParseError, "exponent action sign must be +1 or -1");
}

Chart action_chart(const ChartAction& g) {
  return std::visit(overloaded{[](const MobiusMap&) { return Chart::ExtReal; },
                               [](const AngleShift&) { return Chart::DiskAngle; },
                               [](const ExpAffine&) { return Chart::SignedExp; }},
                    g);
}

bool is_identity(const ChartAction& g) {
  return std::visit(overloaded{[](const MobiusMap& m) { return m.is_identity(); },
                               [](const AngleShift& a) { return a.delta.is_zero(); },
                               [](const ExpAffine& e) { return e.eps == 1 && e.tau.is_zero(); }},
                    g);
}

ChartAction identity_like(const ChartAction& g) {
  switch (action_chart(g)) {
    case Chart::ExtReal: return MobiusMap();
    case Chart::DiskAngle: return AngleShift();
    case Chart::SignedExp: return ExpAffine();
  }
  return MobiusMap();
}

BoundaryPoint act(const ChartAction& g, const BoundaryPoint& x) {
  if (x.chart() != action_chart(g)) mismatch(g, x);
  return std::visit(
      overloaded{[&](const MobiusMap& m) { return m(x); },
                 [&](const AngleShift& a) { return BoundaryPoint::angle(x.value() + a.delta); },
                 [&](const ExpAffine& e) {
                   switch (x.kind()) {
                     case BoundaryPoint::Kind::Zero:
                       return e.eps > 0 ? x : BoundaryPoint::exp_infinity();
                     case BoundaryPoint::Kind::Infinity:
                       return e.eps > 0 ? x : BoundaryPoint::exp_zero();
                     case BoundaryPoint::Kind::Finite: break;
                   }
                   return BoundaryPoint::exp(e.eps * x.sign(), e.eps > 0 ? x.value() + e.tau : e.tau - x.value());
                 }},
      g);
}

ChartAction compose(const ChartAction& g, const ChartAction& h) {
  if (g.index() != h.index())
    throw Error(ErrorCode::ChartMismatch, "cannot compose " + action_key(g) + " with " + action_key(h));
  if (const auto* m = std::get_if<MobiusMap>(&g)) return *m * std::get<MobiusMap>(h);
  if (const auto* a = std::get_if<AngleShift>(&g)) return AngleShift(a->delta + std::get<AngleShift>(h).delta);
  const auto& e2 = std::get<ExpAffine>(g);
  const auto& e1 = std::get<ExpAffine>(h);
  return ExpAffine(e1.eps * e2.eps, e2.eps > 0 ? e1.tau + e2.tau : e2.tau - e1.tau);
}

ChartAction inverse(const ChartAction& g) {
  return std::visit(overloaded{[](const MobiusMap& m) -> ChartAction { return m.inverse(); },
                               [](const AngleShift& a) -> ChartAction { return AngleShift(-a.delta); },
                               [](const ExpAffine& e) -> ChartAction {
                                 return ExpAffine(e.eps, e.eps > 0 ? -e.tau : e.tau);
                               }},
                    g);
}

std::string action_key(const ChartAction& g) {
  return std::visit(overloaded{[](const MobiusMap& m) {
                                 return "m:" + m.p().to_string() + ";" + m.q().to_string() + ";" +
                                        m.r().to_string() + ";" + m.s().to_string();
                               },
                               [](const AngleShift& a) { return "a:" + a.delta.to_string(); },
                               [](const ExpAffine& e) {
                                 return std::string("x:") + (e.eps > 0 ? "+;" : "-;") + e.tau.to_string();
                               }},
                    g);
}

std::size_t action_hash(const ChartAction& g) {
  return std::visit(overloaded{[](const MobiusMap& m) { return m.hash(); },
                               [](const AngleShift& a) { return mix(1, a.delta.hash()); },
                               [](const ExpAffine& e) { return mix(static_cast<std::size_t>(e.eps + 3), e.tau.hash()); }},
                    g);
}

const char* to_string(ElementType t) noexcept {
  switch (t) {
    case ElementType::Identity: return "identity";
    case ElementType::Elliptic: return "elliptic";
    case ElementType::Parabolic: return "parabolic";
    case ElementType::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

ElementType classify(const MobiusMap& g) {
  if (g.is_identity()) return ElementType::Identity;
  const FieldElem tr = g.trace();
  const int c = compare(tr * tr, FieldElem(4) * g.det());
  if (c < 0) return ElementType::Elliptic;
  if (c == 0) return ElementType::Parabolic;
  return ElementType::Hyperbolic;
}

ElementType classify(const ChartAction& g) {
  if (is_identity(g)) return ElementType::Identity;
  return std::visit(overloaded{[](const MobiusMap& m) { return classify(m); },
                               [](const AngleShift&) { return ElementType::Elliptic; },
                               [](const ExpAffine& e) {
                                 return e.eps > 0 ? ElementType::Hyperbolic : ElementType::Elliptic;
                               }},
                    g);
}

SymbolicRoot SymbolicRoot::of(const FieldElem& A, const FieldElem& B, const FieldElem& C, int branch) {
  SymbolicRoot root;
  const FieldElem inv = A.inverse();
  root.b = B * inv;
  root.c = C * inv;
  root.branch = branch * field_sign(A);
  return root;
}

double SymbolicRoot::approx() const {
  const double disc = discriminant().to_double();
  return (-b.to_double() + branch * std::sqrt(std::max(disc, 0.0))) / 2;
}

int SymbolicRoot::compare(const FieldElem& y) const {
  // root - y = u + (branch / 2) sqrt(D) with u = -b/2 - y.
  const FieldElem u = -b / FieldElem(2) - y;
  const int su = field_sign(u);
  if (su == 0 || su == branch) return branch;
  // Opposite signs: compare u^2 with D/4.
  return su * field_sign(u * u * FieldElem(4) - discriminant());
}

std::string to_string(const FixedPoint& f) {
  if (const auto* p = std::get_if<BoundaryPoint>(&f)) return p->encode();
  const auto& s = std::get<SymbolicRoot>(f);
  return std::string("root(x^2+(") + s.b.to_string() + ")x+(" + s.c.to_string() + ")," +
         (s.branch > 0 ? "+" : "-") + ")";
}

bool same_point(const FixedPoint& x, const FixedPoint& y) {
  // A symbolic root is never a field point, so mixed pairs always differ.
  if (x.index() != y.index()) return false;
  if (const auto* p = std::get_if<BoundaryPoint>(&x)) return *p == std::get<BoundaryPoint>(y);
  return std::get<SymbolicRoot>(x) == std::get<SymbolicRoot>(y);
}

std::vector<FixedPoint> fixed_points(const MobiusMap& g) {
  const ElementType type = classify(g);
  if (type == ElementType::Identity || type == ElementType::Elliptic) return {};
  // r x^2 + (s - p) x - q = 0
  const FieldElem A = g.r();
  const FieldElem B = g.s() - g.p();
  const FieldElem C = -g.q();
  if (A.is_zero()) {
    std::vector<FixedPoint> out{BoundaryPoint::infinity()};
    if (!B.is_zero()) out.emplace_back(BoundaryPoint::real(-C / B));
    return out;
  }
  const FieldElem disc = B * B - FieldElem(4) * A * C;
  const FieldElem two_a = FieldElem(2) * A;
  if (disc.is_zero()) return {BoundaryPoint::real(-B / two_a)};
  if (auto root = field_sqrt(disc)) {
    FieldElem x1 = (-B - *root) / two_a;
    FieldElem x2 = (-B + *root) / two_a;
    if (x2 < x1) std::swap(x1, x2);
    return {BoundaryPoint::real(x1), BoundaryPoint::real(x2)};
  }
  return {SymbolicRoot::of(A, B, C, -field_sign(A)), SymbolicRoot::of(A, B, C, field_sign(A))};
}

std::vector<FixedPoint> fixed_points(const ChartAction& g) {
  if (const auto* m = std::get_if<MobiusMap>(&g)) return fixed_points(*m);
  if (classify(g) == ElementType::Hyperbolic)
    return {BoundaryPoint::exp_infinity(), BoundaryPoint::exp_zero()};
  return {};
}

std::vector<ChartAction> ball_enumerate(const std::vector<ChartAction>& generators, int radius) {
  if (generators.empty()) return {MobiusMap()};
  std::vector<ChartAction> letters;
  for (const auto& g : generators) {
    letters.push_back(g);
    letters.push_back(inverse(g));
  }
  std::vector<ChartAction> out{identity_like(generators.front())};
  std::unordered_set<ChartAction, ChartActionHash> seen(out.begin(), out.end());
  std::size_t shell_begin = 0;
  for (int level = 1; level <= radius; ++level) {
    const std::size_t shell_end = out.size();
    for (std::size_t i = shell_begin; i < shell_end; ++i) {
      for (const auto& s : letters) {
        ChartAction w = compose(out[i], s);
        if (seen.insert(w).second) out.push_back(std::move(w));
      }
    }
    if (out.size() == shell_end) break;
    shell_begin = shell_end;
  }
  return out;
}

}  // namespace laminar
