#include "laminar/constructions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <utility>

#include "laminar/error.hpp"

namespace laminar {

namespace {

struct CcwLess {
  BoundaryPoint base;
  bool operator()(const BoundaryPoint& a, const BoundaryPoint& b) const {
    if (a == b) return false;
    if (a == base) return true;
    if (b == base) return false;
    return circular_order(base, a, b) == Orientation::Positive;
  }
};

bool in_closed_arc(const Arc& a, const BoundaryPoint& x) {
  return x == a.from || x == a.to || circular_order(a.from, x, a.to) == Orientation::Positive;
}

std::vector<Chord> concat(std::vector<Chord> a, const std::vector<Chord>& b) {
  a.insert(a.end(), b.begin(), b.end());
  canonicalize(a);
  return a;
}

}  // namespace

Chart chart_of(DenseRule rule) {
  switch (rule) {
    case DenseRule::Rationals:
    case DenseRule::RationalsShifted: return Chart::ExtReal;
    case DenseRule::RationalAngles:
    case DenseRule::ShiftedAngles: return Chart::DiskAngle;
    case DenseRule::SignedExpRationals:
    case DenseRule::SignedExpShifted: return Chart::SignedExp;
  }
  return Chart::ExtReal;
}

const char* to_string(DenseRule rule) noexcept {
  switch (rule) {
    case DenseRule::Rationals: return "rationals";
    case DenseRule::RationalsShifted: return "rationals_shifted";
    case DenseRule::RationalAngles: return "rational_angles";
    case DenseRule::ShiftedAngles: return "shifted_angles";
    case DenseRule::SignedExpRationals: return "signed_exp_rationals";
    case DenseRule::SignedExpShifted: return "signed_exp_shifted";
  }
  return "unknown";
}

DenseSetSpec DenseSetSpec::with_seeds(std::vector<BoundaryPoint> s) const {
  DenseSetSpec out = *this;
  out.seeds = std::move(s);
  return out;
}

DenseSetSpec DenseSetSpec::rationals(FieldElem shift) {
  DenseSetSpec s;
  s.rule = shift.is_zero() ? DenseRule::Rationals : DenseRule::RationalsShifted;
  s.shift = std::move(shift);
  return s;
}

DenseSetSpec DenseSetSpec::angles(FieldElem shift) {
  DenseSetSpec s;
  s.rule = shift.is_zero() ? DenseRule::RationalAngles : DenseRule::ShiftedAngles;
  s.shift = std::move(shift);
  return s;
}

DenseSetSpec DenseSetSpec::signed_exp(FieldElem shift, bool mirrored) {
  DenseSetSpec s;
  s.rule = shift.is_zero() ? DenseRule::SignedExpRationals : DenseRule::SignedExpShifted;
  s.shift = std::move(shift);
  s.mirrored = mirrored;
  return s;
}

DenseEnumerator::DenseEnumerator(DenseSetSpec spec) : spec_(std::move(spec)) {}

mpq_class DenseEnumerator::next_positive() {
  if (!cw_started_) {
    cw_started_ = true;
    cw_ = 1;
    return cw_;
  }
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), cw_.get_num_mpz_t(), cw_.get_den_mpz_t());
  cw_ = 1 / (2 * mpq_class(fl) - cw_ + 1);
  cw_.canonicalize();
  return cw_;
}

mpq_class DenseEnumerator::next_signed() {
  if (!zero_done_) {
    zero_done_ = true;
    return 0;
  }
  if (signed_queue_.empty()) {
    const mpq_class x = next_positive();
    signed_queue_.push_back(x);
    signed_queue_.push_back(-x);
  }
  mpq_class q = signed_queue_.front();
  signed_queue_.pop_front();
  return q;
}

BoundaryPoint DenseEnumerator::rule_point() {
  if (!point_queue_.empty()) {
    BoundaryPoint p = point_queue_.front();
    point_queue_.pop_front();
    return p;
  }
  const FieldElem& s = spec_.shift;
  switch (spec_.rule) {
    case DenseRule::Rationals:
    case DenseRule::RationalsShifted: return BoundaryPoint::real(FieldElem(next_signed()) + s);
    case DenseRule::RationalAngles:
    case DenseRule::ShiftedAngles: {
      if (!zero_done_) {
        zero_done_ = true;
        return BoundaryPoint::angle(s);
      }
      const mpq_class x = next_positive();
      return BoundaryPoint::angle(FieldElem(mpq_class(x / (1 + x))) + s);
    }
    case DenseRule::SignedExpRationals:
    case DenseRule::SignedExpShifted: {
      const FieldElem q(next_signed());
      point_queue_.push_back(BoundaryPoint::exp(-1, spec_.mirrored ? -(q + s) : q + s));
      return BoundaryPoint::exp(1, q + s);
    }
  }
  throw Error(ErrorCode::BadSeed, "unknown enumeration rule");
}

BoundaryPoint DenseEnumerator::next() {
  if (seed_pos_ < spec_.seeds.size()) return spec_.seeds[seed_pos_++];
  for (;;) {
    BoundaryPoint p = rule_point();
    if (std::find(spec_.seeds.begin(), spec_.seeds.end(), p) == spec_.seeds.end()) return p;
  }
}

std::vector<BoundaryPoint> dense_prefix(const DenseSetSpec& spec, std::size_t n) {
  DenseEnumerator en(spec);
  std::vector<BoundaryPoint> out;
  out.reserve(n);
  while (out.size() < n) out.push_back(en.next());
  return out;
}

bool dense_contains(const DenseSetSpec& spec, const BoundaryPoint& p) {
  if (p.chart() != spec.chart() || !p.is_finite()) return false;
  if (spec.chart() == Chart::SignedExp && p.sign() < 0 && spec.mirrored)
    return (-p.value() - spec.shift).is_rational();
  return (p.value() - spec.shift).is_rational();
}

std::vector<Chord> half_farey(const DenseSetSpec& spec, int depth, std::size_t max_scan) {
  if (spec.seeds.size() < 2) throw Error(ErrorCode::BadSeed, "half-Farey fill needs two seed points");
  const BoundaryPoint q1 = spec.seeds[0];
  const BoundaryPoint q2 = spec.seeds[1];
  if (q1.chart() != spec.chart() || q2.chart() != spec.chart())
    throw Error(ErrorCode::BadSeed, "seed points are not in the chart of the set");
  if (q1 == q2) throw Error(ErrorCode::BadSeed, "seed points coincide: " + q1.encode());

  std::vector<Chord> out{Chord(q1, q2)};
  if (depth <= 0) return out;

  // Undivided sub-arcs keyed by their start, with end point and level.
  std::map<BoundaryPoint, std::pair<BoundaryPoint, int>, CcwLess> arcs(CcwLess{q1});
  arcs.emplace(q1, std::make_pair(q2, 0));
  std::size_t open = 1;
  DenseEnumerator en(spec);
  for (std::size_t scanned = 0; open > 0; ++scanned) {
    if (scanned == max_scan)
      throw Error(ErrorCode::Exhausted, "half-Farey fill of " + Chord(q1, q2).encode() + " did not finish");
    const BoundaryPoint x = en.next();
    if (x == q1 || x == q2 || circular_order(q1, x, q2) != Orientation::Positive) continue;
    auto it = std::prev(arcs.upper_bound(x));
    if (it->first == x) continue;
    auto& [end, level] = it->second;
    if (level >= depth) continue;
    out.emplace_back(it->first, x);
    out.emplace_back(x, end);
    ++level;
    arcs.emplace_hint(std::next(it), x, std::make_pair(end, level));
    end = x;
    if (level < depth)
      ++open;
    else
      --open;
  }
  canonicalize(out);
  return out;
}

std::vector<Chord> square_triangulation(const Arc& I, const Arc& J, const DenseSetSpec& spec, int depth) {
  const std::array<BoundaryPoint, 4> v{I.from, I.to, J.from, J.to};
  for (const auto& p : v)
    if (p.chart() != spec.chart())
      throw Error(ErrorCode::ChartMismatch, p.encode() + " is not in the chart of the set");
  if (I.from == I.to || J.from == J.to || in_closed_arc(I, J.from) || in_closed_arc(I, J.to) ||
      in_closed_arc(J, I.from) || in_closed_arc(J, I.to))
    throw Error(ErrorCode::OverlappingArcs, "arcs [" + I.from.encode() + ", " + I.to.encode() + "] and [" +
                                                J.from.encode() + ", " + J.to.encode() + "] are not disjoint");
  for (const auto& p : v)
    if (!dense_contains(spec, p) && std::find(spec.seeds.begin(), spec.seeds.end(), p) == spec.seeds.end())
      throw Error(ErrorCode::BadSeed, p.encode() + " is not in the dense set");

  std::vector<Chord> out;
  for (std::size_t i = 0; i < 4; ++i) out.emplace_back(v[i], v[(i + 1) % 4]);

  DenseEnumerator en(spec);
  std::size_t least = 4;
  for (std::size_t scanned = 0; least == 4; ++scanned) {
    if (scanned == 2'000'000) throw Error(ErrorCode::Exhausted, "square corners not reached by the enumeration");
    const BoundaryPoint x = en.next();
    for (std::size_t i = 0; i < 4; ++i)
      if (v[i] == x) least = i;
  }
  out.emplace_back(v[least], v[(least + 2) % 4]);

  out = concat(std::move(out), half_farey(spec.with_seeds({I.from, I.to}), depth));
  return concat(std::move(out), half_farey(spec.with_seeds({J.from, J.to}), depth));
}

Chord image(const ChartAction& g, const Chord& c) { return Chord(act(g, c.lo()), act(g, c.hi())); }

OrbitClosure orbit_closure(const std::vector<Chord>& seed, const std::vector<ChartAction>& generators, int radius) {
  OrbitClosure out;
  if (seed.empty()) return out;
  const Chart chart = seed.front().chart();
  for (const auto& g : generators)
    if (action_chart(g) != chart)
      throw Error(ErrorCode::ChartMismatch,
                  action_key(g) + " does not act on " + std::string(chart_name(chart)));
  if (generators.empty()) {
    out.chords = seed;
  } else {
    for (const auto& g : ball_enumerate(generators, radius))
      for (const auto& c : seed) out.chords.push_back(image(g, c));
  }
  canonicalize(out.chords);
  out.report = validate_truncation(out.chords);
  return out;
}

std::vector<Chord> farey_tessellation(int depth) {
  struct Frac {
    long num, den;
  };
  const auto point = [](const Frac& f) {
    return f.den == 0 ? BoundaryPoint::infinity() : BoundaryPoint::real(FieldElem::rational(f.num, f.den));
  };
  if (depth <= 0) return {Chord(point({0, 1}), BoundaryPoint::infinity())};

  std::vector<std::pair<Frac, Frac>> arcs{{{0, 1}, {1, 1}}, {{1, 1}, {1, 0}}, {{-1, 0}, {0, 1}}};
  std::vector<Chord> out;
  for (const auto& [a, b] : arcs) out.emplace_back(point(a), point(b));
  for (int round = 1; round < depth; ++round) {
    std::vector<std::pair<Frac, Frac>> next;
    next.reserve(arcs.size() * 2);
    for (const auto& [a, b] : arcs) {
      const Frac m{a.num + b.num, a.den + b.den};
      out.emplace_back(point(a), point(m));
      out.emplace_back(point(m), point(b));
      next.push_back({a, m});
      next.push_back({m, b});
    }
    arcs = std::move(next);
  }
  canonicalize(out);
  return out;
}

const char* to_string(ElementaryKind kind) noexcept {
  switch (kind) {
    case ElementaryKind::Trivial: return "trivial";
    case ElementaryKind::FiniteCyclic: return "finite_cyclic";
    case ElementaryKind::Parabolic: return "parabolic";
    case ElementaryKind::Hyperbolic: return "hyperbolic";
    case ElementaryKind::Dihedral: return "dihedral";
  }
  return "unknown";
}

ElementaryKind parse_elementary_kind(const std::string& name) {
  for (auto k : {ElementaryKind::Trivial, ElementaryKind::FiniteCyclic, ElementaryKind::Parabolic,
                 ElementaryKind::Hyperbolic, ElementaryKind::Dihedral})
    if (name == to_string(k)) return k;
  throw Error(ErrorCode::UnsupportedKind, "unknown elementary kind '" + name + "'");
}

namespace {

std::vector<Chord> trivial_system(const FieldElem& shift, int depth) {
  const DenseSetSpec spec = DenseSetSpec::angles(shift);
  const auto pts = dense_prefix(spec, 2);
  return concat(half_farey(spec.with_seeds({pts[0], pts[1]}), depth),
                half_farey(spec.with_seeds({pts[1], pts[0]}), depth));
}

std::vector<Chord> cyclic_system(int n, const FieldElem& shift, int depth) {
  const DenseSetSpec spec = DenseSetSpec::angles(shift);
  const FieldElem step = FieldElem::rational(1, n);
  const auto fill = half_farey(spec.with_seeds({BoundaryPoint::angle(shift), BoundaryPoint::angle(shift + step)}), depth);
  std::vector<Chord> out;
  for (long k = 0; k < n; ++k) {
    const ChartAction rot = AngleShift(FieldElem::rational(k, n));
    for (const auto& c : fill) out.push_back(image(rot, c));
  }
  canonicalize(out);
  return out;
}

ChartAction parabolic_generator() { return MobiusMap::translation(FieldElem(1)); }
ChartAction hyperbolic_generator() { return ExpAffine(1, FieldElem(1)); }
std::vector<ChartAction> dihedral_generators() { return {ExpAffine(-1, FieldElem(0)), ExpAffine(-1, FieldElem(1))}; }

std::vector<Chord> parabolic_system(const FieldElem& shift, int depth) {
  const DenseSetSpec spec = DenseSetSpec::rationals(shift);
  auto seed = half_farey(spec.with_seeds({BoundaryPoint::real(shift), BoundaryPoint::real(shift + FieldElem(1))}), depth);
  seed.emplace_back(BoundaryPoint::real(shift), BoundaryPoint::infinity());
  return orbit_closure(seed, {parabolic_generator()}, depth).chords;
}

std::vector<Chord> hyperbolic_system(const FieldElem& shift, int depth) {
  const DenseSetSpec spec = DenseSetSpec::signed_exp(shift);
  const FieldElem top = shift + FieldElem(1);
  const Arc I{BoundaryPoint::exp(-1, top), BoundaryPoint::exp(-1, shift)};
  const Arc J{BoundaryPoint::exp(1, shift), BoundaryPoint::exp(1, top)};
  return orbit_closure(square_triangulation(I, J, spec, depth), {hyperbolic_generator()}, depth).chords;
}

std::vector<Chord> dihedral_system(const FieldElem& shift, int depth) {
  const DenseSetSpec spec = DenseSetSpec::signed_exp(shift, true);
  // Rays through i have endpoints (+,t), (-,-t); rays through i e^{1/2}
  // have endpoints (+,t'), (-,1-t'). Take the first t, then the first t'
  // with t < t' < t + 1 so the two geodesics are nested.
  DenseEnumerator en(spec);
  std::optional<FieldElem> t, t2;
  while (!t2) {
    const BoundaryPoint x = en.next();
    if (x.sign() < 0) continue;
    if (!t)
      t = x.value();
    else if (*t < x.value() && x.value() < *t + FieldElem(1))
      t2 = x.value();
  }
  const Arc I{BoundaryPoint::exp(-1, FieldElem(1) - *t2), BoundaryPoint::exp(-1, -*t)};
  const Arc J{BoundaryPoint::exp(1, *t), BoundaryPoint::exp(1, *t2)};
  return orbit_closure(square_triangulation(I, J, spec, depth), dihedral_generators(), depth).chords;
}

}  // namespace

Col3Collection elementary_col3(ElementaryKind kind, int order) {
  Col3Collection col;
  col.kind = kind;
  const std::array<FieldElem, 3> shifts{FieldElem(0), FieldElem::sqrt2(), FieldElem::sqrt3()};
  const std::array<const char*, 3> names{"L0", "L_sqrt2", "L_sqrt3"};
  std::function<std::vector<Chord>(const FieldElem&, int)> build;
  Chart chart = Chart::ExtReal;
  switch (kind) {
    case ElementaryKind::Trivial:
      chart = Chart::DiskAngle;
      build = trivial_system;
      break;
    case ElementaryKind::FiniteCyclic:
      if (order < 2) throw Error(ErrorCode::UnsupportedKind, "finite cyclic order must be at least 2");
      col.order = order;
      chart = Chart::DiskAngle;
      col.generators = {AngleShift(FieldElem::rational(1, order))};
      build = [order](const FieldElem& s, int d) { return cyclic_system(order, s, d); };
      break;
    case ElementaryKind::Parabolic:
      col.generators = {parabolic_generator()};
      col.cusps = {BoundaryPoint::infinity()};
      build = parabolic_system;
      break;
    case ElementaryKind::Hyperbolic:
      chart = Chart::SignedExp;
      col.generators = {hyperbolic_generator()};
      build = hyperbolic_system;
      break;
    case ElementaryKind::Dihedral:
      chart = Chart::SignedExp;
      col.generators = dihedral_generators();
      build = dihedral_system;
      break;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    col.systems[i].name = names[i];
    col.systems[i].chart = chart;
    col.systems[i].group = to_string(kind);
    col.systems[i].generator = [build, s = shifts[i]](int depth) { return build(s, depth); };
  }
  return col;
}

bool PantsLikeReport::holds() const {
  return std::all_of(pairs.begin(), pairs.end(),
                     [](const PairReport& p) { return p.transverse && p.undeclared.empty(); });
}

PantsLikeReport pants_like_check(const Col3Collection& col, int depth) {
  std::array<std::vector<Chord>, 3> t;
  for (std::size_t i = 0; i < 3; ++i) t[i] = col.systems[i].truncation(depth);
  return pants_like_check(t, col.cusps);
}

PantsLikeReport pants_like_check(const std::array<std::vector<Chord>, 3>& t, const std::vector<BoundaryPoint>& cusps) {
  PantsLikeReport report;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      PairReport p;
      p.a = a;
      p.b = b;
      p.transverse = transverse(t[a], t[b]);
      p.common_endpoints = strongly_transverse(t[a], t[b]).common_endpoints;
      for (const auto& e : p.common_endpoints)
        if (std::find(cusps.begin(), cusps.end(), e) == cusps.end()) p.undeclared.push_back(e);
      report.pairs.push_back(std::move(p));
    }
  }
  return report;
}

}  // namespace laminar
