#include "laminar/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <unordered_map>

#include "laminar/error.hpp"

namespace laminar {

namespace {

double turns_of(const FixedPoint& f) {
  if (const auto* p = std::get_if<BoundaryPoint>(&f)) return p->to_turns();
  const double t = 0.5 + std::atan(std::get<SymbolicRoot>(f).approx()) / std::numbers::pi;
  return t >= 1.0 ? t - 1.0 : t;
}

double circular_mid(double s, double t) {
  double m = std::abs(s - t) <= 0.5 ? (s + t) / 2 : (s + t + 1) / 2;
  return m >= 1.0 ? m - 1.0 : m;
}

double closest_pair_mid(const Triple& k) {
  std::size_t bi = 0, bj = 1;
  double best = circle_distance(k[0], k[1]);
  for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 2}, {1, 2}}) {
    const double d = circle_distance(k[i], k[j]);
    if (d < best) {
      best = d;
      bi = i;
      bj = j;
    }
  }
  return circular_mid(k[bi], k[bj]);
}

Triple act_triple(const Mat2& m, const Triple& k) {
  return {act_turns(m, k[0]), act_turns(m, k[1]), act_turns(m, k[2])};
}

double min_distance(const Triple& k) {
  return std::min({circle_distance(k[0], k[1]), circle_distance(k[0], k[2]), circle_distance(k[1], k[2])});
}

std::vector<std::size_t> returns_of(const MapSequence& g, const Triple& k, const SamplerOptions& opts) {
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n <= opts.horizon; ++n)
    if (min_gap(act_triple(g(n), k)) >= opts.l_gap) out.push_back(n);
  return out;
}

}  // namespace

std::vector<BoundaryPoint> cusp_points(const std::vector<ChartAction>& generators, int radius) {
  std::vector<BoundaryPoint> out;
  for (const auto& g : ball_enumerate(generators, radius)) {
    if (classify(g) != ElementType::Parabolic) continue;
    for (const auto& f : fixed_points(g))
      if (const auto* p = std::get_if<BoundaryPoint>(&f)) out.push_back(*p);
  }
  std::sort(out.begin(), out.end(), LinearLess());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FixedPointLemmaReport fixed_point_lemma_check(const std::vector<ChartAction>& generators, int radius) {
  FixedPointLemmaReport report;
  const auto ball = ball_enumerate(generators, radius);
  report.elements = ball.size();
  std::unordered_map<BoundaryPoint, std::string, BoundaryPointHash> parabolic_fix;
  std::vector<const ChartAction*> hyperbolic;
  for (const auto& g : ball) {
    const ElementType t = classify(g);
    if (t == ElementType::Hyperbolic) {
      ++report.hyperbolic;
      hyperbolic.push_back(&g);
    } else if (t == ElementType::Parabolic) {
      ++report.parabolic;
      for (const auto& f : fixed_points(g))
        if (const auto* p = std::get_if<BoundaryPoint>(&f)) parabolic_fix.emplace(*p, action_key(g));
    }
  }
  // A symbolic root is never a field point, so only field fixed points can collide.
  for (const auto* h : hyperbolic) {
    for (const auto& f : fixed_points(*h)) {
      const auto* p = std::get_if<BoundaryPoint>(&f);
      if (!p) continue;
      if (auto it = parabolic_fix.find(*p); it != parabolic_fix.end())
        report.shared.emplace_back(action_key(*h), it->second);
    }
  }
  return report;
}

double width_turns(const IntervalRef& I) {
  double w = I.end().to_turns() - I.start().to_turns();
  if (w < 0) w += 1.0;
  return w;
}

bool closure_subset(const IntervalRef& A, const IntervalRef& B) {
  return contains(B, A.start()) && contains(B, A.end()) && subset(A, B);
}

std::vector<AngelWing> angel_wings(const ChartAction& g, const IntervalRef& I, int count) {
  if (classify(g) != ElementType::Parabolic)
    throw Error(ErrorCode::NotParabolic, action_key(g) + " is " + to_string(classify(g)));
  const BoundaryPoint p = std::get<BoundaryPoint>(fixed_points(g).front());
  if (!I.chord.has_endpoint(p))
    throw Error(ErrorCode::LeafNotAtFixedPoint, I.chord.encode() + " does not end at " + p.encode());
  const BoundaryPoint q = I.chord.lo() == p ? I.chord.hi() : I.chord.lo();
  if (!contains(I, act(g, q)))
    throw Error(ErrorCode::BadIntervalChoice, "g(" + q.encode() + ") is not in " + I.encode());

  const ChartAction g_inv = inverse(g);
  const IntervalRef Is = I.dual();
  BoundaryPoint f_start = I.start(), f_end = I.end(), b_start = Is.start(), b_end = Is.end();
  std::vector<AngelWing> out;
  for (int k = 1; k <= count; ++k) {
    f_start = act(g, f_start);
    f_end = act(g, f_end);
    b_start = act(g_inv, b_start);
    b_end = act(g_inv, b_end);
    const IntervalRef fwd = IntervalRef::from_endpoints(f_start, f_end);
    const IntervalRef bwd = IntervalRef::from_endpoints(b_start, b_end);
    const IntervalRef U = fwd.end() == p ? IntervalRef::from_endpoints(fwd.start(), bwd.end())
                                         : IntervalRef::from_endpoints(bwd.start(), fwd.end());
    out.push_back({U, fwd, bwd});
  }
  return out;
}

AngelWingsReport check_angel_wings(const std::vector<AngelWing>& wings, const BoundaryPoint& p,
                                   const std::vector<Chord>* lamination, double tolerance) {
  AngelWingsReport report;
  ChordSet members;
  if (lamination) members.insert(lamination->begin(), lamination->end());
  for (std::size_t k = 0; k < wings.size(); ++k) {
    const auto& w = wings[k];
    const bool glued = (w.forward.end() == p && w.backward.start() == p && w.U.start() == w.forward.start() &&
                        w.U.end() == w.backward.end()) ||
                       (w.backward.end() == p && w.forward.start() == p && w.U.start() == w.backward.start() &&
                        w.U.end() == w.forward.end());
    const bool in_l = !lamination || (members.count(w.forward.chord) && members.count(w.backward.chord));
    if (!glued || !disjoint(w.forward, w.backward) || !contains(w.U, p) || !in_l) report.decomposed = false;
    if (k + 1 < wings.size() && !closure_subset(wings[k + 1].U, w.U)) report.nested = false;
    report.widths.push_back(width_turns(w.U));
    if (k > 0 && !(report.widths[k] < report.widths[k - 1])) report.shrinking = false;
  }
  if (wings.empty() || !(report.widths.back() < tolerance)) report.shrinking = false;
  return report;
}

bool quasi_rainbow_check(const std::vector<IntervalRef>& intervals, const std::optional<BoundaryPoint>& p,
                         double tolerance) {
  if (intervals.empty()) return false;
  double previous = 2.0;
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    if (k > 0 && !subset(intervals[k], intervals[k - 1])) return false;
    if (p && !closure_contains(intervals[k], *p)) return false;
    const double w = width_turns(intervals[k]);
    if (w > previous) return false;
    previous = w;
  }
  return previous < tolerance;
}

bool monotone_convergence_check(const std::vector<BoundaryPoint>& points, const BoundaryPoint& p) {
  if (points.size() < 2) return false;
  const Orientation o = circular_order(p, points[0], points[1]);
  if (o == Orientation::Degenerate) return false;
  for (std::size_t k = 1; k + 1 < points.size(); ++k)
    if (circular_order(p, points[k], points[k + 1]) != o) return false;
  return true;
}

bool approximation_sequence_check(const std::vector<ChartAction>& maps, const BoundaryPoint& p,
                                  const BoundaryPoint& q, double tolerance) {
  if (maps.size() < 2) return false;
  for (std::size_t k = 0; k < maps.size(); ++k)
    for (std::size_t m = 0; m < k; ++m)
      if (classify(compose(maps[k], inverse(maps[m]))) != ElementType::Hyperbolic) return false;
  const double tp = p.to_turns(), tq = q.to_turns();
  double previous = 2.0;
  for (std::size_t k = 0; k + 1 < maps.size(); ++k) {
    const auto fix = fixed_points(compose(maps[k + 1], inverse(maps[k])));
    const double f0 = turns_of(fix[0]), f1 = turns_of(fix[1]);
    const double d = std::min(std::max(circle_distance(f0, tp), circle_distance(f1, tq)),
                              std::max(circle_distance(f0, tq), circle_distance(f1, tp)));
    if (d > previous) return false;
    previous = d;
  }
  return previous < tolerance;
}

bool pre_approximation_check(const std::vector<ChartAction>& maps, const std::vector<IntervalRef>& intervals,
                             const BoundaryPoint& p, const BoundaryPoint& x, double tolerance) {
  if (maps.empty() || maps.size() != intervals.size()) return false;
  if (!quasi_rainbow_check(intervals, p, tolerance)) return false;
  for (std::size_t n = 0; n < maps.size(); ++n)
    if (!contains(intervals[n], act(maps[n], x))) return false;
  return true;
}

Mat2 multiply(const Mat2& x, const Mat2& y) {
  Mat2 m{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  const double s = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
  if (s > 0) {
    m.a /= s;
    m.b /= s;
    m.c /= s;
    m.d /= s;
  }
  return m;
}

Mat2 inverse(const Mat2& m) { return {m.d, -m.b, -m.c, m.a}; }

Mat2 numeric_matrix(const ChartAction& g) {
  if (const auto* m = std::get_if<MobiusMap>(&g)) {
    const double s = std::sqrt(m->det().to_double());
    return {m->p().to_double() / s, m->q().to_double() / s, m->r().to_double() / s, m->s().to_double() / s};
  }
  if (const auto* a = std::get_if<AngleShift>(&g)) {
    const double phi = -std::numbers::pi * a->delta.to_double();
    return {std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi)};
  }
  const auto& e = std::get<ExpAffine>(g);
  const double h = std::exp(e.tau.to_double() / 2);
  if (e.eps > 0) return {h, 0, 0, 1 / h};
  return {0, -h, 1 / h, 0};
}

double act_turns(const Mat2& m, double t) {
  const double x = -std::cos(std::numbers::pi * t), y = std::sin(std::numbers::pi * t);
  const double X = m.a * x + m.b * y, Y = m.c * x + m.d * y;
  double s = std::atan2(Y, -X) / std::numbers::pi;
  if (s < 0) s += 1.0;
  if (s >= 1.0) s -= 1.0;
  return s;
}

MapSequence power_sequence(const ChartAction& g) {
  auto cache = std::make_shared<std::vector<Mat2>>(1, Mat2{});
  const Mat2 step = numeric_matrix(g);
  return [cache, step](std::size_t n) {
    while (cache->size() <= n) cache->push_back(multiply(cache->back(), step));
    return (*cache)[n];
  };
}

double circle_distance(double s, double t) {
  const double d = std::abs(s - t);
  return std::min(d, 1.0 - d);
}

double min_gap(const Triple& k) { return min_distance(k); }

std::vector<Triple> sample_triples(std::uint64_t seed, std::size_t count, double gap) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Triple> out;
  while (out.size() < count) {
    const Triple k{u(rng), u(rng), u(rng)};
    if (min_gap(k) >= gap) out.push_back(k);
  }
  return out;
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::ConvergenceLike: return "ConvergenceLike";
    case Verdict::Violation: return "Violation";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "unknown";
}

SequenceReport triple_escape_sampler(const MapSequence& g, const std::vector<Triple>& K, const SamplerOptions& opts) {
  for (std::size_t i = 0; i < K.size(); ++i)
    if (min_gap(K[i]) < opts.k_gap)
      throw Error(ErrorCode::DegenerateSample, "sample triple " + std::to_string(i) + " has a gap below " +
                                                   std::to_string(opts.k_gap));
  SequenceReport report;
  report.horizon = opts.horizon;
  report.samples = K.size();
  if (opts.horizon < 3 || K.empty()) return report;

  const std::size_t half = opts.horizon / 2;
  for (std::size_t i = 0; i < K.size(); ++i) {
    std::size_t last_spread = 0, late_returns = 0;
    std::vector<std::size_t> returns;
    for (std::size_t n = 1; n <= opts.horizon; ++n) {
      const Triple img = act_triple(g(n), K[i]);
      if (min_distance(img) >= opts.eps) last_spread = n;
      if (min_gap(img) >= opts.l_gap) {
        returns.push_back(n);
        if (n > half) ++late_returns;
      }
    }
    if (last_spread <= half) ++report.collapsed;
    if (!returns.empty()) report.last_return = std::max(report.last_return, returns.back());
    if (!report.witness && late_returns >= opts.horizon / 4) report.witness = Witness{i, K[i], std::move(returns)};
  }

  if (report.witness) {
    report.verdict = Verdict::Violation;
  } else if (report.collapsed == K.size() && report.last_return <= half) {
    report.verdict = Verdict::ConvergenceLike;
    const Mat2 last = g(opts.horizon);
    report.attracting = closest_pair_mid(act_triple(last, K.front()));
    report.repelling = closest_pair_mid(act_triple(inverse(last), K.front()));
  }
  return report;
}

bool replay_witness(const MapSequence& g, const Witness& w, const SamplerOptions& opts) {
  return !w.returns.empty() && returns_of(g, w.triple, opts) == w.returns;
}

}  // namespace laminar
