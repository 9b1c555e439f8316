#include "laminar/lamination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "laminar/error.hpp"

namespace laminar {

namespace {

void require_same_chart(const BoundaryPoint& x, const BoundaryPoint& y) {
  if (x.chart() != y.chart()) throw Error(ErrorCode::ChartMismatch, x.encode() + " vs " + y.encode());
}

int lc(const BoundaryPoint& x, const BoundaryPoint& y) { return linear_compare(x, y); }

bool is_inner(const IntervalRef& I) { return I.side == IntervalRef::Side::Inner; }

// Order of points counterclockwise from an origin; the origin itself is first.
struct CcwFrom {
  const BoundaryPoint* origin;
  int group(const BoundaryPoint& x) const { return lc(x, *origin) >= 0 ? 0 : 1; }
  bool operator()(const BoundaryPoint& x, const BoundaryPoint& y) const {
    const int gx = group(x), gy = group(y);
    if (gx != gy) return gx < gy;
    return lc(x, y) < 0;
  }
};

double turn_distance(const BoundaryPoint& x, const BoundaryPoint& y) {
  const double d = std::fabs(x.to_turns() - y.to_turns());
  return std::min(d, 1.0 - d);
}

// Nesting forest of an unlinked, canonicalized chord list: parent index or -1.
std::vector<long> nesting_parents(const std::vector<Chord>& chords) {
  std::vector<long> parent(chords.size(), -1);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < chords.size(); ++i) {
    const Chord& cur = chords[i];
    while (!stack.empty() && lc(chords[stack.back()].hi(), cur.lo()) <= 0) stack.pop_back();
    if (!stack.empty()) {
      if (lc(cur.hi(), chords[stack.back()].hi()) > 0)
        throw Error(ErrorCode::InvalidLamination, "linked chords " + chords[stack.back()].encode() + " and " + cur.encode());
      parent[i] = static_cast<long>(stack.back());
    }
    stack.push_back(i);
  }
  return parent;
}

// Whether the stack sweep meets a linked pair.
bool sweep_finds_link(const std::vector<Chord>& chords) {
  try {
    nesting_parents(chords);
    return false;
  } catch (const Error&) {
    return true;
  }
}

}  // namespace

Chord::Chord(BoundaryPoint u, BoundaryPoint v) {
  require_same_chart(u, v);
  const int c = lc(u, v);
  if (c == 0) throw Error(ErrorCode::DegenerateChord, "chord with equal endpoints " + u.encode());
  if (c < 0) {
    lo_ = std::move(u);
    hi_ = std::move(v);
  } else {
    lo_ = std::move(v);
    hi_ = std::move(u);
  }
}

std::size_t Chord::hash() const {
  const std::size_t a = lo_.hash();
  return a ^ (hi_.hash() + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

std::string Chord::encode() const { return "{" + lo_.encode() + ", " + hi_.encode() + "}"; }

bool chord_less(const Chord& x, const Chord& y) {
  const int c = lc(x.lo(), y.lo());
  if (c != 0) return c < 0;
  return lc(x.hi(), y.hi()) > 0;
}

void canonicalize(std::vector<Chord>& chords) {
  std::sort(chords.begin(), chords.end(), chord_less);
  chords.erase(std::unique(chords.begin(), chords.end()), chords.end());
}

IntervalRef IntervalRef::from_endpoints(const BoundaryPoint& from, const BoundaryPoint& to) {
  Chord c(from, to);
  return {c, c.lo() == from ? Side::Inner : Side::Outer};
}

std::string IntervalRef::encode() const { return "(" + start().encode() + ", " + end().encode() + ")"; }

bool contains(const IntervalRef& I, const BoundaryPoint& p) {
  const int a = lc(p, I.chord.lo());
  const int b = lc(p, I.chord.hi());
  const bool inside = a > 0 && b < 0;
  if (is_inner(I)) return inside;
  return a < 0 || b > 0;
}

bool closure_contains(const IntervalRef& I, const BoundaryPoint& p) {
  return I.chord.has_endpoint(p) || contains(I, p);
}

bool subset(const IntervalRef& I, const IntervalRef& J) {
  require_same_chart(I.chord.lo(), J.chord.lo());
  const Chord& i = I.chord;
  const Chord& j = J.chord;
  if (is_inner(I)) {
    if (is_inner(J)) return lc(j.lo(), i.lo()) <= 0 && lc(i.hi(), j.hi()) <= 0;
    return lc(i.hi(), j.lo()) <= 0 || lc(i.lo(), j.hi()) >= 0;
  }
  if (is_inner(J)) return false;
  return lc(i.lo(), j.lo()) <= 0 && lc(j.hi(), i.hi()) <= 0;
}

bool disjoint(const IntervalRef& I, const IntervalRef& J) { return subset(I, J.dual()); }

bool unlinked(const Chord& a, const Chord& b) {
  require_same_chart(a.lo(), b.lo());
  auto interleaved = [](const Chord& x, const Chord& y) {
    return lc(x.lo(), y.lo()) < 0 && lc(y.lo(), x.hi()) < 0 && lc(x.hi(), y.hi()) < 0;
  };
  return !interleaved(a, b) && !interleaved(b, a);
}

bool lies_on(const Chord& leaf, const IntervalRef& J) {
  const IntervalRef inner{leaf, IntervalRef::Side::Inner};
  return subset(inner, J) || subset(inner.dual(), J);
}

bool properly_lies_on(const Chord& leaf, const IntervalRef& J) {
  require_same_chart(leaf.lo(), J.chord.lo());
  const Chord& j = J.chord;
  if (is_inner(J)) return lc(j.lo(), leaf.lo()) < 0 && lc(leaf.hi(), j.hi()) < 0;
  // Inner closure [lo, hi] avoids [j.lo, j.hi], or the outer closure does.
  return lc(leaf.hi(), j.lo()) < 0 || lc(leaf.lo(), j.hi()) > 0 ||
         (lc(leaf.lo(), j.lo()) < 0 && lc(j.hi(), leaf.hi()) < 0);
}

std::string Violation::describe() const {
  std::string out;
  switch (kind) {
    case Kind::EmptyFamily: out = "empty family"; break;
    case Kind::MissingDual: out = "missing dual of"; break;
    case Kind::NotLyingOn: out = "leaf does not lie on interval or its dual:"; break;
    case Kind::LinkedPair: out = "linked pair:"; break;
    case Kind::MixedCharts: out = "mixed charts:"; break;
  }
  for (const auto& item : items) out += " " + item;
  return out;
}

ValidationReport validate_truncation(const std::vector<Chord>& input) {
  ValidationReport report;
  if (input.empty()) {
    report.violations.push_back({Violation::Kind::EmptyFamily, {}});
    return report;
  }
  for (const auto& c : input) {
    if (c.chart() != input.front().chart()) {
      report.violations.push_back({Violation::Kind::MixedCharts, {input.front().encode(), c.encode()}});
      return report;
    }
  }
  std::vector<Chord> chords = input;
  canonicalize(chords);
  if (!sweep_finds_link(chords)) return report;
  for (std::size_t i = 0; i < chords.size(); ++i)
    for (std::size_t j = i + 1; j < chords.size(); ++j)
      if (!unlinked(chords[i], chords[j]))
        report.violations.push_back({Violation::Kind::LinkedPair, {chords[i].encode(), chords[j].encode()}});
  return report;
}

ValidationReport validate_family(const std::vector<IntervalRef>& intervals) {
  ValidationReport report;
  if (intervals.empty()) {
    report.violations.push_back({Violation::Kind::EmptyFamily, {}});
    return report;
  }
  std::unordered_set<IntervalRef, IntervalHash> members(intervals.begin(), intervals.end());
  for (const auto& I : intervals)
    if (!members.count(I.dual())) report.violations.push_back({Violation::Kind::MissingDual, {I.encode()}});
  // One pass per ordered pair of distinct chords.
  std::vector<Chord> chords;
  for (const auto& I : intervals) chords.push_back(I.chord);
  canonicalize(chords);
  for (const auto& leaf : chords) {
    for (const auto& c : chords) {
      const IntervalRef J{c, IntervalRef::Side::Inner};
      if (!lies_on(leaf, J) && !lies_on(leaf, J.dual()))
        report.violations.push_back({Violation::Kind::NotLyingOn, {leaf.encode(), J.encode()}});
    }
  }
  return report;
}

std::vector<IntervalRef> to_intervals(const std::vector<Chord>& chords) {
  std::vector<IntervalRef> out;
  out.reserve(chords.size() * 2);
  for (const auto& c : chords) {
    out.push_back({c, IntervalRef::Side::Inner});
    out.push_back({c, IntervalRef::Side::Outer});
  }
  return out;
}

std::vector<Chord> to_chords(const std::vector<IntervalRef>& intervals) {
  std::unordered_set<IntervalRef, IntervalHash> members(intervals.begin(), intervals.end());
  std::vector<Chord> out;
  for (const auto& I : intervals) {
    if (!members.count(I.dual())) throw Error(ErrorCode::InvalidLamination, "family misses the dual of " + I.encode());
    out.push_back(I.chord);
  }
  canonicalize(out);
  return out;
}

std::vector<BoundaryPoint> Gap::vertices() const {
  std::vector<BoundaryPoint> out;
  if (provisional) return out;
  for (const auto& I : intervals) out.push_back(I.start());
  return out;
}

std::string Gap::encode() const {
  std::string out = provisional ? "provisional[" : "[";
  for (std::size_t i = 0; i < intervals.size(); ++i) out += (i ? ", " : "") + intervals[i].encode();
  return out + "]";
}

namespace {

std::vector<Gap> build_gaps(const std::vector<Chord>& chords, const std::vector<long>& parent) {
  const std::size_t n = chords.size();
  std::vector<std::vector<std::size_t>> children(n + 1);  // slot n holds the roots
  for (std::size_t i = 0; i < n; ++i) children[parent[i] < 0 ? n : static_cast<std::size_t>(parent[i])].push_back(i);

  std::vector<Gap> out;
  out.reserve(n + 1);
  // Region outside every root chord.
  {
    Gap g;
    for (std::size_t r : children[n]) g.intervals.push_back({chords[r], IntervalRef::Side::Inner});
    g.provisional = true;
    out.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Gap g;
    const Chord& c = chords[i];
    const BoundaryPoint* cursor = &c.lo();
    bool open_arc = false;
    for (std::size_t k : children[i]) {
      open_arc = open_arc || *cursor != chords[k].lo();
      g.intervals.push_back({chords[k], IntervalRef::Side::Inner});
      cursor = &chords[k].hi();
    }
    open_arc = open_arc || *cursor != c.hi();
    g.intervals.push_back({c, IntervalRef::Side::Outer});
    g.provisional = open_arc;
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

std::vector<Gap> gaps(const std::vector<Chord>& input) {
  if (input.empty()) throw Error(ErrorCode::InvalidLamination, "empty chord set has no gaps");
  std::vector<Chord> chords = input;
  canonicalize(chords);
  for (const auto& c : chords)
    if (c.chart() != chords.front().chart()) throw Error(ErrorCode::InvalidLamination, "mixed charts");
  return build_gaps(chords, nesting_parents(chords));
}

std::vector<IntervalRef> c_p_I(const std::vector<Chord>& chords, const BoundaryPoint& p, const IntervalRef& I) {
  std::vector<IntervalRef> out;
  if (!contains(I, p)) return out;
  for (const auto& c : chords) {
    for (auto side : {IntervalRef::Side::Inner, IntervalRef::Side::Outer}) {
      IntervalRef J{c, side};
      if (contains(J, p) && subset(J, I)) out.push_back(std::move(J));
    }
  }
  std::sort(out.begin(), out.end(), [](const IntervalRef& a, const IntervalRef& b) { return a != b && subset(b, a); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RainbowProbe rainbow_probe(const std::vector<Chord>& chords, const BoundaryPoint& p) {
  for (const auto& c : chords)
    if (c.has_endpoint(p)) return Endpoint{};
  if (chords.empty()) return NestedDepth{0};
  // Every chord has exactly one side containing p; that side is the
  // complement of a closed arc [x, y] avoiding p, and nesting of the sides
  // is reverse nesting of these arcs in the order cut at p.
  const CcwFrom order{&p};
  std::vector<BoundaryPoint> pts = endpoints(chords);
  std::sort(pts.begin(), pts.end(), order);
  std::unordered_map<BoundaryPoint, long, BoundaryPointHash> rank;
  for (std::size_t i = 0; i < pts.size(); ++i) rank.emplace(pts[i], static_cast<long>(i));
  std::vector<std::pair<long, long>> arcs;
  arcs.reserve(chords.size());
  for (const auto& c : chords) {
    long a = rank.at(c.lo()), b = rank.at(c.hi());
    if (a > b) std::swap(a, b);
    arcs.emplace_back(a, b);
  }
  std::sort(arcs.begin(), arcs.end(), [](const auto& u, const auto& v) {
    return u.first != v.first ? u.first < v.first : u.second > v.second;
  });
  // Longest non-increasing subsequence of the right ends.
  std::vector<long> tails;  // negated values, longest non-decreasing
  for (const auto& arc : arcs) {
    const long v = -arc.second;
    auto it = std::upper_bound(tails.begin(), tails.end(), v);
    if (it == tails.end()) {
      tails.push_back(v);
    } else {
      *it = v;
    }
  }
  return NestedDepth{static_cast<int>(tails.size())};
}

std::vector<BoundaryPoint> endpoints(const std::vector<Chord>& chords) {
  std::vector<BoundaryPoint> out;
  out.reserve(chords.size() * 2);
  for (const auto& c : chords) {
    out.push_back(c.lo());
    out.push_back(c.hi());
  }
  std::sort(out.begin(), out.end(), LinearLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool transverse(const std::vector<Chord>& a, const std::vector<Chord>& b) {
  if (!a.empty() && !b.empty()) require_same_chart(a.front().lo(), b.front().lo());
  const ChordSet set(a.begin(), a.end());
  return std::none_of(b.begin(), b.end(), [&](const Chord& c) { return set.count(c) > 0; });
}

StrongTransversality strongly_transverse(const std::vector<Chord>& a, const std::vector<Chord>& b) {
  if (!a.empty() && !b.empty()) require_same_chart(a.front().lo(), b.front().lo());
  StrongTransversality out;
  const auto ea = endpoints(a);
  const std::unordered_set<BoundaryPoint, BoundaryPointHash> set(ea.begin(), ea.end());
  for (const auto& p : endpoints(b))
    if (set.count(p)) out.common_endpoints.push_back(p);
  out.strongly_transverse = out.common_endpoints.empty();
  return out;
}

GapIndex::GapIndex(std::vector<Chord> chords) : chords_(std::move(chords)) {
  canonicalize(chords_);
  set_.insert(chords_.begin(), chords_.end());
  if (chords_.empty()) throw Error(ErrorCode::InvalidLamination, "empty chord set has no gaps");
  const auto parent = nesting_parents(chords_);
  gaps_ = build_gaps(chords_, parent);
  inner_gap_.resize(chords_.size());
  outer_gap_.resize(chords_.size());
  for (std::size_t i = 0; i < chords_.size(); ++i) {
    inner_gap_[i] = parent[i] < 0 ? 0 : static_cast<std::size_t>(parent[i]) + 1;
    outer_gap_[i] = i + 1;
  }
}

const Gap& GapIndex::gap_with(const IntervalRef& I) const {
  const auto it = std::lower_bound(chords_.begin(), chords_.end(), I.chord, chord_less);
  if (it == chords_.end() || *it != I.chord) throw Error(ErrorCode::InvalidLamination, I.encode() + " is not in the family");
  const auto idx = static_cast<std::size_t>(it - chords_.begin());
  return gaps_[is_inner(I) ? inner_gap_[idx] : outer_gap_[idx]];
}

bool GapIndex::admits_witness(const IntervalRef& I, const IntervalRef& J) const {
  const IntervalRef Is = I.dual(), Js = J.dual();
  for (const auto& c : chords_) {
    for (auto side : {IntervalRef::Side::Inner, IntervalRef::Side::Outer}) {
      const IntervalRef K{c, side};
      if (subset(K, Is) && subset(K, Js)) return true;
    }
  }
  return false;
}

SeparationResult GapIndex::separate(const IntervalRef& I, const IntervalRef& J,
                                    const std::vector<BoundaryPoint>& extra_candidates) const {
  if (!contains(I.chord) || !contains(J.chord))
    throw Error(ErrorCode::NotADistinctPair, I.encode() + ", " + J.encode() + " are not both in the family");
  if (I == J || I == J.dual() || !disjoint(I, J))
    throw Error(ErrorCode::NotADistinctPair, I.encode() + ", " + J.encode() + " overlap or form a leaf");

  const IntervalRef Is = I.dual(), Js = J.dual();
  std::vector<BoundaryPoint> candidates = endpoints(chords_);
  candidates.insert(candidates.end(), extra_candidates.begin(), extra_candidates.end());
  // The two arcs of I* n J*.
  if (I.end() != J.start()) candidates.push_back(point_between(I.end(), J.start()));
  if (J.end() != I.start()) candidates.push_back(point_between(J.end(), I.start()));

  for (const auto& p : candidates) {
    if (!laminar::contains(Is, p) || !laminar::contains(Js, p)) continue;
    std::optional<IntervalRef> best;
    for (const auto& c : chords_) {
      for (auto side : {IntervalRef::Side::Inner, IntervalRef::Side::Outer}) {
        IntervalRef K{c, side};
        if (!laminar::contains(K, p) || !subset(K, Is) || !subset(K, Js)) continue;
        if (!best || subset(*best, K)) best = std::move(K);
      }
    }
    if (!best) continue;
    const Gap& g = gap_with(*best);
    const IntervalRef* holds_i = nullptr;
    const IntervalRef* holds_j = nullptr;
    for (const auto& U : g.intervals) {
      if (!holds_i && subset(I, U)) holds_i = &U;
      if (!holds_j && subset(J, U)) holds_j = &U;
    }
    if (holds_i && holds_j && !g.is_leaf()) return Separation{g, p, *best, *holds_i, *holds_j};
  }
  return NotSeparated{};
}

SeparationResult separate_distinct_pair(const std::vector<Chord>& chords, const IntervalRef& I, const IntervalRef& J) {
  return GapIndex(chords).separate(I, J);
}

std::vector<Chord> LaminationSystem::truncation(int depth) const {
  std::vector<Chord> out = generator(depth);
  canonicalize(out);
  return out;
}

double side_approach(const std::vector<Chord>& chords, const IntervalRef& I) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : chords) {
    if (c == I.chord) continue;
    for (auto side : {IntervalRef::Side::Inner, IntervalRef::Side::Outer}) {
      const IntervalRef S{c, side};
      if (!subset(S, I)) continue;
      best = std::min(best, std::max(turn_distance(S.start(), I.start()), turn_distance(S.end(), I.end())));
    }
  }
  return best;
}

bool isolated_surrogate(const LaminationSystem& L, const IntervalRef& I, int n, int m) {
  double floor_value = std::numeric_limits<double>::infinity();
  bool seen = false;
  for (int k = n + 1; k <= m; ++k) {
    const double d = side_approach(L.truncation(k), I);
    if (!std::isfinite(d)) continue;
    if (seen && d < floor_value) return false;
    floor_value = std::min(floor_value, d);
    seen = true;
  }
  return true;
}

}  // namespace laminar
