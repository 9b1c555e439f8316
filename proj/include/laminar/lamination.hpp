#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "laminar/boundary.hpp"

namespace laminar {

// Unordered pair of distinct boundary points of one chart, stored with
// lo < hi in the cut order of the chart.
class Chord {
 public:
  Chord(BoundaryPoint u, BoundaryPoint v);

  const BoundaryPoint& lo() const { return lo_; }
  const BoundaryPoint& hi() const { return hi_; }
  Chart chart() const { return lo_.chart(); }
  bool has_endpoint(const BoundaryPoint& p) const { return lo_ == p || hi_ == p; }

  friend bool operator==(const Chord& x, const Chord& y) { return x.lo_ == y.lo_ && x.hi_ == y.hi_; }
  friend bool operator!=(const Chord& x, const Chord& y) { return !(x == y); }
  std::size_t hash() const;
  std::string encode() const;

 private:
  BoundaryPoint lo_, hi_;
};

struct ChordHash {
  std::size_t operator()(const Chord& c) const { return c.hash(); }
};

// Cut order on chords: by lo, then by hi descending, so a chord precedes the
// chords nested inside it that share its lo endpoint.
bool chord_less(const Chord& x, const Chord& y);

// Sorts by chord_less and removes duplicates.
void canonicalize(std::vector<Chord>& chords);

using ChordSet = std::unordered_set<Chord, ChordHash>;

// One of the two open intervals complementary to a chord. Inner is the
// counterclockwise arc (lo, hi), Outer is (hi, lo).
struct IntervalRef {
  enum class Side : unsigned char { Inner, Outer };

  Chord chord;
  Side side = Side::Inner;

  const BoundaryPoint& start() const { return side == Side::Inner ? chord.lo() : chord.hi(); }
  const BoundaryPoint& end() const { return side == Side::Inner ? chord.hi() : chord.lo(); }
  IntervalRef dual() const { return {chord, side == Side::Inner ? Side::Outer : Side::Inner}; }
  // The side of `c` whose counterclockwise arc runs from `from` to the other endpoint.
  static IntervalRef from_endpoints(const BoundaryPoint& from, const BoundaryPoint& to);

  friend bool operator==(const IntervalRef& x, const IntervalRef& y) { return x.side == y.side && x.chord == y.chord; }
  friend bool operator!=(const IntervalRef& x, const IntervalRef& y) { return !(x == y); }
  std::size_t hash() const { return chord.hash() * 2 + (side == Side::Outer ? 1 : 0); }
  std::string encode() const;
};

struct IntervalHash {
  std::size_t operator()(const IntervalRef& i) const { return i.hash(); }
};

// Membership in the open arc (start, end).
bool contains(const IntervalRef& I, const BoundaryPoint& p);
// Membership in the closed arc [start, end].
bool closure_contains(const IntervalRef& I, const BoundaryPoint& p);
// I is a subset of J as open arcs.
bool subset(const IntervalRef& I, const IntervalRef& J);
bool disjoint(const IntervalRef& I, const IntervalRef& J);

// The two chords are not linked. Sharing an endpoint counts as unlinked.
bool unlinked(const Chord& c1, const Chord& c2);

// {I, I*} lies on J: I or I* is contained in J. The proper version asks for
// the closure to be contained.
bool lies_on(const Chord& leaf, const IntervalRef& J);
bool properly_lies_on(const Chord& leaf, const IntervalRef& J);

struct Violation {
  enum class Kind { EmptyFamily, MissingDual, NotLyingOn, LinkedPair, MixedCharts };
  Kind kind;
  std::vector<std::string> items;  // encoded chords or intervals involved
  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

// Conditions (1) and (2) for a finite chord set read as the family of both
// sides of every chord. (1) holds by construction, so violations are the
// empty family, mixed charts, and linked pairs (all of them are listed).
ValidationReport validate_truncation(const std::vector<Chord>& chords);

// Conditions (1) and (2) checked literally on a family of intervals.
ValidationReport validate_family(const std::vector<IntervalRef>& intervals);

// Both sides of every chord, in chord order.
std::vector<IntervalRef> to_intervals(const std::vector<Chord>& chords);
// The chords underlying a dual-closed family, canonicalized. Throws
// InvalidLamination when the family is not dual-closed.
std::vector<Chord> to_chords(const std::vector<IntervalRef>& intervals);

// A complementary region of a finite lamination, as the set of pairwise
// disjoint intervals facing away from it, in counterclockwise order.
struct Gap {
  std::vector<IntervalRef> intervals;
  // Some boundary arc between consecutive intervals is nondegenerate, so the
  // vertex set is infinite at this depth.
  bool provisional = false;
  bool is_leaf() const { return intervals.size() == 2 && intervals[0] == intervals[1].dual(); }
  // Finite vertex set of a non-provisional gap, in counterclockwise order.
  std::vector<BoundaryPoint> vertices() const;
  bool is_ideal_polygon() const { return !provisional; }
  std::string encode() const;
};

// All complementary regions; there are chords + 1 of them. Throws
// InvalidLamination when the chord set is empty or has a linked pair.
std::vector<Gap> gaps(const std::vector<Chord>& chords);

// C_p^I = { J in L : p in J, J subset of I }, largest first. Empty when p is
// not in I.
std::vector<IntervalRef> c_p_I(const std::vector<Chord>& chords, const BoundaryPoint& p, const IntervalRef& I);

struct Endpoint {};
struct NestedDepth {
  int depth = 0;
};
using RainbowProbe = std::variant<Endpoint, NestedDepth>;

// Endpoint when p is a chord endpoint, otherwise the length of the longest
// chain I_1 > I_2 > ... of intervals containing p.
RainbowProbe rainbow_probe(const std::vector<Chord>& chords, const BoundaryPoint& p);

// Endpoint set E(L), sorted in the cut order.
std::vector<BoundaryPoint> endpoints(const std::vector<Chord>& chords);
// No chord in common.
bool transverse(const std::vector<Chord>& a, const std::vector<Chord>& b);
struct StrongTransversality {
  bool strongly_transverse = true;
  std::vector<BoundaryPoint> common_endpoints;  // sorted in the cut order
};
StrongTransversality strongly_transverse(const std::vector<Chord>& a, const std::vector<Chord>& b);

struct Separation {
  Gap gap;
  BoundaryPoint witness;    // the point p
  IntervalRef extremal;     // the largest K with p in K inside I* and J*
  IntervalRef holds_I, holds_J;
};
struct NotSeparated {};
using SeparationResult = std::variant<Separation, NotSeparated>;

// Precomputed gap structure of one truncation, for repeated queries.
class GapIndex {
 public:
  explicit GapIndex(std::vector<Chord> chords);

  const std::vector<Chord>& chords() const { return chords_; }
  const std::vector<Gap>& gaps() const { return gaps_; }
  bool contains(const Chord& c) const { return set_.count(c) > 0; }
  // The gap having I as one of its intervals.
  const Gap& gap_with(const IntervalRef& I) const;

  // For a distinct pair {I, J} (disjoint, not a leaf, both in L) find a
  // non-leaf gap G with I and J each inside an element of G, following the
  // extremal-interval argument. Candidate points p are tried in this order:
  // E(L) in cut order, then `extra_candidates`, then one interior point of
  // each arc of I* n J*. Throws NotADistinctPair.
  SeparationResult separate(const IntervalRef& I, const IntervalRef& J,
                            const std::vector<BoundaryPoint>& extra_candidates = {}) const;

  // Some interval of L lies in I* n J*, so a witness p exists.
  bool admits_witness(const IntervalRef& I, const IntervalRef& J) const;

 private:
  std::vector<Chord> chords_;
  ChordSet set_;
  std::vector<Gap> gaps_;
  std::vector<std::size_t> inner_gap_, outer_gap_;  // per chord, the gap containing that side
};

SeparationResult separate_distinct_pair(const std::vector<Chord>& chords, const IntervalRef& I, const IntervalRef& J);

// Depth-parametrized generator of finite chord sets.
struct LaminationSystem {
  std::string name;
  Chart chart = Chart::ExtReal;
  std::string group;
  std::function<std::vector<Chord>(int)> generator;

  std::vector<Chord> truncation(int depth) const;
};

// Finite-depth stand-in for isolation of I: the closest approach of another
// chord on the I side to the chord of I (in turns, the larger of the two
// endpoint distances) does not decrease from depth n to depth m.
double side_approach(const std::vector<Chord>& chords, const IntervalRef& I);
bool isolated_surrogate(const LaminationSystem& L, const IntervalRef& I, int n, int m);

}  // namespace laminar
