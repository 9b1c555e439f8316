#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "laminar/boundary.hpp"
#include "laminar/lamination.hpp"
#include "laminar/moebius.hpp"

namespace laminar {

enum class DenseRule {
  Rationals,           // ExtReal: 0, 1, -1, 1/2, -1/2, 2, -2, ...
  RationalsShifted,    // ExtReal: the same sequence plus the shift
  RationalAngles,      // DiskAngle: 0, then x/(1+x) over the positive rationals
  ShiftedAngles,       // DiskAngle: the same sequence plus the shift, mod 1
  SignedExpRationals,  // SignedExp: (+,q), (-,q) over the signed rationals q
  SignedExpShifted,    // SignedExp: (+,q+s), (-,q+s), or (-,-q-s) when mirrored
};

Chart chart_of(DenseRule rule);
const char* to_string(DenseRule rule) noexcept;

// A countable dense subset of one chart, enumerated deterministically with
// the seed points first.
struct DenseSetSpec {
  DenseRule rule = DenseRule::Rationals;
  FieldElem shift;
  // SignedExpShifted only: the negative ray carries exponents -(q+s), which
  // makes the set symmetric under t -> -t.
  bool mirrored = false;
  std::vector<BoundaryPoint> seeds;

  Chart chart() const { return chart_of(rule); }
  DenseSetSpec with_seeds(std::vector<BoundaryPoint> s) const;

  static DenseSetSpec rationals(FieldElem shift = {});
  static DenseSetSpec angles(FieldElem shift = {});
  static DenseSetSpec signed_exp(FieldElem shift = {}, bool mirrored = false);
};

// Seeds first, then the rule's sequence with the seeds skipped. Injective.
class DenseEnumerator {
 public:
  explicit DenseEnumerator(DenseSetSpec spec);
  BoundaryPoint next();

 private:
  BoundaryPoint rule_point();
  mpq_class next_positive();
  mpq_class next_signed();

  DenseSetSpec spec_;
  std::size_t seed_pos_ = 0;
  mpq_class cw_;  // current Calkin-Wilf term
  bool cw_started_ = false, zero_done_ = false;
  std::deque<mpq_class> signed_queue_;
  std::deque<BoundaryPoint> point_queue_;
};

std::vector<BoundaryPoint> dense_prefix(const DenseSetSpec& spec, std::size_t n);
// Membership in the rule's set (seeds are not consulted).
bool dense_contains(const DenseSetSpec& spec, const BoundaryPoint& p);

// Recursive ideal triangulation of the closed counterclockwise arc from the
// first seed to the second. Each round inserts, into every undivided sub-arc,
// the first enumerated point inside it. Throws BadSeed, and Exhausted when
// `max_scan` enumerated points do not complete the rounds. With the rational
// rules the rounds insert mediants when the seeds are Farey neighbours (after
// removing the shift); other seeds can need very long scans.
std::vector<Chord> half_farey(const DenseSetSpec& spec, int depth, std::size_t max_scan = 2'000'000);

// Closed counterclockwise arc [from, to].
struct Arc {
  BoundaryPoint from, to;
};

// The ideal quadrilateral on the endpoints of I and J, one diagonal from
// the enumeration-least vertex, and half-Farey fills of I and J.
// Throws OverlappingArcs, and BadSeed when a corner is outside the set.
std::vector<Chord> square_triangulation(const Arc& I, const Arc& J, const DenseSetSpec& spec, int depth);

struct OrbitClosure {
  std::vector<Chord> chords;
  ValidationReport report;
};

// Union of g(seed) over the word ball of the given radius. Throws
// ChartMismatch when a generator acts on another chart.
OrbitClosure orbit_closure(const std::vector<Chord>& seed, const std::vector<ChartAction>& generators, int radius);

Chord image(const ChartAction& g, const Chord& c);

// Farey edges reached from the triangle {0, 1, inf} after depth - 1 rounds
// of mediant insertion on every boundary arc. Depth 0 is the single chord
// {0, inf}.
std::vector<Chord> farey_tessellation(int depth);

enum class ElementaryKind { Trivial, FiniteCyclic, Parabolic, Hyperbolic, Dihedral };
const char* to_string(ElementaryKind kind) noexcept;
// Throws UnsupportedKind.
ElementaryKind parse_elementary_kind(const std::string& name);

struct Col3Collection {
  ElementaryKind kind = ElementaryKind::Trivial;
  int order = 0;  // FiniteCyclic only
  std::array<LaminationSystem, 3> systems;
  std::vector<ChartAction> generators;
  std::vector<BoundaryPoint> cusps;
};

// Throws UnsupportedKind for FiniteCyclic with order < 2.
Col3Collection elementary_col3(ElementaryKind kind, int order = 0);

struct PairReport {
  std::size_t a = 0, b = 0;
  bool transverse = true;
  std::vector<BoundaryPoint> common_endpoints;
  std::vector<BoundaryPoint> undeclared;  // common endpoints that are not cusps
};

struct PantsLikeReport {
  std::vector<PairReport> pairs;
  bool holds() const;
};

PantsLikeReport pants_like_check(const Col3Collection& col, int depth);
// Same check on given truncations against a declared cusp set.
PantsLikeReport pants_like_check(const std::array<std::vector<Chord>, 3>& truncations,
                                 const std::vector<BoundaryPoint>& cusps);

}  // namespace laminar
