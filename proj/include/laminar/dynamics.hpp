#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "laminar/boundary.hpp"
#include "laminar/lamination.hpp"
#include "laminar/moebius.hpp"

namespace laminar {

// Fixed points of the parabolic elements of the word ball, sorted in the
// cut order.
std::vector<BoundaryPoint> cusp_points(const std::vector<ChartAction>& generators, int radius);

struct FixedPointLemmaReport {
  std::size_t elements = 0, hyperbolic = 0, parabolic = 0;
  // Pairs (hyperbolic, parabolic) of action keys sharing a fixed point.
  std::vector<std::pair<std::string, std::string>> shared;
  bool holds() const { return shared.empty(); }
};

// Exact check that no hyperbolic element of the ball shares a fixed point
// with a parabolic one.
FixedPointLemmaReport fixed_point_lemma_check(const std::vector<ChartAction>& generators, int radius);

// Length of the counterclockwise arc of I, in turns. Floating point.
double width_turns(const IntervalRef& I);

// closure(A) is contained in the open arc B.
bool closure_subset(const IntervalRef& A, const IntervalRef& B);

struct AngelWing {
  IntervalRef U;         // forward, p and backward glued together
  IntervalRef forward;   // g^k(I)
  IntervalRef backward;  // g^-k(I*)
};

// U_1, ..., U_count for the parabolic g fixing p, where I is a side of a
// leaf at p. Throws NotParabolic, LeafNotAtFixedPoint, BadIntervalChoice.
std::vector<AngelWing> angel_wings(const ChartAction& g, const IntervalRef& I, int count);

struct AngelWingsReport {
  bool nested = true;      // closure(U_{k+1}) inside U_k
  bool decomposed = true;  // U_k = I_k + {p} + J_k, I_k and J_k disjoint (and in L when given)
  bool shrinking = true;   // widths strictly decrease and the last is below the tolerance
  std::vector<double> widths;
  bool holds() const { return nested && decomposed && shrinking; }
};

AngelWingsReport check_angel_wings(const std::vector<AngelWing>& wings, const BoundaryPoint& p,
                                   const std::vector<Chord>* lamination = nullptr, double tolerance = 0.05);

// Prefix test: I_{k+1} inside I_k, widths non-increasing with the last below
// `tolerance` turns, and p (when given) in every closure.
bool quasi_rainbow_check(const std::vector<IntervalRef>& intervals, const std::optional<BoundaryPoint>& p = {},
                         double tolerance = 0.05);

// phi(p, p_1, p_2) is nonzero and phi(p, p_k, p_{k+1}) is the same for
// every k of the prefix.
bool monotone_convergence_check(const std::vector<BoundaryPoint>& points, const BoundaryPoint& p);

// Every g_k g_m^-1 (m < k) is hyperbolic, and the fixed pair of
// g_{k+1} g_k^-1 approaches {p, q}: distances in turns never increase and
// the last is below `tolerance`.
bool approximation_sequence_check(const std::vector<ChartAction>& maps, const BoundaryPoint& p,
                                  const BoundaryPoint& q, double tolerance = 1e-6);

// Verifies a supplied witness x: {I_n} is a quasi-rainbow at p and
// g_n(x) lies in I_n for every n.
bool pre_approximation_check(const std::vector<ChartAction>& maps, const std::vector<IntervalRef>& intervals,
                             const BoundaryPoint& p, const BoundaryPoint& x, double tolerance = 0.05);

// Sampling works on turn coordinates with a 2x2 matrix acting on the
// projective line; a rotation by r turns is the rotation matrix by pi r.
struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;
};
Mat2 multiply(const Mat2& x, const Mat2& y);  // normalized to max entry 1
Mat2 inverse(const Mat2& m);
Mat2 numeric_matrix(const ChartAction& g);
double act_turns(const Mat2& m, double t);

// g_n for n >= 1.
using MapSequence = std::function<Mat2(std::size_t)>;
MapSequence power_sequence(const ChartAction& g);

using Triple = std::array<double, 3>;  // turns in [0, 1)

double circle_distance(double s, double t);
double min_gap(const Triple& k);

// `count` triples with pairwise gaps at least `gap`, from a seeded mt19937_64.
std::vector<Triple> sample_triples(std::uint64_t seed, std::size_t count = 200, double gap = 0.05);

struct SamplerOptions {
  std::size_t horizon = 1000;
  double eps = 1e-6;
  double k_gap = 0.05;  // K is sampled from the triples with this gap
  double l_gap = 0.05;  // L is the compact set of triples with this gap
};

enum class Verdict { ConvergenceLike, Violation, Inconclusive };
const char* to_string(Verdict v) noexcept;

struct Witness {
  std::size_t triple_index = 0;
  Triple triple{};
  std::vector<std::size_t> returns;  // n with g_n(triple) in L
};

struct SequenceReport {
  Verdict verdict = Verdict::Inconclusive;
  std::size_t horizon = 0;
  std::size_t samples = 0;
  std::size_t collapsed = 0;     // triples collapsed from the middle of the horizon on
  std::size_t last_return = 0;   // largest n with some g_n(k) in L
  std::optional<double> attracting, repelling;  // turns
  std::optional<Witness> witness;
};

// Desk-scale test of proper discontinuity on triples. Throws
// DegenerateSample when a sampled triple has a gap below k_gap.
SequenceReport triple_escape_sampler(const MapSequence& g, const std::vector<Triple>& K, const SamplerOptions& opts = {});

// Recomputes the returns of a Violation witness.
bool replay_witness(const MapSequence& g, const Witness& w, const SamplerOptions& opts = {});

}  // namespace laminar
