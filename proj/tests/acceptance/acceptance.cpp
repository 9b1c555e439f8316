// Acceptance run: one line per criterion, exit status 1 when any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "laminar/constructions.hpp"
#include "laminar/dynamics.hpp"
#include "laminar/error.hpp"
#include "laminar/lamination.hpp"
#include "laminar/moebius.hpp"
#include "laminar/render.hpp"
#include "laminar/serialize.hpp"
#include "support.hpp"

using namespace laminar;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages and a running pass flag.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  std::size_t failures() const { return failures_; }
  Outcome outcome(const std::string& summary) const {
    std::string detail = summary;
    for (const auto& n : notes_) detail += "; " + n;
    if (failures_ > notes_.size()) detail += "; ... " + std::to_string(failures_) + " failures in total";
    return {failures_ == 0, detail};
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

BoundaryPoint r(long n, long d = 1) { return BoundaryPoint::real(FieldElem::rational(n, d)); }
const BoundaryPoint kInf = BoundaryPoint::infinity();

const std::array<ElementaryKind, 5> kKinds = {ElementaryKind::Trivial, ElementaryKind::FiniteCyclic,
                                              ElementaryKind::Parabolic, ElementaryKind::Hyperbolic,
                                              ElementaryKind::Dihedral};
constexpr int kCyclicOrder = 5;

const Col3Collection& collection(ElementaryKind kind) {
  static std::map<ElementaryKind, Col3Collection> cache;
  auto it = cache.find(kind);
  if (it == cache.end())
    it = cache.emplace(kind, elementary_col3(kind, kind == ElementaryKind::FiniteCyclic ? kCyclicOrder : 0)).first;
  return it->second;
}

struct Construction {
  std::string name;
  std::function<std::vector<Chord>(int)> build;
  std::size_t polygon = 3;  // vertex count allowed for one designated non-triangular gap
};

std::vector<Construction> catalog() {
  std::vector<Construction> out;
  out.push_back({"farey", farey_tessellation});
  const FieldElem s2 = FieldElem::sqrt2(), s3 = FieldElem::sqrt3();
  const std::vector<std::pair<std::string, DenseSetSpec>> fills = {
      {"half_farey/rationals", DenseSetSpec::rationals().with_seeds({r(0), r(1)})},
      {"half_farey/rationals+sqrt2",
       DenseSetSpec::rationals(s2).with_seeds({BoundaryPoint::real(s2), BoundaryPoint::real(s2 + FieldElem(1))})},
      {"half_farey/angles", DenseSetSpec::angles().with_seeds(
                                {BoundaryPoint::angle(FieldElem(0)), BoundaryPoint::angle(FieldElem::rational(1, 2))})},
      {"half_farey/angles+sqrt3",
       DenseSetSpec::angles(s3).with_seeds(
           {BoundaryPoint::angle(s3), BoundaryPoint::angle(s3 + FieldElem::rational(1, 2))})},
      {"half_farey/signed_exp", DenseSetSpec::signed_exp().with_seeds(
                                    {BoundaryPoint::exp(1, FieldElem(0)), BoundaryPoint::exp(1, FieldElem(1))})},
  };
  for (const auto& [name, spec] : fills) out.push_back({name, [spec](int d) { return half_farey(spec, d); }});
  out.push_back({"square", [](int d) {
                   const Arc I{BoundaryPoint::exp(-1, FieldElem(1)), BoundaryPoint::exp(-1, FieldElem(0))};
                   const Arc J{BoundaryPoint::exp(1, FieldElem(0)), BoundaryPoint::exp(1, FieldElem(1))};
                   return square_triangulation(I, J, DenseSetSpec::signed_exp(), d);
                 }});
  for (auto kind : kKinds)
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& sys = collection(kind).systems[i];
      out.push_back({std::string(to_string(kind)) + "/" + sys.name, [&sys](int d) { return sys.truncation(d); },
                     kind == ElementaryKind::FiniteCyclic ? static_cast<std::size_t>(kCyclicOrder) : 3});
    }
  return out;
}

const std::vector<Chord>& truncation(const Construction& c, int depth) {
  static std::map<std::pair<std::string, int>, std::vector<Chord>> cache;
  auto key = std::make_pair(c.name, depth);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, c.build(depth)).first;
  return it->second;
}

const std::vector<Chord>& system_truncation(ElementaryKind kind, std::size_t i, int depth) {
  static const auto all = catalog();
  const std::string name = std::string(to_string(kind)) + "/" + collection(kind).systems[i].name;
  for (const auto& c : all)
    if (c.name == name) return truncation(c, depth);
  throw std::logic_error("no construction " + name);
}

// Sign of the cyclic order of three distinct extended rationals: the parity
// of the permutation sorting them, with infinity below every real.
int rational_orientation(const std::array<std::optional<mpq_class>, 3>& v) {
  auto less = [&](std::size_t i, std::size_t j) {
    if (!v[i]) return static_cast<bool>(v[j]);
    if (!v[j]) return false;
    return *v[i] < *v[j];
  };
  int inversions = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (less(j, i)) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

// ---------------------------------------------------------------------------

Outcome circular_order_axioms() {
  laminar::testing::Gen gen(101);
  Tally t;
  std::size_t quadruples = 0, oracle = 0;
  for (int i = 0; i < 10000; ++i) {
    const Chart chart = laminar::testing::kAllCharts[i % 3];
    std::vector<BoundaryPoint> q(4);
    for (auto& p : q) p = gen.point(chart);
    if (gen.integer(0, 9) == 0) q[static_cast<std::size_t>(gen.integer(1, 3))] = q[0];
    ++quadruples;
    auto phi = [&](std::size_t a, std::size_t b, std::size_t c) { return to_int(circular_order(q[a], q[b], q[c])); };
    for (auto [a, b, c] : {std::array<std::size_t, 3>{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}) {
      const bool repeated = q[a] == q[b] || q[b] == q[c] || q[a] == q[c];
      t.expect((phi(a, b, c) == 0) == repeated, "DV fails on " + q[a].encode() + " " + q[b].encode() + " " + q[c].encode());
    }
    t.expect(phi(1, 2, 3) - phi(0, 2, 3) + phi(0, 1, 3) - phi(0, 1, 2) == 0, "cocycle fails at quadruple " + std::to_string(i));
  }
  // Exact oracle on extended rationals.
  for (int i = 0; i < 3000; ++i) {
    std::array<std::optional<mpq_class>, 3> v;
    std::array<BoundaryPoint, 3> p;
    for (std::size_t k = 0; k < 3; ++k) {
      if (gen.integer(0, 9) == 0) {
        p[k] = kInf;
      } else {
        v[k] = gen.rational(30, 12);
        p[k] = BoundaryPoint::real(FieldElem(*v[k]));
      }
    }
    if (p[0] == p[1] || p[1] == p[2] || p[0] == p[2]) continue;
    ++oracle;
    t.expect(to_int(circular_order(p[0], p[1], p[2])) == rational_orientation(v), "orientation differs from the oracle");
  }
  std::size_t invariance = 0;
  for (int m = 0; m < 100; ++m) {
    ChartAction h;
    const Chart chart = laminar::testing::kAllCharts[m % 3];
    if (chart == Chart::ExtReal) {
      FieldElem a, b, c, d;
      do {
        a = gen.sparse_field();
        b = gen.sparse_field();
        c = gen.sparse_field();
        d = gen.sparse_field();
      } while (field_sign(a * d - b * c) <= 0);
      h = MobiusMap(a, b, c, d);
    } else if (chart == Chart::DiskAngle) {
      h = AngleShift(gen.sparse_field());
    } else {
      h = ExpAffine(gen.coin() ? 1 : -1, gen.sparse_field());
    }
    for (int k = 0; k < 100; ++k) {
      const auto p = gen.distinct_points(chart, 3);
      ++invariance;
      t.expect(circular_order(p[0], p[1], p[2]) == circular_order(act(h, p[0]), act(h, p[1]), act(h, p[2])),
               "invariance fails under " + action_key(h));
    }
  }
  return t.outcome(std::to_string(quadruples) + " quadruples, " + std::to_string(oracle) + " oracle triples, " +
                   std::to_string(invariance) + " invariance triples, " + std::to_string(t.failures()) + " violations");
}

Outcome lamination_axioms() {
  Tally t;
  std::size_t runs = 0, chords = 0;
  for (const auto& c : catalog())
    for (int d = 1; d <= 6; ++d) {
      const auto& chs = truncation(c, d);
      ++runs;
      chords += chs.size();
      const auto report = validate_truncation(chs);
      t.expect(report.valid(), c.name + " depth " + std::to_string(d) + ": " +
                                   (report.valid() ? std::string() : report.violations.front().describe()));
    }
  return t.outcome(std::to_string(runs) + " truncations, " + std::to_string(chords) + " chords, " +
                   std::to_string(t.failures()) + " violations");
}

Outcome interval_involution() {
  laminar::testing::Gen gen(303);
  const auto all = catalog();
  Tally t;
  for (int i = 0; i < 1000; ++i) {
    const auto& c = all[static_cast<std::size_t>(gen.integer(0, static_cast<long>(all.size()) - 1))];
    const auto& full = truncation(c, static_cast<int>(gen.integer(1, 4)));
    std::vector<Chord> sub;
    for (const auto& ch : full)
      if (gen.coin()) sub.push_back(ch);
    if (sub.empty()) sub.push_back(full.front());
    canonicalize(sub);
    const auto family = to_intervals(sub);
    std::set<std::string> fam, dual;
    for (const auto& I : family) fam.insert(I.encode());
    for (const auto& I : family) dual.insert(I.dual().encode());
    t.expect(family.size() == 2 * sub.size() && fam.size() == family.size() && fam == dual,
             c.name + ": interval family is not the dual-closed double of the chords");
    t.expect(validate_family(family).valid(), c.name + ": interval family fails the axioms");
    t.expect(to_chords(family) == sub, c.name + ": chords do not come back");
    std::set<std::string> again;
    for (const auto& I : to_intervals(to_chords(family))) again.insert(I.encode());
    t.expect(again == fam, c.name + ": intervals do not come back");
  }
  return t.outcome("1000 random sub-laminations, " + std::to_string(t.failures()) + " mismatches");
}

Outcome very_fullness() {
  Tally shape, count;
  std::ostringstream growth;
  for (const auto& c : catalog()) {
    std::map<std::size_t, std::size_t> polygons;
    for (const auto& g : gaps(truncation(c, 6))) {
      if (g.provisional || g.is_leaf()) continue;
      ++polygons[g.vertices().size()];
    }
    for (const auto& [n, k] : polygons) {
      const bool ok = n == 3 || (n == c.polygon && k == 1);
      shape.expect(ok, c.name + ": " + std::to_string(k) + " gap(s) with " + std::to_string(n) + " vertices");
    }
    std::vector<std::size_t> provisional;
    for (int d = 1; d <= 6; ++d) {
      const auto gs = gaps(truncation(c, d));
      provisional.push_back(static_cast<std::size_t>(
          std::count_if(gs.begin(), gs.end(), [](const Gap& g) { return g.provisional; })));
    }
    for (int d = 1; d <= 4; ++d) {
      const auto a = provisional[static_cast<std::size_t>(d - 1)], b = provisional[static_cast<std::size_t>(d + 1)];
      count.expect(b < a, c.name + " provisional gaps " + std::to_string(a) + " at depth " + std::to_string(d) +
                              " -> " + std::to_string(b) + " at depth " + std::to_string(d + 2));
    }
    if (c.name == "farey" || c.name == "parabolic/L0") {
      growth << " " << c.name << " [";
      for (std::size_t k = 0; k < provisional.size(); ++k) growth << (k ? "," : "") << provisional[k];
      growth << "]";
    }
  }
  Outcome out;
  out.pass = shape.failures() == 0 && count.failures() == 0;
  out.detail = "polygon clause: " + shape.outcome(std::to_string(shape.failures()) + " bad gaps").detail +
               " | decrease clause: " +
               count.outcome(std::to_string(count.failures()) + " of " + std::to_string(catalog().size() * 4) +
                             " steps do not decrease; provisional counts d=1..6:" + growth.str())
                   .detail;
  return out;
}

Outcome pants_like() {
  Tally t;
  std::ostringstream summary;
  for (auto kind : kKinds) {
    const auto& col = collection(kind);
    std::array<std::set<std::string>, 3> ends;
    std::array<ChordSet, 3> sets;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& chs = system_truncation(kind, i, 6);
      sets[i] = ChordSet(chs.begin(), chs.end());
      for (const auto& c : chs) {
        ends[i].insert(c.lo().encode());
        ends[i].insert(c.hi().encode());
      }
    }
    const std::set<std::string> expected =
        kind == ElementaryKind::Parabolic ? std::set<std::string>{kInf.encode()} : std::set<std::string>{};
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b) {
        bool shared = false;
        for (const auto& c : sets[a]) shared = shared || sets[b].count(c);
        t.expect(!shared, std::string(to_string(kind)) + ": systems share a chord");
        std::set<std::string> common;
        std::set_intersection(ends[a].begin(), ends[a].end(), ends[b].begin(), ends[b].end(),
                              std::inserter(common, common.begin()));
        std::string listed;
        for (const auto& e : common) listed += " " + e;
        t.expect(common == expected, std::string(to_string(kind)) + ": common endpoints{" + listed + " }");
        const auto st = strongly_transverse(system_truncation(kind, a, 6), system_truncation(kind, b, 6));
        std::set<std::string> lib;
        for (const auto& e : st.common_endpoints) lib.insert(e.encode());
        t.expect(lib == common, std::string(to_string(kind)) + ": strongly_transverse disagrees with the set oracle");
      }
    std::vector<BoundaryPoint> declared = col.cusps;
    std::sort(declared.begin(), declared.end(), LinearLess{});
    const auto found = cusp_points(col.generators, 6);
    t.expect(found == declared, std::string(to_string(kind)) + ": cusp_points differs from the declared cusps");
    summary << " " << to_string(kind) << ":" << found.size();
  }
  return t.outcome("cusps at radius 6" + summary.str() + ", " + std::to_string(t.failures()) + " failures");
}

Outcome invariance() {
  Tally t;
  std::size_t images = 0;
  for (auto kind : kKinds) {
    const auto& col = collection(kind);
    std::vector<ChartAction> actions;
    for (const auto& g : col.generators) {
      actions.push_back(g);
      actions.push_back(inverse(g));
    }
    for (std::size_t i = 0; i < 3; ++i)
      for (int d = 1; d <= 5; ++d) {
        const auto& next = system_truncation(kind, i, d + 1);
        const ChordSet have(next.begin(), next.end());
        for (const auto& c : system_truncation(kind, i, d))
          for (const auto& g : actions) {
            ++images;
            const Chord img = image(g, c);
            t.expect(have.count(img) > 0, std::string(to_string(kind)) + " depth " + std::to_string(d) + ": " +
                                              img.encode() + " missing");
          }
      }
  }
  return t.outcome(std::to_string(images) + " images, " + std::to_string(t.failures()) + " misses");
}

Outcome separation() {
  Tally t;
  std::mt19937_64 rng(707);
  std::size_t found = 0, tried = 0;
  const auto& col = collection(ElementaryKind::Parabolic);
  for (std::size_t s = 0; s < 3; ++s) {
    const GapIndex idx(system_truncation(ElementaryKind::Parabolic, s, 5));
    const auto& chs = idx.chords();
    std::uniform_int_distribution<std::size_t> pick(0, chs.size() - 1);
    const std::size_t want = s == 0 ? 34 : 33;
    std::set<std::pair<std::string, std::string>> seen;
    std::size_t got = 0;
    while (got < want && tried < 1'000'000) {
      ++tried;
      const IntervalRef I{chs[pick(rng)], rng() % 2 ? IntervalRef::Side::Inner : IntervalRef::Side::Outer};
      const IntervalRef J{chs[pick(rng)], rng() % 2 ? IntervalRef::Side::Inner : IntervalRef::Side::Outer};
      if (I.chord == J.chord || !disjoint(I, J)) continue;
      if (!seen.insert({I.encode(), J.encode()}).second) continue;
      if (!idx.admits_witness(I, J)) continue;
      ++got;
      ++found;
      const auto res = idx.separate(I, J);
      const auto* sep = std::get_if<Separation>(&res);
      const std::string where = col.systems[s].name + " " + I.encode() + " " + J.encode();
      t.expect(sep != nullptr, where + ": not separated");
      if (!sep) continue;
      t.expect(!sep->gap.is_leaf(), where + ": separating gap is a leaf");
      const auto& ks = sep->gap.intervals;
      t.expect(std::any_of(ks.begin(), ks.end(), [&](const IntervalRef& K) { return subset(I, K); }),
               where + ": I is not inside the gap's intervals");
      t.expect(std::any_of(ks.begin(), ks.end(), [&](const IntervalRef& K) { return subset(J, K); }),
               where + ": J is not inside the gap's intervals");
      const auto enc = sep->gap.encode();
      t.expect(std::any_of(idx.gaps().begin(), idx.gaps().end(), [&](const Gap& g) { return g.encode() == enc; }),
               where + ": returned gap is not a gap of the truncation");
    }
    t.expect(got == want, col.systems[s].name + ": only " + std::to_string(got) + " witnessed pairs found");
  }
  return t.outcome(std::to_string(found) + " pairs separated out of " + std::to_string(tried) + " draws, " +
                   std::to_string(t.failures()) + " failures");
}

using IntMat = std::array<long, 4>;

IntMat mul(const IntMat& x, const IntMat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

IntMat projective(IntMat m) {
  if (m[0] < 0 || (m[0] == 0 && m[1] < 0))
    for (auto& e : m) e = -e;
  return m;
}

bool perfect_square(long n) {
  if (n < 0) return false;
  const long s = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
  for (long k = std::max(0L, s - 2); k <= s + 2; ++k)
    if (k * k == n) return true;
  return false;
}

Outcome fixed_point_lemma() {
  Tally t;
  const std::vector<ChartAction> modular = {MobiusMap(0, -1, 1, 0), MobiusMap::translation(FieldElem(1))};
  const auto report = fixed_point_lemma_check(modular, 6);
  t.expect(report.holds(), "PSL(2,Z): shared fixed point " +
                               (report.shared.empty() ? std::string() : report.shared.front().first));

  // Integer oracle: ball of radius 6 in {T, T^-1, S} up to sign.
  std::set<IntMat> seen{{1, 0, 0, 1}};
  std::vector<IntMat> shell{{1, 0, 0, 1}};
  for (int level = 0; level < 6; ++level) {
    std::vector<IntMat> next;
    for (const auto& m : shell)
      for (const IntMat& l : {IntMat{1, 1, 0, 1}, IntMat{1, -1, 0, 1}, IntMat{0, -1, 1, 0}}) {
        const IntMat w = projective(mul(m, l));
        if (seen.insert(w).second) next.push_back(w);
      }
    shell = std::move(next);
  }
  std::size_t parabolic = 0, hyperbolic = 0, rational_hyperbolic = 0;
  for (const auto& m : seen) {
    const long tr = std::abs(m[0] + m[3]);
    if (tr == 2 && !(m[1] == 0 && m[2] == 0)) ++parabolic;
    if (tr > 2) {
      ++hyperbolic;
      if (m[2] == 0 || perfect_square(tr * tr - 4)) ++rational_hyperbolic;
    }
  }
  t.expect(report.elements == seen.size(), "PSL(2,Z): ball size " + std::to_string(report.elements) + " vs oracle " +
                                               std::to_string(seen.size()));
  t.expect(report.parabolic == parabolic && report.hyperbolic == hyperbolic, "PSL(2,Z): type counts differ from oracle");
  t.expect(rational_hyperbolic == 0, "oracle found a hyperbolic element with a rational fixed point");

  std::ostringstream summary;
  summary << "PSL(2,Z) " << report.elements << " elements (" << report.hyperbolic << " hyperbolic, " << report.parabolic
          << " parabolic)";
  for (auto kind : kKinds) {
    const auto rep = fixed_point_lemma_check(collection(kind).generators, 6);
    t.expect(rep.holds(), std::string(to_string(kind)) + ": shared fixed point");
    summary << ", " << to_string(kind) << " " << rep.elements;
  }
  return t.outcome(summary.str());
}

Outcome angel_wings_criterion() {
  Tally t;
  const ChartAction g = MobiusMap::translation(FieldElem(1));
  const auto wings = angel_wings(g, IntervalRef::from_endpoints(r(0), kInf), 20);
  t.expect(wings.size() == 20, "wrong number of wings");
  std::vector<double> widths;
  for (std::size_t k = 0; k < wings.size(); ++k) {
    const long n = static_cast<long>(k) + 1;
    const auto& U = wings[k].U;
    t.expect(U.start() == r(n) && U.end() == r(-n), "U_" + std::to_string(n) + " is " + U.encode());
    t.expect(contains(U, kInf), "U_" + std::to_string(n) + " misses infinity");
    if (k > 0) {
      const auto& prev = wings[k - 1].U;
      t.expect(contains(prev, U.start()) && contains(prev, U.end()) && subset(U, prev),
               "closure of U_" + std::to_string(n) + " is not inside U_" + std::to_string(n - 1));
    }
    widths.push_back(1 - 2 * std::atan(static_cast<double>(n)) / std::numbers::pi);
  }
  const auto lamination = orbit_closure({Chord(r(0), kInf)}, {g}, 25).chords;
  const auto report = check_angel_wings(wings, kInf, &lamination);
  t.expect(report.holds(), "check_angel_wings fails");
  for (std::size_t k = 0; k < widths.size(); ++k) {
    t.expect(std::abs(report.widths[k] - widths[k]) < 1e-12, "width differs from 1 - 2 atan(k)/pi");
    if (k > 0) t.expect(widths[k] < widths[k - 1], "widths do not decrease");
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "20 wings, width %.4f -> %.4f turns", widths.front(), widths.back());
  return t.outcome(buf);
}

Outcome sampler(bool rotation) {
  Tally t;
  const auto K = sample_triples(1);
  const auto start = std::chrono::steady_clock::now();
  std::string summary;
  if (!rotation) {
    const auto rep = triple_escape_sampler(power_sequence(MobiusMap(2, 0, 0, FieldElem::rational(1, 2))), K);
    t.expect(rep.verdict == Verdict::ConvergenceLike, std::string("verdict ") + to_string(rep.verdict));
    summary = std::string(to_string(rep.verdict)) + ", " + std::to_string(rep.collapsed) + "/" +
              std::to_string(rep.samples) + " collapsed";
  } else {
    const auto seq = power_sequence(AngleShift(FieldElem::sqrt2()));
    const auto rep = triple_escape_sampler(seq, K);
    t.expect(rep.verdict == Verdict::Violation, std::string("verdict ") + to_string(rep.verdict));
    t.expect(rep.witness && replay_witness(seq, *rep.witness), "witness does not replay");
    summary = std::string(to_string(rep.verdict)) + ", witness with " +
              std::to_string(rep.witness ? rep.witness->returns.size() : 0) + " returns";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.expect(secs < 5, "took " + std::to_string(secs) + " s");
  return t.outcome(summary);
}

Outcome sampler_criterion() {
  const auto a = sampler(false);
  const auto b = sampler(true);
  return {a.pass && b.pass, "diag(2,1/2): " + a.detail + " | rotation by sqrt2: " + b.detail};
}

Outcome classification() {
  std::mt19937_64 rng(1111);
  std::uniform_int_distribution<long> coef(-40, 40);
  Tally t;
  std::map<std::string, std::size_t> seen;
  auto random_sl2 = [&]() -> IntMat {
    while (true) {
      const long a = coef(rng), c = coef(rng);
      long g = std::gcd(a, c);
      if (g != 1) continue;
      // Extended Euclid for a d - b c = 1.
      long old_r = a, rr = c, old_s = 1, s = 0, old_t = 0, tt = 1;
      while (rr != 0) {
        const long q = old_r / rr;
        std::tie(old_r, rr) = std::make_pair(rr, old_r - q * rr);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, tt) = std::make_pair(tt, old_t - q * tt);
      }
      long d = old_s, b = -old_t;
      if (old_r == -1) {
        d = -d;
        b = -b;
      }
      const long k = coef(rng) / 4;
      return {a, b + k * a, c, d + k * c};
    }
  };
  for (int i = 0; i < 1000; ++i) {
    IntMat m = random_sl2();
    // A third are conjugates of parabolic or elliptic elements.
    if (i % 3 == 1) {
      const IntMat h = random_sl2();
      const IntMat hinv = {h[3], -h[1], -h[2], h[0]};
      const IntMat cores[] = {{1, 1 + i % 5, 0, 1}, {0, -1, 1, 0}, {0, -1, 1, 1}, {1, -1, 1, 0}, {-1, 2, 0, -1}};
      m = mul(mul(h, cores[i % 5]), hinv);
    }
    const long det = m[0] * m[3] - m[1] * m[2];
    t.expect(det == 1, "generator produced determinant " + std::to_string(det));
    const MobiusMap g{FieldElem(m[0]), FieldElem(m[1]), FieldElem(m[2]), FieldElem(m[3])};
    const long tr = std::abs(m[0] + m[3]);
    const bool identity = m[1] == 0 && m[2] == 0 && m[0] == m[3];
    ElementType by_trace = tr < 2 ? ElementType::Elliptic : tr == 2 ? ElementType::Parabolic : ElementType::Hyperbolic;
    if (identity) by_trace = ElementType::Identity;
    const auto fps = fixed_points(g);
    ElementType by_count = fps.size() == 2 ? ElementType::Hyperbolic
                           : fps.size() == 1 ? ElementType::Parabolic
                                             : (identity ? ElementType::Identity : ElementType::Elliptic);
    t.expect(by_trace == by_count && classify(g) == by_trace,
             "[" + std::to_string(m[0]) + " " + std::to_string(m[1]) + "; " + std::to_string(m[2]) + " " +
                 std::to_string(m[3]) + "] trace says " + to_string(by_trace) + ", fixed points say " + to_string(by_count));
    for (const auto& f : fps)
      if (const auto* p = std::get_if<BoundaryPoint>(&f)) t.expect(act(g, *p) == *p, "fixed point is not fixed");
    ++seen[to_string(by_trace)];
  }
  std::string summary = "1000 matrices:";
  for (const auto& [k, n] : seen) summary += " " + k + " " + std::to_string(n);
  return t.outcome(summary + ", " + std::to_string(t.failures()) + " disagreements");
}

Outcome render_criterion() {
  Tally t;
  const fs::path dir = fs::temp_directory_path() / "laminar_acceptance";
  fs::create_directories(dir);
  const std::string bin = LAMINAR_BIN;
  const std::string a = (dir / "a.svg").string(), b = (dir / "b.svg").string();
  for (const auto& out : {a, b}) {
    const int status = std::system((bin + " --depth 3 --format svg build farey --out " + out).c_str());
    t.expect(status == 0, "laminar exited with status " + std::to_string(status));
  }
  const std::string svg = read_text(a);
  t.expect(svg == read_text(b), "two runs differ");
  t.expect(svg == render_svg({{"farey", farey_tessellation(3)}}), "CLI output differs from the library");

  const RenderSpec spec;
  const double mid = spec.size / 2.0, R = mid - spec.margin;
  static const std::regex arc(R"re(<path d="M ([-0-9.]+) ([-0-9.]+) A ([-0-9.]+) [-0-9.]+ 0 0 [01] ([-0-9.]+) ([-0-9.]+)"/>)re");
  std::size_t arcs = 0;
  double worst = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), arc); it != std::sregex_iterator(); ++it) {
    ++arcs;
    const double ux = (std::stod((*it)[1]) - mid) / R, uy = (mid - std::stod((*it)[2])) / R;
    const double vx = (std::stod((*it)[4]) - mid) / R, vy = (mid - std::stod((*it)[5])) / R;
    const double rad = std::stod((*it)[3]) / R;
    // Pole of the chord: intersection of the tangents at u and v.
    const double det = ux * vy - uy * vx;
    const double cx = (vy - uy) / det, cy = (ux - vx) / det;
    worst = std::max(worst, std::abs(cx * cx + cy * cy - rad * rad - 1));
  }
  t.expect(arcs >= 7, "only " + std::to_string(arcs) + " arcs");
  t.expect(worst < 1e-9, "residual " + std::to_string(worst));
  for (const auto& c : farey_tessellation(3))
    t.expect(orthogonality_residual(chord_geometry(c)) < 1e-9, "library residual too large for " + c.encode());
  fs::remove_all(dir);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu arcs, worst residual %.2e, byte-identical runs", arcs, worst);
  return t.outcome(buf);
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
  double budget = 0;  // seconds, 0 for none
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "circular-order axioms", circular_order_axioms, 5},
      {2, "lamination-system axioms, depths 1-6", lamination_axioms, 10},
      {3, "chord set / interval family involution", interval_involution},
      {4, "very-fullness surrogate", very_fullness},
      {5, "pants-like collections at depth 6", pants_like},
      {6, "invariance with depth slack", invariance},
      {7, "separation of distinct pairs", separation},
      {8, "fixed-point lemma", fixed_point_lemma},
      {9, "angel wings", angel_wings_criterion},
      {10, "triple escape sampler", sampler_criterion},
      {11, "classification oracle", classification},
      {12, "SVG rendering", render_criterion},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0 && secs >= c.budget) {
      out.pass = false;
      out.detail += "; over the " + std::to_string(static_cast<int>(c.budget)) + " s budget";
    }
    if (!out.pass) ++failed;
    std::printf("%s criterion %2d  %-42s %7.2fs  %s\n", out.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
