#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "laminar/boundary.hpp"
#include "laminar/field.hpp"

namespace laminar::testing {

// Small hand-rolled generators for property tests. Everything is seeded so a
// failing case can be reproduced from the test name alone.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  std::mt19937_64& engine() { return rng_; }

  mpq_class rational(long max_num = 50, long max_den = 20) {
    mpq_class q(integer(-max_num, max_num), integer(1, max_den));
    q.canonicalize();
    return q;
  }

  FieldElem field(long max_num = 50, long max_den = 20) {
    return {rational(max_num, max_den), rational(max_num, max_den), rational(max_num, max_den),
            rational(max_num, max_den)};
  }

  // Field element that is sparse in the irrational part, closer to what the
  // constructions produce.
  FieldElem sparse_field() {
    FieldElem x(rational());
    switch (integer(0, 3)) {
      case 1: return x + FieldElem::sqrt2();
      case 2: return x + FieldElem::sqrt3();
      case 3: return x + field(3, 4);
      default: return x;
    }
  }

  BoundaryPoint point(Chart chart) {
    switch (chart) {
      case Chart::ExtReal:
        if (integer(0, 19) == 0) return BoundaryPoint::infinity();
        return BoundaryPoint::real(sparse_field());
      case Chart::DiskAngle:
        return BoundaryPoint::angle(sparse_field());
      case Chart::SignedExp: {
        const long r = integer(0, 19);
        if (r == 0) return BoundaryPoint::exp_zero();
        if (r == 1) return BoundaryPoint::exp_infinity();
        return BoundaryPoint::exp(coin() ? 1 : -1, sparse_field());
      }
    }
    return BoundaryPoint::infinity();
  }

  std::vector<BoundaryPoint> distinct_points(Chart chart, std::size_t n) {
    std::vector<BoundaryPoint> out;
    while (out.size() < n) {
      BoundaryPoint p = point(chart);
      bool fresh = true;
      for (const auto& q : out) fresh = fresh && q != p;
      if (fresh) out.push_back(std::move(p));
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

inline constexpr Chart kAllCharts[] = {Chart::ExtReal, Chart::DiskAngle, Chart::SignedExp};

}  // namespace laminar::testing
