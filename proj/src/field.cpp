#include "laminar/field.hpp"

#include <cmath>
#include <vector>

#include "laminar/error.hpp"

namespace laminar {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt6 = std::sqrt(6.0);

// Exact sign of p + q*sqrt2.
int sign_q2(const mpq_class& p, const mpq_class& q) {
  const int sp = sgn(p);
  const int sq = sgn(q);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Opposite signs: compare p^2 with 2 q^2.
  const mpq_class diff = p * p - 2 * q * q;
  return sp * sgn(diff);
}

// Cheap floating filter. Each mpq -> double conversion has relative error
// below 2^-52, so a result further from zero than 1e-14 times the sum of the
// absolute terms has the right sign. Returns 0 when the filter cannot decide.
int filtered_sign(const FieldElem& x) {
  const double ta = x.a().get_d();
  const double tb = x.b().get_d() * kSqrt2;
  const double tc = x.c().get_d() * kSqrt3;
  const double td = x.d().get_d() * kSqrt6;
  const double mag = std::fabs(ta) + std::fabs(tb) + std::fabs(tc) + std::fabs(td);
  if (!std::isfinite(mag) || mag > 1e300 || mag < 1e-300) return 0;
  const double sum = ta + tb + tc + td;
  if (std::fabs(sum) > 1e-14 * mag) return sum > 0 ? 1 : -1;
  return 0;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return mpq_class(n, d);
}

// Square root inside Q(sqrt2) of p + q*sqrt2, returned as (u, v) = u + v*sqrt2.
std::optional<std::pair<mpq_class, mpq_class>> q2_sqrt(const mpq_class& p, const mpq_class& q) {
  if (sgn(q) == 0) {
    if (auto r = rational_sqrt(p)) return std::pair{*r, mpq_class(0)};
    if (auto r = rational_sqrt(p / 2)) return std::pair{mpq_class(0), *r};
    return std::nullopt;
  }
  // (u + v sqrt2)^2 = u^2 + 2v^2 + 2uv sqrt2, so (u^2 - 2v^2)^2 = p^2 - 2q^2.
  auto s = rational_sqrt(p * p - 2 * q * q);
  if (!s) return std::nullopt;
  for (const mpq_class& cand : {mpq_class((p + *s) / 2), mpq_class((p - *s) / 2)}) {
    auto u = rational_sqrt(cand);
    if (!u || sgn(*u) == 0) continue;
    mpq_class v = q / (2 * *u);
    if (*u * *u + 2 * v * v == p) return std::pair{*u, v};
  }
  return std::nullopt;
}

using Q2 = std::pair<mpq_class, mpq_class>;

Q2 q2_mul(const Q2& x, const Q2& y) {
  return {x.first * y.first + 2 * x.second * y.second, x.first * y.second + x.second * y.first};
}

Q2 q2_div(const Q2& x, const Q2& y) {
  const mpq_class n = y.first * y.first - 2 * y.second * y.second;
  const Q2 conj{y.first, -y.second};
  Q2 num = q2_mul(x, conj);
  num.first /= n;
  num.second /= n;
  return num;
}

FieldElem from_tower(const Q2& x, const Q2& y) {
  // x + y*sqrt3 with x, y in Q(sqrt2).
  return {x.first, x.second, y.first, y.second};
}

}  // namespace

FieldElem::FieldElem(mpq_class a, mpq_class b, mpq_class c, mpq_class d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  a_.canonicalize();
  b_.canonicalize();
  c_.canonicalize();
  d_.canonicalize();
}

FieldElem FieldElem::rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return FieldElem(q);
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  a_ += o.a_;
  b_ += o.b_;
  c_ += o.c_;
  d_ += o.d_;
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  c_ -= o.c_;
  d_ -= o.d_;
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  if (is_rational() && o.is_rational()) {
    a_ *= o.a_;
    return *this;
  }
  // sqrt2*sqrt2 = 2, sqrt3*sqrt3 = 3, sqrt6*sqrt6 = 6, sqrt2*sqrt3 = sqrt6,
  // sqrt2*sqrt6 = 2 sqrt3, sqrt3*sqrt6 = 3 sqrt2.
  mpq_class na = a_ * o.a_ + 2 * b_ * o.b_ + 3 * c_ * o.c_ + 6 * d_ * o.d_;
  mpq_class nb = a_ * o.b_ + b_ * o.a_ + 3 * (c_ * o.d_ + d_ * o.c_);
  mpq_class nc = a_ * o.c_ + c_ * o.a_ + 2 * (b_ * o.d_ + d_ * o.b_);
  mpq_class nd = a_ * o.d_ + d_ * o.a_ + b_ * o.c_ + c_ * o.b_;
  a_ = std::move(na);
  b_ = std::move(nb);
  c_ = std::move(nc);
  d_ = std::move(nd);
  return *this;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (is_rational()) return FieldElem(mpq_class(1 / a_));
  // sigma2 negates sqrt2 (and sqrt6); x * sigma2(x) lies in Q(sqrt3).
  const FieldElem s2(a_, -b_, c_, -d_);
  const FieldElem y = *this * s2;
  const FieldElem s3y(y.a_, y.b_, -y.c_, -y.d_);
  const FieldElem norm = y * s3y;  // rational
  FieldElem r = s2 * s3y;
  const mpq_class n = norm.a_;
  r.a_ /= n;
  r.b_ /= n;
  r.c_ /= n;
  r.d_ /= n;
  return r;
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
  if (o.is_rational()) {
    if (sgn(o.a_) == 0) throw Error(ErrorCode::DivisionByZero, "division by zero");
    a_ /= o.a_;
    b_ /= o.a_;
    c_ /= o.a_;
    d_ /= o.a_;
    return *this;
  }
  return *this *= o.inverse();
}

FieldElem FieldElem::operator-() const { return {-a_, -b_, -c_, -d_}; }

double FieldElem::to_double() const {
  return a_.get_d() + b_.get_d() * kSqrt2 + c_.get_d() * kSqrt3 + d_.get_d() * kSqrt6;
}

std::string rational_to_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
  if (sgn(q.get_den()) == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string FieldElem::to_string() const {
  return rational_to_string(a_) + "," + rational_to_string(b_) + "," + rational_to_string(c_) +
         "," + rational_to_string(d_);
}

FieldElem FieldElem::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 4)
    throw Error(ErrorCode::ParseError, "field element needs 4 coefficients: '" + std::string(text) + "'");
  return {parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]),
          parse_rational(parts[3])};
}

std::size_t FieldElem::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  auto mix = [&h](const mpz_class& z) {
    const std::size_t v = mpz_get_ui(z.get_mpz_t()) ^ (static_cast<std::size_t>(mpz_size(z.get_mpz_t())) << 56) ^
                          static_cast<std::size_t>(sgn(z) + 1);
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (const mpq_class* q : {&a_, &b_, &c_, &d_}) {
    mix(q->get_num());
    mix(q->get_den());
  }
  return h;
}

int field_sign(const FieldElem& x) {
  if (x.is_rational()) return sgn(x.a());
  if (const int s = filtered_sign(x); s != 0) return s;
  // x = X + sqrt3 * Y with X = a + b sqrt2, Y = c + d sqrt2.
  const int sx = sign_q2(x.a(), x.b());
  const int sy = sign_q2(x.c(), x.d());
  if (sy == 0) return sx;
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  // Opposite signs: sign(X + sqrt3 Y) = sign(X) * sign(X^2 - 3 Y^2).
  const mpq_class& a = x.a();
  const mpq_class& b = x.b();
  const mpq_class& c = x.c();
  const mpq_class& d = x.d();
  const mpq_class p = a * a + 2 * b * b - 3 * c * c - 6 * d * d;
  const mpq_class q = 2 * a * b - 6 * c * d;
  return sx * sign_q2(p, q);
}

FieldElem abs(const FieldElem& x) { return field_sign(x) < 0 ? -x : x; }

mpz_class floor(const FieldElem& x) {
  mpz_class n;
  if (x.is_rational()) {
    mpz_fdiv_q(n.get_mpz_t(), x.a().get_num_mpz_t(), x.a().get_den_mpz_t());
    return n;
  }
  const double approx = x.to_double();
  if (std::isfinite(approx) && std::fabs(approx) < 1e15) {
    n = static_cast<long>(std::floor(approx));
  } else {
    // Coarse start from the rational part; the correction loops below finish.
    mpz_fdiv_q(n.get_mpz_t(), x.a().get_num_mpz_t(), x.a().get_den_mpz_t());
  }
  while (compare(FieldElem(mpq_class(n)), x) > 0) n -= 1;
  while (compare(FieldElem(mpq_class(n + 1)), x) <= 0) n += 1;
  return n;
}

FieldElem frac(const FieldElem& x) { return x - FieldElem(mpq_class(floor(x))); }

std::optional<FieldElem> field_sqrt(const FieldElem& x) {
  const int s = field_sign(x);
  if (s < 0) return std::nullopt;
  if (s == 0) return FieldElem{};
  // Tower Q(sqrt2)(sqrt3): x = X + Y sqrt3 with X, Y in Q(sqrt2).
  const Q2 X{x.a(), x.b()};
  const Q2 Y{x.c(), x.d()};
  std::optional<FieldElem> root;
  if (sgn(Y.first) == 0 && sgn(Y.second) == 0) {
    if (auto u = q2_sqrt(X.first, X.second)) {
      root = from_tower(*u, {0, 0});
    } else if (auto v = q2_sqrt(X.first / 3, X.second / 3)) {
      root = from_tower({0, 0}, *v);
    }
  } else {
    // (u + v sqrt3)^2 = u^2 + 3 v^2 + 2uv sqrt3 and (u^2 - 3v^2)^2 = X^2 - 3Y^2.
    const Q2 X2 = q2_mul(X, X);
    const Q2 Y2 = q2_mul(Y, Y);
    const Q2 norm{X2.first - 3 * Y2.first, X2.second - 3 * Y2.second};
    if (auto t = q2_sqrt(norm.first, norm.second)) {
      for (int branch : {1, -1}) {
        const Q2 half{(X.first + branch * t->first) / 2, (X.second + branch * t->second) / 2};
        auto u = q2_sqrt(half.first, half.second);
        if (!u || (sgn(u->first) == 0 && sgn(u->second) == 0)) continue;
        const Q2 two_u{2 * u->first, 2 * u->second};
        const Q2 v = q2_div(Y, two_u);
        FieldElem cand = from_tower(*u, v);
        if (cand * cand == x) {
          root = cand;
          break;
        }
      }
    }
  }
  if (!root) return std::nullopt;
  if (field_sign(*root) < 0) root = -*root;
  return root;
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IncomparableCharts: return "IncomparableCharts";
    case ErrorCode::InexactConversion: return "InexactConversion";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::NonPositiveDeterminant: return "NonPositiveDeterminant";
    case ErrorCode::DegenerateChord: return "DegenerateChord";
    case ErrorCode::InvalidLamination: return "InvalidLamination";
    case ErrorCode::NotADistinctPair: return "NotADistinctPair";
    case ErrorCode::BadSeed: return "BadSeed";
    case ErrorCode::OverlappingArcs: return "OverlappingArcs";
    case ErrorCode::UnsupportedKind: return "UnsupportedKind";
    case ErrorCode::NotParabolic: return "NotParabolic";
    case ErrorCode::LeafNotAtFixedPoint: return "LeafNotAtFixedPoint";
    case ErrorCode::BadIntervalChoice: return "BadIntervalChoice";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::Exhausted: return "Exhausted";
  }
  return "Unknown";
}

}  // namespace laminar
