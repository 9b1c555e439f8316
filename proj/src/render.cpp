#include "laminar/render.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>

namespace laminar {

namespace {

constexpr double kDiametral = 1e-12;

class Canvas {
 public:
  explicit Canvas(const RenderSpec& spec)
      : spec_(spec), mid_(spec.size / 2.0), radius_(spec.size / 2.0 - spec.margin) {}

  std::string num(double x) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", spec_.precision, x + 0.0);
    std::string s(buf);
    if (s.find_first_not_of("-0.") == std::string::npos) s = s.substr(s[0] == '-' ? 1 : 0);
    return s;
  }
  std::string x(double ux) const { return num(mid_ + radius_ * ux); }
  std::string y(double uy) const { return num(mid_ - radius_ * uy); }
  std::string point(const std::array<double, 2>& p) const { return x(p[0]) + " " + y(p[1]); }
  std::string length(double unit) const { return num(radius_ * unit); }
  double radius() const { return radius_; }

 private:
  const RenderSpec& spec_;
  double mid_, radius_;
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string path(const Canvas& cv, const ChordGeometry& g) {
  std::string d = "M " + cv.point(g.u);
  if (g.diametral) return d + " L " + cv.point(g.v);
  // Screen coordinates flip y, so the orientation test flips sign too.
  const double px = g.u[0] - g.center[0], py = g.u[1] - g.center[1];
  const double qx = g.v[0] - g.center[0], qy = g.v[1] - g.center[1];
  const int sweep = (px * qy - py * qx) < 0 ? 1 : 0;
  const std::string r = cv.length(g.radius);
  return d + " A " + r + " " + r + " 0 0 " + std::to_string(sweep) + " " + cv.point(g.v);
}

}  // namespace

std::array<double, 2> disk_point(const BoundaryPoint& p) {
  const double a = 2 * std::numbers::pi * p.to_turns();
  return {std::cos(a), std::sin(a)};
}

ChordGeometry chord_geometry(const Chord& c) {
  ChordGeometry g;
  g.u = disk_point(c.lo());
  g.v = disk_point(c.hi());
  const double denom = 1 + g.u[0] * g.v[0] + g.u[1] * g.v[1];
  if (std::abs(denom) < kDiametral) {
    g.diametral = true;
    return g;
  }
  g.center = {(g.u[0] + g.v[0]) / denom, (g.u[1] + g.v[1]) / denom};
  const double delta = std::atan2(g.u[0] * g.v[1] - g.u[1] * g.v[0], g.u[0] * g.v[0] + g.u[1] * g.v[1]);
  g.radius = std::abs(std::tan(delta / 2));
  return g;
}

double orthogonality_residual(const ChordGeometry& g) {
  if (g.diametral) return 0;
  return std::abs(g.center[0] * g.center[0] + g.center[1] * g.center[1] - g.radius * g.radius - 1);
}

std::string render_svg(const std::vector<Layer>& layers, const std::vector<BoundaryPoint>& cusps, const RenderSpec& spec) {
  const Canvas cv(spec);
  const std::string size = std::to_string(spec.size);
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + size + "\" height=\"" + size + "\" viewBox=\"0 0 " +
         size + " " + size + "\">\n";
  out += "<circle id=\"boundary\" cx=\"" + cv.x(0) + "\" cy=\"" + cv.y(0) + "\" r=\"" + cv.length(1) +
         "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" + cv.num(spec.circle_stroke) + "\"/>\n";

  std::map<std::string, BoundaryPoint> ends;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& color = spec.colors.empty() ? std::string("#000000") : spec.colors[i % spec.colors.size()];
    out += "<g class=\"lamination\" id=\"" + escape(layers[i].name) + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"" + cv.num(spec.chord_stroke) + "\">\n";
    for (const auto& c : layers[i].chords) {
      out += "<path d=\"" + path(cv, chord_geometry(c)) + "\"/>\n";
      ends.emplace(c.lo().encode(), c.lo());
      ends.emplace(c.hi().encode(), c.hi());
    }
    out += "</g>\n";
  }

  if (!ends.empty()) {
    const double outer = 1 + spec.tick_length / cv.radius();
    out += "<g class=\"ticks\" stroke=\"#000000\" stroke-width=\"" + cv.num(spec.tick_stroke) + "\">\n";
    for (const auto& [key, p] : ends) {
      const auto u = disk_point(p);
      out += "<line x1=\"" + cv.x(u[0]) + "\" y1=\"" + cv.y(u[1]) + "\" x2=\"" + cv.x(outer * u[0]) + "\" y2=\"" +
             cv.y(outer * u[1]) + "\"/>\n";
    }
    out += "</g>\n";
  }

  if (!cusps.empty() && spec.cusp_marker != RenderSpec::Marker::None) {
    std::map<std::string, BoundaryPoint> marks;
    for (const auto& p : cusps) marks.emplace(p.encode(), p);
    out += "<g class=\"cusps\" fill=\"#000000\" stroke=\"#000000\">\n";
    const double m = spec.marker_size / cv.radius();
    for (const auto& [key, p] : marks) {
      const auto u = disk_point(p);
      if (spec.cusp_marker == RenderSpec::Marker::Dot) {
        out += "<circle cx=\"" + cv.x(u[0]) + "\" cy=\"" + cv.y(u[1]) + "\" r=\"" + cv.num(spec.marker_size) + "\"/>\n";
      } else {
        out += "<path d=\"M " + cv.x(u[0] - m) + " " + cv.y(u[1] - m) + " L " + cv.x(u[0] + m) + " " + cv.y(u[1] + m) +
               " M " + cv.x(u[0] - m) + " " + cv.y(u[1] + m) + " L " + cv.x(u[0] + m) + " " + cv.y(u[1] - m) + "\"/>\n";
      }
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace laminar
