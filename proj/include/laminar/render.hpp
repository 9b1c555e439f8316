#pragma once

#include <array>
#include <string>
#include <vector>

#include "laminar/boundary.hpp"
#include "laminar/lamination.hpp"

namespace laminar {

// Drawing parameters. Everything that affects the output bytes lives here.
struct RenderSpec {
  enum class Marker { Dot, Cross, None };

  int size = 800;  // px, square canvas
  double margin = 24;
  double circle_stroke = 1.5;
  double chord_stroke = 1.0;
  double tick_length = 6;
  double tick_stroke = 1.0;
  std::vector<std::string> colors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  Marker cusp_marker = Marker::Dot;
  double marker_size = 4;
  int precision = 9;  // digits after the decimal point
};

struct Layer {
  std::string name;
  std::vector<Chord> chords;
};

// Point of the unit circle at the given turn position, y pointing up.
std::array<double, 2> disk_point(const BoundaryPoint& p);

// The hyperbolic geodesic between two boundary points, in unit-disk
// coordinates. For a non-diametral chord the center is
// (u + v) / (1 + Re(u conj(v))) and the radius |tan(delta / 2)|.
struct ChordGeometry {
  std::array<double, 2> u{}, v{};
  bool diametral = false;
  std::array<double, 2> center{};
  double radius = 0;
};

ChordGeometry chord_geometry(const Chord& c);

// | |c|^2 - r^2 - 1 |, zero for a circle orthogonal to the unit circle.
double orthogonality_residual(const ChordGeometry& g);

// Unit circle, each layer as a group of arcs (or diameters) in its own
// color, a radial tick at every endpoint and a marker at every cusp.
std::string render_svg(const std::vector<Layer>& layers, const std::vector<BoundaryPoint>& cusps = {},
                       const RenderSpec& spec = {});

}  // namespace laminar
