#pragma once

#include "toricq/positivity.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace toricq {

/// A 2-plane slice origin + s*dir1 + t*dir2 of N^1 sampled on a grid.
struct ChamberSpec {
  ToricDivisor origin;
  ToricDivisor dir1;
  ToricDivisor dir2;
  Rational s_min = -1, s_max = 1;
  Rational t_min = -1, t_max = 1;
  int steps = 8;  // grid is (steps+1) x (steps+1)
  std::vector<std::pair<Rational, Rational>> extra_points;
};

struct ChamberSample {
  Rational s, t;
  ToricDivisor divisor;
  int smallest_q = 0;
  bool big = false;
  bool pseudoeffective = false;
};

struct ChamberMap {
  int dim = 0;
  int steps = 0;
  std::vector<ChamberSample> grid;    // row-major, s fastest
  std::vector<ChamberSample> points;  // extra_points, in order
};

inline ChamberSample chamber_sample(const ChamberSpec& spec, const ToricDivisor& H, const Rational& s,
                                    const Rational& t) {
  auto D = spec.origin + spec.dir1 * s + spec.dir2 * t;
  auto f = classify_cones(D);
  return {s, t, D, smallest_qample(D, H), f.big, f.pseudoeffective};
}

inline ChamberMap chamber_scan(const ChamberSpec& spec, const ToricDivisor& H) {
  const auto& X = *spec.origin.variety();
  X.require_complete("chamber_scan");
  if (spec.steps < 1) fail(ErrorKind::InvalidArgument, "steps must be positive");
  if (class_of(spec.dir1).is_zero() || class_of(spec.dir2).is_zero())
    fail(ErrorKind::InvalidArgument, "slice directions must be nonzero classes");
  {
    // independence of the two directions in N^1
    auto c1 = class_of(spec.dir1).coords, c2 = class_of(spec.dir2).coords;
    RationalMatrix m(2, c1.size());
    for (std::size_t j = 0; j < c1.size(); ++j) {
      m(0, j) = c1[j];
      m(1, j) = c2[j];
    }
    if (rank(m) < 2) fail(ErrorKind::InvalidArgument, "slice directions are linearly dependent in N^1");
  }
  ChamberMap map;
  map.dim = X.dim();
  map.steps = spec.steps;
  const Rational ds = (spec.s_max - spec.s_min) / spec.steps;
  const Rational dt = (spec.t_max - spec.t_min) / spec.steps;
  for (int j = 0; j <= spec.steps; ++j)
    for (int i = 0; i <= spec.steps; ++i)
      map.grid.push_back(chamber_sample(spec, H, spec.s_min + ds * i, spec.t_min + dt * j));
  for (const auto& [s, t] : spec.extra_points) map.points.push_back(chamber_sample(spec, H, s, t));
  return map;
}

/// SVG raster: one cell per grid sample, colored by smallest q; cells outside
/// the pseudoeffective cone are hatched.
inline std::string chamber_svg(const ChamberMap& map, int cell = 24) {
  static const char* palette[] = {"#d7301f", "#fc8d59", "#fdcc8a", "#fef0d9", "#bdc9e1", "#74a9cf"};
  const int side = map.steps + 1;
  const int w = side * cell, h = side * cell + 28;
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  o << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\">"
       "<path d=\"M0,6 l6,-6\" stroke=\"#333\" stroke-width=\"1\"/></pattern></defs>\n";
  for (int j = 0; j < side; ++j)
    for (int i = 0; i < side; ++i) {
      const auto& c = map.grid[static_cast<std::size_t>(j * side + i)];
      const int x = i * cell, y = (side - 1 - j) * cell;  // t grows upward
      o << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\""
        << palette[std::min(c.smallest_q, 5)] << "\"/>";
      if (!c.pseudoeffective)
        o << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
          << "\" fill=\"url(#hatch)\"/>";
      o << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4
        << "\" font-size=\"10\" text-anchor=\"middle\">" << c.smallest_q << "</text>\n";
    }
  o << "<text x=\"4\" y=\"" << h - 8 << "\" font-size=\"11\">label = smallest q; hatched = not pseudoeffective</text>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace toricq
