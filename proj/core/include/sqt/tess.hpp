#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqt/modular.hpp"
#include "sqt/origami.hpp"
#include "sqt/rational.hpp"
#include "sqt/triangles.hpp"
#include "sqt/veech.hpp"

namespace sqt {

// Hyperbolic geodesic of the upper half plane between two boundary points,
// stored with a < b (infinity last).  A vertical line when b is infinite,
// otherwise the semicircle over [a, b].
struct GeodesicLine {
  Slope a;
  Slope b;

  static GeodesicLine of(const Slope& p, const Slope& q);
  bool is_vertical() const { return b.is_infinite(); }
  Rational center() const;   // semicircles only
  Rational radius2() const;  // semicircles only
  bool has_endpoint(const Slope& k) const { return a == k || b == k; }
  std::string to_string() const;  // "(a,b)"

  friend auto operator<=>(const GeodesicLine&, const GeodesicLine&) = default;
};

struct Region {
  Rational x1, x2, y1, y2;  // [x1, x2] x [y1, y2], 0 < y1 < y2

  static Region parse(const std::string& text);  // "x1,x2,y1,y2"
  std::string to_string() const;
};

// Membership in the family of sides of ideal triangles, decided through the
// cusp classes: the sides at k are the images of the class representative's
// sides under the stabilizer.
class GeodesicOracle {
 public:
  explicit GeodesicOracle(const Origami& o) : idx_(o) {}

  const Origami& origami() const { return idx_.origami(); }
  const CuspIndex::Match& match(const Slope& k);
  const CuspIndex& index() const { return idx_; }

  bool contains(const GeodesicLine& g);
  // Ideal triangles having g as a side (both sides of g when they exist).
  std::vector<IdealTriangle> triangles_on(const GeodesicLine& g);
  // Triangles with vertex k whose interval in the chart of k meets (lo, hi).
  std::vector<IdealTriangle> triangles_at(const Slope& k, const Rational& lo, const Rational& hi);
  // Every member that crosses g (meets it in the interior of H, transversally).
  const std::vector<GeodesicLine>& crossing(const GeodesicLine& g);

 private:
  CuspIndex idx_;
  std::map<Slope, CuspIndex::Match> matches_;
  std::map<GeodesicLine, std::vector<GeodesicLine>> crossing_;
};

// All sides of ideal triangles that meet the closed region.
std::vector<GeodesicLine> geodesics_in_region(const Origami& o, const Region& r);
std::vector<GeodesicLine> geodesics_in_region(GeodesicOracle& oracle, const Region& r);

// Point of the upper half plane with exact coordinates, y > 0.
struct HPoint {
  Rational x;
  Rational y;
};

struct LocateResult {
  bool interior = true;
  IdealTriangle first;
  std::optional<IdealTriangle> second;  // other half of the quadrilateral
  std::optional<GeodesicLine> diagonal; // contains the point when !interior
};

LocateResult locate(const Origami& o, const HPoint& z);
LocateResult locate(GeodesicOracle& oracle, const HPoint& z);

// Vertex of the arrangement: either a crossing point inside H, with exact x
// and y^2, or a boundary point.
struct ArrangementPoint {
  bool ideal = false;
  Slope at;       // ideal points
  Rational x;     // interior points
  Rational y2;

  double xd() const;
  double yd() const;
  friend auto operator<=>(const ArrangementPoint&, const ArrangementPoint&) = default;
};

struct FaceSide {
  int geodesic;  // index into TessellationPatch::geodesics, -1 for a boundary arc
  bool outside;  // face lies outside the semicircle / right of the vertical
};

struct Face {
  std::vector<ArrangementPoint> vertices;  // counterclockwise
  std::vector<FaceSide> edges;             // edges[i] joins vertices[i] and vertices[i+1]
  bool complete = false;                   // certified tile of the tessellation
  int sides = 0;                           // maximal geodesic segments
  std::optional<double> area;              // complete faces only

  bool has_boundary_arc() const;
  // Closed face contains the point (exact).
  bool contains(const std::vector<GeodesicLine>& gs, const HPoint& z) const;
};

struct TessellationPatch {
  Region region;
  std::vector<IdealTriangle> triangles;  // witnesses: a triangle on each side of each geodesic
  std::vector<GeodesicLine> geodesics;
  std::vector<Face> faces;               // faces of the arrangement meeting the region
};

TessellationPatch faces_in_region(const Origami& o, const Region& r);

enum class Model { HalfPlane, Disk };

std::string render_svg(const TessellationPatch& patch, Model model);
std::string patch_to_json(const TessellationPatch& patch);

}  // namespace sqt
