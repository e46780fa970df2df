#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "sqt/tess.hpp"

namespace sqt {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

constexpr double kSize = 800;

struct Frame {
  double x0, x1, y0, y1;  // visible window of H
  double scale;
  double sx(double x) const { return (x - x0) * scale; }
  double sy(double y) const { return (y1 - y) * scale; }
};

Frame half_plane_frame(const Region& r) {
  const double x1 = r.x1.to_double(), x2 = r.x2.to_double(), y2 = r.y2.to_double();
  const double pad = 0.25 * std::max(x2 - x1, y2);
  Frame f{x1 - pad, x2 + pad, 0.0, y2 + pad, 0.0};
  f.scale = kSize / std::max(f.x1 - f.x0, f.y1 - f.y0);
  return f;
}

std::string half_plane(const TessellationPatch& p) {
  const Frame f = half_plane_frame(p.region);
  const double w = (f.x1 - f.x0) * f.scale, h = (f.y1 - f.y0) * f.scale;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
     << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
  os << "<line class=\"axis\" x1=\"0\" y1=\"" << num(h) << "\" x2=\"" << num(w) << "\" y2=\"" << num(h)
     << "\" stroke=\"#888\"/>\n";
  const auto& r = p.region;
  os << "<rect class=\"region\" x=\"" << num(f.sx(r.x1.to_double())) << "\" y=\"" << num(f.sy(r.y2.to_double()))
     << "\" width=\"" << num((r.x2 - r.x1).to_double() * f.scale) << "\" height=\""
     << num((r.y2 - r.y1).to_double() * f.scale) << "\" fill=\"#eef\" stroke=\"none\"/>\n";
  for (const auto& g : p.geodesics) {
    os << "<path class=\"geodesic\" data-ends=\"" << g.to_string() << "\" d=\"";
    if (g.is_vertical()) {
      const double x = f.sx(g.a.value().to_double());
      os << "M " << num(x) << " " << num(h) << " L " << num(x) << " 0";
    } else {
      const double a = f.sx(g.a.value().to_double()), b = f.sx(g.b.value().to_double());
      const double rad = (b - a) / 2;
      os << "M " << num(a) << " " << num(h) << " A " << num(rad) << " " << num(rad) << " 0 0 1 " << num(b) << " "
         << num(h);
    }
    os << "\" fill=\"none\" stroke=\"#000\" stroke-width=\"1\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// Cayley transform of a boundary point onto the unit circle.
std::pair<double, double> cayley(const Slope& s) {
  if (s.is_infinite()) return {1.0, 0.0};
  const double u = s.value().to_double();
  const double d = u * u + 1;
  return {(u * u - 1) / d, -2 * u / d};
}

std::string disk(const TessellationPatch& p) {
  const double R = kSize / 2 - 10, c = kSize / 2;
  auto sx = [&](double x) { return c + R * x; };
  auto sy = [&](double y) { return c - R * y; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kSize) << "\" height=\"" << num(kSize)
     << "\" viewBox=\"0 0 " << num(kSize) << " " << num(kSize) << "\">\n";
  os << "<circle class=\"boundary\" cx=\"" << num(c) << "\" cy=\"" << num(c) << "\" r=\"" << num(R)
     << "\" fill=\"none\" stroke=\"#888\"/>\n";
  for (const auto& g : p.geodesics) {
    auto [x1, y1] = cayley(g.a);
    auto [x2, y2] = cayley(g.b);
    const double t1 = std::atan2(y1, x1), t2 = std::atan2(y2, x2);
    double delta = std::abs(t2 - t1);
    if (delta > std::numbers::pi) delta = 2 * std::numbers::pi - delta;
    os << "<path class=\"geodesic\" data-ends=\"" << g.to_string() << "\" d=\"M " << num(sx(x1)) << " "
       << num(sy(y1));
    if (std::abs(delta - std::numbers::pi) < 1e-9) {
      os << " L " << num(sx(x2)) << " " << num(sy(y2));
    } else {
      const double rad = std::tan(delta / 2);
      // Centre beyond the chord midpoint at distance sec(delta / 2).
      const double mx = (x1 + x2) / 2, my = (y1 + y2) / 2, ml = std::hypot(mx, my);
      const double cx = mx / ml / std::cos(delta / 2), cy = my / ml / std::cos(delta / 2);
      const double ax = sx(x1) - sx(cx), ay = sy(y1) - sy(cy), bx = sx(x2) - sx(cx), by = sy(y2) - sy(cy);
      const int sweep = ax * by - ay * bx > 0 ? 1 : 0;
      os << " A " << num(R * rad) << " " << num(R * rad) << " 0 0 " << sweep << " " << num(sx(x2)) << " "
         << num(sy(y2));
    }
    os << "\" fill=\"none\" stroke=\"#000\" stroke-width=\"1\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

nlohmann::json point_json(const ArrangementPoint& v) {
  if (v.ideal) return {{"ideal", v.at.to_string()}};
  return {{"x", v.x.to_string()}, {"y2", v.y2.to_string()}};
}

}  // namespace

std::string render_svg(const TessellationPatch& patch, Model model) {
  return model == Model::HalfPlane ? half_plane(patch) : disk(patch);
}

std::string patch_to_json(const TessellationPatch& patch) {
  nlohmann::json j;
  j["region"] = patch.region.to_string();
  j["geodesics"] = nlohmann::json::array();
  // Endpoints as direction vectors (x, y) with slope x / y.
  for (const auto& g : patch.geodesics)
    j["geodesics"].push_back({std::to_string(g.a.x()), std::to_string(g.a.y()), std::to_string(g.b.x()),
                              std::to_string(g.b.y())});
  j["triangles"] = nlohmann::json::array();
  for (const auto& t : patch.triangles)
    j["triangles"].push_back({t.v[0].to_string(), t.v[1].to_string(), t.v[2].to_string()});
  j["faces"] = nlohmann::json::array();
  for (const auto& f : patch.faces) {
    nlohmann::json fj;
    fj["vertices"] = nlohmann::json::array();
    for (const auto& v : f.vertices) fj["vertices"].push_back(point_json(v));
    fj["edges"] = nlohmann::json::array();
    for (const auto& e : f.edges) fj["edges"].push_back({{"geodesic", e.geodesic}, {"outside", e.outside}});
    fj["complete"] = f.complete;
    fj["sides"] = f.sides;
    if (f.area) fj["area"] = *f.area;
    j["faces"].push_back(std::move(fj));
  }
  return j.dump(2);
}

}  // namespace sqt
