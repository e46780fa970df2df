// sqt: command-line front end for square-tiled surface computations.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "io.hpp"
#include "sqt/error.hpp"
#include "sqt/flatgeom.hpp"
#include "sqt/graph.hpp"
#include "sqt/tess.hpp"
#include "sqt/triangles.hpp"
#include "sqt/veech.hpp"
#include "verify.hpp"

using nlohmann::json;
using namespace sqt;

namespace {

struct Options {
  std::string input;
  std::string out;
  bool as_json = false;
  std::string model = "half-plane";
  std::string region = "-1,2,1/4,2";
  std::string bound = "10";
  std::string dir = "inf";
  std::string point;
  int threads = 1;
  std::size_t cap_orbit = 1'000'000;
  std::size_t cap_coset = 1'000'000;
  int cap_iterations = 64;
  std::uint64_t seed = 1;
};

json matrix_json(const Matrix2& m) {
  const Matrix2 c = m.canonical();
  return json::array({json::array({c.a, c.b}), json::array({c.c, c.d})});
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  f << body;
}

std::string json_path_for(const std::string& path) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ".json";
  return path.substr(0, dot) + ".json";
}

int cmd_info(const Origami& o, const Options& opt) {
  json j = json::parse(io::origami_to_json(o));
  j["genus"] = o.genus();
  j["vertices"] = json::array();
  for (const auto& vc : o.vertices())
    j["vertices"].push_back({{"id", vc.id}, {"angle_over_2pi", vc.angle_multiple()}, {"marked", vc.marked}});
  if (opt.as_json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << o.to_text() << "genus=" << o.genus() << "\n";
  for (const auto& vc : o.vertices())
    std::cout << "vertex " << vc.id << ": angle " << vc.angle_multiple() << "*2pi" << (vc.marked ? " marked" : "")
              << "\n";
  return 0;
}

int cmd_sc(const Origami& o, const Options& opt) {
  const auto scs = saddle_connections_up_to(o, Rational::parse(opt.bound));
  json j = json::array();
  for (const auto& s : scs)
    j.push_back({{"start", s.start_vertex}, {"end", s.end_vertex}, {"holonomy", vec_json(s.holonomy)}, {"len2", s.len2()}});
  if (opt.as_json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& s : scs)
    std::cout << "(" << s.holonomy.x << "," << s.holonomy.y << ") len2=" << s.len2() << " " << s.start_vertex << "->"
              << s.end_vertex << "\n";
  std::cout << scs.size() << " saddle connections\n";
  return 0;
}

int cmd_cylinders(const Origami& o, const Options& opt) {
  const auto d = cylinder_decomposition(o, Slope::parse(opt.dir));
  json j;
  j["direction"] = d.direction.to_string();
  j["chart"] = matrix_json(d.chart);
  j["cylinders"] = json::array();
  for (const auto& c : d.cylinders)
    j["cylinders"].push_back({{"circumference2", c.circumference2().to_string()},
                              {"height2", c.height2().to_string()},
                              {"area", c.area()}});
  if (opt.as_json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "direction " << d.direction.to_string() << ": " << d.cylinders.size() << " cylinder(s)\n";
  for (const auto& c : d.cylinders)
    std::cout << "  circumference^2=" << c.circumference2().to_string() << " height^2=" << c.height2().to_string()
              << " area=" << c.area() << "\n";
  return 0;
}

int cmd_triangles(const Origami& o, const Options& opt) {
  const auto ts = triangles_up_to(o, Rational::parse(opt.bound));
  json j = json::array();
  for (const auto& t : ts)
    j.push_back({{"base", t.base}, {"v1", vec_json(t.v1)}, {"v2", vec_json(t.v2)}, {"ideal", t.ideal().to_string()}});
  if (opt.as_json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& t : ts)
    std::cout << "base " << t.base << " v1=(" << t.v1.x << "," << t.v1.y << ") v2=(" << t.v2.x << "," << t.v2.y
              << ") " << t.ideal().to_string() << "\n";
  std::cout << ts.size() << " triangles\n";
  return 0;
}

int cmd_tessellate(const Origami& o, const Options& opt) {
  const Region r = Region::parse(opt.region);
  const Model model = opt.model == "disk" ? Model::Disk : Model::HalfPlane;
  const auto patch = faces_in_region(o, r);
  const std::string svg_path = opt.out.empty() ? "tessellation.svg" : opt.out;
  write_file(svg_path, render_svg(patch, model));
  write_file(json_path_for(svg_path), patch_to_json(patch) + "\n");
  int complete = 0;
  for (const auto& f : patch.faces) complete += f.complete;
  if (opt.as_json) {
    std::cout << json{{"svg", svg_path},
                      {"json", json_path_for(svg_path)},
                      {"geodesics", patch.geodesics.size()},
                      {"faces", patch.faces.size()},
                      {"complete", complete}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "geodesics=" << patch.geodesics.size() << " faces=" << patch.faces.size() << " complete=" << complete
              << "\nwrote " << svg_path << " and " << json_path_for(svg_path) << "\n";
  }
  return 0;
}

int cmd_locate(const Origami& o, const Options& opt) {
  const auto comma = opt.point.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "--point needs x,y");
  const HPoint z{Rational::parse(opt.point.substr(0, comma)), Rational::parse(opt.point.substr(comma + 1))};
  const auto res = locate(o, z);
  if (opt.as_json) {
    json j{{"interior", res.interior}, {"triangle", res.first.to_string()}};
    if (res.second) j["other"] = res.second->to_string();
    if (res.diagonal) j["diagonal"] = res.diagonal->to_string();
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (res.interior) {
    std::cout << "inside " << res.first.to_string() << "\n";
  } else {
    std::cout << "on " << res.diagonal->to_string() << " between " << res.first.to_string();
    if (res.second) std::cout << " and " << res.second->to_string();
    std::cout << "\n";
  }
  return 0;
}

int cmd_fundamental_domain(const Origami& o, const Options& opt) {
  const auto dom = algorithm_A(o, opt.cap_iterations);
  json j;
  j["d1"] = dom.d1;
  j["cusps"] = json::array();
  for (const auto& c : dom.cusp_classes)
    j["cusps"].push_back({{"rep", c.rep.to_string()},
                          {"chart", matrix_json(c.A)},
                          {"period", c.period().to_string()},
                          {"generation", c.generation},
                          {"stabilizer", matrix_json(c.g_k)}});
  j["triangle_classes"] = json::array();
  for (const auto& t : dom.triangle_classes)
    j["triangle_classes"].push_back({{"rep", t.rep.to_string()}, {"stabilizer_order", t.stabilizer_order}});
  j["domain_triangles"] = json::array();
  for (const auto& t : dom.domain_triangles) j["domain_triangles"].push_back(t.to_string());
  if (opt.as_json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "cusps=" << dom.cusp_classes.size() << " d1=" << dom.d1 << " triangle_classes=" << dom.triangle_classes.size()
            << " domain_triangles=" << dom.domain_triangles.size() << "\n";
  for (const auto& c : dom.cusp_classes)
    std::cout << "  cusp " << c.rep.to_string() << " period " << c.period().to_string() << " generation "
              << c.generation << "\n";
  return 0;
}

int cmd_generators(const Origami& o, const Options& opt) {
  const auto dom = algorithm_A(o, opt.cap_iterations);
  const auto gens = algorithm_B(o, &dom);
  std::vector<Word> words;
  json j;
  j["generators"] = json::array();
  for (const auto& g : gens.generators) {
    words.push_back(g.word);
    j["generators"].push_back({{"matrix", matrix_json(g.g)},
                               {"word", word_to_string(g.word)},
                               {"cusp", g.cusp.to_string()},
                               {"provenance", g.provenance}});
  }
  const auto ce = coset_enumeration(words, opt.cap_coset);
  j["index"] = ce.bounded ? json(ce.index) : json(nullptr);
  if (opt.as_json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& g : gens.generators)
    std::cout << g.g.canonical().to_string() << "  " << word_to_string(g.word) << "  (" << g.provenance << ")\n";
  std::cout << gens.generators.size() << " generators; index "
            << (ce.bounded ? std::to_string(ce.index) : std::string("unbounded")) << "\n";
  return 0;
}

int cmd_quotient_graph(const Origami& o, const Options& opt) {
  const auto g = quotient_graph(algorithm_A(o, opt.cap_iterations));
  if (!opt.out.empty()) write_file(opt.out, to_dot(g));
  if (opt.as_json) {
    std::cout << to_json(g) << "\n";
    return 0;
  }
  std::cout << "V=" << g.v_vertices.size() << " W=" << g.w_vertices.size() << " E=" << g.edge_count() << "\n";
  return 0;
}

int cmd_oracle(const Origami& o, const Options& opt) {
  const auto r = oracle_orbit(o, opt.cap_orbit);
  if (opt.as_json) {
    std::cout << json{{"index", r.index}, {"cusp_count", r.cusp_count}, {"cusp_widths", r.cusp_widths}}.dump(2) << "\n";
    return 0;
  }
  std::cout << "index=" << r.index << " cusps=" << r.cusp_count << " widths=";
  for (std::size_t i = 0; i < r.cusp_widths.size(); ++i) std::cout << (i ? "," : "") << r.cusp_widths[i];
  std::cout << "\n";
  return 0;
}

int cmd_verify(const Origami& o, const Options& opt) {
  io::VerifyOptions vo;
  vo.seed = opt.seed;
  vo.orbit_cap = opt.cap_orbit;
  vo.coset_cap = opt.cap_coset;
  const auto rs = io::verify_suite(o, vo);
  bool ok = true;
  for (const auto& r : rs) ok = ok && r.passed;
  if (opt.as_json) {
    json j = json::array();
    for (const auto& r : rs)
      j.push_back({{"check", r.name}, {"status", r.skipped ? "skip" : r.passed ? "pass" : "fail"}, {"detail", r.detail}});
    std::cout << j.dump(2) << "\n";
  } else {
    io::print_table(rs, std::cout);
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on square-tiled surfaces"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", opt.input, "origami file, inline text, or one of T1 O2 L3 W4")->required();
    sub->add_flag("--json", opt.as_json, "print JSON instead of a summary");
    sub->add_option("--threads", opt.threads, "worker threads (enumeration is currently sequential)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--cap-orbit", opt.cap_orbit, "orbit oracle cap");
    sub->add_option("--cap-coset", opt.cap_coset, "coset enumeration cap");
    sub->add_option("--cap-iterations", opt.cap_iterations, "algorithm A iteration cap");
  };

  using Handler = int (*)(const Origami&, const Options&);
  std::vector<std::pair<CLI::App*, Handler>> subs;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    subs.emplace_back(s, h);
    return s;
  };
  add("info", "surface summary", cmd_info);
  add("sc", "saddle connections up to a squared length", cmd_sc)->add_option("--bound", opt.bound, "squared length bound");
  add("cylinders", "cylinder decomposition in a direction", cmd_cylinders)
      ->add_option("--dir", opt.dir, "direction p/q or inf");
  add("triangles", "embedded triangles with short sides", cmd_triangles)
      ->add_option("--bound", opt.bound, "squared side length bound");
  auto* tess = add("tessellate", "draw the tessellation over a region", cmd_tessellate);
  tess->add_option("--region", opt.region, "x1,x2,y1,y2");
  tess->add_option("--model", opt.model, "half-plane or disk")->check(CLI::IsMember({"half-plane", "disk"}));
  tess->add_option("--out", opt.out, "drawing path; the JSON goes next to it");
  add("locate", "ideal triangle containing a point", cmd_locate)
      ->add_option("--point", opt.point, "x,y with y > 0")
      ->required();
  add("fundamental-domain", "coarse fundamental domain (algorithm A)", cmd_fundamental_domain);
  add("generators", "generators of the Veech group (algorithm B)", cmd_generators);
  add("quotient-graph", "quotient of the graph of periodic directions", cmd_quotient_graph)
      ->add_option("--out", opt.out, "write the graph in DOT format");
  add("oracle", "Veech group index by orbit enumeration", cmd_oracle);
  add("verify", "run the invariant suite", cmd_verify)->add_option("--seed", opt.seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Origami o = io::load_origami(opt.input);
    for (const auto& [s, h] : subs)
      if (s->parsed()) return h(o, opt);
  } catch (const Error& e) {
    if (opt.as_json) {
      std::cout << json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}}.dump(2) << "\n";
    } else {
      std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    }
    return 1;
  }
  return 2;
}
