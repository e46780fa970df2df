#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "io.hpp"
#include "sqt/error.hpp"
#include "surfaces.hpp"

using namespace sqt;
using namespace sqt::testing;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SQT_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, p)) out.append(buf, got);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

ErrorKind kind_of(const std::string& text) {
  try {
    io::parse_origami(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("text format examples") {
  CHECK(io::parse_origami("n=1\nh=()\nv=()\nmarked=all") == T1());
  CHECK(io::parse_origami("n=3\nh=(1 2)\nv=(1 3)\nmarked=singular") == L3());
  CHECK(io::parse_origami("h=(1 2 3 4); v=(1 2)  # W4") == W4());
  CHECK(io::parse_origami("n=2\nh = ( 1 , 2 )\nv=\nmarked=all") == O2());
  CHECK(kind_of("h=(1 2") == ErrorKind::ParseError);
  CHECK(kind_of("n=2\nh=(1 2)") == ErrorKind::ParseError);
  CHECK(kind_of("n=2\nh=(1 2)\nv=()\nmarked=3:BL") == ErrorKind::ParseError);
  CHECK(kind_of("n=2\nh=(1 2)\nv=()\nmarked=1:XX") == ErrorKind::ParseError);
  CHECK(kind_of("n=2\nh=(1 2)\nv=()\nfoo=1") == ErrorKind::ParseError);
  try {
    io::parse_origami("n=2\nh=(1 2)\nv=(1 x)");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3, column 6") != std::string::npos);
  }
}

TEST_CASE("json format") {
  CHECK(io::parse_origami(R"({"n": 3, "h": [[1, 2]], "v": [[1, 3]], "marked": "singular"})") == L3());
  CHECK(io::parse_origami(R"({"n": 4, "h": [2, 3, 4, 1], "v": [[1, 2]]})") == W4());
  CHECK(io::parse_origami(R"({"n": 1, "h": [], "v": [], "marked": ["1:BL"]})") == T1());
  CHECK(kind_of(R"({"n": 2, "h": [[1, 2]]})") == ErrorKind::ParseError);
  CHECK(kind_of(R"({"n": 2, "h": [[1, 2]], )") == ErrorKind::ParseError);
}

TEST_CASE("round trips through both formats") {
  std::mt19937_64 rng(21);
  std::vector<Origami> samples{T1(), O2(), L3(), W4()};
  for (int i = 0; i < 30; ++i) samples.push_back(random_origami(2 + i % 6, rng));
  for (int i = 0; i < 10; ++i) {
    Origami o = random_origami(3 + i % 4, rng);
    std::vector<char> marks = o.marked_corners();
    marks[rng() % marks.size()] = 1;
    samples.push_back(Origami::from_marked_corners(o.h(), o.v(), marks));
  }
  for (const auto& o : samples) {
    CHECK(io::parse_origami(o.to_text()) == o);
    CHECK(io::parse_origami(io::origami_to_json(o)) == o);
  }
}

TEST_CASE("command line contract") {
  auto q = run("quotient-graph T1");
  CHECK(q.code == 0);
  CHECK(q.out == "V=1 W=1 E=1\n");
  CHECK(run("oracle L3").out == "index=3 cusps=2 widths=2,1\n");
  CHECK(run("cylinders W4 --dir inf").out.find("1 cylinder(s)") != std::string::npos);

  CHECK(run("").code == 2);
  CHECK(run("nosuchcommand T1").code == 2);
  CHECK(run("tessellate T1 --model sphere").code == 2);
  auto bad = run("info 'h=(1 2' --json");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("\"ParseError\"") != std::string::npos);
  CHECK(run("tessellate T1 --region 0,1,0,1 --out /dev/null").code == 1);

  CHECK(run("verify T1").code == 0);
}

TEST_CASE("tessellate writes identical files on repeated runs") {
  const auto dir = std::filesystem::temp_directory_path() / "sqt_cli_test";
  std::filesystem::create_directories(dir);
  const auto a = dir / "a.svg", b = dir / "b.svg";
  const std::string args = "tessellate W4 --region 0,1,1/4,2 --model disk --out ";
  REQUIRE(run(args + a.string()).code == 0);
  REQUIRE(run(args + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(slurp(a).rfind("<svg", 0) == 0);
  std::filesystem::remove_all(dir);
}
