#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqt/modular.hpp"
#include "sqt/origami.hpp"
#include "sqt/rational.hpp"
#include "sqt/triangles.hpp"

namespace sqt {

struct NormalizedDirection {
  Slope direction;
  Matrix2 chart;        // direction_chart(direction)
  Origami normalized;   // chart . O
  std::int64_t delta;   // shortest horizontal saddle connection of `normalized`
  std::int64_t kappa;   // longest one
};

NormalizedDirection normalize_direction(const Origami& o, const Slope& k);

// Minimal m > 0 with U^m . O' projectively isomorphic to O'.
std::int64_t cusp_period(const Origami& normalized);
// lcm over horizontal cylinders of c / gcd(c, h); U^bound is a multitwist.
std::int64_t cusp_period_bound(const Origami& normalized);

// Some g in the Veech group with g(k1) = k2, if one exists.
std::optional<Matrix2> directions_equivalent(const Origami& o, const Slope& k1, const Slope& k2);

struct CuspData {
  Slope rep;
  Matrix2 A;                  // A(rep) = infinity
  std::int64_t delta = 1;
  std::int64_t kappa = 1;
  std::int64_t period_raw = 1;  // a'; the period after rescaling to delta = 1 is a'/delta^2
  Rational window_lo;          // strip (window_lo, window_lo + a') in the A-chart
  std::vector<IdealTriangle> ref_triangles;
  std::vector<Slope> neighbors;
  Matrix2 g_k;                 // A^-1 U^a' A
  int generation = 0;          // 0 for infinity, n+1 when found among the new cusps of step n

  Rational period() const { return Rational(period_raw, delta * delta); }
};

// Reference domain of k: triangles with vertex k meeting the strip
// (window_lo, window_lo + a') of the chart of k.
CuspData reference_domain(const Origami& o, const Slope& k, const Rational& window_lo = Rational(0));

// Classifies directions up to the Veech group against a growing list of
// cusp representatives.  Each representative r carries the projective codes
// of U^m A_r O for 0 <= m < a'_r, so one canonical form decides a direction.
class CuspIndex {
 public:
  struct Class {
    Slope rep;
    NormalizedDirection norm;
    std::int64_t period;
    // Triangles with vertex rep in the chart of rep, as intervals (x, y)
    // meeting (0, period).
    std::vector<std::pair<Rational, Rational>> base;
    // Endpoints of the base intervals reduced to [0, period).
    std::vector<Rational> residues;
  };

  struct Match {
    int cls;
    std::int64_t shift;  // chart . O ~ U^shift A_rep O
    Matrix2 chart;       // direction_chart(k)
    Matrix2 witness;     // in the Veech group, witness(rep) = k
  };

  explicit CuspIndex(Origami o) : o_(std::move(o)) {}

  std::optional<Match> classify(const Slope& k) const;
  int add(const Slope& rep);
  const Class& at(int i) const { return classes_[i]; }
  int size() const { return static_cast<int>(classes_.size()); }
  const Origami& origami() const { return o_; }

  // Every triangle with vertex k whose interval in the chart of k meets the
  // open window (lo, hi), obtained by transporting the class triangles.
  std::vector<IdealTriangle> triangles_at(const Slope& k, const Match& m, const Rational& lo,
                                          const Rational& hi) const;
  // u is a vertex of some triangle with vertex k.
  bool is_neighbor(const Slope& u, const Match& m) const;

 private:
  Origami o_;
  std::vector<Class> classes_;
  std::map<std::vector<int>, std::pair<int, std::int64_t>> codes_;
};

struct TriangleClass {
  IdealTriangle rep;
  std::array<int, 3> vertex_class;  // cusp class of rep.v[i]
  int stabilizer_order = 1;         // 1 or 3
  std::optional<Matrix2> rotation;  // certified element permuting the vertices cyclically
};

struct CoarseFundamentalDomain {
  std::vector<CuspData> cusp_classes;
  int d1 = 0;
  std::vector<TriangleClass> triangle_classes;
  std::vector<IdealTriangle> domain_triangles;

  std::int64_t edge_count() const;  // sum over triangle classes of 3 / |stabilizer|
};

CoarseFundamentalDomain algorithm_A(const Origami& o, int iteration_cap = 64);

struct Generator {
  Matrix2 g;
  Word word;
  Slope cusp;              // the direction k whose g_k this is
  std::string provenance;  // "stabilizer of cusp k" or "maps inf-class triangle chart"
};

struct GeneratorSet {
  std::vector<Generator> generators;  // projectively distinct, identity dropped
  int iterations = 0;
  std::size_t directions = 0;         // |C_n| at the end
};

GeneratorSet algorithm_B(const Origami& o, const CoarseFundamentalDomain* domain = nullptr);

struct OracleResult {
  std::int64_t index = 0;
  std::vector<Origami> cosets;  // orbit representatives, cosets[0] = O
  std::vector<int> s_action;
  std::vector<int> t_action;
  std::int64_t cusp_count = 0;
  std::vector<std::int64_t> cusp_widths;  // T-cycle lengths
};

OracleResult oracle_orbit(const Origami& o, std::size_t cap = 1'000'000);

struct CosetResult {
  bool bounded = false;
  std::int64_t index = 0;
  std::size_t cosets_defined = 0;
};

// Index of the subgroup generated by the words in PSL(2,Z) = <S, T | S^2, (ST)^3>.
CosetResult coset_enumeration(const std::vector<Word>& subgroup, std::size_t cap = 1'000'000);

struct VolumeReport {
  std::int64_t index;
  std::int64_t triangle_classes;
  bool bound_ok;
  Rational volume_over_pi;  // index / 3
};

VolumeReport volume_report(const Origami& o);

}  // namespace sqt
