#include "sqt/veech.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "sqt/error.hpp"
#include "sqt/flatgeom.hpp"

namespace sqt {

namespace {

// Interval spanned by the two vertices of t other than k, read in chart A.
std::pair<Rational, Rational> chart_interval(const IdealTriangle& t, const Slope& k, const Matrix2& A) {
  std::vector<Rational> xs;
  for (const Slope& u : t.v)
    if (u != k) xs.push_back(A(u).value());
  if (xs.size() != 2) throw Error(ErrorKind::InvalidArgument, "triangle does not have vertex " + k.to_string());
  if (xs[1] < xs[0]) std::swap(xs[0], xs[1]);
  return {xs[0], xs[1]};
}

void require_member(const Origami& o, const Matrix2& g, const char* what) {
  if (!in_veech_group(o, g))
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " failed membership check: " + g.to_string());
}

std::vector<Slope> other_vertices(const std::vector<IdealTriangle>& tris, const Slope& k) {
  std::set<Slope> out;
  for (const auto& t : tris)
    for (const Slope& u : t.v)
      if (u != k) out.insert(u);
  return {out.begin(), out.end()};
}

// Least triangle of `tris` having u as a vertex.
const IdealTriangle& least_with(const std::vector<IdealTriangle>& tris, const Slope& u) {
  for (const auto& t : tris)
    if (t.has_vertex(u)) return t;
  throw Error(ErrorKind::InvalidArgument, "no triangle with vertex " + u.to_string());
}

// Union of the closed intervals contains [lo, hi].
bool covers(std::vector<std::pair<Rational, Rational>> ivs, const Rational& lo, const Rational& hi) {
  std::sort(ivs.begin(), ivs.end());
  Rational reach = lo;
  for (const auto& [x, y] : ivs) {
    if (x > reach) break;
    if (y > reach) reach = y;
  }
  return reach >= hi;
}

}  // namespace

NormalizedDirection normalize_direction(const Origami& o, const Slope& k) {
  Matrix2 A = direction_chart(k);
  Origami n = apply_matrix(o, A);
  auto hs = horizontal_saddle_connections(n);
  std::int64_t lo = hs.front().holonomy.x, hi = lo;
  for (const auto& s : hs) {
    lo = std::min(lo, s.holonomy.x);
    hi = std::max(hi, s.holonomy.x);
  }
  return {k, A, std::move(n), lo, hi};
}

std::int64_t cusp_period_bound(const Origami& normalized) {
  std::int64_t l = 1;
  for (const auto& c : horizontal_cylinders(normalized)) {
    std::int64_t step = c.circumference_units / gcd64(c.circumference_units, c.height_units);
    l = std::lcm(l, step);
  }
  return l;
}

std::int64_t cusp_period(const Origami& normalized) {
  const std::int64_t bound = cusp_period_bound(normalized);
  const auto target = projective_code(normalized);
  for (std::int64_t m = 1; m < bound; ++m)
    if (projective_code(act_T(normalized, m)) == target) return m;
  require_member(normalized, Matrix2::U(bound), "multitwist");
  return bound;
}

std::optional<Matrix2> directions_equivalent(const Origami& o, const Slope& k1, const Slope& k2) {
  auto n1 = normalize_direction(o, k1);
  auto n2 = normalize_direction(o, k2);
  const std::int64_t a = cusp_period(n1.normalized);
  const auto target = projective_code(n2.normalized);
  for (std::int64_t m = 0; m < a; ++m) {
    if (projective_code(act_T(n1.normalized, m)) != target) continue;
    Matrix2 g = (n2.chart.inverse() * Matrix2::U(m) * n1.chart).canonical();
    require_member(o, g, "equivalence witness");
    return g;
  }
  return std::nullopt;
}

CuspData reference_domain(const Origami& o, const Slope& k, const Rational& window_lo) {
  auto n = normalize_direction(o, k);
  CuspData d;
  d.rep = k;
  d.A = n.chart;
  d.delta = n.delta;
  d.kappa = n.kappa;
  d.period_raw = cusp_period(n.normalized);
  d.window_lo = window_lo;
  const Rational hi = window_lo + d.period_raw;
  std::vector<std::pair<Rational, Rational>> ivs;
  for (const auto& w : triangles_with_vertex(o, k, window_lo, hi)) {
    d.ref_triangles.push_back(w.ideal);
    ivs.push_back(chart_interval(w.ideal, k, d.A));
  }
  std::sort(d.ref_triangles.begin(), d.ref_triangles.end());
  d.ref_triangles.erase(std::unique(d.ref_triangles.begin(), d.ref_triangles.end()), d.ref_triangles.end());
  d.neighbors = other_vertices(d.ref_triangles, k);
  d.g_k = (d.A.inverse() * Matrix2::U(d.period_raw) * d.A).canonical();
  require_member(o, d.g_k, "cusp stabilizer");
  if (!covers(ivs, window_lo, hi))
    throw Error(ErrorKind::InvalidArgument, "reference domain of " + k.to_string() + " is not connected");
  return d;
}

// ---------------------------------------------------------------------------

std::optional<CuspIndex::Match> CuspIndex::classify(const Slope& k) const {
  Matrix2 A = direction_chart(k);
  auto it = codes_.find(projective_code(apply_matrix(o_, A)));
  if (it == codes_.end()) return std::nullopt;
  const auto [cls, m] = it->second;
  Matrix2 w = (A.inverse() * Matrix2::U(m) * classes_[cls].norm.chart).canonical();
  require_member(o_, w, "equivalence witness");
  return Match{cls, m, A, w};
}

int CuspIndex::add(const Slope& rep) {
  const int id = size();
  auto n = normalize_direction(o_, rep);
  const std::int64_t a = cusp_period(n.normalized);
  for (std::int64_t m = 0; m < a; ++m) {
    auto [it, fresh] = codes_.emplace(projective_code(act_T(n.normalized, m)), std::pair{id, m});
    if (!fresh && it->second.first != id)
      throw Error(ErrorKind::InvalidArgument, "direction " + rep.to_string() + " is already classified");
  }
  Class c{rep, n, a, {}, {}};
  for (const auto& w : triangles_with_vertex(o_, rep, Rational(0), Rational(a)))
    c.base.push_back(chart_interval(w.ideal, rep, n.chart));
  std::sort(c.base.begin(), c.base.end());
  c.base.erase(std::unique(c.base.begin(), c.base.end()), c.base.end());
  const Rational ar(a);
  for (const auto& [x, y] : c.base)
    for (const Rational& e : {x, y}) c.residues.push_back(e - ar * (e / ar).floor());
  std::sort(c.residues.begin(), c.residues.end());
  c.residues.erase(std::unique(c.residues.begin(), c.residues.end()), c.residues.end());
  classes_.push_back(std::move(c));
  return id;
}

std::vector<IdealTriangle> CuspIndex::triangles_at(const Slope& k, const Match& m, const Rational& lo,
                                                    const Rational& hi) const {
  const Class& c = classes_[m.cls];
  const Rational a(c.period);
  const Matrix2 back = m.chart.inverse();
  std::vector<IdealTriangle> out;
  for (const auto& [x0, y0] : c.base) {
    Rational x = x0 + m.shift, y = y0 + m.shift;
    std::int64_t jmin = ((lo - y) / a).floor() + 1;
    std::int64_t jmax = ((hi - x) / a).ceil() - 1;
    for (std::int64_t j = jmin; j <= jmax; ++j) {
      Rational xs = x + a * j, ys = y + a * j;
      out.push_back(IdealTriangle::of(k, back(Slope::of(xs)), back(Slope::of(ys))));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool CuspIndex::is_neighbor(const Slope& u, const Match& m) const {
  const Slope w = m.chart(u);
  if (w.is_infinite()) return false;
  const Class& c = classes_[m.cls];
  const Rational a(c.period);
  Rational e = w.value() - m.shift;
  e -= a * (e / a).floor();
  return std::binary_search(c.residues.begin(), c.residues.end(), e);
}

// ---------------------------------------------------------------------------

namespace {

CuspData domain_from_index(const CuspIndex& idx, const Slope& k, const CuspIndex::Match& m,
                           const Rational& lo) {
  const auto& c = idx.at(m.cls);
  CuspData d;
  d.rep = k;
  d.A = m.chart;
  d.delta = c.norm.delta;
  d.kappa = c.norm.kappa;
  d.period_raw = c.period;
  d.window_lo = lo;
  d.ref_triangles = idx.triangles_at(k, m, lo, lo + c.period);
  d.neighbors = other_vertices(d.ref_triangles, k);
  d.g_k = (d.A.inverse() * Matrix2::U(d.period_raw) * d.A).canonical();
  return d;
}

// Position of a triangle seen from one of its vertices, moved into the chart
// of that vertex's class representative.
struct VertexView {
  int cls;
  Rational x, y;    // interval in the representative chart
  Rational xr, yr;  // the same reduced to x in [0, a')
  Matrix2 witness;  // witness(rep) = vertex
};

VertexView view_from(const CuspIndex& idx, const IdealTriangle& t, int i) {
  auto m = idx.classify(t.v[i]);
  if (!m) throw Error(ErrorKind::InvalidArgument, "vertex " + t.v[i].to_string() + " of an unknown cusp class");
  auto [x, y] = chart_interval(t, t.v[i], m->chart);
  x -= m->shift;
  y -= m->shift;
  const Rational a(idx.at(m->cls).period);
  Rational off = a * (x / a).floor();
  return {m->cls, x, y, x - off, y - off, m->witness};
}

using ViewKey = std::tuple<int, Rational, Rational>;
ViewKey key_of(const VertexView& v) { return {v.cls, v.xr, v.yr}; }

// Element of the Veech group carrying the triangle seen as `from` onto the
// triangle seen as `to` (same reduced key).
Matrix2 carry(const CuspIndex& idx, const VertexView& from, const VertexView& to) {
  const Matrix2& A = idx.at(from.cls).norm.chart;
  Rational t = to.x - from.x;
  if (!t.is_integer()) throw Error(ErrorKind::InvalidArgument, "non-integral translation between vertex views");
  return (to.witness * A.inverse() * Matrix2::U(t.num()) * A * from.witness.inverse()).canonical();
}

}  // namespace

std::int64_t CoarseFundamentalDomain::edge_count() const {
  std::int64_t e = 0;
  for (const auto& t : triangle_classes) e += 3 / t.stabilizer_order;
  return e;
}

CoarseFundamentalDomain algorithm_A(const Origami& o, int iteration_cap) {
  CuspIndex idx(o);
  CoarseFundamentalDomain out;

  struct Pending {
    Slope k;
    IdealTriangle via;
  };

  const Slope inf = Slope::infinity();
  idx.add(inf);
  out.cusp_classes.push_back(domain_from_index(idx, inf, *idx.classify(inf), Rational(0)));

  auto discover = [&](const CuspData& d, std::vector<Pending>& next) {
    for (const Slope& u : d.neighbors) {
      if (idx.classify(u)) continue;
      idx.add(u);
      next.push_back({u, least_with(d.ref_triangles, u)});
    }
  };

  std::vector<Pending> pending;
  discover(out.cusp_classes[0], pending);
  while (!pending.empty()) {
    if (out.d1 >= iteration_cap)
      throw Error(ErrorKind::CapExceeded, "algorithm A exceeded " + std::to_string(iteration_cap) + " iterations");
    ++out.d1;
    const std::size_t first = out.cusp_classes.size();
    for (const auto& p : pending) {
      auto m = *idx.classify(p.k);
      const Rational lo = chart_interval(p.via, p.k, m.chart).first;
      CuspData d = domain_from_index(idx, p.k, m, lo);
      d.generation = out.d1;
      out.cusp_classes.push_back(std::move(d));
    }
    std::vector<Pending> next;
    for (std::size_t i = first; i < out.cusp_classes.size(); ++i) discover(out.cusp_classes[i], next);
    pending = std::move(next);
  }

  std::set<IdealTriangle> all;
  for (const auto& d : out.cusp_classes) all.insert(d.ref_triangles.begin(), d.ref_triangles.end());
  out.domain_triangles.assign(all.begin(), all.end());

  std::map<ViewKey, std::pair<int, VertexView>> seen;  // key -> (class, view of the class rep)
  for (const auto& t : out.domain_triangles) {
    std::array<VertexView, 3> views{view_from(idx, t, 0), view_from(idx, t, 1), view_from(idx, t, 2)};
    int hit = -1;
    for (int i = 0; i < 3 && hit < 0; ++i) {
      auto it = seen.find(key_of(views[i]));
      if (it == seen.end()) continue;
      hit = i;
      const auto& [cls, rep_view] = it->second;
      Matrix2 h = carry(idx, rep_view, views[i]);
      require_member(o, h, "triangle equivalence");
      if (out.triangle_classes[cls].rep.transformed(h) != t)
        throw Error(ErrorKind::InvalidArgument, "triangle equivalence witness does not map " + t.to_string());
    }
    if (hit >= 0) continue;

    TriangleClass tc;
    tc.rep = t;
    for (int i = 0; i < 3; ++i) tc.vertex_class[i] = views[i].cls;
    const bool r01 = key_of(views[0]) == key_of(views[1]);
    const bool r12 = key_of(views[1]) == key_of(views[2]);
    if (r01 || r12 || key_of(views[0]) == key_of(views[2])) {
      if (!(r01 && r12)) throw Error(ErrorKind::InvalidArgument, "triangle with a symmetry of order 2: " + t.to_string());
      Matrix2 h = carry(idx, views[0], views[1]);
      require_member(o, h, "triangle rotation");
      if (t.transformed(h) != t || h(t.v[0]) != t.v[1])
        throw Error(ErrorKind::InvalidArgument, "rotation witness does not fix " + t.to_string());
      tc.stabilizer_order = 3;
      tc.rotation = h;
    }
    const int id = static_cast<int>(out.triangle_classes.size());
    out.triangle_classes.push_back(tc);
    for (int i = 0; i < 3; ++i) seen.emplace(key_of(views[i]), std::pair{id, views[i]});
  }
  return out;
}

// ---------------------------------------------------------------------------

GeneratorSet algorithm_B(const Origami& o, const CoarseFundamentalDomain* domain) {
  std::optional<CoarseFundamentalDomain> own;
  if (!domain) domain = &own.emplace(algorithm_A(o));
  const int steps = 2 * domain->d1 + 1;

  CuspIndex idx(o);
  const Slope inf = Slope::infinity();
  idx.add(inf);
  const std::int64_t a_inf = idx.at(0).period;
  const auto m_inf = *idx.classify(inf);
  const std::vector<IdealTriangle> star_inf = idx.triangles_at(inf, m_inf, Rational(0), Rational(a_inf));
  const std::set<IdealTriangle> star_inf_set(star_inf.begin(), star_inf.end());

  struct State {
    std::vector<IdealTriangle> star;
    Matrix2 g;
    std::string provenance;
  };
  std::map<Slope, State> C;
  C[inf] = {star_inf, Matrix2::U(a_inf), "stabilizer of cusp inf"};
  std::vector<Slope> frontier{inf};

  for (int it = 0; it < steps; ++it) {
    std::map<Slope, IdealTriangle> fresh;
    for (const Slope& k : frontier)
      for (const auto& t : C[k].star)
        for (const Slope& u : t.v) {
          if (C.count(u)) continue;
          auto [pos, ins] = fresh.emplace(u, t);
          if (!ins && t < pos->second) pos->second = t;
        }
    frontier.clear();
    for (const auto& [u, tri] : fresh) {
      auto m = idx.classify(u);
      if (!m) {
        idx.add(u);
        m = idx.classify(u);
      }
      State st;
      if (m->cls == 0) {
        // g(inf) = u and g^-1(tri) lies in the reference domain of infinity.
        auto [x, y] = chart_interval(tri, u, m->chart);
        x -= m->shift;
        y -= m->shift;
        const Rational a(a_inf);
        std::int64_t jmin = ((-y) / a).floor() + 1, jmax = ((a - x) / a).ceil() - 1;
        std::optional<Matrix2> g;
        for (std::int64_t j = jmin; j <= jmax && !g; ++j) {
          Matrix2 cand = (m->witness * Matrix2::U(-j * a_inf)).canonical();
          if (star_inf_set.count(tri.transformed(cand.inverse()))) g = cand;
        }
        if (!g) throw Error(ErrorKind::InvalidArgument, "no chart of infinity reaches " + tri.to_string());
        for (const auto& t : star_inf) st.star.push_back(t.transformed(*g));
        std::sort(st.star.begin(), st.star.end());
        st.g = *g;
        st.provenance = "maps inf-class triangle chart";
      } else {
        const Rational lo = chart_interval(tri, u, m->chart).first;
        st.star = idx.triangles_at(u, *m, lo, lo + idx.at(m->cls).period);
        st.g = (m->chart.inverse() * Matrix2::U(idx.at(m->cls).period) * m->chart).canonical();
        st.provenance = "stabilizer of cusp " + u.to_string();
      }
      require_member(o, st.g, "generator");
      C.emplace(u, std::move(st));
      frontier.push_back(u);
    }
  }

  GeneratorSet out;
  out.iterations = steps;
  out.directions = C.size();
  std::set<Matrix2> have;
  for (const auto& [k, st] : C) {
    Matrix2 g = st.g.canonical();
    if (g.is_projective_identity() || !have.insert(g).second) continue;
    out.generators.push_back({g, matrix_to_word(g), k, st.provenance});
  }
  return out;
}

// ---------------------------------------------------------------------------

OracleResult oracle_orbit(const Origami& o, std::size_t cap) {
  OracleResult r;
  std::map<std::vector<int>, int> seen;
  auto visit = [&](const Origami& x) {
    auto [it, fresh] = seen.emplace(projective_code(x), static_cast<int>(r.cosets.size()));
    if (fresh) {
      if (r.cosets.size() >= cap)
        throw Error(ErrorKind::OrbitCapExceeded, "orbit exceeds " + std::to_string(cap) + " elements");
      r.cosets.push_back(x);
    }
    return it->second;
  };
  visit(o);
  for (std::size_t i = 0; i < r.cosets.size(); ++i) {
    Origami cur = r.cosets[i];
    const int s = visit(act_S(cur));
    const int t = visit(act_T(cur));
    r.s_action.push_back(s);
    r.t_action.push_back(t);
  }
  r.index = static_cast<std::int64_t>(r.cosets.size());
  std::vector<char> done(r.cosets.size(), 0);
  for (std::size_t i = 0; i < r.cosets.size(); ++i) {
    if (done[i]) continue;
    std::int64_t len = 0;
    for (std::size_t j = i; !done[j]; j = r.t_action[j]) done[j] = 1, ++len;
    r.cusp_widths.push_back(len);
  }
  r.cusp_count = static_cast<std::int64_t>(r.cusp_widths.size());
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// Hasse-Lamb-Todd-Coxeter enumeration over the letters S, T, T^-1.
class CosetTable {
 public:
  explicit CosetTable(std::size_t cap) : cap_(cap) { fresh(); }

  bool overflow() const { return overflow_; }
  std::size_t defined() const { return table_.size(); }
  std::size_t size() const { return table_.size(); }
  bool alive(int c) const { return parent_[c] == c; }
  std::int64_t live_count() const {
    std::int64_t k = 0;
    for (std::size_t c = 0; c < table_.size(); ++c) k += alive(static_cast<int>(c));
    return k;
  }

  bool define(int c, int x) {
    if (table_.size() >= cap_) {
      overflow_ = true;
      return false;
    }
    int d = fresh();
    table_[c][x] = d;
    table_[d][kInv[x]] = c;
    return true;
  }

  void complete(int c) {
    for (int x = 0; x < 3 && alive(c); ++x)
      if (table_[c][x] < 0 && !define(c, x)) return;
  }

  // Scans w from c, defining cosets as needed; records deductions and
  // processes coincidences.
  void scan_and_fill(int c, const std::vector<int>& w) {
    if (w.empty()) return;
    int f = c, b = c;
    std::size_t i = 0, j = w.size();  // remaining letters are w[i, j)
    for (;;) {
      while (i < j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && table_[b][kInv[w[j - 1]]] >= 0) b = table_[b][kInv[w[--j]]];
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        table_[f][w[i]] = b;
        table_[b][kInv[w[i]]] = f;
        return;
      }
      if (!define(f, w[i])) return;
    }
  }

 private:
  static constexpr int kInv[3] = {0, 2, 1};

  int fresh() {
    table_.push_back({-1, -1, -1});
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(table_.size()) - 1;
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      int n = parent_[c];
      parent_[c] = r;
      c = n;
    }
    return r;
  }

  void merge(int a, int b, std::vector<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int e = queue[q];
      for (int x = 0; x < 3; ++x) {
        const int f = table_[e][x];
        if (f < 0) continue;
        table_[f][kInv[x]] = -1;
        const int e1 = rep(e), f1 = rep(f);
        if (table_[e1][x] >= 0) {
          merge(f1, table_[e1][x], queue);
        } else if (table_[f1][kInv[x]] >= 0) {
          merge(e1, table_[f1][kInv[x]], queue);
        } else {
          table_[e1][x] = f1;
          table_[f1][kInv[x]] = e1;
        }
      }
    }
  }

  std::size_t cap_;
  bool overflow_ = false;
  std::vector<std::array<int, 3>> table_;
  std::vector<int> parent_;
};

}  // namespace

CosetResult coset_enumeration(const std::vector<Word>& subgroup, std::size_t cap) {
  const std::vector<std::vector<int>> relators{{0, 0}, {0, 1, 0, 1, 0, 1}};
  CosetTable t(cap);
  for (const auto& w : subgroup) {
    t.scan_and_fill(0, word_letters(w));
    if (t.overflow()) return {false, 0, t.defined()};
  }
  for (std::size_t c = 0; c < t.size(); ++c) {
    const int ci = static_cast<int>(c);
    for (const auto& r : relators) {
      if (!t.alive(ci)) break;
      t.scan_and_fill(ci, r);
      if (t.overflow()) return {false, 0, t.defined()};
    }
    if (t.alive(ci)) t.complete(ci);
    if (t.overflow()) return {false, 0, t.defined()};
  }
  return {true, t.live_count(), t.defined()};
}

VolumeReport volume_report(const Origami& o) {
  const auto orbit = oracle_orbit(o);
  const auto dom = algorithm_A(o);
  const auto w = static_cast<std::int64_t>(dom.triangle_classes.size());
  return {orbit.index, w, orbit.index <= 3 * w, Rational(orbit.index, 3)};
}

}  // namespace sqt
