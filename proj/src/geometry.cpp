#include "metab/geometry.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "metab/error.hpp"
#include "metab/lp.hpp"

namespace metab {

RationalVector to_rational(const Exponent& a) { return RationalVector(a.begin(), a.end()); }

Rational dot(const RationalVector& v, const RationalVector& w) {
  if (v.size() != w.size()) throw DimensionMismatch("dot product of vectors of different length");
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * w[i];
  return s;
}

namespace {

RationalVector sub(const RationalVector& a, const RationalVector& b) {
  RationalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Basis of {x : row . x = 0 for all rows} over Q.
std::vector<RationalVector> kernel(std::vector<RationalVector> rows, std::size_t cols) {
  std::vector<long> pivot_of_col(cols, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_of_col[c] = static_cast<long>(r);
    ++r;
  }
  std::vector<RationalVector> out;
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    RationalVector v(cols);
    v[c] = 1;
    for (std::size_t j = 0; j < cols; ++j)
      if (pivot_of_col[j] >= 0) v[j] = -rows[static_cast<std::size_t>(pivot_of_col[j])][c];
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t rank_of(const std::vector<RationalVector>& rows, std::size_t cols) {
  return cols - kernel(rows, cols).size();
}

// Solves the nonsingular square system m x = b.
RationalVector solve(std::vector<RationalVector> m, RationalVector b) {
  std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) throw Error("internal: singular Gram matrix");
    std::swap(m[p], m[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= m[i][i];
  return b;
}

// Scales a nonzero rational vector to a primitive integer vector.
RationalVector primitive(RationalVector v) {
  Integer l = 1, g = 0;
  for (auto& x : v) {
    x.canonicalize();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  for (auto& x : v) {
    x *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g != 0)
    for (auto& x : v) x /= g;
  return v;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

LatticePolytope LatticePolytope::hull(const std::vector<Exponent>& input) {
  if (input.empty()) throw PreconditionError("convex hull of no points");
  LatticePolytope p;
  p.n_ = input.front().size();
  for (const auto& x : input)
    if (x.size() != p.n_) throw DimensionMismatch("hull points differ in dimension");
  std::set<Exponent> uniq(input.begin(), input.end());
  p.points_.assign(uniq.begin(), uniq.end());
  const std::size_t n = p.n_;
  const RationalVector p0 = to_rational(p.points_.front());

  std::vector<RationalVector> basis;
  for (const auto& x : p.points_) {
    auto d = sub(to_rational(x), p0);
    auto trial = basis;
    trial.push_back(d);
    if (rank_of(trial, n) == trial.size()) basis = std::move(trial);
  }
  const std::size_t k = basis.size();
  p.dim_ = k;
  for (auto& e : kernel(basis, n)) {
    e = primitive(std::move(e));
    p.equations_.push_back(Equation{e, dot(e, p0)});
  }
  if (k == 0) {
    p.vertices_ = p.points_;
    return p;
  }

  std::vector<RationalVector> gram(k, RationalVector(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
  std::vector<RationalVector> local;
  for (const auto& x : p.points_) {
    auto d = sub(to_rational(x), p0);
    RationalVector rhs(k);
    for (std::size_t i = 0; i < k; ++i) rhs[i] = dot(basis[i], d);
    local.push_back(solve(gram, rhs));
  }

  const std::size_t m = p.points_.size();
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (m >= k) do {
      std::vector<RationalVector> rows;
      for (std::size_t j = 1; j < k; ++j) rows.push_back(sub(local[idx[j]], local[idx[0]]));
      auto ker = kernel(rows, k);
      if (ker.size() != 1) continue;
      RationalVector u = ker.front();
      Rational base = dot(u, local[idx[0]]);
      bool le = true, ge = true;
      std::vector<std::size_t> on;
      for (std::size_t q = 0; q < m; ++q) {
        Rational s = dot(u, local[q]) - base;
        if (s > 0) le = false;
        if (s < 0) ge = false;
        if (s == 0) on.push_back(q);
      }
      if (!le && !ge) continue;
      if (!le) {
        for (auto& x : u) x = -x;
      }
      if (!seen.insert(on).second) continue;
      // Ambient normal w with basis_i . w = u_i, inside the span of the basis.
      RationalVector c = solve(gram, u);
      RationalVector w(n);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) w[j] += c[i] * basis[i][j];
      w = primitive(std::move(w));
      Rational offset = dot(w, to_rational(p.points_[on.front()]));
      p.facets_.push_back(Facet{std::move(w), offset, std::move(on)});
    } while (next_combination(idx, m));

  std::sort(p.facets_.begin(), p.facets_.end(),
            [](const Facet& a, const Facet& b) { return a.points < b.points; });
  for (std::size_t q = 0; q < m; ++q) {
    std::optional<std::vector<std::size_t>> meet;
    for (const auto& f : p.facets_) {
      if (!std::binary_search(f.points.begin(), f.points.end(), q)) continue;
      if (!meet) {
        meet = f.points;
      } else {
        std::vector<std::size_t> out;
        std::set_intersection(meet->begin(), meet->end(), f.points.begin(), f.points.end(),
                              std::back_inserter(out));
        meet = std::move(out);
      }
    }
    if (meet && meet->size() == 1) p.vertices_.push_back(p.points_[q]);
  }
  return p;
}

bool LatticePolytope::contains_scaled(const RationalVector& x, const Rational& scale) const {
  if (x.size() != n_) throw DimensionMismatch("point has the wrong dimension");
  for (const auto& e : equations_)
    if (dot(e.normal, x) != scale * e.value) return false;
  for (const auto& f : facets_)
    if (dot(f.normal, x) > scale * f.offset) return false;
  return true;
}

bool LatticePolytope::contains(const Exponent& x) const { return contains_scaled(to_rational(x)); }

Rational LatticePolytope::support(const RationalVector& v) const {
  std::optional<Rational> best;
  for (const auto& x : vertices_) {
    Rational s = dot(v, to_rational(x));
    if (!best || s > *best) best = s;
  }
  return *best;
}

std::vector<Exponent> LatticePolytope::argmax_points(const RationalVector& v) const {
  Rational h = support(v);
  std::vector<Exponent> out;
  for (const auto& x : points_)
    if (dot(v, to_rational(x)) == h) out.push_back(x);
  return out;
}

LatticePolytope convex_hull(const std::vector<Exponent>& points) {
  return LatticePolytope::hull(points);
}

std::vector<FaceDescriptor> strict_faces(const LatticePolytope& p) {
  std::vector<FaceDescriptor> out;
  if (p.dimension() == 0) return out;
  std::set<std::vector<std::size_t>> faces;
  std::vector<std::vector<std::size_t>> frontier;
  for (const auto& f : p.facets())
    if (faces.insert(f.points).second) frontier.push_back(f.points);
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& a : frontier)
      for (const auto& f : p.facets()) {
        std::vector<std::size_t> meet;
        std::set_intersection(a.begin(), a.end(), f.points.begin(), f.points.end(),
                              std::back_inserter(meet));
        if (!meet.empty() && faces.insert(meet).second) next.push_back(meet);
      }
    frontier = std::move(next);
  }
  for (const auto& face : faces) {
    RationalVector w(p.ambient_dim());
    for (const auto& f : p.facets())
      if (std::includes(f.points.begin(), f.points.end(), face.begin(), face.end()))
        for (std::size_t j = 0; j < w.size(); ++j) w[j] += f.normal[j];
    w = primitive(std::move(w));
    std::vector<Exponent> pts;
    for (auto q : face) pts.push_back(p.points()[q]);
    if (p.argmax_points(w) != pts) throw Error("internal: face direction does not expose the face");
    std::vector<Exponent> verts;
    for (const auto& x : pts)
      if (std::binary_search(p.vertices().begin(), p.vertices().end(), x)) verts.push_back(x);
    out.push_back(FaceDescriptor{Direction(std::move(w)), std::move(verts), std::move(pts)});
  }
  return out;
}

FaceAccessReport is_face_accessible(const GGraph& g) {
  FaceAccessReport report;
  if (g.empty()) return report;
  auto hull = convex_hull(g.vertices());
  for (auto& face : strict_faces(hull)) {
    const auto& w = face.direction.coords();
    Rational h = hull.support(w);
    bool escapes = false;
    for (const auto& e : g.edges()) {
      if (dot(w, to_rational(e.s)) != h) continue;
      if (dot(w, to_rational(g.destination(e))) < h) {
        escapes = true;
        break;
      }
    }
    if (!escapes) {
      report.accessible = false;
      report.inaccessible.push_back(std::move(face));
    }
  }
  return report;
}

namespace {

struct Cell {
  std::vector<RationalVector> eq, strict;
  std::vector<std::vector<Exponent>> selected;
  std::vector<int> signs;
};

// A point of the cell satisfying the strict inequalities, if any.
std::optional<RationalVector> interior_point(const Cell& c, std::size_t n) {
  if (c.strict.empty()) return RationalVector(n);
  LinearProgram lp;
  lp.nvars = n + 1;
  lp.free_var.assign(n + 1, true);
  lp.objective.assign(n + 1, Rational(0));
  lp.objective[n] = 1;
  for (const auto& e : c.eq) {
    RationalVector a = e;
    a.push_back(0);
    lp.constraints.push_back({std::move(a), LinearConstraint::Sense::Eq, Rational(0)});
  }
  for (const auto& s : c.strict) {
    RationalVector a = s;
    a.push_back(-1);
    lp.constraints.push_back({std::move(a), LinearConstraint::Sense::Ge, Rational(0)});
  }
  RationalVector cap(n + 1);
  cap[n] = 1;
  lp.constraints.push_back({std::move(cap), LinearConstraint::Sense::Le, Rational(1)});
  auto r = solve_lp(lp);
  if (r.status != LpStatus::Optimal || r.value <= 0) return std::nullopt;
  r.x.pop_back();
  return r.x;
}

bool holds(const Cell& c, const RationalVector& v) {
  for (const auto& e : c.eq)
    if (dot(e, v) != 0) return false;
  for (const auto& s : c.strict)
    if (dot(s, v) <= 0) return false;
  return true;
}

}  // namespace

std::vector<FanCell> refined_fan(const std::vector<LatticePolytope>& polytopes,
                                 const std::vector<Exponent>& hyperplanes) {
  std::size_t n = 0;
  if (!polytopes.empty()) {
    n = polytopes.front().ambient_dim();
  } else if (!hyperplanes.empty()) {
    n = hyperplanes.front().size();
  } else {
    throw PreconditionError("refined_fan needs a polytope or a hyperplane to fix the dimension");
  }
  if (n == 0) return {};
  for (const auto& p : polytopes)
    if (p.ambient_dim() != n) throw DimensionMismatch("polytopes differ in dimension");
  for (const auto& a : hyperplanes)
    if (a.size() != n) throw DimensionMismatch("hyperplane normal has the wrong dimension");

  std::vector<Cell> cells(1);
  for (const auto& p : polytopes) {
    // Candidate faces: strict faces, plus the polytope itself when it is flat.
    std::vector<std::vector<Exponent>> faces;
    for (const auto& f : strict_faces(p)) faces.push_back(f.points);
    if (p.dimension() < n) faces.push_back(p.points());
    std::vector<Cell> next;
    for (const auto& cell : cells)
      for (const auto& face : faces) {
        Cell c = cell;
        std::vector<Exponent> fv;
        for (const auto& x : face)
          if (std::binary_search(p.vertices().begin(), p.vertices().end(), x)) fv.push_back(x);
        RationalVector x0 = to_rational(fv.front());
        for (std::size_t i = 1; i < fv.size(); ++i) c.eq.push_back(sub(to_rational(fv[i]), x0));
        for (const auto& u : p.vertices())
          if (!std::binary_search(fv.begin(), fv.end(), u))
            c.strict.push_back(sub(x0, to_rational(u)));
        c.selected.push_back(face);
        if (interior_point(c, n)) next.push_back(std::move(c));
      }
    cells = std::move(next);
  }
  for (const auto& a : hyperplanes) {
    RationalVector ra = to_rational(a);
    bool zero = std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
    std::vector<Cell> next;
    for (const auto& cell : cells) {
      if (zero) {
        Cell c = cell;
        c.signs.push_back(0);
        next.push_back(std::move(c));
        continue;
      }
      for (int s : {1, 0, -1}) {
        Cell c = cell;
        if (s == 0) {
          c.eq.push_back(ra);
        } else {
          RationalVector d = ra;
          if (s < 0)
            for (auto& x : d) x = -x;
          c.strict.push_back(std::move(d));
        }
        c.signs.push_back(s);
        if (interior_point(c, n)) next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }

  std::vector<FanCell> out;
  for (const auto& cell : cells) {
    std::vector<Cell> pieces;
    if (!cell.strict.empty()) {
      pieces.push_back(cell);
    } else {
      // A linear subspace: split off zero lexicographically.
      for (std::size_t j = 0; j < n; ++j)
        for (int s : {1, -1}) {
          Cell c = cell;
          for (std::size_t i = 0; i < j; ++i) {
            RationalVector e(n);
            e[i] = 1;
            c.eq.push_back(std::move(e));
          }
          RationalVector e(n);
          e[j] = s;
          c.strict.push_back(std::move(e));
          pieces.push_back(std::move(c));
        }
    }
    for (const auto& c : pieces) {
      auto v = interior_point(c, n);
      if (!v) continue;
      RationalVector rep = primitive(std::move(*v));
      if (!holds(c, rep)) throw Error("internal: fan representative left its cell");
      out.push_back(FanCell{Direction(std::move(rep)), cell.selected, cell.signs});
    }
  }
  return out;
}

}  // namespace metab
