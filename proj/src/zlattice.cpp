#include "metab/zlattice.hpp"

#include <utility>

#include "metab/error.hpp"

namespace metab {

IntVector to_int_vector(const Exponent& a) {
  IntVector v;
  v.reserve(a.size());
  for (long x : a) v.emplace_back(x);
  return v;
}

Exponent to_exponent(const IntVector& v) {
  Exponent a;
  a.reserve(v.size());
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw Error("lattice coordinate exceeds machine range");
    a.push_back(x.get_si());
  }
  return a;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void axpy_row(IntVector& target, const Integer& factor, const IntVector& source) {
  for (std::size_t k = 0; k < target.size(); ++k) target[k] -= factor * source[k];
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix rows) {
  if (rows.empty()) return rows;
  std::size_t cols = rows.front().size();
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    // Euclid on column c among rows pivot_row..end.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r)
        if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c])))
          best = r;
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool clean = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        Integer q = floor_div(rows[r][c], rows[pivot_row][c]);
        axpy_row(rows[r], q, rows[pivot_row]);
        if (rows[r][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (pivot_row < rows.size() && rows[pivot_row][c] != 0) {
      if (rows[pivot_row][c] < 0)
        for (auto& x : rows[pivot_row]) x = -x;
      pivot_cols.push_back(c);
      ++pivot_row;
    }
  }
  rows.resize(pivot_row);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t c = pivot_cols[i];
    for (std::size_t r = 0; r < i; ++r) {
      Integer q = floor_div(rows[r][c], rows[i][c]);
      if (q != 0) axpy_row(rows[r], q, rows[i]);
    }
  }
  return rows;
}

std::size_t lattice_rank(const std::vector<Exponent>& generators, std::size_t n) {
  IntMatrix rows;
  for (const auto& g : generators) {
    if (g.size() != n) throw DimensionMismatch("lattice generator length mismatch");
    rows.push_back(to_int_vector(g));
  }
  return hermite_normal_form(std::move(rows)).size();
}

bool generates_full_lattice(const std::vector<Exponent>& generators, std::size_t n) {
  if (n == 0) return true;
  IntMatrix rows;
  for (const auto& g : generators) {
    if (g.size() != n) throw DimensionMismatch("lattice generator length mismatch");
    rows.push_back(to_int_vector(g));
  }
  auto h = hermite_normal_form(std::move(rows));
  if (h.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (h[i][i] != 1) return false;
  return true;
}

std::optional<IntVector> lattice_coordinates(const IntMatrix& basis, const IntVector& target) {
  // Solve via Smith form of the basis matrix (rows = basis vectors).
  std::size_t m = basis.size();
  std::size_t n = target.size();
  if (m == 0) {
    for (const auto& x : target)
      if (x != 0) return std::nullopt;
    return IntVector{};
  }
  // A is n x m with columns = basis vectors; solve A c = target.
  IntMatrix a(n, IntVector(m));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) a[i][j] = basis[j].at(i);
  auto s = smith_normal_form(a);
  // left*A*right = D ; A c = t  <=>  D (right^{-1} c) = left t.
  IntVector lt(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) lt[i] += s.left[i][k] * target[k];
  IntVector z(m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Integer d = i < m ? s.diagonal[i][i] : Integer(0);
    if (d == 0) {
      if (lt[i] != 0) return std::nullopt;
      continue;
    }
    if (!mpz_divisible_p(lt[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    z[i] = lt[i] / d;
  }
  IntVector c(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) c[i] += s.right[i][k] * z[k];
  return c;
}

namespace {

IntMatrix identity(std::size_t n) {
  IntMatrix id(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

void swap_cols(IntMatrix& a, std::size_t i, std::size_t j) {
  for (auto& row : a) std::swap(row[i], row[j]);
}

void col_axpy(IntMatrix& a, std::size_t target, const Integer& q, std::size_t source) {
  for (auto& row : a) row[target] -= q * row[source];
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
  std::size_t rows = input.size();
  std::size_t cols = rows ? input.front().size() : 0;
  SmithForm s{identity(rows), input, identity(cols)};
  auto& d = s.diagonal;
  std::size_t limit = std::min(rows, cols);
  for (std::size_t t = 0; t < limit; ++t) {
    while (true) {
      // Smallest nonzero entry in the trailing block moves to (t, t).
      std::size_t br = rows, bc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (d[i][j] != 0 && (br == rows || abs(d[i][j]) < abs(d[br][bc]))) {
            br = i;
            bc = j;
          }
      if (br == rows) return s;
      std::swap(d[t], d[br]);
      std::swap(s.left[t], s.left[br]);
      swap_cols(d, t, bc);
      swap_cols(s.right, t, bc);
      bool done = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d[i][t] == 0) continue;
        Integer q = floor_div(d[i][t], d[t][t]);
        axpy_row(d[i], q, d[t]);
        axpy_row(s.left[i], q, s.left[t]);
        if (d[i][t] != 0) done = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d[t][j] == 0) continue;
        Integer q = floor_div(d[t][j], d[t][t]);
        col_axpy(d, j, q, t);
        col_axpy(s.right, j, q, t);
        if (d[t][j] != 0) done = false;
      }
      if (!done) continue;
      // Divisibility: d[t][t] must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(d[i][j].get_mpz_t(), d[t][t].get_mpz_t())) {
            // Add row i to row t and retry.
            for (std::size_t k = 0; k < cols; ++k) d[t][k] += d[i][k];
            for (std::size_t k = 0; k < rows; ++k) s.left[t][k] += s.left[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : s.left[t]) x = -x;
    }
  }
  return s;
}

IntMatrix integer_kernel(const IntMatrix& a, std::size_t cols) {
  if (a.empty()) return identity(cols);
  auto s = smith_normal_form(a);
  IntMatrix basis;
  std::size_t rank = 0;
  for (std::size_t i = 0; i < std::min(a.size(), cols); ++i)
    if (s.diagonal[i][i] != 0) rank = i + 1;
  for (std::size_t j = rank; j < cols; ++j) {
    IntVector v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = s.right[i][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = k ? b.front().size() : 0;
  IntMatrix r(n, IntVector(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
  return r;
}

}  // namespace metab
