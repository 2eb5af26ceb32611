#include "metab/lp.hpp"

#include <algorithm>
#include <optional>

#include "metab/error.hpp"

namespace metab {

namespace {

// Dense tableau for: minimize c.x subject to A x = b, x >= 0, b >= 0.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
      : m_(a.size()), n_(a.empty() ? 0 : a.front().size()), rows_(std::move(a)), rhs_(std::move(b)),
        basis_(m_, -1) {}

  // Phase one with one artificial per row. Returns false if infeasible.
  bool phase_one() {
    std::size_t total = n_ + m_;
    for (std::size_t r = 0; r < m_; ++r) {
      rows_[r].resize(total);
      rows_[r][n_ + r] = 1;
      basis_[r] = static_cast<long>(n_ + r);
    }
    std::vector<Rational> cost(total);
    for (std::size_t j = n_; j < total; ++j) cost[j] = 1;
    run(cost, total);
    Rational infeas = 0;
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] >= static_cast<long>(n_)) infeas += rhs_[r];
    if (infeas != 0) return false;
    // Drive artificial variables out of the basis, dropping redundant rows.
    for (std::size_t r = 0; r < m_;) {
      if (basis_[r] < static_cast<long>(n_)) {
        ++r;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < n_ && !col; ++j)
        if (rows_[r][j] != 0) col = j;
      if (col) {
        pivot(r, *col, total);
        ++r;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
      }
    }
    for (auto& row : rows_) row.resize(n_);
    return true;
  }

  // Returns false if unbounded.
  bool phase_two(const std::vector<Rational>& cost) { return run(cost, n_); }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(n_);
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] >= 0 && basis_[r] < static_cast<long>(n_))
        x[static_cast<std::size_t>(basis_[r])] = rhs_[r];
    return x;
  }

 private:
  void pivot(std::size_t p, std::size_t q, std::size_t width) {
    Rational inv = 1 / rows_[p][q];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < width; ++j)
      if (rows_[p][j] != 0) {
        rows_[p][j] *= inv;
        nz.push_back(j);
      }
    rhs_[p] *= inv;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == p || rows_[r][q] == 0) continue;
      Rational f = rows_[r][q];
      for (auto j : nz) rows_[r][j] -= f * rows_[p][j];
      rhs_[r] -= f * rhs_[p];
    }
    basis_[p] = static_cast<long>(q);
  }

  // Primal simplex minimizing cost over the first `width` columns.
  // Dantzig pricing, switching to Bland's rule after degenerate stalls.
  bool run(const std::vector<Rational>& cost, std::size_t width) {
    std::size_t degenerate = 0;
    while (true) {
      std::vector<Rational> reduced(cost.begin(), cost.begin() + static_cast<std::ptrdiff_t>(width));
      for (std::size_t r = 0; r < m_; ++r) {
        const Rational& cb = cost[static_cast<std::size_t>(basis_[r])];
        if (cb == 0) continue;
        for (std::size_t j = 0; j < width; ++j)
          if (rows_[r][j] != 0) reduced[j] -= cb * rows_[r][j];
      }
      bool bland = degenerate > 50;
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < width; ++j) {
        if (reduced[j] >= 0) continue;
        if (!enter || (!bland && reduced[j] < reduced[*enter])) enter = j;
        if (bland) break;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        if (rows_[r][*enter] <= 0) continue;
        Rational ratio = rhs_[r] / rows_[r][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) return false;
      degenerate = best == 0 ? degenerate + 1 : 0;
      pivot(*leave, *enter, width);
    }
  }

  std::size_t m_, n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<long> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.nvars;
  std::vector<bool> is_free = lp.free_var;
  is_free.resize(n, false);
  // Column layout: x_j (or x_j^+), then x_j^- for free vars, then slacks.
  std::vector<std::size_t> neg_col(n, 0);
  std::size_t cols = n;
  for (std::size_t j = 0; j < n; ++j)
    if (is_free[j]) neg_col[j] = cols++;
  std::size_t slack0 = cols;
  for (const auto& c : lp.constraints)
    if (c.sense != LinearConstraint::Sense::Eq) ++cols;

  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::size_t slack = slack0;
  for (const auto& c : lp.constraints) {
    if (c.a.size() != n) throw DimensionMismatch("constraint has the wrong number of coefficients");
    std::vector<Rational> row(cols);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = c.a[j];
      if (is_free[j]) row[neg_col[j]] = -c.a[j];
    }
    if (c.sense == LinearConstraint::Sense::Le) row[slack++] = 1;
    if (c.sense == LinearConstraint::Sense::Ge) row[slack++] = -1;
    Rational rhs = c.b;
    if (rhs < 0) {
      for (auto& x : row) x = -x;
      rhs = -rhs;
    }
    a.push_back(std::move(row));
    b.push_back(rhs);
  }
  std::vector<Rational> cost(cols);
  for (std::size_t j = 0; j < n && j < lp.objective.size(); ++j) {
    cost[j] = -lp.objective[j];
    if (is_free[j]) cost[neg_col[j]] = lp.objective[j];
  }

  LpResult result;
  if (a.empty()) {
    // No constraints: bounded only if no improving direction exists.
    for (std::size_t j = 0; j < cols; ++j)
      if (cost[j] < 0) {
        result.status = LpStatus::Unbounded;
        return result;
      }
    result.status = LpStatus::Optimal;
    result.x.assign(n, Rational(0));
    result.value = 0;
    return result;
  }
  Tableau t(std::move(a), std::move(b));
  if (!t.phase_one()) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  if (!t.phase_two(cost)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  auto y = t.solution();
  result.status = LpStatus::Optimal;
  result.x.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) result.x[j] = is_free[j] ? y[j] - y[neg_col[j]] : y[j];
  result.value = 0;
  for (std::size_t j = 0; j < n && j < lp.objective.size(); ++j)
    result.value += lp.objective[j] * result.x[j];
  return result;
}

PositivityResult strictly_positive_combination(const std::vector<std::vector<Rational>>& rows,
                                               std::size_t k) {
  for (const auto& r : rows)
    if (r.size() != k) throw DimensionMismatch("positivity rows have the wrong length");
  PositivityResult out;
  const std::size_t m = rows.size();
  if (k == 0) {
    out.feasible = true;
    out.x.assign(m, Rational(0));
    return out;
  }
  if (m > 0) {
    // maximize t subject to sum_j x_j g_j[i] >= t, t <= 1, x free.
    LinearProgram lp;
    lp.nvars = m + 1;
    lp.free_var.assign(m + 1, true);
    lp.objective.assign(m + 1, Rational(0));
    lp.objective[m] = 1;
    for (std::size_t i = 0; i < k; ++i) {
      LinearConstraint c;
      c.a.assign(m + 1, Rational(0));
      for (std::size_t j = 0; j < m; ++j) c.a[j] = rows[j][i];
      c.a[m] = -1;
      c.sense = LinearConstraint::Sense::Ge;
      c.b = 0;
      lp.constraints.push_back(std::move(c));
    }
    LinearConstraint cap;
    cap.a.assign(m + 1, Rational(0));
    cap.a[m] = 1;
    cap.b = 1;
    lp.constraints.push_back(std::move(cap));
    auto r = solve_lp(lp);
    if (r.status == LpStatus::Optimal && r.value > 0) {
      out.feasible = true;
      out.x.assign(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(m));
      return out;
    }
  }
  // Gordan alternative: lambda >= 0, sum lambda = 1, g_j . lambda = 0.
  LinearProgram dual;
  dual.nvars = k;
  dual.objective.assign(k, Rational(0));
  for (std::size_t j = 0; j < m; ++j)
    dual.constraints.push_back({rows[j], LinearConstraint::Sense::Eq, Rational(0)});
  dual.constraints.push_back(
      {std::vector<Rational>(k, Rational(1)), LinearConstraint::Sense::Eq, Rational(1)});
  auto d = solve_lp(dual);
  if (d.status != LpStatus::Optimal)
    throw Error("internal: neither a positive combination nor a Gordan certificate was found");
  out.feasible = false;
  out.lambda = d.x;
  return out;
}

bool verify_gordan(const std::vector<std::vector<Rational>>& rows,
                   const std::vector<Rational>& lambda) {
  Rational sum = 0;
  for (const auto& l : lambda) {
    if (l < 0) return false;
    sum += l;
  }
  if (sum == 0) return false;
  for (const auto& r : rows) {
    if (r.size() != lambda.size()) return false;
    Rational dot = 0;
    for (std::size_t i = 0; i < r.size(); ++i) dot += r[i] * lambda[i];
    if (dot != 0) return false;
  }
  return true;
}

}  // namespace metab
