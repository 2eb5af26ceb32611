#include "metab/decide.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "metab/error.hpp"
#include "metab/euler_closure.hpp"
#include "metab/lp.hpp"
#include "metab/posalg.hpp"
#include "metab/zlattice.hpp"

namespace metab {

void validate(const Budget& b) {
  if (b.max_degree < 0) throw PreconditionError("budget: degree must be nonnegative");
  if (b.max_height < 0) throw PreconditionError("budget: height must be nonnegative");
  if (b.samples < 0) throw PreconditionError("budget: sample count must be nonnegative");
  if (!(b.timeout_seconds > 0)) throw PreconditionError("budget: timeout must be positive");
  if (b.closure_N < 1) throw PreconditionError("budget: closure scale must be positive");
}

bool StopToken::requested() const {
  if (stop && stop->load()) return true;
  return std::chrono::steady_clock::now() >= deadline;
}

namespace {

std::vector<int> one_based(const std::vector<std::size_t>& idx) {
  std::vector<int> out;
  for (auto i : idx) out.push_back(static_cast<int>(i) + 1);
  return out;
}

std::vector<int> all_one_based(std::size_t K) {
  std::vector<int> out(K);
  std::iota(out.begin(), out.end(), 1);
  return out;
}

std::string describe_lattice(const std::vector<Exponent>& basis) {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < basis.size(); ++k) {
    os << (k ? ", " : "") << "(";
    for (std::size_t i = 0; i < basis[k].size(); ++i) os << (i ? "," : "") << basis[k][i];
    os << ")";
  }
  os << "]";
  return os.str();
}

Exponent from_lattice(const Exponent& s, const std::vector<Exponent>& lattice, std::size_t n) {
  Exponent out(n, 0);
  for (std::size_t k = 0; k < lattice.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) out[i] += s[k] * lattice[k][i];
  return out;
}

// Slots are (generator index, exponent) pairs: the coefficients of f.
struct BoxSystem {
  std::size_t hvars = 0;
  std::vector<std::pair<int, Exponent>> slot;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> terms;
};

BoxSystem build_box(const ReducedProblem& p, std::size_t K, int D) {
  std::vector<Exponent> shifts;
  Exponent b(p.r, -D);
  while (true) {
    shifts.push_back(b);
    std::size_t k = 0;
    while (k < p.r && b[k] == D) b[k] = -D, ++k;
    if (k == p.r) break;
    ++b[k];
  }
  BoxSystem sys;
  sys.hvars = p.basis.size() * shifts.size();
  std::map<std::pair<int, Exponent>, std::size_t> ids;
  for (std::size_t j = 0; j < p.basis.size(); ++j)
    for (std::size_t bi = 0; bi < shifts.size(); ++bi)
      for (std::size_t i = 0; i < K; ++i)
        for (const auto& [e, c] : p.basis[j][i].terms()) {
          std::pair<int, Exponent> key{static_cast<int>(i), e + shifts[bi]};
          auto [it, fresh] = ids.emplace(key, sys.slot.size());
          if (fresh) {
            sys.slot.push_back(key);
            sys.terms.emplace_back();
          }
          sys.terms[it->second].emplace_back(j * shifts.size() + bi, c);
        }
  return sys;
}

LaurentVector slot_values(const BoxSystem& sys, const std::vector<Rational>& h, std::size_t K,
                          std::size_t r, std::vector<Rational>* values = nullptr) {
  LaurentVector f(K, LaurentPoly(r));
  if (values) values->assign(sys.slot.size(), Rational(0));
  for (std::size_t s = 0; s < sys.slot.size(); ++s) {
    Rational v = 0;
    for (const auto& [var, c] : sys.terms[s]) v += c * h[var];
    if (v != 0) f[static_cast<std::size_t>(sys.slot[s].first)].add_term(sys.slot[s].second, v);
    if (values) (*values)[s] = v;
  }
  return f;
}

// Largest-support positive element in the box, peeled until it satisfies the
// accessibility condition. Every element with a support inside the box and a
// slot at the top v-level of a violating candidate violates at v as well, so
// forbidding those slots loses nothing.
std::optional<LaurentVector> search_box(const ReducedProblem& p, std::size_t K, int D,
                                        const Budget& budget, const StopToken& token,
                                        nlohmann::json& log) {
  BoxSystem sys = build_box(p, K, D);
  const std::size_t S = sys.slot.size();
  std::vector<bool> forbidden(S, false);
  int rounds = 0;
  while (!token.requested()) {
    ++rounds;
    std::vector<std::size_t> allowed;
    for (std::size_t s = 0; s < S; ++s)
      if (!forbidden[s]) allowed.push_back(s);
    LinearProgram lp;
    lp.nvars = sys.hvars + allowed.size();
    lp.free_var.assign(lp.nvars, false);
    for (std::size_t v = 0; v < sys.hvars; ++v) lp.free_var[v] = true;
    lp.objective.assign(lp.nvars, Rational(0));
    std::size_t t = sys.hvars;
    for (std::size_t s = 0; s < S; ++s) {
      LinearConstraint row;
      row.a.assign(lp.nvars, Rational(0));
      for (const auto& [var, c] : sys.terms[s]) row.a[var] += c;
      row.b = 0;
      if (forbidden[s]) {
        row.sense = LinearConstraint::Sense::Eq;
      } else {
        row.a[t] = -1;
        row.sense = LinearConstraint::Sense::Ge;
        LinearConstraint cap;
        cap.a.assign(lp.nvars, Rational(0));
        cap.a[t] = 1;
        cap.sense = LinearConstraint::Sense::Le;
        cap.b = 1;
        lp.constraints.push_back(std::move(cap));
        lp.objective[t] = 1;
        ++t;
      }
      lp.constraints.push_back(std::move(row));
    }
    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::Optimal || res.value == 0) break;
    std::vector<Rational> h(res.x.begin(), res.x.begin() + static_cast<long>(sys.hvars));
    std::vector<Rational> values;
    LaurentVector f = slot_values(sys, h, K, p.r, &values);
    if (!check_full_image(f)) break;
    auto cond = check_condition(f, all_indices(K), {}, p.steps);
    if (cond.holds) {
      Integer l = lcm_of_denominators(h);
      Integer g = 0;
      for (auto& x : h) {
        x *= l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
      }
      if (g != 0)
        for (auto& x : h) x /= g;
      LaurentVector fi = slot_values(sys, h, K, p.r);
      log["rounds"] = rounds;
      if (budget.max_height > 0) {
        for (const auto& q : fi)
          if (q.max_abs_coefficient() > budget.max_height) {
            log["height_exceeded"] = true;
            return std::nullopt;
          }
      }
      return fi;
    }
    const Direction& v = *cond.violating;
    IndexSet m = Mv(all_indices(K), f, v);
    std::optional<Rational> top;
    for (int i : m) {
      auto d = weighted_degree(f[static_cast<std::size_t>(i) - 1], v);
      if (d && (!top || *d > *top)) top = d;
    }
    std::size_t peeled = 0;
    for (std::size_t s = 0; s < S; ++s) {
      if (forbidden[s] || values[s] == 0) continue;
      int i = sys.slot[s].first + 1;
      if (std::find(m.begin(), m.end(), i) != m.end() && v.dot(sys.slot[s].second) == *top) {
        forbidden[s] = true;
        ++peeled;
      }
    }
    if (peeled == 0) throw Error("procedure A: violating direction selects no slot");
  }
  log["rounds"] = rounds;
  return std::nullopt;
}

GGraph to_original(const GGraph& g, const ReducedProblem& p, const Instance& inst) {
  if (p.full()) return g;
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back(Edge{from_lattice(e.s, p.lattice, inst.nvars()), e.label});
  return GGraph(inst.steps, std::move(edges));
}

std::optional<Verdict> make_yes(const Instance& inst, const ReducedProblem& p,
                                const LaurentVector& f, const Budget& budget,
                                nlohmann::json& log) {
  GGraph g = graph_from_positions(f, p.steps);
  GGraph u = g;
  if (!is_connected(g)) {
    try {
      auto closure = eulerian_closure(g, budget.closure_N);
      u = closure.graph;
      log["closure_N"] = closure.N;
    } catch (const BudgetExhausted& e) {
      log["closure"] = e.what();
      return std::nullopt;
    }
  }
  auto word = euler_circuit(u, u.vertices().front());
  if (!word) throw Error("procedure A: closure is not Eulerian");
  Verdict out;
  out.kind = Verdict::Kind::Yes;
  out.subset = all_one_based(inst.size());
  out.word = *word;
  out.graph = to_original(u, p, inst);
  if (p.full()) {
    out.f = f;
  } else {
    for (const auto& q : f) out.f.push_back(q.substitute_monomials(p.lattice, inst.nvars()));
  }
  if (!verify_witness(out.word, inst) || !verify_witness(*out.graph, inst))
    throw Error("procedure A: constructed witness fails verification");
  return out;
}

}  // namespace

ReducedProblem reduce_problem(const Instance& inst, const SyzygyOptions& options) {
  ReducedProblem p;
  const std::size_t n = inst.nvars(), K = inst.size();
  auto full = syzygy_MZ(inst.syzygy_instance(), options).generators;
  if (generates_full_lattice(inst.steps, n)) {
    p.r = n;
    p.steps = inst.steps;
    p.basis = std::move(full);
    return p;
  }
  p.full_lattice = false;
  IntMatrix rows;
  for (const auto& a : inst.steps) rows.push_back(to_int_vector(a));
  IntMatrix hnf = hermite_normal_form(rows);
  for (const auto& b : hnf) p.lattice.push_back(to_exponent(b));
  p.r = p.lattice.size();
  for (const auto& a : inst.steps) {
    auto c = lattice_coordinates(hnf, to_int_vector(a));
    if (!c) throw Error("step outside its own lattice");
    p.steps.push_back(to_exponent(*c));
  }
  p.basis = restrict_to_sublattice(full, n, K, p.lattice, options.limits);
  return p;
}

Verdict procedure_A(const Instance& inst, const Budget& budget) {
  validate(budget);
  StopToken token;
  token.deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(budget.timeout_seconds));
  return procedure_A(inst, reduce_problem(inst, budget.syzygy), budget, token);
}

Verdict procedure_A(const Instance& inst, const ReducedProblem& p, const Budget& budget,
                    const StopToken& token) {
  Verdict out;
  out.report["syzygy_generators"] = p.basis.size();
  if (p.basis.empty()) {
    out.report["reason"] = "syzygy module is zero";
    return out;
  }
  nlohmann::json boxes = nlohmann::json::array();
  for (int D = 0; D <= budget.max_degree; ++D) {
    if (token.requested()) {
      out.report["stopped"] = true;
      break;
    }
    nlohmann::json log = {{"degree", D}};
    auto f = search_box(p, inst.size(), D, budget, token, log);
    if (f) {
      auto yes = make_yes(inst, p, *f, budget, log);
      if (yes) {
        yes->report = {{"procedure", "A"}, {"degree", D}};
        if (log.contains("closure_N")) yes->report["closure_N"] = log["closure_N"];
        return *yes;
      }
    }
    boxes.push_back(log);
  }
  out.report["boxes"] = boxes;
  return out;
}

std::vector<std::vector<Rational>> locr_samples(std::size_t r, int count, std::uint64_t seed) {
  std::vector<std::vector<Rational>> out;
  if (count <= 0) return out;
  if (r == 0) return {{}};
  // Positive rationals by height: 1, 2, 1/2, 3, 1/3, 3/2, 2/3, ...
  std::vector<Rational> heights{Rational(1)};
  const std::size_t spiral = static_cast<std::size_t>(count + 1) / 2;
  std::size_t level = 0;
  while (out.size() < spiral) {
    while (heights.size() <= level) {
      long h = 1;
      for (const auto& q : heights)
        h = std::max({h, q.get_num().get_si(), q.get_den().get_si()});
      ++h;
      for (long k = 1; k < h; ++k)
        if (std::gcd(h, k) == 1) {
          heights.emplace_back(h, k);
          heights.emplace_back(k, h);
        }
      for (auto& q : heights) q.canonicalize();
    }
    std::vector<std::size_t> idx(r, 0);
    while (true) {
      if (*std::max_element(idx.begin(), idx.end()) == level) {
        std::vector<Rational> pt;
        for (auto i : idx) pt.push_back(heights[i]);
        out.push_back(pt);
        if (out.size() == spiral) break;
      }
      std::size_t k = r;
      while (k > 0 && idx[k - 1] == level) idx[--k] = 0;
      if (k == 0) break;
      ++idx[k - 1];
    }
    ++level;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(1, 16);
  while (out.size() < static_cast<std::size_t>(count)) {
    std::vector<Rational> pt;
    for (std::size_t i = 0; i < r; ++i) {
      long a = d(rng), b = d(rng);
      Rational q(a, b);
      q.canonicalize();
      pt.push_back(q);
    }
    out.push_back(pt);
  }
  return out;
}

namespace {

std::vector<std::vector<Rational>> evaluate_rows(const ReducedProblem& p, std::size_t K,
                                                 const std::vector<Rational>& point) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& g : p.basis) {
    std::vector<Rational> row;
    for (std::size_t i = 0; i < K; ++i) row.push_back(evaluate_positive(g[i], point));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Verdict locr_refute(const Instance& inst, const Budget& budget) {
  validate(budget);
  StopToken token;
  token.deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(budget.timeout_seconds));
  return locr_refute(inst, reduce_problem(inst, budget.syzygy), budget, token);
}

Verdict locr_refute(const Instance& inst, const ReducedProblem& p, const Budget& budget,
                    const StopToken& token) {
  Verdict out;
  const std::size_t K = inst.size();
  int tried = 0;
  for (const auto& pt : locr_samples(p.r, budget.samples, budget.seed)) {
    if (token.requested()) {
      out.report["stopped"] = true;
      break;
    }
    ++tried;
    auto rows = evaluate_rows(p, K, pt);
    auto res = strictly_positive_combination(rows, K);
    if (!res.feasible) {
      out.kind = Verdict::Kind::No;
      out.refutations.push_back(Refutation{all_one_based(K), pt, rows, res.lambda});
      out.report = {{"procedure", "LocR"}, {"samples_tried", tried}};
      return out;
    }
  }
  out.report["samples_tried"] = tried;
  return out;
}

namespace {

Verdict run_double(const Instance& inst, const Budget& budget,
                   std::chrono::steady_clock::time_point deadline) {
  ReducedProblem p;
  try {
    p = reduce_problem(inst, budget.syzygy);
  } catch (const BudgetExhausted& e) {
    Verdict v;
    v.report["syzygy"] = e.what();
    return v;
  }
  std::atomic<bool> stop{false};
  StopToken token{&stop, deadline};
  auto fa = std::async(std::launch::async, [&] {
    Verdict v = procedure_A(inst, p, budget, token);
    if (v.kind != Verdict::Kind::Unknown) stop = true;
    return v;
  });
  auto fb = std::async(std::launch::async, [&] {
    Verdict v = locr_refute(inst, p, budget, token);
    if (v.kind != Verdict::Kind::Unknown) stop = true;
    return v;
  });
  Verdict a = fa.get();
  Verdict b = fb.get();
  if (a.kind == Verdict::Kind::Yes) return a;
  if (b.kind == Verdict::Kind::No) return b;
  Verdict out;
  out.report = {{"procedure_A", a.report}, {"locr", b.report}};
  if (std::chrono::steady_clock::now() >= deadline) out.report["timed_out"] = true;
  return out;
}

std::chrono::steady_clock::time_point deadline_of(const Budget& budget) {
  return std::chrono::steady_clock::now() +
         std::chrono::duration_cast<std::chrono::steady_clock::duration>(
             std::chrono::duration<double>(budget.timeout_seconds));
}

Verdict over_subsets(const Instance& inst, const Budget& budget, std::optional<std::size_t> must) {
  validate(budget);
  const std::size_t K = inst.size();
  if (K > 16) throw PreconditionError("subset enumeration supports at most 16 generators");
  auto deadline = deadline_of(budget);
  std::vector<std::vector<std::size_t>> subsets;
  for (std::uint32_t mask = 1; mask < (1u << K); ++mask) {
    if (must && !(mask & (1u << *must))) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < K; ++i)
      if (mask & (1u << i)) s.push_back(i);
    subsets.push_back(s);
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  Verdict out;
  out.kind = Verdict::Kind::No;
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& s : subsets) {
    Instance sub = inst.subset(s);
    Verdict v = run_double(sub, budget, deadline);
    auto ids = one_based(s);
    if (v.kind == Verdict::Kind::Yes) {
      for (auto& l : v.word) l = ids[static_cast<std::size_t>(l) - 1];
      v.subset = ids;
      return v;
    }
    if (v.kind == Verdict::Kind::No) {
      for (auto& r : v.refutations) r.subset = ids;
      out.refutations.insert(out.refutations.end(), v.refutations.begin(), v.refutations.end());
    } else {
      out.kind = Verdict::Kind::Unknown;
      reports.push_back({{"subset", ids}, {"report", v.report}});
    }
  }
  if (out.kind == Verdict::Kind::Unknown) {
    out.refutations.clear();
    out.report = {{"unresolved", reports}};
  }
  return out;
}

}  // namespace

Verdict decide_group(const Instance& inst, const Budget& budget) {
  validate(budget);
  if (!generates_full_lattice(inst.steps, inst.nvars())) {
    IntMatrix rows;
    for (const auto& a : inst.steps) rows.push_back(to_int_vector(a));
    std::vector<Exponent> basis;
    for (const auto& b : hermite_normal_form(rows)) basis.push_back(to_exponent(b));
    throw PreconditionError("steps do not generate Z^n; they span the lattice with basis " +
                            describe_lattice(basis));
  }
  return run_double(inst, budget, deadline_of(budget));
}

Verdict decide_identity(const Instance& inst, const Budget& budget) {
  return over_subsets(inst, budget, std::nullopt);
}

Verdict decide_inverse(const Instance& inst, int target, const Budget& budget) {
  if (target < 1 || static_cast<std::size_t>(target) > inst.size())
    throw PreconditionError("target index " + std::to_string(target) + " is out of range");
  return over_subsets(inst, budget, static_cast<std::size_t>(target - 1));
}

bool verify_witness(const Word& w, const Instance& inst) {
  if (w.empty()) return false;
  std::vector<bool> used(inst.size(), false);
  for (int l : w) {
    if (l < 1 || static_cast<std::size_t>(l) > inst.size()) return false;
    used[static_cast<std::size_t>(l) - 1] = true;
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) return false;
  return evaluate_word(inst, w).is_neutral();
}

bool verify_witness(const GGraph& g, const Instance& inst) {
  if (g.steps() != inst.steps || g.empty()) return false;
  if (!is_full_image(g) || !is_symmetric(g) || !is_connected(g)) return false;
  return represented_element(g, inst).is_neutral();
}

bool verify_refutation(const Refutation& ref, const Instance& inst, const SyzygyOptions& options) {
  std::vector<std::size_t> idx;
  for (int i : ref.subset) {
    if (i < 1 || static_cast<std::size_t>(i) > inst.size()) return false;
    idx.push_back(static_cast<std::size_t>(i) - 1);
  }
  if (idx.empty()) return false;
  Instance sub = inst.subset(idx);
  ReducedProblem p = reduce_problem(sub, options);
  if (ref.point.size() != p.r) return false;
  for (const auto& q : ref.point)
    if (q <= 0) return false;
  if (evaluate_rows(p, sub.size(), ref.point) != ref.rows) return false;
  if (ref.lambda.size() != sub.size()) return false;
  return verify_gordan(ref.rows, ref.lambda);
}

std::optional<Word> oracle_bfs(const Instance& inst, std::size_t max_length) {
  const std::size_t K = inst.size(), n = inst.nvars();
  if (K == 0) return std::nullopt;
  long reach = 0;
  for (const auto& a : inst.steps)
    for (long x : a) reach = std::max(reach, std::labs(x));
  for (std::size_t L = K; L <= max_length; ++L) {
    Word w;
    std::vector<GroupElement> prefix{GroupElement::neutral(inst.module)};
    std::vector<int> count(K, 0);
    std::size_t missing = K;
    // Depth-first in lexicographic order; letters are tried 1..K at each depth.
    std::vector<int> next{1};
    while (!next.empty()) {
      const std::size_t depth = next.size() - 1;
      if (next.back() > static_cast<int>(K)) {
        next.pop_back();
        if (!w.empty()) {
          int l = w.back();
          w.pop_back();
          prefix.pop_back();
          if (--count[static_cast<std::size_t>(l) - 1] == 0) ++missing;
        }
        continue;
      }
      int l = next.back()++;
      w.push_back(l);
      prefix.push_back(prefix.back() * inst.generator(static_cast<std::size_t>(l) - 1));
      if (count[static_cast<std::size_t>(l) - 1]++ == 0) --missing;
      const std::size_t remaining = L - depth - 1;
      bool viable = missing <= remaining;
      for (std::size_t i = 0; viable && i < n; ++i)
        viable = std::labs(prefix.back().a()[i]) <= static_cast<long>(remaining) * reach;
      if (viable && remaining == 0 && prefix.back().is_neutral()) return w;
      if (viable && remaining > 0) {
        next.push_back(1);
        continue;
      }
      w.pop_back();
      prefix.pop_back();
      if (--count[static_cast<std::size_t>(l) - 1] == 0) ++missing;
    }
  }
  return std::nullopt;
}

std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Yes: return "yes";
    case Verdict::Kind::No: return "no";
    default: return "unknown";
  }
}

int exit_code(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::Yes: return 0;
    case Verdict::Kind::No: return 1;
    default: return 2;
  }
}

namespace {

nlohmann::json rationals(const std::vector<Rational>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

}  // namespace

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json out = {{"verdict", to_string(v.kind)}};
  if (v.kind == Verdict::Kind::Yes) {
    nlohmann::json w = {{"subset", v.subset}, {"word", word_to_string(v.word)}};
    if (v.graph) w["graph"] = to_json(*v.graph);
    if (!v.f.empty()) w["f"] = to_json(v.f);
    out["witness"] = w;
  }
  if (v.kind == Verdict::Kind::No) {
    nlohmann::json refs = nlohmann::json::array();
    for (const auto& r : v.refutations) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& row : r.rows) rows.push_back(rationals(row));
      refs.push_back({{"subset", r.subset},
                      {"point", rationals(r.point)},
                      {"rows", rows},
                      {"lambda", rationals(r.lambda)}});
    }
    out["certificate"] = {{"refutations", refs}};
  }
  if (!v.report.empty()) out["budget_report"] = v.report;
  return out;
}

}  // namespace metab
