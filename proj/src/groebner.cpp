#include "metab/groebner.hpp"

#include <algorithm>
#include <queue>
#include <utility>

#include "metab/error.hpp"

namespace metab::gb {

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e[i] > other.e[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = e[i] + other.e[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = e[i] - other.e[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

Order::Order(std::size_t nvars, std::vector<bool> eliminated, int priority_components)
    : nvars_(nvars), eliminated_(std::move(eliminated)), priority_(priority_components) {
  if (nvars_ > kMaxVars) throw Error("too many ring variables for the Groebner engine");
  eliminated_.resize(nvars_, false);
  for (std::size_t i = 0; i < nvars_; ++i) (eliminated_[i] ? elim_vars_ : rest_vars_).push_back(i);
}

int Order::degrevlex(const Monomial& a, const Monomial& b, bool elim_block) const {
  const auto& vars = elim_block ? elim_vars_ : rest_vars_;
  long da = 0, db = 0;
  for (auto v : vars) {
    da += a.e[v];
    db += b.e[v];
  }
  if (da != db) return da < db ? -1 : 1;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    if (a.e[*it] != b.e[*it]) return a.e[*it] > b.e[*it] ? -1 : 1;
  return 0;
}

int Order::compare(const Monomial& a, int ca, const Monomial& b, int cb) const {
  if (!elim_vars_.empty())
    if (int c = degrevlex(a, b, true)) return c;
  int ga = ca < priority_ ? 0 : 1, gb = cb < priority_ ? 0 : 1;
  if (ga != gb) return ga < gb ? 1 : -1;
  if (int c = degrevlex(a, b, false)) return c;
  if (ca != cb) return ca < cb ? 1 : -1;
  return 0;
}

bool Order::involves_eliminated(const Vec& v) const {
  for (const auto& t : v)
    for (auto var : elim_vars_)
      if (t.m.e[var] != 0) return true;
  return false;
}

bool Order::in_priority(const Vec& v) const {
  return std::any_of(v.begin(), v.end(), [&](const Term& t) { return t.comp < priority_; });
}

Vec normalize(std::vector<Term> terms, const Order& order) {
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return order.compare(a, b) > 0; });
  Vec out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().comp == t.comp && out.back().m == t.m) {
      out.back().c += t.c;
      if (out.back().c == 0) out.pop_back();
    } else if (t.c != 0) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

Vec sub_scaled(const Vec& f, const Integer& q, const Monomial& shift, const Vec& g,
               const Order& order) {
  Vec out;
  out.reserve(f.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < f.size() || j < g.size()) {
    int cmp;
    Monomial gm;
    if (j < g.size()) gm = g[j].m * shift;
    if (i == f.size()) {
      cmp = -1;
    } else if (j == g.size()) {
      cmp = 1;
    } else {
      cmp = order.compare(f[i].m, f[i].comp, gm, g[j].comp);
    }
    if (cmp > 0) {
      out.push_back(f[i++]);
    } else if (cmp < 0) {
      out.push_back(Term{gm, g[j].comp, -q * g[j].c});
      ++j;
    } else {
      Integer c = f[i].c - q * g[j].c;
      if (c != 0) out.push_back(Term{gm, g[j].comp, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

namespace {

struct Pair {
  std::size_t i, j;
  bool gcd_pair;
  Monomial lcm;
  int comp;
  std::size_t serial;
};

bool cofactor_less(const Term& a, const Term& b) {
  if (a.comp != b.comp) return a.comp < b.comp;
  return a.m.e < b.m.e;
}

// a - q * x^shift * b for cofactors; shift is a Laurent exponent.
Cofactor cofactor_sub_scaled(const Cofactor& a, const Integer& q, const Monomial& shift,
                             const Cofactor& b) {
  Cofactor out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    Term bt;
    if (j < b.size()) bt = Term{b[j].m * shift, b[j].comp, -q * b[j].c};
    if (j == b.size() || (i < a.size() && cofactor_less(a[i], bt))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || cofactor_less(bt, a[i])) {
      out.push_back(std::move(bt));
      ++j;
    } else {
      bt.c += a[i].c;
      if (bt.c != 0) out.push_back(std::move(bt));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Monomial Basis::laurent_shift(const Monomial& ring) const {
  Monomial out;
  const std::size_t n = tracking_->laurent_vars;
  for (std::size_t k = 0; k < n; ++k) out.e[k] = ring.e[k] - ring.e[n];
  return out;
}

Basis::Element Basis::sub_scaled_element(const Element& f, const Integer& q, const Monomial& shift,
                                         const Element& g) const {
  Element out{sub_scaled(f.v, q, shift, g.v, order_), {}};
  if (tracking_) out.cof = cofactor_sub_scaled(f.cof, q, laurent_shift(shift), g.cof);
  return out;
}

Basis::Element Basis::reduce_element(Element f, bool full) const {
  std::size_t head = 0;
  while (head < f.v.size()) {
    bool changed = false;
    for (std::size_t k = 0; k < all_.size(); ++k) {
      if (!live_[k]) continue;
      const Term& gl = all_[k].v.front();
      const Term& lead = f.v[head];
      if (gl.comp != lead.comp || !gl.m.divides(lead.m)) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), lead.c.get_mpz_t(), gl.c.get_mpz_t());
      if (q == 0) continue;
      Monomial shift = lead.m / gl.m;
      if (head == 0) {
        f = sub_scaled_element(f, q, shift, all_[k]);
      } else {
        // Keep the already irreducible head terms out of the merge.
        Element tail{Vec(f.v.begin() + static_cast<std::ptrdiff_t>(head), f.v.end()), std::move(f.cof)};
        tail = sub_scaled_element(tail, q, shift, all_[k]);
        f.v.resize(head);
        f.v.insert(f.v.end(), std::make_move_iterator(tail.v.begin()),
                   std::make_move_iterator(tail.v.end()));
        f.cof = std::move(tail.cof);
      }
      changed = true;
      break;
    }
    if (!changed) {
      if (!full) break;
      ++head;
    }
  }
  return f;
}

Vec Basis::reduce(const Vec& f, bool full) const {
  // Tracking ends with the construction, so no cofactors are carried here.
  return reduce_element(Element{f, {}}, full).v;
}

Basis::Basis(std::vector<Vec> generators, Order order, Limits limits, std::optional<Tracking> tracking)
    : order_(std::move(order)), tracking_(tracking) {
  auto pair_cmp = [this](const Pair& a, const Pair& b) {
    int c = order_.compare(a.lcm, a.comp, b.lcm, b.comp);
    if (c != 0) return c > 0;  // min-heap on lcm
    return a.serial > b.serial;
  };
  std::priority_queue<Pair, std::vector<Pair>, decltype(pair_cmp)> pairs(pair_cmp);
  std::size_t serial = 0;

  auto push_pairs = [&](std::size_t k) {
    const Term& lk = all_[k].v.front();
    for (std::size_t i = 0; i < k; ++i) {
      if (!live_[i]) continue;
      const Term& li = all_[i].v.front();
      if (li.comp != lk.comp) continue;
      Monomial l = Monomial::lcm(li.m, lk.m);
      pairs.push(Pair{i, k, false, l, lk.comp, serial++});
      bool i_div_k = mpz_divisible_p(lk.c.get_mpz_t(), li.c.get_mpz_t());
      bool k_div_i = mpz_divisible_p(li.c.get_mpz_t(), lk.c.get_mpz_t());
      if (!i_div_k && !k_div_i) pairs.push(Pair{i, k, true, l, lk.comp, serial++});
    }
  };

  // Older elements whose leading term the new one strongly divides are retired
  // and come back reduced, with fresh pairs.
  auto insert = [&](Element first) {
    std::vector<Element> pending;
    pending.push_back(std::move(first));
    while (!pending.empty()) {
      Element e = reduce_element(std::move(pending.back()), true);
      pending.pop_back();
      if (e.v.empty()) continue;
      if (e.v.front().c < 0) e = sub_scaled_element(Element{}, Integer(1), Monomial{}, e);
      for (const auto& t : e.v)
        if (mpz_sizeinbase(t.c.get_mpz_t(), 2) > limits.max_coefficient_bits)
          throw BudgetExhausted("Groebner basis coefficients exceeded " +
                                std::to_string(limits.max_coefficient_bits) + " bits");
      if (++live_count_ > limits.max_basis_size)
        throw BudgetExhausted("Groebner basis exceeded " + std::to_string(limits.max_basis_size) +
                              " elements");
      all_.push_back(std::move(e));
      live_.push_back(true);
      const std::size_t k = all_.size() - 1;
      const Term& lk = all_[k].v.front();
      for (std::size_t i = 0; i < k; ++i) {
        if (!live_[i]) continue;
        const Term& li = all_[i].v.front();
        if (li.comp != lk.comp || !lk.m.divides(li.m)) continue;
        if (!mpz_divisible_p(li.c.get_mpz_t(), lk.c.get_mpz_t())) continue;
        live_[i] = false;
        --live_count_;
        pending.push_back(all_[i]);
      }
      push_pairs(k);
    }
  };

  std::vector<Element> originals;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    Element e{normalize(std::move(generators[g]), order_), {}};
    if (tracking_ && g < tracking_->tracked) e.cof.push_back(Term{Monomial{}, static_cast<int>(g), Integer(1)});
    if (tracking_) originals.push_back(e);
    insert(std::move(e));
  }

  std::size_t processed = 0;
  while (!pairs.empty()) {
    Pair p = pairs.top();
    pairs.pop();
    if (!live_[p.i] || !live_[p.j]) continue;
    if (++processed > limits.max_pairs_processed)
      throw BudgetExhausted("Groebner completion exceeded the pair budget");
    const Element& f = all_[p.i];
    const Element& g = all_[p.j];
    const Integer& a = f.v.front().c;
    const Integer& b = g.v.front().c;
    Monomial sf = p.lcm / f.v.front().m, sg = p.lcm / g.v.front().m;
    Element s;
    if (!p.gcd_pair) {
      Integer l;
      mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      s = sub_scaled_element(sub_scaled_element(Element{}, Integer(-l / a), sf, f), l / b, sg, g);
    } else {
      Integer d, u, v;
      mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      s = sub_scaled_element(sub_scaled_element(Element{}, Integer(-u), sf, f), Integer(-v), sg, g);
    }
    insert(std::move(s));
  }

  // Schreyer: the S-pairs of the final basis lift to generators of its
  // syzygies, and e_i minus the representation of generator i completes them.
  for (std::size_t k = 0; tracking_ && k < all_.size(); ++k)
    for (std::size_t i = 0; i < k && live_[k]; ++i) {
      if (!live_[i]) continue;
      const Element& f = all_[i];
      const Element& g = all_[k];
      if (f.v.front().comp != g.v.front().comp) continue;
      Monomial l = Monomial::lcm(f.v.front().m, g.v.front().m);
      Integer c;
      mpz_lcm(c.get_mpz_t(), f.v.front().c.get_mpz_t(), g.v.front().c.get_mpz_t());
      Element s = sub_scaled_element(sub_scaled_element(Element{}, Integer(-c / f.v.front().c),
                                                        l / f.v.front().m, f),
                                     c / g.v.front().c, l / g.v.front().m, g);
      s = reduce_element(std::move(s), false);
      if (!s.v.empty()) throw Error("internal: S-pair of the final basis does not reduce to zero");
      if (!s.cof.empty()) syzygies_.push_back(std::move(s.cof));
    }
  for (std::size_t g = 0; tracking_ && g < tracking_->tracked && g < originals.size(); ++g) {
    Element e = reduce_element(originals[g], false);
    if (!e.v.empty()) throw Error("internal: generator does not reduce to zero");
    if (!e.cof.empty()) syzygies_.push_back(std::move(e.cof));
  }
  minimize();
}

void Basis::minimize() {
  std::vector<Vec> live;
  for (std::size_t i = 0; i < all_.size(); ++i)
    if (live_[i]) live.push_back(all_[i].v);
  std::vector<bool> drop(live.size(), false);
  for (std::size_t i = 0; i < live.size(); ++i) {
    const Term& li = live[i].front();
    for (std::size_t j = 0; j < live.size() && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      const Term& lj = live[j].front();
      if (lj.comp != li.comp || !lj.m.divides(li.m)) continue;
      if (!mpz_divisible_p(li.c.get_mpz_t(), lj.c.get_mpz_t())) continue;
      bool same = lj.m == li.m && lj.c == li.c;
      if (!same || j < i) drop[i] = true;
    }
  }
  tracking_.reset();
  all_.clear();
  for (std::size_t i = 0; i < live.size(); ++i)
    if (!drop[i]) all_.push_back(Element{std::move(live[i]), {}});
  live_.assign(all_.size(), true);
  // Tail-reduce each element against the others for smaller output.
  for (std::size_t i = 0; i < all_.size(); ++i) {
    live_[i] = false;
    Vec tail(all_[i].v.begin() + 1, all_[i].v.end());
    Vec reduced = reduce_element(Element{std::move(tail), {}}, true).v;
    all_[i].v.resize(1);
    all_[i].v.insert(all_[i].v.end(), reduced.begin(), reduced.end());
    live_[i] = true;
  }
  for (const auto& e : all_) elements_.push_back(e.v);
}

}  // namespace metab::gb
