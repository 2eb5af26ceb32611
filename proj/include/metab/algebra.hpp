#pragma once

// Finitely presented modules Y = M/N over the integer Laurent ring
// Z[X_1^{+-1}, ..., X_n^{+-1}] and the syzygy module of an instance.

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "json.hpp"
#include "metab/groebner.hpp"
#include "metab/laurent.hpp"

namespace metab {

/// Submodule of Z[X^{+-1}]^rank with a strong Groebner basis for membership.
///
/// Laurent generators are multiplied by monomial units until their exponents
/// are nonnegative; the ring is then presented as Z[x_1..x_n, u]/(u x_1..x_n - 1)
/// and the relation is added to every coordinate.
class LaurentSubmodule {
 public:
  LaurentSubmodule(std::size_t nvars, std::size_t rank, std::vector<LaurentVector> generators,
                   gb::Limits limits = {});

  std::size_t nvars() const { return nvars_; }
  std::size_t rank() const { return rank_; }
  const std::vector<LaurentVector>& generators() const { return generators_; }
  /// Basis elements mapped back to Laurent vectors.
  std::vector<LaurentVector> basis() const;

  bool contains(const LaurentVector& v) const;

 private:
  std::size_t nvars_, rank_;
  std::vector<LaurentVector> generators_;
  std::unique_ptr<gb::Basis> basis_;
};

/// Laurent <-> polynomial ring conversion shared by the module algorithms.
namespace laurent_ring {

/// Ring variable count used to present Laurent polynomials in n variables.
std::size_t ring_vars(std::size_t n);
/// Monomial shift s >= 0 such that X^s * v has no negative exponents.
Exponent clearing_shift(const LaurentVector& v, std::size_t n);
/// Terms of X^shift * v placed in components first_comp, first_comp + 1, ...
std::vector<gb::Term> to_ring(const LaurentVector& v, std::size_t n, const Exponent& shift,
                              int first_comp);
/// The relation u x_1 ... x_n - 1 in component comp.
std::vector<gb::Term> unit_relation(std::size_t n, int comp);
/// Image of a ring element restricted to the components [first, first + length).
LaurentVector from_ring(const gb::Vec& v, std::size_t n, int first, std::size_t length);

}  // namespace laurent_ring

class ModulePresentation {
 public:
  /// gens_M empty means M is the free module of rank d.
  ModulePresentation(std::size_t n, std::size_t d, std::vector<LaurentVector> rels_N,
                     std::vector<LaurentVector> gens_M = {});

  static ModulePresentation free(std::size_t n, std::size_t d) { return {n, d, {}}; }

  std::size_t nvars() const { return n_; }
  std::size_t rank() const { return d_; }
  const std::vector<LaurentVector>& relations() const { return rels_; }
  const std::vector<LaurentVector>& generators_M() const { return gens_M_; }
  bool m_is_free() const { return gens_M_.empty(); }

  /// Strong basis of N, computed once on first use.
  const LaurentSubmodule& relation_module() const;
  bool in_N(const LaurentVector& v) const;
  bool in_M(const LaurentVector& v) const;
  /// Checks rels_N lies in the span of gens_M (the unchecked default).
  bool relations_inside_M() const;

  bool same_as(const ModulePresentation& other) const { return state_ == other.state_; }

 private:
  struct Lazy {
    std::once_flag n_once, m_once;
    std::unique_ptr<LaurentSubmodule> n_module, m_module;
  };
  std::size_t n_, d_;
  std::vector<LaurentVector> rels_, gens_M_;
  std::shared_ptr<Lazy> state_;
};

/// Coset rep + N of the quotient module.
class ModuleElement {
 public:
  ModuleElement(LaurentVector rep, std::shared_ptr<const ModulePresentation> presentation);
  static ModuleElement zero(std::shared_ptr<const ModulePresentation> presentation);

  const LaurentVector& rep() const { return rep_; }
  const ModulePresentation& presentation() const { return *presentation_; }
  const std::shared_ptr<const ModulePresentation>& presentation_ptr() const { return presentation_; }

  ModuleElement operator+(const ModuleElement& other) const;
  ModuleElement operator-() const;
  ModuleElement times(const LaurentPoly& scalar) const;

 private:
  LaurentVector rep_;
  std::shared_ptr<const ModulePresentation> presentation_;
};

/// True iff the representative lies in N.
bool is_zero_in_Y(const ModuleElement& e);

/// The data defining M_Z: representatives y~_i in Z[X^{+-1}]^d and steps a_i.
struct SyzygyInstance {
  std::shared_ptr<const ModulePresentation> presentation;
  std::vector<LaurentVector> ys;
  std::vector<Exponent> steps;

  std::size_t size() const { return ys.size(); }
  std::size_t nvars() const { return presentation->nvars(); }
};

struct SyzygyBasis {
  std::vector<LaurentVector> generators;  // each of length K
};

struct SyzygyOptions {
  /// The elimination method gives small generators but can be slow; past
  /// these limits the generators are lifted from a basis of the image instead.
  gb::Limits elimination_limits{1000, 20000, 256};
  gb::Limits limits;
  /// Drop generators that lie in the span of the smaller ones (one
  /// membership test each); skipped above this many generators.
  std::size_t minimize_up_to = 16;
  gb::Limits minimize_limits{200, 5000, 256};
};

/// Generators of { f : sum f_i (X^{a_i} - 1) = 0 and sum f_i y~_i in N }.
SyzygyBasis syzygy_MZ(const SyzygyInstance& instance, const SyzygyOptions& options = {});

struct Residual {
  LaurentPoly symmetry;
  LaurentVector neutral;  // representative of sum f_i y_i
  bool neutral_is_zero;

  bool is_zero() const { return symmetry.is_zero() && neutral_is_zero; }
};

Residual residual(const LaurentVector& f, const SyzygyInstance& instance);

/// Generators of M cap Z[L]^K for the lattice L spanned by `lattice_basis`,
/// written over Z[T_1^{+-1}, ..., T_r^{+-1}] with T_k = X^{b_k}.
std::vector<LaurentVector> restrict_to_sublattice(const std::vector<LaurentVector>& generators,
                                                  std::size_t nvars, std::size_t length,
                                                  const std::vector<Exponent>& lattice_basis,
                                                  gb::Limits limits = {});

nlohmann::json to_json(const ModulePresentation& p);
ModulePresentation module_from_json(const nlohmann::json& j);

}  // namespace metab
