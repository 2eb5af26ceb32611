#pragma once

// The semidirect product Y x| Z^n, generator sets, words, and the Magnus
// embedding front-end for finite metabelian presentations.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "metab/algebra.hpp"
#include "metab/laurent.hpp"

namespace metab {

class GroupElement {
 public:
  GroupElement(ModuleElement y, Exponent a);
  static GroupElement neutral(std::shared_ptr<const ModulePresentation> presentation);

  const ModuleElement& y() const { return y_; }
  const Exponent& a() const { return a_; }

  /// (y, a)(y', a') = (y + X^a y', a + a')
  GroupElement operator*(const GroupElement& other) const;
  /// (y, a)^{-1} = (-X^{-a} y, -a)
  GroupElement inverse() const;

  /// Equality in the group: equal steps and module parts differing by N.
  bool equals(const GroupElement& other) const;
  bool is_neutral() const;

 private:
  ModuleElement y_;
  Exponent a_;
};

LaurentVector shift_vector(const LaurentVector& v, const Exponent& z);

/// A word is a sequence of signed generator indices: k stands for g_k and -k
/// for its inverse (1-based).
using Word = std::vector<int>;

/// A finite generator set G = {(y_1, a_1), ..., (y_K, a_K)} over one module.
struct Instance {
  std::shared_ptr<const ModulePresentation> module;
  std::vector<LaurentVector> ys;
  std::vector<Exponent> steps;

  Instance() = default;
  Instance(std::shared_ptr<const ModulePresentation> m, std::vector<LaurentVector> y,
           std::vector<Exponent> a);

  std::size_t size() const { return ys.size(); }
  std::size_t nvars() const { return module->nvars(); }
  std::size_t rank() const { return module->rank(); }
  GroupElement generator(std::size_t index) const;  // 0-based
  SyzygyInstance syzygy_instance() const { return {module, ys, steps}; }
  /// The generators with the given 0-based indices, in order.
  Instance subset(const std::vector<std::size_t>& indices) const;
};

GroupElement evaluate_word(const Instance& g, const Word& w);

Word parse_word(const std::string& text);
std::string word_to_string(const Word& w);

nlohmann::json to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

struct MetabelianPresentation {
  std::size_t s = 0;
  std::vector<Word> relators;
  std::vector<Word> gens;
};

nlohmann::json to_json(const MetabelianPresentation& p);
MetabelianPresentation metabelian_from_json(const nlohmann::json& j);

struct FrontendResult {
  Instance instance;
  /// Hermite basis of the abelianized relator lattice H.
  std::vector<Exponent> h_basis;
  /// The first `word_generators` generators are images of the input words;
  /// the rest are (0, h) and (0, -h) for h in h_basis.
  std::size_t word_generators = 0;
};

/// Image of the free metabelian generator x_i (1-based) in the wreath product:
/// the i-th unit vector in both coordinates.
GroupElement magnus_letter(const std::shared_ptr<const ModulePresentation>& module, int letter);

FrontendResult magnus_frontend(const MetabelianPresentation& p, const std::vector<Word>& words);

}  // namespace metab
