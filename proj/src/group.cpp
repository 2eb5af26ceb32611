#include "metab/group.hpp"

#include <sstream>
#include <utility>

#include "metab/error.hpp"
#include "metab/zlattice.hpp"

namespace metab {

LaurentVector shift_vector(const LaurentVector& v, const Exponent& z) {
  LaurentVector out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(p.shifted(z));
  return out;
}

GroupElement::GroupElement(ModuleElement y, Exponent a) : y_(std::move(y)), a_(std::move(a)) {
  if (a_.size() != y_.presentation().nvars())
    throw DimensionMismatch("step length differs from the module's variable count");
}

GroupElement GroupElement::neutral(std::shared_ptr<const ModulePresentation> presentation) {
  std::size_t n = presentation->nvars();
  return GroupElement(ModuleElement::zero(std::move(presentation)), zero_exponent(n));
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  if (!y_.presentation().same_as(other.y_.presentation()))
    throw DimensionMismatch("group elements from different instances");
  ModuleElement moved(shift_vector(other.y_.rep(), a_), other.y_.presentation_ptr());
  return GroupElement(y_ + moved, a_ + other.a_);
}

GroupElement GroupElement::inverse() const {
  ModuleElement moved(shift_vector(y_.rep(), -a_), y_.presentation_ptr());
  return GroupElement(-moved, -a_);
}

bool GroupElement::equals(const GroupElement& other) const {
  if (a_ != other.a_) return false;
  return is_zero_in_Y(y_ + (-other.y_));
}

bool GroupElement::is_neutral() const {
  for (long x : a_)
    if (x != 0) return false;
  return is_zero_in_Y(y_);
}

Instance::Instance(std::shared_ptr<const ModulePresentation> m, std::vector<LaurentVector> y,
                   std::vector<Exponent> a)
    : module(std::move(m)), ys(std::move(y)), steps(std::move(a)) {
  if (!module) throw PreconditionError("instance without a module");
  if (ys.size() != steps.size()) throw DimensionMismatch("ys and steps differ in length");
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (ys[i].size() != module->rank())
      throw DimensionMismatch("generator " + std::to_string(i + 1) + " has the wrong rank");
    for (const auto& p : ys[i])
      if (p.nvars() != module->nvars())
        throw DimensionMismatch("generator " + std::to_string(i + 1) +
                                " has the wrong variable count");
    if (steps[i].size() != module->nvars())
      throw DimensionMismatch("step " + std::to_string(i + 1) + " has the wrong dimension");
  }
}

GroupElement Instance::generator(std::size_t index) const {
  if (index >= size()) throw PreconditionError("generator index out of range");
  return GroupElement(ModuleElement(ys[index], module), steps[index]);
}

Instance Instance::subset(const std::vector<std::size_t>& indices) const {
  Instance out;
  out.module = module;
  for (auto i : indices) {
    if (i >= size()) throw PreconditionError("generator index out of range");
    out.ys.push_back(ys[i]);
    out.steps.push_back(steps[i]);
  }
  return out;
}

GroupElement evaluate_word(const Instance& g, const Word& w) {
  GroupElement acc = GroupElement::neutral(g.module);
  for (int letter : w) {
    if (letter == 0 || static_cast<std::size_t>(std::abs(letter)) > g.size())
      throw PreconditionError("word letter " + std::to_string(letter) + " out of range");
    GroupElement x = g.generator(static_cast<std::size_t>(std::abs(letter)) - 1);
    acc = acc * (letter > 0 ? x : x.inverse());
  }
  return acc;
}

Word parse_word(const std::string& text) {
  std::istringstream in(text);
  Word w;
  std::string tok;
  while (in >> tok) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw ParseError("word token \"" + tok + "\" is not an integer");
    }
    if (pos != tok.size() || v == 0) throw ParseError("bad word token \"" + tok + "\"");
    w.push_back(v);
  }
  return w;
}

std::string word_to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w[i]);
  }
  return out;
}

nlohmann::json to_json(const Instance& inst) {
  nlohmann::json j;
  j["module"] = to_json(*inst.module);
  auto gens = nlohmann::json::array();
  for (std::size_t i = 0; i < inst.size(); ++i)
    gens.push_back({{"y", to_json(inst.ys[i])}, {"a", inst.steps[i]}});
  j["generators"] = gens;
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("module") || !j.contains("generators"))
    throw ParseError("instance needs fields \"module\" and \"generators\"");
  auto module = std::make_shared<const ModulePresentation>(module_from_json(j.at("module")));
  const auto& gens = j.at("generators");
  if (!gens.is_array() || gens.empty())
    throw ParseError("\"generators\" must be a nonempty array");
  std::vector<LaurentVector> ys;
  std::vector<Exponent> steps;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    std::string where = "generator " + std::to_string(i + 1);
    if (!g.is_object() || !g.contains("y") || !g.contains("a"))
      throw ParseError(where + " needs fields \"y\" and \"a\"");
    auto y = laurent_vector_from_json(g.at("y"), module->nvars());
    if (y.size() != module->rank()) throw ParseError(where + ": \"y\" has the wrong length");
    for (const auto& p : y)
      if (!p.is_integral()) throw ParseError(where + ": coefficients must be integers");
    const auto& ja = g.at("a");
    if (!ja.is_array() || ja.size() != module->nvars())
      throw ParseError(where + ": \"a\" must have length " + std::to_string(module->nvars()));
    Exponent a;
    for (const auto& x : ja) {
      if (!x.is_number_integer()) throw ParseError(where + ": steps must be integers");
      a.push_back(x.get<long>());
    }
    ys.push_back(std::move(y));
    steps.push_back(std::move(a));
  }
  return Instance(module, std::move(ys), std::move(steps));
}

nlohmann::json to_json(const MetabelianPresentation& p) {
  return {{"s", p.s}, {"relators", p.relators}, {"gens", p.gens}};
}

MetabelianPresentation metabelian_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("s") || !j.at("s").is_number_integer())
    throw ParseError("metabelian presentation needs an integer \"s\"");
  MetabelianPresentation p;
  long s = j.at("s").get<long>();
  if (s < 2) throw ParseError("metabelian presentation needs s >= 2");
  p.s = static_cast<std::size_t>(s);
  auto read = [&](const char* key) {
    std::vector<Word> out;
    if (!j.contains(key)) return out;
    if (!j.at(key).is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
    for (const auto& w : j.at(key)) {
      if (!w.is_array()) throw ParseError(std::string("\"") + key + "\" entries must be arrays");
      Word word;
      for (const auto& x : w) {
        if (!x.is_number_integer()) throw ParseError("word letters must be integers");
        long v = x.get<long>();
        if (v == 0 || std::labs(v) > s)
          throw ParseError("word letter " + std::to_string(v) + " out of range");
        word.push_back(static_cast<int>(v));
      }
      out.push_back(std::move(word));
    }
    return out;
  };
  p.relators = read("relators");
  p.gens = read("gens");
  return p;
}

GroupElement magnus_letter(const std::shared_ptr<const ModulePresentation>& module, int letter) {
  std::size_t s = module->nvars();
  if (letter == 0 || static_cast<std::size_t>(std::abs(letter)) > s)
    throw PreconditionError("letter out of range");
  std::size_t i = static_cast<std::size_t>(std::abs(letter)) - 1;
  LaurentVector y = zero_vector(s, module->rank());
  y[i] = LaurentPoly::constant(s, 1);
  Exponent a = zero_exponent(s);
  a[i] = 1;
  GroupElement x(ModuleElement(std::move(y), module), std::move(a));
  return letter > 0 ? x : x.inverse();
}

namespace {

GroupElement magnus_word(const std::shared_ptr<const ModulePresentation>& module, const Word& w) {
  GroupElement acc = GroupElement::neutral(module);
  for (int letter : w) acc = acc * magnus_letter(module, letter);
  return acc;
}

}  // namespace

FrontendResult magnus_frontend(const MetabelianPresentation& p, const std::vector<Word>& words) {
  if (words.empty()) throw PreconditionError("the front-end needs at least one generator word");
  const std::size_t s = p.s;
  if (s == 0) throw PreconditionError("presentation without generators");
  auto free_wreath = std::make_shared<const ModulePresentation>(ModulePresentation::free(s, s));

  IntMatrix abelianized;
  std::vector<LaurentVector> rels;
  for (const auto& r : p.relators) {
    GroupElement image = magnus_word(free_wreath, r);
    abelianized.push_back(to_int_vector(image.a()));
    if (!is_zero(image.y().rep())) rels.push_back(image.y().rep());
  }
  FrontendResult out;
  for (const auto& row : hermite_normal_form(abelianized)) out.h_basis.push_back(to_exponent(row));

  std::vector<LaurentVector> all_rels;
  for (const auto& h : out.h_basis)
    for (std::size_t k = 0; k < s; ++k) {
      LaurentVector v = zero_vector(s, s);
      v[k] = LaurentPoly::step_factor(h);
      all_rels.push_back(std::move(v));
    }
  for (auto& r : rels) all_rels.push_back(std::move(r));
  auto module = std::make_shared<const ModulePresentation>(s, s, std::move(all_rels));

  std::vector<LaurentVector> ys;
  std::vector<Exponent> steps;
  for (const auto& w : words) {
    GroupElement image = magnus_word(free_wreath, w);
    ys.push_back(image.y().rep());
    steps.push_back(image.a());
  }
  out.word_generators = words.size();
  for (const auto& h : out.h_basis) {
    ys.push_back(zero_vector(s, s));
    steps.push_back(h);
    ys.push_back(zero_vector(s, s));
    steps.push_back(-h);
  }
  out.instance = Instance(module, std::move(ys), std::move(steps));
  return out;
}

}  // namespace metab
