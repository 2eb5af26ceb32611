// Command-line front end: decision runs, graph tools, syzygies, the Magnus
// front-end and witness verification. All structured output is JSON.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "metab/decide.hpp"
#include "metab/error.hpp"
#include "metab/euler_closure.hpp"
#include "metab/geometry.hpp"
#include "metab/posalg.hpp"
#include "metab/zlattice.hpp"

using namespace metab;
using nlohmann::json;

namespace {

enum Exit { kUsage = 64, kData = 65, kNoInput = 66, kPrecondition = 67, kInternal = 70 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json face_json(const FaceDescriptor& f) {
  json d = json::array();
  for (const auto& q : f.direction.coords()) d.push_back(to_string(q));
  return {{"direction", d}, {"vertices", f.vertices}};
}

json analyze(const GGraph& g) {
  json out = {{"edges", g.size()},
              {"vertices", g.vertices().size()},
              {"symmetric", is_symmetric(g)},
              {"full_image", is_full_image(g)},
              {"connected", is_connected(g)},
              {"zn_generating", is_zn_generating(g)}};
  auto fa = is_face_accessible(g);
  out["face_accessible"] = fa.accessible;
  json faces = json::array();
  for (const auto& f : fa.inaccessible) faces.push_back(face_json(f));
  out["inaccessible_faces"] = faces;
  out["position_polynomials"] = to_json(position_polynomials(g));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision tools for sub-semigroups of metabelian groups"};
  app.require_subcommand(1);

  Budget budget;
  bool certificate = false;
  std::string instance_path, graph_path, witness_path, word_text, dot_path, kind;
  int target = 0;

  auto add_budget = [&](CLI::App* c) {
    c->add_option("--budget-degree", budget.max_degree, "Largest shift degree for Procedure A")
        ->check(CLI::NonNegativeNumber);
    c->add_option("--budget-height", budget.max_height, "Cap on witness coefficients (0: none)")
        ->check(CLI::NonNegativeNumber);
    c->add_option("--samples", budget.samples, "LocR sample points")->check(CLI::NonNegativeNumber);
    c->add_option("--seed", budget.seed, "Seed for random LocR samples");
    c->add_option("--timeout", budget.timeout_seconds, "Wall-clock limit in seconds")
        ->check(CLI::PositiveNumber);
    c->add_option("--closure-n", budget.closure_N, "Largest scale for the Euler closure")
        ->check(CLI::PositiveNumber);
    c->add_flag("--certificate", certificate, "Include full refutation certificates");
  };

  auto* check = app.add_subcommand("check", "Decide the group, identity or inverse problem");
  check->add_option("problem", kind, "group | identity | inverse")
      ->required()
      ->check(CLI::IsMember({"group", "identity", "inverse"}));
  check->add_option("instance", instance_path, "Instance JSON")->required();
  check->add_option("--target", target, "1-based generator for the inverse problem");
  add_budget(check);

  auto* graph = app.add_subcommand("graph", "Graph utilities");
  graph->require_subcommand(1);
  auto* gword = graph->add_subcommand("word", "Trace of a word");
  gword->add_option("instance", instance_path, "Instance JSON")->required();
  gword->add_option("--word", word_text, "Space separated positive letters")->required();
  gword->add_option("--dot", dot_path, "Also write DOT to this file");
  auto* ganalyze = graph->add_subcommand("analyze", "Report graph properties");
  ganalyze->add_option("graph", graph_path, "Graph JSON")->required();

  auto* close = app.add_subcommand("euler-close", "Connected union of translates");
  close->add_option("graph", graph_path, "Graph JSON")->required();
  close->add_option("--max-n", budget.closure_N, "Largest scale tried")->check(CLI::PositiveNumber);
  close->add_option("--dot", dot_path, "Also write DOT of the union to this file");

  auto* syz = app.add_subcommand("syzygy", "Generators of the syzygy module");
  syz->add_option("instance", instance_path, "Instance JSON")->required();

  auto* front = app.add_subcommand("frontend", "Magnus embedding of a metabelian presentation");
  front->add_option("presentation", instance_path, "Presentation JSON")->required();

  auto* verify = app.add_subcommand("verify", "Check a witness against an instance");
  verify->add_option("witness", witness_path, "Witness or verdict JSON")->required();
  verify->add_option("instance", instance_path, "Instance JSON")->required();

  auto* valid = app.add_subcommand("validate", "Parse and validate an instance");
  valid->add_option("instance", instance_path, "Instance JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) {
      validate(budget);
      Instance inst = instance_from_json(read_json(instance_path));
      Verdict v;
      if (kind == "group") {
        v = decide_group(inst, budget);
      } else if (kind == "identity") {
        v = decide_identity(inst, budget);
      } else {
        if (target == 0) throw CLI::ValidationError("--target", "required for the inverse problem");
        v = decide_inverse(inst, target, budget);
      }
      json out = to_json(v);
      if (!certificate && out.contains("certificate"))
        for (auto& r : out["certificate"]["refutations"]) {
          r.erase("rows");
          r.erase("lambda");
        }
      emit(out);
      return exit_code(v);
    }
    if (*gword) {
      Instance inst = instance_from_json(read_json(instance_path));
      GGraph g = graph_of_word(inst.steps, parse_word(word_text));
      if (!dot_path.empty()) write_text(dot_path, to_dot(g));
      emit(to_json(g));
      return 0;
    }
    if (*ganalyze) {
      emit(analyze(graph_from_json(read_json(graph_path))));
      return 0;
    }
    if (*close) {
      GGraph g = graph_from_json(read_json(graph_path));
      auto r = eulerian_closure(g, budget.closure_N);
      if (!dot_path.empty()) write_text(dot_path, to_dot(r.graph));
      emit(to_json(r));
      return 0;
    }
    if (*syz) {
      Instance inst = instance_from_json(read_json(instance_path));
      auto basis = syzygy_MZ(inst.syzygy_instance());
      json gens = json::array();
      for (const auto& f : basis.generators) gens.push_back(to_json(f));
      emit({{"generators", gens}});
      return 0;
    }
    if (*front) {
      auto p = metabelian_from_json(read_json(instance_path));
      auto r = magnus_frontend(p, p.gens);
      json out = to_json(r.instance);
      out["h_basis"] = r.h_basis;
      out["word_generators"] = r.word_generators;
      emit(out);
      return 0;
    }
    if (*verify) {
      Instance inst = instance_from_json(read_json(instance_path));
      json w = read_json(witness_path);
      if (w.contains("witness")) w = w["witness"];
      std::vector<std::size_t> subset;
      if (w.contains("subset"))
        for (int i : w["subset"].get<std::vector<int>>()) {
          if (i < 1 || static_cast<std::size_t>(i) > inst.size())
            throw ParseError("witness subset index out of range");
          subset.push_back(static_cast<std::size_t>(i) - 1);
        }
      else
        for (std::size_t i = 0; i < inst.size(); ++i) subset.push_back(i);
      Instance sub = inst.subset(subset);
      json out = json::object();
      bool ok = true;
      if (w.contains("word")) {
        Word word = parse_word(w["word"].get<std::string>());
        // Letters refer to the full instance; renumber them within the subset.
        for (auto& l : word) {
          auto it = std::find(subset.begin(), subset.end(), static_cast<std::size_t>(std::abs(l)) - 1);
          if (it == subset.end()) throw ParseError("word letter outside the witness subset");
          l = static_cast<int>(it - subset.begin()) + 1;
        }
        out["word"] = verify_witness(word, sub);
        ok = ok && out["word"].get<bool>();
      }
      if (w.contains("graph")) {
        out["graph"] = verify_witness(graph_from_json(w["graph"], sub.steps), sub);
        ok = ok && out["graph"].get<bool>();
      }
      if (out.empty()) throw ParseError("witness needs a \"word\" or a \"graph\"");
      out["valid"] = ok;
      emit(out);
      return ok ? 0 : 1;
    }
    if (*valid) {
      Instance inst = instance_from_json(read_json(instance_path));
      emit({{"valid", true},
            {"generators", inst.size()},
            {"n", inst.nvars()},
            {"d", inst.rank()},
            {"steps_generate_lattice", generates_full_lattice(inst.steps, inst.nvars())}});
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoInput;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kData;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kData;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const DimensionMismatch& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return kPrecondition;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
