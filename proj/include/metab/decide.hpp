#pragma once
// Decision drivers for the Group, Identity and Inverse Problems: a search for
// positive elements of the syzygy module (Procedure A), a sampling refuter
// based on local positivity at real points, witness checks and a brute-force
// word search.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "metab/algebra.hpp"
#include "metab/ggraph.hpp"
#include "metab/group.hpp"

namespace metab {

struct Budget {
  int max_degree = 2;       // shifts h_j range over [-D, D]^n for D <= max_degree
  long max_height = 0;      // cap on witness coefficients; 0 means none
  int samples = 64;         // LocR sample points
  std::uint64_t seed = 0;
  double timeout_seconds = 60;
  long closure_N = 16;      // largest scale tried by eulerian_closure
  SyzygyOptions syzygy;
};

void validate(const Budget& b);

/// Infeasibility of sum x_j g_j(r) > 0 at one point r: lambda >= 0, sum 1,
/// orthogonal to every row g_j(r).
struct Refutation {
  std::vector<int> subset;  // 1-based generator indices of the refuted instance
  std::vector<Rational> point;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> lambda;
};

struct Verdict {
  enum class Kind { Yes, No, Unknown };
  Kind kind = Kind::Unknown;
  // Yes
  std::vector<int> subset;  // 1-based indices whose letters the word uses
  Word word;                // letters of the original instance
  std::optional<GGraph> graph;  // labels index `subset`
  LaurentVector f;              // position polynomials of the graph
  // No
  std::vector<Refutation> refutations;
  // Unknown and diagnostics
  nlohmann::json report = nlohmann::json::object();
};

/// The syzygy module over the lattice L spanned by the steps, in coordinates
/// of an HNF basis of L (identity coordinates when L = Z^n).
struct ReducedProblem {
  std::size_t r = 0;
  std::vector<Exponent> lattice;   // basis of L in Z^n; unused when L = Z^n
  std::vector<Exponent> steps;     // steps in lattice coordinates
  std::vector<LaurentVector> basis;  // generators of M_Z cap Z[L]^K
  bool full_lattice = true;
  bool full() const { return full_lattice; }
};

ReducedProblem reduce_problem(const Instance& inst, const SyzygyOptions& options = {});

/// Cooperative cancellation shared between concurrent procedures.
struct StopToken {
  std::atomic<bool>* stop = nullptr;
  std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();
  bool requested() const;
};

Verdict procedure_A(const Instance& inst, const Budget& budget);
Verdict procedure_A(const Instance& inst, const ReducedProblem& p, const Budget& budget,
                    const StopToken& token);
Verdict locr_refute(const Instance& inst, const Budget& budget);
Verdict locr_refute(const Instance& inst, const ReducedProblem& p, const Budget& budget,
                    const StopToken& token);

/// Deterministic LocR sample points in Q^r_{>0}, (1,...,1) first.
std::vector<std::vector<Rational>> locr_samples(std::size_t r, int count, std::uint64_t seed);

/// Throws PreconditionError if the steps do not generate Z^n.
Verdict decide_group(const Instance& inst, const Budget& budget);
Verdict decide_identity(const Instance& inst, const Budget& budget);
/// `target` is 1-based.
Verdict decide_inverse(const Instance& inst, int target, const Budget& budget);

/// Nonempty word with positive letters using every generator and evaluating
/// to the neutral element.
bool verify_witness(const Word& w, const Instance& inst);
/// Full-image, symmetric, connected and representing the neutral element.
bool verify_witness(const GGraph& g, const Instance& inst);
/// Rechecks a refutation against rows recomputed from the instance.
bool verify_refutation(const Refutation& ref, const Instance& inst,
                       const SyzygyOptions& options = {});

/// Shortest (then lexicographically first) full-image word evaluating to the
/// neutral element, up to max_length letters.
std::optional<Word> oracle_bfs(const Instance& inst, std::size_t max_length);

nlohmann::json to_json(const Verdict& v);
int exit_code(const Verdict& v);
std::string to_string(Verdict::Kind k);

}  // namespace metab
