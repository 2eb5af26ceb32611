#pragma once

#include <random>
#include <vector>

#include "metab/geometry.hpp"
#include "metab/ggraph.hpp"

namespace testutil {

using metab::operator+;

// Steps come in opposite pairs: label 2k+1 and 2k+2 are a and -a.
inline std::vector<metab::Exponent> paired_steps(std::mt19937_64& rng, std::size_t n, int pairs,
                                                 long range = 2) {
  std::uniform_int_distribution<long> co(-range, range);
  std::vector<metab::Exponent> steps;
  for (int k = 0; k < pairs; ++k) {
    metab::Exponent a(n);
    do {
      for (auto& x : a) x = co(rng);
    } while (std::all_of(a.begin(), a.end(), [](long x) { return x == 0; }));
    metab::Exponent b = a;
    for (auto& x : b) x = -x;
    steps.push_back(a);
    steps.push_back(b);
  }
  return steps;
}

// Trace of a random closed word (letters then opposite letters in shuffled
// order), so the result is symmetric. An optional second closed walk is
// placed at a random offset, which usually disconnects the graph.
inline metab::GGraph random_closed_graph(std::mt19937_64& rng, const std::vector<metab::Exponent>& steps,
                                         int half_len, bool second) {
  const std::size_t n = steps.front().size();
  std::uniform_int_distribution<int> lab(0, static_cast<int>(steps.size()) - 1);
  std::uniform_int_distribution<long> off(-4, 4);
  metab::GGraph g(steps);
  auto walk = [&](metab::Exponent pos, int len) {
    std::vector<int> w;
    for (int k = 0; k < len; ++k) w.push_back(lab(rng));
    std::vector<int> back;
    for (int l : w) back.push_back(l ^ 1);
    std::shuffle(back.begin(), back.end(), rng);
    w.insert(w.end(), back.begin(), back.end());
    for (int l : w) {
      g.add_edge(pos, l + 1);
      pos = pos + steps[static_cast<std::size_t>(l)];
    }
  };
  walk(metab::Exponent(n, 0), half_len);
  if (second) {
    metab::Exponent z(n);
    for (auto& x : z) x = off(rng);
    walk(z, std::max(1, half_len - 2));
  }
  return g;
}

// Symmetric, face-accessible, Z^n-generating graphs with at most 10 edges.
inline std::vector<metab::GGraph> closure_corpus(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<metab::GGraph> out;
  while (out.size() < count) {
    std::size_t n = 1 + rng() % 2;
    auto steps = paired_steps(rng, n, static_cast<int>(n) + static_cast<int>(rng() % 2));
    bool second = rng() % 2 == 0;
    auto g = random_closed_graph(rng, steps, second ? 3 : 2 + static_cast<int>(rng() % 4), second);
    if (g.size() > 10 || !metab::is_zn_generating(g) || !metab::is_face_accessible(g).accessible)
      continue;
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace testutil
