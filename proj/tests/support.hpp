#pragma once

// Shared helpers for the test suites: small named graphs, a deterministic
// random-graph generator, and self-cleaning scratch directories.

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "skillnet/graph.hpp"

namespace testutil {

// Absolute-difference closeness. doctest's Approx compares relatively, which
// is the wrong shape for the fixed 1e-9 / 1e-12 bounds used throughout.
inline bool close_abs(double actual, double expected, double tolerance) {
  return std::abs(actual - expected) <= tolerance;
}

// Zero-padded names ("v0000", "v0001", ...) so lexicographic order equals
// node id order, which keeps edge-list fixtures easy to reason about.
inline std::vector<std::string> node_names(int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "v%04d", i);
    names.emplace_back(buffer);
  }
  return names;
}

inline skillnet::SkillGraph graph_from_edges(
    int n, const std::vector<skillnet::WeightedEdge>& edges) {
  return skillnet::make_skill_graph(node_names(n), edges);
}

inline skillnet::SkillGraph path_graph(int n) {
  std::vector<skillnet::WeightedEdge> edges;
  for (int i = 0; i + 1 < n; ++i) {
    edges.push_back({i, i + 1, 1});
  }
  return graph_from_edges(n, edges);
}

// Node 0 is the center.
inline skillnet::SkillGraph star_graph(int leaves) {
  std::vector<skillnet::WeightedEdge> edges;
  for (int i = 1; i <= leaves; ++i) {
    edges.push_back({0, i, 1});
  }
  return graph_from_edges(leaves + 1, edges);
}

inline skillnet::SkillGraph complete_graph(int n) {
  std::vector<skillnet::WeightedEdge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      edges.push_back({a, b, 1});
    }
  }
  return graph_from_edges(n, edges);
}

// Two disjoint triangles {0,1,2} and {3,4,5}.
inline skillnet::SkillGraph two_triangles() {
  return graph_from_edges(6, {{0, 1, 1},
                              {0, 2, 1},
                              {1, 2, 1},
                              {3, 4, 1},
                              {3, 5, 1},
                              {4, 5, 1}});
}

// The two triangles joined by the bridge 2-3 (7 edges total).
inline skillnet::SkillGraph two_triangles_bridge() {
  return graph_from_edges(6, {{0, 1, 1},
                              {0, 2, 1},
                              {1, 2, 1},
                              {2, 3, 1},
                              {3, 4, 1},
                              {3, 5, 1},
                              {4, 5, 1}});
}

// G(n, p) with edge weights drawn from weight_choices. Draws use modulo on
// the raw engine output so the sequence is pinned by the standard regardless
// of library distribution internals.
inline skillnet::SkillGraph random_graph(std::mt19937_64& rng, int n, double p,
                                         const std::vector<int>& weight_choices = {
                                             1}) {
  const std::uint64_t threshold =
      static_cast<std::uint64_t>(p * 4294967296.0);  // p * 2^32
  std::vector<skillnet::WeightedEdge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if ((rng() >> 32) < threshold) {
        const int weight =
            weight_choices[rng() % weight_choices.size()];
        edges.push_back({a, b, weight});
      }
    }
  }
  return graph_from_edges(n, edges);
}

// Unique directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  ScratchDir() {
    static std::atomic<unsigned> counter{0};
    std::ostringstream name;
    name << "skillnet-test-" << ::getpid() << "-" << counter++;
    path_ = std::filesystem::temp_directory_path() / name.str();
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path,
                       std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << content;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace testutil
