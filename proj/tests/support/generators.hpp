#pragma once

// Seeded random inputs for property tests.

#include <cstddef>
#include <random>
#include <vector>

#include "grkit/graph.hpp"
#include "grkit/intmatrix.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kSeed = 0x5eed'2024'cafeULL;

/// Arbitrary multigraph: each ordered pair (including loops) gets 0..max_parallel edges.
grkit::Graph random_graph(Rng& rng, std::size_t vertices, std::size_t max_parallel, double edge_probability);

/// Random graph with every vertex having at least one outgoing edge.
grkit::Graph random_sink_free_graph(Rng& rng, std::size_t vertices, std::size_t max_parallel);

struct HeadSpec {
  enum Kind { Sink, Cycle, Rose } kind;
  std::size_t size;  // cycle length or petal count
};

/// Polycephaly graph with the given heads and `feeders` acyclic vertices;
/// declaration order is shuffled.
grkit::Graph random_polycephaly(Rng& rng, const std::vector<HeadSpec>& heads, std::size_t feeders,
                                std::size_t max_out = 2);

/// Polycephaly graph with random heads, at most `max_vertices` vertices.
grkit::Graph random_polycephaly(Rng& rng, std::size_t max_vertices);

grkit::IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi);

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n);

}  // namespace gen
