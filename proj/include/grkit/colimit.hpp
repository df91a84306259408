#pragma once

// K0^gr of a finite sink-free graph as the direct limit of Z^(E^0) under N^t.
// An element v@k is a vector at stage k; v@k and (N^t v)@(k+1) are identified.

#include <cstddef>
#include <string>
#include <vector>

#include "grkit/graph.hpp"
#include "grkit/intmatrix.hpp"

namespace grkit {

struct ColimitElement {
  std::size_t stage = 0;
  IntVector vector;

  std::string to_string() const;
};

/// True iff g has no sinks.
bool is_strongly_graded(const Graph& g);

/// The inductive system of a sink-free graph with cached powers.
class ColimitSystem {
 public:
  explicit ColimitSystem(const Graph& g);

  std::size_t dimension() const noexcept { return transposed_.rows(); }
  const IntMatrix& transposed() const noexcept { return transposed_; }
  const StableKernel& stable() const noexcept { return stable_; }

  /// Applies N^t until `a` sits at `stage` (which must not be earlier).
  ColimitElement promote(const ColimitElement& a, std::size_t stage) const;
  bool equal(const ColimitElement& a, const ColimitElement& b) const;
  /// x(v@k) = (N^t v)@k.
  ColimitElement x_action(const ColimitElement& a) const;
  /// x^-1(v@k) = v@(k+1).
  ColimitElement x_inverse(const ColimitElement& a) const;
  ColimitElement order_unit() const;

 private:
  void check(const ColimitElement& a) const;

  IntMatrix transposed_;
  StableKernel stable_;
  IntMatrix stable_power_;  // (N^t)^index
};

bool colimit_equal(const Graph& g, const ColimitElement& a, const ColimitElement& b);
ColimitElement x_action_vector(const Graph& g, const ColimitElement& a);

struct ColimitPresentation {
  std::size_t dimension = 0;
  Integer determinant;
  std::size_t stable_index = 0;
  std::size_t stable_kernel_rank = 0;
  /// Rank of the eventual range L = (N^t)^index Z^n, on which N^t is injective.
  std::size_t eventual_rank = 0;
  /// |det| of N^t restricted to L; equals |det N| when N is invertible.
  Integer restricted_determinant;
  /// True when the colimit is all of the localization Z[1/d]^r and not a proper subgroup.
  bool fills_localization = false;
  /// `Z ⊕ Z`, `⊕_3 Z[1/2]`, `Z[1/2]` or `0`.
  std::string label;

  bool stage_vector_only() const { return determinant == 0; }
  std::string to_string() const;
};

ColimitPresentation colimit_presentation(const Graph& g);

struct FrozenBlock {
  VertexId sink;
  std::size_t depth;  // level at which the block was produced
  Integer size;
};

struct BratteliLevel {
  std::size_t depth = 0;
  /// sizes[v] = number of paths of length `depth` with range v.
  IntVector sizes;
  /// Sink blocks from earlier levels, carried forward unchanged.
  std::vector<FrozenBlock> frozen;
};

std::vector<BratteliLevel> bratteli(const Graph& g, std::size_t depth);

struct ExactnessReport {
  bool passed = false;
  std::size_t checks = 0;
  FinAbGroup target;
  std::string failure;
};

/// Generator-level check that v@k -> [v] in coker(N^t - I) is well defined and
/// kills the image of 1 - x, at stages 0..max_stage.
ExactnessReport exactness_check(const Graph& g, std::size_t max_stage = 3);

/// All permutations p (p[i] = image of vertex i) whose permutation matrix P
/// satisfies P N1^t = N2^t P.
std::vector<std::vector<std::size_t>> permutation_intertwiners(const Graph& g1, const Graph& g2);

}  // namespace grkit
