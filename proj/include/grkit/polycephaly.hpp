#pragma once

// Recognition of polycephaly graphs: every vertex flows into a head that is a
// sink, an exit-free cycle (comet) or an exit-free multi-loop vertex (rose).

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "grkit/graph.hpp"

namespace grkit {

enum class HeadKind { AcyclicSink, Comet, Rose };

std::string to_string(HeadKind kind);

struct Head {
  HeadKind kind = HeadKind::AcyclicSink;
  /// Head vertex; for a comet, the base vertex whose cycle edge is removed.
  VertexId vertex = 0;
  /// Comet only: cycle vertices starting at the base, cycle_edges[i] leaves cycle[i].
  std::vector<VertexId> cycle{};
  std::vector<EdgeId> cycle_edges{};
  std::size_t cycle_length = 0;
  /// Rose only.
  std::size_t petals = 0;
  /// Lengths of the paths of the reduced graph ending at `vertex`.
  LengthProfile lengths{};
  /// Index of the weakly connected component containing the head.
  std::size_t component = 0;

  /// Number of paths into the head, i.e. the matrix size of its block.
  Integer path_count() const { return lengths.total(); }
};

struct PolycephalyDecomposition {
  std::vector<Head> heads;
  /// The acyclic graph left after removing one cycle edge per comet and all rose loops.
  Graph reduced_graph;
  std::size_t component_count = 0;
};

enum class RejectReason { CycleWithExit, RoseWithExit, OverlappingCycles, VertexReachesNoHead };

std::string to_string(RejectReason reason);

struct NotPolycephaly {
  RejectReason reason;
  std::string detail;
};

using Classification = std::variant<PolycephalyDecomposition, NotPolycephaly>;

Classification classify(const Graph& g);

class NotPolycephalyError : public GraphError {
 public:
  explicit NotPolycephalyError(NotPolycephaly why)
      : GraphError("not a polycephaly graph: " + to_string(why.reason) + " (" + why.detail + ")"),
        why_(std::move(why)) {}
  const NotPolycephaly& why() const noexcept { return why_; }

 private:
  NotPolycephaly why_;
};

/// classify, throwing NotPolycephalyError on rejection.
PolycephalyDecomposition decompose(const Graph& g);

/// Removes, for each comet, the cycle edge leaving its base and all rose loops.
/// Throws std::logic_error if the result still has a cycle.
Graph reduce_to_E1(const Graph& g, std::span<const Head> heads);

/// Lengths multiset for `comet` recomputed as if `base` (a vertex on its cycle)
/// were the base vertex.
LengthProfile comet_lengths_with_base(const Graph& g, const Head& comet, VertexId base);

/// Graded matrix block attached to one head.
struct BlockDescriptor {
  enum class Ring { Field, Laurent, Leavitt };
  Ring ring = Ring::Field;
  /// Laurent: x-exponent step l (K[x^l, x^-l]); Leavitt: n in L(1, n).
  std::size_t parameter = 0;
  Integer size;
  LengthProfile shifts;

  /// e.g. `M_4(K[x^2,x^-2])(0,1,1,2)`.
  std::string to_string() const;
};

std::vector<BlockDescriptor> decomposition_report(const PolycephalyDecomposition& d);
std::string format_report(std::span<const BlockDescriptor> blocks);

/// Comma separated sorted lengths, or a histogram for very large multisets.
std::string format_shifts(const LengthProfile& lengths);

}  // namespace grkit
