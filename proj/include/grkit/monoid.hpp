#pragma once

// The graph monoid M_E: the free commutative monoid on the vertices modulo
// v = sum of r(e) over the edges e leaving v. Used as an independent oracle.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "grkit/graph.hpp"
#include "grkit/intmatrix.hpp"

namespace grkit {

/// Multiset of vertices as a multiplicity vector in declaration order.
struct MonoidElement {
  std::vector<std::size_t> counts;

  static MonoidElement zero(const Graph& g) { return {std::vector<std::size_t>(g.vertex_count(), 0)}; }
  static MonoidElement vertex(const Graph& g, VertexId v);

  std::size_t size() const;
  bool operator==(const MonoidElement&) const = default;
  auto operator<=>(const MonoidElement&) const = default;
};

/// Parses `u+v+v`; `0` or the empty string is the zero element.
MonoidElement parse_monoid_element(const Graph& g, const std::string& text);
std::string format_monoid_element(const Graph& g, const MonoidElement& m);

enum class RewriteDirection { Forward, Backward };

/// Forward replaces one copy of v by the ranges of its outgoing edges;
/// backward undoes that. Throws GraphError when the step does not apply.
MonoidElement rewrite_step(const Graph& g, const MonoidElement& m, VertexId v, RewriteDirection direction);

inline constexpr std::size_t kDefaultMonoidBudget = 100000;

enum class MonoidOutcome { Equal, NotEqualWithinBudget, Unknown };

std::string to_string(MonoidOutcome o);

struct MonoidSearch {
  MonoidOutcome outcome = MonoidOutcome::Unknown;
  std::size_t explored = 0;
};

/// Bidirectional breadth-first search through forward and backward steps.
MonoidSearch monoid_equal(const Graph& g, const MonoidElement& a, const MonoidElement& b,
                          std::size_t budget = kDefaultMonoidBudget);

/// An element reachable from both a and b by forward steps only, if one is
/// found within the budget.
std::optional<MonoidElement> forward_common_reduct(const Graph& g, const MonoidElement& a, const MonoidElement& b,
                                                   std::size_t budget = kDefaultMonoidBudget);

/// Group completion of M_E from the relation vectors (ranges of v) - v, with
/// invariant factors from determinantal divisors rather than Smith normal form.
FinAbGroup k0_from_monoid(const Graph& g);

struct IdealSupport {
  /// Vertices v with [v] below an element supported in H.
  VertexSet support;
  /// Vertices whose search ran out of budget.
  VertexSet unknown;
};

IdealSupport ideal_vertex_support(const Graph& g, std::span<const VertexId> H,
                                  std::size_t budget = kDefaultMonoidBudget);

}  // namespace grkit
