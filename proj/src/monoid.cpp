#include "grkit/monoid.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace grkit {

MonoidElement MonoidElement::vertex(const Graph& g, VertexId v) {
  MonoidElement m = zero(g);
  m.counts.at(v) = 1;
  return m;
}

std::size_t MonoidElement::size() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

MonoidElement parse_monoid_element(const Graph& g, const std::string& text) {
  MonoidElement m = MonoidElement::zero(g);
  std::string trimmed;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
  if (trimmed.empty() || trimmed == "0") return m;
  std::stringstream ss(trimmed);
  std::string item;
  while (std::getline(ss, item, '+')) {
    if (item.empty()) throw GraphError("malformed multiset '" + text + "'");
    const auto v = g.find_vertex(item);
    if (!v) throw GraphError("unknown vertex '" + item + "' in multiset");
    ++m.counts[*v];
  }
  if (trimmed.back() == '+') throw GraphError("malformed multiset '" + text + "'");
  return m;
}

std::string format_monoid_element(const Graph& g, const MonoidElement& m) {
  std::string out;
  for (VertexId v = 0; v < m.counts.size(); ++v)
    for (std::size_t i = 0; i < m.counts[v]; ++i) {
      if (!out.empty()) out += '+';
      out += g.vertex_name(v);
    }
  return out.empty() ? "0" : out;
}

MonoidElement rewrite_step(const Graph& g, const MonoidElement& m, VertexId v, RewriteDirection direction) {
  if (m.counts.size() != g.vertex_count()) throw GraphError("multiset does not match the graph");
  if (g.is_sink(v)) throw GraphError("vertex '" + g.vertex_name(v) + "' is a sink and has no rewrite");
  MonoidElement out = m;
  if (direction == RewriteDirection::Forward) {
    if (out.counts[v] == 0) throw GraphError("vertex '" + g.vertex_name(v) + "' does not occur in the multiset");
    --out.counts[v];
    for (EdgeId e : g.out_edges(v)) ++out.counts[g.edge(e).range];
    return out;
  }
  for (EdgeId e : g.out_edges(v)) {
    const VertexId w = g.edge(e).range;
    if (out.counts[w] == 0)
      throw GraphError("multiset does not contain the right-hand side for '" + g.vertex_name(v) + "'");
    --out.counts[w];
  }
  ++out.counts[v];
  return out;
}

std::string to_string(MonoidOutcome o) {
  switch (o) {
    case MonoidOutcome::Equal: return "Equal";
    case MonoidOutcome::NotEqualWithinBudget: return "NotEqualWithinBudget";
    case MonoidOutcome::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

bool contains_rhs(const Graph& g, const MonoidElement& m, VertexId v) {
  std::vector<std::size_t> need(g.vertex_count(), 0);
  for (EdgeId e : g.out_edges(v)) ++need[g.edge(e).range];
  for (VertexId w = 0; w < need.size(); ++w)
    if (need[w] > m.counts[w]) return false;
  return true;
}

std::vector<MonoidElement> neighbours(const Graph& g, const MonoidElement& m, bool backward) {
  std::vector<MonoidElement> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) continue;
    if (m.counts[v] > 0) out.push_back(rewrite_step(g, m, v, RewriteDirection::Forward));
    if (backward && contains_rhs(g, m, v)) out.push_back(rewrite_step(g, m, v, RewriteDirection::Backward));
  }
  return out;
}

struct Side {
  std::set<MonoidElement> seen;
  std::deque<MonoidElement> frontier;
};

}  // namespace

MonoidSearch monoid_equal(const Graph& g, const MonoidElement& a, const MonoidElement& b, std::size_t budget) {
  MonoidSearch result;
  if (a == b) {
    result.outcome = MonoidOutcome::Equal;
    return result;
  }
  Side sa{{a}, {a}}, sb{{b}, {b}};
  for (;;) {
    Side& grow = sa.seen.size() <= sb.seen.size() ? sa : sb;
    const Side& other = &grow == &sa ? sb : sa;
    std::deque<MonoidElement> next;
    for (const auto& m : grow.frontier)
      for (auto& n : neighbours(g, m, true)) {
        if (grow.seen.contains(n)) continue;
        if (other.seen.contains(n)) {
          result.outcome = MonoidOutcome::Equal;
          result.explored = sa.seen.size() + sb.seen.size();
          return result;
        }
        grow.seen.insert(n);
        next.push_back(std::move(n));
        if (sa.seen.size() + sb.seen.size() > budget) {
          result.outcome = MonoidOutcome::Unknown;
          result.explored = sa.seen.size() + sb.seen.size();
          return result;
        }
      }
    grow.frontier = std::move(next);
    if (grow.frontier.empty()) {
      result.outcome = MonoidOutcome::NotEqualWithinBudget;
      result.explored = sa.seen.size() + sb.seen.size();
      return result;
    }
  }
}

std::optional<MonoidElement> forward_common_reduct(const Graph& g, const MonoidElement& a, const MonoidElement& b,
                                                   std::size_t budget) {
  if (a == b) return a;
  Side sa{{a}, {a}}, sb{{b}, {b}};
  while (!sa.frontier.empty() || !sb.frontier.empty()) {
    Side& grow = (sb.frontier.empty() || (!sa.frontier.empty() && sa.seen.size() <= sb.seen.size())) ? sa : sb;
    const Side& other = &grow == &sa ? sb : sa;
    std::deque<MonoidElement> next;
    for (const auto& m : grow.frontier)
      for (auto& n : neighbours(g, m, false)) {
        if (grow.seen.contains(n)) continue;
        if (other.seen.contains(n)) return n;
        grow.seen.insert(n);
        next.push_back(std::move(n));
        if (sa.seen.size() + sb.seen.size() > budget) return std::nullopt;
      }
    grow.frontier = std::move(next);
  }
  return std::nullopt;
}

namespace {

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

FinAbGroup k0_from_monoid(const Graph& g) {
  constexpr std::size_t kMaxVertices = 10;
  const std::size_t n = g.vertex_count();
  if (n > kMaxVertices)
    throw GraphError("determinantal divisors limited to " + std::to_string(kMaxVertices) + " vertices");

  std::vector<IntVector> relations;
  for (VertexId v = 0; v < n; ++v) {
    if (g.is_sink(v)) continue;
    const MonoidElement rhs = rewrite_step(g, MonoidElement::vertex(g, v), v, RewriteDirection::Forward);
    IntVector r(n);
    for (VertexId w = 0; w < n; ++w) r[w] = static_cast<unsigned long>(rhs.counts[w]);
    r[v] -= 1;
    relations.push_back(std::move(r));
  }
  const std::size_t m = relations.size();
  IntMatrix M(n, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) M(i, j) = relations[j][i];

  Integer previous = 1;
  std::size_t rank = 0;
  IntVector torsion;
  for (std::size_t k = 1; k <= std::min(n, m); ++k) {
    Integer divisor = 0;
    for_each_subset(n, k, [&](const std::vector<std::size_t>& rows) {
      if (divisor == 1) return;
      const IntMatrix R = M.select_rows(rows);
      for_each_subset(m, k, [&](const std::vector<std::size_t>& cols) {
        if (divisor == 1) return;
        divisor = gcd(divisor, determinant(R.select_columns(cols)));
      });
    });
    if (divisor == 0) break;
    rank = k;
    const Integer factor = divisor / previous;
    if (factor != 1) torsion.push_back(factor);
    previous = divisor;
  }
  return FinAbGroup(n - rank, std::move(torsion));
}

IdealSupport ideal_vertex_support(const Graph& g, std::span<const VertexId> H, std::size_t budget) {
  if (!is_hereditary(g, H)) throw GraphError("vertex set is not hereditary");
  if (!is_saturated(g, H)) throw GraphError("vertex set is not saturated");
  const std::size_t n = g.vertex_count();
  std::vector<bool> in_h(n, false);
  for (VertexId v : H) in_h.at(v) = true;

  IdealSupport out;
  for (VertexId v = 0; v < n; ++v) {
    if (in_h[v]) {
      out.support.push_back(v);
      continue;
    }
    // Forward rewriting of the part outside H only; success once nothing
    // outside H is left. A state dominating an explored one cannot succeed
    // unless that one does, so dominated states are skipped.
    using State = std::vector<std::size_t>;
    std::vector<State> explored;
    std::deque<State> queue;
    State start(n, 0);
    start[v] = 1;
    queue.push_back(start);
    explored.push_back(start);
    bool success = false, exhausted = false;
    while (!queue.empty() && !success) {
      const State s = queue.front();
      queue.pop_front();
      for (VertexId w = 0; w < n && !success; ++w) {
        if (s[w] == 0 || g.is_sink(w)) continue;
        State t = s;
        --t[w];
        for (EdgeId e : g.out_edges(w))
          if (!in_h[g.edge(e).range]) ++t[g.edge(e).range];
        if (std::all_of(t.begin(), t.end(), [](std::size_t c) { return c == 0; })) {
          success = true;
          break;
        }
        bool stuck = false;
        for (VertexId u = 0; u < n; ++u)
          if (t[u] > 0 && g.is_sink(u)) stuck = true;
        if (stuck) continue;
        const bool dominated = std::any_of(explored.begin(), explored.end(), [&](const State& x) {
          for (std::size_t i = 0; i < n; ++i)
            if (t[i] < x[i]) return false;
          return true;
        });
        if (dominated) continue;
        explored.push_back(t);
        queue.push_back(std::move(t));
        if (explored.size() > budget) {
          exhausted = true;
          break;
        }
      }
      if (exhausted) break;
    }
    if (success) out.support.push_back(v);
    else if (exhausted) out.unknown.push_back(v);
  }
  return out;
}

}  // namespace grkit
