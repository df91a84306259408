#include "grkit/polycephaly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace grkit {

std::string to_string(HeadKind kind) {
  switch (kind) {
    case HeadKind::AcyclicSink: return "acyclic-sink";
    case HeadKind::Comet: return "comet";
    case HeadKind::Rose: return "rose";
  }
  return "?";
}

std::string to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::CycleWithExit: return "cycle with exit";
    case RejectReason::RoseWithExit: return "rose with exit";
    case RejectReason::OverlappingCycles: return "overlapping cycles";
    case RejectReason::VertexReachesNoHead: return "vertex reaches no head";
  }
  return "?";
}

namespace {

// Kosaraju; components numbered in discovery order of the second pass.
std::vector<std::size_t> strongly_connected_components(const Graph& g, std::size_t& count) {
  const std::size_t n = g.vertex_count();
  std::vector<VertexId> finish;
  std::vector<bool> seen(n, false);
  for (VertexId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<VertexId, std::size_t>> stack{{s, 0}};
    seen[s] = true;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      const auto out = g.out_edges(v);
      if (i < out.size()) {
        const VertexId w = g.edge(out[i++]).range;
        if (!seen[w]) {
          seen[w] = true;
          stack.emplace_back(w, 0);
        }
      } else {
        finish.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<std::size_t> comp(n, n);
  count = 0;
  for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
    if (comp[*it] != n) continue;
    std::vector<VertexId> stack{*it};
    comp[*it] = count;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e : g.in_edges(v)) {
        const VertexId u = g.edge(e).source;
        if (comp[u] == n) {
          comp[u] = count;
          stack.push_back(u);
        }
      }
    }
    ++count;
  }
  return comp;
}

std::vector<std::size_t> weak_components(const Graph& g, std::size_t& count) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> comp(n, n);
  count = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    std::vector<VertexId> stack{s};
    comp[s] = count;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      auto visit = [&](VertexId w) {
        if (comp[w] == n) {
          comp[w] = count;
          stack.push_back(w);
        }
      };
      for (EdgeId e : g.out_edges(v)) visit(g.edge(e).range);
      for (EdgeId e : g.in_edges(v)) visit(g.edge(e).source);
    }
    ++count;
  }
  return comp;
}

Graph remove_edges(const Graph& g, const std::vector<bool>& removed) {
  Graph out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.add_vertex(g.vertex_name(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (removed[e]) continue;
    const Edge& edge = g.edge(e);
    out.add_edge(edge.name, edge.source, edge.range);
  }
  return out;
}

std::string quoted(const Graph& g, VertexId v) { return "'" + g.vertex_name(v) + "'"; }

}  // namespace

Classification classify(const Graph& g) {
  const std::size_t n = g.vertex_count();

  for (VertexId v = 0; v < n; ++v) {
    const std::size_t loops = g.loop_count(v);
    if (loops >= 2 && g.out_degree(v) > loops)
      return NotPolycephaly{RejectReason::RoseWithExit,
                            "vertex " + quoted(g, v) + " has " + std::to_string(loops) +
                                " loops and another outgoing edge"};
  }

  std::size_t scc_count = 0;
  const auto scc = strongly_connected_components(g, scc_count);
  std::vector<std::vector<VertexId>> members(scc_count);
  for (VertexId v = 0; v < n; ++v) members[scc[v]].push_back(v);

  std::vector<Head> heads;
  for (const auto& comp : members) {
    const VertexId first = comp.front();
    if (comp.size() == 1) {
      const std::size_t loops = g.loop_count(first);
      if (loops == 0) {
        if (g.is_sink(first)) heads.push_back(Head{.kind = HeadKind::AcyclicSink, .vertex = first});
        continue;
      }
      if (loops >= 2) {
        heads.push_back(Head{.kind = HeadKind::Rose, .vertex = first, .petals = loops});
        continue;
      }
      if (g.out_degree(first) > 1)
        return NotPolycephaly{RejectReason::CycleWithExit,
                              "loop at " + quoted(g, first) + " has an exit"};
      Head h{.kind = HeadKind::Comet, .vertex = first};
      h.cycle = {first};
      h.cycle_edges = {g.out_edges(first).front()};
      h.cycle_length = 1;
      heads.push_back(std::move(h));
      continue;
    }

    // Nontrivial component with at least two vertices.
    bool has_loop = false;
    bool simple = true;
    for (VertexId v : comp) {
      if (g.loop_count(v) > 0) has_loop = true;
      for (EdgeId e : g.out_edges(v))
        if (scc[g.edge(e).range] != scc[v])
          return NotPolycephaly{RejectReason::CycleWithExit,
                                "cycle through " + quoted(g, v) + " exits along edge '" +
                                    g.edge(e).name + "'"};
      if (g.out_degree(v) != 1) simple = false;
    }
    if (!simple) {
      if (has_loop)
        return NotPolycephaly{RejectReason::CycleWithExit,
                              "cycle through " + quoted(g, first) + " has a loop as exit"};
      return NotPolycephaly{RejectReason::OverlappingCycles,
                            "cycles through " + quoted(g, first) + " share vertices"};
    }
    Head h{.kind = HeadKind::Comet, .vertex = first};
    VertexId v = first;
    do {
      const EdgeId e = g.out_edges(v).front();
      h.cycle.push_back(v);
      h.cycle_edges.push_back(e);
      v = g.edge(e).range;
    } while (v != first);
    h.cycle_length = h.cycle.size();
    heads.push_back(std::move(h));
  }

  // Every vertex must reach a head vertex.
  std::vector<bool> reaches(n, false);
  std::vector<VertexId> stack;
  for (const Head& h : heads) {
    const std::vector<VertexId> vs = h.kind == HeadKind::Comet ? h.cycle : std::vector<VertexId>{h.vertex};
    for (VertexId v : vs)
      if (!reaches[v]) {
        reaches[v] = true;
        stack.push_back(v);
      }
  }
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : g.in_edges(v)) {
      const VertexId u = g.edge(e).source;
      if (!reaches[u]) {
        reaches[u] = true;
        stack.push_back(u);
      }
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (!reaches[v])
      return NotPolycephaly{RejectReason::VertexReachesNoHead, "vertex " + quoted(g, v)};

  std::sort(heads.begin(), heads.end(), [](const Head& a, const Head& b) { return a.vertex < b.vertex; });

  PolycephalyDecomposition d;
  const auto weak = weak_components(g, d.component_count);
  d.reduced_graph = reduce_to_E1(g, heads);
  for (Head& h : heads) {
    h.component = weak[h.vertex];
    h.lengths = path_length_profile(d.reduced_graph, h.vertex);
  }
  d.heads = std::move(heads);
  return d;
}

PolycephalyDecomposition decompose(const Graph& g) {
  auto c = classify(g);
  if (auto* why = std::get_if<NotPolycephaly>(&c)) throw NotPolycephalyError(*why);
  return std::get<PolycephalyDecomposition>(std::move(c));
}

Graph reduce_to_E1(const Graph& g, std::span<const Head> heads) {
  std::vector<bool> removed(g.edge_count(), false);
  for (const Head& h : heads) {
    if (h.kind == HeadKind::Comet) {
      const auto it = std::find(h.cycle.begin(), h.cycle.end(), h.vertex);
      if (it == h.cycle.end()) throw std::logic_error("comet base is not on its cycle");
      removed[h.cycle_edges[static_cast<std::size_t>(it - h.cycle.begin())]] = true;
    } else if (h.kind == HeadKind::Rose) {
      for (EdgeId e : g.out_edges(h.vertex)) removed[e] = true;
    }
  }
  Graph out = remove_edges(g, removed);
  if (!is_acyclic(out)) throw std::logic_error("reduced graph still contains a cycle");
  return out;
}

LengthProfile comet_lengths_with_base(const Graph& g, const Head& comet, VertexId base) {
  if (comet.kind != HeadKind::Comet) throw std::invalid_argument("head is not a comet");
  std::vector<bool> removed(g.edge_count(), false);
  const auto it = std::find(comet.cycle.begin(), comet.cycle.end(), base);
  if (it == comet.cycle.end()) throw std::invalid_argument("vertex is not on the comet cycle");
  removed[comet.cycle_edges[static_cast<std::size_t>(it - comet.cycle.begin())]] = true;
  // Other cycles in the graph are irrelevant: only vertices reaching `base` matter,
  // and none of them lies on another cycle.
  const Graph reduced = remove_edges(g, removed);
  return path_length_profile(reduced, base);
}

std::string format_shifts(const LengthProfile& lengths) {
  constexpr std::size_t kListLimit = 4096;
  std::string out = "(";
  if (lengths.total() <= kListLimit) {
    const auto list = lengths.expand(kListLimit);
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(list[i]);
    }
  } else {
    bool first = true;
    for (std::size_t l = 0; l < lengths.counts().size(); ++l) {
      if (lengths.counts()[l] == 0) continue;
      if (!first) out += ',';
      first = false;
      out += std::to_string(l) + "^" + lengths.counts()[l].get_str();
    }
  }
  return out + ")";
}

std::string BlockDescriptor::to_string() const {
  std::string ring_name;
  switch (ring) {
    case Ring::Field: ring_name = "K"; break;
    case Ring::Laurent:
      ring_name = parameter == 1 ? "K[x,x^-1]"
                                 : "K[x^" + std::to_string(parameter) + ",x^-" + std::to_string(parameter) + "]";
      break;
    case Ring::Leavitt: ring_name = "L(1," + std::to_string(parameter) + ")"; break;
  }
  return "M_" + size.get_str() + "(" + ring_name + ")" + format_shifts(shifts);
}

std::vector<BlockDescriptor> decomposition_report(const PolycephalyDecomposition& d) {
  std::vector<BlockDescriptor> out;
  for (const Head& h : d.heads) {
    BlockDescriptor b;
    switch (h.kind) {
      case HeadKind::AcyclicSink: b.ring = BlockDescriptor::Ring::Field; break;
      case HeadKind::Comet:
        b.ring = BlockDescriptor::Ring::Laurent;
        b.parameter = h.cycle_length;
        break;
      case HeadKind::Rose:
        b.ring = BlockDescriptor::Ring::Leavitt;
        b.parameter = h.petals;
        break;
    }
    b.size = h.path_count();
    b.shifts = h.lengths;
    out.push_back(std::move(b));
  }
  return out;
}

std::string format_report(std::span<const BlockDescriptor> blocks) {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += " ⊕ ";
    out += blocks[i].to_string();
  }
  return out;
}

}  // namespace grkit
