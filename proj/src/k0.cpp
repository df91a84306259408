#include "grkit/k0.hpp"

namespace grkit {

FinAbGroup k0_nongraded(const Graph& g) {
  const SinkReducedSystem sys = sink_reduced_system(g);
  return cokernel(sys.difference(), g.vertex_count());
}

}  // namespace grkit
