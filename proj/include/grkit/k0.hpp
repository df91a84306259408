#pragma once

#include "grkit/graph.hpp"
#include "grkit/intmatrix.hpp"

namespace grkit {

/// coker(N^t - I : Z^(non-sinks) -> Z^(vertices)) via Smith normal form.
FinAbGroup k0_nongraded(const Graph& g);

}  // namespace grkit
