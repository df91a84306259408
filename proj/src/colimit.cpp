#include "grkit/colimit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace grkit {

std::string ColimitElement::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < vector.size(); ++i) {
    if (i) out += ',';
    out += vector[i].get_str();
  }
  return out + ")@" + std::to_string(stage);
}

bool is_strongly_graded(const Graph& g) { return sinks(g).empty(); }

namespace {

void require_sink_free(const Graph& g) {
  if (!is_strongly_graded(g))
    throw GraphError("graph has sinks; the colimit description needs a sink-free graph");
}

std::string direct_sum(std::size_t copies, const std::string& summand) {
  if (copies == 0) return "0";
  if (copies == 1) return summand;
  if (summand == "Z") {
    std::string out = "Z";
    for (std::size_t i = 1; i < copies; ++i) out += " ⊕ Z";
    return out;
  }
  return "⊕_" + std::to_string(copies) + " " + summand;
}

IntMatrix reduce_mod(IntMatrix m, const Integer& d) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_fdiv_r(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), d.get_mpz_t());
  return m;
}

// Whether R^e == 0 mod d for e = size * bitlength(d), i.e. R is nilpotent
// modulo every prime dividing d.
bool nilpotent_mod_every_prime(const IntMatrix& R, const Integer& d) {
  std::size_t e = R.rows() * mpz_sizeinbase(d.get_mpz_t(), 2);
  IntMatrix result = IntMatrix::identity(R.rows());
  IntMatrix base = reduce_mod(R, d);
  while (e) {
    if (e & 1) result = reduce_mod(result * base, d);
    e >>= 1;
    if (e) base = reduce_mod(base * base, d);
  }
  return result.is_zero();
}

}  // namespace

ColimitSystem::ColimitSystem(const Graph& g) {
  require_sink_free(g);
  transposed_ = adjacency(g).transpose();
  stable_ = stable_kernel(transposed_);
  stable_power_ = transposed_.pow(stable_.index);
}

void ColimitSystem::check(const ColimitElement& a) const {
  if (a.vector.size() != dimension())
    throw std::invalid_argument("colimit element has length " + std::to_string(a.vector.size()) + ", expected " +
                                std::to_string(dimension()));
}

ColimitElement ColimitSystem::promote(const ColimitElement& a, std::size_t stage) const {
  check(a);
  if (stage < a.stage) throw std::invalid_argument("cannot move a colimit element to an earlier stage");
  ColimitElement out = a;
  while (out.stage < stage) {
    out.vector = transposed_ * std::span<const Integer>(out.vector);
    ++out.stage;
  }
  return out;
}

bool ColimitSystem::equal(const ColimitElement& a, const ColimitElement& b) const {
  const std::size_t stage = std::max(a.stage, b.stage);
  const ColimitElement pa = promote(a, stage);
  const ColimitElement pb = promote(b, stage);
  IntVector diff(dimension());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = pa.vector[i] - pb.vector[i];
  const IntVector image = stable_power_ * std::span<const Integer>(diff);
  return std::all_of(image.begin(), image.end(), [](const Integer& x) { return x == 0; });
}

ColimitElement ColimitSystem::x_action(const ColimitElement& a) const {
  check(a);
  return {a.stage, transposed_ * std::span<const Integer>(a.vector)};
}

ColimitElement ColimitSystem::x_inverse(const ColimitElement& a) const {
  check(a);
  return {a.stage + 1, a.vector};
}

ColimitElement ColimitSystem::order_unit() const { return {0, IntVector(dimension(), 1)}; }

bool colimit_equal(const Graph& g, const ColimitElement& a, const ColimitElement& b) {
  return ColimitSystem(g).equal(a, b);
}

ColimitElement x_action_vector(const Graph& g, const ColimitElement& a) { return ColimitSystem(g).x_action(a); }

std::string ColimitPresentation::to_string() const {
  std::string out;
  if (stage_vector_only()) {
    out += "colimit: stage-vector representation only\n";
    out += "det N: 0\n";
    out += "stable kernel: rank " + std::to_string(stable_kernel_rank) + " (index " + std::to_string(stable_index) +
           ")\n";
    out += "eventual range: rank " + std::to_string(eventual_rank) + ", restricted |det| " +
           restricted_determinant.get_str() + ", localization " + label;
    return out;
  }
  out += "colimit: " + label + "\n";
  out += "det N: " + determinant.get_str();
  if (restricted_determinant != 1)
    out += std::string("\nfills localization: ") +
           (fills_localization ? "yes"
                               : "no (the colimit is the proper subgroup ∪_m (N^t)^-m Z^" +
                                     std::to_string(dimension) + " of Q^" + std::to_string(dimension) + ")");
  return out;
}

ColimitPresentation colimit_presentation(const Graph& g) {
  const ColimitSystem sys(g);
  ColimitPresentation p;
  const IntMatrix& A = sys.transposed();
  p.dimension = sys.dimension();
  p.determinant = determinant(A);
  p.stable_index = sys.stable().index;
  p.stable_kernel_rank = sys.stable().basis.size();
  p.eventual_rank = p.dimension - p.stable_kernel_rank;

  // Basis b_j = A^m V e_j of L from U A^m V = S, and R with A b_j = sum_i R_ij b_i,
  // read off through U b_i = s_i e_i.
  const IntMatrix Am = A.pow(p.stable_index);
  const auto snf = smith_normal_form(Am);
  const std::size_t r = snf.rank();
  IntMatrix R(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    IntVector v(p.dimension);
    for (std::size_t i = 0; i < p.dimension; ++i) v[i] = snf.V(i, j);
    const IntVector bj = Am * std::span<const Integer>(v);
    const IntVector ubj = snf.U * std::span<const Integer>(A * std::span<const Integer>(bj));
    for (std::size_t i = 0; i < r; ++i) {
      if (!mpz_divisible_p(ubj[i].get_mpz_t(), snf.S(i, i).get_mpz_t()))
        throw std::logic_error("eventual range is not invariant under N^t");
      R(i, j) = ubj[i] / snf.S(i, i);
    }
  }
  p.restricted_determinant = abs(determinant(R));
  if (p.restricted_determinant == 1) {
    p.fills_localization = true;
    p.label = direct_sum(r, "Z");
  } else {
    p.fills_localization = nilpotent_mod_every_prime(R, p.restricted_determinant);
    p.label = direct_sum(r, "Z[1/" + p.restricted_determinant.get_str() + "]");
  }
  return p;
}

std::vector<BratteliLevel> bratteli(const Graph& g, std::size_t depth) {
  const IntMatrix nt = adjacency(g).transpose();
  const VertexSet sink_set = sinks(g);
  std::vector<BratteliLevel> levels;
  BratteliLevel level{0, IntVector(g.vertex_count(), 1), {}};
  levels.push_back(level);
  for (std::size_t m = 1; m <= depth; ++m) {
    BratteliLevel next;
    next.depth = m;
    next.sizes = nt * std::span<const Integer>(level.sizes);
    next.frozen = level.frozen;
    for (VertexId w : sink_set)
      if (level.sizes[w] != 0) next.frozen.push_back({w, m - 1, level.sizes[w]});
    levels.push_back(next);
    level = std::move(next);
  }
  return levels;
}

ExactnessReport exactness_check(const Graph& g, std::size_t max_stage) {
  const ColimitSystem sys(g);
  ExactnessReport report;
  const std::size_t n = sys.dimension();
  const IntMatrix D = sys.transposed() - IntMatrix::identity(n);
  report.target = cokernel(D);
  const auto snf = smith_normal_form(D);
  const IntVector diag = snf.diagonal();

  // Class of w in coker(D): coordinates of U w, reduced modulo the invariant factors.
  auto same_class = [&](const IntVector& a, const IntVector& b) {
    IntVector diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
    const IntVector u = snf.U * std::span<const Integer>(diff);
    for (std::size_t i = 0; i < n; ++i) {
      const Integer s = i < diag.size() ? diag[i] : Integer(0);
      if (s == 0 ? u[i] != 0 : !mpz_divisible_p(u[i].get_mpz_t(), s.get_mpz_t())) return false;
    }
    return true;
  };
  // pi(v@k) = [v] for every stage k.
  auto pi = [](const ColimitElement& e) { return e.vector; };

  for (std::size_t k = 0; k <= max_stage; ++k)
    for (std::size_t v = 0; v < n; ++v) {
      ColimitElement gen{k, IntVector(n, 0)};
      gen.vector[v] = 1;
      ++report.checks;
      if (!same_class(pi(gen), pi(sys.promote(gen, k + 1)))) {
        report.failure = "pi is not compatible with the transition map at " + gen.to_string();
        return report;
      }
      ++report.checks;
      const ColimitElement xg = sys.x_action(gen);
      if (!same_class(pi(gen), pi(xg))) {
        report.failure = "pi(1 - x) does not vanish at " + gen.to_string();
        return report;
      }
      ++report.checks;
      if (!same_class(pi(gen), pi(sys.x_inverse(gen)))) {
        report.failure = "pi is not constant along x^-1 at " + gen.to_string();
        return report;
      }
    }
  report.passed = true;
  return report;
}

std::vector<std::vector<std::size_t>> permutation_intertwiners(const Graph& g1, const Graph& g2) {
  constexpr std::size_t kMaxVertices = 9;
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = g1.vertex_count();
  if (n != g2.vertex_count()) return out;
  if (n > kMaxVertices) throw GraphError("permutation search limited to " + std::to_string(kMaxVertices) + " vertices");
  const IntMatrix a = adjacency(g1).transpose();
  const IntMatrix b = adjacency(g2).transpose();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) ok = a(i, j) == b(p[i], p[j]);
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace grkit
