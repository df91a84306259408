#include "grkit/intmatrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace grkit {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long x : row) entries_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntVector IntMatrix::operator*(std::span<const Integer> v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector product: shape mismatch");
  IntVector out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

void IntMatrix::require_same_shape(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix shape mismatch");
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  require_same_shape(rhs);
  IntMatrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += rhs.entries_[i];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  require_same_shape(rhs);
  IntMatrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= rhs.entries_[i];
  return out;
}

IntMatrix IntMatrix::pow(std::size_t exponent) const {
  if (!is_square()) throw std::invalid_argument("matrix power of a non-square matrix");
  IntMatrix result = identity(rows_);
  IntMatrix base = *this;
  while (exponent) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> cols) const {
  IntMatrix out(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(i, cols[j]);
  return out;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> rows) const {
  IntMatrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(rows[i], j);
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------

FinAbGroup::FinAbGroup(std::size_t free_rank, IntVector torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw std::invalid_argument("torsion coefficients must be at least 2");
    if (i && !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t()))
      throw std::invalid_argument("torsion coefficients must form a divisibility chain");
  }
}

std::string FinAbGroup::to_string() const {
  if (is_trivial()) return "0 (trivial group)";
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.emplace_back("Z");
  else if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (const auto& d : torsion_) parts.push_back("Z/" + d.get_str());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " ⊕ ";
    out += parts[i];
  }
  return out;
}

// ---------------------------------------------------------------------------

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  const std::size_t n = std::min(S.rows(), S.cols());
  while (r < n && S(r, r) != 0) ++r;
  return r;
}

IntVector SmithDecomposition::diagonal() const {
  IntVector d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  SmithDecomposition d{A, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& S = d.S;

  auto row_op = [&](std::size_t dst, std::size_t src, const Integer& f) {
    S.add_row_multiple(dst, src, f);
    d.U.add_row_multiple(dst, src, f);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& f) {
    S.add_col_multiple(dst, src, f);
    d.V.add_col_multiple(dst, src, f);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Pivot: smallest nonzero absolute value in the trailing block.
      std::size_t pi = m, pj = n;
      Integer best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Integer& x = S(i, j);
          if (x != 0 && (pi == m || abs(x) < best)) {
            best = abs(x);
            pi = i;
            pj = j;
          }
        }
      if (pi == m) return d;  // trailing block is zero

      S.swap_rows(t, pi);
      d.U.swap_rows(t, pi);
      S.swap_cols(t, pj);
      d.V.swap_cols(t, pj);

      bool cleared = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        row_op(i, t, -q);
        if (S(i, t) != 0) cleared = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        col_op(j, t, -q);
        if (S(t, j) != 0) cleared = false;
      }
      if (!cleared) continue;

      // Enforce the divisibility chain on the trailing block.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < m && divides_all; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            row_op(t, i, 1);
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      d.U.negate_row(t);
    }
  }
  return d;
}

FinAbGroup cokernel(const IntMatrix& A, std::size_t target_rank) {
  if (A.rows() != target_rank) throw std::invalid_argument("cokernel: row count differs from target rank");
  const auto snf = smith_normal_form(A);
  IntVector torsion;
  std::size_t r = 0;
  for (const auto& x : snf.diagonal()) {
    if (x == 0) break;
    ++r;
    if (x != 1) torsion.push_back(x);
  }
  return FinAbGroup(target_rank - r, std::move(torsion));
}

FinAbGroup cokernel(const IntMatrix& A) { return cokernel(A, A.rows()); }

std::size_t rank(const IntMatrix& A) { return smith_normal_form(A).rank(); }

Integer determinant(const IntMatrix& A) {
  if (!A.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  IntMatrix M = A;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && M(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      M.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(M(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& A) {
  if (!A.is_square()) return false;
  return abs(determinant(A)) == 1;
}

std::vector<IntVector> kernel_basis(const IntMatrix& A) {
  const auto snf = smith_normal_form(A);
  const std::size_t r = snf.rank();
  std::vector<IntVector> basis;
  for (std::size_t j = r; j < A.cols(); ++j) {
    IntVector v(A.cols());
    for (std::size_t i = 0; i < A.cols(); ++i) v[i] = snf.V(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

StableKernel stable_kernel(const IntMatrix& A) {
  if (!A.is_square()) throw std::invalid_argument("stable kernel of a non-square matrix");
  StableKernel out;
  if (A.rows() == 0) return out;
  IntMatrix power = A;
  std::size_t m = 1;
  std::size_t current = rank(power);
  for (;;) {
    IntMatrix next = power * A;
    const std::size_t next_rank = rank(next);
    if (next_rank == current) break;
    power = std::move(next);
    current = next_rank;
    ++m;
  }
  out.index = m;
  out.basis = kernel_basis(power);
  return out;
}

IntMatrix adjacency(const Graph& g) {
  IntMatrix N(g.vertex_count(), g.vertex_count());
  for (const Edge& e : g.edges()) N(e.source, e.range) += 1;
  return N;
}

SinkReducedSystem sink_reduced_system(const Graph& g) {
  SinkReducedSystem sys;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!g.is_sink(v)) sys.order.push_back(v);
  sys.non_sink_count = sys.order.size();
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v)) sys.order.push_back(v);

  // Transpose first, then drop the sink columns.
  const IntMatrix nt = adjacency(g).transpose().select_rows(sys.order).select_columns(sys.order);
  const IntMatrix id = IntMatrix::identity(g.vertex_count());
  std::vector<std::size_t> keep(sys.non_sink_count);
  for (std::size_t j = 0; j < keep.size(); ++j) keep[j] = j;
  sys.transposed = nt.select_columns(keep);
  sys.identity = id.select_columns(keep);
  return sys;
}

}  // namespace grkit
