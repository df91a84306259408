#pragma once

// Exact integer linear algebra over GMP integers.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "grkit/graph.hpp"
#include "grkit/integer.hpp"

namespace grkit {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(std::span<const Integer> v) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix pow(std::size_t exponent) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

  IntMatrix select_columns(std::span<const std::size_t> cols) const;
  IntMatrix select_rows(std::span<const std::size_t> rows) const;

  bool is_zero() const;
  bool operator==(const IntMatrix&) const = default;
  std::string to_string() const;

 private:
  void require_same_shape(const IntMatrix& rhs) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVector entries_;
};

/// Finitely generated abelian group Z^free_rank + Z/d1 + ... with d1 | d2 | ...
class FinAbGroup {
 public:
  FinAbGroup() = default;
  FinAbGroup(std::size_t free_rank, IntVector torsion);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const IntVector& torsion() const noexcept { return torsion_; }
  bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }

  /// `Z^r ⊕ Z/d1 ⊕ ...`, or `0 (trivial group)`.
  std::string to_string() const;

  bool operator==(const FinAbGroup&) const = default;

 private:
  std::size_t free_rank_ = 0;
  IntVector torsion_;
};

/// U * A * V = S with U, V unimodular and S diagonal with a divisibility chain.
struct SmithDecomposition {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;

  std::size_t rank() const;
  IntVector diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& A);

/// Z^target_rank / image(A); A must have target_rank rows.
FinAbGroup cokernel(const IntMatrix& A, std::size_t target_rank);
FinAbGroup cokernel(const IntMatrix& A);

std::size_t rank(const IntMatrix& A);
Integer determinant(const IntMatrix& A);
bool is_unimodular(const IntMatrix& A);

/// Z-basis of the integer kernel {x : A x = 0}.
std::vector<IntVector> kernel_basis(const IntMatrix& A);

struct StableKernel {
  /// Smallest m with rank(A^m) == rank(A^(m+1)).
  std::size_t index = 0;
  std::vector<IntVector> basis;
};

/// Basis of the eventual kernel, the union over m of ker(A^m).
StableKernel stable_kernel(const IntMatrix& A);

/// Entry (i, j) counts edges from vertex i to vertex j, in declaration order.
IntMatrix adjacency(const Graph& g);

/// The transposed adjacency matrix and identity with sink columns removed.
/// Rows (and the remaining columns) follow `order`: non-sinks first, then
/// sinks, each group in declaration order.
struct SinkReducedSystem {
  std::vector<VertexId> order;
  std::size_t non_sink_count = 0;
  IntMatrix transposed;
  IntMatrix identity;

  IntMatrix difference() const { return transposed - identity; }
};

SinkReducedSystem sink_reduced_system(const Graph& g);

}  // namespace grkit
