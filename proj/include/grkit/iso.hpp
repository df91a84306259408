#pragma once

// Graded isomorphism decisions for polycephaly graphs and for shifted matrix
// algebras and free modules over the Leavitt algebra L(1, n).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "grkit/graded_k0.hpp"
#include "grkit/integer.hpp"

namespace grkit {

enum class Verdict { Iso, NotIso, Unknown };

std::string to_string(Verdict v);

/// Head `left` of the first module corresponds to head `right` of the second
/// with unit_right = x^shift * unit_left.
struct HeadMatch {
  HeadKind kind = HeadKind::AcyclicSink;
  std::size_t parameter = 0;
  std::size_t left = 0;
  std::size_t right = 0;
  long shift = 0;
};

struct IsoVerdict {
  Verdict verdict = Verdict::Unknown;
  /// Iso from decide_graded_iso: one match per head.
  std::vector<HeadMatch> matching;
  /// Iso from decide_matrix_leavitt_iso: n^j * sum n^-lambda = sum n^-gamma.
  std::optional<long> power_witness;
  /// Explanation for NotIso and Unknown verdicts.
  std::string reason;
};

IsoVerdict decide_graded_iso(const GradedK0Module& a, const GradedK0Module& b);

struct ShiftVector {
  std::size_t base = 2;
  std::vector<long> shifts;
};

/// Parses a comma separated shift list such as `0,1,1`.
std::vector<long> parse_shift_list(const std::string& text);

IsoVerdict decide_matrix_leavitt_iso(const ShiftVector& a, const ShiftVector& b);
IsoVerdict decide_free_module_iso(const ShiftVector& a, const ShiftVector& b);

struct Factorization {
  Integer t;  // coprime to n
  Integer d;  // every prime factor divides n
};

/// k = t * d with gcd(t, n) = 1 and d built from primes dividing n.
Factorization abrams_factorization(const Integer& k, std::size_t n);

bool is_prime(std::size_t n);

/// Exponent j with r = n^j, if any.
std::optional<long> power_of(const Rational& r, std::size_t n);

}  // namespace grkit
