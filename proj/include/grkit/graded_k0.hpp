#pragma once

// Graded Grothendieck group of a polycephaly graph as a direct sum of
// Z[x,x^-1]-modules, one per head, each with its order-unit coordinate.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "grkit/graph.hpp"
#include "grkit/integer.hpp"
#include "grkit/polycephaly.hpp"

namespace grkit {

/// Element of Z[x,x^-1]; zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly monomial(long exponent, const Integer& coefficient = 1);
  /// Sum over the multiset of x^(-length).
  static LaurentPoly from_lengths(const LengthProfile& lengths);

  const std::map<long, Integer>& terms() const noexcept { return terms_; }
  Integer coefficient(long exponent) const;
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_positive() const;
  long min_exponent() const;
  long max_exponent() const;

  LaurentPoly shifted(long k) const;  // x^k * this
  LaurentPoly operator+(const LaurentPoly& rhs) const;

  /// Terms in descending exponent order, e.g. `x + 1 + 2x^-3`.
  std::string to_string() const;

  bool operator==(const LaurentPoly&) const = default;

 private:
  void add(long exponent, const Integer& coefficient);
  std::map<long, Integer> terms_;
};

/// Coordinates in Z^l with x acting by cyclic rotation:
/// x (a_0, ..., a_(l-1)) = (a_(l-1), a_0, ..., a_(l-2)).
struct ResidueVector {
  IntVector counts;

  std::size_t modulus() const noexcept { return counts.size(); }
  /// counts[r] = number of lengths congruent to r mod l.
  static ResidueVector from_lengths(const LengthProfile& lengths, std::size_t l);
  static ResidueVector basis(std::size_t l, std::size_t r);

  ResidueVector rotated(long k) const;  // x^k * this
  bool is_positive() const;
  std::string to_string() const;

  bool operator==(const ResidueVector&) const = default;
};

/// Element of Z[1/n] with x acting by multiplication by n.
class NAdicFraction {
 public:
  NAdicFraction(std::size_t base, Rational value);
  /// Sum over the multiset of n^(-length).
  static NAdicFraction from_lengths(const LengthProfile& lengths, std::size_t base);

  std::size_t base() const noexcept { return base_; }
  const Rational& value() const noexcept { return value_; }
  /// Smallest k with value * n^k integral.
  std::size_t denominator_exponent() const;
  Integer scaled_numerator() const;  // value * n^k

  NAdicFraction scaled(long k) const;  // n^k * this
  bool is_positive() const { return value_ > 0; }
  /// `a/n^k`, `a/n` or plain `a`.
  std::string to_string() const;

  bool operator==(const NAdicFraction&) const = default;

 private:
  std::size_t base_;
  Rational value_;
};

using ComponentValue = std::variant<LaurentPoly, ResidueVector, NAdicFraction>;

HeadKind component_kind(const ComponentValue& c);
/// Cycle length for comets, base n for roses, 0 for Laurent components.
std::size_t component_parameter(const ComponentValue& c);

/// `Z[x,x^-1] unit=...`, `Z^l (comet) unit=(...)`, `Z[1/n] unit=...`.
std::string describe_component(const ComponentValue& c);

/// Elements of K0^gr: one value per component.
using ModuleElement = std::vector<ComponentValue>;

ComponentValue x_act(const ComponentValue& c, long times = 1);
ModuleElement x_act(const ModuleElement& m, long times = 1);
ModuleElement x_act_inverse(const ModuleElement& m);

struct GradedK0Module {
  /// One order-unit coordinate per head, in head order.
  ModuleElement unit;

  std::size_t size() const noexcept { return unit.size(); }
  std::string to_string() const;
};

GradedK0Module k0_graded_polycephaly(const PolycephalyDecomposition& d);

/// Normal form of the x-orbit of a unit: `representative == x^shift * unit`.
struct CanonicalForm {
  HeadKind kind = HeadKind::AcyclicSink;
  std::size_t parameter = 0;
  /// Laurent: histogram of path lengths after shifting the minimum to 0.
  /// Comet: lexicographically minimal rotation.  Rose: single entry, the
  /// smallest integer in the orbit.
  IntVector key;
  long shift = 0;

  std::strong_ordering operator<=>(const CanonicalForm& o) const {
    if (kind != o.kind) return kind <=> o.kind;
    if (parameter != o.parameter) return parameter <=> o.parameter;
    return compare_keys(key, o.key);
  }
  bool operator==(const CanonicalForm& o) const {
    return kind == o.kind && parameter == o.parameter && key == o.key;
  }

  /// Lexicographic order on keys.
  static std::strong_ordering compare_keys(const IntVector& a, const IntVector& b);
};

CanonicalForm canonical_head_form(const ComponentValue& unit);

/// Dimension of the lambda-homogeneous part of a block; nullopt means infinite.
std::optional<Integer> homogeneous_dim(const BlockDescriptor& block, long lambda);

}  // namespace grkit
