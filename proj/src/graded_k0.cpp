#include "grkit/graded_k0.hpp"

#include <stdexcept>

namespace grkit {

namespace {

std::size_t mod(long a, std::size_t l) {
  const long m = static_cast<long>(l);
  return static_cast<std::size_t>(((a % m) + m) % m);
}

Integer power(std::size_t base, std::size_t k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, k);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

LaurentPoly LaurentPoly::monomial(long exponent, const Integer& coefficient) {
  LaurentPoly p;
  p.add(exponent, coefficient);
  return p;
}

LaurentPoly LaurentPoly::from_lengths(const LengthProfile& lengths) {
  LaurentPoly p;
  for (std::size_t l = 0; l < lengths.counts().size(); ++l) p.add(-static_cast<long>(l), lengths.counts()[l]);
  return p;
}

void LaurentPoly::add(long exponent, const Integer& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

Integer LaurentPoly::coefficient(long exponent) const {
  const auto it = terms_.find(exponent);
  return it == terms_.end() ? Integer(0) : it->second;
}

bool LaurentPoly::is_positive() const {
  if (terms_.empty()) return false;
  for (const auto& [e, c] : terms_)
    if (c < 0) return false;
  return true;
}

long LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw std::domain_error("zero Laurent polynomial has no exponents");
  return terms_.begin()->first;
}

long LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw std::domain_error("zero Laurent polynomial has no exponents");
  return terms_.rbegin()->first;
}

LaurentPoly LaurentPoly::shifted(long k) const {
  LaurentPoly p;
  for (const auto& [e, c] : terms_) p.terms_.emplace(e + k, c);
  return p;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& rhs) const {
  LaurentPoly p = *this;
  for (const auto& [e, c] : rhs.terms_) p.add(e, c);
  return p;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Integer a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += a.get_str();
      continue;
    }
    if (a != 1) out += a.get_str();
    out += e == 1 ? "x" : "x^" + std::to_string(e);
  }
  return out;
}

// ---------------------------------------------------------------------------

ResidueVector ResidueVector::from_lengths(const LengthProfile& lengths, std::size_t l) {
  if (l == 0) throw std::invalid_argument("residue modulus must be positive");
  ResidueVector v{IntVector(l, 0)};
  for (std::size_t len = 0; len < lengths.counts().size(); ++len) v.counts[len % l] += lengths.counts()[len];
  return v;
}

ResidueVector ResidueVector::basis(std::size_t l, std::size_t r) {
  ResidueVector v{IntVector(l, 0)};
  v.counts.at(r) = 1;
  return v;
}

ResidueVector ResidueVector::rotated(long k) const {
  const std::size_t l = modulus();
  ResidueVector v{IntVector(l, 0)};
  for (std::size_t r = 0; r < l; ++r) v.counts[mod(static_cast<long>(r) + k, l)] = counts[r];
  return v;
}

bool ResidueVector::is_positive() const {
  bool nonzero = false;
  for (const auto& c : counts) {
    if (c < 0) return false;
    if (c != 0) nonzero = true;
  }
  return nonzero;
}

std::string ResidueVector::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ',';
    out += counts[i].get_str();
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

NAdicFraction::NAdicFraction(std::size_t base, Rational value) : base_(base), value_(std::move(value)) {
  if (base_ < 2) throw std::invalid_argument("n-adic base must be at least 2");
  value_.canonicalize();
  Integer q = value_.get_den();
  const Integer n(static_cast<unsigned long>(base_));
  for (Integer g = gcd(q, n); g != 1; g = gcd(q, n)) q /= g;
  if (q != 1) throw std::invalid_argument("denominator of " + value_.get_str() + " does not divide a power of " +
                                          std::to_string(base_));
}

NAdicFraction NAdicFraction::from_lengths(const LengthProfile& lengths, std::size_t base) {
  const std::size_t top = lengths.counts().size();
  Integer numerator = 0;
  for (std::size_t l = 0; l < top; ++l) numerator += lengths.counts()[l] * power(base, top - 1 - l);
  return NAdicFraction(base, Rational(numerator, top ? power(base, top - 1) : Integer(1)));
}

std::size_t NAdicFraction::denominator_exponent() const {
  const Integer& q = value_.get_den();
  std::size_t k = 0;
  Integer p = 1;
  while (!mpz_divisible_p(p.get_mpz_t(), q.get_mpz_t())) {
    p *= static_cast<unsigned long>(base_);
    ++k;
  }
  return k;
}

Integer NAdicFraction::scaled_numerator() const {
  const Rational scaled = value_ * Rational(power(base_, denominator_exponent()));
  return scaled.get_num();
}

NAdicFraction NAdicFraction::scaled(long k) const {
  const Integer p = power(base_, static_cast<std::size_t>(k < 0 ? -k : k));
  return NAdicFraction(base_, k >= 0 ? Rational(value_ * p) : Rational(value_ / p));
}

std::string NAdicFraction::to_string() const {
  const std::size_t k = denominator_exponent();
  const std::string a = scaled_numerator().get_str();
  if (k == 0) return a;
  if (k == 1) return a + "/" + std::to_string(base_);
  return a + "/" + std::to_string(base_) + "^" + std::to_string(k);
}

// ---------------------------------------------------------------------------

HeadKind component_kind(const ComponentValue& c) {
  switch (c.index()) {
    case 0: return HeadKind::AcyclicSink;
    case 1: return HeadKind::Comet;
    default: return HeadKind::Rose;
  }
}

std::size_t component_parameter(const ComponentValue& c) {
  if (const auto* r = std::get_if<ResidueVector>(&c)) return r->modulus();
  if (const auto* f = std::get_if<NAdicFraction>(&c)) return f->base();
  return 0;
}

std::string describe_component(const ComponentValue& c) {
  if (const auto* p = std::get_if<LaurentPoly>(&c)) return "Z[x,x^-1] unit=" + p->to_string();
  if (const auto* r = std::get_if<ResidueVector>(&c))
    return "Z^" + std::to_string(r->modulus()) + " (comet) unit=" + r->to_string();
  const auto& f = std::get<NAdicFraction>(c);
  return "Z[1/" + std::to_string(f.base()) + "] unit=" + f.to_string();
}

ComponentValue x_act(const ComponentValue& c, long times) {
  if (const auto* p = std::get_if<LaurentPoly>(&c)) return p->shifted(times);
  if (const auto* r = std::get_if<ResidueVector>(&c)) return r->rotated(times);
  return std::get<NAdicFraction>(c).scaled(times);
}

ModuleElement x_act(const ModuleElement& m, long times) {
  ModuleElement out;
  out.reserve(m.size());
  for (const auto& c : m) out.push_back(x_act(c, times));
  return out;
}

ModuleElement x_act_inverse(const ModuleElement& m) { return x_act(m, -1); }

std::string GradedK0Module::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < unit.size(); ++i) {
    if (i) out += '\n';
    out += describe_component(unit[i]);
  }
  return out;
}

GradedK0Module k0_graded_polycephaly(const PolycephalyDecomposition& d) {
  GradedK0Module m;
  for (const Head& h : d.heads) {
    switch (h.kind) {
      case HeadKind::AcyclicSink: m.unit.emplace_back(LaurentPoly::from_lengths(h.lengths)); break;
      case HeadKind::Comet: m.unit.emplace_back(ResidueVector::from_lengths(h.lengths, h.cycle_length)); break;
      case HeadKind::Rose: m.unit.emplace_back(NAdicFraction::from_lengths(h.lengths, h.petals)); break;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

std::strong_ordering CanonicalForm::compare_keys(const IntVector& a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.size() <=> b.size();
}

CanonicalForm canonical_head_form(const ComponentValue& unit) {
  CanonicalForm f;
  f.kind = component_kind(unit);
  f.parameter = component_parameter(unit);

  if (const auto* p = std::get_if<LaurentPoly>(&unit)) {
    if (p->is_zero()) throw std::domain_error("canonical form of the zero element");
    f.shift = -p->max_exponent();
    const LaurentPoly rep = p->shifted(f.shift);
    f.key.assign(static_cast<std::size_t>(-rep.min_exponent()) + 1, 0);
    for (const auto& [e, c] : rep.terms()) f.key[static_cast<std::size_t>(-e)] = c;
    return f;
  }

  if (const auto* r = std::get_if<ResidueVector>(&unit)) {
    f.key = r->counts;
    for (std::size_t s = 1; s < r->modulus(); ++s) {
      IntVector candidate = r->rotated(static_cast<long>(s)).counts;
      if (CanonicalForm::compare_keys(candidate, f.key) < 0) {
        f.key = std::move(candidate);
        f.shift = static_cast<long>(s);
      }
    }
    return f;
  }

  const auto& frac = std::get<NAdicFraction>(unit);
  if (!frac.is_positive()) throw std::domain_error("canonical form of a non-positive n-adic unit");
  const Integer n(static_cast<unsigned long>(frac.base()));
  Rational u = frac.value();
  long j = 0;
  while (u.get_den() != 1) {
    u *= n;
    ++j;
  }
  Integer a = u.get_num();
  while (mpz_divisible_p(a.get_mpz_t(), n.get_mpz_t())) {
    a /= n;
    --j;
  }
  f.key = {a};
  f.shift = j;
  return f;
}

std::optional<Integer> homogeneous_dim(const BlockDescriptor& block, long lambda) {
  const IntVector& c = block.shifts.counts();
  switch (block.ring) {
    case BlockDescriptor::Ring::Leavitt: return std::nullopt;
    case BlockDescriptor::Ring::Field: {
      // Pairs (i, j) with delta_i - delta_j = lambda.
      Integer total = 0;
      for (std::size_t d = 0; d < c.size(); ++d) {
        const long di = static_cast<long>(d) + lambda;
        if (di < 0 || di >= static_cast<long>(c.size())) continue;
        total += c[static_cast<std::size_t>(di)] * c[d];
      }
      return total;
    }
    case BlockDescriptor::Ring::Laurent: {
      const std::size_t m = block.parameter;
      const ResidueVector r = ResidueVector::from_lengths(block.shifts, m);
      Integer total = 0;
      for (std::size_t d = 0; d < m; ++d) total += r.counts[mod(static_cast<long>(d) + lambda, m)] * r.counts[d];
      return total;
    }
  }
  return std::nullopt;
}

}  // namespace grkit
