#include "grkit/iso.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace grkit {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Iso: return "Iso";
    case Verdict::NotIso: return "NotIso";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

namespace {

std::string head_type(HeadKind kind, std::size_t parameter) {
  switch (kind) {
    case HeadKind::AcyclicSink: return "acyclic-sink";
    case HeadKind::Comet: return "comet(l=" + std::to_string(parameter) + ")";
    case HeadKind::Rose: return "rose(n=" + std::to_string(parameter) + ")";
  }
  return "?";
}

struct Indexed {
  CanonicalForm form;
  std::size_t index;
};

std::vector<Indexed> canonical_forms(const GradedK0Module& m) {
  std::vector<Indexed> out;
  for (std::size_t i = 0; i < m.unit.size(); ++i) out.push_back({canonical_head_form(m.unit[i]), i});
  std::stable_sort(out.begin(), out.end(), [](const Indexed& a, const Indexed& b) { return a.form < b.form; });
  return out;
}

Rational power_sum(std::size_t n, const std::vector<long>& exponents) {
  Rational s = 0;
  for (long e : exponents) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), n, static_cast<unsigned long>(e < 0 ? -e : e));
    s += e >= 0 ? Rational(p) : Rational(1, p);
  }
  s.canonicalize();
  return s;
}

}  // namespace

IsoVerdict decide_graded_iso(const GradedK0Module& a, const GradedK0Module& b) {
  IsoVerdict out;
  const auto left = canonical_forms(a);
  const auto right = canonical_forms(b);

  using Type = std::pair<HeadKind, std::size_t>;
  std::map<Type, std::vector<const Indexed*>> groups_left, groups_right;
  for (const auto& x : left) groups_left[{x.form.kind, x.form.parameter}].push_back(&x);
  for (const auto& x : right) groups_right[{x.form.kind, x.form.parameter}].push_back(&x);

  std::vector<std::string> not_iso, unknown;
  std::map<Type, bool> all_types;
  for (const auto& [t, _] : groups_left) all_types[t] = true;
  for (const auto& [t, _] : groups_right) all_types[t] = true;

  for (const auto& [type, unused] : all_types) {
    const auto& l = groups_left[type];
    const auto& r = groups_right[type];
    const std::string name = head_type(type.first, type.second);
    if (l.size() != r.size()) {
      not_iso.push_back(std::to_string(l.size()) + " vs " + std::to_string(r.size()) + " " + name + " heads");
      continue;
    }
    bool equal = true;
    for (std::size_t i = 0; i < l.size() && equal; ++i) equal = l[i]->form == r[i]->form;
    if (!equal) {
      if (type.first == HeadKind::Rose && !is_prime(type.second))
        unknown.push_back(name + " units differ by a ratio that is not a power of " + std::to_string(type.second) +
                          " and the base is composite");
      else
        not_iso.push_back(name + " heads have different unit orbits");
      continue;
    }
    for (std::size_t i = 0; i < l.size(); ++i) {
      HeadMatch m{type.first, type.second, l[i]->index, r[i]->index, l[i]->form.shift - r[i]->form.shift};
      if (type.first == HeadKind::Comet) {
        const long len = static_cast<long>(type.second);
        m.shift = ((m.shift % len) + len) % len;
      }
      out.matching.push_back(m);
    }
  }

  auto join = [](const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "; " : "") + parts[i];
    return s;
  };
  if (!not_iso.empty()) {
    out.verdict = Verdict::NotIso;
    out.reason = join(not_iso);
    out.matching.clear();
  } else if (!unknown.empty()) {
    out.verdict = Verdict::Unknown;
    out.reason = join(unknown);
    out.matching.clear();
  } else {
    out.verdict = Verdict::Iso;
    std::sort(out.matching.begin(), out.matching.end(),
              [](const HeadMatch& x, const HeadMatch& y) { return x.left < y.left; });
  }
  return out;
}

std::vector<long> parse_shift_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad shift '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("bad shift '" + item + "'");
    out.push_back(value);
  }
  if (out.empty()) throw std::invalid_argument("empty shift list");
  return out;
}

std::optional<long> power_of(const Rational& r, std::size_t n) {
  if (r <= 0) return std::nullopt;
  Integer num = r.get_num();
  Integer den = r.get_den();
  const Integer base(static_cast<unsigned long>(n));
  long j = 0;
  while (num != 1 && mpz_divisible_p(num.get_mpz_t(), base.get_mpz_t())) {
    num /= base;
    ++j;
  }
  while (den != 1 && mpz_divisible_p(den.get_mpz_t(), base.get_mpz_t())) {
    den /= base;
    --j;
  }
  if (num != 1 || den != 1) return std::nullopt;
  return j;
}

IsoVerdict decide_matrix_leavitt_iso(const ShiftVector& a, const ShiftVector& b) {
  if (a.shifts.empty() || b.shifts.empty()) throw std::invalid_argument("empty shift list");
  if (a.base < 2 || b.base < 2) throw std::invalid_argument("Leavitt base must be at least 2");
  IsoVerdict out;
  if (a.base != b.base) {
    out.verdict = Verdict::NotIso;
    out.reason = "different bases";
    return out;
  }
  const std::size_t n = a.base;
  auto negated = [](std::vector<long> v) {
    for (long& x : v) x = -x;
    return v;
  };
  const Rational ratio = power_sum(n, negated(b.shifts)) / power_sum(n, negated(a.shifts));
  if (const auto j = power_of(ratio, n)) {
    out.verdict = Verdict::Iso;
    out.power_witness = *j;
    return out;
  }
  out.verdict = is_prime(n) ? Verdict::NotIso : Verdict::Unknown;
  out.reason = "ratio " + ratio.get_str() + " is not a power of " + std::to_string(n);
  if (!is_prime(n)) out.reason += " and the base is composite";
  return out;
}

IsoVerdict decide_free_module_iso(const ShiftVector& a, const ShiftVector& b) {
  if (a.base != b.base) throw std::invalid_argument("free modules over different Leavitt algebras");
  if (a.base < 2) throw std::invalid_argument("Leavitt base must be at least 2");
  IsoVerdict out;
  const Rational sa = power_sum(a.base, a.shifts);
  const Rational sb = power_sum(b.base, b.shifts);
  if (sa == sb) {
    out.verdict = Verdict::Iso;
  } else {
    out.verdict = Verdict::NotIso;
    out.reason = sa.get_str() + " != " + sb.get_str();
  }
  return out;
}

Factorization abrams_factorization(const Integer& k, std::size_t n) {
  if (k < 1) throw std::invalid_argument("factorization needs k >= 1");
  if (n < 2) throw std::invalid_argument("factorization needs n >= 2");
  const Integer base(static_cast<unsigned long>(n));
  Factorization f{k, 1};
  for (Integer g = gcd(f.t, base); g != 1; g = gcd(f.t, base)) {
    f.t /= g;
    f.d *= g;
  }
  return f;
}

}  // namespace grkit
