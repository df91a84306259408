#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace grkit {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace grkit
