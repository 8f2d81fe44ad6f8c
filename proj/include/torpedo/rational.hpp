#pragma once

#include <gmpxx.h>

#include <string>

namespace torpedo {

using Rational = mpq_class;

inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

}  // namespace torpedo
