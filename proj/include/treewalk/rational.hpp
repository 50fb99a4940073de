#pragma once

#include <gmpxx.h>

#include <string>

namespace treewalk {

using BigInt = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const BigInt& v) { return v.get_str(); }
/// "num/den" in lowest terms; integers still carry "/1".
inline std::string to_string(const Rational& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

/// 2^k as an exact integer.
inline BigInt pow2(unsigned long k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

}  // namespace treewalk
