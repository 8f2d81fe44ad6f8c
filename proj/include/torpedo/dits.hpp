#pragma once

#include <stdexcept>

namespace torpedo {

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

// Reduce into {0, ..., d-1}, also for negative a.
inline int mod(long long a, int d) {
  long long r = a % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

inline int mod_pow(long long base, long long exp, int d) {
  long long result = 1, b = mod(base, d);
  while (exp > 0) {
    if (exp & 1) result = result * b % d;
    b = b * b % d;
    exp >>= 1;
  }
  return static_cast<int>(result);
}

// Multiplicative inverse in Z_d for prime d and a != 0 (mod d).
inline int mod_inverse(int a, int d) {
  a = mod(a, d);
  if (a == 0) throw std::domain_error("mod_inverse: zero has no inverse");
  return mod_pow(a, d - 2, d);
}

// An element of the ring Z_d.
struct Dit {
  int value;
  int modulus;

  Dit(int v, int d) : value(mod(v, d)), modulus(d) {
    if (d < 2) throw std::invalid_argument("Dit: modulus must be >= 2");
  }

  Dit operator+(const Dit& o) const { return {value + o.value, check(o)}; }
  Dit operator-(const Dit& o) const { return {value - o.value, check(o)}; }
  Dit operator*(const Dit& o) const { return {value * o.value, check(o)}; }
  Dit inverse() const { return {mod_inverse(value, modulus), modulus}; }
  Dit operator-() const { return {-value, modulus}; }
  bool operator==(const Dit& o) const = default;

 private:
  int check(const Dit& o) const {
    if (o.modulus != modulus) throw std::invalid_argument("Dit: modulus mismatch");
    return modulus;
  }
};

}  // namespace torpedo
