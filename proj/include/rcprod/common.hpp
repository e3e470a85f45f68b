#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace rcprod {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class FactoringCapError : public Error {
 public:
  FactoringCapError(u64 value, u64 cap);
  u64 value;
  u64 cap;
};

/// Principality could not be decided within the search budget.
class UndecidedError : public Error {
 public:
  using Error::Error;
};

class UnsaturatedError : public Error {
 public:
  UnsaturatedError(i64 achieved, i64 expected);
  i64 achieved;
  i64 expected;
};

class NotCoprimeError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

inline constexpr u64 kDefaultFactorCap = 1000000000000ULL;

/// Global factoring cap on ideal norms (default 10^12).
u64 factor_cap();
void set_factor_cap(u64 cap);

i64 mul_checked(i64 a, i64 b);
i64 add_checked(i64 a, i64 b);
i64 narrow_checked(i128 v);

i64 floor_div(i64 a, i64 b);
i64 mod_floor(i64 a, i64 m);
i128 mod_floor128(i128 a, i128 m);
i64 gcd64(i64 a, i64 b);
i128 gcd128(i128 a, i128 b);
/// Returns g = gcd(a, b) >= 0 and sets x, y with a*x + b*y = g.
i128 ext_gcd128(i128 a, i128 b, i128& x, i128& y);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 isqrt(u64 n);
bool is_square(u64 n);
bool is_prime(u64 n);
bool is_squarefree(i64 n);

/// Kronecker symbol (D | p) for a prime p.
int kronecker_prime(i64 D, u64 p);
/// Square root of a modulo an odd prime p; requires a to be a square.
u64 sqrt_mod_prime(u64 a, u64 p);

/// Prime factorization with ascending primes; throws FactoringCapError above factor_cap().
std::vector<std::pair<u64, int>> factor_u64(u64 n);
std::vector<std::pair<u64, int>> factor_u64(u64 n, u64 cap);

/// Primes up to 10^7 from a table built once on first use.
inline constexpr u64 kPrimeTableLimit = 10000000ULL;
const std::vector<std::uint32_t>& prime_table();
/// All primes <= n (uses the table when n is within its limit).
std::vector<std::uint32_t> primes_up_to(u64 n);

mpz_class to_mpz(i64 v);
mpz_class to_mpz(i128 v);
i128 mpz_to_i128(const mpz_class& v);
std::string i128_to_string(i128 v);

/// Number in fixed 12 significant digits, used for every float in reports.
std::string format_double(double v);

}  // namespace rcprod
