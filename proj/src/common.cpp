#include "rcprod/common.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>

namespace rcprod {

namespace {

std::atomic<u64> g_factor_cap{kDefaultFactorCap};

std::vector<std::uint32_t> sieve_primes(u64 n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (u64 i = 2; i * i <= n; ++i) {
    if (composite[i]) continue;
    for (u64 j = i * i; j <= n; j += i) composite[j] = true;
  }
  for (u64 i = 2; i <= n; ++i)
    if (!composite[i]) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

}  // namespace

FactoringCapError::FactoringCapError(u64 v, u64 c)
    : Error("factoring-cap: value " + std::to_string(v) + " exceeds cap " + std::to_string(c)),
      value(v),
      cap(c) {}

UnsaturatedError::UnsaturatedError(i64 a, i64 e)
    : Error("unsaturated: generators reach order " + std::to_string(a) + " of " + std::to_string(e)),
      achieved(a),
      expected(e) {}

u64 factor_cap() { return g_factor_cap.load(); }
void set_factor_cap(u64 cap) { g_factor_cap.store(cap); }

i64 mul_checked(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

i64 add_checked(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

i64 narrow_checked(i128 v) {
  if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
    throw OverflowError("value exceeds 64-bit range");
  return static_cast<i64>(v);
}

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  if (r < 0) r += (m < 0 ? -m : m);
  return r;
}

i128 mod_floor128(i128 a, i128 m) {
  i128 r = a % m;
  if (r < 0) r += (m < 0 ? -m : m);
  return r;
}

i64 gcd64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 ext_gcd128(i128 a, i128 b, i128& x, i128& y) {
  i128 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(u64 n) {
  u64 r = isqrt(n);
  return r * r == n;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_squarefree(i64 n) {
  if (n == 0) return false;
  u64 m = static_cast<u64>(n < 0 ? -n : n);
  for (auto [p, e] : factor_u64(m, UINT64_MAX))
    if (e > 1) return false;
  return true;
}

int kronecker_prime(i64 D, u64 p) {
  if (p == 2) {
    i64 r = mod_floor(D, 8);
    if (r % 2 == 0) return 0;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  u64 a = static_cast<u64>(mod_floor(D, static_cast<i64>(p)));
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

u64 sqrt_mod_prime(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (powmod(a, (p - 1) / 2, p) != 1) throw Error("sqrt_mod_prime: not a square");
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = static_cast<u64>(s);
  u64 c = powmod(z, q, p);
  u64 t = powmod(a, q, p);
  u64 r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0;
    u64 tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

std::vector<std::pair<u64, int>> factor_u64(u64 n) { return factor_u64(n, factor_cap()); }

std::vector<std::pair<u64, int>> factor_u64(u64 n, u64 cap) {
  if (n > cap) throw FactoringCapError(n, cap);
  std::vector<std::pair<u64, int>> out;
  if (n <= 1) return out;
  const auto& table = prime_table();
  for (u64 p : table) {
    if (p * p > n) break;
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) {
    u64 last = table.back();
    if (n > last * last && !is_prime(n)) throw FactoringCapError(n, last * last);
    out.emplace_back(n, 1);
  }
  return out;
}

const std::vector<std::uint32_t>& prime_table() {
  static const std::vector<std::uint32_t> table = sieve_primes(kPrimeTableLimit);
  return table;
}

std::vector<std::uint32_t> primes_up_to(u64 n) {
  if (n <= kPrimeTableLimit) {
    const auto& t = prime_table();
    auto it = std::upper_bound(t.begin(), t.end(), static_cast<std::uint32_t>(n));
    return std::vector<std::uint32_t>(t.begin(), it);
  }
  return sieve_primes(n);
}

mpz_class to_mpz(i64 v) {
  mpz_class r;
  mpz_set_si(r.get_mpz_t(), v);
  return r;
}

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class hi, lo;
  mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(u >> 64));
  mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

i128 mpz_to_i128(const mpz_class& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 126) throw OverflowError("value exceeds 128-bit range");
  mpz_class a = abs(v);
  mpz_class lo = a & mpz_class("18446744073709551615");
  mpz_class hi = a >> 64;
  unsigned __int128 u = (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
                        mpz_get_ui(lo.get_mpz_t());
  i128 r = static_cast<i128>(u);
  return sgn(v) < 0 ? -r : r;
}

std::string i128_to_string(i128 v) { return to_mpz(v).get_str(); }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace rcprod
