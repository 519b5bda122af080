#include "circesc/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "circesc/numeric_util.hpp"

namespace circesc {

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

ArithmeticTables sieve_tables(std::size_t limit) {
  if (limit < 1) throw std::domain_error("sieve_tables: limit must be >= 1");
  ArithmeticTables t;
  t.limit = limit;
  try {
    t.phi.assign(limit + 1, 0);
    t.mu.assign(limit + 1, 0);
  } catch (const std::bad_alloc&) {
    throw std::runtime_error("sieve_tables: limit exceeds available memory");
  }
  t.phi[1] = 1;
  t.mu[1] = 1;
  std::vector<std::uint32_t> primes;
  for (std::size_t i = 2; i <= limit; ++i) {
    if (t.phi[i] == 0) {
      primes.push_back(static_cast<std::uint32_t>(i));
      t.phi[i] = i - 1;
      t.mu[i] = -1;
    }
    for (std::uint32_t p : primes) {
      const std::size_t ip = i * p;
      if (ip > limit) break;
      if (i % p == 0) {
        t.phi[ip] = t.phi[i] * p;
        t.mu[ip] = 0;
        break;
      }
      t.phi[ip] = t.phi[i] * (p - 1);
      t.mu[ip] = static_cast<std::int8_t>(-t.mu[i]);
    }
  }
  return t;
}

std::shared_ptr<const ArithmeticTables> shared_tables(std::size_t limit) {
  static std::mutex mtx;
  static std::shared_ptr<const ArithmeticTables> cache;
  std::lock_guard<std::mutex> lock(mtx);
  if (!cache || cache->limit < limit) {
    // Grow with headroom so delta sweeps do not re-sieve at every step.
    const std::size_t grown = std::max(limit + limit / 4, std::size_t{1024});
    cache = std::make_shared<const ArithmeticTables>(sieve_tables(grown));
  }
  return cache;
}

std::vector<Fraction> farey_sequence(long long max_denominator) {
  if (max_denominator < 2)
    throw std::domain_error("farey_sequence: max_denominator must be >= 2");
  std::vector<Fraction> out;
  // Standard next-term recurrence from the neighbor identity; starts at 0/1,
  // 1/max_denominator and stops before 1/1.
  long long a = 0, b = 1, c = 1, d = max_denominator;
  while (c < d) {
    out.push_back({c, d});
    const long long k = (max_denominator + b) / d;
    const long long c2 = k * c - a;
    const long long d2 = k * d - b;
    a = c;
    b = d;
    c = c2;
    d = d2;
  }
  return out;
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

std::vector<long long> distinct_prime_factors(long long n) {
  std::vector<long long> out;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

int DirichletCharacter::root_exponent(long long a) const {
  long long r = a % modulus_;
  if (r < 0) r += modulus_;
  return exponents_[static_cast<std::size_t>(r)];
}

std::complex<double> DirichletCharacter::value(long long a) const {
  const int e = root_exponent(a);
  if (e < 0) return {0.0, 0.0};
  // cardinal directions come out exact
  if (e == 0) return {1.0, 0.0};
  if (2 * e == order_) return {-1.0, 0.0};
  if (4 * e == order_) return {0.0, 1.0};
  if (4 * e == 3 * order_) return {0.0, -1.0};
  const double ang = kTwoPi * static_cast<double>(e) / order_;
  return {std::cos(ang), std::sin(ang)};
}

namespace {

long long pow_mod(long long base, long long exp, long long mod) {
  long long r = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) r = (r * base) % mod;
    base = (base * base) % mod;
    exp >>= 1;
  }
  return r;
}

// Smallest primitive root mod p^e (p odd prime). A primitive root g of p
// works for p^e once adjusted so that g^(p-1) != 1 mod p^2.
long long primitive_root_prime_power(long long p, int e) {
  const long long group = (p - 1);
  auto is_proot_mod_p = [&](long long g) {
    for (long long f : distinct_prime_factors(group))
      if (pow_mod(g, group / f, p) == 1) return false;
    return true;
  };
  long long g = 2;
  while (!is_proot_mod_p(g)) ++g;
  if (e == 1) return g;
  const long long p2 = p * p;
  if (pow_mod(g, p - 1, p2) == 1) g += p;
  return g;
}

struct CyclicFactor {
  long long generator;  // unit mod q
  long long order;
};

// Cyclic decomposition of (Z/qZ)* via CRT over prime powers. For 2^e with
// e >= 3 the factor splits as <-1> x <5>.
std::vector<CyclicFactor> unit_group_decomposition(long long q) {
  std::vector<CyclicFactor> factors;
  if (q <= 2) return factors;
  // factor q into prime powers
  struct PP {
    long long p;
    int e;
    long long pe;
  };
  std::vector<PP> pps;
  long long m = q;
  for (long long d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      int e = 0;
      long long pe = 1;
      while (m % d == 0) {
        m /= d;
        ++e;
        pe *= d;
      }
      pps.push_back({d, e, pe});
    }
  }
  if (m > 1) pps.push_back({m, 1, m});

  // CRT lift: generator of the local factor, 1 at all other prime powers.
  auto crt_lift = [&](long long g_local, long long pe) {
    const long long rest = q / pe;
    // x = g_local (mod pe), x = 1 (mod rest)
    long long x = 1 % q;
    for (long long cand = g_local % pe; cand < q; cand += pe) {
      if (rest == 1 || cand % rest == 1) {
        x = cand;
        break;
      }
    }
    return x;
  };

  for (const auto& pp : pps) {
    if (pp.p == 2) {
      if (pp.e == 1) continue;  // trivial factor
      if (pp.e == 2) {
        factors.push_back({crt_lift(3, 4), 2});
      } else {
        factors.push_back({crt_lift(pp.pe - 1, pp.pe), 2});  // -1
        factors.push_back({crt_lift(5, pp.pe), pp.pe / 4});  // 5 generates C_{2^{e-2}}
      }
    } else {
      const long long g = primitive_root_prime_power(pp.p, pp.e);
      const long long ord = (pp.pe / pp.p) * (pp.p - 1);  // phi(p^e)
      factors.push_back({crt_lift(g, pp.pe), ord});
    }
  }
  return factors;
}

// Mixed-radix odometer over the factor orders (last digit fastest). Returns
// false once every tuple has been visited.
bool advance_tuple(std::vector<long long>& idx, const std::vector<CyclicFactor>& factors) {
  std::size_t i = idx.size();
  while (i > 0) {
    --i;
    if (++idx[i] < factors[i].order) return true;
    idx[i] = 0;
  }
  return false;
}

}  // namespace

CharacterTable character_table(int q) {
  if (q < 1) throw std::domain_error("character_table: q must be >= 1");
  CharacterTable table;
  table.modulus = q;

  const auto factors = unit_group_decomposition(q);
  long long order = 1;
  for (const auto& f : factors) order = std::lcm(order, f.order);

  // exponent vector of every unit, found by enumerating the whole group
  const std::size_t uq = static_cast<std::size_t>(q);
  std::vector<std::vector<long long>> expvec(uq);
  std::vector<bool> seen(uq, false);
  {
    std::vector<long long> idx(factors.size(), 0);
    do {
      long long v = 1 % q;
      for (std::size_t i = 0; i < factors.size(); ++i)
        v = (v * pow_mod(factors[i].generator, idx[i], q)) % q;
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        expvec[static_cast<std::size_t>(v)] = idx;
      }
    } while (advance_tuple(idx, factors));
  }

  // one character per exponent tuple, lexicographic, trivial (all zero) first
  std::vector<long long> k(factors.size(), 0);
  do {
    DirichletCharacter chi;
    chi.modulus_ = q;
    chi.order_ = static_cast<int>(order);
    chi.exponents_.assign(uq, -1);
    bool trivial = true;
    for (long long ki : k)
      if (ki != 0) trivial = false;
    chi.trivial_ = trivial;
    for (std::size_t a = 0; a < uq; ++a) {
      if (!seen[a]) continue;
      long long e = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        // chi(g_i) = exp(2 pi i k_i / d_i); exponents rescaled to `order`
        e = (e + (k[i] * expvec[a][i]) % order * (order / factors[i].order)) % order;
      }
      chi.exponents_[a] = static_cast<int>(e);
    }
    chi.even_ = chi.root_exponent(q == 1 ? 0 : q - 1) == 0;
    table.characters.push_back(std::move(chi));
  } while (advance_tuple(k, factors));
  return table;
}

}  // namespace circesc
