#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace circesc {

// Sieved Euler totient and Moebius values for 1 <= n <= limit.
struct ArithmeticTables {
  std::size_t limit = 0;
  std::vector<std::uint64_t> phi;  // phi[n]; index 0 unused
  std::vector<std::int8_t> mu;     // mu[n] in {-1, 0, 1}

  std::uint64_t totient(std::size_t n) const { return phi[n]; }
  int moebius(std::size_t n) const { return mu[n]; }
};

// Linear sieve, exact for all n <= limit.
ArithmeticTables sieve_tables(std::size_t limit);

// Process-wide cache: returns tables with at least the requested limit.
// Tables are immutable once built; safe to share across threads.
std::shared_ptr<const ArithmeticTables> shared_tables(std::size_t limit);

struct Fraction {
  long long num = 0;
  long long den = 1;
};

// All reduced fractions m/n in (0,1) with n <= max_denominator, ascending.
std::vector<Fraction> farey_sequence(long long max_denominator);

// One Dirichlet character mod q. Values are exact roots of unity stored as
// integer exponents k out of `order` (the exponent of (Z/qZ)*): chi(a) =
// exp(2*pi*i*k/order), and k = -1 marks chi(a) = 0 (gcd(a, q) > 1).
// Built by character_table; treat the fields as read-only.
struct DirichletCharacter {
  int modulus_ = 1;
  int order_ = 1;
  bool trivial_ = true;
  bool even_ = true;
  std::vector<int> exponents_;  // indexed by a mod q

  int modulus() const { return modulus_; }
  int order() const { return order_; }
  bool is_trivial() const { return trivial_; }
  // chi(-1) = +1 (even) or -1 (odd).
  bool is_even() const { return even_; }

  // Exponent of chi(a) as a root of unity, or -1 when chi(a) = 0.
  int root_exponent(long long a) const;
  std::complex<double> value(long long a) const;
};

// The full dual group of (Z/qZ)*: exactly phi(q) characters, trivial first,
// then lexicographic in the exponent vector over the cyclic decomposition.
struct CharacterTable {
  int modulus = 1;
  std::vector<DirichletCharacter> characters;
};

CharacterTable character_table(int q);

long long gcd_ll(long long a, long long b);

// Distinct prime factors, ascending (trial division; fine for the modest
// arguments used here).
std::vector<long long> distinct_prime_factors(long long n);

}  // namespace circesc
