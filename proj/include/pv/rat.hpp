#pragma once
#include <gmpxx.h>

#include <climits>
#include <string>
#include <vector>

namespace pv {

using Int = mpz_class;
using Rat = mpq_class;

// valuation of zero
constexpr int kInfVal = INT_MAX;

Rat rat(long num, long den = 1);
std::string str(const Rat& x);
std::string str(const Int& x);

int vp(const Int& x, long p);
int vp(const Rat& x, long p);
Rat pow(const Rat& x, int e);

// residue of a p-integral rational in [0, p^k)
long residue(const Rat& x, long p, int k = 1);

bool is_prime(long n);
std::vector<long> primes_up_to(long bound);
std::vector<long> prime_factors(long n);
int legendre(long a, long p);
long powmod(long b, long e, long m);
long ipow(long b, int e);

}  // namespace pv
