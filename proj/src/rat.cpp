#include "pv/rat.hpp"

#include "pv/errors.hpp"

namespace pv {

Rat rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string str(const Rat& x) { return x.get_str(); }
std::string str(const Int& x) { return x.get_str(); }

int vp(const Int& x, long p) {
    if (sgn(x) == 0) return kInfVal;
    Int t = x;
    int v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

int vp(const Rat& x, long p) {
    if (sgn(x) == 0) return kInfVal;
    return vp(Int(x.get_num()), p) - vp(Int(x.get_den()), p);
}

Rat pow(const Rat& x, int e) {
    Rat base = x;
    if (e < 0) {
        if (sgn(x) == 0) fail(Err::Internal, "zero to negative power");
        base = 1 / x;
        e = -e;
    }
    Rat r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

long residue(const Rat& x, long p, int k) {
    if (vp(x, p) < 0) fail(Err::Internal, "residue of non-integral " + str(x));
    Int m = 1;
    for (int i = 0; i < k; ++i) m *= p;
    Int den_inv;
    Int den(x.get_den());
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    Int r = Int(x.get_num()) * den_inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return r.get_si();
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

std::vector<long> primes_up_to(long bound) {
    std::vector<long> out;
    for (long n = 2; n <= bound; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    for (long k = 2; k * k <= n; ++k) {
        if (n % k == 0) {
            out.push_back(k);
            while (n % k == 0) n /= k;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

long powmod(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

int legendre(long a, long p) {
    long t = powmod(a, (p - 1) / 2, p);
    if (t == 0) return 0;
    return t == 1 ? 1 : -1;
}

}  // namespace pv
