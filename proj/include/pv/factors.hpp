#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pv/poly.hpp"

namespace pv {

enum class EulerCase { Inert, Split, Ramified, SteinbergS3 };
const char* euler_case_name(EulerCase c);

// s -> a s + b
struct LocalArg {
    int a = 1;
    Rat b = 0;
};
// q^{-(a s + b)} = Y^a R^{a - 2b}; 2b must be an integer
Mono q_power(const LocalArg& arg);

// exact samples replacing the symbols alpha, beta, lambda
struct FactorParams {
    std::optional<Rat> alpha, beta, lambda;
};

struct EulerFactor {
    long q = 0;
    EulerCase kind = EulerCase::Inert;
    LocalArg arg;
    RatFunc value;  // in the local variables Y, R of q
};

// L(arg, sigma_q x rho(Lambda_q)): the displayed reciprocal-polynomial factor
EulerFactor euler_factor(long q, EulerCase c, LocalArg arg = {}, const FactorParams& params = {});
// (1 - chi q^{-arg})^{-1} with chi in {-1, 0, 1}
RatFunc dirichlet_factor(int chi_q, LocalArg arg);
// L(3s+1, sigma x rho)/(L(6s+2, chi) L(6s+3, 1)) at an unramified q; S3 gives L(3s+1) alone
RatFunc lfactor_quotient(EulerCase c);

// discriminant -D of Q(sqrt(-d)), d squarefree
long field_discriminant(long d);
int kronecker(long a, long n);
// inert / split / ramified of q in Q(sqrt(-d)), ignoring the level
EulerCase prime_behaviour(long q, long d);

// float evaluation of a rational function (used by positivity checks)
double eval_double(const RatFunc& f, const std::array<double, kNumSyms>& at);

// rational coefficient times pi^e sqrt(d)^f times opaque tokens
struct PeriodToken {
    Rat coeff = 1;
    Rat pi_exp = 0;
    int sqrtd_exp = 0;
    std::map<std::string, int> tokens;

    PeriodToken& operator*=(const PeriodToken& o);
    PeriodToken inverse() const;
    PeriodToken pow(int e) const;
    // equality modulo nonzero rationals: pi exponent, sqrt(d) parity, tokens
    bool similar(const PeriodToken& o) const;
    std::string str() const;
};
PeriodToken operator*(PeriodToken a, const PeriodToken& b);

enum class ConstKind {
    Constant,      // value
    Token,         // opaque symbol
    PiPower,       // pi^{a s + b}
    BasePower,     // base^{a s + b}
    DiscPower,     // d^{a s + b}
    Gamma,         // Gamma(a s + b)
    Linear,        // a s + b
    LocalPower,    // base^{-(a s + b)}
    LocalGeometric,  // (1 - sign base^{-(a s + b)})^{-1}
    PartialZeta,   // zeta^S(a s + b)
    PartialL,      // L^S(a s + b, chi_{-D})
    EulerProduct,  // L(a s + b, sigma x rho(Lambda)) restricted to q not dividing M
};

struct Constituent {
    ConstKind kind = ConstKind::Constant;
    std::string label;
    int power = 1;  // +1 numerator, -1 denominator
    Rat a = 0, b = 0;
    Rat value = 1;
    long base = 0;
    int sign = 1;
    std::vector<long> excluded;         // primes removed from a partial product
    std::vector<EulerFactor> truncated;  // factors over primes up to the bound
};

struct FactorAssembly {
    long M = 1, N = 1, d = 1;
    int ell = 6;
    int prime_bound = 50;
    std::vector<long> S1, S2, S3;
    std::vector<Constituent> B, C, A;
};

struct PoleZero {
    std::string constituent;
    bool pole = true;        // pole of A, otherwise zero of A
    bool point = true;       // a single location, otherwise a half-plane Re(s) < bound
    Rat re_s;                // location, or the region bound
    bool declared = false;   // an infinite product covered by declaration
    bool in_right_half = false;  // meets Re(s) >= 0
    std::string note;
};

struct PoleInventory {
    std::vector<PoleZero> items;
    bool explicit_clear = true;       // no explicit constituent meets Re(s) >= 0
    std::vector<PoleZero> findings;   // declared constituents that do meet it
};

struct LevelParams {
    std::map<long, int> ap_wp;  // a_p w_p = +-1 for p | gcd(M, N); default +1
};

long sigma1(long A);
long q_constant(long A);  // prod over primes r | A of (1 - r)

// d = 0 picks the smallest squarefree d keeping every prime of MN inert
FactorAssembly assemble_A(long M, long N, int ell, int prime_bound = 50, long d = 0, const LevelParams& lp = {});
PoleInventory pole_inventory(const FactorAssembly& fa);
// A with constituents written out directly from the product of B and C, for the structural cross-check
std::vector<Constituent> rederive_A(const FactorAssembly& fa);
bool same_constituents(const std::vector<Constituent>& x, const std::vector<Constituent>& y);

// value of a product of constituents at a rational s, modulo rationals, by the period rules:
// zeta(even n) ~ pi^n, L(odd n, chi_{-d}) ~ pi^n sqrt(d), Gamma at (half-)integers
PeriodToken period_at(const std::vector<Constituent>& cs, const Rat& s);

struct PiExponent {
    Rat computed;
    int expected;   // 7k + 1 - 5 ell
    int main_exp;   // 5 ell - 4k - 4
    PeriodToken value;
};
PiExponent pi_exponent(int ell, int k);

}  // namespace pv
