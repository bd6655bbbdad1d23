#pragma once
#include <array>
#include <functional>
#include <map>
#include <string>

#include "pv/rat.hpp"

namespace pv {

// Y = q^{-(s+1/2)}, R = q^{1/2}, alpha, beta, lambda
enum Sym : int { SY = 0, SR = 1, SA = 2, SB = 3, SL = 4 };
constexpr int kNumSyms = 5;
using Mono = std::array<int, kNumSyms>;

Mono mono(int y = 0, int r = 0, int a = 0, int b = 0, int l = 0);
Mono operator+(const Mono& a, const Mono& b);
Mono operator-(const Mono& a, const Mono& b);
std::string mono_str(const Mono& m);

// Laurent polynomial in the five symbols; zero coefficients never stored
class Poly {
public:
    using Terms = std::map<Mono, Rat>;

    Poly() = default;
    Poly(const Rat& c);  // NOLINT: constants convert implicitly
    Poly(long c) : Poly(Rat(c)) {}
    static Poly term(const Rat& c, const Mono& m);
    static Poly sym(Sym s, int e = 1);

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_const() const;
    Rat coeff(const Mono& m) const;
    void add_term(const Mono& m, const Rat& c);

    int min_exp(Sym s) const;
    int max_exp(Sym s) const;
    Mono min_mono() const;  // componentwise minimum
    Poly shift(const Mono& m) const;  // multiply by monomial
    Poly scale(const Rat& c) const;
    // lowest Y-degree part
    Poly y_part(int e) const;

    Rat eval(const std::array<Rat, kNumSyms>& at) const;
    Poly subs(Sym s, const Rat& v) const;
    Poly subs_mono(Sym s, const Mono& image) const;
    // lambda^2 = 1
    Poly reduce_lambda_sq() const;
    std::string str() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }

private:
    Terms t_;
};

Poly pow(const Poly& p, int e);
// exact quotient p/d in the Laurent ring, false if d does not divide p
bool exact_divide(const Poly& p, const Poly& d, Poly* quotient);
// grid evaluation with (degree + 1) points per symbol: a vanishing result is a proof
bool vanishes_on_degree_grid(const Poly& p);

class RatFunc {
public:
    RatFunc() : num_(0), den_(1) {}
    RatFunc(const Poly& num);  // NOLINT
    RatFunc(const Rat& c) : RatFunc(Poly(c)) {}  // NOLINT
    RatFunc(long c) : RatFunc(Poly(c)) {}        // NOLINT
    RatFunc(const Poly& num, const Poly& den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const;

    Rat eval(const std::array<Rat, kNumSyms>& at) const;
    RatFunc subs(Sym s, const Rat& v) const;
    RatFunc subs_mono(Sym s, const Mono& image) const;
    RatFunc reduce_lambda_sq() const;
    // power series in Y up to and including Y^order
    Poly series(int order) const;
    std::string str() const;

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);

private:
    Poly num_, den_;
    void normalize();
};

bool ratfunc_eq(const RatFunc& a, const RatFunc& b);
// first/(1 - ratio); ratio must carry a positive power of Y
RatFunc geometric_sum(const RatFunc& first, const Mono& ratio);
// (alpha^m - beta^m)/(alpha - beta)
Poly symmetric_quotient(int m);

}  // namespace pv
