#pragma once
#include <string>
#include <vector>

#include "pv/rat.hpp"

namespace pv {

// element of Q(zeta_N), coefficients reduced mod the N-th cyclotomic polynomial
class Cyclo {
public:
    Cyclo() : Cyclo(1) {}
    explicit Cyclo(int order, const Rat& c = 0);
    static Cyclo zeta(int order, long k);

    int order() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;  // requires is_rational
    Cyclo conj() const;          // zeta -> zeta^{-1}
    // re-express in Q(zeta_M) for N | M
    Cyclo lift(int m) const;
    std::string str() const;

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    friend bool operator==(const Cyclo& a, const Cyclo& b);

private:
    int n_;
    std::vector<Rat> c_;
    void reduce(std::vector<Rat> raw);
};

// cyclotomic integers of order p+1 carry the character values of Lambda_p
using CycInt = Cyclo;

const std::vector<Int>& cyclotomic_poly(int n);
int euler_phi(int n);

}  // namespace pv
