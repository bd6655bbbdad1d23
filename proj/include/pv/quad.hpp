#pragma once
#include "pv/rat.hpp"

namespace pv {

// a + b*sqrt(-d)
struct QuadElem {
    Rat a, b;
    long d = 1;

    QuadElem() = default;
    QuadElem(Rat a_, Rat b_, long d_) : a(std::move(a_)), b(std::move(b_)), d(d_) {}
    static QuadElem from(const Rat& a, long d) { return {a, 0, d}; }
    static QuadElem sqrt_neg(long d) { return {0, 1, d}; }

    bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
    bool is_rational() const { return sgn(b) == 0; }
    Rat norm() const { return a * a + d * b * b; }
    QuadElem conj() const { return {a, -b, d}; }
    QuadElem inv() const;
    std::string str() const;
};

QuadElem operator+(const QuadElem& x, const QuadElem& y);
QuadElem operator-(const QuadElem& x, const QuadElem& y);
QuadElem operator-(const QuadElem& x);
QuadElem operator*(const QuadElem& x, const QuadElem& y);
QuadElem operator/(const QuadElem& x, const QuadElem& y);
bool operator==(const QuadElem& x, const QuadElem& y);

}  // namespace pv
