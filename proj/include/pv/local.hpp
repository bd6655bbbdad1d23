#pragma once
#include <utility>

#include "pv/quad.hpp"

namespace pv {

enum class Place { Inert, Split, Ramified };
const char* place_name(Place p);

// L_q = L (x) Q_q for L = Q(sqrt(-d))
struct LocalCtx {
    Place kind = Place::Inert;
    long q = 3;
    long d = 1;

    static LocalCtx make(Place kind, long q, long d);
    bool operator==(const LocalCtx& o) const { return kind == o.kind && q == o.q && d == o.d; }
};

// Inert: x + y*sqrt(-d). Ramified: x + y*pi, pi^2 = -d. Split: the pair (x, y).
struct LocalElem {
    LocalCtx ctx;
    Rat x, y;

    LocalElem() = default;
    LocalElem(const LocalCtx& c, Rat x_, Rat y_) : ctx(c), x(std::move(x_)), y(std::move(y_)) {}

    static LocalElem base(const LocalCtx& c, const Rat& t);
    static LocalElem zero(const LocalCtx& c) { return base(c, 0); }
    static LocalElem one(const LocalCtx& c) { return base(c, 1); }
    // pi for ramified, (q, 1) for split, q for inert
    static LocalElem uniformizer(const LocalCtx& c);
    // rational-coordinate embedding of Q(sqrt(-d)); split requires b = 0
    static LocalElem from_quad(const LocalCtx& c, const QuadElem& z);

    bool is_zero() const;
    bool is_base() const;  // lies in Q_q
    Rat base_value() const;
    LocalElem conj() const;
    LocalElem norm() const;
    LocalElem inv() const;
    bool is_unit() const;
    std::string str() const;
};

LocalElem operator+(const LocalElem& a, const LocalElem& b);
LocalElem operator-(const LocalElem& a, const LocalElem& b);
LocalElem operator-(const LocalElem& a);
LocalElem operator*(const LocalElem& a, const LocalElem& b);
LocalElem operator/(const LocalElem& a, const LocalElem& b);
bool operator==(const LocalElem& a, const LocalElem& b);

// scalar valuation: min over coordinates (inert), pi-units (ramified), min of components (split)
int local_val(const LocalElem& x);
// split components; for other kinds both entries equal local_val
std::pair<int, int> local_val_pair(const LocalElem& x);

}  // namespace pv
