#include "pv/quad.hpp"

#include "pv/errors.hpp"

namespace pv {

static void same_d(const QuadElem& x, const QuadElem& y) {
    if (x.d != y.d) fail(Err::RingMismatch, "Q(sqrt(-d)) with different d");
}

QuadElem QuadElem::inv() const {
    Rat n = norm();
    if (sgn(n) == 0) fail(Err::NotUnit, "inverse of zero");
    return {a / n, -b / n, d};
}

std::string QuadElem::str() const {
    if (sgn(b) == 0) return pv::str(a);
    std::string s = sgn(a) == 0 ? "" : pv::str(a) + (sgn(b) > 0 ? "+" : "");
    return s + pv::str(b) + "*sqrt(-" + std::to_string(d) + ")";
}

QuadElem operator+(const QuadElem& x, const QuadElem& y) {
    same_d(x, y);
    return {x.a + y.a, x.b + y.b, x.d};
}

QuadElem operator-(const QuadElem& x, const QuadElem& y) {
    same_d(x, y);
    return {x.a - y.a, x.b - y.b, x.d};
}

QuadElem operator-(const QuadElem& x) { return {-x.a, -x.b, x.d}; }

QuadElem operator*(const QuadElem& x, const QuadElem& y) {
    same_d(x, y);
    return {x.a * y.a - x.d * x.b * y.b, x.a * y.b + x.b * y.a, x.d};
}

QuadElem operator/(const QuadElem& x, const QuadElem& y) { return x * y.inv(); }

bool operator==(const QuadElem& x, const QuadElem& y) { return x.d == y.d && x.a == y.a && x.b == y.b; }

}  // namespace pv
