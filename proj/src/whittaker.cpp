#include "pv/whittaker.hpp"

#include <cmath>
#include <numbers>

#include "pv/errors.hpp"
#include "pv/localdecomp.hpp"

namespace pv {

HeckeWeight hecke_beta(int k) {
    if (k < 0) return Poly();
    return Poly::sym(SR, k) * symmetric_quotient(k + 1);
}

Cyclo psi_r(const Rat& x, long r) {
    const int v = vp(x, r);
    if (v >= 0) return Cyclo(1, 1);
    const int e = -v;
    const long order = ipow(r, e);
    if (order > 1'000'000) fail(Err::OutOfRange, "additive character conductor too large");
    const long t = residue(x * Rat(order), r, e);
    return Cyclo::zeta(static_cast<int>(order), t);
}

namespace {

Rat tau_abs(const SteinbergModel& m, int v) {
    // tau(y)|y| for v(y) = v
    Rat out = pow(Rat(m.r), -v);
    return (v % 2 != 0 && m.sign < 0) ? Rat(-out) : out;
}

Rat w_diag(const SteinbergModel& m, const Rat& y) {
    const int v = vp(y, m.r);
    return v >= 0 ? tau_abs(m, v) : Rat(0);
}

Rat w_weyl(const SteinbergModel& m, const Rat& y) {
    const int v = vp(y, m.r);
    if (v < -1) return 0;
    return -Rat(m.sign) * tau_abs(m, v + 1);
}

Cyclo scaled(const Cyclo& z, const Rat& c) {
    Cyclo out = z * Cyclo(z.order(), c);
    return out.is_rational() ? Cyclo(1, out.rational_value()) : out;
}

Cyclo add_lifted(const Cyclo& a, const Cyclo& b) {
    if (a.order() == b.order()) return a + b;
    const int big = std::max(a.order(), b.order());
    if (big % a.order() != 0 || big % b.order() != 0) fail(Err::Internal, "incompatible cyclotomic orders");
    return a.lift(big) + b.lift(big);
}

}  // namespace

Cyclo steinberg_whittaker(const SteinbergModel& m, const Mat<Rat>& g) {
    if (m.sign != 1 && m.sign != -1) fail(Err::BadParams, "Steinberg sign must be +1 or -1");
    if (!is_prime(m.r)) fail(Err::BadParams, "r must be prime");
    const Iwasawa2 f = iwasawa_gl2(g, m.r);
    const Rat c = f.k(1, 0);
    if (sgn(c) == 0 || vp(c, m.r) >= 1) return scaled(psi_r(f.x, m.r), w_diag(m, f.y1 / f.y2));
    // k = b' w n(d/c) with b' = [[-det/c, -a], [0, -c]] integral and n(d/c) in Gamma_0
    const Rat a = f.k(0, 0), d = f.k(1, 1);
    const Rat dk = det(f.k);
    Mat<Rat> bprime(2, 2, Rat(0));
    bprime(0, 0) = -dk / c;
    bprime(0, 1) = -a;
    bprime(1, 1) = -c;
    Mat<Rat> upper = rat_matrix(2, {1, 0, 0, 1});
    upper(0, 1) = f.x;
    Mat<Rat> t = Mat<Rat>::diag({f.y1, f.y2});
    upper = upper * t * bprime;
    if (vp(d / c, m.r) < 0) fail(Err::Internal, "Bruhat step left Gamma_0");
    return scaled(psi_r(upper(0, 1) / upper(1, 1), m.r), w_weyl(m, upper(0, 0) / upper(1, 1)));
}

std::vector<Mat<Rat>> steinberg_coset_reps(long r, int n, CosetSide side) {
    if (n < 0) fail(Err::OutOfRange, "n must be non-negative");
    const long count = ipow(r, 2 * n);
    const Rat rn = pow(Rat(r), n);
    std::vector<Mat<Rat>> out;
    out.reserve(count);
    for (long mm = 0; mm < count; ++mm) {
        Mat<Rat> a(2, 2, Rat(0));
        if (side == CosetSide::Upper) {
            a(0, 0) = rn;
            a(0, 1) = Rat(mm) / rn;
            a(1, 1) = 1 / rn;
        } else {
            a(0, 0) = 1 / rn;
            a(1, 0) = -Rat(mm) * Rat(r) / rn;
            a(1, 1) = rn;
        }
        out.push_back(a);
    }
    return out;
}

Rat steinberg_coset_sum(const SteinbergModel& m, int n, CosetSide side) {
    Cyclo total(1, 0);
    for (const auto& a : steinberg_coset_reps(m.r, n, side)) total = add_lifted(total, steinberg_whittaker(m, a));
    if (!total.is_rational()) fail(Err::Internal, "coset sum is not rational: " + total.str());
    return total.rational_value();
}

std::complex<double> arch_whittaker(double x, double b, int ell) {
    if (!(b > 0)) fail(Err::BadParams, "b must be positive");
    const double pi = std::numbers::pi;
    return std::polar(std::exp(-2 * pi * b * b) * std::pow(b, ell), 2 * pi * x);
}

}  // namespace pv
