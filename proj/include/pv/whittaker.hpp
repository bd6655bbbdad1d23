#pragma once
#include <complex>

#include "pv/cyclo.hpp"
#include "pv/matrix.hpp"
#include "pv/poly.hpp"

namespace pv {

using HeckeWeight = Poly;

// R^k (alpha^{k+1} - beta^{k+1})/(alpha - beta), zero for k < 0
HeckeWeight hecke_beta(int k);

// Sp (x) tau with tau unramified quadratic, sign = tau(r); trivial central character
struct SteinbergModel {
    long r = 3;
    int sign = 1;
};

// additive character psi(x) = exp(2 pi i {x}_r) as an element of Q(zeta_{r^e})
Cyclo psi_r(const Rat& x, long r);

// the Gamma_0(r)-fixed Whittaker vector, W(1) = 1:
//   W(diag(y, 1))   = tau(y)|y|               for v(y) >= 0, else 0
//   W(diag(y, 1) w) = -sign tau(r y)|r y|     for v(y) >= -1, else 0
// a general g is reduced by iwasawa_gl2 and, off the Gamma_0 cell, by k = b w n(t)
Cyclo steinberg_whittaker(const SteinbergModel& m, const Mat<Rat>& g);

enum class CosetSide { Upper, Lower };

// upper: [[r^n, m r^-n], [0, r^-n]]; lower: [[r^-n, 0], [-m r^{1-n}, r^n]]; 0 <= m < r^{2n}
std::vector<Mat<Rat>> steinberg_coset_reps(long r, int n, CosetSide side);
// exact sum of W over the representatives; n = 0 is the single coset of 1
Rat steinberg_coset_sum(const SteinbergModel& m, int n, CosetSide side);

// e^{2 pi i x} e^{-2 pi b^2} b^ell
std::complex<double> arch_whittaker(double x, double b, int ell);

}  // namespace pv
