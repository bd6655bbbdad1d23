#pragma once
#include <complex>
#include <optional>
#include <random>

#include <Eigen/Dense>

#include "pv/matrix.hpp"

namespace pv {

using CMat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

struct ArchConfig {
    int ell = 6;
    double s = 0;
    double tol = 1e-8;        // identities
    double quad_tol = 1e-6;   // quadrature, relative
    int max_depth = 18;       // adaptive refinement limit
    double cond_bound = 1e12;
};

CMat to_cmat(const Mat<Rat>& m);
CMat to_cmat(const Mat<QuadElem>& m);
CMat j_form_c(int n);
// mu with conj(g)^t J g = mu J within tol (real mu), empty otherwise
std::optional<double> similitude_c(const CMat& g, double tol = 1e-9);

CMat J_of(const CMat& g, const CMat& Z);
CMat mobius_act(const CMat& g, const CMat& Z, double cond_bound = 1e12);
// (i/2)(conj(Z)^t - Z)
CMat zhat(const CMat& Z);

CMat iota_c(const CMat& g1, const CMat& g2);
CMat u_c(double x);
CMat t_c(double b);
// Q iota(1, u(x) t(b))
CMat A_xb(double x, double b);

bool in_compact(const CMat& k, double tol = 1e-9);
// det(A - iB)^{-ell} from k = lambda [[A, B], [-B, A]]
cplx rho_ell(const CMat& k, int ell);
// det(k)^{ell/2} det(J(k, i))^{-ell}
cplx rho_ell_alt(const CMat& k, int ell);

// g = n(b) m(A, v) k
struct ArchIwasawa {
    CMat b, A, k;
    double v = 1;
    CMat zhat_g;  // zhat(g(i)) = v^{-1} A conj(A)^t
};
ArchIwasawa iwasawa_arch(const CMat& g, double tol = 1e-9);

// det(g)^{ell/2} det(J(g, i))^{-ell} det(zhat(g(i)))^{3(s+1/2) - ell/2}
cplx upsilon_infty(const CMat& g, const ArchConfig& cfg);
// |v|^{-9(s+1/2)} |N det A|^{3(s+1/2)} rho_ell(k) from the numeric factorization
cplx upsilon_infty_iwasawa(const CMat& g, const ArchConfig& cfg);
// b^{6s+3} (b^4 + 1 + 2b^2 + x^2)^{-3(s+1/2)+ell/2} (x - i(b^2+1))^{-ell}
cplx upsilon_Axb(double x, double b, double s, int ell);

// random samples
CMat random_unitary(int n, std::mt19937_64& rng);
CMat random_compact(int n, std::mt19937_64& rng);  // K_infty of GU(n, n)
CMat random_gu(int n, std::mt19937_64& rng);       // n(b) m(A, v) k with v > 0

cplx b_infty(double s, int ell);
// the product of the Gamma and power factors from the inner x-, y- and t-integrals, evaluated directly
cplx b_infty_from_factors(double s, int ell);

struct QuadResult {
    cplx value;
    double error_estimate = 0;
    cplx target;  // B_infty(s) W(1)
    double rel_err = 0;
    long inner_calls = 0;
};
// (1/2) int_0^inf int_R Upsilon W b^{-3} after b^2 = y
QuadResult b_infty_quadrature(const ArchConfig& cfg);

struct GammaCheck {
    double numeric, closed;
};
// int_0^inf y^{3s+(ell-1)/2} e^{-4 pi y (1+t)} dy against the Gamma closed form
GammaCheck inner_gamma_identity(double s, int ell, double t);

}  // namespace pv
