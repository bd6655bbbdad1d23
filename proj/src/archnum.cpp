#include "pv/archnum.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include "pv/errors.hpp"
#include "pv/groupkit.hpp"
#include "pv/whittaker.hpp"

namespace pv {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

CMat from_mat(const Mat<Cplx>& m) {
    CMat out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

double scale_of(const CMat& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

}  // namespace

CMat to_cmat(const Mat<Rat>& m) { return from_mat(to_complex(m)); }
CMat to_cmat(const Mat<QuadElem>& m) { return from_mat(to_complex(m)); }

CMat j_form_c(int n) {
    CMat j = CMat::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n).setIdentity();
    j.bottomLeftCorner(n, n) = -CMat::Identity(n, n);
    return j;
}

std::optional<double> similitude_c(const CMat& g, double tol) {
    if (g.rows() != g.cols() || g.rows() % 2 != 0) return std::nullopt;
    const int n = static_cast<int>(g.rows() / 2);
    const CMat j = j_form_c(n);
    const CMat m = g.adjoint() * j * g;
    const cplx mu = m(0, n);
    if (std::abs(mu.imag()) > tol * scale_of(m) || std::abs(mu) < tol) return std::nullopt;
    if ((m - mu.real() * j).cwiseAbs().maxCoeff() > tol * scale_of(m)) return std::nullopt;
    return mu.real();
}

CMat J_of(const CMat& g, const CMat& Z) {
    const auto n = Z.rows();
    if (g.rows() != 2 * n) fail(Err::BadParams, "size mismatch in J(g, Z)");
    return g.bottomLeftCorner(n, n) * Z + g.bottomRightCorner(n, n);
}

CMat mobius_act(const CMat& g, const CMat& Z, double cond_bound) {
    const auto n = Z.rows();
    const CMat j = J_of(g, Z);
    Eigen::JacobiSVD<CMat> svd(j);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) == 0 || sv(0) / sv(n - 1) > cond_bound) fail(Err::NearSingular, "J(g, Z) is near singular");
    return (g.topLeftCorner(n, n) * Z + g.topRightCorner(n, n)) * j.inverse();
}

CMat zhat(const CMat& Z) { return cplx(0, 0.5) * (Z.adjoint() - Z); }

CMat iota_c(const CMat& g1, const CMat& g2) {
    if (g1.rows() != 4 || g2.rows() != 2) fail(Err::Internal, "iota takes a 4x4 and a 2x2 matrix");
    CMat h = CMat::Zero(6, 6);
    const int at[4] = {0, 1, 3, 4};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) h(at[i], at[j]) = g1(i, j);
    h(2, 2) = g2(0, 0);
    h(2, 5) = -g2(0, 1);
    h(5, 2) = -g2(1, 0);
    h(5, 5) = g2(1, 1);
    return h;
}

CMat u_c(double x) {
    CMat m = CMat::Identity(2, 2);
    m(0, 1) = x;
    return m;
}

CMat t_c(double b) {
    CMat m = CMat::Zero(2, 2);
    m(0, 0) = b;
    m(1, 1) = 1 / b;
    return m;
}

CMat A_xb(double x, double b) { return to_cmat(const_Q()) * iota_c(CMat::Identity(4, 4), u_c(x) * t_c(b)); }

bool in_compact(const CMat& k, double tol) {
    auto mu = similitude_c(k, tol);
    if (!mu || std::abs(*mu - 1) > tol) return false;
    const auto n = k.rows() / 2;
    const CMat i = kI * CMat::Identity(n, n);
    return (mobius_act(k, i) - i).cwiseAbs().maxCoeff() < tol * scale_of(k);
}

cplx rho_ell(const CMat& k, int ell) {
    if (!in_compact(k)) fail(Err::NotInCompact, "rho_ell needs an element of K_infinity");
    const auto n = k.rows() / 2;
    const CMat a = k.topLeftCorner(n, n), b = k.topRightCorner(n, n);
    const CMat plus = a + kI * b, minus = a - kI * b;
    // lambda^{2n} = det(a + ib) det(a - ib); any root works since ell is even
    const cplx lam = std::pow(plus.determinant() * minus.determinant(), 1.0 / (2.0 * static_cast<double>(n)));
    const CMat A_minus_iB = minus / lam;
    if ((A_minus_iB.adjoint() * A_minus_iB - CMat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-8)
        fail(Err::NotInCompact, "A - iB is not unitary");
    return std::pow(A_minus_iB.determinant(), -ell);
}

cplx rho_ell_alt(const CMat& k, int ell) {
    const auto n = k.rows() / 2;
    const CMat i = kI * CMat::Identity(n, n);
    return std::pow(k.determinant(), ell / 2) * std::pow(J_of(k, i).determinant(), -ell);
}

ArchIwasawa iwasawa_arch(const CMat& g, double tol) {
    auto mu = similitude_c(g, tol);
    if (!mu || *mu <= 0) fail(Err::NotInGroup, "expected a unitary similitude with mu > 0");
    const auto n = g.rows() / 2;
    ArchIwasawa f;
    f.v = *mu;
    const CMat Z = mobius_act(g, kI * CMat::Identity(n, n));
    f.zhat_g = zhat(Z);
    f.b = (Z + Z.adjoint()) / 2.0;
    // v^{-1} A conj(A)^t = zhat: Gram-Schmidt for the hermitian form is the Cholesky factor
    Eigen::LLT<CMat> llt(f.v * f.zhat_g);
    if (llt.info() != Eigen::Success) fail(Err::NearSingular, "g(i) is not in the upper half-space");
    f.A = llt.matrixL();
    CMat nb = CMat::Identity(2 * n, 2 * n);
    nb.topRightCorner(n, n) = f.b;
    CMat m = CMat::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = f.A;
    m.bottomRightCorner(n, n) = f.v * f.A.adjoint().inverse();
    f.k = (nb * m).inverse() * g;
    if (!in_compact(f.k, 1e-7)) fail(Err::Internal, "Iwasawa remainder left K_infinity");
    return f;
}

cplx upsilon_infty(const CMat& g, const ArchConfig& cfg) {
    auto mu = similitude_c(g);
    if (!mu || *mu <= 0) fail(Err::NotInGroup, "expected mu > 0");
    const auto n = g.rows() / 2;
    const CMat i = kI * CMat::Identity(n, n);
    const cplx dz = zhat(mobius_act(g, i, cfg.cond_bound)).determinant();
    if (dz.real() <= 0 || std::abs(dz.imag()) > 1e-8 * std::abs(dz)) fail(Err::NearSingular, "det of zhat not positive");
    const double e = 3 * (cfg.s + 0.5) - cfg.ell / 2.0;
    return std::pow(g.determinant(), cfg.ell / 2) * std::pow(J_of(g, i).determinant(), -cfg.ell) *
           std::pow(dz.real(), e);
}

cplx upsilon_infty_iwasawa(const CMat& g, const ArchConfig& cfg) {
    const ArchIwasawa f = iwasawa_arch(g);
    const double nd = std::norm(f.A.determinant());
    return std::pow(std::abs(f.v), -9 * (cfg.s + 0.5)) * std::pow(nd, 3 * (cfg.s + 0.5)) * rho_ell(f.k, cfg.ell);
}

cplx upsilon_Axb(double x, double b, double s, int ell) {
    const double c = b * b + 1;
    return std::pow(b, 6 * s + 3) * std::pow(b * b * b * b + 1 + 2 * b * b + x * x, -3 * (s + 0.5) + ell / 2.0) *
           std::pow(cplx(x, -c), -ell);
}

CMat random_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0, 1);
    CMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(N(rng), N(rng));
    Eigen::HouseholderQR<CMat> qr(m);
    return qr.householderQ() * CMat::Identity(n, n);
}

CMat random_compact(int n, std::mt19937_64& rng) {
    const CMat u1 = random_unitary(n, rng);
    CMat u2 = random_unitary(n, rng);
    // det(A + iB) = conj(det(A - iB))
    const cplx fix = std::conj(u1.determinant()) / u2.determinant();
    u2.col(0) *= fix;
    const CMat A = (u1 + u2) / 2.0, B = (u1 - u2) / cplx(0, 2);
    std::uniform_real_distribution<double> ph(0, 2 * kPi);
    const cplx lam = std::polar(1.0, ph(rng));
    CMat k(2 * n, 2 * n);
    k << A, B, -B, A;
    return lam * k;
}

CMat random_gu(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0, 1);
    std::uniform_real_distribution<double> V(0.5, 2.0);
    CMat b(n, n), A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            b(i, j) = cplx(N(rng), N(rng));
            A(i, j) = cplx(N(rng), N(rng));
        }
    b = ((b + b.adjoint()) / 2.0).eval();
    A += 2.0 * CMat::Identity(n, n);
    const double v = V(rng);
    CMat nb = CMat::Identity(2 * n, 2 * n);
    nb.topRightCorner(n, n) = b;
    CMat m = CMat::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = A;
    m.bottomRightCorner(n, n) = v * A.adjoint().inverse();
    return nb * m * random_compact(n, rng);
}

cplx b_infty(double s, int ell) {
    const double sign = (ell / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * std::pow(2.0, -6 * s - 1) * kPi / (6 * s + ell - 1);
}

cplx b_infty_from_factors(double s, int ell) {
    const double a = 3 * s + 1.5, l2 = ell / 2.0;
    const double sign = (ell / 2) % 2 == 0 ? 1.0 : -1.0;
    // x-integral prefactor; Gamma(a - l/2) cancels against the t-integral
    const double pre = sign * std::pow(2 * kPi, 6 * s + 3) / (2 * std::tgamma(a + l2));
    const double y_int = std::pow(2.0, -6 * s - ell - 1) * std::pow(kPi, -3 * s - l2 - 0.5) * std::tgamma(3 * s + l2 + 0.5);
    const double t_int = std::pow(2.0, -6 * s + ell - 3) * std::pow(kPi, -3 * s + l2 - 1.5);
    return pre * y_int * t_int;
}

QuadResult b_infty_quadrature(const ArchConfig& cfg) {
    if (!(6 * cfg.s + cfg.ell - 1 > 0)) fail(Err::BadParams, "need 6s + ell - 1 > 0");
    if (cfg.ell < 6 || cfg.ell % 2 != 0) fail(Err::BadParams, "ell must be even and at least 6");
    QuadResult out;
    out.target = b_infty(cfg.s, cfg.ell) * std::exp(-2 * kPi);
    const double inner_tol = cfg.quad_tol / 20;
    boost::math::quadrature::ooura_fourier_cos<double> fcos(inner_tol);
    boost::math::quadrature::ooura_fourier_sin<double> fsin(inner_tol);
    std::map<double, cplx> memo;
    double inner_abs_err = 0, inner_peak = 0;
    // y-integrand: (1/2) b^{-4} int_R Upsilon(x, b) W(u(x) t(b)) dx with b = sqrt(y)
    auto inner = [&](double y) -> cplx {
        if (y <= 0) return 0;
        auto it = memo.find(y);
        if (it != memo.end()) return it->second;
        const double b = std::sqrt(y);
        // W(u(x) t(b)) = e^{2 pi i x} W(t(b))
        const cplx wt = arch_whittaker(0, b, cfg.ell);
        auto h = [&](double x) { return upsilon_Axb(x, b, cfg.s, cfg.ell) * wt; };
        const double w = 2 * kPi;
        double e_abs = 0;
        auto part = [&](auto& rule, auto f) {
            auto [v, e] = rule.integrate(f, w);
            if (std::isfinite(e)) e_abs += std::abs(e * v);
            return v;
        };
        const double cr = part(fcos, [&](double x) { return (h(x) + h(-x)).real(); });
        const double ci = part(fcos, [&](double x) { return (h(x) + h(-x)).imag(); });
        const double sr = part(fsin, [&](double x) { return (h(x) - h(-x)).real(); });
        const double si = part(fsin, [&](double x) { return (h(x) - h(-x)).imag(); });
        // int h e^{iwx} = int (h+h-) cos + i int (h-h-) sin
        const double scale = 0.5 / (b * b * b * b);
        cplx res = scale * (cplx(cr, ci) + kI * cplx(sr, si));
        if (!std::isfinite(res.real()) || !std::isfinite(res.imag())) {
            // underflow of W(t(b)) far out, or 0 * inf at the origin
            if (y > 1e-6 && y < 30) fail(Err::NoConvergence, "inner integral not finite at y = " + std::to_string(y));
            res = 0;
        }
        inner_abs_err = std::max(inner_abs_err, scale * e_abs);
        inner_peak = std::max(inner_peak, std::abs(res));
        memo.emplace(y, res);
        ++out.inner_calls;
        return res;
    };
    boost::math::quadrature::exp_sinh<double> outer(static_cast<size_t>(cfg.max_depth / 2));
    double err_re = 0, err_im = 0;
    const double re = outer.integrate([&](double y) { return inner(y).real(); }, cfg.quad_tol / 20, &err_re);
    const double im = outer.integrate([&](double y) { return inner(y).imag(); }, cfg.quad_tol / 20, &err_im);
    out.value = cplx(re, im);
    out.error_estimate = std::hypot(err_re, err_im);
    if (inner_peak > 0) out.error_estimate += inner_abs_err / inner_peak * std::abs(out.value);
    out.rel_err = std::abs(out.value - out.target) / std::abs(out.target);
    if (out.error_estimate > cfg.quad_tol * std::abs(out.value))
        fail(Err::NoConvergence, "quadrature error estimate " + std::to_string(out.error_estimate) + " above tolerance for " +
                                     std::to_string(std::abs(out.value)));
    return out;
}

GammaCheck inner_gamma_identity(double s, int ell, double t) {
    const double a = 3 * s + (ell - 1) / 2.0;
    auto f = [&](double y) { return std::pow(y, a) * std::exp(-4 * kPi * y * (1 + t)); };
    double err = 0;
    GammaCheck g;
    g.numeric = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, 0.0, std::numeric_limits<double>::infinity(), 20, 1e-13, &err);
    g.closed = std::pow(2.0, -6 * s - ell - 1) * std::pow(kPi, -3 * s - ell / 2.0 - 0.5) *
               std::tgamma(3 * s + ell / 2.0 + 0.5) * std::pow(1 + t, -3 * s - (ell + 1) / 2.0);
    return g;
}

}  // namespace pv
