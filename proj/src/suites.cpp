#include "pv/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "pv/archnum.hpp"
#include "pv/errors.hpp"
#include "pv/finitegeom.hpp"
#include "pv/groupkit.hpp"
#include "pv/zetalocal.hpp"

namespace pv {

using ojson = nlohmann::ordered_json;

const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Finding: return "finding";
    }
    return "?";
}

int VerdictReport::count(CheckStatus s) const {
    int n = 0;
    for (const auto& c : checks) n += c.status == s;
    return n;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "unramified-inert", "unramified-split", "unramified-ramified", "steinberg-s3", "s2", "s1",
        "coset-reps",       "omega-condition",  "charsum",             "arch-upsilon", "arch-quadrature",
        "factors-poles",    "pi-exponents",     "embedding",           "constants"};
    return names;
}

namespace {

[[noreturn]] void config_error(const std::string& what) { fail(Err::ConfigError, what); }

const char* behaviour_word(EulerCase c) {
    switch (c) {
        case EulerCase::Inert: return "inert";
        case EulerCase::Split: return "split";
        case EulerCase::Ramified: return "ramified";
        default: return "?";
    }
}

void need_prime(long p, const char* what) {
    if (p < 2 || !is_prime(p)) config_error(std::string(what) + " = " + std::to_string(p) + " is not prime");
}

void need_behaviour(long q, long d, EulerCase want) {
    const EulerCase got = prime_behaviour(q, d);
    if (got != want)
        config_error("q = " + std::to_string(q) + ", d = " + std::to_string(d) + " is " + behaviour_word(got) + ", not " +
                     behaviour_word(want));
}

void need_squarefree(long d) {
    if (d < 1) config_error("d must be positive");
    for (long f = 2; f * f <= d; ++f)
        if (d % (f * f) == 0) config_error("d = " + std::to_string(d) + " is not squarefree");
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string cnum(cplx z) { return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i"; }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Ctx {
    const SuiteConfig& cfg;
    VerdictReport& rep;
    void add(std::string name, bool ok, std::string lhs = "", std::string rhs = "", std::string witness = "",
             std::string anchor = "") {
        rep.checks.push_back({std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(lhs), std::move(rhs),
                              std::move(witness), std::move(anchor)});
    }
    void finding(std::string name, std::string lhs, std::string rhs, std::string witness, std::string anchor) {
        rep.checks.push_back(
            {std::move(name), CheckStatus::Finding, std::move(lhs), std::move(rhs), std::move(witness), std::move(anchor)});
    }
    long p() const { return *cfg.prime; }
    long d() const { return *cfg.disc; }
};

std::string first_certificates(const std::vector<std::string>& certs, size_t k = 2) {
    std::string out;
    for (size_t i = 0; i < certs.size() && i < k; ++i) out += (i ? "; " : "") + certs[i];
    if (certs.size() > k) out += "; ... (" + std::to_string(certs.size()) + " total)";
    return out;
}

void suite_unramified(Ctx& c, UnramifiedCase uc) {
    UnramifiedOptions o;
    o.q = c.p();
    o.d = c.d();
    o.trunc = *c.cfg.trunc;
    const std::string anchor = std::string(unramified_case_name(uc)) + " local zeta integral";
    const auto rep = zeta_unramified(uc, o);
    c.add("closed-form", rep.equal_closed, rep.lhs.str(), rep.rhs_closed.str(),
          rep.discrepancy_factor ? "ratio " + rep.discrepancy_factor->str() : "", anchor);
    c.add("l-factor", rep.equal_lfactor, rep.lhs.str(), rep.rhs_lfactor.str(), "", anchor);
    c.add("truncated-cell-sum", rep.truncation_ok, "direct cell sum", "closed form",
          "through Y^" + std::to_string(rep.trunc), anchor);
    c.add("section-pattern", rep.pattern_ok, "sampled sections", "displayed monomials", "", "matrix factorization");
    if (uc == UnramifiedCase::Ramified) return;
    o.impose_ab_one = false;
    const auto free = zeta_unramified(uc, o);
    if (free.equal_closed && free.equal_lfactor)
        c.add("free-satake-parameters", true, free.lhs.str(), free.rhs_closed.str(), "", anchor);
    else
        c.finding("free-satake-parameters", free.lhs.str(), free.rhs_closed.str(),
                  "holds only with alpha beta = 1 imposed", anchor);
}

void suite_steinberg(Ctx& c) {
    const long r = c.p();
    const auto rep = zeta_steinberg_S3(YMember::One, r, 3);
    const std::string anchor = "Steinberg local zeta integral";
    c.add("proof-identity", rep.equal_closed, rep.lhs.str(), rep.rhs_closed.str(), "", anchor);
    c.add("truncated-cell-sum", rep.truncation_ok, "direct cell sum", "closed form", "through Y^" + std::to_string(rep.trunc),
          anchor);
    c.add("section-pattern", rep.pattern_ok, "sampled sections", "displayed monomials", "", anchor);
    if (rep.equal_lfactor)
        c.add("statement-identity", true, rep.lhs.str(), rep.rhs_lfactor.str(), "", anchor);
    else if (rep.discrepancy_factor && rep.discrepancy_against == "lfactor")
        c.finding("statement-factor", rep.lhs.str(), rep.rhs_lfactor.str(), "lhs = (" + rep.discrepancy_factor->str() + ") rhs",
                  anchor);
    else
        c.add("statement-identity", false, rep.lhs.str(), rep.rhs_lfactor.str(), "", anchor);
    for (auto k : {YMember::S1, YMember::S2}) {
        auto v = zeta_steinberg_S3(k, r, 2);
        c.add(std::string("vanishing-") + y_member_name(k), v.lhs.is_zero() && v.pattern_ok, v.lhs.str(), "0",
              first_certificates(v.certificates), anchor);
    }
}

void suite_sclass(Ctx& c, PlaceClass cls) {
    const long p = c.p();
    const Rat expected = rat(1, (p + 1) * (p + 1));
    for (auto k : y_members(cls)) {
        const auto rep = cls == PlaceClass::S2 ? zeta_S2(k, p, c.d()) : zeta_S1(k, p, c.d());
        const bool nonzero = cls == PlaceClass::S2 ? (k == YMember::One || k == YMember::S1)
                                                   : (k == YMember::One || k == YMember::Theta);
        const Rat want = nonzero ? expected : Rat(0);
        bool ok = rep.equal_closed && rep.truncation_ok && rep.pattern_ok && ratfunc_eq(rep.lhs, RatFunc(want));
        if (!nonzero) ok = ok && !rep.certificates.empty();
        c.add(std::string("value-") + y_member_name(k), ok, rep.lhs.str(), str(want),
              nonzero ? "" : first_certificates(rep.certificates), std::string(place_class_name(cls)) + " local zeta integral");
    }
}

void suite_cosets(Ctx& c) {
    const long p = c.p(), d = c.d();
    const auto ctx = LocalCtx::make(Place::Inert, p, d);
    const auto space = enumerate_flags(static_cast<int>(p), static_cast<int>(d), FlagKind::KlingenGU22);
    const FqField& f = *space.field;
    struct Case {
        const char* name;
        SubgroupTag tag;
        std::vector<YMember> reps;
    };
    for (const auto& cs : {Case{"U_p", SubgroupTag::U_p_G, {YMember::One, YMember::S1, YMember::S2}},
                           Case{"I'_p", SubgroupTag::Iprime_p, y_members(PlaceClass::S1)}}) {
        const auto part = orbit_count(space, residue_generators(f, 2, cs.tag));
        std::set<int> hit;
        std::string w;
        for (auto k : cs.reps) {
            const int o = part.orbit_of[space.index_of(space.point_of(residue_matrix(f, y_member_matrix(k, ctx))))];
            hit.insert(o);
            w += std::string(w.empty() ? "" : ", ") + y_member_name(k) + "->" + std::to_string(o);
        }
        c.add(std::string("orbit-count-") + cs.name, part.orbits.size() == cs.reps.size(), std::to_string(part.orbits.size()),
              std::to_string(cs.reps.size()), std::to_string(space.points.size()) + " isotropic lines",
              "representatives of the double cosets");
        c.add(std::string("representatives-") + cs.name, hit.size() == cs.reps.size(), std::to_string(hit.size()),
              std::to_string(cs.reps.size()), w, "representatives of the double cosets");
    }
}

void suite_omega(Ctx& c) {
    for (auto [name, cen] : {std::pair{"center-Q", Center::Q}, std::pair{"center-Omega", Center::Omega}}) {
        const bool ok = residue_support_check(c.p(), c.d(), cen);
        c.add(name, ok, ok ? "Levi determinants in F_p" : "Levi determinant outside F_p", "Levi determinants in F_p", "",
              "well-definedness of the section");
    }
}

void suite_charsum(Ctx& c) {
    const long p = c.p();
    const int n = static_cast<int>(p + 1);
    bool all = true;
    std::string w;
    for (int k = 1; k <= static_cast<int>(p); ++k)
        if (!character_sum(p, k, true).is_zero()) {
            all = false;
            w = "exponent " + std::to_string(k);
            break;
        }
    c.add("full-sum-zero", all, all ? "0" : "nonzero", "0", w, "orthogonality over the p+1 classes");
    const Cyclo s = character_sum(p, -1, false);
    c.add("nontrivial-sum-minus-identity", s == Cyclo(n, -1), s.str(), "-1", "", "Lambda_p^{-1}(l) summed over l != 1");
}

void suite_arch_upsilon(Ctx& c) {
    std::mt19937_64 rng(*c.cfg.seed);
    const double tol = *c.cfg.tol;
    const int ell = *c.cfg.weight;
    ArchConfig a;
    a.ell = ell;
    double worst = 0;
    for (int t = 0; t < *c.cfg.samples; ++t) {
        const CMat g = random_gu(3, rng);
        a.s = std::uniform_real_distribution<double>(-0.5, 1.0)(rng);
        worst = std::max(worst, rel(upsilon_infty(g, a), upsilon_infty_iwasawa(g, a)));
    }
    c.add("closed-vs-iwasawa", worst <= tol, "max rel err " + num(worst), "<= " + num(tol),
          std::to_string(*c.cfg.samples) + " random elements of GU(3,3)", "archimedean section");
    double rho_worst = 0;
    for (int t = 0; t < *c.cfg.samples; ++t) {
        const CMat k = random_compact(3, rng);
        rho_worst = std::max({rho_worst, rel(rho_ell(k, ell), rho_ell_alt(k, ell)), std::abs(std::abs(rho_ell(k, ell)) - 1)});
    }
    c.add("rho-ell", rho_worst <= tol, "max err " + num(rho_worst), "<= " + num(tol), "det(A - iB)^{-l} vs det J(k, i)",
          "compact character");
    double axb = 0;
    std::uniform_real_distribution<double> X(-5, 5), B(0.2, 3);
    for (int t = 0; t < 50; ++t) {
        const double x = X(rng), b = B(rng);
        a.s = 0.25;
        axb = std::max(axb, rel(upsilon_infty(A_xb(x, b), a), upsilon_Axb(x, b, a.s, ell)));
    }
    c.add("upsilon-at-A_x^b", axb <= tol, "max rel err " + num(axb), "<= " + num(tol), "50 random (x, b)",
          "explicit A_x^b computation");
    const cplx dj = J_of(A_xb(0, 1), cplx(0, 1) * CMat::Identity(3, 3)).determinant();
    c.add("det-J-A_0^1", std::abs(dj - cplx(0, -2)) <= tol, cnum(dj), "-2i", "", "explicit A_x^b computation");
    const CMat Q = to_cmat(const_Q());
    double eq = 0;
    for (int t = 0; t < 40; ++t) {
        const CMat g1 = random_gu(2, rng);
        CMat g2 = random_gu(1, rng);
        g2 *= std::sqrt(*similitude_c(g1) / *similitude_c(g2));
        const CMat k1 = random_compact(2, rng), k2 = random_compact(1, rng);
        const cplx base = upsilon_infty(Q * iota_c(g1, g2), a);
        eq = std::max(eq, rel(upsilon_infty(Q * iota_c(g1 * k1, g2 * k2), a), rho_ell(k1, ell) / rho_ell(k2, ell) * base));
    }
    c.add("equivariance", eq <= tol, "max rel err " + num(eq), "<= " + num(tol), "40 samples",
          "Upsilon(Q iota(g1 k1, g2 k2)) = rho(k1) rho(k2)^{-1} Upsilon(Q iota(g1, g2))");
    const auto gm = inner_gamma_identity(0.25, ell, 0.5);
    c.add("gamma-integral", std::abs(gm.numeric - gm.closed) <= 1e-10 * std::abs(gm.closed), num(gm.numeric), num(gm.closed),
          "s = 1/4, t = 1/2", "inner y-integral");
}

void suite_arch_quadrature(Ctx& c) {
    std::vector<std::pair<int, double>> pts{{6, 0.0}, {6, 0.25}, {8, 0.5}};
    if (c.cfg.weight && *c.cfg.weight != 6) pts = {{*c.cfg.weight, 0.0}, {*c.cfg.weight, 0.25}, {*c.cfg.weight, 0.5}};
    const double tol = *c.cfg.tol;
    for (auto [ell, s] : pts) {
        ArchConfig a;
        a.ell = ell;
        a.s = s;
        a.quad_tol = tol;
        const std::string tag = "l=" + std::to_string(ell) + ",s=" + num(s);
        auto t0 = std::chrono::steady_clock::now();
        const QuadResult q = b_infty_quadrature(a);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const cplx chain = b_infty_from_factors(s, ell) * std::exp(-2 * std::numbers::pi);
        const double chain_err = rel(q.value, chain);
        c.add("factor-chain " + tag, chain_err <= tol, cnum(q.value), cnum(chain),
              "rel err " + num(chain_err) + ", " + num(secs) + " s", "Gamma evaluation of the inner integrals");
        const std::string w = "rel err " + num(q.rel_err) + ", error estimate " + num(q.error_estimate);
        if (q.rel_err <= tol)
            c.add("B_infty " + tag, true, cnum(q.value), cnum(q.target), w, "archimedean zeta integral");
        else if (chain_err <= tol)
            c.finding("B_infty " + tag, cnum(q.value), cnum(q.target),
                      w + "; value has 6s+l+1 where the displayed constant has 6s+l-1", "archimedean zeta integral");
        else
            c.add("B_infty " + tag, false, cnum(q.value), cnum(q.target), w, "archimedean zeta integral");
    }
}

void suite_factors(Ctx& c) {
    const long M = c.p(), N = *c.cfg.prime2;
    const auto fa = assemble_A(M, N, *c.cfg.weight, 50, c.cfg.disc.value_or(0));
    c.rep.params.emplace_back("d_used", std::to_string(fa.d));
    const auto inv = pole_inventory(fa);
    std::string w;
    for (const auto& it : inv.items)
        if (it.in_right_half && !it.declared) w += (w.empty() ? "" : "; ") + it.constituent;
    c.add("explicit-constituents-clear", inv.explicit_clear, inv.explicit_clear ? "none in Re(s) >= 0" : w,
          "none in Re(s) >= 0", std::to_string(inv.items.size()) + " poles and zeros listed", "no zeroes or poles for Re(s) >= 0");
    for (const auto& fz : inv.findings)
        c.finding("declared " + fz.constituent, std::string(fz.pole ? "pole" : "zero") + " at Re(s) = " + str(fz.re_s),
                  "none in Re(s) >= 0", fz.note, "no zeroes or poles for Re(s) >= 0");
    c.add("rederived-constituents", same_constituents(fa.A, rederive_A(fa)), std::to_string(fa.A.size()) + " constituents",
          "A = B C", "", "definition of A(s)");
}

void suite_pi(Ctx& c) {
    std::vector<int> ells{6, 8, 10, 12};
    if (c.cfg.weight && *c.cfg.weight != 6) ells = {*c.cfg.weight};
    for (int ell : ells)
        for (int k = 1; k <= ell / 2 - 2; ++k) {
            const auto e = pi_exponent(ell, k);
            const bool ok = e.computed == e.expected && e.main_exp + e.expected == 3 * (k - 1);
            c.add("pi-exponent l=" + std::to_string(ell) + ",k=" + std::to_string(k), ok, str(e.computed),
                  std::to_string(7 * k + 1 - 5 * ell), "(5l-4k-4)+(7k+1-5l) = " + std::to_string(e.main_exp + e.expected),
                  "period bookkeeping");
        }
}

std::string count_str(int good, int total) { return std::to_string(good) + "/" + std::to_string(total); }

void suite_embedding(Ctx& c) {
    const long p = c.p(), d = c.d();
    const int n = *c.cfg.samples;
    const auto ctx = LocalCtx::make(Place::Inert, p, d);
    std::mt19937_64 rng(*c.cfg.seed);
    std::vector<long> units;  // similitudes must be p-adic units
    for (long m = 1; units.size() < 4; ++m)
        if (m % p != 0) units.push_back(m);
    int hom = 0, sim = 0;
    for (int t = 0; t < n; ++t) {
        const Rat mu1 = units[t % 4], mu2 = units[(t + 1) % 4];
        auto g1 = sample_subgroup(SubgroupTag::K_p_G, p, d, rng, mu1, 4);
        auto g2 = sample_subgroup(SubgroupTag::Gamma0, p, d, rng, mu1, 4);
        auto h1 = sample_subgroup(SubgroupTag::K_p_G, p, d, rng, mu2, 4);
        auto h2 = sample_subgroup(SubgroupTag::Gamma0, p, d, rng, mu2, 4);
        sim += similitude(embed_iota(g1, g2), Form::Hermitian) == QuadElem::from(mu1, d);
        hom += embed_iota(g1, g2) * embed_iota(h1, h2) == embed_iota(g1 * h1, g2 * h2);
    }
    c.add("iota-homomorphism", hom == n, count_str(hom, n), count_str(n, n), "", "embedding iota");
    c.add("iota-similitude", sim == n, count_str(sim, n), count_str(n, n), "", "embedding iota");

    std::uniform_int_distribution<long> u(-6, 6);
    const Mat<QuadElem> Q = to_quad(const_Q(), d), Qi = to_quad(inverse(const_Q()), d);
    int par = 0;
    for (int t = 0; t < n; ++t) {
        QuadElem a;
        do a = QuadElem(u(rng), u(rng), d);
        while (a.is_zero());
        Mat<QuadElem> b = sample_subgroup(SubgroupTag::Gamma0, p, d, rng, 1, 3);
        b = b * u_mat(QuadElem(rat(u(rng), 7), 0, d)) * l_tilde(QuadElem(rat(u(rng) + 13, 2), 1, d));
        Mat<QuadElem> s = Mat<QuadElem>::identity(2, QuadElem::from(0, d));
        s(1, 1) = QuadElem::from(rat(1 + t % 4, 1 + t % 3), d);
        b = b * s;
        const Mat<QuadElem> nn = klingen_unipotent(QuadElem(u(rng), u(rng), d), QuadElem(rat(u(rng), 5), u(rng), d),
                                                   QuadElem::from(u(rng), d));
        auto [m1, m2] = klingen_levi(a, b);
        const Mat<QuadElem> g1 = m1 * m2 * nn;
        par += subgroup_member(to_local(g1, ctx), SubgroupTag::P_Klingen) &&
               subgroup_member(to_local(Q * embed_iota(g1, b) * Qi, ctx), SubgroupTag::P_Siegel_H);
    }
    c.add("key-parabolic-fact", par == n, count_str(par, n), count_str(n, n), "Q iota(P, GU(1,1)) Q^{-1} in the Siegel parabolic",
          "key parabolic fact");

    int up = 0, ip = 0;
    for (int t = 0; t < n; ++t) {
        const Rat mu = units[t % 2];
        auto k1 = sample_subgroup(SubgroupTag::U_p_G, p, d, rng, mu);
        auto k2 = sample_subgroup(SubgroupTag::Gamma0, p, d, rng, mu);
        up += subgroup_member(to_local(embed_iota(k1, k2), ctx), SubgroupTag::U_p_H);
        auto j1 = sample_subgroup(SubgroupTag::Iprime_p, p, d, rng, mu);
        auto j2 = sample_subgroup(SubgroupTag::Gamma0prime_F, p, d, rng, mu);
        ip += subgroup_member(to_local(embed_iota(j1, j2), ctx), SubgroupTag::Iprime_p_H);
    }
    c.add("compact-U_p", up == n, count_str(up, n), count_str(n, n), "iota(U_p^G, Gamma_0) in U_p^H", "compact compatibility");
    c.add("compact-I'_p", ip == n, count_str(ip, n), count_str(n, n), "iota(I'_p, Gamma_0') in I'_p^H",
          "compact compatibility");
}

void suite_constants(Ctx& c) {
    const int n = *c.cfg.samples;
    std::mt19937_64 rng(*c.cfg.seed);
    const std::vector<long> ds{1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 19};
    const std::vector<long> ps{3, 5, 7, 11, 13, 17, 19, 23};
    std::uniform_int_distribution<size_t> pick_d(0, ds.size() - 1), pick_p(0, ps.size() - 1);
    int forms = 0, integral = 0, conj = 0;
    bool q_ok = similitude(const_Q(), Form::Symplectic) == Rat(1) && similitude(const_Q(), Form::Hermitian) == Rat(1);
    for (int i = 1; i <= 5; ++i) q_ok = q_ok && similitude(const_s(i), Form::Symplectic) == Rat(1);
    c.add("Q-and-s_i-symplectic", q_ok, q_ok ? "mu = 1" : "mu != 1", "mu = 1", "", "fixed matrices");
    for (int t = 0; t < n; ++t) {
        const long d = ds[pick_d(rng)];
        long p;
        do p = ps[pick_p(rng)];
        while (prime_behaviour(p, d) != EulerCase::Inert);
        forms += similitude(const_Theta(d), Form::Hermitian) == QuadElem::from(1, d) &&
                 similitude(const_Omega(d), Form::Hermitian) == QuadElem::from(1, d);
        const auto ctx = LocalCtx::make(Place::Inert, p, d);
        const auto th = to_local(const_Theta(d), ctx);
        bool in = subgroup_member(to_local(const_Q(), ctx), SubgroupTag::K_p_H) &&
                  subgroup_member(to_local(const_Omega(d), ctx), SubgroupTag::K_p_H) &&
                  subgroup_member(th, SubgroupTag::K_p_G);
        for (int i = 1; i <= 5; ++i) in = in && subgroup_member(to_local(const_s(i), ctx), SubgroupTag::K_p_G);
        integral += in;
        const auto k = to_local(sample_subgroup(SubgroupTag::K_p_G, p, d, rng, 1, 4), ctx);
        const int i = 1 + t % 5;
        const auto s = to_local(const_s(i), ctx);
        conj += subgroup_member(th * k * inverse(th), SubgroupTag::K_p_G) &&
                subgroup_member(s * k * inverse(s), SubgroupTag::K_p_G);
    }
    c.add("Theta-Omega-unitary", forms == n, count_str(forms, n), count_str(n, n), "random d", "fixed matrices");
    c.add("integral-unit-similitude", integral == n, count_str(integral, n), count_str(n, n), "random inert (p, d)",
          "fixed matrices");
    c.add("conjugation-in-K_p", conj == n, count_str(conj, n), count_str(n, n), "Theta k Theta^{-1}, s_i k s_i^{-1}",
          "fixed matrices");
}

}  // namespace

SuiteConfig resolve_config(const SuiteConfig& in) {
    SuiteConfig c = in;
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), c.suite) == names.end()) config_error("unknown suite '" + c.suite + "'");
    const std::string& s = c.suite;
    long p_def = 3;
    if (s == "unramified-split" || s == "unramified-ramified") p_def = 5;
    if (!c.prime) c.prime = p_def;
    if (!c.disc && s != "factors-poles") c.disc = s == "unramified-ramified" ? 5 : 1;
    if (!c.weight) c.weight = 6;
    if (!c.trunc) c.trunc = 18;
    if (!c.samples) c.samples = 200;
    if (!c.seed) c.seed = 1;
    if (!c.tol) c.tol = s == "arch-quadrature" ? 1e-6 : 1e-8;
    if (!c.prime2) c.prime2 = 5;
    need_prime(*c.prime, "prime");
    if (c.disc) need_squarefree(*c.disc);
    if (*c.weight < 6 || *c.weight % 2 != 0) config_error("weight must be even and at least 6");
    if (*c.trunc < 6) config_error("truncation must be at least 6");
    if (*c.samples < 1) config_error("samples must be positive");
    if (!(*c.tol > 0)) config_error("tolerance must be positive");
    if (s == "unramified-inert" || s == "s2" || s == "s1" || s == "coset-reps" || s == "omega-condition" || s == "embedding")
        need_behaviour(*c.prime, *c.disc, EulerCase::Inert);
    if (s == "unramified-split") need_behaviour(*c.prime, *c.disc, EulerCase::Split);
    if (s == "unramified-ramified") need_behaviour(*c.prime, *c.disc, EulerCase::Ramified);
    if (s == "factors-poles") {
        need_prime(*c.prime2, "prime2");
        if (*c.prime == *c.prime2) config_error("the two level primes must differ");
    }
    return c;
}

VerdictReport run_suite(const SuiteConfig& in) {
    const SuiteConfig cfg = resolve_config(in);
    VerdictReport rep;
    rep.suite = cfg.suite;
    auto& P = rep.params;
    P.emplace_back("prime", std::to_string(*cfg.prime));
    if (cfg.suite == "factors-poles") P.emplace_back("prime2", std::to_string(*cfg.prime2));
    if (cfg.disc) P.emplace_back("disc", std::to_string(*cfg.disc));
    P.emplace_back("weight", std::to_string(*cfg.weight));
    P.emplace_back("trunc", std::to_string(*cfg.trunc));
    P.emplace_back("samples", std::to_string(*cfg.samples));
    P.emplace_back("seed", std::to_string(*cfg.seed));
    P.emplace_back("tol", num(*cfg.tol));
    Ctx c{cfg, rep};
    const auto t0 = std::chrono::steady_clock::now();
    const std::string& s = cfg.suite;
    try {
        if (s == "unramified-inert") suite_unramified(c, UnramifiedCase::Inert);
        else if (s == "unramified-split") suite_unramified(c, UnramifiedCase::Split);
        else if (s == "unramified-ramified") suite_unramified(c, UnramifiedCase::Ramified);
        else if (s == "steinberg-s3") suite_steinberg(c);
        else if (s == "s2") suite_sclass(c, PlaceClass::S2);
        else if (s == "s1") suite_sclass(c, PlaceClass::S1);
        else if (s == "coset-reps") suite_cosets(c);
        else if (s == "omega-condition") suite_omega(c);
        else if (s == "charsum") suite_charsum(c);
        else if (s == "arch-upsilon") suite_arch_upsilon(c);
        else if (s == "arch-quadrature") suite_arch_quadrature(c);
        else if (s == "factors-poles") suite_factors(c);
        else if (s == "pi-exponents") suite_pi(c);
        else if (s == "embedding") suite_embedding(c);
        else if (s == "constants") suite_constants(c);
    } catch (const PvError& e) {
        c.add("suite-error", false, e.what(), "", "", "");
    }
    rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<VerdictReport> run_all(unsigned jobs) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    const auto& names = suite_names();
    std::vector<VerdictReport> out(names.size());
    std::vector<std::future<VerdictReport>> running;
    size_t next = 0, done = 0;
    // sliding window of at most `jobs` suites; results land in suite order
    std::vector<size_t> slot;
    while (done < names.size()) {
        while (running.size() < jobs && next < names.size()) {
            SuiteConfig c;
            c.suite = names[next];
            running.push_back(std::async(std::launch::async, [c] { return run_suite(c); }));
            slot.push_back(next++);
        }
        out[slot.front()] = running.front().get();
        running.erase(running.begin());
        slot.erase(slot.begin());
        ++done;
    }
    return out;
}

namespace {

ojson to_ojson(const VerdictReport& r, bool with_time) {
    ojson j;
    j["suite"] = r.suite;
    j["params"] = ojson::object();
    for (const auto& [k, v] : r.params) j["params"][k] = v;
    j["checks"] = ojson::array();
    for (const auto& c : r.checks)
        j["checks"].push_back({{"name", c.name},
                               {"status", check_status_name(c.status)},
                               {"lhs", c.lhs},
                               {"rhs", c.rhs},
                               {"witness", c.witness},
                               {"anchor", c.anchor}});
    j["summary"] = {{"pass", r.count(CheckStatus::Pass)},
                    {"fail", r.count(CheckStatus::Fail)},
                    {"finding", r.count(CheckStatus::Finding)}};
    if (with_time) j["wall_ms"] = r.wall_ms;
    return j;
}

}  // namespace

std::string report_json(const VerdictReport& r, bool with_time) { return to_ojson(r, with_time).dump(2); }

std::string reports_json(const std::vector<VerdictReport>& rs, bool with_time) {
    ojson j = ojson::array();
    for (const auto& r : rs) j.push_back(to_ojson(r, with_time));
    return j.dump(2);
}

VerdictReport report_from_json(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception& e) {
        fail(Err::IoError, std::string("bad report JSON: ") + e.what());
    }
    VerdictReport r;
    r.suite = j.at("suite").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) r.params.emplace_back(k, v.get<std::string>());
    for (const auto& c : j.at("checks")) {
        CheckResult x;
        x.name = c.at("name").get<std::string>();
        const std::string st = c.at("status").get<std::string>();
        if (st == "pass") x.status = CheckStatus::Pass;
        else if (st == "fail") x.status = CheckStatus::Fail;
        else if (st == "finding") x.status = CheckStatus::Finding;
        else fail(Err::IoError, "unknown status " + st);
        x.lhs = c.at("lhs").get<std::string>();
        x.rhs = c.at("rhs").get<std::string>();
        x.witness = c.at("witness").get<std::string>();
        x.anchor = c.at("anchor").get<std::string>();
        r.checks.push_back(std::move(x));
    }
    r.wall_ms = j.value("wall_ms", 0L);
    return r;
}

std::string report_text(const VerdictReport& r) {
    auto clip = [](const std::string& s, size_t n) { return s.size() <= n ? s : s.substr(0, n - 3) + "..."; };
    std::ostringstream o;
    o << "suite " << r.suite << " (";
    for (size_t i = 0; i < r.params.size(); ++i) o << (i ? ", " : "") << r.params[i].first << "=" << r.params[i].second;
    o << ")\n";
    char line[512];
    for (const auto& c : r.checks) {
        std::snprintf(line, sizeof line, "  %-8s %-34s %-30s %-30s\n", check_status_name(c.status), clip(c.name, 34).c_str(),
                      clip(c.lhs, 30).c_str(), clip(c.rhs, 30).c_str());
        std::string ln = line;
        ln.erase(ln.find_last_not_of(' ', ln.size() - 2) + 1, ln.size() - 2 - ln.find_last_not_of(' ', ln.size() - 2));
        o << ln;
        if (!c.witness.empty()) o << "           " << clip(c.witness, 110) << "\n";
    }
    o << "  pass " << r.count(CheckStatus::Pass) << ", fail " << r.count(CheckStatus::Fail) << ", finding "
      << r.count(CheckStatus::Finding) << ", " << r.wall_ms << " ms\n";
    return o.str();
}

int exit_code(const std::vector<VerdictReport>& rs) {
    for (const auto& r : rs)
        if (r.count(CheckStatus::Fail) > 0) return 1;
    return 0;
}

}  // namespace pv
