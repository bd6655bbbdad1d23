#include <cmath>

#include "doctest.h"
#include "pv/errors.hpp"
#include "pv/factors.hpp"

using namespace pv;

namespace {

Poly Y(int e) { return Poly::sym(SY, e); }
Poly term(long c, const Mono& m) { return Poly::term(Rat(c), m); }

const Constituent* find(const std::vector<Constituent>& v, const std::string& label) {
    for (const auto& c : v)
        if (c.label == label) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("local variable substitutions") {
    CHECK(q_power({3, 1}) == mono(3, 1));
    CHECK(q_power({6, 2}) == mono(6, 2));
    CHECK(q_power({6, 3}) == mono(6, 0));
    CHECK(q_power({1, 0}) == mono(1, 1));
    CHECK_THROWS_AS(q_power({1, rat(1, 3)}), PvError);
}

TEST_CASE("Euler factor cases") {
    // S3 composed with 3s+1
    auto s3 = euler_factor(3, EulerCase::SteinbergS3, {3, 1});
    CHECK(ratfunc_eq(s3.value, RatFunc(Poly(1), Poly(1) - Y(6))));
    // inert in the variable q^{-2s}
    auto in = euler_factor(7, EulerCase::Inert, {1, 0});
    Poly x2 = term(1, mono(2, 2));
    CHECK(ratfunc_eq(in.value, RatFunc(Poly(1), (Poly(1) - Poly::sym(SA, 2) * x2) * (Poly(1) - Poly::sym(SB, 2) * x2))));
    // split is symmetric under lambda -> 1/lambda
    auto sp = euler_factor(5, EulerCase::Split, {3, 1});
    CHECK(ratfunc_eq(sp.value, sp.value.subs_mono(SL, mono(0, 0, 0, 0, -1))));
    CHECK(sp.value.den().max_exp(SY) == 12);
    auto ra = euler_factor(5, EulerCase::Ramified, {3, 1});
    CHECK(ra.value.den().max_exp(SY) == 6);
    // every factor is 1 at Y = 0
    for (auto c : {EulerCase::Inert, EulerCase::Split, EulerCase::Ramified, EulerCase::SteinbergS3}) {
        auto f = euler_factor(3, c, {3, 1}).value;
        std::array<Rat, kNumSyms> at{0, rat(2), rat(3, 5), rat(-7, 2), rat(5, 3)};
        CHECK(f.eval(at) == 1);
    }
    // exact samples
    auto num = euler_factor(3, EulerCase::Inert, {3, 1}, FactorParams{Rat(2), rat(1, 2), std::nullopt});
    CHECK(num.value.num().max_exp(SA) == 0);
    CHECK_THROWS_AS(euler_factor(4, EulerCase::Inert), PvError);
}

TEST_CASE("unramified L-factor quotients") {
    Poly a2 = term(1, mono(6, 2, 2)), b2 = term(1, mono(6, 2, 0, 2));
    RatFunc inert((Poly(1) - Y(6)) * (Poly(1) + term(1, mono(6, 2))), (Poly(1) - a2) * (Poly(1) - b2));
    CHECK(ratfunc_eq(lfactor_quotient(EulerCase::Inert), inert));
    RatFunc ram(Poly(1) - Y(6), (Poly(1) - term(1, mono(3, 1, 1, 0, 1))) * (Poly(1) - term(1, mono(3, 1, 0, 1, 1))));
    CHECK(ratfunc_eq(lfactor_quotient(EulerCase::Ramified), ram));
}

TEST_CASE("field data") {
    CHECK(field_discriminant(1) == -4);
    CHECK(field_discriminant(3) == -3);
    CHECK(field_discriminant(7) == -7);
    CHECK(field_discriminant(5) == -20);
    CHECK(prime_behaviour(3, 1) == EulerCase::Inert);
    CHECK(prime_behaviour(5, 1) == EulerCase::Split);
    CHECK(prime_behaviour(2, 1) == EulerCase::Ramified);
    CHECK(prime_behaviour(2, 7) == EulerCase::Split);
    CHECK(prime_behaviour(5, 5) == EulerCase::Ramified);
    CHECK_THROWS_AS(field_discriminant(4), PvError);
}

TEST_CASE("assembly of A = B C") {
    auto fa = assemble_A(3, 5, 6);
    CHECK(fa.d == 7);
    CHECK(fa.S1 == std::vector<long>{3});
    CHECK(fa.S3 == std::vector<long>{5});
    auto* sig = find(fa.B, "sigma1(M)^2 sigma1(N/gcd(M,N))");
    REQUIRE(sig);
    CHECK(sig->value == 96);
    // L(3s+1) cancels between B and C
    CHECK(find(fa.A, "L(3s+1,sigma x rho(Lambda))") == nullptr);
    CHECK(same_constituents(fa.A, rederive_A(fa)));
    auto with_f = assemble_A(15, 21, 8);
    CHECK(with_f.S2 == std::vector<long>{3});
    CHECK(find(with_f.A, "p^(-6s-3)") != nullptr);
    CHECK(same_constituents(with_f.A, rederive_A(with_f)));
    auto* q = find(with_f.A, "Q_f");
    REQUIRE(q);
    CHECK(q->value == -2);
    // the truncated L(3s+1) carries S3 factors at primes dividing N only
    auto* l = find(with_f.B, "L(3s+1,sigma x rho(Lambda))");
    REQUIRE(l);
    int s3 = 0;
    for (const auto& e : l->truncated) s3 += e.kind == EulerCase::SteinbergS3;
    CHECK(s3 == 1);
    CHECK_THROWS_AS(assemble_A(4, 5, 6), PvError);
    CHECK_THROWS_AS(assemble_A(9, 5, 6), PvError);
    CHECK_THROWS_AS(assemble_A(3, 5, 7), PvError);
    CHECK_THROWS_AS(assemble_A(3, 5, 6, 50, 1), PvError);  // 5 splits in Q(i)
}

TEST_CASE("pole inventory") {
    for (int ell : {6, 8, 10, 12}) {
        auto inv = pole_inventory(assemble_A(3, 5, ell));
        CHECK(inv.explicit_clear);
        bool b_inf = false, gam = false;
        for (const auto& it : inv.items) {
            if (it.constituent == "6s+ell-1") {
                CHECK(it.pole);
                CHECK(it.re_s == rat(1 - ell, 6));
                b_inf = true;
            }
            if (it.constituent == "Gamma(3s+3ell/2-3/2)") {
                CHECK(it.re_s == rat(1 - ell, 2));
                gam = true;
            }
        }
        CHECK(b_inf);
        CHECK(gam);
        // the boundary zero from the pole of zeta^MN(6s+1) at s = 0
        REQUIRE(inv.findings.size() == 1);
        CHECK(inv.findings[0].constituent == "zeta^MN(6s+1)");
        CHECK_FALSE(inv.findings[0].pole);
        CHECK(inv.findings[0].re_s == 0);
    }
    auto inv = pole_inventory(assemble_A(15, 21, 6));
    CHECK(inv.explicit_clear);
    bool local = false;
    for (const auto& it : inv.items)
        if (it.constituent.rfind("(1-a_p w_p", 0) == 0) {
            CHECK(it.re_s == rat(-1, 2));
            local = true;
        }
    CHECK(local);
}

TEST_CASE("truncated Euler products are positive on the surrogate circle") {
    for (auto [M, N] : {std::pair{3L, 5L}, std::pair{15L, 21L}}) {
        auto fa = assemble_A(M, N, 6);
        auto* l = find(fa.B, "L(3s+1,sigma x rho(Lambda))");
        REQUIRE(l);
        for (double t : {1.0, 2.0 / 3.0, 1.5, 5.0 / 4.0})
            for (double lam : {1.0, -1.0})
                for (double s : {0.0, 0.25, 1.0}) {
                    double prod = 1;
                    for (const auto& e : l->truncated) {
                        const double q = static_cast<double>(e.q);
                        std::array<double, kNumSyms> at{std::pow(q, -(s + 0.5)), std::sqrt(q), t, 1 / t, lam};
                        prod *= eval_double(e.value, at);
                    }
                    CHECK(prod > 0);
                }
    }
}

TEST_CASE("pi exponents") {
    auto e = pi_exponent(6, 1);
    CHECK(e.computed == -22);
    CHECK(e.expected == -22);
    for (int ell : {6, 8, 10, 12})
        for (int k = 1; k <= ell / 2 - 2; ++k) {
            CAPTURE(ell);
            CAPTURE(k);
            auto p = pi_exponent(ell, k);
            CHECK(p.computed == p.expected);
            CHECK(p.main_exp + p.expected == 3 * (k - 1));
            const int m = ell / 2 - k;
            CHECK(4 * m + 3 * ell - 4 == p.main_exp);
            CHECK(p.value.sqrtd_exp == 0);
            CHECK(p.value.tokens.at("conj(a(Lambda))") == 1);
            CHECK(p.value.tokens.size() == 3);  // with the rational P_S3, P_MN
        }
    CHECK_THROWS_AS(pi_exponent(6, 2), PvError);
    CHECK_THROWS_AS(pi_exponent(7, 1), PvError);
}

TEST_CASE("A before the zeta and L values") {
    // dropping the zeta and L constituents leaves pi^{4+k-2 ell} sqrt(d) a(Lambda)
    for (int ell : {6, 8, 10}) {
        auto fa = assemble_A(3, 5, ell);
        std::vector<Constituent> rest;
        for (const auto& c : fa.A)
            if (c.kind != ConstKind::PartialZeta && c.kind != ConstKind::PartialL) rest.push_back(c);
        for (int k = 1; k <= ell / 2 - 2; ++k) {
            auto v = period_at(rest, rat(ell - 1 - 2 * k, 6));
            CHECK(v.pi_exp == 4 + k - 2 * ell);
            CHECK(v.sqrtd_exp == 1);
        }
    }
}

TEST_CASE("period tokens") {
    PeriodToken a;
    a.pi_exp = 3;
    a.tokens["x"] = 1;
    PeriodToken b = a.inverse();
    PeriodToken one = a * b;
    CHECK(one.pi_exp == 0);
    CHECK(one.tokens.empty());
    CHECK(a.pow(2).pi_exp == 6);
    PeriodToken c = a;
    c.coeff = rat(5, 7);
    CHECK(a.similar(c));
    // Gamma at half-integers carries sqrt(pi)
    Constituent g;
    g.kind = ConstKind::Gamma;
    g.a = 1;
    g.b = rat(1, 2);
    auto v = period_at({g}, Rat(2));  // Gamma(5/2) = 3/4 sqrt(pi)
    CHECK(v.coeff == rat(3, 4));
    CHECK(v.pi_exp == rat(1, 2));
    v = period_at({g}, Rat(-1));  // Gamma(-1/2) = -2 sqrt(pi)
    CHECK(v.coeff == -2);
}
