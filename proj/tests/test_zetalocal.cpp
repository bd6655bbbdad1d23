#include <chrono>

#include "doctest.h"
#include "pv/errors.hpp"
#include "pv/zetalocal.hpp"

using namespace pv;

namespace {

Mat<Rat> m2(long a, long b, long c, long d) { return rat_matrix(2, {a, b, c, d}); }

// R only with even exponents: R^2 = q
Rat at_q(const Poly& p, long q) {
    Rat out = 0;
    for (const auto& [m, c] : p.terms()) {
        REQUIRE(m[SR] % 2 == 0);
        for (int s : {SA, SB, SL, SY}) REQUIRE(m[s] == 0);
        out += c * pow(Rat(q), m[SR] / 2);
    }
    return out;
}

Poly coeff_y(const Poly& p, int e) {
    Poly out;
    for (const auto& [m, c] : p.terms())
        if (m[SY] == e) {
            Mono n = m;
            n[SY] = 0;
            out.add_term(n, c);
        }
    return out;
}

Poly ab_numeric(const Poly& p, const Rat& a, const Rat& b) { return p.subs(SA, a).subs(SB, b); }

}  // namespace

TEST_CASE("beta series against the truncated Hecke sums") {
    const Rat a = 2, b = rat(1, 3);
    struct C {
        int a, b;
        Mono t;
    };
    for (auto c : {C{1, 0, mono(3)}, C{1, -2, mono(3)}, C{2, 0, mono(6)}, C{2, -2, mono(6)}, C{3, 1, mono(2, 0, 0, 0, 1)},
                   C{1, -5, mono(1)}}) {
        CAPTURE(c.a);
        CAPTURE(c.b);
        RatFunc f = beta_series(c.a, c.b, c.t).subs(SA, a).subs(SB, b);
        const int order = 24;
        Poly direct;
        for (int n = 0; n * c.t[SY] <= order; ++n) {
            Mono tn{};
            for (int i = 0; i < kNumSyms; ++i) tn[i] = c.t[i] * n;
            direct = direct + hecke_beta(c.a * n + c.b).subs(SA, a).subs(SB, b) * Poly::term(1, tn);
        }
        CHECK(f.series(order) == direct);
    }
    CHECK_THROWS_AS(beta_series(0, 0, mono(1)), PvError);
}

TEST_CASE("inert identity") {
    auto rep = zeta_unramified(UnramifiedCase::Inert);
    CHECK(rep.pattern_ok);
    CHECK(rep.equal_closed);
    CHECK(rep.equal_lfactor);
    CHECK_FALSE(rep.discrepancy_factor);
    CHECK(rep.truncation_ok);
    // lhs den(rhs) = num(rhs)
    CHECK((rep.lhs.num() * rep.rhs_closed.den() - rep.rhs_closed.num() * rep.lhs.den()).is_zero());

    // numeric cross-check at alpha = 2, beta = 1/2, q = 3 through Y^18
    UnramifiedOptions o;
    o.impose_ab_one = false;
    auto free = zeta_unramified(UnramifiedCase::Inert, o);
    CHECK_FALSE(free.equal_closed);  // alpha beta = 1 is needed
    REQUIRE(free.discrepancy_factor);
    Poly closed = ab_numeric(unramified_closed_form(UnramifiedCase::Inert).subs(SA, 2).subs(SB, rat(1, 2)).series(18), 2,
                             rat(1, 2));
    Poly direct;
    for (int n = 0; 6 * n <= 18; ++n)
        direct = direct + Poly::term(1, mono(6 * n)) *
                              ab_numeric(hecke_beta(2 * n) - hecke_beta(2 * n - 2), 2, rat(1, 2));
    for (int e = 0; e <= 18; ++e) {
        CAPTURE(e);
        CHECK(at_q(coeff_y(closed, e), 3) == at_q(coeff_y(direct, e), 3));
    }
    CHECK(at_q(coeff_y(closed, 6), 3) == rat(59, 4));
}

TEST_CASE("split identity") {
    auto t0 = std::chrono::steady_clock::now();
    auto rep = zeta_unramified(UnramifiedCase::Split);
    CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(10));
    CHECK(rep.pattern_ok);
    CHECK(rep.equal_lfactor);
    CHECK(rep.equal_closed);
    CHECK(rep.truncation_ok);
    // symmetric in lambda -> 1/lambda
    CHECK(ratfunc_eq(rep.lhs, rep.lhs.subs_mono(SL, mono(0, 0, 0, 0, -1))));
    UnramifiedOptions o;
    o.impose_ab_one = false;
    CHECK_FALSE(zeta_unramified(UnramifiedCase::Split, o).equal_lfactor);
}

TEST_CASE("ramified identity") {
    for (auto [q, d] : {std::pair{5L, 5L}, std::pair{3L, 3L}}) {
        UnramifiedOptions o;
        o.q = q;
        o.d = d;
        auto rep = zeta_unramified(UnramifiedCase::Ramified, o);
        CHECK(rep.pattern_ok);
        CHECK(rep.equal_lfactor);
        CHECK(rep.equal_closed);
        CHECK(rep.truncation_ok);
    }
}

TEST_CASE("residue indices") {
    for (long p : {3L, 5L}) {
        const long d = default_inert_disc(p);
        CHECK(residue_index(p, d, SubgroupTag::GUnn, SubgroupTag::Gamma0) == Rat(p + 1));
        CHECK(residue_index(p, d, SubgroupTag::GUnn, SubgroupTag::Gamma0prime_F) == Rat((p + 1) * (p + 1)));
    }
}

TEST_CASE("double coset orbit search") {
    SteinbergModel m{3, 1};
    for (int n = 1; n <= 2; ++n) {
        long cnt = 0;
        auto s = whittaker_double_coset_sum(m, const_A(3, n), false, m2(1, 0, 0, 1), &cnt);
        CHECK(cnt == ipow(3, 2 * n));
        CHECK(s == Cyclo(1, 1));
        s = whittaker_double_coset_sum(m, const_w() * const_A(3, n) * const_w(), false, m2(1, 0, 0, 1), &cnt);
        CHECK(cnt == ipow(3, 2 * n));
        CHECK(s == Cyclo(1, 1));
        // K-cells: sizes add up to the K-double coset, Whittaker sums vanish
        long c1 = 0, c2 = 0;
        CHECK(whittaker_double_coset_sum(m, const_A(3, n), true, m2(1, 0, 0, 1), &c1).is_zero());
        CHECK(whittaker_double_coset_sum(m, const_A(3, n) * const_w(), true, m2(1, 0, 0, 1), &c2).is_zero());
        CHECK(c1 + c2 == 4 * (ipow(3, 2 * n) + ipow(3, 2 * n - 1)));
    }
    long cnt = 0;
    whittaker_double_coset_sum(m, const_w(), false, m2(1, 0, 0, 1), &cnt);
    CHECK(cnt == 3);
}

TEST_CASE("Steinberg S3") {
    auto rep = zeta_steinberg_S3();
    CHECK(rep.pattern_ok);
    CHECK(rep.equal_closed);
    CHECK_FALSE(rep.equal_lfactor);
    REQUIRE(rep.discrepancy_factor);
    CHECK(rep.discrepancy_against == "lfactor");
    CHECK(ratfunc_eq(*rep.discrepancy_factor, RatFunc(Poly(1) + Poly::sym(SY, 6))));
    CHECK(rep.truncation_ok);
    CHECK(rep.lhs.series(0) == Poly(rat(1, 4)));
    int surviving = 0;
    for (const auto& z : rep.summands)
        if (z.contributes() && z.cell.n == 1) {
            ++surviving;
            CHECK((z.cell.family == "A" || z.cell.family == "w A w"));
        }
    CHECK(surviving == 2);
    for (auto k : {YMember::S1, YMember::S2}) {
        auto v = zeta_steinberg_S3(k, 3, 2);
        CAPTURE(y_member_name(k));
        CHECK(v.pattern_ok);
        CHECK(v.lhs.is_zero());
        CHECK(v.equal_closed);
    }
    CHECK_THROWS_AS(zeta_steinberg_S3(YMember::Theta), PvError);
}

TEST_CASE("S2 and S1 at p = 3") {
    auto t0 = std::chrono::steady_clock::now();
    for (auto cls : {PlaceClass::S2, PlaceClass::S1})
        for (auto k : y_members(cls)) {
            CAPTURE(place_class_name(cls));
            CAPTURE(y_member_name(k));
            auto rep = cls == PlaceClass::S2 ? zeta_S2(k) : zeta_S1(k);
            CHECK(rep.pattern_ok);
            CHECK(rep.equal_closed);
            CHECK(rep.truncation_ok);
            const bool nonzero = cls == PlaceClass::S2 ? (k == YMember::One || k == YMember::S1)
                                                       : (k == YMember::One || k == YMember::Theta);
            CHECK(rep.lhs.num() == Poly(nonzero ? rat(1, 16) : Rat(0)));
            if (!nonzero) CHECK_FALSE(rep.certificates.empty());
        }
    CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::minutes(2));
}
