#include <random>

#include "doctest.h"
#include "pv/groupkit.hpp"

using namespace pv;

namespace {

const LocalCtx kC3 = LocalCtx::make(Place::Inert, 3, 1);

Mat<LocalElem> loc(const Mat<Rat>& m, const LocalCtx& c = kC3) { return to_local(m, c); }
Mat<LocalElem> loc(const Mat<QuadElem>& m, const LocalCtx& c = kC3) { return to_local(m, c); }

Mat<Rat> unram_C(long q, int n) {
    Rat t = pow(Rat(q), n);
    Mat<Rat> c = Mat<Rat>::identity(6, Rat(0));
    c(2, 2) = 1 / t;
    c(3, 2) = 1 / t - 1;
    c(5, 0) = 1 - t;
    c(5, 5) = t;
    return c;
}

Mat<Rat> unram_P(long q, int n) {
    Rat t = pow(Rat(q), n);
    Mat<Rat> p = Mat<Rat>::identity(6, Rat(0));
    p(0, 0) = t;
    p(0, 5) = 1;
    p(2, 3) = 1 / t;
    p(3, 3) = 1 / t;
    return p;
}

Mat<Rat> unram_K(long q, int n) {
    Rat t = pow(Rat(q), n);
    Mat<Rat> k = Mat<Rat>::identity(6, Rat(0));
    k(0, 5) = -1;
    k(2, 3) = -1;
    k(3, 2) = 1 - t;
    k(3, 3) = t;
    k(5, 0) = 1 - t;
    k(5, 5) = t;
    return k;
}

}  // namespace

TEST_CASE("similitude of the fixed matrices") {
    CHECK(similitude(Mat<Rat>::identity(4, Rat(0)), Form::Symplectic) == Rat(1));
    CHECK(similitude(const_Q(), Form::Symplectic) == Rat(1));
    CHECK(similitude(const_Q(), Form::Hermitian) == Rat(1));
    CHECK(det(const_Q()) != 0);
    for (long d : {1L, 2L, 3L, 7L}) {
        auto mu = similitude(const_Theta(d), Form::Hermitian);
        REQUIRE(mu.has_value());
        CHECK(*mu == QuadElem::from(1, d));
        CHECK(similitude(const_Omega(d), Form::Hermitian) == QuadElem::from(1, d));
    }
    for (int i = 1; i <= 5; ++i) {
        CAPTURE(i);
        CHECK(similitude(const_s(i), Form::Symplectic) == Rat(1));
    }
    CHECK(similitude(const_w(), Form::Symplectic) == Rat(1));
    CHECK_FALSE(similitude(rat_matrix(4, {1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}), Form::Symplectic).has_value());
    // Theta has a non-rational entry, so it is unitary but not symplectic
    CHECK_FALSE(similitude(const_Theta(1), Form::Symplectic).has_value());
    CHECK(theta_alpha(3) == QuadElem(rat(1, 2), rat(1, 2), 3));
    CHECK(theta_alpha(1) == QuadElem(0, 1, 1));
}

TEST_CASE("fixed matrices are integral with unit similitude") {
    for (long p : {3L, 7L}) {
        auto c = LocalCtx::make(Place::Inert, p, 1);
        CHECK(subgroup_member(loc(const_Q(), c), SubgroupTag::K_p_H));
        CHECK(subgroup_member(loc(const_Omega(1), c), SubgroupTag::K_p_H));
        CHECK(subgroup_member(loc(const_Theta(1), c), SubgroupTag::K_p_G));
        for (int i = 1; i <= 5; ++i) CHECK(subgroup_member(loc(const_s(i), c), SubgroupTag::K_p_G));
    }
}

TEST_CASE("iota reproduces the matrix C of the unramified computation") {
    for (int n = 0; n <= 4; ++n) {
        Mat<Rat> g = const_Q() * embed_iota(Mat<Rat>::identity(4, Rat(0)), const_A(3, n)) * inverse(const_Q());
        CHECK(g == unram_C(3, n));
        CHECK(unram_P(3, n) * unram_K(3, n) == unram_C(3, n));
        CHECK(subgroup_member(loc(unram_P(3, n)), SubgroupTag::P_Siegel_H));
        CHECK(subgroup_member(loc(unram_K(3, n) * const_Q()), SubgroupTag::K_p_H));
    }
}

TEST_CASE("subgroup_member examples") {
    CHECK(subgroup_member(loc(unram_K(3, 1) * const_Q()), SubgroupTag::K_p_H));
    Mat<LocalElem> two(1, 1, LocalElem::base(kC3, 2));
    CHECK(subgroup_member(two, SubgroupTag::Gamma0_L_units));
    Mat<LocalElem> root(1, 1, LocalElem(kC3, 0, 1));
    CHECK_FALSE(subgroup_member(root, SubgroupTag::Gamma0_L_units));
    Mat<LocalElem> three(1, 1, LocalElem::base(kC3, 3));
    CHECK_FALSE(subgroup_member(three, SubgroupTag::Gamma0_L_units));
    CHECK_FALSE(subgroup_member(loc(unram_C(3, 1)), SubgroupTag::K_p_H));
    CHECK(subgroup_member(loc(const_A(3, 0)), SubgroupTag::Gamma0));
    CHECK_FALSE(subgroup_member(loc(const_w()), SubgroupTag::Gamma0));
    CHECK(subgroup_member(loc(u_mat(Rat(1))), SubgroupTag::Gamma0));
    CHECK_FALSE(subgroup_member(loc(u_mat(Rat(1))), SubgroupTag::Gamma_upper0));
    CHECK(subgroup_member(loc(const_s(1)), SubgroupTag::K_p_G));
    CHECK_FALSE(subgroup_member(loc(const_s(1)), SubgroupTag::Iprime_p));
    CHECK(subgroup_member(loc(Mat<Rat>::identity(4, Rat(0))), SubgroupTag::Iwahori_p));
    CHECK_FALSE(subgroup_member(loc(const_Theta(1)), SubgroupTag::Iwahori_p));
    CHECK_THROWS_AS(subgroup_member(loc(const_w()), SubgroupTag::K_p_H), PvError);
    // I(2n) needs A lower triangular exactly
    Mat<Rat> b = Mat<Rat>::identity(4, Rat(0));
    b(1, 0) = 5;
    b(2, 3) = -5;
    CHECK(subgroup_member(loc(b), SubgroupTag::Borel_I2n));
    CHECK_FALSE(subgroup_member(loc(b.transpose()), SubgroupTag::Borel_I2n));
}

TEST_CASE("embed_iota basics") {
    Mat<Rat> i4 = Mat<Rat>::identity(4, Rat(0)), i2 = Mat<Rat>::identity(2, Rat(0));
    CHECK(embed_iota(i4, i2) == Mat<Rat>::identity(6, Rat(0)));
    Mat<Rat> twice = i2;
    twice(1, 1) = 2;
    CHECK_THROWS_AS(embed_iota(i4, twice), PvError);
}

TEST_CASE("iota is a similitude-preserving homomorphism") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> mus(1, 4);
    for (int t = 0; t < 200; ++t) {
        Rat mu1 = mus(rng) == 1 ? Rat(1) : Rat(mus(rng) + 3), mu2 = Rat(5);
        if (mu1 == 6) mu1 = 2;
        auto g1 = sample_subgroup(SubgroupTag::K_p_G, 3, 1, rng, mu1, 4);
        auto g2 = sample_subgroup(SubgroupTag::Gamma0, 3, 1, rng, mu1, 4);
        auto h1 = sample_subgroup(SubgroupTag::K_p_G, 3, 1, rng, mu2, 4);
        auto h2 = sample_subgroup(SubgroupTag::Gamma0, 3, 1, rng, mu2, 4);
        auto e = embed_iota(g1, g2);
        CHECK(similitude(e, Form::Hermitian) == QuadElem::from(mu1, 1));
        CHECK(embed_iota(g1, g2) * embed_iota(h1, h2) == embed_iota(g1 * h1, g2 * h2));
    }
}

TEST_CASE("klingen_levi") {
    auto [m1, m2] = klingen_levi(QuadElem::from(1, 1), to_quad(Mat<Rat>::identity(2, Rat(0)), 1));
    CHECK(m1 == Mat<QuadElem>::identity(4, QuadElem::from(0, 1)));
    CHECK(m2 == Mat<QuadElem>::identity(4, QuadElem::from(0, 1)));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        Rat mu = 1 + t % 5;
        if (mu == 3) mu = 7;
        auto b = sample_subgroup(SubgroupTag::Gamma0, 3, 1, rng, mu, 5);
        auto [a1, a2] = klingen_levi(QuadElem(1 + t % 3, 2, 1), b);
        CHECK(similitude(a2, Form::Hermitian) == QuadElem::from(mu, 1));
        CHECK(similitude(a1, Form::Hermitian) == QuadElem::from(1, 1));
    }
    Mat<QuadElem> bad = Mat<QuadElem>::identity(2, QuadElem::from(0, 1));
    bad(0, 0) = QuadElem(0, 1, 1);
    CHECK_THROWS_AS(klingen_levi(QuadElem::from(1, 1), bad), PvError);
}

TEST_CASE("key parabolic fact") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> u(-6, 6);
    const long d = 1;
    auto c = LocalCtx::make(Place::Inert, 3, d);
    Mat<QuadElem> Q = to_quad(const_Q(), d), Qi = to_quad(inverse(const_Q()), d);
    for (int t = 0; t < 200; ++t) {
        QuadElem a;
        do a = QuadElem(u(rng), u(rng), d);
        while (a.is_zero());
        Rat mu = rat(1 + t % 4, 1 + t % 3);
        // b in GU(1,1)(Q): integral sample times a rational unipotent and torus element
        Mat<QuadElem> b = sample_subgroup(SubgroupTag::Gamma0, 3, d, rng, 1, 3);
        b = b * u_mat(QuadElem(rat(u(rng), 7), 0, d)) * l_tilde(QuadElem(rat(u(rng) + 13, 2), 1, d));
        Mat<QuadElem> sim = Mat<QuadElem>::identity(2, QuadElem::from(0, d));
        sim(1, 1) = QuadElem::from(mu, d);
        b = b * sim;
        Mat<QuadElem> n = klingen_unipotent(QuadElem(u(rng), u(rng), d), QuadElem(rat(u(rng), 5), u(rng), d),
                                            QuadElem::from(u(rng), d));
        auto [m1, m2] = klingen_levi(a, b);
        Mat<QuadElem> g1 = m1 * m2 * n;
        CHECK(subgroup_member(to_local(g1, c), SubgroupTag::P_Klingen));
        Mat<QuadElem> h = Q * embed_iota(g1, b) * Qi;
        CHECK(subgroup_member(to_local(h, c), SubgroupTag::P_Siegel_H));
    }
}

TEST_CASE("compact compatibility of iota") {
    std::mt19937_64 rng(99);
    for (long p : {3L, 7L}) {
        auto c = LocalCtx::make(Place::Inert, p, 1);
        for (int t = 0; t < 200; ++t) {
            Rat mu = t % 3 == 0 ? Rat(1) : Rat(2);
            auto k1 = sample_subgroup(SubgroupTag::U_p_G, p, 1, rng, mu);
            auto k2 = sample_subgroup(SubgroupTag::Gamma0, p, 1, rng, mu);
            REQUIRE(subgroup_member(to_local(k1, c), SubgroupTag::U_p_G));
            CHECK(subgroup_member(to_local(embed_iota(k1, k2), c), SubgroupTag::U_p_H));
            auto j1 = sample_subgroup(SubgroupTag::Iprime_p, p, 1, rng, mu);
            auto j2 = sample_subgroup(SubgroupTag::Gamma0prime_F, p, 1, rng, mu);
            REQUIRE(subgroup_member(to_local(j1, c), SubgroupTag::Iprime_p));
            CHECK(subgroup_member(to_local(embed_iota(j1, j2), c), SubgroupTag::Iprime_p_H));
        }
    }
}

TEST_CASE("subgroup closure on samples") {
    std::mt19937_64 rng(4);
    auto c = LocalCtx::make(Place::Inert, 3, 1);
    for (auto tag : {SubgroupTag::U_p_H, SubgroupTag::Iprime_p_H, SubgroupTag::U_p_G, SubgroupTag::Iprime_p,
                     SubgroupTag::Iwahori_p, SubgroupTag::Gamma0prime_F}) {
        for (int t = 0; t < 30; ++t) {
            auto a = sample_subgroup(tag, 3, 1, rng), b = sample_subgroup(tag, 3, 1, rng);
            CHECK(subgroup_member(to_local(a * b, c), tag));
            CHECK(subgroup_member(to_local(inverse(a), c), tag));
        }
    }
    // parabolic closure
    for (int t = 0; t < 50; ++t) {
        auto a = sample_subgroup(SubgroupTag::Iprime_p_H, 3, 1, rng);
        Mat<QuadElem> pa = a, pb = sample_subgroup(SubgroupTag::Iprime_p_H, 3, 1, rng);
        for (int i = 3; i < 6; ++i)
            for (int j = 0; j < 3; ++j) {
                pa(i, j) = QuadElem::from(0, 1);
                pb(i, j) = QuadElem::from(0, 1);
            }
        bool ina = subgroup_member(to_local(pa, c), SubgroupTag::P_Siegel_H);
        bool inb = subgroup_member(to_local(pb, c), SubgroupTag::P_Siegel_H);
        if (ina && inb) CHECK(subgroup_member(to_local(pa * pb, c), SubgroupTag::P_Siegel_H));
    }
}
