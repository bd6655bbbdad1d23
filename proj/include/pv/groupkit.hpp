#pragma once
#include <optional>
#include <utility>

#include "pv/matrix.hpp"

namespace pv {

enum class Form { Symplectic, Hermitian };

template <class T>
Mat<T> J_form(int n, const T& like) {
    Mat<T> j(2 * n, 2 * n, zero_like(like));
    for (int i = 0; i < n; ++i) {
        j(i, n + i) = one_like(like);
        j(n + i, i) = zero_like(like) - one_like(like);
    }
    return j;
}

// mu with g^t J g = mu J (symplectic) or conj(g)^t J g = mu J, mu in the base (hermitian)
template <class T>
std::optional<T> similitude(const Mat<T>& g, Form f) {
    if (g.rows() != g.cols() || g.rows() % 2 != 0) return std::nullopt;
    const int n = g.rows() / 2;
    const Mat<T> j = J_form(n, g.like());
    const Mat<T> m = (f == Form::Hermitian ? g.conj_transpose() : g.transpose()) * j * g;
    T mu = m(0, n);
    if (!(m == mu * j)) return std::nullopt;
    if (f == Form::Hermitian && !(conj_of(mu) == mu)) return std::nullopt;
    if (f == Form::Symplectic && !(g.conj() == g)) return std::nullopt;
    if (is_zero_of(mu)) return std::nullopt;
    return mu;
}

template <class T>
Mat<T> embed_iota(const Mat<T>& g1, const Mat<T>& g2) {
    if (g1.rows() != 4 || g2.rows() != 2) fail(Err::Internal, "iota takes a 4x4 and a 2x2 matrix");
    auto m1 = similitude(g1, Form::Hermitian), m2 = similitude(g2, Form::Hermitian);
    if (!m1 || !m2 || !(*m1 == *m2)) fail(Err::SimilitudeMismatch, "iota needs equal similitudes");
    Mat<T> h(6, 6, zero_like(g1.like()));
    const int at[4] = {0, 1, 3, 4};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) h(at[i], at[j]) = g1(i, j);
    const T zero = zero_like(g1.like());
    h(2, 2) = g2(0, 0);
    h(2, 5) = zero - g2(0, 1);
    h(5, 2) = zero - g2(1, 0);
    h(5, 5) = g2(1, 1);
    return h;
}

// (m_1(a), m_2(b)); the lambda entry of m_2 is mu_1(b)
template <class T>
std::pair<Mat<T>, Mat<T>> klingen_levi(const T& a, const Mat<T>& b) {
    auto mu = similitude(b, Form::Hermitian);
    if (!mu) fail(Err::NotUnitary, "b is not in GU(1,1)");
    Mat<T> m1 = Mat<T>::identity(4, a);
    m1(0, 0) = a;
    m1(2, 2) = inv_of(conj_of(a));
    Mat<T> m2 = Mat<T>::identity(4, a);
    m2(1, 1) = b(0, 0);
    m2(1, 3) = b(0, 1);
    m2(3, 1) = b(1, 0);
    m2(3, 3) = b(1, 1);
    m2(2, 2) = *mu;
    return {m1, m2};
}

// element of the Klingen unipotent radical N; a must be conjugation-fixed
template <class T>
Mat<T> klingen_unipotent(const T& x, const T& y, const T& a) {
    Mat<T> n1 = Mat<T>::identity(4, x), n2 = Mat<T>::identity(4, x);
    n1(0, 1) = x;
    n1(3, 2) = zero_like(x) - conj_of(x);
    n2(0, 2) = a;
    n2(0, 3) = y;
    n2(1, 2) = conj_of(y);
    return n1 * n2;
}

template <class T>
Mat<T> siegel_m(const Mat<T>& A, const T& v) {
    const int n = A.rows();
    Mat<T> m(2 * n, 2 * n, zero_like(v));
    m.set_block(0, 0, A);
    m.set_block(n, n, v * inverse(A).conj_transpose());
    return m;
}

template <class T>
Mat<T> siegel_n(const Mat<T>& b) {
    const int n = b.rows();
    Mat<T> m = Mat<T>::identity(2 * n, b.like());
    m.set_block(0, n, b);
    return m;
}

template <class T>
Mat<T> l_tilde(const T& l) {
    return Mat<T>::diag({l, inv_of(conj_of(l))});
}

template <class T>
Mat<T> u_mat(const T& x) {
    Mat<T> m = Mat<T>::identity(2, x);
    m(0, 1) = x;
    return m;
}

// fixed matrices
Mat<Rat> const_Q();
Mat<Rat> const_s(int i);  // i = 1..5
Mat<Rat> const_w();
Mat<Rat> const_A(long q, int n);  // diag(q^n, q^-n)
Mat<Rat> const_J(int n);
// alpha = (1 + sqrt(-d))/2 if d = 3 mod 4, else sqrt(-d)
QuadElem theta_alpha(long d);
Mat<QuadElem> const_Theta(long d);
Mat<QuadElem> const_Omega(long d);
// split: image of diag(q^{m+k}, q^m) under g -> (g, g*)
Mat<LocalElem> const_A_split(const LocalCtx& c, int m, int k);
// ramified: diag(pi^n, conj(pi)^-n)
Mat<LocalElem> const_A_ramified(const LocalCtx& c, int n);

enum class SubgroupTag {
    GSp2n,
    GUnn,
    P_Siegel_H,
    P_Klingen,
    K_p_H,
    U_p_H,
    Iprime_p_H,
    K_p_G,
    U_p_G,
    Iprime_p,
    Iwahori_p,
    Gamma0,
    Gamma_upper0,
    Gamma0prime_F,
    Gamma0_L_units,
    Borel_I2n,
};
const char* tag_name(SubgroupTag t);

bool subgroup_member(const Mat<LocalElem>& g, SubgroupTag tag);

// residue-level helpers shared with finitegeom
bool divisible_by_p(const LocalElem& x);
bool residue_in_base(const LocalElem& x);
bool integral(const Mat<LocalElem>& g);

}  // namespace pv

#include <random>

namespace pv {

// size of the matrices in a compact subgroup tag (0 when not samplable)
int tag_size(SubgroupTag tag);
// random element of the tag's subgroup at the inert prime p: a product of elementary unitary generators
// (root elements, torus, Weyl swaps), each kept only if it passes subgroup_member; scaled to similitude mu
Mat<QuadElem> sample_subgroup(SubgroupTag tag, long p, long d, std::mt19937_64& rng, const Rat& mu = 1,
                              int factors = 10);

}  // namespace pv
