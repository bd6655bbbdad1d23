#include "pv/groupkit.hpp"

namespace pv {

Mat<Rat> const_Q() {
    return rat_matrix(6, {0, 1, 0, 0, 0, 0,  //
                          1, 0, 0, 0, 0, 0,  //
                          0, 0, 0, 0, 0, -1,  //
                          0, 0, 0, 0, 1, -1,  //
                          0, 0, 0, 1, 0, 0,  //
                          0, 1, 1, 0, 0, 0});
}

Mat<Rat> const_s(int i) {
    switch (i) {
        case 1: return rat_matrix(4, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
        case 2: return rat_matrix(4, {0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 0});
        case 3: return rat_matrix(4, {0, 0, 1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, -1, 0, 0});
        case 4: return rat_matrix(4, {0, -1, 0, 0, -1, 0, 0, 0, 0, 0, 0, -1, 1, 0, -1, 0});
        case 5: return rat_matrix(4, {0, -1, 0, 0, -1, 0, 0, 0, 0, 1, 0, -1, 0, 0, -1, 0});
        default: fail(Err::OutOfRange, "s_i is defined for i = 1..5");
    }
}

Mat<Rat> const_w() { return rat_matrix(2, {0, 1, -1, 0}); }

Mat<Rat> const_A(long q, int n) {
    Rat t = pow(Rat(q), n);
    return Mat<Rat>::diag({t, 1 / t});
}

Mat<Rat> const_J(int n) { return J_form(n, Rat(0)); }

QuadElem theta_alpha(long d) {
    if (d % 4 == 3) return {rat(1, 2), rat(1, 2), d};
    return {0, 1, d};
}

Mat<QuadElem> const_Theta(long d) {
    QuadElem a = theta_alpha(d);
    Mat<QuadElem> t = Mat<QuadElem>::identity(4, a);
    t(1, 0) = a;
    t(2, 3) = -a.conj();
    return t;
}

Mat<QuadElem> const_Omega(long d) {
    Mat<QuadElem> one2 = Mat<QuadElem>::identity(2, QuadElem::from(0, d));
    return to_quad(const_Q(), d) * embed_iota(const_Theta(d), one2);
}

Mat<LocalElem> const_A_split(const LocalCtx& c, int m, int k) {
    if (c.kind != Place::Split) fail(Err::RingMismatch, "A_{m,k} lives in the split algebra");
    Rat q = c.q;
    return Mat<LocalElem>::diag({LocalElem(c, pow(q, m + k), pow(q, -m)), LocalElem(c, pow(q, m), pow(q, -m - k))});
}

Mat<LocalElem> const_A_ramified(const LocalCtx& c, int n) {
    if (c.kind != Place::Ramified) fail(Err::RingMismatch, "A_n with a uniformizer needs the ramified algebra");
    LocalElem pi = LocalElem::uniformizer(c), t = LocalElem::one(c);
    for (int i = 0; i < n; ++i) t = t * pi;
    return l_tilde(t);
}

const char* tag_name(SubgroupTag t) {
    switch (t) {
        case SubgroupTag::GSp2n: return "GSp2n";
        case SubgroupTag::GUnn: return "GUnn";
        case SubgroupTag::P_Siegel_H: return "P_Siegel_H";
        case SubgroupTag::P_Klingen: return "P_Klingen";
        case SubgroupTag::K_p_H: return "K_p^H";
        case SubgroupTag::U_p_H: return "U_p^H";
        case SubgroupTag::Iprime_p_H: return "I'_p^H";
        case SubgroupTag::K_p_G: return "K_p^G";
        case SubgroupTag::U_p_G: return "U_p^G";
        case SubgroupTag::Iprime_p: return "I'_p";
        case SubgroupTag::Iwahori_p: return "Iwahori_p";
        case SubgroupTag::Gamma0: return "Gamma0";
        case SubgroupTag::Gamma_upper0: return "Gamma^0";
        case SubgroupTag::Gamma0prime_F: return "Gamma0'_F";
        case SubgroupTag::Gamma0_L_units: return "Gamma^0_L";
        case SubgroupTag::Borel_I2n: return "I(2n)";
    }
    return "?";
}

bool divisible_by_p(const LocalElem& x) {
    const long p = x.ctx.q;
    return vp(x.x, p) >= 1 && vp(x.y, p) >= 1;
}

bool residue_in_base(const LocalElem& x) {
    if (x.ctx.kind == Place::Split) return vp(Rat(x.x - x.y), x.ctx.q) >= 1;
    return vp(x.y, x.ctx.q) >= 1;
}

bool integral(const Mat<LocalElem>& g) {
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            if (local_val(g(i, j)) < 0) return false;
    return true;
}

namespace {

bool in_maximal_compact(const Mat<LocalElem>& g) {
    auto mu = similitude(g, Form::Hermitian);
    if (!mu || !integral(g)) return false;
    return mu->is_unit() && det(g).is_unit();
}

// residue lies in I(2n, F_p): F_p entries, C = 0, A lower triangular
bool residue_borel(const Mat<LocalElem>& g) {
    const int n = g.rows() / 2;
    for (int i = 0; i < 2 * n; ++i)
        for (int j = 0; j < 2 * n; ++j) {
            if (!residue_in_base(g(i, j))) return false;
            bool must_vanish = (i >= n && j < n) || (i < n && j < n && j > i);
            if (must_vanish && !divisible_by_p(g(i, j))) return false;
        }
    return true;
}

bool mask_zero(const Mat<LocalElem>& g, const std::vector<std::pair<int, int>>& cells) {
    for (auto [i, j] : cells)
        if (!divisible_by_p(g(i, j))) return false;
    return true;
}

bool all_base(const Mat<LocalElem>& g) {
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            if (!g(i, j).is_base()) return false;
    return true;
}

}  // namespace

bool subgroup_member(const Mat<LocalElem>& g, SubgroupTag tag) {
    const int n = g.rows();
    if (n != g.cols()) fail(Err::RingMismatch, "non-square matrix");
    auto need = [&](int size) {
        if (n != size) fail(Err::RingMismatch, std::string(tag_name(tag)) + " expects size " + std::to_string(size));
    };
    switch (tag) {
        case SubgroupTag::GSp2n: return similitude(g, Form::Symplectic).has_value();
        case SubgroupTag::GUnn: return similitude(g, Form::Hermitian).has_value();
        case SubgroupTag::P_Siegel_H:
            need(6);
            return similitude(g, Form::Hermitian).has_value() && g.block(3, 0, 3, 3).is_zero();
        case SubgroupTag::P_Klingen:
            need(4);
            return similitude(g, Form::Hermitian).has_value() && g(1, 0).is_zero() && g(2, 0).is_zero() &&
                   g(3, 0).is_zero();
        case SubgroupTag::K_p_H: need(6); return in_maximal_compact(g);
        case SubgroupTag::U_p_H: {
            need(6);
            std::vector<std::pair<int, int>> cells;
            for (int i = 4; i < 6; ++i)
                for (int j = 0; j < 4; ++j) cells.emplace_back(i, j);
            return in_maximal_compact(g) && mask_zero(g, cells);
        }
        case SubgroupTag::Iprime_p_H: need(6); return in_maximal_compact(g) && residue_borel(g);
        case SubgroupTag::K_p_G: need(4); return in_maximal_compact(g);
        case SubgroupTag::U_p_G:
            need(4);
            return in_maximal_compact(g) && mask_zero(g, {{0, 1}, {2, 1}, {3, 0}, {3, 1}, {3, 2}});
        case SubgroupTag::Iprime_p: need(4); return in_maximal_compact(g) && residue_borel(g);
        case SubgroupTag::Iwahori_p:
            need(4);
            return all_base(g) && in_maximal_compact(g) &&
                   mask_zero(g, {{0, 1}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}});
        case SubgroupTag::Gamma0: need(2); return in_maximal_compact(g) && divisible_by_p(g(1, 0));
        case SubgroupTag::Gamma_upper0: need(2); return in_maximal_compact(g) && divisible_by_p(g(0, 1));
        case SubgroupTag::Gamma0prime_F: {
            need(2);
            if (!in_maximal_compact(g) || !divisible_by_p(g(1, 0))) return false;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    if (!residue_in_base(g(i, j))) return false;
            return true;
        }
        case SubgroupTag::Gamma0_L_units: {
            need(1);
            const LocalElem& x = g(0, 0);
            if (x.ctx.kind != Place::Inert) fail(Err::RingMismatch, "Gamma^0_L is defined at inert primes");
            return x.is_unit() && vp(x.y, x.ctx.q) >= 1;
        }
        case SubgroupTag::Borel_I2n: {
            if (!similitude(g, Form::Symplectic)) return false;
            const int h = n / 2;
            if (!g.block(h, 0, h, h).is_zero()) return false;
            for (int i = 0; i < h; ++i)
                for (int j = i + 1; j < h; ++j)
                    if (!g(i, j).is_zero()) return false;
            return true;
        }
    }
    return false;
}

}  // namespace pv

namespace pv {

int tag_size(SubgroupTag tag) {
    switch (tag) {
        case SubgroupTag::K_p_H:
        case SubgroupTag::U_p_H:
        case SubgroupTag::Iprime_p_H: return 6;
        case SubgroupTag::K_p_G:
        case SubgroupTag::U_p_G:
        case SubgroupTag::Iprime_p:
        case SubgroupTag::Iwahori_p: return 4;
        case SubgroupTag::Gamma0:
        case SubgroupTag::Gamma_upper0:
        case SubgroupTag::Gamma0prime_F: return 2;
        default: return 0;
    }
}

namespace {

QuadElem rand_int_quad(std::mt19937_64& rng, long d, bool rational) {
    std::uniform_int_distribution<long> u(-4, 4);
    return {u(rng), rational ? 0 : u(rng), d};
}

// candidate unitary generator of GU(n,n) with similitude 1
Mat<QuadElem> random_generator(int n, long p, long d, std::mt19937_64& rng) {
    const QuadElem zero = QuadElem::from(0, d);
    Mat<QuadElem> g = Mat<QuadElem>::identity(2 * n, zero);
    std::uniform_int_distribution<int> kind(0, n > 1 ? 5 : 4), idx(0, n - 1);
    switch (kind(rng)) {
        case 0: {  // upper unipotent n(b), b hermitian
            int i = idx(rng), j = idx(rng);
            if (i == j) {
                g(i, n + i) = rand_int_quad(rng, d, true);
            } else {
                QuadElem x = rand_int_quad(rng, d, false);
                g(i, n + j) = x;
                g(j, n + i) = x.conj();
            }
            break;
        }
        case 1: {  // lower unipotent
            int i = idx(rng), j = idx(rng);
            if (i == j) {
                g(n + i, i) = rand_int_quad(rng, d, true);
            } else {
                QuadElem x = rand_int_quad(rng, d, false);
                g(n + i, j) = x;
                g(n + j, i) = x.conj();
            }
            break;
        }
        case 2: {  // torus diag(t, conj(t)^-1) at one index, t a p-unit
            int i = idx(rng);
            QuadElem t;
            do t = rand_int_quad(rng, d, false);
            while (t.is_zero() || vp(t.norm(), p) != 0);
            g(i, i) = t;
            g(n + i, n + i) = t.conj().inv();
            break;
        }
        case 3: {  // Weyl element in the (i, n+i) plane
            int i = idx(rng);
            g(i, i) = zero;
            g(n + i, n + i) = zero;
            g(i, n + i) = QuadElem::from(1, d);
            g(n + i, i) = QuadElem::from(-1, d);
            break;
        }
        case 4: {  // unit scalar of norm one
            int i = idx(rng);
            QuadElem t = d == 1 ? QuadElem(0, 1, d) : QuadElem::from(-1, d);
            g(i, i) = t;
            g(n + i, n + i) = t;
            break;
        }
        default: {  // Levi root element m(I + x E_ij)
            if (n == 1) break;
            int i = idx(rng), j = idx(rng);
            if (i == j) j = (i + 1) % n;
            QuadElem x = rand_int_quad(rng, d, false);
            g(i, j) = x;
            g(n + j, n + i) = -x.conj();
            break;
        }
    }
    return g;
}

}  // namespace

Mat<QuadElem> sample_subgroup(SubgroupTag tag, long p, long d, std::mt19937_64& rng, const Rat& mu, int factors) {
    const int size = tag_size(tag);
    if (size == 0) fail(Err::BadParams, std::string("no sampler for ") + tag_name(tag));
    const LocalCtx c = LocalCtx::make(Place::Inert, p, d);
    const int n = size / 2;
    Mat<QuadElem> acc = Mat<QuadElem>::identity(size, QuadElem::from(0, d));
    for (int f = 0; f < factors;) {
        Mat<QuadElem> g = random_generator(n, p, d, rng);
        if (tag == SubgroupTag::Iwahori_p) {
            bool rational = true;
            for (int i = 0; i < size; ++i)
                for (int j = 0; j < size; ++j) rational = rational && g(i, j).is_rational();
            if (!rational) continue;
        }
        // correction: scale the off-identity part by p until the residue pattern holds
        const Mat<QuadElem> id = Mat<QuadElem>::identity(size, QuadElem::from(0, d));
        for (int tries = 0; tries < 2 && !subgroup_member(to_local(g, c), tag); ++tries) {
            Mat<QuadElem> off = g - id;
            bool unipotent = (off * off * off).is_zero();
            if (!unipotent) break;
            g = id + QuadElem::from(p, d) * off;
        }
        if (!subgroup_member(to_local(g, c), tag)) continue;
        acc = acc * g;
        ++f;
    }
    if (mu != 1) {
        Mat<QuadElem> s = Mat<QuadElem>::identity(size, QuadElem::from(0, d));
        for (int i = n; i < size; ++i) s(i, i) = QuadElem::from(mu, d);
        if (!subgroup_member(to_local(s, c), tag)) fail(Err::BadParams, "similitude factor leaves the subgroup");
        acc = acc * s;
    }
    return acc;
}

}  // namespace pv
