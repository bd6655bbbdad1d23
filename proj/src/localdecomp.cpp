#include "pv/localdecomp.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "pv/errors.hpp"

namespace pv {

Mat<LocalElem> IwasawaFactorization::reassemble() const { return siegel_n(b) * siegel_m(A, v) * k; }

namespace {

// Row-reduce k rows over a field so they become integral with an identity minor.
// Pivot: minimal valuation among the unused rows, leftmost column then topmost row on ties.
template <class T, class Val>
std::vector<int> saturate(std::vector<std::vector<T>>& rows, Val val) {
    const int k = static_cast<int>(rows.size()), n = static_cast<int>(rows[0].size());
    std::vector<bool> used(k, false);
    std::vector<int> piv(k, -1);
    for (int step = 0; step < k; ++step) {
        int bi = -1, bj = -1, bv = 0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < k; ++i) {
                if (used[i] || is_zero_of(rows[i][j])) continue;
                int v = val(rows[i][j]);
                if (bi < 0 || v < bv) {
                    bi = i;
                    bj = j;
                    bv = v;
                }
            }
        if (bi < 0) fail(Err::NotInGroup, "bottom rows are linearly dependent");
        const T iv = inv_of(rows[bi][bj]);
        for (T& x : rows[bi]) x = x * iv;
        for (int i = 0; i < k; ++i) {
            if (i == bi || is_zero_of(rows[i][bj])) continue;
            const T t = rows[i][bj];
            for (int j = 0; j < n; ++j) rows[i][j] = rows[i][j] - t * rows[bi][j];
        }
        used[bi] = true;
        piv[bi] = bj;
    }
    return piv;
}

std::vector<int> complement_columns(const std::vector<int>& piv, int n) {
    std::vector<int> out;
    for (int c = 0; c < n; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) out.push_back(c);
    return out;
}

// k in K with the given (integral, isotropic, residue rank 3) bottom rows; field case
Mat<LocalElem> complete_unitary(const Mat<LocalElem>& bottom, const std::vector<int>& piv) {
    const LocalElem z = bottom.like();
    const Mat<LocalElem> J = J_form(3, z);
    Mat<LocalElem> E(3, 6, zero_like(z));
    auto comp = complement_columns(piv, 6);
    for (int r = 0; r < 3; ++r) E(r, comp[r]) = one_like(z);
    const Mat<LocalElem> M = E * J * bottom.conj_transpose();
    const Mat<LocalElem> T1 = inverse(M) * E;
    const Mat<LocalElem> H = T1 * J * T1.conj_transpose();
    Mat<LocalElem> Y(3, 3, zero_like(z));
    const LocalElem half = LocalElem::base(z.ctx, rat(1, 2));
    for (int i = 0; i < 3; ++i) {
        Y(i, i) = H(i, i) * half;
        for (int j = i + 1; j < 3; ++j) Y(i, j) = H(i, j);
    }
    const Mat<LocalElem> T = T1 + Y * bottom;
    Mat<LocalElem> k(6, 6, zero_like(z));
    k.set_block(0, 0, T);
    k.set_block(3, 0, bottom);
    return k;
}

Mat<LocalElem> k_for_field(const Mat<LocalElem>& g) {
    std::vector<std::vector<LocalElem>> rows(3, std::vector<LocalElem>(6));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) rows[i][j] = g(3 + i, j);
    auto piv = saturate(rows, [](const LocalElem& x) { return local_val(x); });
    Mat<LocalElem> bottom(3, 6, g.like());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) bottom(i, j) = rows[i][j];
    return complete_unitary(bottom, piv);
}

// split: reduce the first component in GL_6(Q_q); the second is forced by the similitude law
Mat<LocalElem> k_for_split(const Mat<LocalElem>& g) {
    const LocalCtx& c = g.like().ctx;
    const Mat<Rat> g1 = split_component(g, 0);
    std::vector<std::vector<Rat>> rows(3, std::vector<Rat>(6));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) rows[i][j] = g1(3 + i, j);
    const long q = c.q;
    auto piv = saturate(rows, [q](const Rat& x) { return vp(x, q); });
    Mat<Rat> k1(6, 6, Rat(0));
    auto comp = complement_columns(piv, 6);
    for (int r = 0; r < 3; ++r) k1(r, comp[r]) = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) k1(3 + i, j) = rows[i][j];
    const Mat<Rat> J = const_J(3);
    const Mat<Rat> k2 = J * inverse(k1).transpose() * inverse(J);
    return split_combine(c, k1, k2);
}

}  // namespace

IwasawaFactorization iwasawa_siegel(const Mat<LocalElem>& g) {
    if (g.rows() != 6 || g.cols() != 6) fail(Err::NotInGroup, "expected a 6x6 matrix");
    auto mu = similitude(g, Form::Hermitian);
    if (!mu || is_zero_of(*mu) || !invertible_of(*mu)) fail(Err::NotInGroup, "not in GU(3,3)");
    const LocalCtx& c = g.like().ctx;
    IwasawaFactorization f;
    f.k = c.kind == Place::Split ? k_for_split(g) : k_for_field(g);
    if (!subgroup_member(f.k, SubgroupTag::K_p_H)) fail(Err::Internal, "completed k is not in K_p^H");
    const Mat<LocalElem> p = g * inverse(f.k);
    for (int i = 3; i < 6; ++i)
        for (int j = 0; j < 3; ++j)
            if (!p(i, j).is_zero()) fail(Err::Internal, "parabolic part has a nonzero lower block");
    f.A = p.block(0, 0, 3, 3);
    const Mat<LocalElem> D = p.block(3, 3, 3, 3);
    f.b = p.block(0, 3, 3, 3) * inverse(D);
    auto v = similitude(p, Form::Hermitian);
    if (!v) fail(Err::Internal, "parabolic part lost the similitude");
    f.v = *v;
    return f;
}

int upsilon_y_exponent(const IwasawaFactorization& f) {
    const long q = f.v.ctx.q;
    const LocalElem dA = det(f.A);
    return 3 * vp(dA.norm().base_value(), q) - 9 * vp(f.v.base_value(), q);
}

int upsilon_lambda_exponent(const IwasawaFactorization& f) {
    const LocalElem dA = det(f.A);
    switch (dA.ctx.kind) {
        case Place::Split: {
            auto [a, b] = local_val_pair(dA);
            return a - b;
        }
        case Place::Ramified: return local_val(dA);
        default: return 0;
    }
}

int min_entry_valuation(const Mat<LocalElem>& g) {
    int best = kInfVal;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            if (!g(i, j).is_zero()) best = std::min(best, local_val(g(i, j)));
    return best;
}

// ---- double cosets ----

namespace {

struct OrbitData {
    FlagSpace space;
    std::vector<FMat> gens;
    OrbitPartition part;
};

const OrbitData& orbit_data(long p, long d, SubgroupTag tag) {
    static std::mutex mu;
    static std::map<std::tuple<long, long, int>, std::unique_ptr<OrbitData>> cache;
    static std::map<std::pair<long, long>, std::shared_ptr<FlagSpace>> spaces;
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = cache[{p, d, static_cast<int>(tag)}];
    if (!slot) {
        auto& sp = spaces[{p, d}];
        if (!sp)
            sp = std::make_shared<FlagSpace>(
                enumerate_flags(static_cast<int>(p), static_cast<int>(d), FlagKind::SiegelGU33));
        auto data = std::make_unique<OrbitData>(OrbitData{*sp, {}, {}});
        data->gens = residue_generators(*data->space.field, 3, tag);
        data->part = orbit_count(data->space, data->gens);
        slot = std::move(data);
    }
    return *slot;
}

FMat path_product(const FqField& f, const std::vector<FMat>& gens, const std::vector<int>& path) {
    FMat m = FMat::identity(6);
    for (int g : path) m = fmul(f, m, gens[g]);
    return m;
}

}  // namespace

CosetWitness in_double_coset(const Mat<LocalElem>& g, Center center, SubgroupTag u_tag) {
    if (u_tag != SubgroupTag::U_p_H && u_tag != SubgroupTag::Iprime_p_H && u_tag != SubgroupTag::K_p_H)
        fail(Err::BadParams, std::string("unsupported subgroup ") + tag_name(u_tag));
    const LocalCtx& c = g.like().ctx;
    if (c.kind != Place::Inert) fail(Err::BadParams, "double-coset test runs at inert primes");
    CosetWitness w;
    w.fact = iwasawa_siegel(g);
    const OrbitData& od = orbit_data(c.q, c.d, u_tag);
    const FqField& f = *od.space.field;
    w.point = od.space.point_of(residue_matrix(f, w.fact.k));
    w.center_point = od.space.point_of(residue_matrix(f, center_matrix(center, c.d)));
    const int ip = od.space.index_of(w.point), ic = od.space.index_of(w.center_point);
    if (ip < 0 || ic < 0) fail(Err::Internal, "flag point missing from the enumeration");
    w.path_to_point = orbit_witness(od.part, ip);
    w.path_to_center = orbit_witness(od.part, ic);
    w.member = od.part.orbit_of[ip] == od.part.orbit_of[ic];
    if (w.member) {
        const FMat uc = path_product(f, od.gens, w.path_to_center);
        const FMat uk = path_product(f, od.gens, w.path_to_point);
        w.ubar = fmul(f, finverse(f, uc), uk);
        if (od.space.act(w.center_point, w.ubar) != w.point) fail(Err::Internal, "orbit witness does not replay");
    }
    return w;
}

// ---- sections ----

const char* place_class_name(PlaceClass c) {
    switch (c) {
        case PlaceClass::Unramified: return "unramified";
        case PlaceClass::S3: return "S3";
        case PlaceClass::S2: return "S2";
        case PlaceClass::S1: return "S1";
    }
    return "?";
}

SectionValue SectionValue::make_zero(std::string why) {
    SectionValue s;
    s.zero = true;
    s.zero_witness = std::move(why);
    return s;
}

std::string SectionValue::str() const {
    if (zero) return "0 [" + zero_witness + "]";
    std::string out = chi.str();
    if (lambda_exp != 0) out += " lam^" + std::to_string(lambda_exp);
    out += " Y^" + std::to_string(y_exp);
    if (r_exp != 0) out += " R^" + std::to_string(r_exp);
    return out;
}

namespace {

Cyclo residue_character(const FqField& f, FE x, const CharSpec& chi) {
    if (x == 0) fail(Err::NotUnit, "residue is zero");
    const int order = static_cast<int>(chi.p + 1);
    return Cyclo::zeta(order, static_cast<long>(chi.exponent) * (f.dlog(x) % order));
}

FE det3(const FqField& f, const FMat& y) {
    FE det = 0;
    for (int s0 = 0; s0 < 3; ++s0) {
        const int s1 = (s0 + 1) % 3, s2 = (s0 + 2) % 3;
        det = f.add(det, f.mul(y(0, s0), f.sub(f.mul(y(1, s1), y(2, s2)), f.mul(y(1, s2), y(2, s1)))));
    }
    return det;
}

}  // namespace

SectionValue evaluate_section(const Mat<LocalElem>& g, PlaceClass cls, const CharSpec& chi) {
    const LocalCtx& c = g.like().ctx;
    if (cls == PlaceClass::Unramified) {
        const IwasawaFactorization f = iwasawa_siegel(g);
        SectionValue s;
        s.zero = false;
        s.chi = Cyclo(1, 1);
        s.y_exp = upsilon_y_exponent(f);
        s.lambda_exp = upsilon_lambda_exponent(f);
        return s;
    }
    if (c.kind != Place::Inert) fail(Err::BadParams, "S-class sections live at inert primes");
    if (chi.p != c.q || chi.d != c.d) fail(Err::RingMismatch, "character data does not match the prime");
    std::vector<Center> centers{Center::Q};
    if (cls == PlaceClass::S1) centers.push_back(Center::Omega);
    const SubgroupTag tag = cls == PlaceClass::S3 ? SubgroupTag::U_p_H : SubgroupTag::Iprime_p_H;
    std::string why;
    for (Center ctr : centers) {
        CosetWitness w = in_double_coset(g, ctr, tag);
        const char* cname = ctr == Center::Q ? "Q" : "Omega";
        if (!w.member) {
            if (!why.empty()) why += "; ";
            why += std::string("not in P.") + cname + "." + tag_name(tag);
            continue;
        }
        const FqField f(static_cast<int>(c.q), static_cast<int>(c.d), true);
        // k = p' center u with p' in P meets K; Lambda of its Levi determinant is read off the residue
        const FMat kbar = residue_matrix(f, w.fact.k);
        const FMat cbar = residue_matrix(f, center_matrix(ctr, c.d));
        const FMat pbar = fmul(f, fmul(f, kbar, finverse(f, w.ubar)), finverse(f, cbar));
        SectionValue s;
        s.zero = false;
        if (cls == PlaceClass::S3) {
            // Lambda is unramified away from M, hence trivial at an inert prime of S3
            s.chi = Cyclo(static_cast<int>(chi.p + 1), 1);
        } else {
            s.chi = character_value_nonunit(det(w.fact.A), chi) * residue_character(f, det3(f, pbar), chi);
        }
        s.y_exp = upsilon_y_exponent(w.fact);
        return s;
    }
    return SectionValue::make_zero(why);
}

Iwasawa2 iwasawa_gl2(const Mat<Rat>& g, long r) {
    if (g.rows() != 2 || sgn(det(g)) == 0) fail(Err::NotInGroup, "expected an invertible 2x2 matrix");
    const Rat a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
    Iwasawa2 out;
    Mat<Rat> upper(2, 2, Rat(0));
    if (sgn(c) == 0 || (sgn(d) != 0 && vp(d, r) <= vp(c, r))) {
        out.k = rat_matrix(2, {1, 0, 0, 1});
        out.k(1, 0) = c / d;
        upper = g * inverse(out.k);
    } else {
        out.k = rat_matrix(2, {0, 1, 1, 0});
        out.k(1, 1) = d / c;
        upper = g * inverse(out.k);
    }
    out.y1 = upper(0, 0);
    out.y2 = upper(1, 1);
    out.x = upper(0, 1) / out.y2;
    return out;
}

}  // namespace pv
