#include "pv/finitegeom.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <string>
#include <unordered_set>

#include "pv/character.hpp"
#include "pv/errors.hpp"

namespace pv {

FMat FMat::identity(int n) {
    FMat m;
    m.n = n;
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

FMat fmul(const FqField& f, const FMat& x, const FMat& y) {
    FMat r;
    r.n = x.n;
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            FE a = x(i, k);
            if (a == 0) continue;
            for (int j = 0; j < x.n; ++j) r(i, j) = f.add(r(i, j), f.mul(a, y(k, j)));
        }
    return r;
}

FMat finverse(const FqField& f, const FMat& x) {
    const int n = x.n;
    FMat a = x, r = FMat::identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (a(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) fail(Err::NearSingular, "singular residue matrix");
        for (int j = 0; j < n; ++j) {
            std::swap(a(c, j), a(piv, j));
            std::swap(r(c, j), r(piv, j));
        }
        FE iv = f.inv(a(c, c));
        for (int j = 0; j < n; ++j) {
            a(c, j) = f.mul(a(c, j), iv);
            r(c, j) = f.mul(r(c, j), iv);
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            FE t = a(i, c);
            for (int j = 0; j < n; ++j) {
                a(i, j) = f.sub(a(i, j), f.mul(t, a(c, j)));
                r(i, j) = f.sub(r(i, j), f.mul(t, r(c, j)));
            }
        }
    }
    return r;
}

namespace {

// x J conj(y)^t for row vectors of length 2m
FE herm(const FqField& f, const FE* x, const FE* y, int m) {
    FE s = 0;
    for (int k = 0; k < m; ++k) {
        s = f.add(s, f.mul(x[k], f.conj(y[m + k])));
        s = f.sub(s, f.mul(x[m + k], f.conj(y[k])));
    }
    return s;
}

}  // namespace

int fsimilitude(const FqField& f, const FMat& x) {
    const int m = x.n / 2;
    // g J conj(g)^t = mu J, row by row
    FE mu = herm(f, &x.a[0], &x.a[m * x.n], m);
    if (mu == 0 || !f.in_base(mu)) return -1;
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            FE want = 0;
            if (j == i + m) want = mu;
            if (i == j + m) want = f.neg(mu);
            if (herm(f, &x.a[i * x.n], &x.a[j * x.n], m) != want) return -1;
        }
    return f.re(mu);
}

FMat residue_matrix(const FqField& f, const Mat<LocalElem>& g) {
    if (g.rows() > 6) fail(Err::BadParams, "residue matrices are at most 6x6");
    FMat r;
    r.n = g.rows();
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j) {
            if (local_val(g(i, j)) < 0) fail(Err::NotInCompact, "matrix is not integral");
            r(i, j) = residue_fq(f, g(i, j));
        }
    return r;
}

FMat residue_matrix(const FqField& f, const Mat<QuadElem>& g) {
    return residue_matrix(f, to_local(g, LocalCtx::make(Place::Inert, f.p(), f.d())));
}

bool residue_member(const FqField& f, const FMat& g, SubgroupTag tag) {
    auto zero_at = [&](std::initializer_list<std::pair<int, int>> cells) {
        for (auto [i, j] : cells)
            if (g(i, j) != 0) return false;
        return true;
    };
    auto all_base = [&] {
        for (int i = 0; i < g.n * g.n; ++i)
            if (!f.in_base(g.a[i])) return false;
        return true;
    };
    auto borel = [&] {
        const int m = g.n / 2;
        if (!all_base()) return false;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (g(m + i, j) != 0) return false;
                if (j > i && g(i, j) != 0) return false;
            }
        return true;
    };
    auto size_is = [&](int n) {
        if (g.n != n) fail(Err::RingMismatch, std::string(tag_name(tag)) + " needs size " + std::to_string(n));
    };
    switch (tag) {
        case SubgroupTag::K_p_G: size_is(4); return fsimilitude(f, g) > 0;
        case SubgroupTag::K_p_H: size_is(6); return fsimilitude(f, g) > 0;
        case SubgroupTag::U_p_G:
            size_is(4);
            return fsimilitude(f, g) > 0 && zero_at({{0, 1}, {2, 1}, {3, 0}, {3, 1}, {3, 2}});
        case SubgroupTag::U_p_H:
            size_is(6);
            if (fsimilitude(f, g) <= 0) return false;
            for (int i = 4; i < 6; ++i)
                for (int j = 0; j < 4; ++j)
                    if (g(i, j) != 0) return false;
            return true;
        case SubgroupTag::Iprime_p: size_is(4); return fsimilitude(f, g) > 0 && borel();
        case SubgroupTag::Iprime_p_H: size_is(6); return fsimilitude(f, g) > 0 && borel();
        case SubgroupTag::Iwahori_p:
            size_is(4);
            return fsimilitude(f, g) > 0 && all_base() && zero_at({{0, 1}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}});
        case SubgroupTag::Gamma0: size_is(2); return fsimilitude(f, g) > 0 && g(1, 0) == 0;
        case SubgroupTag::Gamma_upper0: size_is(2); return fsimilitude(f, g) > 0 && g(0, 1) == 0;
        case SubgroupTag::Gamma0prime_F: size_is(2); return fsimilitude(f, g) > 0 && g(1, 0) == 0 && all_base();
        default: fail(Err::BadParams, std::string("no residue image for ") + tag_name(tag));
    }
}

// ---- flag spaces ----

namespace {

// RREF of k rows of length n; Internal if rank drops
FlagKey rref_key(const FqField& f, std::array<FE, 18> rows, int k, int n) {
    int r = 0;
    for (int c = 0; c < n && r < k; ++c) {
        int piv = -1;
        for (int i = r; i < k; ++i)
            if (rows[i * n + c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < n; ++j) std::swap(rows[r * n + j], rows[piv * n + j]);
        FE iv = f.inv(rows[r * n + c]);
        for (int j = 0; j < n; ++j) rows[r * n + j] = f.mul(rows[r * n + j], iv);
        for (int i = 0; i < k; ++i) {
            if (i == r || rows[i * n + c] == 0) continue;
            FE t = rows[i * n + c];
            for (int j = 0; j < n; ++j) rows[i * n + j] = f.sub(rows[i * n + j], f.mul(t, rows[r * n + j]));
        }
        ++r;
    }
    if (r < k) fail(Err::Internal, "flag rows are dependent");
    FlagKey key{};
    std::copy(rows.begin(), rows.end(), key.begin());
    return key;
}

}  // namespace

int FlagSpace::index_of(const FlagKey& key) const {
    auto it = std::lower_bound(points.begin(), points.end(), key);
    if (it == points.end() || *it != key) return -1;
    return static_cast<int>(it - points.begin());
}

FlagKey FlagSpace::act(const FlagKey& key, const FMat& h) const {
    const FqField& f = *field;
    std::array<FE, 18> out{};
    for (int r = 0; r < k; ++r)
        for (int t = 0; t < n; ++t) {
            FE a = key[r * n + t];
            if (a == 0) continue;
            for (int j = 0; j < n; ++j) out[r * n + j] = f.add(out[r * n + j], f.mul(a, h(t, j)));
        }
    return rref_key(f, out, k, n);
}

FlagKey FlagSpace::point_of(const FMat& g) const {
    if (g.n != n) fail(Err::RingMismatch, "matrix size does not match the flag space");
    std::array<FE, 18> rows{};
    const int first = kind == FlagKind::KlingenGU22 ? 2 : 3;
    for (int r = 0; r < k; ++r)
        for (int j = 0; j < n; ++j) rows[r * n + j] = g(first + r, j);
    return rref_key(*field, rows, k, n);
}

bool FlagSpace::isotropic(const FlagKey& key) const {
    for (int i = 0; i < k; ++i)
        for (int j = 0; j <= i; ++j)
            if (herm(*field, &key[i * n], &key[j * n], n / 2) != 0) return false;
    return true;
}

long classical_flag_count(int p, FlagKind kind) {
    long q = p;
    if (kind == FlagKind::KlingenGU22) return (q * q + 1) * (q * q * q + 1);
    return (q + 1) * (q * q * q + 1) * (q * q * q * q * q + 1);
}

FlagSpace enumerate_flags(int p, int d, FlagKind kind) {
    if (p % 2 == 0 || !is_prime(p)) fail(Err::BadParams, "p must be an odd prime");
    if (legendre(-d, p) != -1)
        fail(Err::BadParams, "-" + std::to_string(d) + " is not a non-residue mod " + std::to_string(p));
    FlagSpace s;
    s.kind = kind;
    s.p = p;
    s.d = d;
    s.k = kind == FlagKind::KlingenGU22 ? 1 : 3;
    s.n = kind == FlagKind::KlingenGU22 ? 4 : 6;
    s.field = std::make_shared<FqField>(p, d, true);
    const FqField& f = *s.field;
    const int k = s.k, n = s.n, q2 = f.size();

    // every RREF shape: pivot columns, then free entries row by row, pruning on isotropy
    std::array<FE, 18> rows{};
    std::vector<int> piv(k);
    std::function<void(int)> fill_row;
    fill_row = [&](int r) {
        if (r == k) {
            FlagKey key{};
            std::copy(rows.begin(), rows.end(), key.begin());
            s.points.push_back(key);
            return;
        }
        std::vector<int> free;
        for (int j = piv[r] + 1; j < n; ++j)
            if (std::find(piv.begin(), piv.end(), j) == piv.end()) free.push_back(j);
        for (int j = 0; j < n; ++j) rows[r * n + j] = 0;
        rows[r * n + piv[r]] = 1;
        long total = 1;
        for (size_t i = 0; i < free.size(); ++i) total *= q2;
        for (long code = 0; code < total; ++code) {
            long c = code;
            for (int j : free) {
                rows[r * n + j] = static_cast<FE>(c % q2);
                c /= q2;
            }
            bool ok = true;
            for (int i = 0; i <= r && ok; ++i) ok = herm(f, &rows[i * n], &rows[r * n], n / 2) == 0;
            if (ok) fill_row(r + 1);
        }
        for (int j = 0; j < n; ++j) rows[r * n + j] = 0;
    };
    std::function<void(int, int)> choose = [&](int i, int start) {
        if (i == k) {
            fill_row(0);
            return;
        }
        for (int c = start; c < n; ++c) {
            piv[i] = c;
            choose(i + 1, c + 1);
        }
    };
    choose(0, 0);
    std::sort(s.points.begin(), s.points.end());
    return s;
}

OrbitPartition orbit_count(const FlagSpace& space, const std::vector<FMat>& gens) {
    const int total = static_cast<int>(space.points.size());
    OrbitPartition part;
    part.orbit_of.assign(total, -1);
    part.parent.assign(total, -1);
    part.via.assign(total, -1);
    for (int start = 0; start < total; ++start) {
        if (part.orbit_of[start] >= 0) continue;
        const int id = static_cast<int>(part.orbits.size());
        std::vector<int> orbit{start};
        part.orbit_of[start] = id;
        for (size_t head = 0; head < orbit.size(); ++head) {
            const int x = orbit[head];
            for (size_t g = 0; g < gens.size(); ++g) {
                int y = space.index_of(space.act(space.points[x], gens[g]));
                if (y < 0) fail(Err::Internal, "generator does not preserve the flag space");
                if (part.orbit_of[y] >= 0) continue;
                part.orbit_of[y] = id;
                part.parent[y] = x;
                part.via[y] = static_cast<int>(g);
                orbit.push_back(y);
            }
        }
        part.orbits.push_back(std::move(orbit));
    }
    return part;
}

std::vector<int> orbit_witness(const OrbitPartition& part, int point) {
    std::vector<int> path;
    for (int x = point; part.parent[x] >= 0; x = part.parent[x]) path.push_back(part.via[x]);
    std::reverse(path.begin(), path.end());
    return path;
}

// ---- generators and group orders ----

namespace {

int mult_order(const FqField& f, FE x) {
    int k = 1;
    for (FE y = x; y != 1; y = f.mul(y, x)) ++k;
    return k;
}

// m(A, v) = diag(A, v conj(A)^{-t})
FMat levi(const FqField& f, const FMat& a, FE v) {
    const int m = a.n;
    FMat ai = finverse(f, a), r;
    r.n = 2 * m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            r(i, j) = a(i, j);
            r(m + i, m + j) = f.mul(v, f.conj(ai(j, i)));
        }
    return r;
}

}  // namespace

std::vector<FMat> residue_generators(const FqField& f, int n, SubgroupTag tag) {
    FE big = 0, small = 0;
    for (int x = 1; x < f.size(); ++x) {
        if (!big && mult_order(f, x) == f.size() - 1) big = x;
        if (!small && f.in_base(x) && mult_order(f, x) == f.p() - 1) small = x;
    }
    auto eye = [&] { return FMat::identity(n); };
    std::vector<FMat> c;
    for (int i = 0; i < n; ++i)
        for (FE t : {big, small}) {
            FMat a = eye();
            a(i, i) = t;
            c.push_back(levi(f, a, 1));
        }
    c.push_back(levi(f, eye(), small));
    const FE om = f.omega();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                for (FE x : {FE(1), om}) {
                    FMat a = eye();
                    a(i, j) = x;
                    c.push_back(levi(f, a, 1));
                }
    for (bool lower : {false, true}) {
        auto unip = [&](int i, int j, FE x) {
            FMat m = FMat::identity(2 * n);
            if (lower) {
                m(n + i, j) = x;
                if (i != j) m(n + j, i) = f.conj(x);
            } else {
                m(i, n + j) = x;
                if (i != j) m(j, n + i) = f.conj(x);
            }
            return m;
        };
        for (int i = 0; i < n; ++i) {
            c.push_back(unip(i, i, 1));
            for (int j = i + 1; j < n; ++j)
                for (FE x : {FE(1), om}) c.push_back(unip(i, j, x));
        }
    }
    for (int i = 0; i < n; ++i) {
        FMat m = FMat::identity(2 * n);
        m(i, i) = 0;
        m(n + i, n + i) = 0;
        m(i, n + i) = 1;
        m(n + i, i) = f.neg(1);
        c.push_back(m);
    }
    std::vector<FMat> out;
    for (const FMat& m : c) {
        if (fsimilitude(f, m) <= 0) fail(Err::Internal, "generator is not a unitary similitude");
        if (residue_member(f, m, tag)) out.push_back(m);
    }
    return out;
}

namespace {

struct FMatHash {
    size_t operator()(const FMat& m) const {
        size_t h = 1469598103934665603ull;
        for (int i = 0; i < m.n * m.n; ++i) h = (h ^ m.a[i]) * 1099511628211ull;
        return h;
    }
};

}  // namespace

long generated_order(const FqField& f, const std::vector<FMat>& gens, long limit) {
    if (gens.empty()) return 1;
    std::unordered_set<FMat, FMatHash> seen;
    std::deque<FMat> todo;
    FMat e = FMat::identity(gens[0].n);
    seen.insert(e);
    todo.push_back(e);
    while (!todo.empty()) {
        FMat x = todo.front();
        todo.pop_front();
        for (const FMat& g : gens) {
            FMat y = fmul(f, x, g);
            if (seen.insert(y).second) {
                if (static_cast<long>(seen.size()) > limit) fail(Err::OutOfRange, "group closure exceeds the limit");
                todo.push_back(y);
            }
        }
    }
    return static_cast<long>(seen.size());
}

namespace {

template <class Visit>
void enumerate_masked(const FqField& f, int n, SubgroupTag tag, Visit&& visit) {
    const int size = 2 * n, q2 = f.size();
    if (size > 4) fail(Err::BadParams, "exhaustive group enumeration is limited to 4x4");
    long nvec = 1;
    for (int i = 0; i < size; ++i) nvec *= q2;
    // per-row candidates: isotropic vectors obeying the zero pattern and base-field condition of the tag
    std::vector<std::vector<std::array<FE, 6>>> cand(size);
    for (int r = 0; r < size; ++r)
        for (long code = 0; code < nvec; ++code) {
            std::array<FE, 6> v{};
            long c = code;
            for (int j = 0; j < size; ++j) {
                v[j] = static_cast<FE>(c % q2);
                c /= q2;
            }
            bool ok = true;
            for (int j = 0; j < size && ok; ++j) {
                if (v[j] == 0) continue;
                switch (tag) {
                    case SubgroupTag::U_p_G: {
                        static const int bad[4][4] = {{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 1, 0}};
                        ok = !bad[r][j];
                        break;
                    }
                    case SubgroupTag::Iprime_p:
                        ok = f.in_base(v[j]) && !(r >= n && j < n) && !(r < n && j < n && j > r);
                        break;
                    case SubgroupTag::Iwahori_p: {
                        static const int bad[4][4] = {{0, 1, 0, 0}, {0, 0, 0, 0}, {1, 1, 0, 0}, {1, 1, 1, 0}};
                        ok = f.in_base(v[j]) && !bad[r][j];
                        break;
                    }
                    case SubgroupTag::Gamma0: ok = !(r == 1 && j == 0); break;
                    case SubgroupTag::Gamma_upper0: ok = !(r == 0 && j == 1); break;
                    case SubgroupTag::Gamma0prime_F: ok = f.in_base(v[j]) && !(r == 1 && j == 0); break;
                    case SubgroupTag::K_p_G: break;
                    default: fail(Err::BadParams, std::string("no exhaustive enumeration for ") + tag_name(tag));
                }
            }
            if (ok && herm(f, v.data(), v.data(), size / 2) == 0) cand[r].push_back(v);
        }
    FMat g;
    g.n = size;
    for (int mu = 1; mu < f.p(); ++mu) {
        const FE m = f.make(mu);
        std::function<void(int)> rec = [&](int r) {
            if (r == size) {
                if (residue_member(f, g, tag)) visit(g);
                return;
            }
            for (const auto& v : cand[r]) {
                bool ok = true;
                for (int i = 0; i < r && ok; ++i) {
                    FE want = 0;
                    if (r == i + size / 2) want = m;
                    ok = herm(f, &g.a[i * size], v.data(), size / 2) == want;
                }
                if (!ok) continue;
                for (int j = 0; j < size; ++j) g(r, j) = v[j];
                rec(r + 1);
            }
        };
        rec(0);
    }
}

}  // namespace

long masked_group_order(const FqField& f, int n, SubgroupTag tag) {
    long count = 0;
    enumerate_masked(f, n, tag, [&](const FMat&) { ++count; });
    return count;
}

std::vector<FMat> masked_group_elements(const FqField& f, int n, SubgroupTag tag) {
    std::vector<FMat> out;
    enumerate_masked(f, n, tag, [&](const FMat& g) { out.push_back(g); });
    return out;
}

// ---- characters and section support ----

long default_inert_disc(long p) {
    for (long d = 1;; ++d)
        if (d % p != 0 && legendre(-d, p) == -1) return d;
}

Cyclo character_sum(long p, int exponent, bool include_identity, long d) {
    if (d == 0) d = default_inert_disc(p);
    const LocalCtx c = LocalCtx::make(Place::Inert, p, d);
    const CharSpec chi{p, d, exponent};
    Cyclo s(static_cast<int>(p + 1));
    if (include_identity) s = s + character_value(LocalElem::one(c), chi);
    for (long b = 0; b < p; ++b) s = s + character_value(LocalElem(c, b, 1), chi);
    return s;
}

Mat<QuadElem> center_matrix(Center c, long d) {
    if (c == Center::Q) return to_quad(const_Q(), d);
    return const_Omega(d);
}

namespace {

// affine solution set of M s = rhs over F_p: particular solution and kernel basis; false if inconsistent
bool solve_mod_p(std::vector<std::vector<int>> m, std::vector<int> rhs, int p, std::vector<int>& part,
                 std::vector<std::vector<int>>& kernel) {
    const int rows = static_cast<int>(m.size()), cols = static_cast<int>(m.empty() ? 0 : m[0].size());
    auto md = [p](long x) { return static_cast<int>(((x % p) + p) % p); };
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        std::swap(rhs[r], rhs[piv]);
        const int iv = static_cast<int>(powmod(m[r][c], p - 2, p));
        for (int& x : m[r]) x = md(static_cast<long>(x) * iv);
        rhs[r] = md(static_cast<long>(rhs[r]) * iv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const int t = m[i][c];
            for (int j = 0; j < cols; ++j) m[i][j] = md(m[i][j] - static_cast<long>(t) * m[r][j]);
            rhs[i] = md(rhs[i] - static_cast<long>(t) * rhs[r]);
        }
        pivcol.push_back(c);
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (rhs[i] != 0) return false;
    part.assign(cols, 0);
    for (int i = 0; i < r; ++i) part[pivcol[i]] = rhs[i];
    kernel.clear();
    for (int c = 0; c < cols; ++c) {
        if (std::find(pivcol.begin(), pivcol.end(), c) != pivcol.end()) continue;
        std::vector<int> z(cols, 0);
        z[c] = 1;
        for (int i = 0; i < r; ++i) z[pivcol[i]] = md(-m[i][c]);
        kernel.push_back(z);
    }
    return true;
}

}  // namespace

namespace {

// visits every y = c x c^-1 in the Siegel parabolic with x in the residue image of I'^H; stops when visit is false
void for_each_residue_parabolic(long p, long d, Center center,
                                const std::function<bool(const FqField&, const FMat&)>& visit) {
    if (p % 2 == 0 || !is_prime(p) || legendre(-d, p) != -1) fail(Err::BadParams, "p must be an odd prime inert for d");
    const FqField f(static_cast<int>(p), static_cast<int>(d), true);
    const FMat c = residue_matrix(f, center_matrix(center, d));
    const FMat ci = finverse(f, c);
    const int pi = static_cast<int>(p);

    // c x c^-1 lies in the Siegel parabolic iff x fixes the flag point W of c.
    // x runs over the residue image of I'^H, written m(A, mu) n(S) with A lower triangular and S
    // symmetric over F_p; for each m the admissible S form an affine space cut out by W.
    std::array<FE, 18> wrows{};
    for (int r = 0; r < 3; ++r)
        for (int j = 0; j < 6; ++j) wrows[r * 6 + j] = c(3 + r, j);
    const FlagKey w = rref_key(f, wrows, 3, 6);
    // annihilator of W: columns z with W z = 0
    std::vector<std::array<FE, 6>> ann;
    std::vector<int> pivs;
    for (int r = 0; r < 3; ++r)
        for (int j = 0; j < 6; ++j)
            if (w[r * 6 + j] != 0) {
                pivs.push_back(j);
                break;
            }
    for (int col = 0; col < 6; ++col) {
        if (std::find(pivs.begin(), pivs.end(), col) != pivs.end()) continue;
        std::array<FE, 6> z{};
        z[col] = 1;
        for (int r = 0; r < 3; ++r) z[pivs[r]] = f.neg(w[r * 6 + col]);
        ann.push_back(z);
    }
    // symmetric S coordinates
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) cells.emplace_back(i, j);

    for (int code = 0; code < pi * pi * pi * pi * pi * pi; ++code) {
        int t = code;
        int e[6];
        for (int& x : e) {
            x = t % pi;
            t /= pi;
        }
        if (e[0] == 0 || e[1] == 0 || e[2] == 0) continue;
        FMat a = FMat::identity(3);
        a(0, 0) = f.make(e[0]);
        a(1, 1) = f.make(e[1]);
        a(2, 2) = f.make(e[2]);
        a(1, 0) = f.make(e[3]);
        a(2, 0) = f.make(e[4]);
        a(2, 1) = f.make(e[5]);
        for (int mu = 1; mu < pi; ++mu) {
            const FMat m = levi(f, a, f.make(mu));
            // rows (X, Y) of W m; need (X, X S + Y) . z = 0 for z in ann
            std::array<FE, 18> xy{};
            for (int r = 0; r < 3; ++r)
                for (int k = 0; k < 6; ++k) {
                    FE acc = 0;
                    for (int j = 0; j < 6; ++j) acc = f.add(acc, f.mul(w[r * 6 + j], m(j, k)));
                    xy[r * 6 + k] = acc;
                }
            std::vector<std::vector<int>> eqs;
            std::vector<int> rhs;
            for (int r = 0; r < 3; ++r)
                for (const auto& z : ann) {
                    FE constant = 0;
                    for (int k = 0; k < 6; ++k) constant = f.add(constant, f.mul(xy[r * 6 + k], z[k]));
                    std::vector<FE> coef;
                    for (auto [i, j] : cells) {
                        FE cf = f.mul(xy[r * 6 + i], z[3 + j]);
                        if (i != j) cf = f.add(cf, f.mul(xy[r * 6 + j], z[3 + i]));
                        coef.push_back(cf);
                    }
                    std::vector<int> re_row, im_row;
                    for (FE cf : coef) {
                        re_row.push_back(f.re(cf));
                        im_row.push_back(f.im(cf));
                    }
                    eqs.push_back(re_row);
                    rhs.push_back(f.re(f.neg(constant)));
                    eqs.push_back(im_row);
                    rhs.push_back(f.im(f.neg(constant)));
                }
            std::vector<int> part;
            std::vector<std::vector<int>> kernel;
            if (!solve_mod_p(eqs, rhs, pi, part, kernel)) continue;
            long count = 1;
            for (size_t i = 0; i < kernel.size(); ++i) count *= pi;
            const FMat cm = fmul(f, c, m);
            for (long sc = 0; sc < count; ++sc) {
                std::vector<int> s = part;
                long q = sc;
                for (const auto& kv : kernel) {
                    const int coeff = static_cast<int>(q % pi);
                    q /= pi;
                    for (size_t u = 0; u < s.size(); ++u) s[u] = (s[u] + coeff * kv[u]) % pi;
                }
                FMat u = FMat::identity(6);
                for (size_t idx = 0; idx < cells.size(); ++idx) {
                    auto [i, j] = cells[idx];
                    u(i, 3 + j) = f.make(s[idx]);
                    u(j, 3 + i) = f.make(s[idx]);
                }
                const FMat y = fmul(f, fmul(f, cm, u), ci);
                for (int i = 3; i < 6; ++i)
                    for (int j = 0; j < 3; ++j)
                        if (y(i, j) != 0) fail(Err::Internal, "stabilizer solve produced a non-parabolic element");
                if (!visit(f, y)) return;
            }
        }
    }
}

}  // namespace

bool residue_support_check(long p, long d, Center center) {
    bool ok = true;
    for_each_residue_parabolic(p, d, center, [&](const FqField& f, const FMat& y) {
        FE det = 0;
        for (int s0 = 0; s0 < 3; ++s0) {
            const int s1 = (s0 + 1) % 3, s2 = (s0 + 2) % 3;
            det = f.add(det, f.mul(y(0, s0), f.sub(f.mul(y(1, s1), y(2, s2)), f.mul(y(1, s2), y(2, s1)))));
        }
        ok = f.in_base(det);
        return ok;
    });
    return ok;
}

std::vector<FMat> residue_parabolic_elements(long p, long d, Center center, size_t stride) {
    std::vector<FMat> out;
    size_t i = 0;
    for_each_residue_parabolic(p, d, center, [&](const FqField&, const FMat& y) {
        if (i++ % stride == 0) out.push_back(y);
        return true;
    });
    return out;
}

}  // namespace pv
