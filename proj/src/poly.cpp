#include "pv/poly.hpp"

#include <algorithm>

#include "pv/errors.hpp"

namespace pv {

namespace {
const char* kSymNames[kNumSyms] = {"Y", "R", "a", "b", "l"};
}

Mono mono(int y, int r, int a, int b, int l) { return {y, r, a, b, l}; }

Mono operator+(const Mono& a, const Mono& b) {
    Mono m;
    for (int i = 0; i < kNumSyms; ++i) m[i] = a[i] + b[i];
    return m;
}

Mono operator-(const Mono& a, const Mono& b) {
    Mono m;
    for (int i = 0; i < kNumSyms; ++i) m[i] = a[i] - b[i];
    return m;
}

std::string mono_str(const Mono& m) {
    std::string s;
    for (int i = 0; i < kNumSyms; ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += kSymNames[i];
        if (m[i] != 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

Poly::Poly(const Rat& c) {
    if (sgn(c) != 0) t_[Mono{}] = c;
}

Poly Poly::term(const Rat& c, const Mono& m) {
    Poly p;
    if (sgn(c) != 0) p.t_[m] = c;
    return p;
}

Poly Poly::sym(Sym s, int e) {
    Mono m{};
    m[s] = e;
    return term(1, m);
}

bool Poly::is_const() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == Mono{}); }

Rat Poly::coeff(const Mono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Mono& m, const Rat& c) {
    if (sgn(c) == 0) return;
    auto [it, fresh] = t_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (sgn(it->second) == 0) t_.erase(it);
    }
}

int Poly::min_exp(Sym s) const {
    if (t_.empty()) return 0;
    int v = kInfVal;
    for (const auto& [m, c] : t_) v = std::min(v, m[s]);
    return v;
}

int Poly::max_exp(Sym s) const {
    if (t_.empty()) return 0;
    int v = -kInfVal;
    for (const auto& [m, c] : t_) v = std::max(v, m[s]);
    return v;
}

Mono Poly::min_mono() const {
    Mono m{};
    for (int i = 0; i < kNumSyms; ++i) m[i] = min_exp(static_cast<Sym>(i));
    return m;
}

Poly Poly::shift(const Mono& s) const {
    Poly p;
    for (const auto& [m, c] : t_) p.t_.emplace_hint(p.t_.end(), m + s, c);
    return p;
}

Poly Poly::scale(const Rat& k) const {
    if (sgn(k) == 0) return {};
    Poly p;
    for (const auto& [m, c] : t_) p.t_.emplace_hint(p.t_.end(), m, c * k);
    return p;
}

Poly Poly::y_part(int e) const {
    Poly p;
    for (const auto& [m, c] : t_)
        if (m[SY] == e) p.t_.emplace_hint(p.t_.end(), m, c);
    return p;
}

Rat Poly::eval(const std::array<Rat, kNumSyms>& at) const {
    Rat s = 0;
    for (const auto& [m, c] : t_) {
        Rat v = c;
        for (int i = 0; i < kNumSyms; ++i)
            if (m[i] != 0) v *= pow(at[i], m[i]);
        s += v;
    }
    return s;
}

Poly Poly::subs(Sym s, const Rat& v) const {
    Poly p;
    for (const auto& [m, c] : t_) {
        Mono k = m;
        k[s] = 0;
        p.add_term(k, m[s] == 0 ? c : Rat(c * pow(v, m[s])));
    }
    return p;
}

Poly Poly::subs_mono(Sym s, const Mono& image) const {
    Poly p;
    for (const auto& [m, c] : t_) {
        Mono k = m;
        k[s] = 0;
        for (int i = 0; i < kNumSyms; ++i) k[i] += m[s] * image[i];
        p.add_term(k, c);
    }
    return p;
}

Poly Poly::reduce_lambda_sq() const {
    Poly p;
    for (const auto& [m, c] : t_) {
        Mono k = m;
        k[SL] = ((m[SL] % 2) + 2) % 2;
        p.add_term(k, c);
    }
    return p;
}

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : t_) {
        if (!s.empty()) s += (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) s += "-";
        Rat a = abs(c);
        bool unit_coef = a == 1;
        if (!unit_coef || m == Mono{}) s += a.get_str();
        if (m != Mono{}) s += (unit_coef ? "" : "*") + mono_str(m);
    }
    return s;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.t_) r.add_term(m, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.t_) r.add_term(m, -c);
    return r;
}

Poly operator-(const Poly& a) { return a.scale(-1); }

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) r.add_term(ma + mb, ca * cb);
    return r;
}

Poly pow(const Poly& p, int e) {
    if (e < 0) {
        if (p.terms().size() != 1) fail(Err::Internal, "negative power of a non-monomial");
        const auto& [m, c] = *p.terms().begin();
        Mono k{};
        for (int i = 0; i < kNumSyms; ++i) k[i] = m[i] * e;
        return Poly::term(pow(c, e), k);
    }
    Poly r = 1, b = p;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool exact_divide(const Poly& p, const Poly& d, Poly* quotient) {
    if (d.is_zero()) fail(Err::Internal, "division by zero polynomial");
    if (p.is_zero()) {
        *quotient = Poly();
        return true;
    }
    const Mono md = d.min_mono(), mp = p.min_mono();
    const Poly dd = d.shift(Mono{} - md);
    Poly r = p.shift(Mono{} - mp);
    const auto& [dlm, dlc] = *dd.terms().rbegin();
    Poly q;
    // single-divisor lex division: the principal ideal is its own Groebner basis
    for (long steps = 0; !r.is_zero(); ++steps) {
        if (steps > 2000000) fail(Err::Internal, "polynomial division did not terminate");
        const auto& [rlm, rlc] = *r.terms().rbegin();
        Mono e = rlm - dlm;
        for (int i = 0; i < kNumSyms; ++i)
            if (e[i] < 0) return false;
        Poly t = Poly::term(rlc / dlc, e);
        q = q + t;
        r = r - t * dd;
    }
    *quotient = q.shift(mp - md);
    return true;
}

static bool vanishes_rec(const Poly& p, int var) {
    if (p.is_zero()) return true;
    if (var == kNumSyms) return false;
    Sym s = static_cast<Sym>(var);
    int deg = p.max_exp(s) - p.min_exp(s);
    for (int k = 1; k <= deg + 1; ++k)
        if (!vanishes_rec(p.subs(s, k), var + 1)) return false;
    return true;
}

bool vanishes_on_degree_grid(const Poly& p) {
    // points 1..deg+1 are nonzero, so Laurent shifts do not affect vanishing
    return vanishes_rec(p, 0);
}

RatFunc::RatFunc(const Poly& num) : num_(num), den_(1) {}

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) { normalize(); }

void RatFunc::normalize() {
    if (den_.is_zero()) fail(Err::Internal, "rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    Poly q;
    if (!den_.is_const()) {
        if (exact_divide(num_, den_, &q)) {
            num_ = q;
            den_ = 1;
        } else if (exact_divide(den_, num_, &q)) {
            num_ = 1;
            den_ = q;
        }
    }
    Mono m = den_.min_mono();
    num_ = num_.shift(Mono{} - m);
    den_ = den_.shift(Mono{} - m);
    Rat lc = den_.terms().begin()->second;
    if (lc != 1) {
        Rat inv = 1 / lc;
        num_ = num_.scale(inv);
        den_ = den_.scale(inv);
    }
}

bool RatFunc::is_poly() const { return den_ == Poly(1); }

Rat RatFunc::eval(const std::array<Rat, kNumSyms>& at) const {
    Rat d = den_.eval(at);
    if (sgn(d) == 0) fail(Err::Internal, "evaluation at a pole");
    return num_.eval(at) / d;
}

RatFunc RatFunc::subs(Sym s, const Rat& v) const { return RatFunc(num_.subs(s, v), den_.subs(s, v)); }

RatFunc RatFunc::subs_mono(Sym s, const Mono& image) const {
    return RatFunc(num_.subs_mono(s, image), den_.subs_mono(s, image));
}

RatFunc RatFunc::reduce_lambda_sq() const { return RatFunc(num_.reduce_lambda_sq(), den_.reduce_lambda_sq()); }

Poly RatFunc::series(int order) const {
    const int e0 = den_.min_exp(SY);
    const Poly low = den_.y_part(e0);
    if (low.terms().size() != 1) fail(Err::NonConvergent, "lowest Y-part of denominator is not a monomial");
    const auto& [lm, lc] = *low.terms().begin();
    Poly out, r = num_;
    while (!r.is_zero()) {
        int e = r.min_exp(SY);
        if (e - e0 > order) break;
        Poly t;
        const Poly part = r.y_part(e);
        for (const auto& [m, c] : part.terms()) t.add_term(m - lm, c / lc);
        out = out + t;
        r = r - t * den_;
    }
    return out;
}

std::string RatFunc::str() const {
    if (is_poly()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    Poly q;
    if (exact_divide(b.den_, a.den_, &q)) return RatFunc(a.num_ * q + b.num_, b.den_);
    if (exact_divide(a.den_, b.den_, &q)) return RatFunc(a.num_ + b.num_ * q, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_, q;
    if (!bd.is_const() && exact_divide(an, bd, &q)) { an = q; bd = 1; }
    if (!ad.is_const() && exact_divide(bn, ad, &q)) { bn = q; ad = 1; }
    return RatFunc(an * bn, ad * bd);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) fail(Err::Internal, "division by zero rational function");
    return a * RatFunc(b.den_, b.num_);
}

bool ratfunc_eq(const RatFunc& a, const RatFunc& b) { return (a.num() * b.den() - b.num() * a.den()).is_zero(); }

RatFunc geometric_sum(const RatFunc& first, const Mono& ratio) {
    if (ratio[SY] <= 0) fail(Err::NonConvergent, "ratio " + mono_str(ratio) + " has no positive power of Y");
    return first / RatFunc(Poly(1) - Poly::term(1, ratio));
}

Poly symmetric_quotient(int m) {
    if (m < 0) fail(Err::OutOfRange, "symmetric quotient of negative index");
    Poly h;
    for (int i = 0; i < m; ++i) h.add_term(mono(0, 0, i, m - 1 - i), 1);
    Poly lhs = (Poly::sym(SA) - Poly::sym(SB)) * h;
    if (!(lhs == Poly::sym(SA, m) - Poly::sym(SB, m))) fail(Err::Internal, "symmetric quotient check failed");
    return h;
}

}  // namespace pv
