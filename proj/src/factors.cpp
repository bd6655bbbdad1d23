#include "pv/factors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pv/errors.hpp"

namespace pv {

const char* euler_case_name(EulerCase c) {
    switch (c) {
        case EulerCase::Inert: return "inert";
        case EulerCase::Split: return "split";
        case EulerCase::Ramified: return "ramified";
        case EulerCase::SteinbergS3: return "steinberg_S3";
    }
    return "?";
}

Mono q_power(const LocalArg& arg) {
    const Rat twice = 2 * arg.b;
    if (twice.get_den() != 1) fail(Err::BadParams, "argument shift must be a half-integer");
    return mono(arg.a, arg.a - static_cast<int>(twice.get_num().get_si()));
}

namespace {

Poly one_minus(const Poly& t) { return Poly(1) - t; }

RatFunc apply_params(RatFunc f, const FactorParams& p) {
    if (p.alpha) f = f.subs(SA, *p.alpha);
    if (p.beta) f = f.subs(SB, *p.beta);
    if (p.lambda) f = f.subs(SL, *p.lambda);
    return f;
}

}  // namespace

EulerFactor euler_factor(long q, EulerCase c, LocalArg arg, const FactorParams& params) {
    if (!is_prime(q)) fail(Err::BadParams, "q must be prime");
    const Poly x = Poly::term(1, q_power(arg));
    const Poly a = Poly::sym(SA), b = Poly::sym(SB), l = Poly::sym(SL), li = Poly::sym(SL, -1);
    Poly den;
    switch (c) {
        case EulerCase::Inert: den = one_minus(a * a * x * x) * one_minus(b * b * x * x); break;
        case EulerCase::Ramified: den = one_minus(a * l * x) * one_minus(b * l * x); break;
        case EulerCase::Split:
            den = one_minus(a * l * x) * one_minus(b * l * x) * one_minus(a * li * x) * one_minus(b * li * x);
            break;
        case EulerCase::SteinbergS3:
            den = one_minus(Poly::term(1, q_power({2 * arg.a, 2 * arg.b + 1})));
            break;
        default: fail(Err::BadCase, "unknown Euler case");
    }
    return {q, c, arg, apply_params(RatFunc(Poly(1), den), params)};
}

RatFunc dirichlet_factor(int chi_q, LocalArg arg) {
    if (chi_q < -1 || chi_q > 1) fail(Err::BadParams, "character value must be -1, 0 or 1");
    return RatFunc(Poly(1), one_minus(Poly::term(Rat(chi_q), q_power(arg))));
}

RatFunc lfactor_quotient(EulerCase c) {
    const RatFunc l = euler_factor(3, c, {3, 1}).value;
    if (c == EulerCase::SteinbergS3) return l;
    const int chi = c == EulerCase::Inert ? -1 : (c == EulerCase::Split ? 1 : 0);
    return l / (dirichlet_factor(chi, {6, 2}) * dirichlet_factor(1, {6, 3}));
}

long field_discriminant(long d) {
    if (d <= 0) fail(Err::BadParams, "d must be positive");
    for (long p : prime_factors(d))
        if ((d / p) % p == 0) fail(Err::BadParams, "d must be squarefree");
    return ((-d) % 4 + 4) % 4 == 1 ? -d : -4 * d;
}

int kronecker(long a, long n) {
    if (n == 2) {
        if (a % 2 == 0) return 0;
        const long r = ((a % 8) + 8) % 8;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    return legendre(a, n);
}

EulerCase prime_behaviour(long q, long d) {
    const int k = kronecker(field_discriminant(d), q);
    return k == 0 ? EulerCase::Ramified : (k == 1 ? EulerCase::Split : EulerCase::Inert);
}

double eval_double(const RatFunc& f, const std::array<double, kNumSyms>& at) {
    auto ev = [&](const Poly& p) {
        double s = 0;
        for (const auto& [m, c] : p.terms()) {
            double v = c.get_d();
            for (int i = 0; i < kNumSyms; ++i)
                if (m[i] != 0) v *= std::pow(at[i], m[i]);
            s += v;
        }
        return s;
    };
    return ev(f.num()) / ev(f.den());
}

// ---- period tokens ----

PeriodToken& PeriodToken::operator*=(const PeriodToken& o) {
    coeff *= o.coeff;
    pi_exp += o.pi_exp;
    sqrtd_exp += o.sqrtd_exp;
    for (const auto& [k, e] : o.tokens) {
        int& slot = tokens[k];
        slot += e;
        if (slot == 0) tokens.erase(k);
    }
    return *this;
}

PeriodToken operator*(PeriodToken a, const PeriodToken& b) { return a *= b; }

PeriodToken PeriodToken::inverse() const {
    if (sgn(coeff) == 0) fail(Err::OutOfRange, "inverse of a zero period");
    PeriodToken t;
    t.coeff = 1 / coeff;
    t.pi_exp = -pi_exp;
    t.sqrtd_exp = -sqrtd_exp;
    for (const auto& [k, e] : tokens) t.tokens[k] = -e;
    return t;
}

PeriodToken PeriodToken::pow(int e) const {
    PeriodToken out;
    const PeriodToken base = e >= 0 ? *this : inverse();
    for (int i = 0; i < std::abs(e); ++i) out *= base;
    return out;
}

bool PeriodToken::similar(const PeriodToken& o) const {
    return sgn(coeff) != 0 && sgn(o.coeff) != 0 && pi_exp == o.pi_exp &&
           ((sqrtd_exp - o.sqrtd_exp) % 2 == 0) && tokens == o.tokens;
}

std::string PeriodToken::str() const {
    std::ostringstream os;
    os << pv::str(coeff) << " * pi^" << pv::str(pi_exp);
    if (sqrtd_exp != 0) os << " * sqrt(d)^" << sqrtd_exp;
    for (const auto& [k, e] : tokens) os << " * " << k << "^" << e;
    return os.str();
}

// ---- assembly ----

long sigma1(long A) {
    long s = 1;
    for (long p : prime_factors(A)) s *= p + 1;
    return s;
}

long q_constant(long A) {
    long s = 1;
    for (long p : prime_factors(A)) s *= 1 - p;
    return s;
}

namespace {

bool squarefree_odd(long n) {
    if (n <= 0 || n % 2 == 0) return false;
    for (long p : prime_factors(n))
        if ((n / p) % p == 0) return false;
    return true;
}

Constituent make(ConstKind k, std::string label, int power, Rat a = 0, Rat b = 0) {
    Constituent c;
    c.kind = k;
    c.label = std::move(label);
    c.power = power;
    c.a = a;
    c.b = b;
    return c;
}

Constituent constant(std::string label, const Rat& v, int power) {
    Constituent c = make(ConstKind::Constant, std::move(label), power);
    c.value = v;
    return c;
}

bool contains(const std::vector<long>& v, long x) { return std::find(v.begin(), v.end(), x) != v.end(); }

std::string key(const Constituent& c) {
    std::ostringstream os;
    os << static_cast<int>(c.kind) << '|' << c.label << '|' << str(c.a) << '|' << str(c.b) << '|' << str(c.value)
       << '|' << c.base << '|' << c.sign;
    for (long p : c.excluded) os << ',' << p;
    return os.str();
}

std::vector<Constituent> cancel(const std::vector<Constituent>& in) {
    std::map<std::string, std::pair<int, Constituent>> acc;
    std::vector<std::string> order;
    for (const auto& c : in) {
        auto k = key(c);
        auto it = acc.find(k);
        if (it == acc.end()) {
            acc.emplace(k, std::make_pair(c.power, c));
            order.push_back(k);
        } else {
            it->second.first += c.power;
        }
    }
    std::vector<Constituent> out;
    for (const auto& k : order) {
        auto [p, c] = acc.at(k);
        if (p == 0) continue;
        c.power = p;
        out.push_back(c);
    }
    return out;
}

}  // namespace

FactorAssembly assemble_A(long M, long N, int ell, int prime_bound, long d, const LevelParams& lp) {
    if (!squarefree_odd(M) || !squarefree_odd(N)) fail(Err::BadLevel, "M and N must be odd and squarefree");
    if (ell < 6 || ell % 2 != 0) fail(Err::BadLevel, "weight must be even and at least 6");
    if (prime_bound < 2) fail(Err::BadParams, "prime bound below 2");
    FactorAssembly fa;
    fa.M = M;
    fa.N = N;
    fa.ell = ell;
    fa.prime_bound = prime_bound;
    const long f = std::gcd(M, N);
    for (long p : prime_factors(M)) (N % p == 0 ? fa.S2 : fa.S1).push_back(p);
    for (long p : prime_factors(N))
        if (M % p != 0) fa.S3.push_back(p);
    std::vector<long> S = fa.S1;
    S.insert(S.end(), fa.S2.begin(), fa.S2.end());
    S.insert(S.end(), fa.S3.begin(), fa.S3.end());
    std::sort(S.begin(), S.end());
    auto all_inert = [&](long dd) {
        for (long p : S)
            if (dd % p == 0 || legendre(-dd, p) != -1) return false;
        return true;
    };
    if (d == 0) {
        for (d = 1;; ++d) {
            bool sf = true;
            for (long p : prime_factors(d))
                if ((d / p) % p == 0) sf = false;
            if (sf && all_inert(d)) break;
        }
    } else if (!all_inert(d)) {
        fail(Err::BadLevel, "every prime dividing MN must be inert in Q(sqrt(-" + std::to_string(d) + "))");
    }
    fa.d = d;
    const long D = field_discriminant(d);
    const auto primes = primes_up_to(prime_bound);

    Constituent lsig = make(ConstKind::EulerProduct, "L(3s+1,sigma x rho(Lambda))", 1, 3, 1);
    lsig.excluded = prime_factors(M);
    for (long q : primes) {
        if (M % q == 0) continue;
        lsig.truncated.push_back(
            euler_factor(q, contains(fa.S3, q) ? EulerCase::SteinbergS3 : prime_behaviour(q, d), {3, 1}));
    }

    // B(s)
    fa.B.push_back(constant("(-1)^(ell/2)", (ell / 2) % 2 == 0 ? 1 : -1, 1));
    {
        Constituent two = make(ConstKind::BasePower, "2^(-6s-1)", 1, -6, -1);
        two.base = 2;
        fa.B.push_back(two);
    }
    fa.B.push_back(make(ConstKind::PiPower, "pi", 1, 0, 1));
    fa.B.push_back(make(ConstKind::Linear, "6s+ell-1", -1, 6, ell - 1));
    fa.B.push_back(lsig);
    fa.B.push_back(constant("sigma1(M)^2 sigma1(N/gcd(M,N))", Rat(sigma1(M) * sigma1(M) * sigma1(N / f)), -1));
    fa.B.push_back(make(ConstKind::Token, "P_S3", -1));
    {
        Constituent l = make(ConstKind::PartialL, "L^S(6s+2,chi_-D)", -1, 6, 2);
        l.excluded = S;
        for (long q : primes)
            if (!contains(S, q) && D % q != 0)
                l.truncated.push_back({q, prime_behaviour(q, d), {6, 2}, dirichlet_factor(kronecker(D, q), {6, 2})});
        fa.B.push_back(l);
        Constituent z = make(ConstKind::PartialZeta, "zeta^S(6s+3)", -1, 6, 3);
        z.excluded = S;
        for (long q : primes)
            if (!contains(S, q)) z.truncated.push_back({q, prime_behaviour(q, d), {6, 3}, dirichlet_factor(1, {6, 3})});
        fa.B.push_back(z);
    }

    // C(s)
    fa.C.push_back(constant("Q_f", Rat(q_constant(f)), 1));
    fa.C.push_back(make(ConstKind::PiPower, "pi", 1, 0, 1));
    fa.C.push_back(make(ConstKind::Token, "conj(a(Lambda))", 1));
    {
        const Rat sh = rat(3, 2) - rat(3 * ell, 2);
        Constituent four = make(ConstKind::BasePower, "4^(-3s-3ell/2+3/2)", 1, -3, sh);
        four.base = 4;
        fa.C.push_back(four);
        fa.C.push_back(make(ConstKind::PiPower, "pi^(-3s-3ell/2+3/2)", 1, -3, sh));
        Constituent dd = make(ConstKind::DiscPower, "d^(-3s-ell/2)", 1, -3, rat(-ell, 2));
        dd.base = d;
        fa.C.push_back(dd);
        fa.C.push_back(make(ConstKind::Gamma, "Gamma(3s+3ell/2-3/2)", 1, 3, -sh));
    }
    fa.C.push_back(constant("sigma1(M/f)", Rat(sigma1(M / f)), -1));
    fa.C.push_back(make(ConstKind::Token, "P_MN", -1));
    fa.C.push_back(make(ConstKind::Linear, "6s+ell-1", -1, 6, ell - 1));
    {
        Constituent z = make(ConstKind::PartialZeta, "zeta^MN(6s+1)", -1, 6, 1);
        z.excluded = prime_factors(M * N / f);
        for (long q : primes)
            if ((M * N) % q != 0) z.truncated.push_back({q, prime_behaviour(q, d), {6, 1}, dirichlet_factor(1, {6, 1})});
        fa.C.push_back(z);
    }
    Constituent lsig_c = lsig;
    lsig_c.power = -1;
    fa.C.push_back(lsig_c);
    for (long p : prime_factors(f)) {
        Constituent pw = make(ConstKind::LocalPower, "p^(-6s-3)", 1, 6, 3);
        pw.base = p;
        fa.C.push_back(pw);
        Constituent g = make(ConstKind::LocalGeometric, "(1-a_p w_p p^(-3s-3/2))^-1", 1, 3, rat(3, 2));
        g.base = p;
        auto it = lp.ap_wp.find(p);
        g.sign = it == lp.ap_wp.end() ? 1 : it->second;
        if (g.sign != 1 && g.sign != -1) fail(Err::BadParams, "a_p w_p must be +1 or -1");
        fa.C.push_back(g);
    }

    std::vector<Constituent> both = fa.B;
    both.insert(both.end(), fa.C.begin(), fa.C.end());
    fa.A = cancel(both);
    return fa;
}

std::vector<Constituent> rederive_A(const FactorAssembly& fa) {
    // A(s) written out in one pass: L(3s+1, sigma x rho) cancels between B and C
    const long f = std::gcd(fa.M, fa.N);
    const int ell = fa.ell;
    std::vector<Constituent> out;
    out.push_back(constant("(-1)^(ell/2)", (ell / 2) % 2 == 0 ? 1 : -1, 1));
    Constituent two = make(ConstKind::BasePower, "2^(-6s-1)", 1, -6, -1);
    two.base = 2;
    out.push_back(two);
    Constituent pi = make(ConstKind::PiPower, "pi", 2, 0, 1);
    out.push_back(pi);
    out.push_back(make(ConstKind::Linear, "6s+ell-1", -2, 6, ell - 1));
    out.push_back(constant("sigma1(M)^2 sigma1(N/gcd(M,N))", Rat(sigma1(fa.M) * sigma1(fa.M) * sigma1(fa.N / f)), -1));
    out.push_back(make(ConstKind::Token, "P_S3", -1));
    std::vector<long> S;
    for (auto* v : {&fa.S1, &fa.S2, &fa.S3}) S.insert(S.end(), v->begin(), v->end());
    std::sort(S.begin(), S.end());
    Constituent l = make(ConstKind::PartialL, "L^S(6s+2,chi_-D)", -1, 6, 2);
    l.excluded = S;
    out.push_back(l);
    Constituent z = make(ConstKind::PartialZeta, "zeta^S(6s+3)", -1, 6, 3);
    z.excluded = S;
    out.push_back(z);
    out.push_back(constant("Q_f", Rat(q_constant(f)), 1));
    out.push_back(make(ConstKind::Token, "conj(a(Lambda))", 1));
    const Rat sh = rat(3, 2) - rat(3 * ell, 2);
    Constituent four = make(ConstKind::BasePower, "4^(-3s-3ell/2+3/2)", 1, -3, sh);
    four.base = 4;
    out.push_back(four);
    out.push_back(make(ConstKind::PiPower, "pi^(-3s-3ell/2+3/2)", 1, -3, sh));
    Constituent dd = make(ConstKind::DiscPower, "d^(-3s-ell/2)", 1, -3, rat(-ell, 2));
    dd.base = fa.d;
    out.push_back(dd);
    out.push_back(make(ConstKind::Gamma, "Gamma(3s+3ell/2-3/2)", 1, 3, -sh));
    out.push_back(constant("sigma1(M/f)", Rat(sigma1(fa.M / f)), -1));
    out.push_back(make(ConstKind::Token, "P_MN", -1));
    Constituent zmn = make(ConstKind::PartialZeta, "zeta^MN(6s+1)", -1, 6, 1);
    zmn.excluded = prime_factors(fa.M * fa.N / f);
    out.push_back(zmn);
    for (long p : prime_factors(f)) {
        Constituent pw = make(ConstKind::LocalPower, "p^(-6s-3)", 1, 6, 3);
        pw.base = p;
        out.push_back(pw);
        Constituent g = make(ConstKind::LocalGeometric, "(1-a_p w_p p^(-3s-3/2))^-1", 1, 3, rat(3, 2));
        g.base = p;
        out.push_back(g);
    }
    return out;
}

bool same_constituents(const std::vector<Constituent>& x, const std::vector<Constituent>& y) {
    // compare as formal products: total power per constituent key, signs of local factors ignored
    auto tally = [](const std::vector<Constituent>& v) {
        std::map<std::string, int> t;
        for (auto c : v) {
            c.sign = 1;
            t[key(c)] += c.power;
        }
        std::erase_if(t, [](const auto& kv) { return kv.second == 0; });
        return t;
    };
    return tally(x) == tally(y);
}

PoleInventory pole_inventory(const FactorAssembly& fa) {
    PoleInventory inv;
    auto add = [&](PoleZero pz) {
        pz.in_right_half = pz.point ? sgn(pz.re_s) >= 0 : sgn(pz.re_s) > 0;
        if (pz.in_right_half) {
            if (pz.declared)
                inv.findings.push_back(pz);
            else
                inv.explicit_clear = false;
        }
        inv.items.push_back(pz);
    };
    for (const auto& c : fa.A) {
        const bool num = c.power > 0;
        switch (c.kind) {
            case ConstKind::Constant:
            case ConstKind::Token:
            case ConstKind::PiPower:
            case ConstKind::BasePower:
            case ConstKind::DiscPower:
            case ConstKind::LocalPower:
                break;  // entire and zero-free
            case ConstKind::Linear:
                add({c.label, !num, true, -c.b / c.a, false, false, "root of the linear factor"});
                break;
            case ConstKind::Gamma:
                add({c.label, num, true, -c.b / c.a, false, false, "rightmost Gamma pole (argument 0)"});
                break;
            case ConstKind::LocalGeometric:
                add({c.label + " at p=" + std::to_string(c.base), num, true, -c.b / c.a, false, false,
                     "line where |p^(-(as+b))| = 1"});
                break;
            case ConstKind::PartialZeta:
                add({c.label, num, true, (1 - c.b) / c.a, true, false,
                     "pole of zeta at argument 1 survives removal of finitely many Euler factors"});
                add({c.label, !num, false, (1 - c.b) / c.a, true, false, "zeros of zeta lie in Re(argument) < 1"});
                break;
            case ConstKind::PartialL:
                add({c.label, !num, false, (1 - c.b) / c.a, true, false,
                     "zeros of L(chi) lie in Re(argument) < 1; entire for nontrivial chi"});
                break;
            case ConstKind::EulerProduct:
                add({c.label, num, false, (rat(3, 2) - c.b) / c.a, true, false,
                     "absolutely convergent for Re(argument) > 3/2"});
                break;
        }
    }
    return inv;
}

namespace {

Rat factorial(long n) {
    Rat f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

bool perfect_square(long n, long* root) {
    if (n < 0) return false;
    long r = std::lround(std::sqrt(static_cast<double>(n)));
    for (long t = std::max(0L, r - 1); t <= r + 1; ++t)
        if (t * t == n) {
            *root = t;
            return true;
        }
    return false;
}

long as_long(const Rat& x) {
    if (x.get_den() != 1) fail(Err::OutOfRange, "expected an integer, got " + str(x));
    return x.get_num().get_si();
}

PeriodToken period_one(const Constituent& c, const Rat& s) {
    PeriodToken t;
    const Rat arg = c.a * s + c.b;
    switch (c.kind) {
        case ConstKind::Constant: t.coeff = c.value; break;
        case ConstKind::Token: t.tokens[c.label] = 1; break;
        case ConstKind::PiPower: t.pi_exp = arg; break;
        case ConstKind::BasePower: {
            if (arg.get_den() == 1) {
                t.coeff = pow(Rat(c.base), static_cast<int>(as_long(arg)));
            } else {
                long root = 0;
                if (arg.get_den() != 2 || !perfect_square(c.base, &root))
                    fail(Err::OutOfRange, "irrational power " + std::to_string(c.base) + "^" + str(arg));
                t.coeff = pow(Rat(root), static_cast<int>(as_long(2 * arg)));
            }
            break;
        }
        case ConstKind::DiscPower: {
            const long twice = as_long(2 * arg);
            t.coeff = pow(Rat(c.base), static_cast<int>(twice >= 0 ? twice / 2 : -((-twice + 1) / 2)));
            t.sqrtd_exp = static_cast<int>(twice % 2 == 0 ? 0 : 1);
            break;
        }
        case ConstKind::Gamma: {
            if (arg.get_den() == 1) {
                const long n = as_long(arg);
                if (n <= 0) fail(Err::OutOfRange, "Gamma pole at " + str(arg));
                t.coeff = factorial(n - 1);
            } else if (arg.get_den() == 2) {
                // Gamma(n + 1/2) = (2n)!/(4^n n!) sqrt(pi); Gamma(1/2 - n) = (-4)^n n!/(2n)! sqrt(pi)
                const long n2 = as_long(2 * arg);
                if (n2 > 0) {
                    const long n = (n2 - 1) / 2;
                    t.coeff = factorial(2 * n) / (pow(Rat(4), static_cast<int>(n)) * factorial(n));
                } else {
                    const long n = (1 - n2) / 2;
                    t.coeff = pow(Rat(-4), static_cast<int>(n)) * factorial(n) / factorial(2 * n);
                }
                t.pi_exp = rat(1, 2);
            } else {
                fail(Err::OutOfRange, "Gamma at a non-half-integer " + str(arg));
            }
            break;
        }
        case ConstKind::Linear:
            if (sgn(arg) == 0) fail(Err::OutOfRange, c.label + " vanishes at s = " + str(s));
            t.coeff = arg;
            break;
        case ConstKind::LocalPower:
            t.coeff = pow(Rat(c.base), -static_cast<int>(as_long(arg)));
            break;
        case ConstKind::LocalGeometric: {
            const Rat x = pow(Rat(c.base), -static_cast<int>(as_long(arg)));
            const Rat den = 1 - Rat(c.sign) * x;
            if (sgn(den) == 0) fail(Err::OutOfRange, "local factor pole");
            t.coeff = 1 / den;
            break;
        }
        case ConstKind::PartialZeta: {
            const long n = as_long(arg);
            if (n == 1) fail(Err::OutOfRange, "zeta pole");
            if (n >= 2 && n % 2 == 0)
                t.pi_exp = n;  // zeta(n)/pi^n rational, removed Euler factors rational
            else
                t.tokens["zeta(" + std::to_string(n) + ")"] = 1;
            break;
        }
        case ConstKind::PartialL: {
            const long n = as_long(arg);
            if (n >= 1 && n % 2 == 1) {
                t.pi_exp = n;
                t.sqrtd_exp = 1;
            } else {
                t.tokens["L(" + std::to_string(n) + ",chi)"] = 1;
            }
            break;
        }
        case ConstKind::EulerProduct: t.tokens[c.label] = 1; break;
    }
    return t;
}

}  // namespace

PeriodToken period_at(const std::vector<Constituent>& cs, const Rat& s) {
    PeriodToken out;
    for (const auto& c : cs) out *= period_one(c, s).pow(c.power);
    out.sqrtd_exp = ((out.sqrtd_exp % 2) + 2) % 2;
    return out;
}

PiExponent pi_exponent(int ell, int k) {
    if (ell < 6 || ell % 2 != 0) fail(Err::OutOfRange, "ell must be even and at least 6");
    if (k < 1 || k > ell / 2 - 2) fail(Err::OutOfRange, "k must satisfy 1 <= k <= ell/2 - 2");
    const FactorAssembly fa = assemble_A(3, 5, ell);
    PiExponent out;
    out.value = period_at(fa.A, rat(ell - 1 - 2 * k, 6));
    out.computed = out.value.pi_exp;
    out.expected = 7 * k + 1 - 5 * ell;
    out.main_exp = 5 * ell - 4 * k - 4;
    return out;
}

}  // namespace pv
