#include "pv/cyclo.hpp"

#include <map>
#include <mutex>

#include "pv/errors.hpp"

namespace pv {

int euler_phi(int n) {
    int r = n;
    for (long p : prime_factors(n)) r = r / p * (p - 1);
    return r;
}

// polynomial long division of integer polys (low degree first) by a monic divisor
static std::vector<Int> divide_monic(std::vector<Int> a, const std::vector<Int>& b) {
    size_t db = b.size() - 1;
    if (a.size() < b.size()) return {};
    std::vector<Int> q(a.size() - db, 0);
    for (size_t i = a.size(); i-- > db;) {
        Int c = a[i];
        if (c == 0) continue;
        q[i - db] = c;
        for (size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

const std::vector<Int>& cyclotomic_poly(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<Int>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    if (n < 1) fail(Err::BadParams, "cyclotomic order must be positive");
    std::vector<Int> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int k = 1; k < n; ++k)
        if (n % k == 0) num = divide_monic(num, cyclotomic_poly(k));
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(n, std::move(num)).first->second;
}

Cyclo::Cyclo(int order, const Rat& c) : n_(order) {
    if (order < 1) fail(Err::BadParams, "cyclotomic order must be positive");
    c_.assign(euler_phi(order), 0);
    c_[0] = c;
}

void Cyclo::reduce(std::vector<Rat> raw) {
    const auto& phi = cyclotomic_poly(n_);
    size_t deg = phi.size() - 1;
    for (size_t i = raw.size(); i-- > deg;) {
        if (sgn(raw[i]) == 0) continue;
        Rat c = raw[i];
        for (size_t j = 0; j <= deg; ++j) raw[i - deg + j] -= c * Rat(phi[j]);
    }
    raw.resize(deg, 0);
    c_ = std::move(raw);
}

Cyclo Cyclo::zeta(int order, long k) {
    Cyclo z(order);
    long e = ((k % order) + order) % order;
    std::vector<Rat> raw(std::max<size_t>(e + 1, z.c_.size()), 0);
    raw[e] = 1;
    z.reduce(std::move(raw));
    return z;
}

bool Cyclo::is_zero() const {
    for (const auto& c : c_)
        if (sgn(c) != 0) return false;
    return true;
}

bool Cyclo::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

Rat Cyclo::rational_value() const {
    if (!is_rational()) fail(Err::Internal, "cyclotomic value " + str() + " is not rational");
    return c_[0];
}

Cyclo Cyclo::conj() const {
    std::vector<Rat> raw(n_ + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) raw[i == 0 ? 0 : n_ - i] += c_[i];
    Cyclo r(n_);
    r.reduce(std::move(raw));
    return r;
}

Cyclo Cyclo::lift(int m) const {
    if (m % n_ != 0) fail(Err::BadParams, "cannot lift order " + std::to_string(n_) + " to " + std::to_string(m));
    int step = m / n_;
    std::vector<Rat> raw(static_cast<size_t>(step) * c_.size() + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) raw[i * step] = c_[i];
    Cyclo r(m);
    r.reduce(std::move(raw));
    return r;
}

std::string Cyclo::str() const {
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        if (!s.empty()) s += " + ";
        s += "(" + pv::str(c_[i]) + ")";
        if (i > 0) s += "*z" + std::to_string(n_) + "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

static int common_order(const Cyclo& a, const Cyclo& b) {
    if (a.order() != b.order()) fail(Err::RingMismatch, "cyclotomic orders differ");
    return a.order();
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    Cyclo r(common_order(a, b));
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    Cyclo r(common_order(a, b));
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    Cyclo r(common_order(a, b));
    std::vector<Rat> raw(a.c_.size() + b.c_.size(), 0);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) raw[i + j] += a.c_[i] * b.c_[j];
    }
    r.reduce(std::move(raw));
    return r;
}

bool operator==(const Cyclo& a, const Cyclo& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

}  // namespace pv
