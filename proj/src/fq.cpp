#include "pv/fq.hpp"

#include "pv/errors.hpp"
#include "pv/rat.hpp"

namespace pv {

FqField::FqField(int p, int d, bool extension) : p_(p), d_(d), ext_(extension) {
    if (p < 3 || !is_prime(p)) fail(Err::BadParams, "p = " + std::to_string(p) + " must be an odd prime");
    if (ext_ && legendre(-d, p) != -1)
        fail(Err::BadParams, "-" + std::to_string(d) + " is not a non-residue mod " + std::to_string(p));
    n_ = ext_ ? p * p : p;
    if (n_ > 256) fail(Err::BadParams, "field too large for table arithmetic");
    add_.resize(n_ * n_);
    mul_.resize(n_ * n_);
    neg_.resize(n_);
    conj_.resize(n_);
    inv_.assign(n_, 0);
    auto md = [p](long v) { return static_cast<int>(((v % p) + p) % p); };
    for (int x = 0; x < n_; ++x) {
        int a1 = x % p, b1 = x / p;
        neg_[x] = static_cast<E>(md(-a1) + p * md(-b1));
        conj_[x] = static_cast<E>(a1 + p * md(-b1));
        for (int y = 0; y < n_; ++y) {
            int a2 = y % p, b2 = y / p;
            add_[x * n_ + y] = static_cast<E>(md(a1 + a2) + p * md(b1 + b2));
            long re = static_cast<long>(a1) * a2 - static_cast<long>(d_) * b1 * b2;
            long im = static_cast<long>(a1) * b2 + static_cast<long>(a2) * b1;
            mul_[x * n_ + y] = static_cast<E>(md(re) + p * md(im));
        }
    }
    for (int x = 1; x < n_; ++x)
        for (int y = 1; y < n_; ++y)
            if (mul_[x * n_ + y] == 1) inv_[x] = static_cast<E>(y);
    for (int g = 1; g < n_; ++g) {
        int order = 1;
        E t = static_cast<E>(g);
        while (t != 1) {
            t = mul(t, static_cast<E>(g));
            ++order;
        }
        if (order == n_ - 1) {
            gen_ = static_cast<E>(g);
            break;
        }
    }
    log_.assign(n_, -1);
    E t = 1;
    for (int k = 0; k < n_ - 1; ++k) {
        log_[t] = k;
        t = mul(t, gen_);
    }
}

FqField::E FqField::make(long a, long b) const {
    long aa = ((a % p_) + p_) % p_;
    long bb = ((b % p_) + p_) % p_;
    if (!ext_ && bb != 0) fail(Err::BadParams, "prime field element with imaginary part");
    return static_cast<E>(aa + p_ * bb);
}

FqField::E FqField::inv(E x) const {
    if (x == 0) fail(Err::NotUnit, "inverse of zero in F_q");
    return inv_[x];
}

int FqField::dlog(E x) const {
    if (x == 0) fail(Err::NotUnit, "discrete log of zero");
    return log_[x];
}

std::string FqField::str(E x) const {
    int a = re(x), b = im(x);
    if (b == 0) return std::to_string(a);
    return std::to_string(a) + "+" + std::to_string(b) + "w";
}

}  // namespace pv
