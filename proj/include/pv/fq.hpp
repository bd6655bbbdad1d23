#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace pv {

// F_p or F_{p^2} = F_p[w]/(w^2 + d); element index a + p*b
class FqField {
public:
    using E = uint8_t;

    FqField(int p, int d, bool extension);

    int p() const { return p_; }
    int d() const { return d_; }
    bool extension() const { return ext_; }
    int size() const { return n_; }

    E zero() const { return 0; }
    E one() const { return 1; }
    E make(long a, long b = 0) const;
    int re(E x) const { return x % p_; }
    int im(E x) const { return x / p_; }
    E omega() const { return make(0, 1); }

    E add(E x, E y) const { return add_[x * n_ + y]; }
    E sub(E x, E y) const { return add_[x * n_ + neg_[y]]; }
    E neg(E x) const { return neg_[x]; }
    E mul(E x, E y) const { return mul_[x * n_ + y]; }
    E inv(E x) const;
    E conj(E x) const { return conj_[x]; }
    E norm(E x) const { return mul(x, conj(x)); }
    bool in_base(E x) const { return im(x) == 0; }

    // fixed generator of the multiplicative group (smallest index of full order)
    E generator() const { return gen_; }
    int dlog(E x) const;
    std::string str(E x) const;

private:
    int p_, d_, n_;
    bool ext_;
    std::vector<E> add_, mul_, neg_, inv_, conj_;
    std::vector<int> log_;
    E gen_ = 1;
};

}  // namespace pv
