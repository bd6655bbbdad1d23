#pragma once
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "pv/errors.hpp"
#include "pv/local.hpp"

namespace pv {

using Cplx = std::complex<double>;

// ring helpers: every entry type supplies zero/one "like" a sample, conjugation and unit tests
inline Rat zero_like(const Rat&) { return 0; }
inline Rat one_like(const Rat&) { return 1; }
inline Rat conj_of(const Rat& x) { return x; }
inline bool is_zero_of(const Rat& x) { return sgn(x) == 0; }
inline bool invertible_of(const Rat& x) { return sgn(x) != 0; }
inline Rat inv_of(const Rat& x) { return 1 / x; }
inline std::string str_of(const Rat& x) { return x.get_str(); }

inline QuadElem zero_like(const QuadElem& x) { return {0, 0, x.d}; }
inline QuadElem one_like(const QuadElem& x) { return {1, 0, x.d}; }
inline QuadElem conj_of(const QuadElem& x) { return x.conj(); }
inline bool is_zero_of(const QuadElem& x) { return x.is_zero(); }
inline bool invertible_of(const QuadElem& x) { return !x.is_zero(); }
inline QuadElem inv_of(const QuadElem& x) { return x.inv(); }
inline std::string str_of(const QuadElem& x) { return x.str(); }

inline LocalElem zero_like(const LocalElem& x) { return LocalElem::zero(x.ctx); }
inline LocalElem one_like(const LocalElem& x) { return LocalElem::one(x.ctx); }
inline LocalElem conj_of(const LocalElem& x) { return x.conj(); }
inline bool is_zero_of(const LocalElem& x) { return x.is_zero(); }
inline bool invertible_of(const LocalElem& x) {
    return x.ctx.kind == Place::Split ? (sgn(x.x) != 0 && sgn(x.y) != 0) : !x.is_zero();
}
inline LocalElem inv_of(const LocalElem& x) { return x.inv(); }
inline std::string str_of(const LocalElem& x) { return x.str(); }

inline Cplx zero_like(const Cplx&) { return 0.0; }
inline Cplx one_like(const Cplx&) { return 1.0; }
inline Cplx conj_of(const Cplx& x) { return std::conj(x); }
inline bool is_zero_of(const Cplx& x) { return x == 0.0; }
inline bool invertible_of(const Cplx& x) { return std::abs(x) > 1e-300; }
inline Cplx inv_of(const Cplx& x) { return 1.0 / x; }
inline std::string str_of(const Cplx& x) {
    return "(" + std::to_string(x.real()) + "," + std::to_string(x.imag()) + ")";
}

template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int r, int c, const T& fill) : r_(r), c_(c), a_(static_cast<size_t>(r) * c, fill) {}

    static Mat identity(int n, const T& like) {
        Mat m(n, n, zero_like(like));
        for (int i = 0; i < n; ++i) m(i, i) = one_like(like);
        return m;
    }
    static Mat diag(const std::vector<T>& d) {
        Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()), zero_like(d.at(0)));
        for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }
    const T& like() const { return a_.at(0); }

    Mat block(int i0, int j0, int nr, int nc) const {
        Mat m(nr, nc, zero_like(like()));
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
        return m;
    }
    void set_block(int i0, int j0, const Mat& b) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    Mat transpose() const {
        Mat m(c_, r_, zero_like(like()));
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    Mat conj() const {
        Mat m = *this;
        for (auto& x : m.a_) x = conj_of(x);
        return m;
    }
    Mat conj_transpose() const { return conj().transpose(); }

    template <class F>
    auto map(F f) const -> Mat<decltype(f(std::declval<T>()))> {
        using U = decltype(f(std::declval<T>()));
        Mat<U> m(r_, c_, f(a_.at(0)));
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
        return m;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!is_zero_of(x)) return false;
        return true;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < r_; ++i) {
            s += i ? "; " : "";
            for (int j = 0; j < c_; ++j) s += (j ? ", " : "") + str_of((*this)(i, j));
        }
        return s + "]";
    }

    friend Mat operator+(const Mat& x, const Mat& y) {
        check_same(x, y);
        Mat m = x;
        for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = x.a_[k] + y.a_[k];
        return m;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        check_same(x, y);
        Mat m = x;
        for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = x.a_[k] - y.a_[k];
        return m;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.c_ != y.r_) fail(Err::Internal, "matrix shape mismatch in product");
        Mat m(x.r_, y.c_, zero_like(x.like()));
        for (int i = 0; i < x.r_; ++i)
            for (int k = 0; k < x.c_; ++k) {
                const T& a = x(i, k);
                if (is_zero_of(a)) continue;
                for (int j = 0; j < y.c_; ++j) m(i, j) = m(i, j) + a * y(k, j);
            }
        return m;
    }
    friend Mat operator*(const T& s, const Mat& y) {
        Mat m = y;
        for (auto& x : m.a_) x = s * x;
        return m;
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<T> a_;

    static void check_same(const Mat& x, const Mat& y) {
        if (x.r_ != y.r_ || x.c_ != y.c_) fail(Err::Internal, "matrix shape mismatch");
    }
};

// Gauss-Jordan over a field-like ring; pivots must be invertible entries
template <class T>
Mat<T> inverse_gj(const Mat<T>& m) {
    const int n = m.rows();
    if (n != m.cols()) fail(Err::Internal, "inverse of a non-square matrix");
    Mat<T> a = m, b = Mat<T>::identity(n, m.like());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (invertible_of(a(r, col))) {
                piv = r;
                break;
            }
        if (piv < 0) fail(Err::NotInGroup, "singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(b(piv, j), b(col, j));
            }
        T inv = inv_of(a(col, col));
        for (int j = 0; j < n; ++j) {
            a(col, j) = inv * a(col, j);
            b(col, j) = inv * b(col, j);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || is_zero_of(a(r, col))) continue;
            T f = a(r, col);
            for (int j = 0; j < n; ++j) {
                a(r, j) = a(r, j) - f * a(col, j);
                b(r, j) = b(r, j) - f * b(col, j);
            }
        }
    }
    return b;
}

template <class T>
T det_gauss(Mat<T> a) {
    const int n = a.rows();
    T d = one_like(a.like());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (invertible_of(a(r, col))) {
                piv = r;
                break;
            }
        if (piv < 0) return zero_like(a.like());
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            d = zero_like(d) - d;
        }
        d = d * a(col, col);
        T inv = inv_of(a(col, col));
        for (int r = col + 1; r < n; ++r) {
            if (is_zero_of(a(r, col))) continue;
            T f = a(r, col) * inv;
            for (int j = col; j < n; ++j) a(r, j) = a(r, j) - f * a(col, j);
        }
    }
    return d;
}

// split algebra matrices are handled componentwise
Mat<Rat> split_component(const Mat<LocalElem>& m, int which);
Mat<LocalElem> split_combine(const LocalCtx& c, const Mat<Rat>& m1, const Mat<Rat>& m2);

inline Mat<Rat> inverse(const Mat<Rat>& m) { return inverse_gj(m); }
inline Mat<QuadElem> inverse(const Mat<QuadElem>& m) { return inverse_gj(m); }
inline Mat<Cplx> inverse(const Mat<Cplx>& m) { return inverse_gj(m); }
Mat<LocalElem> inverse(const Mat<LocalElem>& m);

inline Rat det(const Mat<Rat>& m) { return det_gauss(m); }
inline QuadElem det(const Mat<QuadElem>& m) { return det_gauss(m); }
inline Cplx det(const Mat<Cplx>& m) { return det_gauss(m); }
LocalElem det(const Mat<LocalElem>& m);

Mat<QuadElem> to_quad(const Mat<Rat>& m, long d);
Mat<LocalElem> to_local(const Mat<Rat>& m, const LocalCtx& c);
Mat<LocalElem> to_local(const Mat<QuadElem>& m, const LocalCtx& c);
Mat<Cplx> to_complex(const Mat<Rat>& m);
Mat<Cplx> to_complex(const Mat<QuadElem>& m);
Mat<Rat> rat_matrix(int n, const std::vector<long>& rowmajor);

}  // namespace pv
