#include "pv/matrix.hpp"

#include <cmath>

namespace pv {

Mat<Rat> split_component(const Mat<LocalElem>& m, int which) {
    return m.map([which](const LocalElem& e) { return which == 0 ? e.x : e.y; });
}

Mat<LocalElem> split_combine(const LocalCtx& c, const Mat<Rat>& m1, const Mat<Rat>& m2) {
    Mat<LocalElem> out(m1.rows(), m1.cols(), LocalElem::zero(c));
    for (int i = 0; i < m1.rows(); ++i)
        for (int j = 0; j < m1.cols(); ++j) out(i, j) = LocalElem(c, m1(i, j), m2(i, j));
    return out;
}

Mat<LocalElem> inverse(const Mat<LocalElem>& m) {
    const LocalCtx& c = m.like().ctx;
    if (c.kind == Place::Split)
        return split_combine(c, inverse_gj(split_component(m, 0)), inverse_gj(split_component(m, 1)));
    return inverse_gj(m);
}

LocalElem det(const Mat<LocalElem>& m) {
    const LocalCtx& c = m.like().ctx;
    if (c.kind == Place::Split)
        return LocalElem(c, det_gauss(split_component(m, 0)), det_gauss(split_component(m, 1)));
    return det_gauss(m);
}

Mat<QuadElem> to_quad(const Mat<Rat>& m, long d) {
    return m.map([d](const Rat& x) { return QuadElem::from(x, d); });
}

Mat<LocalElem> to_local(const Mat<Rat>& m, const LocalCtx& c) {
    return m.map([&c](const Rat& x) { return LocalElem::base(c, x); });
}

Mat<LocalElem> to_local(const Mat<QuadElem>& m, const LocalCtx& c) {
    return m.map([&c](const QuadElem& x) { return LocalElem::from_quad(c, x); });
}

Mat<Cplx> to_complex(const Mat<Rat>& m) {
    return m.map([](const Rat& x) { return Cplx(x.get_d(), 0.0); });
}

Mat<Cplx> to_complex(const Mat<QuadElem>& m) {
    return m.map([](const QuadElem& x) {
        return Cplx(x.a.get_d(), x.b.get_d() * std::sqrt(static_cast<double>(x.d)));
    });
}

Mat<Rat> rat_matrix(int n, const std::vector<long>& rowmajor) {
    if (rowmajor.size() != static_cast<size_t>(n) * n) fail(Err::Internal, "bad matrix literal");
    Mat<Rat> m(n, n, Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rowmajor[static_cast<size_t>(i) * n + j];
    return m;
}

}  // namespace pv
