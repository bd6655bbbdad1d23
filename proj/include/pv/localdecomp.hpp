#pragma once
#include <optional>
#include <string>
#include <vector>

#include "pv/character.hpp"
#include "pv/finitegeom.hpp"
#include "pv/groupkit.hpp"

namespace pv {

// g = n(b) m(A, v) k with k in K_p^H
struct IwasawaFactorization {
    Mat<LocalElem> b;  // 3x3 hermitian
    Mat<LocalElem> A;  // 3x3
    LocalElem v;       // base-field similitude of the parabolic part
    Mat<LocalElem> k;  // 6x6, integral with unit determinant

    Mat<LocalElem> reassemble() const;
};

IwasawaFactorization iwasawa_siegel(const Mat<LocalElem>& g);

// Y-exponent 3 v(N det A) - 9 v(v), the factor |v|^{-9(s+1/2)} |N det A|^{3(s+1/2)}
int upsilon_y_exponent(const IwasawaFactorization& f);
// lambda exponent of Lambda(det A): v(x1) - v(x2) split, pi-adic valuation ramified, 0 inert
int upsilon_lambda_exponent(const IwasawaFactorization& f);

// smallest valuation among the entries
int min_entry_valuation(const Mat<LocalElem>& g);

struct CosetWitness {
    bool member = false;
    IwasawaFactorization fact;
    FlagKey point, center_point;
    // generator indices (of residue_generators for the tag) from the orbit root to each point
    std::vector<int> path_to_center, path_to_point;
    FMat ubar;  // residue element with center_point . ubar = point, when member
};

CosetWitness in_double_coset(const Mat<LocalElem>& g, Center center, SubgroupTag u_tag);

enum class PlaceClass { Unramified, S3, S2, S1 };
const char* place_class_name(PlaceClass c);

struct SectionValue {
    bool zero = true;
    std::string zero_witness;
    Cyclo chi;        // unit-character part, order p+1 (or 1)
    int y_exp = 0;    // Y = q^{-(s+1/2)}
    int r_exp = 0;    // R = q^{1/2}
    int lambda_exp = 0;

    static SectionValue make_zero(std::string why);
    std::string str() const;
};

// chi is used for the S-classes; unramified places carry their character as lambda_exp
SectionValue evaluate_section(const Mat<LocalElem>& g, PlaceClass cls, const CharSpec& chi = {});

// GL(2, Q_r) Iwasawa: g = [[1, x], [0, 1]] diag(y1, y2) k, k in GL_2(Z_r)
struct Iwasawa2 {
    Rat x, y1, y2;
    Mat<Rat> k;
};
Iwasawa2 iwasawa_gl2(const Mat<Rat>& g, long r);

}  // namespace pv
