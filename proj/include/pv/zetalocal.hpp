#pragma once
#include <optional>
#include <string>
#include <vector>

#include "pv/factors.hpp"
#include "pv/localdecomp.hpp"
#include "pv/whittaker.hpp"

namespace pv {

struct CellLabel {
    std::string family;  // "A", "A w", "w A", "w A w", "1", "w", "A(m,k)"
    int n = 0, m = 0, k = 0;
    int l = -1;  // index into U = {1} u {b + sqrt(-d)}, -1 when absent
    int x = -1;  // u(x) prefix, -1 when absent
    std::string str() const;
};

struct ZetaSummand {
    CellLabel cell;
    SectionValue section;
    HeckeWeight coset_weight;  // a constant Poly for the Steinberg and S-class sums
    Cyclo char_weight{1, 1};   // Lambda^{-1}(det l~) on the S-classes
    Rat index_weight = 1;
    // zero sections contribute nothing
    bool contributes() const { return !section.zero; }
};

struct IdentityReport {
    std::string name;
    RatFunc lhs, rhs_closed, rhs_lfactor;
    bool equal_closed = false, equal_lfactor = false;
    // present iff a comparison fails; then lhs = discrepancy_factor * rhs
    std::optional<RatFunc> discrepancy_factor;
    std::string discrepancy_against;  // "closed" or "lfactor"
    std::vector<ZetaSummand> summands;
    int trunc = 0;
    bool truncation_ok = false;  // direct cell sum agrees with the closed form through Y^trunc
    bool pattern_ok = false;     // sampled sections follow the displayed monomials
    std::vector<std::string> certificates;
    std::vector<std::string> notes;
};

enum class UnramifiedCase { Inert, Split, Ramified };
const char* unramified_case_name(UnramifiedCase c);

struct UnramifiedOptions {
    long q = 0, d = 0;  // 0: inert 3/1, split 5/1, ramified 5/5
    int trunc = 18;
    int n_check = 5;  // sections sampled for n (or |m|, k) up to this bound
    bool impose_ab_one = true;
};

// Sum_{n >= start} beta_{a n + b} t^n from the two geometric progressions of beta_k = R^k h_{k+1}(alpha, beta);
// terms with a n + b <= -2 are zero and dropped first
RatFunc beta_series(int a, int b, const Mono& t, int start = 0);
// Sum_{k >= 0} (beta_k - beta_{k-2}) t^k
RatFunc beta_difference_series(const Mono& t);

IdentityReport zeta_unramified(UnramifiedCase c, const UnramifiedOptions& o = {});
// the closed form displayed for each case
RatFunc unramified_closed_form(UnramifiedCase c);

enum class YMember { One, S1, S2, S3, Theta, ThetaS2, ThetaS4, ThetaS5 };
const char* y_member_name(YMember k);
std::vector<YMember> y_members(PlaceClass cls);
Mat<LocalElem> y_member_matrix(YMember k, const LocalCtx& c);

// [G : H] for the mu = 1 parts of the residue images of two 2x2 tags (big = GUnn for the full group)
Rat residue_index(long p, long d, SubgroupTag big, SubgroupTag small);

// Sum of W(g a) over a in H h Gamma_0 / Gamma_0 with H = Gamma_0 or K, by orbit search under
// generators of H acting on the left; count receives the number of cosets
Cyclo whittaker_double_coset_sum(const SteinbergModel& m, const Mat<Rat>& h, bool left_K, const Mat<Rat>& g,
                                 long* count = nullptr);

// k = 1 gives the proof-level identity; k = s1, s2 the vanishing
IdentityReport zeta_steinberg_S3(YMember k = YMember::One, long r = 3, int n_check = 3);
IdentityReport zeta_S2(YMember k, long p = 3, long d = 1, int n_max = 2);
IdentityReport zeta_S1(YMember k, long p = 3, long d = 1, int n_max = 2);

}  // namespace pv
