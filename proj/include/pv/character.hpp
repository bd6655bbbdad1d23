#pragma once
#include "pv/cyclo.hpp"
#include "pv/fq.hpp"
#include "pv/local.hpp"

namespace pv {

// Lambda_p on Z_{L,p}^x / Gamma^0_{L,p}, cyclic of order p+1:
// the fixed generator of F_{p^2}^x maps to zeta_{p+1}^exponent
struct CharSpec {
    long p = 3;
    long d = 1;
    int exponent = 1;
};

// class of a unit in Z/(p+1): discrete log of the residue mod p+1
int unit_class(const LocalElem& x);
Cyclo character_value(const LocalElem& x, const CharSpec& chi);
// nonzero inert x: Lambda is trivial on Q_p^x, so the p-power is stripped first
Cyclo character_value_nonunit(const LocalElem& x, const CharSpec& chi);
// residue of an integral inert element in F_{p^2}
FqField::E residue_fq(const FqField& f, const LocalElem& x);

}  // namespace pv
