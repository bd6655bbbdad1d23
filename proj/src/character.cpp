#include "pv/character.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "pv/errors.hpp"

namespace pv {

namespace {

const FqField& field_for(long p, long d) {
    static std::mutex mu;
    static std::map<std::pair<long, long>, std::unique_ptr<FqField>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = cache[{p, d}];
    if (!slot) slot = std::make_unique<FqField>(static_cast<int>(p), static_cast<int>(d), true);
    return *slot;
}

}  // namespace

FqField::E residue_fq(const FqField& f, const LocalElem& x) {
    return f.make(residue(x.x, f.p()), residue(x.y, f.p()));
}

int unit_class(const LocalElem& x) {
    if (x.ctx.kind != Place::Inert) fail(Err::BadParams, "character model needs an inert prime");
    if (!x.is_unit()) fail(Err::NotUnit, x.str() + " is not a unit");
    const FqField& f = field_for(x.ctx.q, x.ctx.d);
    return f.dlog(residue_fq(f, x)) % static_cast<int>(x.ctx.q + 1);
}

Cyclo character_value(const LocalElem& x, const CharSpec& chi) {
    if (x.ctx.q != chi.p || x.ctx.d != chi.d) fail(Err::RingMismatch, "character and element use different (p, d)");
    return Cyclo::zeta(static_cast<int>(chi.p + 1), static_cast<long>(chi.exponent) * unit_class(x));
}

Cyclo character_value_nonunit(const LocalElem& x, const CharSpec& chi) {
    if (x.is_zero()) fail(Err::NotUnit, "character of zero");
    int v = local_val(x);
    LocalElem u = x * LocalElem::base(x.ctx, pow(Rat(x.ctx.q), -v));
    return character_value(u, chi);
}

}  // namespace pv
