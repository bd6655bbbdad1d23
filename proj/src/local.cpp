#include "pv/local.hpp"

#include <algorithm>

#include "pv/errors.hpp"

namespace pv {

const char* place_name(Place p) {
    switch (p) {
        case Place::Inert: return "inert";
        case Place::Split: return "split";
        case Place::Ramified: return "ramified";
    }
    return "?";
}

LocalCtx LocalCtx::make(Place kind, long q, long d) {
    if (q < 3 || !is_prime(q)) fail(Err::BadParams, "q = " + std::to_string(q) + " must be an odd prime");
    if (d < 1) fail(Err::BadParams, "d must be positive");
    std::string tag = "q = " + std::to_string(q) + ", d = " + std::to_string(d);
    int leg = legendre(-d, q);
    switch (kind) {
        case Place::Inert:
            if (leg != -1) fail(Err::BadParams, tag + " is " + (leg == 0 ? "ramified" : "split") + ", not inert");
            break;
        case Place::Split:
            if (leg != 1) fail(Err::BadParams, tag + " is " + (leg == 0 ? "ramified" : "inert") + ", not split");
            break;
        case Place::Ramified:
            if (vp(Int(d), q) != 1) fail(Err::BadParams, tag + " is not ramified with v_q(d) = 1");
            break;
    }
    return {kind, q, d};
}

LocalElem LocalElem::base(const LocalCtx& c, const Rat& t) {
    if (c.kind == Place::Split) return {c, t, t};
    return {c, t, 0};
}

LocalElem LocalElem::uniformizer(const LocalCtx& c) {
    switch (c.kind) {
        case Place::Inert: return {c, c.q, 0};
        case Place::Ramified: return {c, 0, 1};
        case Place::Split: return {c, c.q, 1};
    }
    return {};
}

LocalElem LocalElem::from_quad(const LocalCtx& c, const QuadElem& z) {
    if (z.d != c.d) fail(Err::RingMismatch, "quadratic element with d = " + std::to_string(z.d));
    if (c.kind == Place::Split) {
        if (sgn(z.b) != 0) fail(Err::RingMismatch, "split embedding defined only for rational entries");
        return {c, z.a, z.a};
    }
    return {c, z.a, z.b};
}

bool LocalElem::is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }

bool LocalElem::is_base() const {
    if (ctx.kind == Place::Split) return x == y;
    return sgn(y) == 0;
}

Rat LocalElem::base_value() const {
    if (!is_base()) fail(Err::RingMismatch, "element " + str() + " is not in Q_q");
    return x;
}

LocalElem LocalElem::conj() const {
    if (ctx.kind == Place::Split) return {ctx, y, x};
    return {ctx, x, -y};
}

LocalElem LocalElem::norm() const { return base(ctx, ctx.kind == Place::Split ? Rat(x * y) : Rat(x * x + ctx.d * y * y)); }

LocalElem LocalElem::inv() const {
    if (ctx.kind == Place::Split) {
        if (sgn(x) == 0 || sgn(y) == 0) fail(Err::NotUnit, "zero divisor " + str());
        return {ctx, 1 / x, 1 / y};
    }
    Rat n = x * x + ctx.d * y * y;
    if (sgn(n) == 0) fail(Err::NotUnit, "inverse of zero");
    return {ctx, x / n, -y / n};
}

bool LocalElem::is_unit() const {
    if (ctx.kind == Place::Split) {
        auto [a, b] = local_val_pair(*this);
        return a == 0 && b == 0;
    }
    return local_val(*this) == 0;
}

std::string LocalElem::str() const {
    switch (ctx.kind) {
        case Place::Split: return "(" + pv::str(x) + ", " + pv::str(y) + ")";
        case Place::Inert: return QuadElem(x, y, ctx.d).str();
        case Place::Ramified:
            if (sgn(y) == 0) return pv::str(x);
            return pv::str(x) + (sgn(y) > 0 ? "+" : "") + pv::str(y) + "*pi";
    }
    return "?";
}

static void same_ctx(const LocalElem& a, const LocalElem& b) {
    if (!(a.ctx == b.ctx)) fail(Err::RingMismatch, "local elements over different algebras");
}

LocalElem operator+(const LocalElem& a, const LocalElem& b) {
    same_ctx(a, b);
    return {a.ctx, a.x + b.x, a.y + b.y};
}

LocalElem operator-(const LocalElem& a, const LocalElem& b) {
    same_ctx(a, b);
    return {a.ctx, a.x - b.x, a.y - b.y};
}

LocalElem operator-(const LocalElem& a) { return {a.ctx, -a.x, -a.y}; }

LocalElem operator*(const LocalElem& a, const LocalElem& b) {
    same_ctx(a, b);
    if (a.ctx.kind == Place::Split) return {a.ctx, a.x * b.x, a.y * b.y};
    return {a.ctx, a.x * b.x - a.ctx.d * a.y * b.y, a.x * b.y + a.y * b.x};
}

LocalElem operator/(const LocalElem& a, const LocalElem& b) { return a * b.inv(); }

bool operator==(const LocalElem& a, const LocalElem& b) { return a.ctx == b.ctx && a.x == b.x && a.y == b.y; }

int local_val(const LocalElem& e) {
    const long q = e.ctx.q;
    int vx = vp(e.x, q), vy = vp(e.y, q);
    switch (e.ctx.kind) {
        case Place::Inert:
        case Place::Split: return std::min(vx, vy);
        case Place::Ramified: {
            int a = vx == kInfVal ? kInfVal : 2 * vx;
            int b = vy == kInfVal ? kInfVal : 2 * vy + 1;
            return std::min(a, b);
        }
    }
    return kInfVal;
}

std::pair<int, int> local_val_pair(const LocalElem& e) {
    if (e.ctx.kind == Place::Split) return {vp(e.x, e.ctx.q), vp(e.y, e.ctx.q)};
    int v = local_val(e);
    return {v, v};
}

}  // namespace pv
