#include "xcirc/ring3.hpp"

#include <stdexcept>

namespace xcirc {

std::size_t pow3(int e) {
    std::size_t p = 1;
    for (int i = 0; i < e; ++i) p *= 3;
    return p;
}

RingContext::RingContext(int s_param) : s(s_param) {
    if (s_param < 0) throw std::invalid_argument("RingContext: s must be non-negative");
    trin = pow3(s_param);
    deg = 2 * trin;
    y_order = 3 * trin;
}

RingElement::RingElement(const RingContext& ctx, BitVector coeffs)
    : ctx_(ctx), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != ctx_.deg)
        throw std::invalid_argument("RingElement: coefficient count does not match ring degree");
}

namespace {

void check_same_ctx(const RingElement& u, const RingElement& v) {
    if (!(u.ctx() == v.ctx()))
        throw std::invalid_argument("ring op: context mismatch");
}

// Support of y^e for any (possibly negative) exponent e.
Support support_of(const RingContext& ctx, std::int64_t e) {
    const std::int64_t ord = static_cast<std::int64_t>(ctx.y_order);
    std::int64_t r = e % ord;
    if (r < 0) r += ord;
    const std::size_t er = static_cast<std::size_t>(r);
    Support s;
    if (er < ctx.deg) {
        s.idx[0] = er;
        s.count = 1;
    } else {
        // y^deg = y^trin + 1, so y^er folds onto two monomials below deg.
        s.idx[0] = er - ctx.trin;
        s.idx[1] = er - 2 * ctx.trin;
        s.count = 2;
    }
    return s;
}

} // namespace

RingElement ring_add(const RingElement& u, const RingElement& v) {
    check_same_ctx(u, v);
    RingElement r = u;
    BitVector c = r.coeffs();
    c.xor_with(v.coeffs());
    return RingElement(u.ctx(), std::move(c));
}

RingElement ring_mul(const RingElement& u, const RingElement& v) {
    check_same_ctx(u, v);
    const RingContext& ctx = u.ctx();
    const std::size_t d = ctx.deg;
    // Raw product, degree <= 2d-2.
    std::vector<std::uint64_t> raw((2 * d - 1 + 63) / 64, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (!u.coeff(i)) continue;
        const auto& vw = v.coeffs().words();
        const std::size_t ws = i >> 6, bs = i & 63;
        for (std::size_t w = 0; w < vw.size(); ++w) {
            raw[w + ws] ^= vw[w] << bs;
            if (bs && w + ws + 1 < raw.size()) raw[w + ws + 1] ^= vw[w] >> (64 - bs);
        }
    }
    BitVector out(d);
    for (std::size_t g = 0; g < 2 * d - 1; ++g) {
        if ((raw[g >> 6] >> (g & 63)) & 1)
            for (std::size_t w : reduction_support(ctx, g)) out.flip(w);
    }
    return RingElement(ctx, std::move(out));
}

RingElement y_pow(const RingContext& ctx, std::uint64_t e) {
    BitVector c(ctx.deg);
    for (std::size_t w : support_of(ctx, static_cast<std::int64_t>(e % ctx.y_order)))
        c.set(w, true);
    return RingElement(ctx, std::move(c));
}

Support monomial_support(const RingContext& ctx, std::size_t u, std::int64_t p) {
    if (u >= ctx.deg) throw std::invalid_argument("monomial_support: index out of range");
    return support_of(ctx, static_cast<std::int64_t>(u) + p);
}

Support reduction_support(const RingContext& ctx, std::size_t j) {
    const std::size_t t = ctx.trin;
    if (j > 4 * t - 2) throw std::invalid_argument("reduction_support: index out of range");
    Support s;
    if (j < 2 * t) {
        s.idx[0] = j;
        s.count = 1;
    } else if (j < 3 * t) {
        s.idx[0] = j - t;
        s.idx[1] = j - 2 * t;
        s.count = 2;
    } else {
        s.idx[0] = j - 3 * t; // y has order 3*3^s
        s.count = 1;
    }
    return s;
}

RingElement zeta(const RingContext& ctx, int m) {
    if (m < 1 || m > ctx.s + 1)
        throw std::invalid_argument("zeta: m out of range for this ring");
    return y_pow(ctx, pow3(ctx.s + 1 - m));
}

RingElement poly_eval_horner(std::span<const RingElement> coeffs, const RingElement& point) {
    RingElement acc(point.ctx());
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = ring_mul(acc, point);
        acc = ring_add(acc, coeffs[i]);
    }
    return acc;
}

namespace {

// u * y^e via the support map; cheaper than ring_mul for monomials.
RingElement mul_monomial(const RingElement& u, std::int64_t e) {
    const RingContext& ctx = u.ctx();
    BitVector out(ctx.deg);
    for (std::size_t w = 0; w < ctx.deg; ++w) {
        if (!u.coeff(w)) continue;
        for (std::size_t v : support_of(ctx, static_cast<std::int64_t>(w) + e)) out.flip(v);
    }
    return RingElement(ctx, std::move(out));
}

} // namespace

std::vector<RingElement> dft_points(std::span<const RingElement> v, int m, bool inverse) {
    if (v.empty()) throw std::invalid_argument("dft_points: empty input");
    const RingContext& ctx = v[0].ctx();
    if (m < 1 || m > ctx.s + 1) throw std::invalid_argument("dft_points: m out of range");
    const std::size_t np = pow3(m);
    if (v.size() != np) throw std::invalid_argument("dft_points: input length must be 3^m");
    const std::int64_t zexp = static_cast<std::int64_t>(pow3(ctx.s + 1 - m)) * (inverse ? -1 : 1);

    std::vector<RingElement> out;
    out.reserve(np);
    for (std::size_t j = 0; j < np; ++j) {
        RingElement acc(ctx);
        for (std::size_t i = 0; i < np; ++i) {
            check_same_ctx(v[i], v[0]);
            acc = ring_add(acc, mul_monomial(v[i], zexp * static_cast<std::int64_t>(i * j)));
        }
        out.push_back(std::move(acc));
    }
    return out;
}

} // namespace xcirc
