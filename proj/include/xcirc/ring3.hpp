// Arithmetic in R = GF(2)[y]/(y^(2*3^s) + y^(3^s) + 1).
//
// y has multiplicative order 3^(s+1), so R supports DFTs of order 3^m
// for m <= s+1 with root zeta = y^(3^(s+1-m)). Multiplication by a power
// of y moves each coefficient onto at most two positions; the support
// maps below are what the synthesizer turns into depth-1 wiring.
#pragma once

#include "xcirc/gf2.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace xcirc {

std::size_t pow3(int e);

struct RingContext {
    int s = 0;
    std::size_t trin = 1;     // 3^s
    std::size_t deg = 2;      // 2*3^s, coefficient-vector length
    std::size_t y_order = 3;  // 3^(s+1)

    explicit RingContext(int s_param);
    RingContext() = default;

    friend bool operator==(const RingContext&, const RingContext&) = default;
};

class RingElement {
public:
    explicit RingElement(const RingContext& ctx) : ctx_(ctx), coeffs_(ctx.deg) {}
    RingElement(const RingContext& ctx, BitVector coeffs);

    const RingContext& ctx() const { return ctx_; }
    const BitVector& coeffs() const { return coeffs_; }
    bool coeff(std::size_t i) const { return coeffs_.get(i); }
    void set_coeff(std::size_t i, bool v) { coeffs_.set(i, v); }
    bool is_zero() const { return !coeffs_.any(); }

    friend bool operator==(const RingElement&, const RingElement&) = default;

private:
    RingContext ctx_;
    BitVector coeffs_;
};

// At most two coefficient positions.
struct Support {
    std::array<std::size_t, 2> idx{};
    unsigned count = 0;

    const std::size_t* begin() const { return idx.data(); }
    const std::size_t* end() const { return idx.data() + count; }
};

RingElement ring_add(const RingElement& u, const RingElement& v);

// Schoolbook product followed by two trinomial reduction passes.
RingElement ring_mul(const RingElement& u, const RingElement& v);

// Fully reduced y^e. Support has size 1 when (e mod 3^(s+1)) < deg, else 2.
RingElement y_pow(const RingContext& ctx, std::uint64_t e);

// Support of y^(u+p); p may be negative (exponents live mod 3^(s+1)).
Support monomial_support(const RingContext& ctx, std::size_t u, std::int64_t p);

// Positions of y^j after reduction, for raw product exponents
// j in [0, 4*3^s - 2].
Support reduction_support(const RingContext& ctx, std::size_t j);

// y^(3^(s+1-m)); its multiplicative order is exactly 3^m. Requires
// 1 <= m <= s+1.
RingElement zeta(const RingContext& ctx, int m);

// Sum of coeffs[i] * point^i; empty input gives zero.
RingElement poly_eval_horner(std::span<const RingElement> coeffs, const RingElement& point);

// Forward: w_j = sum_i v_i zeta^(ij); inverse uses zeta^(-ij). No scalar
// normalization: 3^m is odd, so 1/3^m = 1 in characteristic 2.
std::vector<RingElement> dft_points(std::span<const RingElement> v, int m, bool inverse);

} // namespace xcirc
