#include "xcirc/verify.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace xcirc {

ExactCheck verify_exact(const RectifierCircuit& c, const CirculantKernel& kernel) {
    if (c.n_inputs() != kernel.n || c.n_outputs() != kernel.n)
        throw std::invalid_argument("verify_exact: circuit arity does not match kernel");
    const GF2Matrix got = c.realized_matrix();
    const GF2Matrix want = kernel.matrix();
    for (std::size_t i = 0; i < kernel.n; ++i)
        for (std::size_t j = 0; j < kernel.n; ++j)
            if (got.get(i, j) != want.get(i, j)) return ExactCheck{false, i, j};
    return ExactCheck{true, 0, 0};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

FreivaldsCheck verify_freivalds(const RectifierCircuit& c, const CirculantKernel& kernel,
                                std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("verify_freivalds: trials must be at least 1");
    if (c.n_inputs() != kernel.n || c.n_outputs() != kernel.n)
        throw std::invalid_argument("verify_freivalds: circuit arity does not match kernel");
    for (std::size_t t = 0; t < trials; ++t) {
        const BitVector x = random_bits(kernel.n, splitmix64(seed ^ (0x51ec0000ULL + t)));
        if (c.evaluate(x) != cyclic_convolve(kernel.a, x)) return FreivaldsCheck{false, t};
    }
    return FreivaldsCheck{true, 0};
}

BoundsReport audit_bounds(const RectifierCircuit& c, int d) {
    if (d < 1) throw std::invalid_argument("audit_bounds: depth budget must be positive");
    BoundsReport r;
    const CircuitStats st = c.stats();
    r.n = c.n_inputs();
    r.d = d;
    r.k = (d + 1) / 2;
    r.edges = st.edges;
    r.depth = st.depth;
    r.nodes = st.nodes;
    const double n = static_cast<double>(r.n);
    if (d % 2 == 1) {
        r.bound_base = std::pow(n, 1.0 + 1.0 / r.k);
    } else {
        const double l = std::max(1.0, std::log2(n));
        r.bound_base = n * std::pow(n / l, 1.0 / r.k);
    }
    r.ratio = static_cast<double>(r.edges) / r.bound_base;
    r.depth_ok = st.depth <= static_cast<std::size_t>(d);
    return r;
}

std::string report_to_json(const BoundsReport& r) {
    char num[64];
    std::string s = "{\"n\":" + std::to_string(r.n) + ",\"d\":" + std::to_string(r.d) +
                    ",\"k\":" + std::to_string(r.k) + ",\"edges\":" + std::to_string(r.edges) +
                    ",\"depth\":" + std::to_string(r.depth) + ",\"nodes\":" + std::to_string(r.nodes);
    std::snprintf(num, sizeof num, "%.10g", r.bound_base);
    s += std::string(",\"bound_base\":") + num;
    std::snprintf(num, sizeof num, "%.10g", r.ratio);
    s += std::string(",\"ratio\":") + num;
    s += std::string(",\"depth_ok\":") + (r.depth_ok ? "true" : "false") + "}";
    return s;
}

} // namespace xcirc
