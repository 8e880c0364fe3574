// Independent checking of synthesized circuits: exact realized-matrix
// comparison, randomized (Freivalds-style) spot checks for large n, and
// auditing of measured depth/size against the target bounds.
#pragma once

#include "xcirc/circuit.hpp"
#include "xcirc/gf2.hpp"

#include <cstdint>
#include <string>

namespace xcirc {

struct ExactCheck {
    bool ok = false;
    std::size_t row = 0; // first mismatching output, valid when !ok
    std::size_t col = 0;
};

// Compares realized_matrix(c) entrywise against the circulant matrix of
// the kernel.
ExactCheck verify_exact(const RectifierCircuit& c, const CirculantKernel& kernel);

struct FreivaldsCheck {
    bool pass = false;
    std::size_t failed_trial = 0; // valid when !pass
};

// Per trial draws a random input and compares evaluate(c, x) against the
// convolution oracle. A circuit realizing the wrong GF(2)-linear map
// disagrees on at least half of all inputs (the difference map has kernel
// of dimension <= n-1), so a wrong circuit slips through all trials with
// probability at most 2^-trials. Trial inputs derive deterministically
// from the seed.
FreivaldsCheck verify_freivalds(const RectifierCircuit& c, const CirculantKernel& kernel,
                                std::size_t trials, std::uint64_t seed);

struct BoundsReport {
    std::size_t n = 0;
    int d = 0;
    int k = 0; // ceil(d/2)
    std::size_t edges = 0;
    std::size_t depth = 0;
    std::size_t nodes = 0;
    double bound_base = 0.0; // n^(1+1/k) for odd d, n*(n/log2 n)^(1/k) for even d
    double ratio = 0.0;      // edges / bound_base
    bool depth_ok = false;   // depth <= d, the hard gate
};

BoundsReport audit_bounds(const RectifierCircuit& c, int d);

std::string report_to_json(const BoundsReport& r);

} // namespace xcirc
