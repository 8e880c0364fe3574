// Bounded-depth synthesis of circulant XOR circuits.
//
// Depth 1 is the direct one-layer wiring, depth 2 the shared-pattern
// (Lupanov-style) two-layer construction. For depth d >= 3 the kernel is
// block-split into q polynomials over R = GF(2)[y]/(y^(2*3^s)+y^(3^s)+1),
// the input side is evaluated at the 3^m powers of a DFT root (one
// depth-1 layer), each point value is multiplied by a constant through a
// recursive depth-(d-2) circuit, and one fused depth-1 layer performs the
// inverse DFT, trinomial reduction, overlap-add at the block stride and
// the cyclic fold. Total depth 1 + (d-2) + 1 = d.
#pragma once

#include "xcirc/circuit.hpp"
#include "xcirc/gf2.hpp"
#include "xcirc/ring3.hpp"

#include <memory>
#include <vector>

namespace xcirc {

enum class SynthKind { trivial, lupanov, toom };

struct SynthPlan {
    std::size_t n = 0;
    int d = 0;
    SynthKind kind = SynthKind::trivial;

    // toom parameters
    std::size_t q = 0;          // block count
    std::size_t block_len = 0;  // ceil(n/q)
    int s = 0;                  // ring parameter, 3^s >= block_len
    int m = 0;                  // DFT order exponent, 3^m >= 2q, m <= s+1
    std::size_t sub_len = 0;    // 4*3^s, length of recursive sub-problems
    std::shared_ptr<const SynthPlan> sub_plan; // depth d-2
};

// Total: every (n >= 1, d >= 1) yields a valid plan. Odd depth budgets
// bottom out in trivial leaves, even ones in Lupanov leaves.
SynthPlan plan_parameters(std::size_t n, int d);

// Circuit with n inputs and n outputs, depth <= d, realizing the
// circulant matrix of the kernel (entry (i,j) = a_{(i-j) mod n}).
RectifierCircuit synth(const CirculantKernel& kernel, int d);

// Depth <= 1, one output per row, edges = n * weight(kernel).
RectifierCircuit synth_trivial(const CirculantKernel& kernel);

// Depth <= 2. Columns are split into blocks; the middle layer holds one
// node per distinct nonzero row pattern occurring in a block. The block
// width is chosen by measuring candidate widths and keeping the cheapest.
RectifierCircuit synth_lupanov(const CirculantKernel& kernel);

// Induction step; requires d >= 3 (falls back to the base constructions
// when the planner does).
RectifierCircuit synth_toom(const CirculantKernel& kernel, int d);

// Stage-1 rows: for DFT point j and ring coordinate w, row j*deg+w lists
// the input bits of B(zeta^j)'s coordinate w. Points with live[j] false
// get empty rows (their product is known to vanish).
std::vector<std::vector<std::uint32_t>> evaluation_rows(const SynthPlan& plan,
                                                        const std::vector<bool>& live);

// Constants A(zeta^j) for j = 0..3^m-1, kernel blocks embedded at the low
// ring coefficients.
std::vector<RingElement> constant_points(const SynthPlan& plan, const CirculantKernel& kernel);

// Stage-3 rows: one per final output, over the concatenated raw
// sub-circuit outputs (3^m blocks of 4*3^s-1 coordinates). Fuses the
// trinomial reduction of raw products, the inverse DFT, the overlap-add
// at stride block_len and the cyclic fold mod n.
std::vector<std::vector<std::uint32_t>> recombination_rows(const SynthPlan& plan,
                                                           const std::vector<bool>& live);

// Circuit with 2*3^s inputs and 4*3^s-1 outputs computing the raw
// (unreduced) coefficients of the input polynomial times const_val, built
// from a length-4*3^s cyclic convolution at depth <= d with the padding
// inputs and the one always-zero output removed.
RectifierCircuit synth_constant_mult(const RingElement& const_val, int d);

} // namespace xcirc
