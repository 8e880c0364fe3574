#include "xcirc/synth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>

namespace xcirc {

namespace {

// Smallest e with 3^e >= x.
int ceil_log3(std::size_t x) {
    int e = 0;
    std::size_t p = 1;
    while (p < x) { p *= 3; ++e; }
    return e;
}

// Sorts each row and drops even-multiplicity entries.
void xor_reduce_rows(std::vector<std::vector<std::uint32_t>>& rows) {
    for (auto& r : rows) {
        std::sort(r.begin(), r.end());
        std::size_t out = 0;
        for (std::size_t i = 0; i < r.size();) {
            std::size_t k = i;
            while (k < r.size() && r[k] == r[i]) ++k;
            if ((k - i) & 1) r[out++] = r[i];
            i = k;
        }
        r.resize(out);
    }
}

} // namespace

SynthPlan plan_parameters(std::size_t n, int d) {
    if (n < 1) throw std::invalid_argument("plan_parameters: n must be positive");
    if (d < 1) throw std::invalid_argument("plan_parameters: depth must be positive");
    SynthPlan plan;
    plan.n = n;
    plan.d = d;
    if (d == 1) { plan.kind = SynthKind::trivial; return plan; }
    if (d == 2) { plan.kind = SynthKind::lupanov; return plan; }

    const int k = (d + 1) / 2;
    std::size_t q0;
    if (d % 2 == 1) {
        q0 = static_cast<std::size_t>(std::llround(std::pow(double(n), 1.0 / k)));
    } else {
        q0 = n >= 2
                 ? static_cast<std::size_t>(std::llround(std::pow(double(n) / std::log2(double(n)), 1.0 / k)))
                 : 1;
    }
    q0 = std::max<std::size_t>(2, std::min(q0, n));
    for (std::size_t q = q0; q >= 2 && q <= n; --q) {
        const std::size_t bl = (n + q - 1) / q;
        const int s = ceil_log3(bl);
        const int m = ceil_log3(2 * q);
        if (m > s + 1) continue; // no root of order 3^m in this ring
        plan.kind = SynthKind::toom;
        plan.q = q;
        plan.block_len = bl;
        plan.s = s;
        plan.m = m;
        plan.sub_len = 4 * pow3(s);
        plan.sub_plan = std::make_shared<const SynthPlan>(plan_parameters(plan.sub_len, d - 2));
        return plan;
    }
    // Tiny n: no feasible split, use the base construction of matching parity.
    plan.kind = d % 2 == 1 ? SynthKind::trivial : SynthKind::lupanov;
    return plan;
}

RectifierCircuit synth_trivial(const CirculantKernel& kernel) {
    const std::size_t n = kernel.n;
    RectifierCircuit c(static_cast<std::uint32_t>(n));
    std::vector<std::uint32_t> inputs(n);
    std::iota(inputs.begin(), inputs.end(), 0);
    std::vector<std::vector<std::uint32_t>> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (kernel.a.get((i + n - j) % n)) rows[i].push_back(static_cast<std::uint32_t>(j));
    c.add_linear_layer(inputs, rows, true);
    return c;
}

namespace {

struct LupanovLayout {
    std::size_t block_width = 1;
    std::size_t edges = 0;
};

// Row pattern of output i inside the column block [lo, lo+w):
// bit delta = a_{(i - lo - delta) mod n}.
std::uint64_t block_pattern(const BitVector& a, std::size_t n, std::size_t i,
                            std::size_t lo, std::size_t w) {
    std::uint64_t pat = 0;
    for (std::size_t delta = 0; delta < w; ++delta)
        if (a.get((i + 2 * n - lo - delta) % n)) pat |= std::uint64_t(1) << delta;
    return pat;
}

std::size_t lupanov_edge_count(const CirculantKernel& kernel, std::size_t b) {
    const std::size_t n = kernel.n;
    std::size_t edges = 0;
    for (std::size_t lo = 0; lo < n; lo += b) {
        const std::size_t w = std::min(b, n - lo);
        std::map<std::uint64_t, std::size_t> pats;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t pat = block_pattern(kernel.a, n, i, lo, w);
            if (pat) { ++pats[pat]; ++edges; } // one output edge per nonzero pattern
        }
        for (const auto& entry : pats)
            edges += static_cast<std::size_t>(std::popcount(entry.first)); // middle-node in-edges
    }
    return edges;
}

LupanovLayout pick_lupanov_width(const CirculantKernel& kernel) {
    const std::size_t n = kernel.n;
    const std::size_t bmax = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(std::log2(double(std::max<std::size_t>(n, 2))))) + 1);
    LupanovLayout best;
    best.edges = SIZE_MAX;
    for (std::size_t b = 1; b <= std::min(bmax, n); ++b) {
        const std::size_t e = lupanov_edge_count(kernel, b);
        if (e < best.edges) { best.edges = e; best.block_width = b; }
    }
    return best;
}

} // namespace

RectifierCircuit synth_lupanov(const CirculantKernel& kernel) {
    const std::size_t n = kernel.n;
    const std::size_t b = pick_lupanov_width(kernel).block_width;

    RectifierCircuit c(static_cast<std::uint32_t>(n));
    std::vector<std::uint32_t> inputs(n);
    std::iota(inputs.begin(), inputs.end(), 0);

    std::vector<std::vector<std::uint32_t>> mid_rows;          // over inputs
    std::vector<std::vector<std::uint32_t>> out_rows(n);       // over middle nodes
    for (std::size_t lo = 0; lo < n; lo += b) {
        const std::size_t w = std::min(b, n - lo);
        std::map<std::uint64_t, std::uint32_t> mid_of; // pattern -> middle row index
        std::vector<std::uint64_t> pat_of(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t pat = block_pattern(kernel.a, n, i, lo, w);
            pat_of[i] = pat;
            if (pat) mid_of.emplace(pat, 0);
        }
        for (auto& [pat, idx] : mid_of) { // std::map: patterns in ascending order
            idx = static_cast<std::uint32_t>(mid_rows.size());
            std::vector<std::uint32_t> row;
            for (std::size_t delta = 0; delta < w; ++delta)
                if ((pat >> delta) & 1) row.push_back(static_cast<std::uint32_t>(lo + delta));
            mid_rows.push_back(std::move(row));
        }
        for (std::size_t i = 0; i < n; ++i)
            if (pat_of[i]) out_rows[i].push_back(mid_of[pat_of[i]]);
    }
    const std::vector<std::uint32_t> mids = c.add_linear_layer(inputs, mid_rows, false);
    c.add_linear_layer(mids, out_rows, true);
    return c;
}

std::vector<RingElement> constant_points(const SynthPlan& plan, const CirculantKernel& kernel) {
    if (plan.kind != SynthKind::toom)
        throw std::invalid_argument("constant_points: plan is not a toom plan");
    const RingContext ctx(plan.s);
    std::vector<RingElement> blocks;
    blocks.reserve(plan.q);
    for (std::size_t i = 0; i < plan.q; ++i) {
        RingElement blk(ctx);
        for (std::size_t u = 0; u < plan.block_len; ++u) {
            const std::size_t t = i * plan.block_len + u;
            if (t < plan.n && kernel.a.get(t)) blk.set_coeff(u, true);
        }
        blocks.push_back(std::move(blk));
    }
    const std::size_t np = pow3(plan.m);
    const std::size_t zexp = pow3(plan.s + 1 - plan.m);
    std::vector<RingElement> points;
    points.reserve(np);
    for (std::size_t j = 0; j < np; ++j)
        points.push_back(poly_eval_horner(blocks, y_pow(ctx, zexp * j)));
    return points;
}

std::vector<std::vector<std::uint32_t>> evaluation_rows(const SynthPlan& plan,
                                                        const std::vector<bool>& live) {
    if (plan.kind != SynthKind::toom)
        throw std::invalid_argument("evaluation_rows: plan is not a toom plan");
    const RingContext ctx(plan.s);
    const std::size_t np = pow3(plan.m);
    const std::int64_t zexp = static_cast<std::int64_t>(pow3(plan.s + 1 - plan.m));
    if (live.size() != np) throw std::invalid_argument("evaluation_rows: live mask size mismatch");

    std::vector<std::vector<std::uint32_t>> rows(np * ctx.deg);
    for (std::size_t j = 0; j < np; ++j) {
        if (!live[j]) continue;
        for (std::size_t i = 0; i < plan.q; ++i) {
            for (std::size_t u = 0; u < plan.block_len; ++u) {
                const std::size_t t = i * plan.block_len + u;
                if (t >= plan.n) break;
                for (std::size_t w : monomial_support(ctx, u, zexp * static_cast<std::int64_t>(i * j)))
                    rows[j * ctx.deg + w].push_back(static_cast<std::uint32_t>(t));
            }
        }
    }
    xor_reduce_rows(rows);
    return rows;
}

std::vector<std::vector<std::uint32_t>> recombination_rows(const SynthPlan& plan,
                                                           const std::vector<bool>& live) {
    if (plan.kind != SynthKind::toom)
        throw std::invalid_argument("recombination_rows: plan is not a toom plan");
    const RingContext ctx(plan.s);
    const std::size_t n = plan.n;
    const std::size_t np = pow3(plan.m);
    const std::size_t raw_len = 2 * ctx.deg - 1;
    const std::int64_t zexp = static_cast<std::int64_t>(pow3(plan.s + 1 - plan.m));
    if (live.size() != np) throw std::invalid_argument("recombination_rows: live mask size mismatch");

    // Coefficients of C_i have true degree <= 2*block_len-2; coordinates
    // above that are identically zero and are not wired.
    const std::size_t vmax = std::min(2 * plan.block_len - 2, ctx.deg - 1);

    std::vector<std::vector<std::uint32_t>> rows(n);
    for (std::size_t j = 0; j < np; ++j) {
        if (!live[j]) continue;
        for (std::size_t g = 0; g < raw_len; ++g) {
            const std::uint32_t raw = static_cast<std::uint32_t>(j * raw_len + g);
            for (std::size_t w : reduction_support(ctx, g)) {
                for (std::size_t i = 0; i + 1 < 2 * plan.q; ++i) {
                    const std::int64_t shift = -zexp * static_cast<std::int64_t>(i * j);
                    for (std::size_t v : monomial_support(ctx, w, shift)) {
                        if (v > vmax) continue;
                        const std::size_t p = i * plan.block_len + v;
                        if (p > 2 * n - 2) continue; // beyond the true product degree
                        rows[p < n ? p : p - n].push_back(raw);
                    }
                }
            }
        }
    }
    xor_reduce_rows(rows);
    return rows;
}

namespace {

// Keeps the first n_in inputs and first n_out outputs, deletes edges from
// the dropped (always-zero) inputs, and drops nodes that no longer reach a
// kept output. Kept inputs survive even when dead so the arity contract
// holds. Assumes outputs appear in index order and feed nothing, which
// every construction here guarantees.
RectifierCircuit restrict_circuit(const RectifierCircuit& c, std::uint32_t n_in,
                                  std::uint32_t n_out) {
    const auto& nodes = c.nodes();
    std::vector<char> keep(nodes.size(), 0), dropped_input(nodes.size(), 0);
    for (const Node& node : nodes) {
        if (node.kind == NodeKind::input) {
            if (static_cast<std::uint32_t>(node.index) < n_in) keep[node.id] = 1;
            else dropped_input[node.id] = 1;
        } else if (node.kind == NodeKind::output &&
                   static_cast<std::uint32_t>(node.index) < n_out) {
            keep[node.id] = 1;
        }
    }
    // Backward reachability from kept outputs.
    for (std::size_t i = nodes.size(); i-- > 0;) {
        if (!keep[i]) continue;
        for (std::uint32_t p : nodes[i].preds)
            if (!dropped_input[p]) keep[p] = 1;
    }

    RectifierCircuit out(n_in);
    std::vector<std::uint32_t> map(nodes.size(), UINT32_MAX);
    std::uint32_t next_output = 0;
    for (const Node& node : nodes) {
        if (node.kind == NodeKind::input) {
            if (!dropped_input[node.id]) map[node.id] = static_cast<std::uint32_t>(node.index);
            continue;
        }
        if (!keep[node.id]) continue;
        std::vector<std::uint32_t> preds;
        preds.reserve(node.preds.size());
        for (std::uint32_t p : node.preds)
            if (map[p] != UINT32_MAX) preds.push_back(map[p]);
        const bool as_output = node.kind == NodeKind::output;
        if (as_output && static_cast<std::uint32_t>(node.index) != next_output++)
            throw std::logic_error("restrict_circuit: outputs not in index order");
        std::vector<std::uint32_t> row(preds.size());
        std::iota(row.begin(), row.end(), 0);
        map[node.id] = out.add_linear_layer(preds, {std::move(row)}, as_output)[0];
    }
    if (next_output != n_out)
        throw std::logic_error("restrict_circuit: kept output set incomplete");
    return out;
}

RectifierCircuit synth_with_plan(const CirculantKernel& kernel, const SynthPlan& plan);

RectifierCircuit synth_toom_with_plan(const CirculantKernel& kernel, const SynthPlan& plan) {
    const std::size_t n = plan.n;
    const RingContext ctx(plan.s);
    const std::size_t np = pow3(plan.m);
    const std::size_t raw_len = 2 * ctx.deg - 1;

    const std::vector<RingElement> consts = constant_points(plan, kernel);
    std::vector<bool> live(np);
    for (std::size_t j = 0; j < np; ++j) live[j] = !consts[j].is_zero();

    RectifierCircuit c(static_cast<std::uint32_t>(n));
    std::vector<std::uint32_t> inputs(n);
    std::iota(inputs.begin(), inputs.end(), 0);
    const std::vector<std::uint32_t> stage1 =
        c.add_linear_layer(inputs, evaluation_rows(plan, live), false);

    // One constant-multiplication sub-circuit per DFT point; points with a
    // zero constant still get spliced (edge-free) so the raw output
    // numbering stays uniform.
    std::vector<std::uint32_t> raw_ids(np * raw_len);
    for (std::size_t j = 0; j < np; ++j) {
        RectifierCircuit sub(static_cast<std::uint32_t>(ctx.deg));
        if (live[j]) {
            sub = synth_constant_mult(consts[j], plan.d - 2);
        } else {
            std::vector<std::uint32_t> none;
            sub.add_linear_layer(none, std::vector<std::vector<std::uint32_t>>(raw_len), true);
        }
        const auto attach = std::span(stage1).subspan(j * ctx.deg, ctx.deg);
        const std::vector<std::uint32_t> map = c.splice(attach, sub);
        for (const Node& sn : sub.nodes())
            if (sn.kind == NodeKind::output)
                raw_ids[j * raw_len + static_cast<std::size_t>(sn.index)] = map[sn.id];
    }

    c.add_linear_layer(raw_ids, recombination_rows(plan, live), true);
    return c;
}

RectifierCircuit synth_with_plan(const CirculantKernel& kernel, const SynthPlan& plan) {
    switch (plan.kind) {
        case SynthKind::trivial: return synth_trivial(kernel);
        case SynthKind::lupanov: return synth_lupanov(kernel);
        case SynthKind::toom: return synth_toom_with_plan(kernel, plan);
    }
    throw std::logic_error("synth: unknown plan kind");
}

} // namespace

RectifierCircuit synth_constant_mult(const RingElement& const_val, int d) {
    if (d < 1) throw std::invalid_argument("synth_constant_mult: depth must be positive");
    const RingContext& ctx = const_val.ctx();
    const std::size_t len = 2 * ctx.deg; // 4*3^s
    BitVector padded(len);
    for (std::size_t i = 0; i < ctx.deg; ++i)
        if (const_val.coeff(i)) padded.set(i, true);
    const RectifierCircuit full = synth(CirculantKernel{len, std::move(padded)}, d);
    // Product degree <= 4*3^s - 2 < len: no wraparound, so the cyclic
    // outputs 0..len-2 are exactly the raw product coefficients.
    return restrict_circuit(full, static_cast<std::uint32_t>(ctx.deg),
                            static_cast<std::uint32_t>(len - 1));
}

RectifierCircuit synth_toom(const CirculantKernel& kernel, int d) {
    if (d < 3) throw std::invalid_argument("synth_toom: depth budget must be at least 3");
    return synth_with_plan(kernel, plan_parameters(kernel.n, d));
}

RectifierCircuit synth(const CirculantKernel& kernel, int d) {
    if (kernel.a.size() != kernel.n)
        throw std::invalid_argument("synth: kernel length does not match n");
    return synth_with_plan(kernel, plan_parameters(kernel.n, d));
}

} // namespace xcirc
