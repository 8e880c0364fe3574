// Modulo-2 rectifier circuits: DAGs whose realized matrix entry (i,j) is
// the parity of the number of directed paths from input j to output i.
// Nodes carry topological ids (every predecessor id is smaller), which is
// also the acyclicity argument. Predecessor sets never hold duplicates:
// a doubled edge is a cancelling path pair mod 2.
#pragma once

#include "xcirc/gf2.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace xcirc {

enum class NodeKind : std::uint8_t { input, inner, output };

struct Node {
    std::uint32_t id = 0;
    NodeKind kind = NodeKind::inner;
    std::int32_t index = -1;           // input/output position, -1 for inner
    std::vector<std::uint32_t> preds;  // sorted ascending, all < id
};

struct CircuitStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;  // complexity: total number of edges
    std::size_t depth = 0;  // longest directed path, in edges
};

class RectifierCircuit {
public:
    // Starts with input nodes 0..n_inputs-1 and no outputs.
    explicit RectifierCircuit(std::uint32_t n_inputs);

    std::uint32_t n_inputs() const { return n_inputs_; }
    std::uint32_t n_outputs() const { return n_outputs_; }
    const std::vector<Node>& nodes() const { return nodes_; }

    // One new node per row; row entries index into sources. Entries with
    // even multiplicity cancel. With as_outputs the nodes get consecutive
    // output indices.
    std::vector<std::uint32_t> add_linear_layer(std::span<const std::uint32_t> sources,
                                                const std::vector<std::vector<std::uint32_t>>& rows,
                                                bool as_outputs);

    // Copies every non-input node of sub, identifying sub's input i with
    // attach_ids[i] (no edge added); sub's outputs become inner nodes.
    // Returns the map from sub node ids to ids in this circuit. Edge count
    // grows by exactly sub's edge count.
    std::vector<std::uint32_t> splice(std::span<const std::uint32_t> attach_ids,
                                      const RectifierCircuit& sub);

    // Row i, column j: parity of path count from input j to output i.
    GF2Matrix realized_matrix() const;

    BitVector evaluate(const BitVector& x) const;

    CircuitStats stats() const;

    std::string to_json() const;
    static RectifierCircuit from_json(const std::string& text);

    std::string to_dot() const;

private:
    RectifierCircuit() = default;

    std::uint32_t n_inputs_ = 0;
    std::uint32_t n_outputs_ = 0;
    std::vector<Node> nodes_;
};

} // namespace xcirc
