#include "xcirc/circuit.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace xcirc {

RectifierCircuit::RectifierCircuit(std::uint32_t n_inputs) : n_inputs_(n_inputs) {
    nodes_.reserve(n_inputs);
    for (std::uint32_t i = 0; i < n_inputs; ++i)
        nodes_.push_back(Node{i, NodeKind::input, static_cast<std::int32_t>(i), {}});
}

namespace {

// Sorts and drops even-multiplicity entries.
void xor_reduce(std::vector<std::uint32_t>& v) {
    std::sort(v.begin(), v.end());
    std::size_t out = 0;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if ((j - i) & 1) v[out++] = v[i];
        i = j;
    }
    v.resize(out);
}

} // namespace

std::vector<std::uint32_t> RectifierCircuit::add_linear_layer(
        std::span<const std::uint32_t> sources,
        const std::vector<std::vector<std::uint32_t>>& rows,
        bool as_outputs) {
    std::vector<std::uint32_t> ids;
    ids.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<std::uint32_t> preds;
        preds.reserve(row.size());
        for (std::uint32_t t : row) {
            if (t >= sources.size())
                throw std::invalid_argument("add_linear_layer: row index out of range");
            preds.push_back(sources[t]);
        }
        xor_reduce(preds);
        Node node;
        node.id = static_cast<std::uint32_t>(nodes_.size());
        node.kind = as_outputs ? NodeKind::output : NodeKind::inner;
        node.index = as_outputs ? static_cast<std::int32_t>(n_outputs_++) : -1;
        node.preds = std::move(preds);
        ids.push_back(node.id);
        nodes_.push_back(std::move(node));
    }
    return ids;
}

std::vector<std::uint32_t> RectifierCircuit::splice(std::span<const std::uint32_t> attach_ids,
                                                    const RectifierCircuit& sub) {
    if (attach_ids.size() != sub.n_inputs())
        throw std::invalid_argument("splice: attach_ids length must equal sub input count");
    std::vector<std::uint32_t> map(sub.nodes_.size(), 0);
    for (const Node& sn : sub.nodes_) {
        if (sn.kind == NodeKind::input) {
            map[sn.id] = attach_ids[static_cast<std::size_t>(sn.index)];
            continue;
        }
        Node node;
        node.id = static_cast<std::uint32_t>(nodes_.size());
        node.kind = NodeKind::inner; // outputs are re-kinded; caller wires them onward
        node.index = -1;
        node.preds.reserve(sn.preds.size());
        for (std::uint32_t p : sn.preds) node.preds.push_back(map[p]);
        xor_reduce(node.preds);
        map[sn.id] = node.id;
        nodes_.push_back(std::move(node));
    }
    return map;
}

GF2Matrix RectifierCircuit::realized_matrix() const {
    const std::size_t words = (n_inputs_ + 63) / 64;
    std::vector<std::vector<std::uint64_t>> vec(nodes_.size());
    GF2Matrix m(n_outputs_, n_inputs_);
    for (const Node& node : nodes_) {
        auto& v = vec[node.id];
        v.assign(words, 0);
        if (node.kind == NodeKind::input) {
            v[static_cast<std::size_t>(node.index) >> 6] |=
                std::uint64_t(1) << (node.index & 63);
        } else {
            for (std::uint32_t p : node.preds)
                for (std::size_t w = 0; w < words; ++w) v[w] ^= vec[p][w];
        }
        if (node.kind == NodeKind::output) {
            for (std::size_t j = 0; j < n_inputs_; ++j)
                if ((v[j >> 6] >> (j & 63)) & 1)
                    m.set(static_cast<std::size_t>(node.index), j, true);
        }
    }
    return m;
}

BitVector RectifierCircuit::evaluate(const BitVector& x) const {
    if (x.size() != n_inputs_) throw std::invalid_argument("evaluate: input length mismatch");
    std::vector<char> val(nodes_.size(), 0);
    BitVector out(n_outputs_);
    for (const Node& node : nodes_) {
        char v = 0;
        if (node.kind == NodeKind::input) {
            v = x.get(static_cast<std::size_t>(node.index));
        } else {
            for (std::uint32_t p : node.preds) v ^= val[p];
        }
        val[node.id] = v;
        if (node.kind == NodeKind::output) out.set(static_cast<std::size_t>(node.index), v);
    }
    return out;
}

CircuitStats RectifierCircuit::stats() const {
    CircuitStats st;
    st.nodes = nodes_.size();
    std::vector<std::size_t> level(nodes_.size(), 0);
    for (const Node& node : nodes_) {
        std::size_t lv = 0;
        for (std::uint32_t p : node.preds) {
            lv = std::max(lv, level[p] + 1);
        }
        st.edges += node.preds.size();
        level[node.id] = lv;
        st.depth = std::max(st.depth, lv);
    }
    return st;
}

std::string RectifierCircuit::to_json() const {
    std::string s;
    s.reserve(64 + nodes_.size() * 24);
    s += "{\"version\":1,\"n_inputs\":";
    s += std::to_string(n_inputs_);
    s += ",\"n_outputs\":";
    s += std::to_string(n_outputs_);
    s += ",\"nodes\":[";
    bool first_node = true;
    for (const Node& node : nodes_) {
        if (!first_node) s += ',';
        first_node = false;
        s += "{\"id\":";
        s += std::to_string(node.id);
        s += ",\"kind\":\"";
        s += node.kind == NodeKind::input ? "input" : node.kind == NodeKind::output ? "output" : "inner";
        s += '"';
        if (node.kind != NodeKind::inner) {
            s += ",\"index\":";
            s += std::to_string(node.index);
        }
        if (node.kind != NodeKind::input) {
            s += ",\"preds\":[";
            for (std::size_t i = 0; i < node.preds.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(node.preds[i]);
            }
            s += ']';
        }
        s += '}';
    }
    s += "]}";
    return s;
}

namespace {

[[noreturn]] void reject(std::uint32_t id, const std::string& why) {
    throw std::runtime_error("circuit json: node " + std::to_string(id) + ": " + why);
}

} // namespace

RectifierCircuit RectifierCircuit::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("circuit json: parse error: ") + e.what());
    }
    if (!j.is_object() || j.value("version", 0) != 1)
        throw std::runtime_error("circuit json: missing or unsupported version");
    RectifierCircuit c;
    c.n_inputs_ = j.at("n_inputs").get<std::uint32_t>();
    c.n_outputs_ = j.at("n_outputs").get<std::uint32_t>();
    const auto& arr = j.at("nodes");
    if (!arr.is_array()) throw std::runtime_error("circuit json: nodes must be an array");

    std::vector<char> input_seen(c.n_inputs_, 0), output_seen(c.n_outputs_, 0);
    c.nodes_.reserve(arr.size());
    std::uint32_t expect_id = 0;
    for (const auto& nj : arr) {
        Node node;
        node.id = nj.at("id").get<std::uint32_t>();
        if (node.id != expect_id) reject(node.id, "ids must be 0..N-1 in order");
        ++expect_id;
        const std::string kind = nj.at("kind").get<std::string>();
        if (kind == "input") node.kind = NodeKind::input;
        else if (kind == "inner") node.kind = NodeKind::inner;
        else if (kind == "output") node.kind = NodeKind::output;
        else reject(node.id, "unknown kind '" + kind + "'");

        if (node.kind != NodeKind::inner) {
            node.index = nj.at("index").get<std::int32_t>();
            auto& seen = node.kind == NodeKind::input ? input_seen : output_seen;
            const std::uint32_t limit = node.kind == NodeKind::input ? c.n_inputs_ : c.n_outputs_;
            if (node.index < 0 || static_cast<std::uint32_t>(node.index) >= limit)
                reject(node.id, "index out of range");
            if (seen[static_cast<std::size_t>(node.index)])
                reject(node.id, "duplicate index");
            seen[static_cast<std::size_t>(node.index)] = 1;
        }
        if (node.kind == NodeKind::input) {
            if (nj.contains("preds") && !nj.at("preds").empty())
                reject(node.id, "input node must not have preds");
        } else {
            for (const auto& pj : nj.at("preds")) {
                const std::int64_t p = pj.get<std::int64_t>();
                if (p < 0 || p >= static_cast<std::int64_t>(node.id))
                    reject(node.id, "pred id must be smaller than node id");
                node.preds.push_back(static_cast<std::uint32_t>(p));
            }
            if (!std::is_sorted(node.preds.begin(), node.preds.end()))
                reject(node.id, "preds must be sorted ascending");
            if (std::adjacent_find(node.preds.begin(), node.preds.end()) != node.preds.end())
                reject(node.id, "duplicate pred");
        }
        c.nodes_.push_back(std::move(node));
    }
    for (std::uint32_t i = 0; i < c.n_inputs_; ++i)
        if (!input_seen[i]) throw std::runtime_error("circuit json: missing input index " + std::to_string(i));
    for (std::uint32_t i = 0; i < c.n_outputs_; ++i)
        if (!output_seen[i]) throw std::runtime_error("circuit json: missing output index " + std::to_string(i));
    return c;
}

std::string RectifierCircuit::to_dot() const {
    auto name = [](const Node& n) {
        switch (n.kind) {
            case NodeKind::input: return "in" + std::to_string(n.index);
            case NodeKind::output: return "out" + std::to_string(n.index);
            default: return "v" + std::to_string(n.id);
        }
    };
    std::string s = "digraph circuit {\n  rankdir=LR;\n";
    s += "  { rank=source;";
    for (const Node& n : nodes_)
        if (n.kind == NodeKind::input) s += " in" + std::to_string(n.index) + ";";
    s += " }\n  { rank=sink;";
    for (const Node& n : nodes_)
        if (n.kind == NodeKind::output) s += " out" + std::to_string(n.index) + ";";
    s += " }\n";
    for (const Node& n : nodes_)
        for (std::uint32_t p : n.preds)
            s += "  " + name(nodes_[p]) + " -> " + name(n) + ";\n";
    s += "}\n";
    return s;
}

} // namespace xcirc
