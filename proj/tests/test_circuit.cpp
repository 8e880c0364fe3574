#include "xcirc/circuit.hpp"

#include <doctest.h>
#include <json.hpp>

#include <numeric>
#include <random>
#include <stdexcept>

using namespace xcirc;

namespace {

std::vector<std::uint32_t> iota_ids(std::size_t n) {
    std::vector<std::uint32_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// Random layered DAG with one final output layer.
RectifierCircuit random_circuit(std::size_t n_in, std::size_t n_out, std::mt19937_64& gen) {
    RectifierCircuit c(static_cast<std::uint32_t>(n_in));
    std::vector<std::uint32_t> prev = iota_ids(n_in);
    const int layers = 1 + static_cast<int>(gen() % 3);
    for (int l = 0; l < layers; ++l) {
        const std::size_t width = 1 + gen() % (n_in + 2);
        std::vector<std::vector<std::uint32_t>> rows(width);
        for (auto& row : rows)
            for (std::size_t t = 0; t < prev.size(); ++t)
                if (gen() & 1) row.push_back(static_cast<std::uint32_t>(t));
        prev = c.add_linear_layer(prev, rows, false);
    }
    std::vector<std::vector<std::uint32_t>> out_rows(n_out);
    for (auto& row : out_rows)
        for (std::size_t t = 0; t < prev.size(); ++t)
            if (gen() & 1) row.push_back(static_cast<std::uint32_t>(t));
    c.add_linear_layer(prev, out_rows, true);
    return c;
}

GF2Matrix identity(std::size_t n) {
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

} // namespace

TEST_CASE("wire copy layer realizes the identity") {
    RectifierCircuit c(4);
    std::vector<std::vector<std::uint32_t>> rows{{0}, {1}, {2}, {3}};
    c.add_linear_layer(iota_ids(4), rows, true);
    CHECK(c.realized_matrix() == identity(4));
    CHECK(c.stats().depth == 1);
    CHECK(c.stats().edges == 4);
}

TEST_CASE("single xor node over two inputs") {
    RectifierCircuit c(2);
    c.add_linear_layer(iota_ids(2), {{0, 1}}, true);
    GF2Matrix m = c.realized_matrix();
    CHECK(m.rows() == 1);
    CHECK(m.get(0, 0));
    CHECK(m.get(0, 1));
}

TEST_CASE("empty row gives a zero output") {
    RectifierCircuit c(3);
    c.add_linear_layer(iota_ids(3), {{}}, true);
    GF2Matrix m = c.realized_matrix();
    for (std::size_t j = 0; j < 3; ++j) CHECK_FALSE(m.get(0, j));
    CHECK(c.stats().edges == 0);
}

TEST_CASE("duplicate row entries cancel") {
    RectifierCircuit c(2);
    c.add_linear_layer(iota_ids(2), {{0, 1, 0}}, true); // 0 appears twice
    GF2Matrix m = c.realized_matrix();
    CHECK_FALSE(m.get(0, 0));
    CHECK(m.get(0, 1));
    CHECK(c.stats().edges == 1);
}

TEST_CASE("layer rejects out-of-range row index") {
    RectifierCircuit c(2);
    CHECK_THROWS_AS(c.add_linear_layer(iota_ids(2), {{2}}, false), std::invalid_argument);
}

TEST_CASE("parity cancellation of two parallel paths") {
    RectifierCircuit c(1);
    auto mid = c.add_linear_layer(iota_ids(1), {{0}, {0}}, false);
    c.add_linear_layer(mid, {{0, 1}}, true);
    GF2Matrix m = c.realized_matrix();
    CHECK_FALSE(m.get(0, 0)); // two paths, even parity
    CHECK(c.stats().edges == 4);
}

TEST_CASE("circuit with no edges realizes the zero matrix") {
    RectifierCircuit c(3);
    c.add_linear_layer(iota_ids(3), std::vector<std::vector<std::uint32_t>>(2), true);
    GF2Matrix m = c.realized_matrix();
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK_FALSE(m.get(i, j));
    CHECK(c.stats().depth == 0);
}

TEST_CASE("splice wire-copy keeps the realized map") {
    RectifierCircuit sub(3);
    sub.add_linear_layer(iota_ids(3), {{0}, {1}, {2}}, true);

    RectifierCircuit outer(3);
    auto map = outer.splice(iota_ids(3), sub);
    std::vector<std::vector<std::uint32_t>> rows(3);
    std::vector<std::uint32_t> copies;
    for (const Node& n : sub.nodes())
        if (n.kind == NodeKind::output) copies.push_back(map[n.id]);
    for (std::size_t i = 0; i < 3; ++i) rows[i] = {static_cast<std::uint32_t>(i)};
    outer.add_linear_layer(copies, rows, true);
    CHECK(outer.realized_matrix() == identity(3));
}

TEST_CASE("splice depth and edge accounting") {
    std::mt19937_64 gen(3);
    RectifierCircuit sub = random_circuit(3, 2, gen);
    const std::size_t sub_edges = sub.stats().edges;
    const std::size_t sub_depth = sub.stats().depth;

    RectifierCircuit outer(3);
    auto l1 = outer.add_linear_layer(iota_ids(3), {{0, 1}, {1, 2}, {0}}, false);
    const std::size_t before = outer.stats().edges;
    outer.splice(l1, sub);
    CHECK(outer.stats().edges == before + sub_edges);
    CHECK(outer.stats().depth <= 1 + sub_depth);
    CHECK_THROWS_AS(outer.splice(iota_ids(2), sub), std::invalid_argument);
}

TEST_CASE("splicing independent subs onto disjoint attach sets") {
    std::mt19937_64 gen(4);
    RectifierCircuit sub_a = random_circuit(2, 2, gen);
    RectifierCircuit sub_b = random_circuit(2, 2, gen);

    RectifierCircuit outer(4);
    auto ids_a = std::vector<std::uint32_t>{0, 1};
    auto ids_b = std::vector<std::uint32_t>{2, 3};
    auto map_a = outer.splice(ids_a, sub_a);
    auto map_b = outer.splice(ids_b, sub_b);
    CHECK(outer.stats().edges == sub_a.stats().edges + sub_b.stats().edges);

    std::vector<std::uint32_t> outs;
    for (const Node& n : sub_a.nodes())
        if (n.kind == NodeKind::output) outs.push_back(map_a[n.id]);
    for (const Node& n : sub_b.nodes())
        if (n.kind == NodeKind::output) outs.push_back(map_b[n.id]);
    std::vector<std::vector<std::uint32_t>> rows(4);
    for (std::size_t i = 0; i < 4; ++i) rows[i] = {static_cast<std::uint32_t>(i)};
    outer.add_linear_layer(outs, rows, true);

    GF2Matrix m = outer.realized_matrix();
    GF2Matrix ma = sub_a.realized_matrix(), mb = sub_b.realized_matrix();
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(m.get(i, j) == ma.get(i, j));
            CHECK(m.get(2 + i, 2 + j) == mb.get(i, j));
            CHECK_FALSE(m.get(i, 2 + j));
            CHECK_FALSE(m.get(2 + i, j));
        }
}

TEST_CASE("evaluate matches the matrix route") {
    std::mt19937_64 gen(9);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 1 + gen() % 8;
        RectifierCircuit c = random_circuit(n, 1 + gen() % 5, gen);
        GF2Matrix m = c.realized_matrix();
        // exhaustive over all inputs for small n
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
            BitVector x(n);
            for (std::size_t i = 0; i < n; ++i) x.set(i, (mask >> i) & 1);
            CHECK(c.evaluate(x) == mat_vec_mod2(m, x));
        }
    }
}

TEST_CASE("evaluate linearity and basics") {
    std::mt19937_64 gen(10);
    RectifierCircuit c = random_circuit(12, 6, gen);
    CHECK(c.evaluate(BitVector(12)) == BitVector(6));
    for (int rep = 0; rep < 50; ++rep) {
        BitVector x = random_bits(12, gen()), x2 = random_bits(12, gen());
        BitVector both = x;
        both.xor_with(x2);
        BitVector want = c.evaluate(x);
        want.xor_with(c.evaluate(x2));
        CHECK(c.evaluate(both) == want);
    }
    CHECK_THROWS_AS(c.evaluate(BitVector(11)), std::invalid_argument);
}

TEST_CASE("evaluate matches the matrix route on larger circuits") {
    std::mt19937_64 gen(13);
    RectifierCircuit c = random_circuit(40, 25, gen);
    GF2Matrix m = c.realized_matrix();
    for (int rep = 0; rep < 100; ++rep) {
        BitVector x = random_bits(40, gen());
        CHECK(c.evaluate(x) == mat_vec_mod2(m, x));
    }
}

TEST_CASE("stats") {
    RectifierCircuit c(3);
    CHECK(c.stats().depth == 0);
    CHECK(c.stats().edges == 0);
    CHECK(c.stats().nodes == 3);
    c.add_linear_layer(iota_ids(3), {{0, 1}, {1, 2}}, true);
    CHECK(c.stats().depth == 1);
    CHECK(c.stats().edges == 4);
    CHECK(c.stats().nodes == 5);
}

TEST_CASE("json round trip") {
    std::mt19937_64 gen(11);
    for (int rep = 0; rep < 10; ++rep) {
        RectifierCircuit c = random_circuit(1 + gen() % 7, 1 + gen() % 7, gen);
        const std::string js = c.to_json();
        RectifierCircuit back = RectifierCircuit::from_json(js);
        CHECK(back.to_json() == js);
        CHECK(back.realized_matrix() == c.realized_matrix());
        CHECK(back.stats().edges == c.stats().edges);
        CHECK(back.stats().depth == c.stats().depth);
    }
}

TEST_CASE("json rejects invariant violations") {
    RectifierCircuit c(2);
    c.add_linear_layer(iota_ids(2), {{0, 1}}, true);
    nlohmann::json j = nlohmann::json::parse(c.to_json());

    {
        nlohmann::json bad = j;
        bad["nodes"][2]["preds"] = {3}; // pred id >= own id
        CHECK_THROWS(RectifierCircuit::from_json(bad.dump()));
    }
    {
        nlohmann::json bad = j;
        bad["nodes"][1]["index"] = 0; // duplicate input index
        CHECK_THROWS(RectifierCircuit::from_json(bad.dump()));
    }
    {
        nlohmann::json bad = j;
        bad["nodes"][2]["preds"] = {1, 0}; // unsorted
        CHECK_THROWS(RectifierCircuit::from_json(bad.dump()));
    }
    {
        nlohmann::json bad = j;
        bad["version"] = 2;
        CHECK_THROWS(RectifierCircuit::from_json(bad.dump()));
    }
    CHECK_THROWS(RectifierCircuit::from_json("not json"));
}

TEST_CASE("json rejects duplicate output index") {
    // two outputs, both claiming index 0
    const std::string text =
        R"({"version":1,"n_inputs":1,"n_outputs":2,"nodes":[)"
        R"({"id":0,"kind":"input","index":0},)"
        R"({"id":1,"kind":"output","index":0,"preds":[0]},)"
        R"({"id":2,"kind":"output","index":0,"preds":[0]}]})";
    CHECK_THROWS(RectifierCircuit::from_json(text));
}

TEST_CASE("dot export") {
    RectifierCircuit empty(2);
    std::string dot = empty.to_dot();
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("->") == std::string::npos);

    RectifierCircuit one(1);
    one.add_linear_layer(iota_ids(1), {{0}}, true);
    dot = one.to_dot();
    std::size_t arrows = 0;
    for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1))
        ++arrows;
    CHECK(arrows == 1);

    std::mt19937_64 gen(12);
    RectifierCircuit c = random_circuit(5, 3, gen);
    dot = c.to_dot();
    arrows = 0;
    for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1))
        ++arrows;
    CHECK(arrows == c.stats().edges);
}
