// Command-line front end: synthesize, verify, evaluate, inspect and
// benchmark circulant XOR circuits.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/IO error.
#include "xcirc/circuit.hpp"
#include "xcirc/gf2.hpp"
#include "xcirc/synth.hpp"
#include "xcirc/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace xcirc;

struct KernelOpts {
    std::string spec;          // path | hex:.. | random:SEED
    std::size_t n = 0;         // 0: take from file
    bool as_convolution = false;
};

// Big-endian hex: bit 0 of the kernel string is the most significant bit
// of the first digit. Shorter strings are zero-padded on the right; extra
// bits beyond n must be zero.
BitVector decode_hex(const std::string& hex, std::size_t n) {
    if (hex.empty()) throw std::runtime_error("empty hex kernel");
    BitVector bits(n);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        const char ch = hex[i];
        int v;
        if (ch >= '0' && ch <= '9') v = ch - '0';
        else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
        else throw std::runtime_error("bad hex digit in kernel");
        for (int k = 0; k < 4; ++k) {
            const bool bit = (v >> (3 - k)) & 1;
            const std::size_t pos = 4 * i + static_cast<std::size_t>(k);
            if (pos < n) bits.set(pos, bit);
            else if (bit) throw std::runtime_error("hex kernel has set bits beyond n");
        }
    }
    return bits;
}

CirculantKernel load_kernel(const KernelOpts& opts) {
    BitVector bits;
    if (opts.spec.rfind("random:", 0) == 0) {
        if (opts.n == 0) throw std::runtime_error("--n is required with random: kernels");
        bits = random_bits(opts.n, std::stoull(opts.spec.substr(7)));
    } else if (opts.spec.rfind("hex:", 0) == 0) {
        if (opts.n == 0) throw std::runtime_error("--n is required with hex: kernels");
        bits = decode_hex(opts.spec.substr(4), opts.n);
    } else {
        std::ifstream in(opts.spec);
        if (!in) throw std::runtime_error("cannot read kernel file: " + opts.spec);
        bits = read_first_row(in);
        if (opts.n != 0 && opts.n != bits.size())
            throw std::runtime_error("--n does not match kernel file length");
    }
    return opts.as_convolution ? CirculantKernel{bits.size(), bits}
                               : kernel_from_first_row(bits);
}

RectifierCircuit load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read circuit file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return RectifierCircuit::from_json(buf.str());
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string stats_json(const RectifierCircuit& c) {
    const CircuitStats st = c.stats();
    return "{\"n_inputs\":" + std::to_string(c.n_inputs()) +
           ",\"n_outputs\":" + std::to_string(c.n_outputs()) +
           ",\"nodes\":" + std::to_string(st.nodes) +
           ",\"edges\":" + std::to_string(st.edges) +
           ",\"depth\":" + std::to_string(st.depth) + "}";
}

int run_synth(const KernelOpts& kopts, int depth, const std::string& out_path,
              const std::string& dot_path) {
    const CirculantKernel kernel = load_kernel(kopts);
    const RectifierCircuit c = synth(kernel, depth);
    write_file(out_path, c.to_json());
    if (!dot_path.empty()) write_file(dot_path, c.to_dot());
    std::cout << stats_json(c) << "\n";
    return 0;
}

int run_verify(const KernelOpts& kopts, const std::string& circuit_path,
               const std::string& mode, std::size_t trials, std::uint64_t seed) {
    const RectifierCircuit c = load_circuit(circuit_path);
    KernelOpts k = kopts;
    if (k.n == 0) k.n = c.n_inputs();
    const CirculantKernel kernel = load_kernel(k);
    if (mode == "exact") {
        const ExactCheck r = verify_exact(c, kernel);
        if (r.ok) {
            std::cout << "ok\n";
            return 0;
        }
        std::cout << "mismatch at output " << r.row << " input " << r.col << "\n";
        return 1;
    }
    if (mode == "freivalds") {
        const FreivaldsCheck r = verify_freivalds(c, kernel, trials, seed);
        if (r.pass) {
            std::cout << "pass trials=" << trials << "\n";
            return 0;
        }
        std::cout << "fail at trial " << r.failed_trial << "\n";
        return 1;
    }
    throw std::runtime_error("unknown mode: " + mode);
}

int run_eval(const std::string& circuit_path, const std::string& input) {
    const RectifierCircuit c = load_circuit(circuit_path);
    const BitVector x = BitVector::from_string(input);
    if (x.size() != c.n_inputs()) throw std::runtime_error("input length does not match circuit");
    std::cout << c.evaluate(x).to_string() << "\n";
    return 0;
}

int run_bench(const std::vector<std::size_t>& ns, const std::vector<int>& depths,
              std::size_t seeds, const std::string& csv_path) {
    std::string csv = "n,d,seed,edges,depth,nodes,bound_base,ratio,synth_millis\n";
    for (std::size_t n : ns) {
        for (int d : depths) {
            for (std::size_t seed = 0; seed < seeds; ++seed) {
                const CirculantKernel kernel = random_kernel(n, seed);
                const auto t0 = std::chrono::steady_clock::now();
                const RectifierCircuit c = synth(kernel, d);
                const auto t1 = std::chrono::steady_clock::now();
                const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                const BoundsReport r = audit_bounds(c, d);
                char line[256];
                std::snprintf(line, sizeof line, "%zu,%d,%zu,%zu,%zu,%zu,%.10g,%.10g,%.3f\n",
                              n, d, seed, r.edges, r.depth, r.nodes, r.bound_base, r.ratio, ms);
                csv += line;
            }
        }
    }
    write_file(csv_path, csv);
    std::cout << "wrote " << csv_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded-depth XOR circuit synthesizer for circulant matrices"};
    app.require_subcommand(1);

    KernelOpts kopts;
    int depth = 0;
    std::string out_path, dot_path, circuit_path, mode = "exact", input;
    std::size_t trials = 40, seeds = 1;
    std::uint64_t seed = 1;
    std::vector<std::size_t> ns;
    std::vector<int> depths;
    std::string csv_path;

    auto add_kernel_opts = [&](CLI::App* cmd, bool need_kernel) {
        cmd->add_option("--kernel", kopts.spec, "kernel source: path, hex:.., or random:SEED")
            ->required(need_kernel);
        cmd->add_option("--n", kopts.n, "matrix order");
        CLI::Option* conv = cmd->add_flag("--kernel-is-convolution", kopts.as_convolution,
                                          "interpret bits as the convolution kernel instead of "
                                          "the first row");
        cmd->add_flag("--first-row", "interpret bits as the circulant first row (default)")
            ->excludes(conv);
    };

    CLI::App* c_synth = app.add_subcommand("synth", "synthesize a circuit");
    add_kernel_opts(c_synth, true);
    c_synth->add_option("--depth", depth, "depth budget")->required()->check(CLI::PositiveNumber);
    c_synth->add_option("--out", out_path, "output circuit JSON path")->required();
    c_synth->add_option("--dot", dot_path, "also write DOT to this path");

    CLI::App* c_verify = app.add_subcommand("verify", "check a circuit against a kernel");
    c_verify->add_option("--circuit", circuit_path, "circuit JSON path")->required();
    add_kernel_opts(c_verify, true);
    c_verify->add_option("--mode", mode, "exact or freivalds")->default_val("exact");
    c_verify->add_option("--trials", trials, "freivalds trial count")->default_val(40);
    c_verify->add_option("--seed", seed, "freivalds master seed")->default_val(1);

    CLI::App* c_eval = app.add_subcommand("eval", "evaluate a circuit on one input");
    c_eval->add_option("--circuit", circuit_path, "circuit JSON path")->required();
    c_eval->add_option("--input", input, "bit string, index 0 first")->required();

    CLI::App* c_stats = app.add_subcommand("stats", "print circuit statistics");
    c_stats->add_option("--circuit", circuit_path, "circuit JSON path")->required();

    CLI::App* c_dot = app.add_subcommand("export-dot", "write the circuit as a DOT graph");
    c_dot->add_option("--circuit", circuit_path, "circuit JSON path")->required();
    c_dot->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* c_bench = app.add_subcommand("bench", "synthesize a grid and write a CSV");
    c_bench->add_option("--ns", ns, "matrix orders")->required()->delimiter(',');
    c_bench->add_option("--depths", depths, "depth budgets")->required()->delimiter(',');
    c_bench->add_option("--seeds", seeds, "seeds per grid point (0..K-1)")->default_val(1);
    c_bench->add_option("--csv", csv_path, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_synth) return run_synth(kopts, depth, out_path, dot_path);
        if (*c_verify) return run_verify(kopts, circuit_path, mode, trials, seed);
        if (*c_eval) return run_eval(circuit_path, input);
        if (*c_stats) {
            std::cout << stats_json(load_circuit(circuit_path)) << "\n";
            return 0;
        }
        if (*c_dot) {
            const std::string dot = load_circuit(circuit_path).to_dot();
            if (out_path.empty()) std::cout << dot;
            else write_file(out_path, dot);
            return 0;
        }
        if (*c_bench) return run_bench(ns, depths, seeds, csv_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
