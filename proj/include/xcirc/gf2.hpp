// Dense GF(2) linear algebra: bit vectors, matrices, cyclic convolution
// and the circulant kernel model.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace xcirc {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    // Parses a string of '0'/'1' characters, index 0 first.
    static BitVector from_string(const std::string& bits);

    std::size_t size() const { return len_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    // Coefficientwise XOR; sizes must match.
    void xor_with(const BitVector& other);

    std::size_t popcount() const;
    bool any() const;
    std::string to_string() const;
    const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

// Row-major bit matrix. Rows are word-packed so row XOR and
// matrix-vector products stay cheap.
class GF2Matrix {
public:
    GF2Matrix() = default;
    GF2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + 63) / 64),
          words_(rows * stride_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * stride_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t m = std::uint64_t(1) << (c & 63);
        std::uint64_t& w = words_[r * stride_ + (c >> 6)];
        if (v) w |= m; else w &= ~m;
    }
    BitVector row(std::size_t r) const;

    friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint64_t> words_;
};

// Length-n convolution kernel A of a circulant map: output C_k xors
// a_t * input_{(k-t) mod n}. Derived from a matrix first row via
// kernel_from_first_row.
struct CirculantKernel {
    std::size_t n = 0;
    BitVector a;

    // First row r of the matrix this kernel convolves by: r_t = a_{(n-t) mod n}.
    BitVector first_row() const;
    // The realized n x n matrix, entry (i,j) = a_{(i-j) mod n}.
    GF2Matrix matrix() const;
};

// Ground-truth oracle: C_k = xor over i+j = k (mod n) of a_i * b_j.
// Quadratic on purpose; every synthesis path is checked against this.
BitVector cyclic_convolve(const BitVector& a, const BitVector& b);

// Kernel of the circulant with first row r: a_t = r_{(n-t) mod n}, so that
// cyclic_convolve(a, x) equals circulant_to_matrix(r) * x.
CirculantKernel kernel_from_first_row(const BitVector& r);

// Entry (i,j) = r_{(j-i) mod n}.
GF2Matrix circulant_to_matrix(const BitVector& r);

BitVector mat_vec_mod2(const GF2Matrix& m, const BitVector& x);

// Deterministic pseudo-random kernel; same (n, seed) gives the same bits.
CirculantKernel random_kernel(std::size_t n, std::uint64_t seed);
BitVector random_bits(std::size_t n, std::uint64_t seed);

// Kernel text format: line 1 decimal n, line 2 n characters from {0,1}
// giving the FIRST ROW of the circulant, index 0 first.
BitVector read_first_row(std::istream& in);

} // namespace xcirc
