#include "xcirc/gf2.hpp"

#include <bit>
#include <istream>
#include <random>
#include <stdexcept>

namespace xcirc {

BitVector BitVector::from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') v.set(i, true);
        else if (bits[i] != '0') throw std::invalid_argument("BitVector: bad character in bit string");
    }
    return v;
}

void BitVector::xor_with(const BitVector& other) {
    if (other.len_ != len_) throw std::invalid_argument("BitVector: length mismatch in xor");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
}

std::size_t BitVector::popcount() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
}

bool BitVector::any() const {
    for (std::uint64_t w : words_) if (w) return true;
    return false;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) if (get(i)) s[i] = '1';
    return s;
}

BitVector GF2Matrix::row(std::size_t r) const {
    BitVector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v.set(c, get(r, c));
    return v;
}

BitVector CirculantKernel::first_row() const {
    BitVector r(n);
    for (std::size_t t = 0; t < n; ++t) r.set(t, a.get((n - t) % n));
    return r;
}

GF2Matrix CirculantKernel::matrix() const {
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.set(i, j, a.get((i + n - j) % n));
    return m;
}

BitVector cyclic_convolve(const BitVector& a, const BitVector& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("cyclic_convolve: length mismatch");
    if (n == 0) throw std::invalid_argument("cyclic_convolve: empty input");
    BitVector c(n);
    for (std::size_t k = 0; k < n; ++k) {
        bool acc = false;
        for (std::size_t i = 0; i < n; ++i)
            acc ^= a.get(i) & b.get((k + n - i) % n);
        c.set(k, acc);
    }
    return c;
}

CirculantKernel kernel_from_first_row(const BitVector& r) {
    const std::size_t n = r.size();
    if (n == 0) throw std::invalid_argument("kernel_from_first_row: empty first row");
    BitVector a(n);
    for (std::size_t t = 0; t < n; ++t) a.set(t, r.get((n - t) % n));
    return CirculantKernel{n, std::move(a)};
}

GF2Matrix circulant_to_matrix(const BitVector& r) {
    const std::size_t n = r.size();
    if (n == 0) throw std::invalid_argument("circulant_to_matrix: empty first row");
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.set(i, j, r.get((j + n - i) % n));
    return m;
}

BitVector mat_vec_mod2(const GF2Matrix& m, const BitVector& x) {
    if (x.size() != m.cols()) throw std::invalid_argument("mat_vec_mod2: dimension mismatch");
    BitVector y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        bool acc = false;
        for (std::size_t j = 0; j < m.cols(); ++j)
            acc ^= m.get(i, j) & x.get(j);
        y.set(i, acc);
    }
    return y;
}

BitVector random_bits(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    BitVector v(n);
    for (std::size_t base = 0; base < n; base += 64) {
        std::uint64_t w = gen();
        for (std::size_t k = 0; k < 64 && base + k < n; ++k)
            v.set(base + k, (w >> k) & 1);
    }
    return v;
}

CirculantKernel random_kernel(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("random_kernel: n must be positive");
    return CirculantKernel{n, random_bits(n, seed)};
}

BitVector read_first_row(std::istream& in) {
    long long n = -1;
    if (!(in >> n) || n < 1) throw std::runtime_error("kernel text: bad length line");
    std::string bits;
    if (!(in >> bits)) throw std::runtime_error("kernel text: missing bit line");
    if (bits.size() != static_cast<std::size_t>(n))
        throw std::runtime_error("kernel text: bit line length does not match n");
    return BitVector::from_string(bits);
}

} // namespace xcirc
