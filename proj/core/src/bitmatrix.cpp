#include "conic/bitmatrix.hpp"

#include <bit>
#include <stdexcept>

namespace conic {

BitMatrix::BitMatrix(int64_t rows, int64_t cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
    wpr_ = (cols + 63) >> 6;
    data_.assign(size_t(rows * wpr_), 0);
}

BitMatrix BitMatrix::identity(int64_t n) {
    BitMatrix m(n, n);
    for (int64_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::all_ones(int64_t n) {
    BitMatrix m(n, n);
    for (int64_t i = 0; i < n; ++i)
        for (int64_t w = 0; w < m.wpr_; ++w) m.data_[size_t(i * m.wpr_ + w)] = ~uint64_t(0);
    m.mask_tail();
    return m;
}

void BitMatrix::mask_tail() {
    int tail = int(cols_ & 63);
    if (tail == 0 || wpr_ == 0) return;
    uint64_t mask = (uint64_t(1) << tail) - 1;
    for (int64_t r = 0; r < rows_; ++r) data_[size_t(r * wpr_ + wpr_ - 1)] &= mask;
}

void BitMatrix::xor_row_into(int64_t src, std::span<uint64_t> dst) const {
    const uint64_t* s = data_.data() + src * wpr_;
    for (int64_t w = 0; w < wpr_; ++w) dst[size_t(w)] ^= s[w];
}

int64_t BitMatrix::row_weight(int64_t r) const {
    int64_t n = 0;
    for (uint64_t w : row(r)) n += std::popcount(w);
    return n;
}

BitMatrix BitMatrix::operator+(const BitMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch");
    BitMatrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] ^= o.data_[i];
    return out;
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch");
    BitMatrix out(rows_, o.cols_);
    for (int64_t i = 0; i < rows_; ++i) {
        uint64_t* acc = out.data_.data() + i * out.wpr_;
        const uint64_t* src = data_.data() + i * wpr_;
        for (int64_t w = 0; w < wpr_; ++w) {
            uint64_t bits = src[w];
            while (bits) {
                int64_t k = (w << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                const uint64_t* orow = o.data_.data() + k * o.wpr_;
                for (int64_t v = 0; v < o.wpr_; ++v) acc[v] ^= orow[v];
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::pow(int64_t k) const {
    if (rows_ != cols_) throw std::invalid_argument("pow needs a square matrix");
    if (k < 1) throw std::invalid_argument("pow needs k >= 1");
    BitMatrix base = *this;
    BitMatrix acc;
    bool have = false;
    while (k) {
        if (k & 1) {
            acc = have ? acc * base : base;
            have = true;
        }
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix out(cols_, rows_);
    for (int64_t r = 0; r < rows_; ++r) {
        const uint64_t* src = data_.data() + r * wpr_;
        for (int64_t w = 0; w < wpr_; ++w) {
            uint64_t bits = src[w];
            while (bits) {
                int64_t c = (w << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                out.set(c, r, true);
            }
        }
    }
    return out;
}

bool BitMatrix::is_zero() const {
    for (uint64_t w : data_)
        if (w) return false;
    return true;
}

namespace {

// In-place row reduction; returns pivot columns. rows are spans into data.
std::vector<int64_t> reduce(std::vector<uint64_t>& data, int64_t rows, int64_t wpr,
                            int64_t cols) {
    std::vector<int64_t> pivots;
    int64_t r = 0;
    for (int64_t c = 0; c < cols && r < rows; ++c) {
        int64_t w = c >> 6;
        uint64_t m = uint64_t(1) << (c & 63);
        int64_t pr = -1;
        for (int64_t i = r; i < rows; ++i)
            if (data[size_t(i * wpr + w)] & m) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int64_t v = 0; v < wpr; ++v)
                std::swap(data[size_t(r * wpr + v)], data[size_t(pr * wpr + v)]);
        for (int64_t i = 0; i < rows; ++i) {
            if (i != r && (data[size_t(i * wpr + w)] & m))
                for (int64_t v = 0; v < wpr; ++v)
                    data[size_t(i * wpr + v)] ^= data[size_t(r * wpr + v)];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int64_t BitMatrix::rank() const {
    std::vector<uint64_t> work = data_;
    return int64_t(reduce(work, rows_, wpr_, cols_).size());
}

BitMatrix BitMatrix::nullspace_basis() const {
    std::vector<uint64_t> work = data_;
    auto pivots = reduce(work, rows_, wpr_, cols_);
    std::vector<char> is_pivot(size_t(cols_), 0);
    for (int64_t c : pivots) is_pivot[size_t(c)] = 1;
    BitMatrix basis(cols_ - int64_t(pivots.size()), cols_);
    int64_t bi = 0;
    for (int64_t fc = 0; fc < cols_; ++fc) {
        if (is_pivot[size_t(fc)]) continue;
        basis.set(bi, fc, true);
        for (size_t pr = 0; pr < pivots.size(); ++pr) {
            if ((work[pr * size_t(wpr_) + size_t(fc >> 6)] >> (fc & 63)) & 1)
                basis.set(bi, pivots[pr], true);
        }
        ++bi;
    }
    return basis;
}

BitMatrix BitMatrix::row_space_basis() const {
    std::vector<uint64_t> work = data_;
    auto pivots = reduce(work, rows_, wpr_, cols_);
    BitMatrix out(int64_t(pivots.size()), cols_);
    for (size_t r = 0; r < pivots.size(); ++r)
        for (int64_t w = 0; w < wpr_; ++w)
            out.row(int64_t(r))[size_t(w)] = work[r * size_t(wpr_) + size_t(w)];
    return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch");
    BitMatrix out(a.rows_ + b.rows_, a.cols_);
    std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
    std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + a.data_.size());
    return out;
}

BitMatrix BitMatrix::submatrix(std::span<const int32_t> rows,
                               std::span<const int32_t> cols) const {
    BitMatrix out(int64_t(rows.size()), int64_t(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            if (get(rows[i], cols[j])) out.set(int64_t(i), int64_t(j), true);
    return out;
}

bool rowspace_contains(const BitMatrix& a, const BitMatrix& b) {
    return BitMatrix::vstack(a, b).rank() == a.rank();
}

int64_t rowspace_intersection_dim(const BitMatrix& a, const BitMatrix& b) {
    return a.rank() + b.rank() - BitMatrix::vstack(a, b).rank();
}

PFMatrix::PFMatrix(int64_t rows, int64_t cols, int64_t p) : rows_(rows), cols_(cols), p_(p) {
    if (p < 2) throw std::invalid_argument("bad modulus");
    data_.assign(size_t(rows * cols), 0);
}

PFMatrix PFMatrix::from_bits(const BitMatrix& m, int64_t p) {
    PFMatrix out(m.rows(), m.cols(), p);
    for (int64_t r = 0; r < m.rows(); ++r)
        for (int64_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) out.set(r, c, 1);
    return out;
}

int64_t PFMatrix::rank() const {
    std::vector<int32_t> w = data_;
    auto at = [&](int64_t r, int64_t c) -> int32_t& { return w[size_t(r * cols_ + c)]; };
    auto inv_mod = [&](int64_t a) {
        int64_t r = 1, b = a % p_, k = p_ - 2;  // Fermat
        while (k) {
            if (k & 1) r = r * b % p_;
            b = b * b % p_;
            k >>= 1;
        }
        return r;
    };
    int64_t rank = 0;
    for (int64_t c = 0; c < cols_ && rank < rows_; ++c) {
        int64_t pr = -1;
        for (int64_t i = rank; i < rows_; ++i)
            if (at(i, c) % p_ != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != rank)
            for (int64_t j = c; j < cols_; ++j) std::swap(at(rank, j), at(pr, j));
        int64_t piv_inv = inv_mod(at(rank, c));
        for (int64_t j = c; j < cols_; ++j)
            at(rank, j) = int32_t(int64_t(at(rank, j)) * piv_inv % p_);
        for (int64_t i = 0; i < rows_; ++i) {
            if (i == rank) continue;
            int64_t f = at(i, c) % p_;
            if (f == 0) continue;
            for (int64_t j = c; j < cols_; ++j)
                at(i, j) = int32_t(((at(i, j) - f * at(rank, j)) % p_ + p_) % p_);
        }
        ++rank;
    }
    return rank;
}

}  // namespace conic
