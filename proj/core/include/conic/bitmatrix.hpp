#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace conic {

/// Dense matrix over GF(2), rows packed into 64-bit words. Trailing bits past
/// cols are kept zero after every operation.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int64_t rows, int64_t cols);

    static BitMatrix identity(int64_t n);
    static BitMatrix all_ones(int64_t n);

    int64_t rows() const { return rows_; }
    int64_t cols() const { return cols_; }
    int64_t words_per_row() const { return wpr_; }

    bool get(int64_t r, int64_t c) const {
        return (data_[size_t(r * wpr_ + (c >> 6))] >> (c & 63)) & 1;
    }
    void set(int64_t r, int64_t c, bool v) {
        uint64_t m = uint64_t(1) << (c & 63);
        uint64_t& w = data_[size_t(r * wpr_ + (c >> 6))];
        w = v ? (w | m) : (w & ~m);
    }
    std::span<uint64_t> row(int64_t r) { return {data_.data() + r * wpr_, size_t(wpr_)}; }
    std::span<const uint64_t> row(int64_t r) const {
        return {data_.data() + r * wpr_, size_t(wpr_)};
    }
    void xor_row_into(int64_t src, std::span<uint64_t> dst) const;
    int64_t row_weight(int64_t r) const;

    BitMatrix operator+(const BitMatrix& o) const;  // XOR
    BitMatrix operator*(const BitMatrix& o) const;
    BitMatrix pow(int64_t k) const;  // k >= 1, square matrices
    BitMatrix transpose() const;
    bool operator==(const BitMatrix& o) const = default;
    bool is_zero() const;

    int64_t rank() const;
    /// Basis of {v : A v^T = 0}, one vector per row of the result.
    BitMatrix nullspace_basis() const;
    /// Nonzero rows of the reduced row echelon form.
    BitMatrix row_space_basis() const;

    static BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);
    BitMatrix submatrix(std::span<const int32_t> rows, std::span<const int32_t> cols) const;

private:
    void mask_tail();
    int64_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<uint64_t> data_;
};

/// True iff the row space of b is contained in the row space of a.
bool rowspace_contains(const BitMatrix& a, const BitMatrix& b);
/// dim(rowspace(a) ∩ rowspace(b)).
int64_t rowspace_intersection_dim(const BitMatrix& a, const BitMatrix& b);

/// Dense matrix over GF(p), p an odd prime; rank by elimination with modular
/// inverses.
class PFMatrix {
public:
    PFMatrix() = default;
    PFMatrix(int64_t rows, int64_t cols, int64_t p);
    static PFMatrix from_bits(const BitMatrix& m, int64_t p);

    int64_t rows() const { return rows_; }
    int64_t cols() const { return cols_; }
    int64_t p() const { return p_; }
    int64_t get(int64_t r, int64_t c) const { return data_[size_t(r * cols_ + c)]; }
    void set(int64_t r, int64_t c, int64_t v) {
        data_[size_t(r * cols_ + c)] = ((v % p_) + p_) % p_;
    }
    int64_t rank() const;

private:
    int64_t rows_ = 0, cols_ = 0, p_ = 0;
    std::vector<int32_t> data_;
};

}  // namespace conic
