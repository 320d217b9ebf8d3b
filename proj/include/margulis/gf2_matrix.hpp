#ifndef MARGULIS_GF2_MATRIX_HPP
#define MARGULIS_GF2_MATRIX_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace margulis {

using word_t = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + word_bits - 1) / word_bits; }

/// Bit-packed vector over GF(2). Padding bits beyond size() are always zero.
class BinVector {
public:
    BinVector() = default;
    explicit BinVector(std::size_t len) : len_(len), words_(words_for(len), 0) {}

    static BinVector from_bits(std::span<const int> bits);
    static BinVector from_string(std::string_view bits);  // "0110..."

    std::size_t size() const { return len_; }
    bool get(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1u; }
    void set(std::size_t i, bool value = true) {
        word_t mask = word_t{1} << (i % word_bits);
        if (value)
            words_[i / word_bits] |= mask;
        else
            words_[i / word_bits] &= ~mask;
    }
    void flip(std::size_t i) { words_[i / word_bits] ^= word_t{1} << (i % word_bits); }

    std::size_t weight() const;
    bool is_zero() const;
    std::vector<std::size_t> support() const;
    std::string to_string() const;

    BinVector& operator^=(const BinVector& other);
    friend BinVector operator^(BinVector a, const BinVector& b) { return a ^= b; }
    BinVector& operator&=(const BinVector& other);
    friend BinVector operator&(BinVector a, const BinVector& b) { return a &= b; }
    friend bool operator==(const BinVector&, const BinVector&) = default;

    std::span<word_t> words() { return words_; }
    std::span<const word_t> words() const { return words_; }

private:
    std::size_t len_ = 0;
    std::vector<word_t> words_;
};

/// Dense bit-packed matrix over GF(2), row-major with word-aligned rows.
class BinMatrix {
public:
    BinMatrix() = default;
    BinMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * words_for(cols), 0) {}

    static BinMatrix identity(std::size_t n);
    static BinMatrix from_rows(const std::vector<std::vector<int>>& rows);
    /// Rows as bit strings, e.g. {"110", "011"}.
    static BinMatrix from_strings(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * stride_ + c / word_bits] >> (c % word_bits)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool value = true) {
        word_t mask = word_t{1} << (c % word_bits);
        if (value)
            data_[r * stride_ + c / word_bits] |= mask;
        else
            data_[r * stride_ + c / word_bits] &= ~mask;
    }
    void flip(std::size_t r, std::size_t c) { data_[r * stride_ + c / word_bits] ^= word_t{1} << (c % word_bits); }

    std::span<word_t> row_words(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
    std::span<const word_t> row_words(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }

    BinVector row(std::size_t r) const;
    void set_row(std::size_t r, const BinVector& v);
    /// row(dst) ^= row(src)
    void xor_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    std::size_t row_weight(std::size_t r) const;
    std::size_t col_weight(std::size_t c) const;
    std::vector<std::size_t> row_support(std::size_t r) const;
    bool is_zero() const;

    friend bool operator==(const BinMatrix&, const BinMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<word_t> data_;
};

BinMatrix transpose(const BinMatrix& m);
BinMatrix multiply(const BinMatrix& a, const BinMatrix& b);
BinMatrix add(const BinMatrix& a, const BinMatrix& b);
BinMatrix hstack(const BinMatrix& left, const BinMatrix& right);
BinMatrix vstack(const BinMatrix& top, const BinMatrix& bottom);

/// M * v^T, one bit per row of M.
BinVector mul_vec(const BinMatrix& m, const BinVector& v);
/// Parity of the overlap of two vectors.
bool dot(const BinVector& a, const BinVector& b);

std::size_t rank(const BinMatrix& m);
/// Rows form a basis of the right null space {x : M x^T = 0}.
BinMatrix kernel_basis(const BinMatrix& m);
/// Decided by comparing rank(M) with rank of M stacked with v.
bool in_row_space(const BinVector& v, const BinMatrix& m);
/// Some x with M x^T = s, or nullopt when the system is infeasible.
std::optional<BinVector> solve_particular(const BinMatrix& m, const BinVector& s);

/// Reduced row echelon form of [M | s] with pivots chosen leftmost along a
/// caller-supplied column order.
struct Echelon {
    BinMatrix reduced;
    BinVector rhs;  // transformed right-hand side, one bit per row
    std::vector<std::size_t> pivot_cols;  // pivot_cols[i] is the pivot of reduced row i
    std::size_t rank() const { return pivot_cols.size(); }
};

/// `column_order` empty means natural order 0..cols-1.
Echelon row_reduce(BinMatrix m, BinVector rhs, std::span<const std::size_t> column_order = {});

/// Precomputed row-space membership test for repeated queries.
class RowSpace {
public:
    explicit RowSpace(const BinMatrix& m);
    bool contains(const BinVector& v) const;
    std::size_t dimension() const { return pivots_.size(); }

private:
    BinMatrix basis_;
    std::vector<std::size_t> pivots_;
};

}  // namespace margulis

#endif  // MARGULIS_GF2_MATRIX_HPP
