#include "margulis/gf2_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace margulis {

BinVector BinVector::from_bits(std::span<const int> bits) {
    BinVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] & 1) v.set(i);
    return v;
}

BinVector BinVector::from_string(std::string_view bits) {
    BinVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i);
        else if (bits[i] != '0')
            throw std::invalid_argument("bit string may only contain 0 and 1");
    }
    return v;
}

std::size_t BinVector::weight() const {
    std::size_t w = 0;
    for (word_t x : words_) w += static_cast<std::size_t>(std::popcount(x));
    return w;
}

bool BinVector::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](word_t x) { return x == 0; });
}

std::vector<std::size_t> BinVector::support() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        word_t x = words_[w];
        while (x) {
            out.push_back(w * word_bits + static_cast<std::size_t>(std::countr_zero(x)));
            x &= x - 1;
        }
    }
    return out;
}

std::string BinVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

BinVector& BinVector::operator^=(const BinVector& other) {
    if (other.len_ != len_) throw std::invalid_argument("BinVector length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

BinVector& BinVector::operator&=(const BinVector& other) {
    if (other.len_ != len_) throw std::invalid_argument("BinVector length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

BinMatrix BinMatrix::identity(std::size_t n) {
    BinMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BinMatrix BinMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    BinMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            if (rows[r][c] & 1) m.set(r, c);
    }
    return m;
}

BinMatrix BinMatrix::from_strings(const std::vector<std::string>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    BinMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged rows");
        m.set_row(r, BinVector::from_string(rows[r]));
    }
    return m;
}

BinVector BinMatrix::row(std::size_t r) const {
    BinVector v(cols_);
    auto src = row_words(r);
    std::copy(src.begin(), src.end(), v.words().begin());
    return v;
}

void BinMatrix::set_row(std::size_t r, const BinVector& v) {
    if (v.size() != cols_) throw std::invalid_argument("set_row: length mismatch");
    auto src = v.words();
    std::copy(src.begin(), src.end(), row_words(r).begin());
}

void BinMatrix::xor_row(std::size_t dst, std::size_t src) {
    word_t* d = data_.data() + dst * stride_;
    const word_t* s = data_.data() + src * stride_;
    for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void BinMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * stride_, data_.begin() + (a + 1) * stride_, data_.begin() + b * stride_);
}

std::size_t BinMatrix::row_weight(std::size_t r) const {
    std::size_t w = 0;
    for (word_t x : row_words(r)) w += static_cast<std::size_t>(std::popcount(x));
    return w;
}

std::size_t BinMatrix::col_weight(std::size_t c) const {
    std::size_t w = 0;
    for (std::size_t r = 0; r < rows_; ++r) w += get(r, c);
    return w;
}

std::vector<std::size_t> BinMatrix::row_support(std::size_t r) const {
    std::vector<std::size_t> out;
    auto words = row_words(r);
    for (std::size_t w = 0; w < words.size(); ++w) {
        word_t x = words[w];
        while (x) {
            out.push_back(w * word_bits + static_cast<std::size_t>(std::countr_zero(x)));
            x &= x - 1;
        }
    }
    return out;
}

bool BinMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](word_t x) { return x == 0; });
}

BinMatrix transpose(const BinMatrix& m) {
    BinMatrix t(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c : m.row_support(r)) t.set(c, r);
    return t;
}

BinMatrix multiply(const BinMatrix& a, const BinMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
    BinMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto dst = out.row_words(r);
        for (std::size_t k : a.row_support(r)) {
            auto src = b.row_words(k);
            for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
        }
    }
    return out;
}

BinMatrix add(const BinMatrix& a, const BinMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: shape mismatch");
    BinMatrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto dst = out.row_words(r);
        auto src = b.row_words(r);
        for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
    }
    return out;
}

BinMatrix hstack(const BinMatrix& left, const BinMatrix& right) {
    if (left.rows() != right.rows()) throw std::invalid_argument("hstack: row counts differ");
    BinMatrix out(left.rows(), left.cols() + right.cols());
    for (std::size_t r = 0; r < left.rows(); ++r) {
        for (std::size_t c : left.row_support(r)) out.set(r, c);
        for (std::size_t c : right.row_support(r)) out.set(r, left.cols() + c);
    }
    return out;
}

BinMatrix vstack(const BinMatrix& top, const BinMatrix& bottom) {
    if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack: column counts differ");
    BinMatrix out(top.rows() + bottom.rows(), top.cols());
    for (std::size_t r = 0; r < top.rows(); ++r) out.set_row(r, top.row(r));
    for (std::size_t r = 0; r < bottom.rows(); ++r) out.set_row(top.rows() + r, bottom.row(r));
    return out;
}

BinVector mul_vec(const BinMatrix& m, const BinVector& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("mul_vec: length mismatch");
    BinVector out(m.rows());
    auto vw = v.words();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto rw = m.row_words(r);
        word_t acc = 0;
        for (std::size_t w = 0; w < rw.size(); ++w) acc ^= rw[w] & vw[w];
        if (std::popcount(acc) & 1) out.set(r);
    }
    return out;
}

bool dot(const BinVector& a, const BinVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    auto aw = a.words();
    auto bw = b.words();
    word_t acc = 0;
    for (std::size_t w = 0; w < aw.size(); ++w) acc ^= aw[w] & bw[w];
    return std::popcount(acc) & 1;
}

Echelon row_reduce(BinMatrix m, BinVector rhs, std::span<const std::size_t> column_order) {
    if (rhs.size() != m.rows()) throw std::invalid_argument("row_reduce: rhs length mismatch");
    std::vector<std::size_t> natural;
    if (column_order.empty()) {
        natural.resize(m.cols());
        std::iota(natural.begin(), natural.end(), std::size_t{0});
        column_order = natural;
    }
    Echelon e;
    std::size_t next = 0;
    for (std::size_t c : column_order) {
        if (next == m.rows()) break;
        std::size_t pivot = next;
        while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(pivot, next);
        bool tmp = rhs.get(pivot);
        rhs.set(pivot, rhs.get(next));
        rhs.set(next, tmp);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != next && m.get(r, c)) {
                m.xor_row(r, next);
                if (rhs.get(next)) rhs.flip(r);
            }
        }
        e.pivot_cols.push_back(c);
        ++next;
    }
    e.reduced = std::move(m);
    e.rhs = std::move(rhs);
    return e;
}

std::size_t rank(const BinMatrix& m) { return row_reduce(m, BinVector(m.rows())).rank(); }

BinMatrix kernel_basis(const BinMatrix& m) {
    Echelon e = row_reduce(m, BinVector(m.rows()));
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
    BinMatrix basis(m.cols() - e.rank(), m.cols());
    std::size_t out = 0;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        basis.set(out, f);
        for (std::size_t i = 0; i < e.rank(); ++i)
            if (e.reduced.get(i, f)) basis.set(out, e.pivot_cols[i]);
        ++out;
    }
    return basis;
}

bool in_row_space(const BinVector& v, const BinMatrix& m) {
    if (v.size() != m.cols()) throw std::invalid_argument("in_row_space: length mismatch");
    BinMatrix one(1, m.cols());
    one.set_row(0, v);
    return rank(m) == rank(vstack(m, one));
}

std::optional<BinVector> solve_particular(const BinMatrix& m, const BinVector& s) {
    if (s.size() != m.rows()) throw std::invalid_argument("solve_particular: syndrome length mismatch");
    Echelon e = row_reduce(m, s);
    for (std::size_t r = e.rank(); r < m.rows(); ++r)
        if (e.rhs.get(r)) return std::nullopt;
    BinVector x(m.cols());
    for (std::size_t i = 0; i < e.rank(); ++i)
        if (e.rhs.get(i)) x.set(e.pivot_cols[i]);
    return x;
}

RowSpace::RowSpace(const BinMatrix& m) {
    Echelon e = row_reduce(m, BinVector(m.rows()));
    pivots_ = e.pivot_cols;
    basis_ = BinMatrix(pivots_.size(), m.cols());
    for (std::size_t i = 0; i < pivots_.size(); ++i) basis_.set_row(i, e.reduced.row(i));
}

bool RowSpace::contains(const BinVector& v) const {
    if (v.size() != basis_.cols()) throw std::invalid_argument("RowSpace::contains: length mismatch");
    BinVector rest = v;
    auto rw = rest.words();
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        if (!rest.get(pivots_[i])) continue;
        auto bw = basis_.row_words(i);
        for (std::size_t w = 0; w < rw.size(); ++w) rw[w] ^= bw[w];
    }
    return rest.is_zero();
}

}  // namespace margulis
