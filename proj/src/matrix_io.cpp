#include "margulis/matrix_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace margulis {

void write_alist(std::ostream& os, const BinMatrix& m) {
    BinMatrix t = transpose(m);
    std::size_t max_col = 0;
    std::size_t max_row = 0;
    for (std::size_t c = 0; c < t.rows(); ++c) max_col = std::max(max_col, t.row_weight(c));
    for (std::size_t r = 0; r < m.rows(); ++r) max_row = std::max(max_row, m.row_weight(r));

    os << m.cols() << ' ' << m.rows() << '\n' << max_col << ' ' << max_row << '\n';
    for (std::size_t c = 0; c < t.rows(); ++c) os << (c ? " " : "") << t.row_weight(c);
    os << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) os << (r ? " " : "") << m.row_weight(r);
    os << '\n';

    auto emit = [&os](const BinMatrix& mat, std::size_t width) {
        for (std::size_t i = 0; i < mat.rows(); ++i) {
            auto support = mat.row_support(i);
            for (std::size_t k = 0; k < width; ++k) {
                if (k) os << ' ';
                os << (k < support.size() ? support[k] + 1 : 0);
            }
            os << '\n';
        }
    };
    emit(t, max_col);
    emit(m, max_row);
}

BinMatrix read_alist(std::istream& is) {
    auto next = [&is]() {
        long long v = 0;
        if (!(is >> v)) throw FormatError("alist: unexpected end of input");
        if (v < 0) throw FormatError("alist: negative value");
        return static_cast<std::size_t>(v);
    };
    std::size_t cols = next();
    std::size_t rows = next();
    std::size_t max_col = next();
    std::size_t max_row = next();
    std::vector<std::size_t> col_w(cols), row_w(rows);
    for (auto& w : col_w) w = next();
    for (auto& w : row_w) w = next();

    BinMatrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t seen = 0;
        for (std::size_t k = 0; k < max_col; ++k) {
            std::size_t r = next();
            if (r == 0) continue;
            if (r > rows) throw FormatError("alist: row index out of range");
            m.set(r - 1, c);
            ++seen;
        }
        if (seen != col_w[c]) throw FormatError("alist: column weight disagrees with adjacency");
    }
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t seen = 0;
        for (std::size_t k = 0; k < max_row; ++k) {
            std::size_t c = next();
            if (c == 0) continue;
            if (c > cols) throw FormatError("alist: column index out of range");
            if (!m.get(r, c - 1)) throw FormatError("alist: row and column lists disagree");
            ++seen;
        }
        if (seen != row_w[r]) throw FormatError("alist: row weight disagrees with adjacency");
    }
    return m;
}

std::string row_to_hex(const BinMatrix& m, std::size_t r) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out((m.cols() + 3) / 4, '0');
    for (std::size_t c : m.row_support(r)) {
        auto& ch = out[c / 4];
        int value = static_cast<int>(std::find(digits, digits + 16, ch) - digits);
        value |= 8 >> (c % 4);
        ch = digits[value];
    }
    return out;
}

BinVector hex_to_row(const std::string& hex, std::size_t cols) {
    if (hex.size() != (cols + 3) / 4) throw FormatError("hex row has wrong length");
    BinVector v(cols);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        char ch = hex[i];
        int value;
        if (ch >= '0' && ch <= '9')
            value = ch - '0';
        else if (ch >= 'a' && ch <= 'f')
            value = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F')
            value = ch - 'A' + 10;
        else
            throw FormatError("invalid hex digit");
        for (int b = 0; b < 4; ++b) {
            if (!(value & (8 >> b))) continue;
            std::size_t c = 4 * i + static_cast<std::size_t>(b);
            if (c >= cols) throw FormatError("hex row sets padding bits");
            v.set(c);
        }
    }
    return v;
}

nlohmann::json matrix_to_json(const BinMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(row_to_hex(m, r));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"hex", std::move(rows)}};
}

BinMatrix matrix_from_json(const nlohmann::json& j) {
    try {
        auto rows = j.at("rows").get<std::size_t>();
        auto cols = j.at("cols").get<std::size_t>();
        const auto& hex = j.at("hex");
        if (!hex.is_array() || hex.size() != rows) throw FormatError("matrix: hex row count mismatch");
        BinMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) m.set_row(r, hex_to_row(hex[r].get<std::string>(), cols));
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("matrix: ") + e.what());
    }
}

}  // namespace margulis
