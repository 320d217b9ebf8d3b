#ifndef MARGULIS_MATRIX_IO_HPP
#define MARGULIS_MATRIX_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "margulis/gf2_matrix.hpp"

namespace margulis {

/// Malformed or inconsistent file content.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// MacKay alist: "cols rows", max column/row weights, the weight lists, then
// 1-based column and row adjacency lists padded with zeros.
void write_alist(std::ostream& os, const BinMatrix& m);
BinMatrix read_alist(std::istream& is);

/// Row as hex digits, most significant nibble first: bit 0 of the row is the
/// top bit of the first digit.
std::string row_to_hex(const BinMatrix& m, std::size_t r);
BinVector hex_to_row(const std::string& hex, std::size_t cols);

/// {"rows": R, "cols": C, "hex": ["..", ...]}
nlohmann::json matrix_to_json(const BinMatrix& m);
BinMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace margulis

#endif  // MARGULIS_MATRIX_IO_HPP
