#ifndef MARGULIS_CODE_BUILDER_HPP
#define MARGULIS_CODE_BUILDER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "margulis/finite_group.hpp"
#include "margulis/gf2_matrix.hpp"

namespace margulis {

/// Two generator sets of equal size r. A multiplies on the right (block A
/// qubits g*a), B multiplies on the left (block B qubits b*g).
struct GeneratorSets {
    std::vector<GroupElement> a;
    std::vector<GroupElement> b;

    std::size_t r() const { return a.size(); }
    /// Throws std::invalid_argument unless |A| == |B| >= 2 and both sets are
    /// free of duplicates.
    void validate() const;
};

/// Provenance of a searched code.
struct SearchInfo {
    std::uint64_t seed = 0;
    int target_girth = 0;
    std::size_t restart_index = 0;
};

/// A two-block group-algebra CSS code: H_X = [A B], H_Z = [B^T A^T].
struct CssCode {
    BinMatrix hx;
    BinMatrix hz;
    GroupSpec group;
    GeneratorSets gens;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t dv = 0;
    std::size_t dc = 0;
    std::optional<int> girth_certificate;
    std::optional<SearchInfo> search;
};

/// Entry (g, g*a) = 1 for every g in G and a in `right`.
BinMatrix cayley_right(const FiniteGroup& group, std::span<const GroupElement> right);
/// Entry (g, b*g) = 1 for every g in G and b in `left`.
BinMatrix cayley_left(const FiniteGroup& group, std::span<const GroupElement> left);

/// Builds H_X, H_Z from arbitrary duplicate-free sets, without the |A| == |B|
/// requirement. Degrees are reported for the A block. Throws std::logic_error
/// if H_X * H_Z^T != 0.
CssCode assemble_2bga(const FiniteGroup& group, std::span<const GroupElement> a,
                      std::span<const GroupElement> b);

CssCode build_2bga(const FiniteGroup& group, const GeneratorSets& gens);

/// k = n - rank(H_X) - rank(H_Z)
std::size_t compute_dimension(const CssCode& code);

/// Margulis generators C [[1, eta], [0, 1]] C^-1 mod p, one per (m, q) pair.
/// C = [[m, a], [q, b]] with det C = 1 and |a|, |b| < eta / 2.
std::vector<GroupElement> margulis_generators(const FiniteGroup& group, int eta,
                                              std::span<const std::pair<int, int>> pairs);

/// Completion (a, b) of the column (m, q) to an integer matrix of determinant
/// one, bounded by |a|, |b| < eta / 2. Throws if none exists.
std::pair<long long, long long> complete_sl2z(long long m, long long q, int eta);

}  // namespace margulis

#endif  // MARGULIS_CODE_BUILDER_HPP
