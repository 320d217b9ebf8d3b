#ifndef MARGULIS_FINITE_GROUP_HPP
#define MARGULIS_FINITE_GROUP_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace margulis {

enum class GroupKind { cyclic, product_of_cyclics, special_linear_2 };

/// Description of one of the supported finite groups.
///
/// Text form (used on the command line and in config files):
///   cyclic:N | product:N1,N2,... | sl2:P
struct GroupSpec {
    GroupKind kind = GroupKind::cyclic;
    std::vector<int> params;

    static GroupSpec cyclic(int n);
    static GroupSpec product_of_cyclics(std::vector<int> moduli);
    static GroupSpec special_linear_2(int p);

    /// Throws std::invalid_argument if the parameters are unusable.
    void validate() const;
    std::uint64_t order() const;

    std::string to_string() const;
    static GroupSpec parse(std::string_view text);

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// An element of a FiniteGroup, identified by its canonical index.
/// The tag ties the element to the group that produced it.
struct GroupElement {
    std::uint32_t index = 0;
    std::uint32_t group_tag = 0;

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.index == b.index && a.group_tag == b.group_tag;
    }
    friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
        return a.index <=> b.index;
    }
};

/// Maximum supported group order.
inline constexpr std::uint64_t max_group_order = 1'000'000;

bool is_prime(int p);

/// Enumerated finite group with canonical element indexing.
///
/// Index 0 is always the identity. The remaining elements follow in
/// row-major order of residue tuples (cyclic groups and their products) or
/// lexicographic order of the matrix entries (a, b, c, d) of [[a, b], [c, d]]
/// (SL(2, Z_p)). Immutable once constructed.
class FiniteGroup {
public:
    explicit FiniteGroup(GroupSpec spec);

    const GroupSpec& spec() const { return spec_; }
    std::size_t order() const { return order_; }
    std::uint32_t tag() const { return tag_; }

    GroupElement identity() const { return {0, tag_}; }
    GroupElement from_index(std::size_t index) const;
    std::size_t element_index(GroupElement g) const;

    std::vector<GroupElement> enumerate() const;

    GroupElement mul(GroupElement g, GroupElement h) const;
    GroupElement inv(GroupElement g) const;
    /// h^-1 g h
    GroupElement conjugate(GroupElement g, GroupElement h) const;

    bool is_abelian() const;
    /// True iff {h^-1 s h : s in S} equals S as a set.
    bool normalizes(GroupElement h, std::span<const GroupElement> set) const;

    // Representations.
    std::vector<int> residues(GroupElement g) const;
    GroupElement from_residues(std::span<const int> residues) const;
    /// Entries (a, b, c, d) of [[a, b], [c, d]], reduced mod p.
    std::array<int, 4> matrix(GroupElement g) const;
    /// Reduces entries mod p; throws if the determinant is not 1.
    GroupElement from_matrix(std::array<long long, 4> entries) const;

    std::string format(GroupElement g) const;

private:
    void check(GroupElement g) const;
    std::uint32_t mul_index(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t lookup_matrix(const std::array<int, 4>& m) const;

    GroupSpec spec_;
    std::size_t order_ = 0;
    std::uint32_t tag_ = 0;
    int p_ = 0;
    // Residue tuples (products) or matrices (SL2), flattened.
    std::vector<int> repr_;
    std::size_t repr_width_ = 0;
    std::vector<std::uint32_t> inverse_;
    // Dense lookup from encoded matrix to index for small p.
    std::vector<std::uint32_t> matrix_lookup_;
    std::unordered_map<std::uint64_t, std::uint32_t> matrix_map_;
    // Full Cayley table for small groups.
    std::vector<std::uint32_t> table_;
};

}  // namespace margulis

#endif  // MARGULIS_FINITE_GROUP_HPP
