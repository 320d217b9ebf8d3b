#ifndef MARGULIS_TANNER_GRAPH_HPP
#define MARGULIS_TANNER_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "margulis/code_builder.hpp"
#include "margulis/gf2_matrix.hpp"

namespace margulis {

enum class CheckSide { x, z };

/// Bipartite graph of a parity-check matrix. Node ids used by the graph
/// algorithms: checks are 0..m-1, variables are m..m+n-1.
class TannerGraph {
public:
    TannerGraph() = default;
    explicit TannerGraph(const BinMatrix& h);
    /// Graph of H_X (side x) or H_Z (side z) with block/group labels.
    static TannerGraph from_code(const CssCode& code, CheckSide side = CheckSide::x);

    std::size_t num_checks() const { return check_adj_.size(); }
    std::size_t num_vars() const { return var_adj_.size(); }
    std::size_t num_edges() const { return edges_; }

    const std::vector<std::uint32_t>& check_neighbors(std::size_t c) const { return check_adj_[c]; }
    const std::vector<std::uint32_t>& var_neighbors(std::size_t v) const { return var_adj_[v]; }

    /// 0 for block A, 1 for block B; empty when built from a bare matrix.
    const std::vector<std::uint8_t>& var_blocks() const { return var_block_; }
    /// Group index labelling each check / variable, when known.
    const std::vector<std::uint32_t>& check_labels() const { return check_label_; }
    const std::vector<std::uint32_t>& var_labels() const { return var_label_; }

    /// Adjacency over the combined node id space.
    std::vector<std::vector<std::uint32_t>> node_adjacency() const;

private:
    std::vector<std::vector<std::uint32_t>> check_adj_;
    std::vector<std::vector<std::uint32_t>> var_adj_;
    std::vector<std::uint8_t> var_block_;
    std::vector<std::uint32_t> check_label_;
    std::vector<std::uint32_t> var_label_;
    std::size_t edges_ = 0;
};

/// Exact length of the shortest cycle; nullopt when the graph is a forest.
std::optional<int> girth(const TannerGraph& graph);

struct NodePermutationPair {
    std::vector<std::size_t> checks;
    std::vector<std::size_t> vars;
};

/// True iff the permutation pair maps the edge set onto itself.
bool is_automorphism(const TannerGraph& graph, const NodePermutationPair& perm);

/// Right multiplication by h on checks and on the group label of each
/// variable within its block.
NodePermutationPair natural_right_action(const FiniteGroup& group, const CssCode& code, GroupElement h);

/// Cycle length -> number of distinct cycles through `check` inside the
/// subgraph induced by nodes within `depth` edges of it. Depth is limited to
/// 3: simple-cycle enumeration grows exponentially beyond that.
using CycleCensus = std::map<int, std::size_t>;
CycleCensus neighborhood_cycle_census(const TannerGraph& graph, std::size_t check, int depth);

/// Graphviz rendering of the depth-limited neighborhood of a check.
std::string neighborhood_dot(const TannerGraph& graph, std::size_t check, int depth);

/// Variable subset partition of a stabilizer support.
using Partition = std::vector<std::vector<std::size_t>>;

/// Checks that `support` is a stabilizer (row space of H_X) whose induced
/// subgraph in the H_Z Tanner graph has only even-degree checks, and that the
/// parts of `partition` induce pairwise isomorphic subgraphs with identical
/// odd-degree check sets. Throws std::invalid_argument for an empty support
/// or a partition that is not an even number of disjoint parts covering it.
bool verify_symmetric_stabilizer(const BinMatrix& hx, const BinMatrix& hz, const BinVector& support,
                                 const Partition& partition);
bool verify_symmetric_stabilizer(const CssCode& code, const BinVector& support, const Partition& partition);

struct SymmetricStabilizer {
    BinVector support;
    Partition partition;
    std::vector<std::size_t> rows;  // rows of H_X summed to form the support
};

/// Sums of at most `max_rows` (<= 3) rows of H_X with weight <= max_weight
/// that admit a symmetric two-part partition. Block-aligned splits are tried
/// first, then every balanced split when the weight is at most 16.
std::vector<SymmetricStabilizer> find_candidate_symmetric_stabilizers(const CssCode& code, int max_rows,
                                                                      std::size_t max_weight);

/// Bipartite subgraph given by variable adjacency lists over check ids.
struct BipartiteSubgraph {
    std::vector<std::vector<std::uint32_t>> var_checks;
};
BipartiteSubgraph induced_subgraph(const TannerGraph& graph, const std::vector<std::size_t>& vars);
/// Side-preserving isomorphism test by backtracking over the variables.
bool isomorphic(const BipartiteSubgraph& a, const BipartiteSubgraph& b);

}  // namespace margulis

#endif  // MARGULIS_TANNER_GRAPH_HPP
