#ifndef MARGULIS_GIRTH_SEARCH_HPP
#define MARGULIS_GIRTH_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "margulis/code_builder.hpp"
#include "margulis/tanner_graph.hpp"

namespace margulis {

struct SearchConfig {
    int target_girth = 6;  // 6 or 8 (4 accepted as "no constraint")
    std::size_t r = 3;
    std::size_t max_restarts = 50;
    std::size_t max_replacements_per_restart = 10'000;
    std::uint64_t seed = 0;
    std::size_t workers = 1;

    /// Throws std::invalid_argument: girth must be even and <= 8, r >= 2.
    void validate() const;
};

/// Reference to one generator: set 0 is A, set 1 is B.
struct GeneratorRef {
    int set = 0;
    std::size_t index = 0;
    friend auto operator<=>(const GeneratorRef&, const GeneratorRef&) = default;
};

struct TreeResult {
    bool collision = false;                      // the flag f
    std::vector<GeneratorRef> cycle_generators;  // generators on both colliding paths
    int reached_depth = 0;                       // deepest collision-free layer
    int collision_depth = 0;                     // layer holding the collision, 0 if none
};

/// Non-backtracking layered expansion of the Tanner graph of H_X (side x) or
/// H_Z (side z) from the check labelled `root`. Layers 1 .. target_girth/2 - 1
/// are checked for repeated nodes, within the layer and against earlier
/// layers; a repeat at depth d witnesses a cycle of length <= 2d through the
/// root.
TreeResult generate_tree(const FiniteGroup& group, const GeneratorSets& gens, int target_girth,
                         GroupElement root, CheckSide side = CheckSide::x);

struct SearchStats {
    std::size_t restarts = 0;
    std::size_t replacements = 0;
    std::map<int, std::size_t> collision_depths;
};

/// Progress record for one finished restart.
struct SearchEvent {
    std::size_t restart = 0;
    std::size_t replacements = 0;
    std::map<int, std::size_t> collision_depths;
    bool success = false;
};

struct SearchResult {
    GeneratorSets gens;
    int girth = 0;  // exact girth, minimum over the H_X and H_Z Tanner graphs
    std::size_t restart_index = 0;
    SearchStats stats;
};

class SearchExhausted : public std::runtime_error {
public:
    SearchExhausted(const std::string& what, SearchStats stats)
        : std::runtime_error(what), stats_(std::move(stats)) {}
    const SearchStats& stats() const { return stats_; }

private:
    SearchStats stats_;
};

/// Random generator search with targeted replacement of generators found on
/// short cycles. Restarts are independent and seeded from (seed, restart
/// index); the lowest successful restart index wins, so the result does not
/// depend on the worker count. Events are delivered in restart order.
SearchResult get_generators(const FiniteGroup& group, const SearchConfig& cfg,
                            const std::function<void(const SearchEvent&)>& on_event = {});

/// Builds the code for a search result and attaches the girth certificate.
CssCode build_searched_code(const FiniteGroup& group, const SearchResult& result, const SearchConfig& cfg);

/// min(girth(H_X graph), girth(H_Z graph)); nullopt if both are acyclic.
std::optional<int> code_girth(const CssCode& code);

}  // namespace margulis

#endif  // MARGULIS_GIRTH_SEARCH_HPP
