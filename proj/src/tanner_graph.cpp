#include "margulis/tanner_graph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace margulis {

TannerGraph::TannerGraph(const BinMatrix& h) : check_adj_(h.rows()), var_adj_(h.cols()) {
    for (std::size_t c = 0; c < h.rows(); ++c) {
        for (std::size_t v : h.row_support(c)) {
            check_adj_[c].push_back(static_cast<std::uint32_t>(v));
            var_adj_[v].push_back(static_cast<std::uint32_t>(c));
            ++edges_;
        }
    }
}

TannerGraph TannerGraph::from_code(const CssCode& code, CheckSide side) {
    TannerGraph g(side == CheckSide::x ? code.hx : code.hz);
    const std::size_t order = code.hx.rows();
    g.check_label_.resize(g.num_checks());
    std::iota(g.check_label_.begin(), g.check_label_.end(), 0u);
    g.var_block_.resize(g.num_vars());
    g.var_label_.resize(g.num_vars());
    for (std::size_t v = 0; v < g.num_vars(); ++v) {
        g.var_block_[v] = v < order ? 0 : 1;
        g.var_label_[v] = static_cast<std::uint32_t>(v < order ? v : v - order);
    }
    return g;
}

std::vector<std::vector<std::uint32_t>> TannerGraph::node_adjacency() const {
    const auto m = static_cast<std::uint32_t>(num_checks());
    std::vector<std::vector<std::uint32_t>> adj(num_checks() + num_vars());
    for (std::size_t c = 0; c < num_checks(); ++c)
        for (auto v : check_adj_[c]) adj[c].push_back(m + v);
    for (std::size_t v = 0; v < num_vars(); ++v)
        for (auto c : var_adj_[v]) adj[m + v].push_back(c);
    return adj;
}

std::optional<int> girth(const TannerGraph& graph) {
    const auto adj = graph.node_adjacency();
    const std::size_t nodes = adj.size();
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(nodes, -1);
    std::vector<std::uint32_t> parent(nodes);
    std::vector<std::uint32_t> touched;

    for (std::uint32_t root = 0; root < nodes; ++root) {
        for (auto t : touched) dist[t] = -1;
        touched.clear();
        dist[root] = 0;
        parent[root] = root;
        touched.push_back(root);
        std::queue<std::uint32_t> queue;
        queue.push(root);
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop();
            if (2 * dist[u] >= best) break;
            for (auto w : adj[u]) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push_back(w);
                    queue.push(w);
                } else if (w != parent[u]) {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

bool is_automorphism(const TannerGraph& graph, const NodePermutationPair& perm) {
    if (perm.checks.size() != graph.num_checks() || perm.vars.size() != graph.num_vars())
        throw std::invalid_argument("permutation sizes do not match the graph");
    auto bijective = [](const std::vector<std::size_t>& p) {
        std::vector<bool> seen(p.size(), false);
        for (auto x : p) {
            if (x >= p.size() || seen[x]) return false;
            seen[x] = true;
        }
        return true;
    };
    if (!bijective(perm.checks) || !bijective(perm.vars))
        throw std::invalid_argument("node maps must be permutations");

    std::vector<std::vector<std::uint32_t>> image(graph.num_checks());
    for (std::size_t c = 0; c < graph.num_checks(); ++c) {
        auto& dst = image[perm.checks[c]];
        for (auto v : graph.check_neighbors(c)) dst.push_back(static_cast<std::uint32_t>(perm.vars[v]));
    }
    for (std::size_t c = 0; c < graph.num_checks(); ++c) {
        auto expected = graph.check_neighbors(c);
        std::sort(expected.begin(), expected.end());
        std::sort(image[c].begin(), image[c].end());
        if (expected != image[c]) return false;
    }
    return true;
}

NodePermutationPair natural_right_action(const FiniteGroup& group, const CssCode& code, GroupElement h) {
    const std::size_t order = group.order();
    if (code.hx.rows() != order) throw std::invalid_argument("code was not built over this group");
    NodePermutationPair perm;
    perm.checks.resize(order);
    perm.vars.resize(2 * order);
    for (auto g : group.enumerate()) {
        std::size_t image = group.mul(g, h).index;
        perm.checks[g.index] = image;
        perm.vars[g.index] = image;
        perm.vars[order + g.index] = image + order;
    }
    return perm;
}

namespace {

// Distances from a root over the combined node id space, limited to `depth`.
std::vector<int> ball_distances(const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t root,
                                int depth) {
    std::vector<int> dist(adj.size(), -1);
    dist[root] = 0;
    std::queue<std::uint32_t> queue;
    queue.push(root);
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop();
        if (dist[u] == depth) continue;
        for (auto w : adj[u]) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push(w);
            }
        }
    }
    return dist;
}

}  // namespace

CycleCensus neighborhood_cycle_census(const TannerGraph& graph, std::size_t check, int depth) {
    if (check >= graph.num_checks()) throw std::out_of_range("check index out of range");
    if (depth < 0 || depth > 3) throw std::invalid_argument("census depth must be in [0, 3]");
    const auto adj = graph.node_adjacency();
    const auto root = static_cast<std::uint32_t>(check);
    const auto dist = ball_distances(adj, root, depth);

    CycleCensus census;
    std::vector<bool> on_path(adj.size(), false);
    std::function<void(std::uint32_t, int)> extend = [&](std::uint32_t u, int length) {
        for (auto w : adj[u]) {
            if (dist[w] < 0) continue;
            if (w == root) {
                if (length >= 3) ++census[length + 1];
                continue;
            }
            if (on_path[w]) continue;
            on_path[w] = true;
            extend(w, length + 1);
            on_path[w] = false;
        }
    };
    on_path[root] = true;
    extend(root, 0);
    // Each cycle is traversed once in each direction.
    for (auto& [len, count] : census) count /= 2;
    return census;
}

std::string neighborhood_dot(const TannerGraph& graph, std::size_t check, int depth) {
    if (check >= graph.num_checks()) throw std::out_of_range("check index out of range");
    const auto adj = graph.node_adjacency();
    const auto m = graph.num_checks();
    const auto dist = ball_distances(adj, static_cast<std::uint32_t>(check), depth);
    std::ostringstream os;
    os << "graph neighborhood_c" << check << " {\n";
    for (std::size_t u = 0; u < adj.size(); ++u) {
        if (dist[u] < 0) continue;
        if (u < m) {
            os << "  c" << u << " [shape=box, style=filled, fillcolor=red, label=\"c" << u << "\"];\n";
        } else {
            std::size_t v = u - m;
            const char* fill = "white";
            if (!graph.var_blocks().empty()) fill = graph.var_blocks()[v] == 0 ? "black" : "gray";
            os << "  v" << v << " [shape=circle, style=filled, fillcolor=" << fill << ", fontcolor=white, label=\"v"
               << v << "\"];\n";
        }
    }
    for (std::size_t c = 0; c < m; ++c) {
        if (dist[c] < 0) continue;
        for (auto v : graph.check_neighbors(c))
            if (dist[m + v] >= 0) os << "  c" << c << " -- v" << v << ";\n";
    }
    os << "}\n";
    return os.str();
}

BipartiteSubgraph induced_subgraph(const TannerGraph& graph, const std::vector<std::size_t>& vars) {
    BipartiteSubgraph sub;
    for (auto v : vars) sub.var_checks.push_back(graph.var_neighbors(v));
    return sub;
}

namespace {

struct Compact {
    std::size_t num_checks = 0;
    std::vector<std::vector<std::uint32_t>> var_checks;  // compact check ids, sorted
    std::vector<std::vector<std::uint32_t>> check_vars;
    std::vector<std::vector<int>> common;                // shared-check counts between vars
    std::vector<std::vector<std::size_t>> signature;     // degree + sorted neighbor check degrees
};

Compact compact(const BipartiteSubgraph& g) {
    Compact c;
    std::map<std::uint32_t, std::uint32_t> ids;
    for (const auto& checks : g.var_checks)
        for (auto x : checks) ids.emplace(x, 0);
    std::uint32_t next = 0;
    for (auto& [k, v] : ids) v = next++;
    c.num_checks = ids.size();
    c.check_vars.resize(c.num_checks);
    for (std::size_t v = 0; v < g.var_checks.size(); ++v) {
        std::vector<std::uint32_t> local;
        for (auto x : g.var_checks[v]) local.push_back(ids[x]);
        std::sort(local.begin(), local.end());
        for (auto x : local) c.check_vars[x].push_back(static_cast<std::uint32_t>(v));
        c.var_checks.push_back(std::move(local));
    }
    const std::size_t n = c.var_checks.size();
    c.common.assign(n, std::vector<int>(n, 0));
    for (const auto& vs : c.check_vars)
        for (auto a : vs)
            for (auto b : vs)
                if (a != b) ++c.common[a][b];
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::size_t> sig{c.var_checks[v].size()};
        std::vector<std::size_t> degs;
        for (auto x : c.var_checks[v]) degs.push_back(c.check_vars[x].size());
        std::sort(degs.begin(), degs.end());
        sig.insert(sig.end(), degs.begin(), degs.end());
        c.signature.push_back(std::move(sig));
    }
    return c;
}

}  // namespace

bool isomorphic(const BipartiteSubgraph& ga, const BipartiteSubgraph& gb) {
    if (ga.var_checks.size() != gb.var_checks.size()) return false;
    Compact a = compact(ga);
    Compact b = compact(gb);
    if (a.num_checks != b.num_checks) return false;
    auto sorted_sigs = [](const Compact& c) {
        auto s = c.signature;
        std::sort(s.begin(), s.end());
        return s;
    };
    if (sorted_sigs(a) != sorted_sigs(b)) return false;

    const std::size_t n = a.var_checks.size();
    // Visit order: BFS over shared-check adjacency so each new variable is
    // constrained by already mapped ones.
    std::vector<std::size_t> order;
    std::vector<bool> queued(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        if (queued[s]) continue;
        std::queue<std::size_t> q;
        q.push(s);
        queued[s] = true;
        while (!q.empty()) {
            auto u = q.front();
            q.pop();
            order.push_back(u);
            for (std::size_t w = 0; w < n; ++w)
                if (!queued[w] && a.common[u][w] > 0) {
                    queued[w] = true;
                    q.push(w);
                }
        }
    }

    auto check_multiset = [](const Compact& c, const std::vector<std::size_t>& map_vars) {
        std::vector<std::vector<std::size_t>> out;
        for (const auto& vs : c.check_vars) {
            std::vector<std::size_t> img;
            for (auto v : vs) img.push_back(map_vars[v]);
            std::sort(img.begin(), img.end());
            out.push_back(std::move(img));
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<std::size_t> identity(n);
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    const auto target = check_multiset(b, identity);

    std::vector<std::size_t> mapping(n, n);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> place = [&](std::size_t pos) -> bool {
        if (pos == n) return check_multiset(a, mapping) == target;
        const std::size_t u = order[pos];
        for (std::size_t cand = 0; cand < n; ++cand) {
            if (used[cand] || a.signature[u] != b.signature[cand]) continue;
            bool ok = true;
            for (std::size_t prev = 0; prev < pos && ok; ++prev) {
                auto pu = order[prev];
                ok = a.common[u][pu] == b.common[cand][mapping[pu]];
            }
            if (!ok) continue;
            mapping[u] = cand;
            used[cand] = true;
            if (place(pos + 1)) return true;
            used[cand] = false;
            mapping[u] = n;
        }
        return false;
    };
    return place(0);
}

namespace {

std::vector<std::uint32_t> odd_checks(const TannerGraph& graph, const std::vector<std::size_t>& vars) {
    std::map<std::uint32_t, int> deg;
    for (auto v : vars)
        for (auto c : graph.var_neighbors(v)) ++deg[c];
    std::vector<std::uint32_t> out;
    for (auto [c, d] : deg)
        if (d % 2) out.push_back(c);
    return out;
}

bool partition_is_symmetric(const TannerGraph& zgraph, const Partition& partition) {
    const auto first_odd = odd_checks(zgraph, partition[0]);
    const auto first_sub = induced_subgraph(zgraph, partition[0]);
    for (std::size_t i = 1; i < partition.size(); ++i) {
        if (odd_checks(zgraph, partition[i]) != first_odd) return false;
        if (!isomorphic(first_sub, induced_subgraph(zgraph, partition[i]))) return false;
    }
    return true;
}

void validate_partition(const BinVector& support, const Partition& partition) {
    if (support.is_zero()) throw std::invalid_argument("symmetric stabilizer support must be non-empty");
    if (partition.size() < 2 || partition.size() % 2)
        throw std::invalid_argument("malformed partition: need an even number of parts");
    BinVector covered(support.size());
    for (const auto& part : partition) {
        if (part.empty()) throw std::invalid_argument("malformed partition: empty part");
        for (auto v : part) {
            if (v >= support.size() || covered.get(v))
                throw std::invalid_argument("malformed partition: parts overlap or leave the support");
            covered.set(v);
        }
    }
    if (covered != support) throw std::invalid_argument("malformed partition: parts do not cover the support");
}

}  // namespace

bool verify_symmetric_stabilizer(const BinMatrix& hx, const BinMatrix& hz, const BinVector& support,
                                 const Partition& partition) {
    if (support.size() != hx.cols() || hx.cols() != hz.cols())
        throw std::invalid_argument("support length does not match the code");
    validate_partition(support, partition);
    if (!in_row_space(support, hx)) return false;
    if (!mul_vec(hz, support).is_zero()) return false;
    return partition_is_symmetric(TannerGraph(hz), partition);
}

bool verify_symmetric_stabilizer(const CssCode& code, const BinVector& support, const Partition& partition) {
    return verify_symmetric_stabilizer(code.hx, code.hz, support, partition);
}

std::vector<SymmetricStabilizer> find_candidate_symmetric_stabilizers(const CssCode& code, int max_rows,
                                                                      std::size_t max_weight) {
    if (max_rows < 1 || max_rows > 3) throw std::invalid_argument("max_rows must be in [1, 3]");
    const TannerGraph zgraph(code.hz);
    const std::size_t m = code.hx.rows();
    const std::size_t block = code.hx.cols() / 2;

    std::vector<SymmetricStabilizer> found;
    std::set<std::vector<std::size_t>> seen;

    auto try_support = [&](const BinVector& support, std::vector<std::size_t> rows) {
        if (support.is_zero() || support.weight() > max_weight) return;
        auto vars = support.support();
        if (!seen.insert(vars).second) return;
        // Row sums are stabilizers and have even Z-check degrees; both halves
        // of a two-part split then share their odd-degree checks, so only the
        // isomorphism condition can fail.
        auto accept = [&](Partition p) {
            if (!partition_is_symmetric(zgraph, p)) return false;
            found.push_back({support, std::move(p), rows});
            return true;
        };

        Partition by_block(2);
        for (auto v : vars) by_block[v < block ? 0 : 1].push_back(v);
        if (by_block[0].size() == by_block[1].size() && accept(by_block)) return;

        const std::size_t w = vars.size();
        if (w % 2 || w > 16) return;
        // Balanced splits with vars[0] fixed in the first part.
        std::vector<int> pick(w, 0);
        std::fill(pick.begin() + 1, pick.begin() + w / 2, 1);
        std::sort(pick.begin() + 1, pick.end());
        do {
            Partition p(2);
            p[0].push_back(vars[0]);
            for (std::size_t i = 1; i < w; ++i) p[pick[i] ? 0 : 1].push_back(vars[i]);
            if (p == by_block) continue;
            if (accept(std::move(p))) return;
        } while (std::next_permutation(pick.begin() + 1, pick.end()));
    };

    for (std::size_t i = 0; i < m; ++i) {
        BinVector s1 = code.hx.row(i);
        try_support(s1, {i});
        if (max_rows < 2) continue;
        for (std::size_t j = i + 1; j < m; ++j) {
            BinVector s2 = s1 ^ code.hx.row(j);
            try_support(s2, {i, j});
            if (max_rows < 3) continue;
            for (std::size_t k = j + 1; k < m; ++k) try_support(s2 ^ code.hx.row(k), {i, j, k});
        }
    }
    return found;
}

}  // namespace margulis
