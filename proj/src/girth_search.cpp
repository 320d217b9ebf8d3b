#include "margulis/girth_search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <thread>

namespace margulis {

void SearchConfig::validate() const {
    if (target_girth < 4 || target_girth > 8 || target_girth % 2)
        throw std::invalid_argument("target girth must be 4, 6 or 8 (two-block codes have girth <= 8)");
    if (r < 2) throw std::invalid_argument("r must be at least 2");
    if (max_restarts == 0 || max_replacements_per_restart == 0)
        throw std::invalid_argument("search budgets must be positive");
    if (workers == 0) throw std::invalid_argument("workers must be positive");
}

namespace {

enum NodeKind : std::uint8_t { check_node = 0, right_var = 1, left_var = 2 };

struct TreeEntry {
    std::uint32_t element;
    NodeKind kind;
    int arrival;  // generator index used to reach this node, -1 for the root
    std::uint32_t parent;
};

std::uint64_t node_key(NodeKind kind, std::uint32_t element) {
    return (static_cast<std::uint64_t>(kind) << 32) | element;
}

}  // namespace

TreeResult generate_tree(const FiniteGroup& group, const GeneratorSets& gens, int target_girth,
                         GroupElement root, CheckSide side) {
    // Check g meets right-block variables g*x (x in R) and left-block
    // variables y*g (y in L). For H_X: R = A, L = B. For H_Z = [B^T A^T]:
    // R = A^-1 (block B), L = B^-1 (block A). Index i of R / L is generator i
    // of A / B either way.
    std::vector<GroupElement> right, left;
    for (auto a : gens.a) right.push_back(side == CheckSide::x ? a : group.inv(a));
    for (auto b : gens.b) left.push_back(side == CheckSide::x ? b : group.inv(b));
    std::vector<GroupElement> right_inv, left_inv;
    for (auto x : right) right_inv.push_back(group.inv(x));
    for (auto y : left) left_inv.push_back(group.inv(y));

    TreeResult result;
    const int max_depth = target_girth / 2 - 1;

    std::vector<TreeEntry> entries{{root.index, check_node, -1, 0}};
    std::set<std::uint64_t> visited{node_key(check_node, root.index)};
    std::vector<std::uint32_t> layer{0};

    auto element = [&](std::uint32_t index) { return group.from_index(index); };

    auto collect_path = [&](std::uint32_t e, std::set<GeneratorRef>& refs) {
        while (e != 0) {
            const auto& entry = entries[e];
            // Right-block variables and the checks above them are reached through R (set A).
            int set = (entry.kind == right_var || (entry.kind == check_node && entries[entry.parent].kind == right_var))
                          ? 0
                          : 1;
            refs.insert({set, static_cast<std::size_t>(entry.arrival)});
            e = entry.parent;
        }
    };

    for (int depth = 1; depth <= max_depth; ++depth) {
        std::vector<std::uint32_t> next;
        std::map<std::uint64_t, std::uint32_t> fresh;
        std::optional<std::pair<std::uint32_t, std::uint32_t>> clash;  // (new entry, earlier entry)

        for (auto idx : layer) {
            if (clash) break;
            const TreeEntry parent = entries[idx];
            const GroupElement g = element(parent.element);
            auto push = [&](NodeKind kind, GroupElement target, int via) {
                if (clash) return;
                auto key = node_key(kind, target.index);
                auto id = static_cast<std::uint32_t>(entries.size());
                entries.push_back({target.index, kind, via, idx});
                if (auto it = fresh.find(key); it != fresh.end()) {
                    clash = {id, it->second};
                    return;
                }
                if (visited.count(key)) {
                    // Earlier-layer occurrence: locate it for the path report.
                    for (std::uint32_t e = 0; e < id; ++e)
                        if (entries[e].kind == kind && entries[e].element == target.index) {
                            clash = {id, e};
                            return;
                        }
                }
                fresh.emplace(key, id);
                next.push_back(id);
            };

            if (parent.kind == check_node) {
                const bool from_right = idx != 0 && entries[parent.parent].kind == right_var;
                const bool from_left = idx != 0 && entries[parent.parent].kind == left_var;
                for (std::size_t i = 0; i < right.size(); ++i) {
                    if (from_right && static_cast<int>(i) == parent.arrival) continue;
                    push(right_var, group.mul(g, right[i]), static_cast<int>(i));
                }
                for (std::size_t j = 0; j < left.size(); ++j) {
                    if (from_left && static_cast<int>(j) == parent.arrival) continue;
                    push(left_var, group.mul(left[j], g), static_cast<int>(j));
                }
            } else if (parent.kind == right_var) {
                for (std::size_t i = 0; i < right.size(); ++i) {
                    if (static_cast<int>(i) == parent.arrival) continue;
                    push(check_node, group.mul(g, right_inv[i]), static_cast<int>(i));
                }
            } else {
                for (std::size_t j = 0; j < left.size(); ++j) {
                    if (static_cast<int>(j) == parent.arrival) continue;
                    push(check_node, group.mul(left_inv[j], g), static_cast<int>(j));
                }
            }
        }

        if (clash) {
            std::set<GeneratorRef> refs;
            collect_path(clash->first, refs);
            collect_path(clash->second, refs);
            result.collision = true;
            result.collision_depth = depth;
            result.cycle_generators.assign(refs.begin(), refs.end());
            return result;
        }
        for (auto& [key, id] : fresh) visited.insert(key);
        layer = std::move(next);
        result.reached_depth = depth;
    }
    return result;
}

std::optional<int> code_girth(const CssCode& code) {
    auto gx = girth(TannerGraph(code.hx));
    auto gz = girth(TannerGraph(code.hz));
    if (!gx) return gz;
    if (!gz) return gx;
    return std::min(*gx, *gz);
}

namespace {

struct RestartOutcome {
    std::optional<GeneratorSets> gens;
    int girth = 0;
    SearchEvent event;
};

GroupElement draw_outside(const FiniteGroup& group, const std::vector<GroupElement>& set, std::mt19937_64& rng) {
    if (set.size() >= group.order()) throw std::invalid_argument("generator set already covers the group");
    std::uniform_int_distribution<std::size_t> pick(0, group.order() - 1);
    for (;;) {
        auto g = group.from_index(pick(rng));
        if (std::find(set.begin(), set.end(), g) == set.end()) return g;
    }
}

RestartOutcome run_restart(const FiniteGroup& group, const SearchConfig& cfg, bool abelian, std::size_t restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(restart), static_cast<std::uint32_t>(restart >> 32)};
    std::mt19937_64 rng(seq);

    GeneratorSets gens;
    while (gens.a.size() < cfg.r) gens.a.push_back(draw_outside(group, gens.a, rng));
    while (gens.b.size() < cfg.r) gens.b.push_back(draw_outside(group, gens.b, rng));

    RestartOutcome out;
    out.event.restart = restart;

    std::vector<GroupElement> roots = abelian ? std::vector<GroupElement>{group.identity()} : group.enumerate();
    std::size_t resume = 0;

    while (true) {
        std::optional<TreeResult> hit;
        // Resume scanning at the root that last produced a collision.
        for (std::size_t step = 0; step < 2 * roots.size() && !hit; ++step) {
            std::size_t slot = (resume + step) % (2 * roots.size());
            CheckSide side = slot < roots.size() ? CheckSide::x : CheckSide::z;
            auto tree = generate_tree(group, gens, cfg.target_girth, roots[slot % roots.size()], side);
            if (tree.collision) {
                hit = std::move(tree);
                resume = slot;
            }
        }
        if (!hit) break;

        ++out.event.collision_depths[hit->collision_depth];
        if (out.event.replacements == cfg.max_replacements_per_restart) return out;
        ++out.event.replacements;

        std::uniform_int_distribution<std::size_t> pick(0, hit->cycle_generators.size() - 1);
        GeneratorRef ref = hit->cycle_generators[pick(rng)];
        auto& set = ref.set == 0 ? gens.a : gens.b;
        set[ref.index] = draw_outside(group, set, rng);
    }

    CssCode code = build_2bga(group, gens);
    auto g = code_girth(code);
    int certified = g ? *g : 1 << 20;
    if (certified < cfg.target_girth)
        throw std::logic_error("tree expansion passed but exact girth is " + std::to_string(certified));
    out.gens = std::move(gens);
    out.girth = certified;
    out.event.success = true;
    return out;
}

}  // namespace

SearchResult get_generators(const FiniteGroup& group, const SearchConfig& cfg,
                            const std::function<void(const SearchEvent&)>& on_event) {
    cfg.validate();
    if (cfg.r > group.order()) throw std::invalid_argument("r exceeds the group order");
    const bool abelian = group.is_abelian();

    std::vector<std::optional<RestartOutcome>> outcomes(cfg.max_restarts);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{cfg.max_restarts};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cfg.max_restarts || i > best.load()) return;
            try {
                auto outcome = run_restart(group, cfg, abelian, i);
                if (outcome.gens) {
                    std::size_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                }
                outcomes[i] = std::move(outcome);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                best.store(0);
                return;
            }
        }
    };

    if (cfg.workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < cfg.workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    SearchStats stats;
    const std::size_t last = std::min(best.load(), cfg.max_restarts - 1);
    for (std::size_t i = 0; i <= last; ++i) {
        const auto& o = outcomes[i];
        if (!o) continue;
        ++stats.restarts;
        stats.replacements += o->event.replacements;
        for (auto [d, c] : o->event.collision_depths) stats.collision_depths[d] += c;
        if (on_event) on_event(o->event);
    }

    const std::size_t winner = best.load();
    if (winner >= cfg.max_restarts)
        throw SearchExhausted("generator search exhausted " + std::to_string(cfg.max_restarts) + " restarts", stats);

    SearchResult result;
    result.gens = *outcomes[winner]->gens;
    result.girth = outcomes[winner]->girth;
    result.restart_index = winner;
    result.stats = std::move(stats);
    return result;
}

CssCode build_searched_code(const FiniteGroup& group, const SearchResult& result, const SearchConfig& cfg) {
    CssCode code = build_2bga(group, result.gens);
    code.girth_certificate = result.girth;
    code.search = SearchInfo{cfg.seed, cfg.target_girth, result.restart_index};
    return code;
}

}  // namespace margulis
