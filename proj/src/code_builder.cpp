#include "margulis/code_builder.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace margulis {

namespace {

void require_distinct(std::span<const GroupElement> set, const char* what) {
    std::vector<std::uint32_t> idx;
    for (auto g : set) idx.push_back(g.index);
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw std::invalid_argument(std::string("duplicate generator in ") + what);
}

// Returns (g, x, y) with m*x + q*y = g.
std::array<long long, 3> extended_gcd(long long m, long long q) {
    long long old_r = m, r = q, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        long long quotient = old_r / r;
        old_r -= quotient * r;
        std::swap(old_r, r);
        old_s -= quotient * s;
        std::swap(old_s, s);
        old_t -= quotient * t;
        std::swap(old_t, t);
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

}  // namespace

void GeneratorSets::validate() const {
    if (a.size() != b.size()) throw std::invalid_argument("generator sets must have equal size");
    if (a.size() < 2) throw std::invalid_argument("generator sets need r >= 2");
    require_distinct(a, "A");
    require_distinct(b, "B");
}

BinMatrix cayley_right(const FiniteGroup& group, std::span<const GroupElement> right) {
    require_distinct(right, "right generator set");
    BinMatrix m(group.order(), group.order());
    for (auto g : group.enumerate())
        for (auto a : right) m.set(g.index, group.mul(g, a).index);
    return m;
}

BinMatrix cayley_left(const FiniteGroup& group, std::span<const GroupElement> left) {
    require_distinct(left, "left generator set");
    BinMatrix m(group.order(), group.order());
    for (auto g : group.enumerate())
        for (auto b : left) m.set(g.index, group.mul(b, g).index);
    return m;
}

CssCode assemble_2bga(const FiniteGroup& group, std::span<const GroupElement> a,
                      std::span<const GroupElement> b) {
    BinMatrix block_a = cayley_right(group, a);
    BinMatrix block_b = cayley_left(group, b);

    CssCode code;
    code.hx = hstack(block_a, block_b);
    code.hz = hstack(transpose(block_b), transpose(block_a));
    if (!multiply(code.hx, transpose(code.hz)).is_zero())
        throw std::logic_error("2BGA orthogonality audit failed: H_X * H_Z^T != 0");

    code.group = group.spec();
    code.gens.a.assign(a.begin(), a.end());
    code.gens.b.assign(b.begin(), b.end());
    code.n = 2 * group.order();
    code.dv = a.size();
    code.dc = a.size() + b.size();
    code.k = compute_dimension(code);
    return code;
}

CssCode build_2bga(const FiniteGroup& group, const GeneratorSets& gens) {
    gens.validate();
    return assemble_2bga(group, gens.a, gens.b);
}

std::size_t compute_dimension(const CssCode& code) {
    std::size_t rx = rank(code.hx);
    std::size_t rz = rank(code.hz);
    std::size_t n = code.hx.cols();
    if (rx + rz > n) throw std::logic_error("ranks exceed block length; not a CSS code");
    return n - rx - rz;
}

std::pair<long long, long long> complete_sl2z(long long m, long long q, int eta) {
    auto [g, x, y] = extended_gcd(m, q);
    if (g != 1) throw std::invalid_argument("Margulis pair (m, q) must be coprime");
    // m*b - a*q = 1 with b = x + t*q, a = -y + t*m.
    const long long limit = std::llabs(x) + std::llabs(y) + eta + 2;
    for (long long step = 0; step <= limit; ++step) {
        for (long long t : {step, -step}) {
            long long b = x + t * q;
            long long a = -y + t * m;
            if (2 * std::llabs(a) < eta && 2 * std::llabs(b) < eta) return {a, b};
            if (step == 0) break;
        }
    }
    throw std::invalid_argument("no completion of (" + std::to_string(m) + ", " + std::to_string(q) +
                                ") with |a|, |b| < eta/2");
}

std::vector<GroupElement> margulis_generators(const FiniteGroup& group, int eta,
                                              std::span<const std::pair<int, int>> pairs) {
    if (group.spec().kind != GroupKind::special_linear_2)
        throw std::invalid_argument("Margulis generators live in SL(2, p)");
    if (eta < 1) throw std::invalid_argument("eta must be positive");
    std::vector<GroupElement> out;
    for (auto [m, q] : pairs) {
        if (m < 0 || q < 0 || 2 * m > eta || 2 * q > eta)
            throw std::invalid_argument("Margulis pair entries must lie in [0, eta/2]");
        auto [a, b] = complete_sl2z(m, q, eta);
        // C = [[m, a], [q, b]], C^-1 = [[b, -a], [-q, m]], T = [[1, eta], [0, 1]].
        const long long ct00 = m, ct01 = static_cast<long long>(m) * eta + a;
        const long long ct10 = q, ct11 = static_cast<long long>(q) * eta + b;
        out.push_back(group.from_matrix({ct00 * b - ct01 * q, -ct00 * a + ct01 * m,
                                         ct10 * b - ct11 * q, -ct10 * a + ct11 * m}));
    }
    return out;
}

}  // namespace margulis
