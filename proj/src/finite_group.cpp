#include "margulis/finite_group.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace margulis {

namespace {

int mod(long long x, int m) {
    long long r = x % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

std::uint32_t fnv1a32(std::string_view s) {
    std::uint32_t h = 2166136261u;
    for (unsigned char c : s) {
        h ^= c;
        h *= 16777619u;
    }
    return h;
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = text.substr(0, comma);
        int value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc() || ptr != item.data() + item.size() || item.empty())
            throw std::invalid_argument("bad integer in group spec: '" + std::string(item) + "'");
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
        if (text.empty()) throw std::invalid_argument("trailing comma in group spec");
    }
    return out;
}

}  // namespace

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

GroupSpec GroupSpec::cyclic(int n) {
    GroupSpec spec{GroupKind::cyclic, {n}};
    spec.validate();
    return spec;
}

GroupSpec GroupSpec::product_of_cyclics(std::vector<int> moduli) {
    GroupSpec spec{GroupKind::product_of_cyclics, std::move(moduli)};
    spec.validate();
    return spec;
}

GroupSpec GroupSpec::special_linear_2(int p) {
    GroupSpec spec{GroupKind::special_linear_2, {p}};
    spec.validate();
    return spec;
}

void GroupSpec::validate() const {
    switch (kind) {
    case GroupKind::cyclic:
        if (params.size() != 1) throw std::invalid_argument("cyclic group takes one modulus");
        break;
    case GroupKind::product_of_cyclics:
        if (params.empty()) throw std::invalid_argument("product of cyclics needs at least one modulus");
        break;
    case GroupKind::special_linear_2:
        if (params.size() != 1) throw std::invalid_argument("sl2 takes one prime");
        if (!is_prime(params[0]))
            throw std::invalid_argument("sl2 modulus " + std::to_string(params[0]) + " is not prime");
        break;
    }
    if (kind != GroupKind::special_linear_2) {
        for (int n : params)
            if (n < 2) throw std::invalid_argument("cyclic modulus must be >= 2");
    }
    // Order check with overflow guard.
    std::uint64_t ord = 1;
    if (kind == GroupKind::special_linear_2) {
        std::uint64_t p = static_cast<std::uint64_t>(params[0]);
        if (p > 1000) throw std::invalid_argument("group order exceeds limit");
        ord = p * (p * p - 1);
    } else {
        for (int n : params) {
            ord *= static_cast<std::uint64_t>(n);
            if (ord > max_group_order) break;
        }
    }
    if (ord > max_group_order)
        throw std::invalid_argument("group order exceeds limit of " + std::to_string(max_group_order));
}

std::uint64_t GroupSpec::order() const {
    validate();
    if (kind == GroupKind::special_linear_2) {
        std::uint64_t p = static_cast<std::uint64_t>(params[0]);
        return p * (p * p - 1);
    }
    std::uint64_t ord = 1;
    for (int n : params) ord *= static_cast<std::uint64_t>(n);
    return ord;
}

std::string GroupSpec::to_string() const {
    std::string out;
    switch (kind) {
    case GroupKind::cyclic: out = "cyclic:"; break;
    case GroupKind::product_of_cyclics: out = "product:"; break;
    case GroupKind::special_linear_2: out = "sl2:"; break;
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(params[i]);
    }
    return out;
}

GroupSpec GroupSpec::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("group spec must look like kind:params, got '" + std::string(text) + "'");
    auto kind_text = text.substr(0, colon);
    GroupSpec spec;
    if (kind_text == "cyclic")
        spec.kind = GroupKind::cyclic;
    else if (kind_text == "product")
        spec.kind = GroupKind::product_of_cyclics;
    else if (kind_text == "sl2")
        spec.kind = GroupKind::special_linear_2;
    else
        throw std::invalid_argument("unknown group kind '" + std::string(kind_text) + "'");
    spec.params = parse_int_list(text.substr(colon + 1));
    spec.validate();
    return spec;
}

FiniteGroup::FiniteGroup(GroupSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    order_ = static_cast<std::size_t>(spec_.order());
    tag_ = fnv1a32(spec_.to_string());

    if (spec_.kind == GroupKind::special_linear_2) {
        p_ = spec_.params[0];
        const int p = p_;
        repr_width_ = 4;
        repr_.reserve(order_ * 4);
        repr_.insert(repr_.end(), {1, 0, 0, 1});
        // Lexicographic over (a, b, c, d); d is determined by a, b, c unless a == 0.
        for (int a = 0; a < p; ++a) {
            int a_inv = 0;
            if (a != 0)
                for (int t = 1; t < p; ++t)
                    if ((a * t) % p == 1) a_inv = t;
            for (int b = 0; b < p; ++b) {
                for (int c = 0; c < p; ++c) {
                    if (a != 0) {
                        int d = mod(static_cast<long long>(1 + b * c) * a_inv, p);
                        if (a == 1 && b == 0 && c == 0 && d == 1) continue;
                        repr_.insert(repr_.end(), {a, b, c, d});
                    } else if (mod(static_cast<long long>(b) * c, p) == p - 1) {
                        for (int d = 0; d < p; ++d) repr_.insert(repr_.end(), {a, b, c, d});
                    }
                }
            }
        }
        if (repr_.size() != order_ * 4) throw std::logic_error("SL(2,p) enumeration size mismatch");

        const std::uint64_t cells = static_cast<std::uint64_t>(p) * p * p * p;
        if (cells <= (1u << 22)) {
            matrix_lookup_.assign(cells, UINT32_MAX);
            for (std::size_t i = 0; i < order_; ++i) {
                const int* m = &repr_[4 * i];
                matrix_lookup_[((static_cast<std::size_t>(m[0]) * p + m[1]) * p + m[2]) * p + m[3]] =
                    static_cast<std::uint32_t>(i);
            }
        } else {
            for (std::size_t i = 0; i < order_; ++i) {
                const int* m = &repr_[4 * i];
                std::uint64_t key = ((static_cast<std::uint64_t>(m[0]) * p + m[1]) * p + m[2]) * p + m[3];
                matrix_map_.emplace(key, static_cast<std::uint32_t>(i));
            }
        }
    } else {
        repr_width_ = spec_.params.size();
        repr_.resize(order_ * repr_width_);
        for (std::size_t i = 0; i < order_; ++i) {
            std::size_t rest = i;
            for (std::size_t k = repr_width_; k-- > 0;) {
                int n = spec_.params[k];
                repr_[i * repr_width_ + k] = static_cast<int>(rest % n);
                rest /= n;
            }
        }
    }

    if (order_ * order_ <= (1u << 20)) {
        std::vector<std::uint32_t> table(order_ * order_);
        for (std::size_t a = 0; a < order_; ++a)
            for (std::size_t b = 0; b < order_; ++b)
                table[a * order_ + b] = mul_index(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
        table_ = std::move(table);
    }

    inverse_.resize(order_);
    for (std::size_t i = 0; i < order_; ++i) {
        if (spec_.kind == GroupKind::special_linear_2) {
            const int* m = &repr_[4 * i];
            inverse_[i] = lookup_matrix({m[3], mod(-m[1], p_), mod(-m[2], p_), m[0]});
        } else {
            std::size_t idx = 0;
            for (std::size_t k = 0; k < repr_width_; ++k) {
                int n = spec_.params[k];
                idx = idx * n + static_cast<std::size_t>(mod(-repr_[i * repr_width_ + k], n));
            }
            inverse_[i] = static_cast<std::uint32_t>(idx);
        }
    }
}

void FiniteGroup::check(GroupElement g) const {
    if (g.group_tag != tag_) throw std::invalid_argument("group element belongs to a different group");
    if (g.index >= order_) throw std::out_of_range("group element index out of range");
}

GroupElement FiniteGroup::from_index(std::size_t index) const {
    if (index >= order_) throw std::out_of_range("group element index out of range");
    return {static_cast<std::uint32_t>(index), tag_};
}

std::size_t FiniteGroup::element_index(GroupElement g) const {
    check(g);
    return g.index;
}

std::vector<GroupElement> FiniteGroup::enumerate() const {
    std::vector<GroupElement> out(order_);
    for (std::size_t i = 0; i < order_; ++i) out[i] = {static_cast<std::uint32_t>(i), tag_};
    return out;
}

std::uint32_t FiniteGroup::lookup_matrix(const std::array<int, 4>& m) const {
    const std::uint64_t p = static_cast<std::uint64_t>(p_);
    std::uint64_t key = ((m[0] * p + m[1]) * p + m[2]) * p + m[3];
    if (!matrix_lookup_.empty()) return matrix_lookup_[key];
    auto it = matrix_map_.find(key);
    return it == matrix_map_.end() ? UINT32_MAX : it->second;
}

std::uint32_t FiniteGroup::mul_index(std::uint32_t a, std::uint32_t b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
    if (spec_.kind == GroupKind::special_linear_2) {
        const int* x = &repr_[4 * a];
        const int* y = &repr_[4 * b];
        std::array<int, 4> m{mod(static_cast<long long>(x[0]) * y[0] + static_cast<long long>(x[1]) * y[2], p_),
                             mod(static_cast<long long>(x[0]) * y[1] + static_cast<long long>(x[1]) * y[3], p_),
                             mod(static_cast<long long>(x[2]) * y[0] + static_cast<long long>(x[3]) * y[2], p_),
                             mod(static_cast<long long>(x[2]) * y[1] + static_cast<long long>(x[3]) * y[3], p_)};
        return lookup_matrix(m);
    }
    std::size_t idx = 0;
    for (std::size_t k = 0; k < repr_width_; ++k) {
        int n = spec_.params[k];
        idx = idx * n + static_cast<std::size_t>((repr_[a * repr_width_ + k] + repr_[b * repr_width_ + k]) % n);
    }
    return static_cast<std::uint32_t>(idx);
}

GroupElement FiniteGroup::mul(GroupElement g, GroupElement h) const {
    check(g);
    check(h);
    return {mul_index(g.index, h.index), tag_};
}

GroupElement FiniteGroup::inv(GroupElement g) const {
    check(g);
    return {inverse_[g.index], tag_};
}

GroupElement FiniteGroup::conjugate(GroupElement g, GroupElement h) const {
    return mul(mul(inv(h), g), h);
}

bool FiniteGroup::is_abelian() const {
    if (spec_.kind != GroupKind::special_linear_2) return true;
    for (std::uint32_t a = 0; a < order_; ++a)
        for (std::uint32_t b = a + 1; b < order_; ++b)
            if (mul_index(a, b) != mul_index(b, a)) return false;
    return true;
}

bool FiniteGroup::normalizes(GroupElement h, std::span<const GroupElement> set) const {
    if (set.empty()) throw std::invalid_argument("normalizes: set must be non-empty");
    std::vector<std::uint32_t> original;
    std::vector<std::uint32_t> conjugated;
    for (auto s : set) {
        original.push_back(s.index);
        conjugated.push_back(conjugate(s, h).index);
    }
    std::sort(original.begin(), original.end());
    original.erase(std::unique(original.begin(), original.end()), original.end());
    std::sort(conjugated.begin(), conjugated.end());
    conjugated.erase(std::unique(conjugated.begin(), conjugated.end()), conjugated.end());
    return original == conjugated;
}

std::vector<int> FiniteGroup::residues(GroupElement g) const {
    check(g);
    if (spec_.kind == GroupKind::special_linear_2)
        throw std::invalid_argument("residues: SL(2,p) elements are matrices");
    return {repr_.begin() + g.index * repr_width_, repr_.begin() + (g.index + 1) * repr_width_};
}

GroupElement FiniteGroup::from_residues(std::span<const int> residues) const {
    if (spec_.kind == GroupKind::special_linear_2 || residues.size() != repr_width_)
        throw std::invalid_argument("from_residues: wrong residue tuple for this group");
    std::size_t idx = 0;
    for (std::size_t k = 0; k < repr_width_; ++k) {
        int n = spec_.params[k];
        idx = idx * n + static_cast<std::size_t>(mod(residues[k], n));
    }
    return {static_cast<std::uint32_t>(idx), tag_};
}

std::array<int, 4> FiniteGroup::matrix(GroupElement g) const {
    check(g);
    if (spec_.kind != GroupKind::special_linear_2) throw std::invalid_argument("matrix: not an SL(2,p) group");
    const int* m = &repr_[4 * g.index];
    return {m[0], m[1], m[2], m[3]};
}

GroupElement FiniteGroup::from_matrix(std::array<long long, 4> entries) const {
    if (spec_.kind != GroupKind::special_linear_2) throw std::invalid_argument("from_matrix: not an SL(2,p) group");
    std::array<int, 4> m{};
    for (int i = 0; i < 4; ++i) m[i] = mod(entries[i], p_);
    if (mod(static_cast<long long>(m[0]) * m[3] - static_cast<long long>(m[1]) * m[2], p_) != 1)
        throw std::invalid_argument("from_matrix: determinant is not 1 mod p");
    return {lookup_matrix(m), tag_};
}

std::string FiniteGroup::format(GroupElement g) const {
    check(g);
    std::ostringstream os;
    if (spec_.kind == GroupKind::special_linear_2) {
        auto m = matrix(g);
        os << "[[" << m[0] << ',' << m[1] << "],[" << m[2] << ',' << m[3] << "]]";
    } else {
        auto r = residues(g);
        os << '(';
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << ')';
    }
    return os.str();
}

}  // namespace margulis
