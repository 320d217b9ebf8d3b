#include "margulis/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace margulis {

namespace {

double clip(double x) { return std::clamp(x, -message_clip, message_clip); }

double sgn(double x) { return x < 0 ? -1.0 : 1.0; }

}  // namespace

DecoderVariant parse_variant(const std::string& name) {
    if (name == "bp") return DecoderVariant::bp;
    if (name == "ms") return DecoderVariant::ms;
    if (name == "nms") return DecoderVariant::nms;
    throw std::invalid_argument("unknown decoder variant '" + name + "' (expected bp, ms or nms)");
}

std::string to_string(DecoderVariant v) {
    switch (v) {
    case DecoderVariant::bp: return "bp";
    case DecoderVariant::ms: return "ms";
    case DecoderVariant::nms: return "nms";
    }
    return "?";
}

void DecoderConfig::validate() const {
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
}

double bp_check_update(std::span<const double> incoming, bool syndrome_bit) {
    double product = 1.0;
    for (double nu : incoming) product *= std::tanh(clip(nu) / 2.0);
    double mu;
    if (product >= 1.0)
        mu = message_clip;
    else if (product <= -1.0)
        mu = -message_clip;
    else
        mu = clip(2.0 * std::atanh(product));
    return syndrome_bit ? -mu : mu;
}

double ms_check_update(std::span<const double> incoming, bool syndrome_bit) {
    double sign = syndrome_bit ? -1.0 : 1.0;
    double magnitude = std::numeric_limits<double>::infinity();
    for (double nu : incoming) {
        sign *= sgn(nu);
        magnitude = std::min(magnitude, std::abs(nu));
    }
    return clip(sign * magnitude);
}

Decoder::Decoder(const BinMatrix& h, DecoderConfig cfg) : h_(h), cfg_(cfg), var_edges_(h.cols()) {
    cfg_.validate();
    check_start_.push_back(0);
    for (std::size_t c = 0; c < h.rows(); ++c) {
        for (std::size_t v : h.row_support(c)) {
            var_edges_[v].push_back(static_cast<std::uint32_t>(edge_var_.size()));
            edge_var_.push_back(static_cast<std::uint32_t>(v));
            edge_check_.push_back(static_cast<std::uint32_t>(c));
        }
        check_start_.push_back(edge_var_.size());
    }
}

DecodeResult Decoder::decode(const BinVector& syndrome, std::span<const double> priors, bool keep_trace,
                             const IterationObserver& observer) const {
    const std::size_t m = h_.rows();
    const std::size_t n = h_.cols();
    if (syndrome.size() != m) throw std::invalid_argument("decode: syndrome length does not match H");
    if (priors.size() != n) throw std::invalid_argument("decode: prior count does not match H");
    for (double l : priors)
        if (!std::isfinite(l)) throw std::invalid_argument("decode: priors must be finite");

    MessageState state;
    state.var_to_check.assign(edge_var_.size(), 0.0);
    state.check_to_var.assign(edge_var_.size(), 0.0);
    auto& nu = state.var_to_check;
    auto& mu = state.check_to_var;

    DecodeResult result;
    result.estimate = BinVector(n);
    result.soft.assign(priors.begin(), priors.end());

    const double scale = cfg_.variant == DecoderVariant::nms ? cfg_.beta : 1.0;
    std::vector<double> prefix, suffix;

    for (std::size_t iter = 1; iter <= cfg_.max_iters; ++iter) {
        // Variable nodes.
        for (std::size_t v = 0; v < n; ++v) {
            double total = priors[v];
            for (auto e : var_edges_[v]) total += mu[e];
            for (auto e : var_edges_[v]) nu[e] = clip(total - mu[e]);
        }

        // Check nodes.
        for (std::size_t c = 0; c < m; ++c) {
            const std::size_t begin = check_start_[c];
            const std::size_t end = check_start_[c + 1];
            const double parity = syndrome.get(c) ? -1.0 : 1.0;
            if (cfg_.variant == DecoderVariant::bp) {
                const std::size_t deg = end - begin;
                prefix.assign(deg + 1, 1.0);
                suffix.assign(deg + 1, 1.0);
                for (std::size_t k = 0; k < deg; ++k) prefix[k + 1] = prefix[k] * std::tanh(nu[begin + k] / 2.0);
                for (std::size_t k = deg; k-- > 0;) suffix[k] = suffix[k + 1] * std::tanh(nu[begin + k] / 2.0);
                for (std::size_t k = 0; k < deg; ++k) {
                    double product = prefix[k] * suffix[k + 1];
                    double value = product >= 1.0    ? message_clip
                                   : product <= -1.0 ? -message_clip
                                                     : 2.0 * std::atanh(product);
                    mu[begin + k] = clip(parity * value);
                }
            } else {
                double sign = parity;
                double min1 = std::numeric_limits<double>::infinity();
                double min2 = min1;
                std::size_t argmin = begin;
                for (std::size_t e = begin; e < end; ++e) {
                    sign *= sgn(nu[e]);
                    double a = std::abs(nu[e]);
                    if (a < min1) {
                        min2 = min1;
                        min1 = a;
                        argmin = e;
                    } else if (a < min2) {
                        min2 = a;
                    }
                }
                for (std::size_t e = begin; e < end; ++e) {
                    double magnitude = e == argmin ? min2 : min1;
                    mu[e] = clip(scale * sign * sgn(nu[e]) * magnitude);
                }
            }
        }

        // Hard decision.
        for (std::size_t v = 0; v < n; ++v) {
            double total = priors[v];
            for (auto e : var_edges_[v]) total += mu[e];
            if (!std::isfinite(total)) throw std::runtime_error("decode: non-finite soft value");
            result.soft[v] = total;
            result.estimate.set(v, total < 0);
        }
        result.iterations = iter;

        BinVector mismatch = mul_vec(h_, result.estimate) ^ syndrome;
        result.converged = mismatch.is_zero();
        if (keep_trace) result.trace.push_back({iter, result.estimate.weight(), mismatch.weight()});
        if (observer) observer(iter, state, result.estimate);
        if (result.converged && cfg_.stop_on_syndrome) break;
    }

    if (!result.converged && cfg_.osd0) {
        result.estimate = osd0(h_, syndrome, result.soft).estimate;
        result.osd_used = true;
        result.converged = true;
    }
    return result;
}

DecodeResult decode(const BinMatrix& h, const BinVector& syndrome, std::span<const double> priors,
                    const DecoderConfig& cfg) {
    return Decoder(h, cfg).decode(syndrome, priors);
}

OsdResult osd0(const BinMatrix& h, const BinVector& syndrome, std::span<const double> soft) {
    if (syndrome.size() != h.rows() || soft.size() != h.cols())
        throw std::invalid_argument("osd0: dimension mismatch");
    std::vector<std::size_t> order(h.cols());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(soft[a]) < std::abs(soft[b]); });

    Echelon e = row_reduce(h, syndrome, order);
    for (std::size_t r = e.rank(); r < h.rows(); ++r)
        if (e.rhs.get(r)) throw std::runtime_error("osd0: syndrome is not in the column space of H");

    BinVector hard(h.cols());
    for (std::size_t j = 0; j < h.cols(); ++j)
        if (soft[j] < 0) hard.set(j);
    BinVector fixed = hard;
    for (std::size_t c : e.pivot_cols) fixed.set(c, false);

    BinVector x = fixed;
    for (std::size_t i = 0; i < e.rank(); ++i) {
        bool bit = e.rhs.get(i) ^ dot(e.reduced.row(i), fixed);
        x.set(e.pivot_cols[i], bit);
    }
    return {std::move(x), std::move(e.pivot_cols)};
}

std::vector<double> uniform_priors(std::size_t n, double flip_probability) {
    if (!(flip_probability > 0.0 && flip_probability < 1.0))
        throw std::invalid_argument("flip probability must lie in (0, 1)");
    return std::vector<double>(n, std::log((1.0 - flip_probability) / flip_probability));
}

}  // namespace margulis
