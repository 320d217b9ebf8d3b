#include "margulis/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>

#include "margulis/channel_sim.hpp"

namespace margulis {

std::size_t weight_trajectory(const BinVector& estimate, const BinVector& error, const BinVector& stabilizer) {
    if (estimate.size() != error.size() || error.size() != stabilizer.size())
        throw std::invalid_argument("weight_trajectory: length mismatch");
    return (estimate ^ error ^ stabilizer).weight();
}

double log_sigmoid(double x) { return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }

namespace {

double log_add(double a, double b) {
    double hi = std::max(a, b);
    double lo = std::min(a, b);
    if (hi == -INFINITY) return hi;
    return hi + std::log1p(std::exp(lo - hi));
}

void require_finite(double x) {
    if (!std::isfinite(x)) throw std::runtime_error("bethe_entropy: non-finite message");
}

}  // namespace

double check_free_entropy(std::span<const double> nu, bool syndrome_bit) {
    // Log-probabilities of even and odd parity over the variables seen so far.
    double even = 0.0;
    double odd = -INFINITY;
    for (double v : nu) {
        require_finite(v);
        const double p0 = log_sigmoid(v);
        const double p1 = log_sigmoid(-v);
        const double next_even = log_add(even + p0, odd + p1);
        const double next_odd = log_add(even + p1, odd + p0);
        even = next_even;
        odd = next_odd;
    }
    return syndrome_bit ? odd : even;
}

double bethe_entropy(const Decoder& decoder, const MessageState& state, const BinVector& syndrome) {
    const BinMatrix& h = decoder.matrix();
    const std::size_t edges = decoder.num_edges();
    if (state.var_to_check.size() != edges || state.check_to_var.size() != edges)
        throw std::invalid_argument("bethe_entropy: message state does not match the graph");
    if (syndrome.size() != h.rows()) throw std::invalid_argument("bethe_entropy: syndrome length mismatch");

    // Variable nodes: sum over u of prod m_{j->i}(u).
    std::vector<double> var0(h.cols(), 0.0), var1(h.cols(), 0.0);
    double edge_term = 0.0;
    for (std::size_t e = 0; e < edges; ++e) {
        const double mu = state.check_to_var[e];
        const double nu = state.var_to_check[e];
        require_finite(mu);
        require_finite(nu);
        const std::size_t v = decoder.edge_var(e);
        var0[v] += log_sigmoid(mu);
        var1[v] += log_sigmoid(-mu);
        edge_term += log_add(log_sigmoid(mu) + log_sigmoid(nu), log_sigmoid(-mu) + log_sigmoid(-nu));
    }
    double var_term = 0.0;
    for (std::size_t v = 0; v < h.cols(); ++v) var_term += log_add(var0[v], var1[v]);

    double check_term = 0.0;
    std::size_t e = 0;
    for (std::size_t c = 0; c < h.rows(); ++c) {
        std::size_t begin = e;
        while (e < edges && decoder.edge_check(e) == c) ++e;
        check_term += check_free_entropy(
            std::span<const double>(state.var_to_check.data() + begin, e - begin), syndrome.get(c));
    }
    return var_term + check_term - edge_term;
}

double bethe_entropy(const BinMatrix& h, const MessageState& state, const BinVector& syndrome) {
    return bethe_entropy(Decoder(h, DecoderConfig{}), state, syndrome);
}

void validate_experiment(const CssCode& code, const StabilizerExperiment& exp) {
    if (exp.stabilizer.size() != code.n || exp.error.size() != code.n)
        throw std::invalid_argument("stabilizer experiment: vector length does not match the code");
    const std::size_t w = exp.stabilizer.weight();
    if (w == 0 || !in_row_space(exp.stabilizer, code.hx))
        throw std::invalid_argument("stabilizer experiment: support is not a nonzero stabilizer");
    if ((exp.error & exp.stabilizer).weight() != exp.error.weight())
        throw std::invalid_argument("stabilizer experiment: error leaves the stabilizer support");
    if (2 * exp.error.weight() != w)
        throw std::invalid_argument("stabilizer experiment: error must have half the stabilizer weight");
    if (!(exp.eps > 0.0 && exp.eps <= 0.75)) throw std::invalid_argument("stabilizer experiment: eps out of range");
}

EntropyTrace run_stabilizer_experiment(const CssCode& code, const StabilizerExperiment& exp) {
    validate_experiment(code, exp);
    Decoder decoder(code.hz, exp.decoder);
    const BinVector syndrome = mul_vec(code.hz, exp.error);
    const auto priors = uniform_priors(code.n, side_flip_probability(exp.eps));

    EntropyTrace trace;
    auto observe = [&](std::size_t iter, const MessageState& state, const BinVector& estimate) {
        std::size_t w = weight_trajectory(estimate, exp.error, exp.stabilizer);
        trace.weights.push_back(w);
        trace.entropy.push_back(bethe_entropy(decoder, state, syndrome));
        if (w == 0 && !trace.zero_at) trace.zero_at = iter;
    };
    auto result = decoder.decode(syndrome, priors, false, observe);
    trace.iterations = result.iterations;
    trace.converged = result.converged && !result.osd_used;
    return trace;
}

std::vector<BinVector> half_weight_injections(const BinVector& stabilizer, std::size_t limit, std::uint64_t seed) {
    const auto vars = stabilizer.support();
    const std::size_t w = vars.size();
    if (w == 0 || w % 2) throw std::invalid_argument("half_weight_injections: stabilizer weight must be even");
    const std::size_t half = w / 2;

    // C(w, half), saturating once it exceeds the limit.
    std::size_t total = 1;
    for (std::size_t i = 1; i <= half && total <= limit; ++i) total = total * (w - half + i) / i;

    std::vector<BinVector> out;
    if (total <= limit) {
        std::vector<int> pick(w, 0);
        std::fill(pick.begin(), pick.begin() + half, 1);
        do {
            BinVector e(stabilizer.size());
            for (std::size_t i = 0; i < w; ++i)
                if (pick[i]) e.set(vars[i]);
            out.push_back(std::move(e));
        } while (std::prev_permutation(pick.begin(), pick.end()));
        return out;
    }

    std::mt19937_64 rng(seed);
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::size_t> order = vars;
    while (out.size() < limit) {
        for (std::size_t i = w - 1; i > 0; --i) {
            std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
            std::swap(order[i], order[j]);
        }
        std::vector<std::size_t> chosen(order.begin(), order.begin() + half);
        std::sort(chosen.begin(), chosen.end());
        if (!seen.insert(chosen).second) continue;
        BinVector e(stabilizer.size());
        for (auto v : chosen) e.set(v);
        out.push_back(std::move(e));
    }
    return out;
}

std::optional<InjectionSearchResult> find_converging_injection(const CssCode& code,
                                                               std::span<const BinVector> stabilizers,
                                                               const DecoderConfig& decoder, double eps,
                                                               std::size_t per_stabilizer, std::size_t max_attempts,
                                                               std::uint64_t seed) {
    std::size_t attempts = 0;
    for (std::size_t s = 0; s < stabilizers.size(); ++s) {
        for (auto& error : half_weight_injections(stabilizers[s], per_stabilizer, seed + s)) {
            if (attempts == max_attempts) return std::nullopt;
            ++attempts;
            StabilizerExperiment exp{stabilizers[s], std::move(error), decoder, eps};
            auto trace = run_stabilizer_experiment(code, exp);
            if (trace.zero_at) return InjectionSearchResult{std::move(exp), std::move(trace), attempts};
        }
    }
    return std::nullopt;
}

void write_trace_csv(std::ostream& out, const EntropyTrace& trace) {
    out << "iteration,W,E\n";
    char buf[128];
    for (std::size_t k = 0; k < trace.weights.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%.12g\n", k + 1, trace.weights[k], trace.entropy[k]);
        out << buf;
    }
}

void write_phase_portrait_csv(std::ostream& out, const EntropyTrace& trace) {
    out << "E_prev,E_curr\n";
    char buf[128];
    for (std::size_t k = 1; k < trace.entropy.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", trace.entropy[k - 1], trace.entropy[k]);
        out << buf;
    }
}

}  // namespace margulis
