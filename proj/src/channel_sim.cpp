#include "margulis/channel_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace margulis {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

PauliError sample_depolarizing(std::size_t n, double eps, std::mt19937_64& rng) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("depolarizing probability must lie in [0, 1]");
    PauliError err{BinVector(n), BinVector(n)};
    const double third = eps / 3.0;
    for (std::size_t q = 0; q < n; ++q) {
        double u = uniform01(rng);
        if (u >= eps) continue;
        if (u < third) {
            err.ex.set(q);
        } else if (u < 2 * third) {
            err.ex.set(q);
            err.ez.set(q);
        } else {
            err.ez.set(q);
        }
    }
    return err;
}

Syndromes syndromes(const CssCode& code, const PauliError& err) {
    if (err.ex.size() != code.n || err.ez.size() != code.n)
        throw std::invalid_argument("syndromes: error length does not match the code");
    return {mul_vec(code.hz, err.ex), mul_vec(code.hx, err.ez)};
}

std::string to_string(SideOutcome o) {
    switch (o) {
    case SideOutcome::success: return "success";
    case SideOutcome::non_convergence: return "non_convergence";
    case SideOutcome::logical_error: return "logical_error";
    }
    return "?";
}

SideOutcome classify(const RowSpace& stabilizers, const BinVector& estimate, const BinVector& actual, bool converged) {
    if (estimate.size() != actual.size()) throw std::invalid_argument("classify: length mismatch");
    if (!converged) return SideOutcome::non_convergence;
    return stabilizers.contains(estimate ^ actual) ? SideOutcome::success : SideOutcome::logical_error;
}

SideOutcome classify(const BinMatrix& stabilizers, const BinVector& estimate, const BinVector& actual,
                     bool converged) {
    return classify(RowSpace(stabilizers), estimate, actual, converged);
}

double side_flip_probability(double eps) { return 2.0 * eps / 3.0; }

TrialRunner::TrialRunner(const CssCode& code, double eps, const DecoderConfig& cfg)
    : eps_(eps),
      x_decoder_(code.hz, cfg),
      z_decoder_(code.hx, cfg),
      x_stabilizers_(code.hx),
      z_stabilizers_(code.hz),
      priors_(uniform_priors(code.n, side_flip_probability(eps))) {}

TrialOutcome TrialRunner::run(const PauliError& err) const {
    const BinMatrix& hz = x_decoder_.matrix();
    const BinMatrix& hx = z_decoder_.matrix();
    TrialOutcome out;
    auto rx = x_decoder_.decode(mul_vec(hz, err.ex), priors_);
    out.x_side = classify(x_stabilizers_, rx.estimate, err.ex, rx.converged);
    auto rz = z_decoder_.decode(mul_vec(hx, err.ez), priors_);
    out.z_side = classify(z_stabilizers_, rz.estimate, err.ez, rz.converged);
    return out;
}

TrialOutcome TrialRunner::run(std::uint64_t seed, std::uint64_t trial) const {
    auto rng = trial_rng(seed, trial);
    return run(sample_depolarizing(priors_.size(), eps_, rng));
}

void SimConfig::validate() const {
    if (eps.empty()) throw std::invalid_argument("at least one eps value is required");
    for (double e : eps)
        if (!(e > 0.0 && e <= 0.75)) throw std::invalid_argument("eps values must lie in (0, 0.75]");
    if (min_samples == 0 || max_trials == 0 || batch_size == 0 || workers == 0)
        throw std::invalid_argument("simulation budgets and worker count must be positive");
    if (min_samples > max_trials) throw std::invalid_argument("min_samples exceeds max_trials");
}

WilsonInterval wilson_interval(std::size_t failures, std::size_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double nt = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / nt;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nt;
    const double center = (p + z2 / (2 * nt)) / denom;
    const double half = z / denom * std::sqrt(p * (1 - p) / nt + z2 / (4 * nt * nt));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

// Outcome bits per trial: 1 = X side failed, 2 = Z side failed, 4 = some side did not converge.
std::uint8_t encode(const TrialOutcome& o) {
    std::uint8_t bits = 0;
    if (o.x_side != SideOutcome::success) bits |= 1;
    if (o.z_side != SideOutcome::success) bits |= 2;
    if (o.x_side == SideOutcome::non_convergence || o.z_side == SideOutcome::non_convergence) bits |= 4;
    return bits;
}

}  // namespace

LerPoint run_point(const CssCode& code, double eps, const SimConfig& cfg, const DecoderConfig& decoder_cfg) {
    SimConfig one = cfg;
    one.eps = {eps};
    one.validate();

    TrialRunner runner(code, eps, decoder_cfg);
    LerPoint point;
    point.eps = eps;

    std::vector<std::uint8_t> batch;
    std::size_t done = 0;
    bool stopped = false;
    while (!stopped && done < cfg.max_trials) {
        const std::size_t count = std::min(cfg.batch_size, cfg.max_trials - done);
        batch.assign(count, 0);

        constexpr std::size_t chunk = 16;
        std::atomic<std::size_t> cursor{0};
        std::exception_ptr error;
        std::atomic<bool> failed{false};
        auto work = [&] {
            try {
                for (;;) {
                    std::size_t begin = cursor.fetch_add(chunk);
                    if (begin >= count || failed.load()) return;
                    std::size_t end = std::min(count, begin + chunk);
                    for (std::size_t i = begin; i < end; ++i) batch[i] = encode(runner.run(cfg.seed, done + i));
                }
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
            }
        };
        if (cfg.workers <= 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < cfg.workers; ++w) pool.emplace_back(work);
            for (auto& t : pool) t.join();
        }
        if (error) std::rethrow_exception(error);

        for (std::size_t i = 0; i < count; ++i) {
            const std::uint8_t bits = batch[i];
            ++point.trials;
            if (bits & 3) ++point.failures;
            if (bits & 1) ++point.x_failures;
            if (bits & 2) ++point.z_failures;
            if (bits & 4) ++point.non_converged;
            if (point.trials >= cfg.min_samples && point.failures >= cfg.min_failures) {
                stopped = true;
                break;
            }
        }
        done += count;
    }

    point.censored = !stopped;
    point.ler = point.trials ? static_cast<double>(point.failures) / static_cast<double>(point.trials) : 0.0;
    auto ci = wilson_interval(point.failures, point.trials);
    point.ci_low = ci.low;
    point.ci_high = ci.high;
    return point;
}

std::vector<LerPoint> run_curve(const CssCode& code, const SimConfig& cfg, const DecoderConfig& decoder_cfg) {
    cfg.validate();
    std::vector<LerPoint> points;
    for (double eps : cfg.eps) points.push_back(run_point(code, eps, cfg, decoder_cfg));
    return points;
}

void write_ler_csv(std::ostream& out, std::span<const LerPoint> points) {
    out << "eps,trials,failures,ler,ci_low,ci_high,censored\n";
    char buf[256];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.6g,%zu,%zu,%.9e,%.9e,%.9e,%d\n", p.eps, p.trials, p.failures, p.ler,
                      p.ci_low, p.ci_high, p.censored ? 1 : 0);
        out << buf;
    }
}

}  // namespace margulis
