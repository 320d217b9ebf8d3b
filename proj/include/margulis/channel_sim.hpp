#ifndef MARGULIS_CHANNEL_SIM_HPP
#define MARGULIS_CHANNEL_SIM_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "margulis/code_builder.hpp"
#include "margulis/decoder.hpp"
#include "margulis/gf2_matrix.hpp"

namespace margulis {

struct PauliError {
    BinVector ex;  // set where the qubit carries X or Y
    BinVector ez;  // set where the qubit carries Z or Y
};

/// Generator for trial `trial` of a run seeded with `seed`. Streams depend
/// only on the pair, never on scheduling.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// i.i.d. depolarizing noise: X, Y, Z each with probability eps/3.
/// Requires 0 <= eps <= 1.
PauliError sample_depolarizing(std::size_t n, double eps, std::mt19937_64& rng);

struct Syndromes {
    BinVector sx;  // H_Z e_X^T, input of the X-side decoder
    BinVector sz;  // H_X e_Z^T, input of the Z-side decoder
};

Syndromes syndromes(const CssCode& code, const PauliError& err);

enum class SideOutcome { success, non_convergence, logical_error };

std::string to_string(SideOutcome o);

/// NonConvergence if !converged; Success if estimate ^ actual lies in the
/// span of `stabilizers` (H_X for the X side, H_Z for the Z side).
SideOutcome classify(const RowSpace& stabilizers, const BinVector& estimate, const BinVector& actual, bool converged);
SideOutcome classify(const BinMatrix& stabilizers, const BinVector& estimate, const BinVector& actual, bool converged);

struct TrialOutcome {
    SideOutcome x_side = SideOutcome::success;
    SideOutcome z_side = SideOutcome::success;
    bool failed() const { return x_side != SideOutcome::success || z_side != SideOutcome::success; }
};

/// Per-qubit flip probability seen by each side's decoder: 2 eps / 3.
double side_flip_probability(double eps);

/// Decodes both sides of single trials at a fixed eps. Thread-safe.
class TrialRunner {
public:
    TrialRunner(const CssCode& code, double eps, const DecoderConfig& cfg);

    TrialOutcome run(const PauliError& err) const;
    /// Samples the error for (seed, trial) and decodes it.
    TrialOutcome run(std::uint64_t seed, std::uint64_t trial) const;

private:
    double eps_;
    Decoder x_decoder_;  // on H_Z
    Decoder z_decoder_;  // on H_X
    RowSpace x_stabilizers_;
    RowSpace z_stabilizers_;
    std::vector<double> priors_;
};

struct SimConfig {
    std::vector<double> eps;
    std::size_t min_samples = 100'000;
    std::size_t min_failures = 20;
    std::size_t max_trials = 10'000'000;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::size_t batch_size = 4096;

    /// eps in (0, 3/4], positive budgets, min_samples <= max_trials.
    void validate() const;
};

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval at confidence given by z (default 95%).
WilsonInterval wilson_interval(std::size_t failures, std::size_t trials, double z = 1.959963984540054);

struct LerPoint {
    double eps = 0.0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double ler = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    bool censored = false;  // max_trials reached before min_failures
    std::size_t x_failures = 0;
    std::size_t z_failures = 0;
    std::size_t non_converged = 0;  // trials with at least one non-converged side
};

/// Runs trials 0, 1, 2, ... and stops at the smallest count t >= min_samples
/// whose first t trials contain min_failures failures, or at max_trials.
/// The stopping point is evaluated in trial order, so the result does not
/// depend on the worker count or the batch size.
LerPoint run_point(const CssCode& code, double eps, const SimConfig& cfg, const DecoderConfig& decoder_cfg);

std::vector<LerPoint> run_curve(const CssCode& code, const SimConfig& cfg, const DecoderConfig& decoder_cfg);

/// Columns: eps,trials,failures,ler,ci_low,ci_high,censored
void write_ler_csv(std::ostream& out, std::span<const LerPoint> points);

}  // namespace margulis

#endif  // MARGULIS_CHANNEL_SIM_HPP
