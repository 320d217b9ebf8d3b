#ifndef MARGULIS_DIAGNOSTICS_HPP
#define MARGULIS_DIAGNOSTICS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "margulis/code_builder.hpp"
#include "margulis/decoder.hpp"
#include "margulis/gf2_matrix.hpp"

namespace margulis {

/// |estimate ^ error ^ stabilizer|; zero exactly when the decoder sits on
/// the complementary degenerate error.
std::size_t weight_trajectory(const BinVector& estimate, const BinVector& error, const BinVector& stabilizer);

/// log(1 / (1 + e^-x)), stable for large |x|.
double log_sigmoid(double x);

/// Check-node free entropy: log of the total probability of the
/// configurations of parity `syndrome_bit`, where bit u of variable i has
/// probability m_i(u) with m_i(0) = sigmoid(nu_i).
double check_free_entropy(std::span<const double> nu, bool syndrome_bit);

/// Bethe free entropy of a message state over the edges of `decoder`
/// (edge order of Decoder). Throws std::runtime_error on non-finite input.
double bethe_entropy(const Decoder& decoder, const MessageState& state, const BinVector& syndrome);
double bethe_entropy(const BinMatrix& h, const MessageState& state, const BinVector& syndrome);

struct StabilizerExperiment {
    BinVector stabilizer;  // support of a stabilizer in the row space of H_X
    BinVector error;       // X error inside the support, half its weight
    DecoderConfig decoder;
    double eps = 0.05;  // sets the decoder priors via 2 eps / 3
};

struct EntropyTrace {
    std::vector<std::size_t> weights;  // W_k, k = 1 .. iterations
    std::vector<double> entropy;       // E^(k)
    std::size_t iterations = 0;
    bool converged = false;
    /// First iteration with W_k = 0.
    std::optional<std::size_t> zero_at;
};

/// Throws std::invalid_argument unless the stabilizer is a nonzero element of
/// the row space of H_X and the error is a subset of it of half its weight.
void validate_experiment(const CssCode& code, const StabilizerExperiment& exp);

/// Decodes the syndrome H_Z e^T on the H_Z Tanner graph and records W_k and
/// E^(k) after every iteration.
EntropyTrace run_stabilizer_experiment(const CssCode& code, const StabilizerExperiment& exp);

/// All half-weight subsets of the support when there are at most `limit` of
/// them, otherwise `limit` distinct subsets drawn with `seed`. Ordered
/// lexicographically by the chosen positions in the first case.
std::vector<BinVector> half_weight_injections(const BinVector& stabilizer, std::size_t limit, std::uint64_t seed);

struct InjectionSearchResult {
    StabilizerExperiment experiment;
    EntropyTrace trace;
    std::size_t attempts = 0;
};

/// Tries stabilizers in order and, for each, its half-weight injections in
/// order until W_k reaches 0. Returns nullopt after max_attempts runs.
std::optional<InjectionSearchResult> find_converging_injection(const CssCode& code,
                                                               std::span<const BinVector> stabilizers,
                                                               const DecoderConfig& decoder, double eps,
                                                               std::size_t per_stabilizer, std::size_t max_attempts,
                                                               std::uint64_t seed);

/// Columns: iteration,W,E
void write_trace_csv(std::ostream& out, const EntropyTrace& trace);
/// Columns: E_prev,E_curr (lag-1 pairs)
void write_phase_portrait_csv(std::ostream& out, const EntropyTrace& trace);

}  // namespace margulis

#endif  // MARGULIS_DIAGNOSTICS_HPP
