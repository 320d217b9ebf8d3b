#ifndef MARGULIS_DECODER_HPP
#define MARGULIS_DECODER_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "margulis/gf2_matrix.hpp"

namespace margulis {

enum class DecoderVariant { bp, ms, nms };

DecoderVariant parse_variant(const std::string& name);
std::string to_string(DecoderVariant v);

/// Saturation bound applied to every message.
inline constexpr double message_clip = 25.0;

struct DecoderConfig {
    DecoderVariant variant = DecoderVariant::nms;
    double beta = 0.875;  // used by nms only
    std::size_t max_iters = 300;
    bool stop_on_syndrome = true;
    /// Run OSD-0 on the final soft values when message passing does not converge.
    bool osd0 = false;

    void validate() const;
};

/// Per-edge messages, indexed by edge id (edges enumerated row by row).
struct MessageState {
    std::vector<double> var_to_check;  // nu
    std::vector<double> check_to_var;  // mu
};

struct IterationRecord {
    std::size_t iteration = 0;
    std::size_t hard_weight = 0;
    std::size_t syndrome_mismatches = 0;
};

struct DecodeResult {
    BinVector estimate;
    bool converged = false;
    std::size_t iterations = 0;
    std::vector<double> soft;  // lambda_j + sum of incoming mu, after the last iteration
    bool osd_used = false;
    std::vector<IterationRecord> trace;
};

/// Called after every iteration with the iteration number (from 1), the
/// message state and the current hard decision.
using IterationObserver = std::function<void(std::size_t, const MessageState&, const BinVector&)>;

/// 2 (1 - 2s) atanh(prod tanh(nu / 2)), saturated at +-message_clip.
double bp_check_update(std::span<const double> incoming, bool syndrome_bit);
/// (1 - 2s) prod sgn(nu) min |nu|, with sgn(0) = +1.
double ms_check_update(std::span<const double> incoming, bool syndrome_bit);

/// Syndrome decoder over a fixed parity-check matrix with flooding schedule.
/// decode() is const and keeps its state local, so one instance may serve
/// many threads.
class Decoder {
public:
    Decoder(const BinMatrix& h, DecoderConfig cfg);

    const DecoderConfig& config() const { return cfg_; }
    const BinMatrix& matrix() const { return h_; }
    std::size_t num_edges() const { return edge_var_.size(); }
    std::size_t edge_check(std::size_t e) const { return edge_check_[e]; }
    std::size_t edge_var(std::size_t e) const { return edge_var_[e]; }

    DecodeResult decode(const BinVector& syndrome, std::span<const double> priors, bool keep_trace = false,
                        const IterationObserver& observer = {}) const;

private:
    BinMatrix h_;
    DecoderConfig cfg_;
    std::vector<std::size_t> check_start_;  // edges of check i: [check_start_[i], check_start_[i+1])
    std::vector<std::uint32_t> edge_var_;
    std::vector<std::uint32_t> edge_check_;
    std::vector<std::vector<std::uint32_t>> var_edges_;
};

/// Convenience wrapper constructing a Decoder for a single call.
DecodeResult decode(const BinMatrix& h, const BinVector& syndrome, std::span<const double> priors,
                    const DecoderConfig& cfg);

struct OsdResult {
    BinVector estimate;
    std::vector<std::size_t> pivot_cols;
};

/// Order-0 ordered statistics decoding. The hard decision is soft < 0 and its
/// reliability |soft|. Pivot columns are picked greedily from the least
/// reliable position upwards, the remaining (most reliable) positions keep
/// their hard decision, and the pivot positions are solved so that
/// H e^T = s. Throws std::runtime_error when the syndrome is inconsistent.
OsdResult osd0(const BinMatrix& h, const BinVector& syndrome, std::span<const double> soft);

/// lambda = ln((1 - p) / p) for every one of n variables.
std::vector<double> uniform_priors(std::size_t n, double flip_probability);

}  // namespace margulis

#endif  // MARGULIS_DECODER_HPP
