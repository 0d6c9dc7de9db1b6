#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kolmo/bitcodec.hpp"
#include "kolmo/codecs.hpp"
#include "kolmo/random.hpp"
#include "kolmo/series.hpp"
#include "kolmo/stats.hpp"

namespace kolmo {

/// Whatever sits between two stages.
using SeriesData = std::variant<PriceSeries, ReturnSeries, IntegerSeries, SymbolSeries, BitSequence>;

std::string kind_name(const SeriesData& data);
std::size_t length_of(const SeriesData& data);

enum class Transform {
    log_returns,         // prices -> returns
    first_difference,    // integers or integral prices -> integers
    affine_shift,        // integers -> integers (offset)
    equal_width,         // returns -> symbols (width)
    normal_quantile,     // returns -> symbols (width)
    empirical_quantile,  // returns -> symbols (width)
    progressive,         // returns -> symbols (width, window)
    to_symbols,          // integers -> symbols (width), range checked
    to_bits,             // symbols or integers -> bits (width for integers)
    bits_to_symbols,     // bits -> symbols (width)
    take_every_kth,      // bits -> bits (k, phase)
    duplicate_each_bit,  // bits -> bits (k)
};

std::string to_string(Transform t);
Transform transform_from_string(const std::string& name);

struct StageSpec {
    Transform transform = Transform::log_returns;
    int width = 8;
    int window = 512;
    std::int64_t offset = 0;
    int k = 2;
    int phase = 0;
    /// Compress the stage output. Defaults to on for symbol and bit outputs.
    std::optional<bool> compress;
    /// Statistical tests on the stage output: "ljung_box", "adf", "bds".
    std::vector<std::string> tests;
};

struct PipelineConfig {
    std::vector<StageSpec> stages;
    std::vector<Coder> coders{std::begin(kAllCoders), std::end(kAllCoders)};
    Seed seed{20240601};
    int trials = 199;              // Monte-Carlo null size; 0 disables significance
    double alpha = 0.05;           // significance level for p-values
    double regular_threshold = 0.05;
    int ljung_box_lags = 36;
    stats::BdsOptions bds;
};

/// A coder result plus its Monte-Carlo p-value (absent when trials == 0).
struct StageOutcome {
    CompressionOutcome outcome;
    std::optional<double> p_value;
};

struct StageReport {
    std::size_t index = 0;
    StageSpec spec;
    std::string output_kind;
    std::size_t length = 0;
    int width = 0;  // symbol width, 1 for bits, 0 otherwise
    /// Data needed to invert the stage (initial value, offset, bounds, ...).
    nlohmann::json record;
    std::uint32_t digest = 0;  // CRC-32 of the canonical stage output
    std::vector<StageOutcome> outcomes;
    std::vector<stats::TestReport> tests;
};

enum class Verdict { regular, random_incompressible, random_in_practice };
std::string to_string(Verdict v);

struct PipelineReport {
    std::string source;
    std::string input_kind;
    std::size_t input_length = 0;
    PipelineConfig config;
    std::vector<StageReport> stages;
    Verdict verdict = Verdict::random_in_practice;
    std::vector<std::string> annotations;
};

/// Runs the stages in order, compressing and testing where configured, and
/// derives the verdict from the last compressed stage. Stage failures raise
/// PipelineError naming the stage.
PipelineReport run_pipeline(const PipelineConfig& config, const SeriesData& input, const std::string& source = "memory");

/// Applies one stage; `record` receives the inversion data.
SeriesData apply_stage(const StageSpec& spec, const SeriesData& input, nlohmann::json* record = nullptr);

/// Re-runs the report's stages on `input`; returns the indices of stages
/// whose output digest differs (empty when the replay is bit-identical).
std::vector<std::size_t> replay(const PipelineReport& report, const SeriesData& input);

/// The verdict rule on its own: best significant rate >= threshold gives
/// REGULAR, otherwise RANDOM-IN-PRACTICE. Annotations explain the call.
Verdict decide_verdict(const std::vector<StageOutcome>& outcomes, double alpha, double regular_threshold,
                       std::vector<std::string>* annotations = nullptr);

struct NullDistribution {
    Coder coder = Coder::cm;
    std::size_t length = 0;
    int width = 8;
    int trials = 0;
    Seed seed;
    std::vector<double> rates;  // ascending
};

/// Rates of `coder` on `trials` i.i.d. uniform symbol series of the given
/// length and width. Trial t uses derive_seed(seed, t), so the result does
/// not depend on evaluation order. trials >= 100.
NullDistribution mc_null_distribution(Coder coder, std::size_t length, int width, int trials, Seed seed);

/// (1 + #{null >= observed}) / (trials + 1).
double empirical_p_value(double observed_rate, const NullDistribution& null);

struct CountingBoundRow {
    int k = 0;
    std::uint64_t compressed_by_more = 0;  // inputs whose archive is > k bits shorter
    std::uint64_t total = 0;
    double fraction = 0.0;
    double bound = 0.0;  // 2^-k
    bool holds = true;
};

/// Exhaustive over all 2^n bit strings, n <= 16.
std::vector<CountingBoundRow> counting_bound_audit(Coder coder, int n, int k_max);

// JSON
nlohmann::json to_json(const PipelineReport& report);
PipelineReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PipelineConfig& config);
/// Declarative config (see README). Unknown keys are a UsageError.
PipelineConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const stats::TestReport& report);

/// Coder x {file size, rate} tables, one per compressed stage, as
/// (name, csv) pairs with header "algorithm,file_size_bits,rate". A report
/// without compressed stages yields a single header-only table.
std::vector<std::pair<std::string, std::string>> report_tables(const PipelineReport& report);

}  // namespace kolmo
