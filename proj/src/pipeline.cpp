#include "kolmo/pipeline.hpp"

#include <algorithm>
#include <boost/crc.hpp>
#include <cmath>
#include <cstring>
#include <map>
#include <tuple>

#include "kolmo/discretize.hpp"
#include "kolmo/error.hpp"
#include "kolmo/generators.hpp"

namespace kolmo {
namespace {

template <class... F>
struct overloaded : F... {
    using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

constexpr std::uint64_t kNullStream = 0x6E756C6Cu;

std::uint32_t digest_of(const SeriesData& data) {
    boost::crc_32_type crc;
    const std::uint8_t tag = static_cast<std::uint8_t>(data.index());
    crc.process_byte(tag);
    std::visit(overloaded{
                   [&](const PriceSeries& s) { crc.process_bytes(s.values.data(), s.values.size() * sizeof(double)); },
                   [&](const ReturnSeries& s) { crc.process_bytes(s.values.data(), s.values.size() * sizeof(double)); },
                   [&](const IntegerSeries& s) {
                       crc.process_bytes(s.values.data(), s.values.size() * sizeof(std::int64_t));
                   },
                   [&](const SymbolSeries& s) {
                       crc.process_byte(static_cast<std::uint8_t>(s.width()));
                       crc.process_bytes(s.symbols().data(), s.size() * sizeof(std::uint32_t));
                   },
                   [&](const BitSequence& s) { crc.process_bytes(s.bits.data(), s.bits.size()); },
               },
               data);
    return crc.checksum();
}

std::vector<double> numeric_view(const SeriesData& data) {
    return std::visit(overloaded{
                          [](const PriceSeries& s) { return s.values; },
                          [](const ReturnSeries& s) { return s.values; },
                          [](const IntegerSeries& s) { return std::vector<double>(s.values.begin(), s.values.end()); },
                          [](const SymbolSeries& s) {
                              return std::vector<double>(s.symbols().begin(), s.symbols().end());
                          },
                          [](const BitSequence& s) { return std::vector<double>(s.bits.begin(), s.bits.end()); },
                      },
                      data);
}

template <class T>
const T& expect(const SeriesData& data, Transform t, const char* wanted) {
    if (const T* p = std::get_if<T>(&data)) return *p;
    throw SizeError(to_string(t) + " expects " + wanted + " input, got " + kind_name(data));
}

bool is_k_duplicated(const BitSequence& bits, int k) {
    if (bits.size() % static_cast<std::size_t>(k) != 0) return false;
    for (std::size_t i = 0; i < bits.size(); i += static_cast<std::size_t>(k))
        for (int j = 1; j < k; ++j)
            if (bits.bits[i + static_cast<std::size_t>(j)] != bits.bits[i]) return false;
    return true;
}

bool compressible(const SeriesData& d) {
    return std::holds_alternative<SymbolSeries>(d) || std::holds_alternative<BitSequence>(d);
}

int width_of(const SeriesData& d) {
    if (const auto* s = std::get_if<SymbolSeries>(&d)) return s->width();
    if (std::holds_alternative<BitSequence>(d)) return 1;
    return 0;
}

}  // namespace

std::string kind_name(const SeriesData& data) {
    static const char* names[] = {"prices", "returns", "integers", "symbols", "bits"};
    return names[data.index()];
}

std::size_t length_of(const SeriesData& data) {
    return std::visit([](const auto& s) { return s.size(); }, data);
}

std::string to_string(Transform t) {
    switch (t) {
        case Transform::log_returns: return "log_returns";
        case Transform::first_difference: return "first_difference";
        case Transform::affine_shift: return "affine_shift";
        case Transform::equal_width: return "equal_width";
        case Transform::normal_quantile: return "normal_quantile";
        case Transform::empirical_quantile: return "empirical_quantile";
        case Transform::progressive: return "progressive";
        case Transform::to_symbols: return "to_symbols";
        case Transform::to_bits: return "to_bits";
        case Transform::bits_to_symbols: return "bits_to_symbols";
        case Transform::take_every_kth: return "take_every_kth";
        case Transform::duplicate_each_bit: return "duplicate_each_bit";
    }
    return "?";
}

Transform transform_from_string(const std::string& name) {
    std::string n = name;
    std::replace(n.begin(), n.end(), '-', '_');
    for (int i = 0; i <= static_cast<int>(Transform::duplicate_each_bit); ++i)
        if (to_string(static_cast<Transform>(i)) == n) return static_cast<Transform>(i);
    throw UsageError("unknown transform '" + name + "'");
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::regular: return "REGULAR";
        case Verdict::random_incompressible: return "RANDOM-INCOMPRESSIBLE";
        case Verdict::random_in_practice: return "RANDOM-IN-PRACTICE";
    }
    return "?";
}

SeriesData apply_stage(const StageSpec& spec, const SeriesData& input, nlohmann::json* record) {
    nlohmann::json rec = nlohmann::json::object();
    SeriesData out;
    const Transform t = spec.transform;
    switch (t) {
        case Transform::log_returns: {
            const auto& p = expect<PriceSeries>(input, t, "prices");
            out = log_returns(p);
            rec["start_price"] = p.values.front();
            break;
        }
        case Transform::first_difference: {
            if (const auto* p = std::get_if<PriceSeries>(&input)) {
                out = first_difference(*p);
                rec["initial"] = static_cast<std::int64_t>(p->values.front());
            } else {
                const auto& s = expect<IntegerSeries>(input, t, "integer or price");
                out = first_difference(s);
                rec["initial"] = s.values.front();
            }
            break;
        }
        case Transform::affine_shift:
            out = affine_shift(expect<IntegerSeries>(input, t, "integer"), spec.offset);
            rec["offset"] = spec.offset;
            break;
        case Transform::equal_width:
        case Transform::normal_quantile:
        case Transform::empirical_quantile:
        case Transform::progressive: {
            const auto& r = expect<ReturnSeries>(input, t, "returns");
            const Scheme scheme = t == Transform::equal_width        ? Scheme::equal_width
                                  : t == Transform::normal_quantile  ? Scheme::normal_quantile
                                  : t == Transform::empirical_quantile ? Scheme::empirical_quantile
                                                                       : Scheme::progressive;
            auto d = discretize(r, scheme, spec.width, spec.window);
            rec["scheme"] = to_string(scheme);
            rec["width"] = spec.width;
            if (scheme == Scheme::progressive) {
                rec["window"] = spec.window;
                rec["dropped_head"] = spec.window - 1;
            }
            if (scheme == Scheme::equal_width && d.record.bounds) {
                rec["min"] = d.record.bounds->bounds().front();
                rec["max"] = d.record.bounds->bounds().back();
            }
            if (scheme == Scheme::empirical_quantile) rec["tie_rule"] = "stable by (value, index)";
            out = std::move(d.symbols);
            break;
        }
        case Transform::to_symbols: {
            const auto& s = expect<IntegerSeries>(input, t, "integer");
            std::vector<std::uint32_t> syms;
            syms.reserve(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) {
                const auto v = s.values[i];
                if (v < 0 || (spec.width < 63 && v >= (std::int64_t{1} << spec.width)))
                    throw RangeError("to_symbols: value " + std::to_string(v) + " at index " + std::to_string(i) +
                                     " does not fit in " + std::to_string(spec.width) + " bits");
                syms.push_back(static_cast<std::uint32_t>(v));
            }
            out = SymbolSeries(std::move(syms), spec.width);
            rec["width"] = spec.width;
            break;
        }
        case Transform::to_bits:
            if (const auto* s = std::get_if<SymbolSeries>(&input)) {
                out = symbols_to_bits(*s);
                rec["width"] = s->width();
            } else {
                const auto& v = expect<IntegerSeries>(input, t, "symbol or integer");
                out = symbols_to_bits(std::span<const std::int64_t>(v.values), spec.width);
                rec["width"] = spec.width;
            }
            break;
        case Transform::bits_to_symbols:
            out = bits_to_symbols(expect<BitSequence>(input, t, "bit"), spec.width);
            rec["width"] = spec.width;
            break;
        case Transform::take_every_kth: {
            const auto& b = expect<BitSequence>(input, t, "bit");
            out = take_every_kth(b, spec.k, spec.phase);
            rec["k"] = spec.k;
            rec["phase"] = spec.phase;
            rec["input_bits"] = b.size();
            // Only lossless when every bit was repeated k times.
            rec["lossless"] = is_k_duplicated(b, spec.k);
            break;
        }
        case Transform::duplicate_each_bit:
            out = duplicate_each_bit(expect<BitSequence>(input, t, "bit"), spec.k);
            rec["k"] = spec.k;
            break;
    }
    if (record) *record = std::move(rec);
    return out;
}

Verdict decide_verdict(const std::vector<StageOutcome>& outcomes, double alpha, double regular_threshold,
                       std::vector<std::string>* annotations) {
    std::vector<std::string> notes;
    const StageOutcome* best = nullptr;
    bool all_assessed = !outcomes.empty();
    bool all_high_p = !outcomes.empty();
    for (const auto& o : outcomes) {
        if (!o.p_value) {
            all_assessed = false;
            all_high_p = false;
            continue;
        }
        if (*o.p_value < 0.5) all_high_p = false;
        if (*o.p_value <= alpha && (!best || o.outcome.rate > best->outcome.rate)) best = &o;
    }

    char buf[256];
    Verdict v = Verdict::random_in_practice;
    if (best && best->outcome.rate >= regular_threshold) {
        v = Verdict::regular;
        std::snprintf(buf, sizeof buf, "regularity found: %s compresses the series by %.2f%% (p = %.4f)",
                      to_string(best->outcome.coder).c_str(), 100.0 * best->outcome.rate, *best->p_value);
        notes.emplace_back(buf);
    } else {
        if (best) {
            std::snprintf(buf, sizeof buf, "weak structure detected: %s rate %.2f%% is significant (p = %.4f) but below %.2f%%",
                          to_string(best->outcome.coder).c_str(), 100.0 * best->outcome.rate, *best->p_value,
                          100.0 * regular_threshold);
            notes.emplace_back(buf);
        } else {
            notes.emplace_back("no coder compresses the series significantly");
        }
        if (!all_assessed) notes.emplace_back("significance not assessed for some coders (no Monte-Carlo null)");
        if (all_high_p) notes.emplace_back("consistent with incompressible (p >= 0.5 for every coder)");
        notes.emplace_back(
            "random in practice: no tested regularity remains, but incompressibility itself cannot be decided");
    }
    if (annotations) *annotations = std::move(notes);
    return v;
}

NullDistribution mc_null_distribution(Coder coder, std::size_t length, int width, int trials, Seed seed) {
    if (trials < 100) throw RangeError("mc_null_distribution: need at least 100 trials, got " + std::to_string(trials));
    if (length == 0) throw SizeError("mc_null_distribution: length must be positive");
    NullDistribution null{coder, length, width, trials, seed, {}};
    null.rates.resize(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        const auto s = gen::uniform_symbols(length, width, derive_seed(seed, static_cast<std::uint64_t>(t)));
        null.rates[static_cast<std::size_t>(t)] = measure(coder, s).rate;
    }
    std::sort(null.rates.begin(), null.rates.end());
    return null;
}

double empirical_p_value(double observed_rate, const NullDistribution& null) {
    if (null.rates.empty()) throw SizeError("empirical_p_value: empty null distribution");
    // rates are sorted: count those >= observed
    const auto it = std::lower_bound(null.rates.begin(), null.rates.end(), observed_rate);
    const auto ge = static_cast<double>(null.rates.end() - it);
    return (1.0 + ge) / (static_cast<double>(null.rates.size()) + 1.0);
}

std::vector<CountingBoundRow> counting_bound_audit(Coder coder, int n, int k_max) {
    if (n < 1 || n > 16) throw SizeError("counting_bound_audit: n must be in [1, 16], got " + std::to_string(n));
    if (k_max < 0) throw RangeError("counting_bound_audit: k_max must be >= 0");
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<std::uint64_t> saved_hist;
    std::vector<CountingBoundRow> rows(static_cast<std::size_t>(k_max) + 1);
    BitSequence bits;
    bits.bits.resize(static_cast<std::size_t>(n));
    for (std::uint64_t x = 0; x < total; ++x) {
        for (int i = 0; i < n; ++i) bits.bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((x >> (n - 1 - i)) & 1u);
        const auto o = measure(coder, bits);
        const auto saved = static_cast<std::int64_t>(o.original_bits) - static_cast<std::int64_t>(o.compressed_bits);
        for (int k = 0; k <= k_max; ++k)
            if (saved > k) ++rows[static_cast<std::size_t>(k)].compressed_by_more;
    }
    for (int k = 0; k <= k_max; ++k) {
        auto& r = rows[static_cast<std::size_t>(k)];
        r.k = k;
        r.total = total;
        r.fraction = static_cast<double>(r.compressed_by_more) / static_cast<double>(total);
        r.bound = std::ldexp(1.0, -k);
        r.holds = r.fraction <= r.bound;
    }
    return rows;
}

PipelineReport run_pipeline(const PipelineConfig& config, const SeriesData& input, const std::string& source) {
    if (config.trials != 0 && config.trials < 100)
        throw UsageError("trials must be 0 (no significance) or at least 100, got " + std::to_string(config.trials));
    PipelineReport report;
    report.source = source;
    report.input_kind = kind_name(input);
    report.input_length = length_of(input);
    report.config = config;

    std::map<std::tuple<int, std::size_t, int>, NullDistribution> nulls;
    const Seed null_seed = derive_seed(config.seed, kNullStream);

    SeriesData current = input;
    for (std::size_t i = 0; i < config.stages.size(); ++i) {
        const auto& spec = config.stages[i];
        const std::string where = "stage " + std::to_string(i + 1) + " (" + to_string(spec.transform) + ")";
        StageReport sr;
        sr.index = i + 1;
        sr.spec = spec;
        try {
            current = apply_stage(spec, current, &sr.record);
        } catch (const Error& e) {
            throw PipelineError(e.kind(), where + ": " + e.what());
        }
        sr.output_kind = kind_name(current);
        sr.length = length_of(current);
        sr.width = width_of(current);
        sr.digest = digest_of(current);

        const bool want_compress = spec.compress.value_or(compressible(current));
        if (want_compress) {
            if (!compressible(current))
                throw PipelineError(ErrorKind::usage, where + ": cannot compress " + kind_name(current) +
                                                          "; discretize or pack to bits first");
            if (sr.length == 0) throw PipelineError(ErrorKind::data, where + ": nothing to compress");
            for (Coder c : config.coders) {
                StageOutcome so;
                try {
                    if (const auto* s = std::get_if<SymbolSeries>(&current))
                        so.outcome = measure(c, *s);
                    else
                        so.outcome = measure(c, std::get<BitSequence>(current));
                } catch (const Error& e) {
                    throw PipelineError(e.kind(), where + ": " + to_string(c) + ": " + e.what());
                }
                if (config.trials > 0) {
                    const auto key = std::make_tuple(static_cast<int>(c), sr.length, sr.width);
                    auto it = nulls.find(key);
                    if (it == nulls.end())
                        it = nulls.emplace(key, mc_null_distribution(c, sr.length, sr.width, config.trials, null_seed)).first;
                    so.p_value = empirical_p_value(so.outcome.rate, it->second);
                }
                sr.outcomes.push_back(so);
            }
        }

        if (!spec.tests.empty()) {
            const ReturnSeries view{numeric_view(current)};
            for (const auto& name : spec.tests) {
                try {
                    if (name == "ljung_box")
                        sr.tests.push_back(stats::ljung_box(view, config.ljung_box_lags));
                    else if (name == "adf")
                        sr.tests.push_back(stats::adf_test(view));
                    else if (name == "bds")
                        sr.tests.push_back(stats::bds_test(view, config.bds));
                    else
                        throw UsageError("unknown test '" + name + "'");
                } catch (const Error& e) {
                    throw PipelineError(e.kind(), where + ": " + name + ": " + e.what());
                }
            }
        }
        report.stages.push_back(std::move(sr));
    }

    const StageReport* last = nullptr;
    for (const auto& s : report.stages)
        if (!s.outcomes.empty()) last = &s;
    if (last) {
        report.verdict = decide_verdict(last->outcomes, config.alpha, config.regular_threshold, &report.annotations);
        report.annotations.insert(report.annotations.begin(),
                                  "verdict taken from stage " + std::to_string(last->index) + " (" +
                                      to_string(last->spec.transform) + ")");
    } else {
        report.verdict = Verdict::random_in_practice;
        report.annotations.emplace_back("no stage was compressed; nothing supports a regularity claim");
    }
    return report;
}

std::vector<std::size_t> replay(const PipelineReport& report, const SeriesData& input) {
    std::vector<std::size_t> mismatched;
    SeriesData current = input;
    for (const auto& s : report.stages) {
        nlohmann::json rec;
        current = apply_stage(s.spec, current, &rec);
        if (digest_of(current) != s.digest || rec != s.record) mismatched.push_back(s.index);
    }
    return mismatched;
}

}  // namespace kolmo
