// JSON for pipeline configs and reports, and the CSV rate tables.

#include <cstdio>
#include <set>

#include "kolmo/error.hpp"
#include "kolmo/pipeline.hpp"

#ifndef KOLMO_VERSION
#define KOLMO_VERSION "0.0.0"
#endif

namespace kolmo {
namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw UsageError(where + ": expected an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw UsageError(where + ": unknown key '" + key + "'");
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
}

json stage_to_json(const StageSpec& s) {
    json j{{"transform", to_string(s.transform)}};
    switch (s.transform) {
        case Transform::affine_shift: j["offset"] = s.offset; break;
        case Transform::progressive: j["window"] = s.window; [[fallthrough]];
        case Transform::equal_width:
        case Transform::normal_quantile:
        case Transform::empirical_quantile:
        case Transform::to_symbols:
        case Transform::to_bits:
        case Transform::bits_to_symbols: j["width"] = s.width; break;
        case Transform::take_every_kth: j["phase"] = s.phase; [[fallthrough]];
        case Transform::duplicate_each_bit: j["k"] = s.k; break;
        default: break;
    }
    if (s.compress) j["compress"] = *s.compress;
    if (!s.tests.empty()) j["tests"] = s.tests;
    return j;
}

StageSpec stage_from_json(const json& j, std::size_t index) {
    const std::string where = "stages[" + std::to_string(index) + "]";
    check_keys(j, {"transform", "width", "window", "offset", "k", "phase", "compress", "tests"}, where);
    if (!j.contains("transform")) throw UsageError(where + ": missing 'transform'");
    StageSpec s;
    s.transform = transform_from_string(j.at("transform").get<std::string>());
    s.width = get_or(j, "width", s.width);
    s.window = get_or(j, "window", s.window);
    s.offset = get_or<std::int64_t>(j, "offset", s.offset);
    s.k = get_or(j, "k", s.k);
    s.phase = get_or(j, "phase", s.phase);
    if (j.contains("compress")) s.compress = get_or(j, "compress", true);
    s.tests = get_or(j, "tests", std::vector<std::string>{});
    for (const auto& t : s.tests)
        if (t != "ljung_box" && t != "adf" && t != "bds") throw UsageError(where + ": unknown test '" + t + "'");
    return s;
}

json outcome_to_json(const StageOutcome& o) {
    json j{{"coder", to_string(o.outcome.coder)},
           {"original_bits", o.outcome.original_bits},
           {"compressed_bits", o.outcome.compressed_bits},
           {"rate", o.outcome.rate}};
    j["p_value"] = o.p_value ? json(*o.p_value) : json(nullptr);
    return j;
}

std::string format_rate(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

json to_json(const stats::TestReport& r) {
    json cells = json::array();
    for (const auto& c : r.cells)
        cells.push_back({{"label", c.label}, {"statistic", c.statistic}, {"p_value", c.p_value}, {"params", c.params}});
    return {{"test", r.test}, {"params", r.params}, {"cells", cells}};
}

json to_json(const PipelineConfig& c) {
    json stages = json::array();
    for (const auto& s : c.stages) stages.push_back(stage_to_json(s));
    std::vector<std::string> coders;
    for (auto k : c.coders) coders.push_back(to_string(k));
    return {{"seed", c.seed.value},
            {"trials", c.trials},
            {"alpha", c.alpha},
            {"regular_threshold", c.regular_threshold},
            {"coders", coders},
            {"ljung_box_lags", c.ljung_box_lags},
            {"bds", {{"m", c.bds.m_values}, {"eps", c.bds.eps_multiples}}},
            {"stages", stages}};
}

PipelineConfig config_from_json(const json& j) {
    check_keys(j, {"seed", "trials", "alpha", "regular_threshold", "coders", "ljung_box_lags", "bds", "stages"}, "config");
    PipelineConfig c;
    c.seed.value = get_or<std::uint64_t>(j, "seed", c.seed.value);
    c.trials = get_or(j, "trials", c.trials);
    c.alpha = get_or(j, "alpha", c.alpha);
    c.regular_threshold = get_or(j, "regular_threshold", c.regular_threshold);
    c.ljung_box_lags = get_or(j, "ljung_box_lags", c.ljung_box_lags);
    if (j.contains("coders")) {
        c.coders.clear();
        for (const auto& name : get_or(j, "coders", std::vector<std::string>{})) c.coders.push_back(coder_from_string(name));
        if (c.coders.empty()) throw UsageError("config: 'coders' is empty");
    }
    if (j.contains("bds")) {
        const auto& b = j.at("bds");
        check_keys(b, {"m", "eps"}, "bds");
        c.bds.m_values = get_or(b, "m", c.bds.m_values);
        c.bds.eps_multiples = get_or(b, "eps", c.bds.eps_multiples);
    }
    if (!j.contains("stages") || !j.at("stages").is_array()) throw UsageError("config: 'stages' must be an array");
    for (std::size_t i = 0; i < j.at("stages").size(); ++i) c.stages.push_back(stage_from_json(j.at("stages")[i], i));
    if (c.trials != 0 && c.trials < 100) throw UsageError("config: trials must be 0 or >= 100");
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw UsageError("config: alpha must be in (0, 1)");
    return c;
}

json to_json(const PipelineReport& r) {
    json stages = json::array();
    for (const auto& s : r.stages) {
        json outcomes = json::array();
        for (const auto& o : s.outcomes) outcomes.push_back(outcome_to_json(o));
        json tests = json::array();
        for (const auto& t : s.tests) tests.push_back(to_json(t));
        stages.push_back({{"index", s.index},
                          {"transform", to_string(s.spec.transform)},
                          {"params", stage_to_json(s.spec)},
                          {"record", s.record},
                          {"output", {{"kind", s.output_kind}, {"length", s.length}, {"width", s.width}}},
                          {"digest", s.digest},
                          {"outcomes", outcomes},
                          {"tests", tests}});
    }
    return {{"tool", "kolmo"},
            {"version", KOLMO_VERSION},
            {"seed", r.config.seed.value},
            {"config", to_json(r.config)},
            {"input", {{"source", r.source}, {"kind", r.input_kind}, {"n", r.input_length}}},
            {"stages", stages},
            {"verdict", to_string(r.verdict)},
            {"annotations", r.annotations}};
}

PipelineReport report_from_json(const json& j) {
    try {
        PipelineReport r;
        r.config = config_from_json(j.at("config"));
        r.source = j.at("input").at("source").get<std::string>();
        r.input_kind = j.at("input").at("kind").get<std::string>();
        r.input_length = j.at("input").at("n").get<std::size_t>();
        const auto v = j.at("verdict").get<std::string>();
        r.verdict = v == "REGULAR" ? Verdict::regular
                    : v == "RANDOM-INCOMPRESSIBLE" ? Verdict::random_incompressible
                                                   : Verdict::random_in_practice;
        r.annotations = j.at("annotations").get<std::vector<std::string>>();
        for (const auto& s : j.at("stages")) {
            StageReport sr;
            sr.index = s.at("index").get<std::size_t>();
            sr.spec = stage_from_json(s.at("params"), sr.index - 1);
            sr.record = s.at("record");
            sr.output_kind = s.at("output").at("kind").get<std::string>();
            sr.length = s.at("output").at("length").get<std::size_t>();
            sr.width = s.at("output").at("width").get<int>();
            sr.digest = s.at("digest").get<std::uint32_t>();
            for (const auto& o : s.at("outcomes")) {
                StageOutcome so;
                so.outcome.coder = coder_from_string(o.at("coder").get<std::string>());
                so.outcome.original_bits = o.at("original_bits").get<std::uint64_t>();
                so.outcome.compressed_bits = o.at("compressed_bits").get<std::uint64_t>();
                so.outcome.rate = o.at("rate").get<double>();
                if (!o.at("p_value").is_null()) so.p_value = o.at("p_value").get<double>();
                sr.outcomes.push_back(so);
            }
            for (const auto& t : s.at("tests")) {
                stats::TestReport tr;
                tr.test = t.at("test").get<std::string>();
                tr.params = t.at("params").get<std::map<std::string, double>>();
                for (const auto& c : t.at("cells"))
                    tr.cells.push_back({c.at("label").get<std::string>(), c.at("statistic").get<double>(),
                                        c.at("p_value").get<double>(), c.at("params").get<std::map<std::string, double>>()});
                sr.tests.push_back(tr);
            }
            r.stages.push_back(std::move(sr));
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

std::vector<std::pair<std::string, std::string>> report_tables(const PipelineReport& report) {
    std::vector<std::pair<std::string, std::string>> tables;
    for (const auto& s : report.stages) {
        if (s.outcomes.empty()) continue;
        std::string csv = "algorithm,file_size_bits,rate\n";
        for (const auto& o : s.outcomes)
            csv += to_string(o.outcome.coder) + "," + std::to_string(o.outcome.compressed_bits) + "," +
                   format_rate(o.outcome.rate) + "\n";
        tables.emplace_back("stage" + std::to_string(s.index) + "_" + to_string(s.spec.transform), csv);
    }
    if (tables.empty()) tables.emplace_back("empty", "algorithm,file_size_bits,rate\n");
    return tables;
}

}  // namespace kolmo
