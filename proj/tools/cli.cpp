#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "kolmo/bitcodec.hpp"
#include "kolmo/codecs.hpp"
#include "kolmo/discretize.hpp"
#include "kolmo/error.hpp"
#include "kolmo/generators.hpp"
#include "kolmo/io.hpp"
#include "kolmo/pipeline.hpp"
#include "kolmo/stats.hpp"

namespace kolmo::cli {
namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20240601;

struct Globals {
    std::uint64_t seed = kDefaultSeed;
    std::string out;
    std::string format = "json";
};

struct Sink {
    const Globals& g;
    std::ostream& out;
    std::ostream& err;

    // Echo goes to stdout when the data went to a file, stderr otherwise.
    std::ostream& echo() const { return g.out.empty() ? err : out; }

    void text(const std::string& s) const {
        if (g.out.empty())
            out << s;
        else
            io::write_file(g.out, s);
    }
    void bytes(const std::vector<std::uint8_t>& b) const {
        if (g.out.empty())
            out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
        else
            io::write_file(g.out, b);
    }
};

std::string csv_bits(const BitSequence& bits) {
    std::string s = "bit\n";
    for (auto b : bits.bits) s += b ? "1\n" : "0\n";
    return s;
}

std::string csv_symbols(const SymbolSeries& s) {
    std::string out = "symbol\n";
    for (auto v : s.symbols()) out += std::to_string(v) + "\n";
    return out;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string kind;
    std::size_t n = 0;
    std::size_t digits = 50000;
    double p = 2.0 / 3.0;
    int width = 8;
};

int cmd_generate(const GenerateArgs& a, const Globals& g, const Sink& sink) {
    const Seed seed{g.seed};
    json echo{{"command", "generate"}, {"kind", a.kind}, {"seed", g.seed}};
    json params;
    const bool csv = g.format == "csv";
    std::size_t length = 0;
    std::string format;

    auto emit_bits = [&](const BitSequence& b) {
        length = b.size();
        format = csv ? "csv" : "bit-file";
        if (csv)
            sink.text(csv_bits(b));
        else
            sink.bytes(encode_bit_file(b));
    };
    auto emit_symbols = [&](const SymbolSeries& s) {
        length = s.size();
        format = csv ? "csv" : "symbol-file";
        if (csv)
            sink.text(csv_symbols(s));
        else
            sink.bytes(encode_symbol_file(s));
    };
    auto emit_returns = [&](const ReturnSeries& r) {
        length = r.size();
        format = "csv";
        sink.text(r.size() ? io::to_csv(r) : std::string{});  // n = 0 gives an empty file
    };

    if (a.kind == "thue-morse") {
        params["n"] = a.n;
        emit_bits(gen::thue_morse(a.n));
    } else if (a.kind == "champernowne") {
        params["n"] = a.n;
        emit_bits(gen::champernowne_binary(a.n));
    } else if (a.kind == "pi-digits") {
        params["n"] = a.n;
        const auto d = gen::pi_decimal_digits(a.n);
        length = d.size();
        format = "csv";
        sink.text(io::to_csv(d, "digit"));
    } else if (a.kind == "bernoulli") {
        params["n"] = a.n;
        params["p"] = a.p;
        emit_bits(gen::bernoulli_bits(a.n, a.p, seed));
    } else if (a.kind == "gaussian") {
        params["n"] = a.n;
        emit_returns(gen::iid_gaussian_returns(a.n, seed));
    } else if (a.kind == "uniform") {
        params["n"] = a.n;
        params["width"] = a.width;
        emit_symbols(gen::uniform_symbols(a.n, a.width, seed));
    } else if (a.kind == "lowbit-case1" || a.kind == "lowbit-case2") {
        const int bits = a.kind == "lowbit-case1" ? 1 : 3;
        params["n"] = a.n;
        params["cycle_bits"] = bits;
        emit_returns(gen::hidden_cycle_returns(a.n, bits, seed));
    } else if (a.kind == "toy-e1") {
        params["n"] = a.n;
        const auto p = gen::toy_price_series(a.n, seed);
        length = p.size();
        format = "csv";
        sink.text(io::to_csv(p));
    } else if (a.kind == "pi-returns") {
        params["digits"] = a.digits;
        const auto bytes = gen::pi_bytes(a.digits);
        params["symbols"] = bytes.size();
        emit_returns(gen::pi_returns(a.digits, seed));
    } else {
        throw UsageError("unknown generator kind '" + a.kind +
                         "' (thue-morse, champernowne, pi-digits, bernoulli, gaussian, uniform, lowbit-case1, "
                         "lowbit-case2, toy-e1, pi-returns)");
    }
    echo["params"] = params;
    echo["output"] = {{"path", g.out.empty() ? "-" : g.out}, {"format", format}, {"length", length}};
    sink.echo() << echo.dump() << "\n";
    return ok;
}

// ---------------------------------------------------------------- discretize

struct DiscretizeArgs {
    std::string input;
    std::string scheme = "normal_quantile";
    int width = 8;
    int window = 512;
    bool prices = false;
    std::string bounds_out;
};

ReturnSeries load_returns(const std::string& path, bool prices) {
    const auto text = io::read_text_file(path);
    return prices ? log_returns(io::parse_price_csv(text)) : io::parse_return_csv(text);
}

int cmd_discretize(const DiscretizeArgs& a, const Globals& g, const Sink& sink) {
    const auto returns = load_returns(a.input, a.prices);
    const auto d = discretize(returns, scheme_from_string(a.scheme), a.width, a.window);
    if (g.format == "csv")
        sink.text(csv_symbols(d.symbols));
    else
        sink.bytes(encode_symbol_file(d.symbols));
    if (!a.bounds_out.empty()) {
        if (!d.record.bounds) throw UsageError("--bounds-out: scheme '" + a.scheme + "' has no bounds table");
        io::write_file(a.bounds_out, bounds_to_csv(*d.record.bounds));
    }
    json echo{{"command", "discretize"},
              {"seed", g.seed},
              {"params", {{"scheme", to_string(d.record.scheme)}, {"width", a.width}, {"window", a.window}}},
              {"input", {{"path", a.input}, {"n", returns.size()}}},
              {"output", {{"path", g.out.empty() ? "-" : g.out}, {"length", d.symbols.size()}}}};
    sink.echo() << echo.dump() << "\n";
    return ok;
}

// ---------------------------------------------------------------- compress

json outcome_json(const CompressionOutcome& o) {
    return {{"coder", to_string(o.coder)},
            {"original_bits", o.original_bits},
            {"compressed_bits", o.compressed_bits},
            {"rate", o.rate}};
}

int cmd_compress(const std::string& coder, const std::string& in, const std::string& out_path, const Globals& g,
                 const Sink& sink) {
    const auto data = io::read_binary_file(in);
    const Coder c = coder_from_string(coder);
    const auto blob = compress(c, data);
    const std::string dest = out_path.empty() ? g.out : out_path;
    if (dest.empty()) throw UsageError("compress: no output path");
    io::write_file(dest, blob.bytes);
    const CompressionOutcome o{c, data.size() * 8, blob.size_bits(),
                               data.empty() ? 0.0 : compression_rate(data.size() * 8, blob.size_bits())};
    json echo{{"command", "compress"}, {"seed", g.seed}, {"input", in}, {"output", dest}, {"outcome", outcome_json(o)}};
    sink.out << echo.dump() << "\n";
    return ok;
}

int cmd_decompress(const std::string& in, const std::string& out_path, const Globals& g, const Sink& sink) {
    CompressedBlob blob{io::read_binary_file(in)};
    const auto d = decompress(blob);
    const std::string dest = out_path.empty() ? g.out : out_path;
    if (dest.empty()) throw UsageError("decompress: no output path");
    io::write_file(dest, d.bytes);
    json echo{{"command", "decompress"},
              {"seed", g.seed},
              {"input", in},
              {"output", dest},
              {"coder", to_string(blob.coder())},
              {"original_bits", d.bit_length}};
    sink.out << echo.dump() << "\n";
    return ok;
}

// ---------------------------------------------------------------- test

struct TestArgs {
    std::string input;
    std::vector<std::string> tests{"ljung_box", "adf", "bds"};
    int lags = 36;
    int adf_lags = -1;
    bool prices = false;
    std::vector<int> m{2, 3};
    std::vector<double> eps{0.5, 1.0, 1.5, 2.0};
};

int cmd_test(const TestArgs& a, const Globals& g, const Sink& sink) {
    const auto r = load_returns(a.input, a.prices);
    std::vector<stats::TestReport> reports;
    for (const auto& t : a.tests) {
        if (t == "ljung_box")
            reports.push_back(stats::ljung_box(r, a.lags));
        else if (t == "adf")
            reports.push_back(a.adf_lags >= 0 ? stats::adf_test(r, a.adf_lags) : stats::adf_test(r));
        else if (t == "bds")
            reports.push_back(stats::bds_test(r, {a.m, a.eps}));
        else
            throw UsageError("unknown test '" + t + "' (ljung_box, adf, bds)");
    }
    if (g.format == "csv") {
        std::string csv = "test,cell,statistic,p_value\n";
        char buf[128];
        for (const auto& rep : reports)
            for (const auto& c : rep.cells) {
                std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", c.statistic, c.p_value);
                csv += rep.test + ",\"" + c.label + "\"" + buf;
            }
        sink.text(csv);
    } else {
        json j{{"command", "test"}, {"seed", g.seed}, {"input", {{"path", a.input}, {"n", r.size()}}}, {"tests", json::array()}};
        for (const auto& rep : reports) j["tests"].push_back(to_json(rep));
        sink.text(j.dump(2) + "\n");
    }
    return ok;
}

// ---------------------------------------------------------------- mc-null

int cmd_mc_null(const std::string& coder, std::size_t length, int width, int trials, double observed, bool has_observed,
                const Globals& g, const Sink& sink) {
    const auto null = mc_null_distribution(coder_from_string(coder), length, width, trials, Seed{g.seed});
    const auto positive = std::count_if(null.rates.begin(), null.rates.end(), [](double r) { return r > 0.0; });
    if (g.format == "csv") {
        std::string csv = "trial_rank,rate\n";
        char buf[64];
        for (std::size_t i = 0; i < null.rates.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, null.rates[i]);
            csv += buf;
        }
        sink.text(csv);
    } else {
        json j{{"command", "mc-null"},
               {"seed", g.seed},
               {"coder", coder},
               {"length", length},
               {"width", width},
               {"trials", trials},
               {"positive_rates", positive},
               {"min_rate", null.rates.front()},
               {"max_rate", null.rates.back()},
               {"rates", null.rates}};
        if (has_observed) {
            j["observed_rate"] = observed;
            j["p_value"] = empirical_p_value(observed, null);
        }
        sink.text(j.dump(2) + "\n");
    }
    return ok;
}

// ---------------------------------------------------------------- rep

struct RepArgs {
    std::string input;
    std::string config;
    std::string input_kind = "prices";
    int trials = -1;
    std::vector<std::string> coders;
    std::string scheme = "empirical_quantile";
    int width = 8;
    int window = 512;
};

PipelineConfig default_config(const RepArgs& a) {
    PipelineConfig c;
    if (a.input_kind == "prices") c.stages.push_back({Transform::log_returns, 8, 512, 0, 2, 0, false, {"ljung_box", "adf", "bds"}});
    StageSpec d;
    d.transform = transform_from_string(a.scheme);
    d.width = a.width;
    d.window = a.window;
    c.stages.push_back(d);
    return c;
}

int cmd_rep(const RepArgs& a, const Globals& g, const Sink& sink, bool seed_given) {
    PipelineConfig config;
    if (!a.config.empty()) {
        json j;
        try {
            j = json::parse(io::read_text_file(a.config));
        } catch (const json::parse_error& e) {
            throw ParseError("config '" + a.config + "': " + e.what());
        }
        config = config_from_json(j);
    } else {
        config = default_config(a);
    }
    if (seed_given || a.config.empty()) config.seed = Seed{g.seed};
    if (a.trials >= 0) config.trials = a.trials;
    if (!a.coders.empty()) {
        config.coders.clear();
        for (const auto& c : a.coders) config.coders.push_back(coder_from_string(c));
    }

    const auto text = io::read_text_file(a.input);
    SeriesData input;
    if (a.input_kind == "prices")
        input = io::parse_price_csv(text);
    else if (a.input_kind == "returns")
        input = io::parse_return_csv(text);
    else
        throw UsageError("--input-kind must be 'prices' or 'returns'");

    const auto report = run_pipeline(config, input, a.input);
    if (g.format == "csv") {
        std::string all;
        for (const auto& [name, csv] : report_tables(report)) all += "# " + name + "\n" + csv;
        sink.text(all);
    } else {
        sink.text(to_json(report).dump(2) + "\n");
    }
    if (!g.out.empty())
        sink.out << json{{"command", "rep"}, {"seed", config.seed.value}, {"output", g.out},
                         {"verdict", to_string(report.verdict)}}
                        .dump()
                 << "\n";
    return ok;
}

// ---------------------------------------------------------------- tables

int cmd_tables(const std::string& report_path, const std::string& dir, const Globals& g, const Sink& sink) {
    json j;
    try {
        j = json::parse(io::read_text_file(report_path));
    } catch (const json::parse_error& e) {
        throw ParseError("report '" + report_path + "': " + e.what());
    }
    const auto report = report_from_json(j);
    const auto tables = report_tables(report);
    const std::string target = dir.empty() ? g.out : dir;
    if (target.empty()) {
        for (const auto& [name, csv] : tables) sink.out << "# " << name << "\n" << csv;
        return ok;
    }
    std::filesystem::create_directories(target);
    json written = json::array();
    for (const auto& [name, csv] : tables) {
        const auto path = (std::filesystem::path(target) / (name + ".csv")).string();
        io::write_file(path, csv);
        written.push_back(path);
    }
    sink.out << json{{"command", "tables"}, {"seed", g.seed}, {"written", written}}.dump() << "\n";
    return ok;
}

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::usage: return usage;
        case ErrorKind::data: return data;
        case ErrorKind::numeric: return numeric;
    }
    return data;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"kolmo: compression-based complexity estimates for time series"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(KOLMO_CLI_VERSION));
    Globals g;
    auto* seed_opt = app.add_option("--seed", g.seed, "random seed (default 20240601; always echoed)");
    app.add_option("--out", g.out, "output path (default stdout)");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    GenerateArgs ga;
    auto* generate = app.add_subcommand("generate", "write a generated series");
    generate->add_option("kind", ga.kind, "thue-morse | champernowne | pi-digits | bernoulli | gaussian | uniform | "
                                          "lowbit-case1 | lowbit-case2 | toy-e1 | pi-returns")
        ->required();
    generate->add_option("--n", ga.n, "length");
    generate->add_option("--digits", ga.digits, "pi digits for pi-returns (even)");
    generate->add_option("--p", ga.p, "probability of a one (bernoulli)");
    generate->add_option("--width", ga.width, "symbol width (uniform)");

    DiscretizeArgs da;
    auto* disc = app.add_subcommand("discretize", "map a return (or price) CSV to symbols");
    disc->add_option("input", da.input)->required();
    disc->add_option("--scheme", da.scheme, "equal_width | normal_quantile | empirical_quantile | progressive");
    disc->add_option("--width", da.width);
    disc->add_option("--window", da.window);
    disc->add_flag("--prices", da.prices, "input holds prices; take log returns first");
    disc->add_option("--bounds-out", da.bounds_out, "write the bounds table as CSV");

    std::string coder = "cm", cin, cout_path;
    auto* comp = app.add_subcommand("compress", "compress a file");
    comp->add_option("--coder", coder, "huffman | rle | lz | cm");
    comp->add_option("in", cin)->required();
    comp->add_option("out", cout_path);

    std::string din, dout;
    auto* decomp = app.add_subcommand("decompress", "restore a compressed file");
    decomp->add_option("in", din)->required();
    decomp->add_option("out", dout);

    TestArgs ta;
    std::string test_list;
    auto* test = app.add_subcommand("test", "Ljung-Box, ADF and BDS on a return CSV");
    test->add_option("input", ta.input)->required();
    test->add_option("--tests", test_list, "comma-separated subset of ljung_box,adf,bds");
    test->add_option("--lags", ta.lags, "Ljung-Box lags");
    test->add_option("--adf-lags", ta.adf_lags, "ADF lag order (default floor(cbrt(n-1)))");
    test->add_option("--m", ta.m, "BDS embedding dimensions")->delimiter(',');
    test->add_option("--eps", ta.eps, "BDS epsilon multiples of the sd")->delimiter(',');
    test->add_flag("--prices", ta.prices, "input holds prices; take log returns first");

    std::string mc_coder = "cm";
    std::size_t mc_length = 27423;
    int mc_width = 8, mc_trials = 199;
    double observed = 0.0;
    auto* mc = app.add_subcommand("mc-null", "Monte-Carlo null distribution of compression rates");
    mc->add_option("--coder", mc_coder);
    mc->add_option("--length", mc_length);
    mc->add_option("--width", mc_width);
    mc->add_option("--trials", mc_trials);
    auto* obs_opt = mc->add_option("--observed", observed, "report the empirical p-value of this rate");

    RepArgs ra;
    auto* rep = app.add_subcommand("rep", "run a regularity-erasing pipeline and print the report");
    rep->add_option("input", ra.input)->required();
    rep->add_option("--config", ra.config, "pipeline config (JSON)");
    rep->add_option("--input-kind", ra.input_kind, "prices | returns")->check(CLI::IsMember({"prices", "returns"}));
    rep->add_option("--trials", ra.trials, "Monte-Carlo trials (0 disables, else >= 100)");
    rep->add_option("--coders", ra.coders)->delimiter(',');
    rep->add_option("--scheme", ra.scheme, "discretization when no config is given");
    rep->add_option("--width", ra.width);
    rep->add_option("--window", ra.window);

    std::string report_path, table_dir;
    auto* tables = app.add_subcommand("tables", "render a report's rate tables as CSV");
    tables->add_option("report", report_path)->required();
    tables->add_option("dir", table_dir, "directory for one CSV per table");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForVersion& e) {
        out << KOLMO_CLI_VERSION << "\n";
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }

    const Sink sink{g, out, err};
    try {
        if (*generate) return cmd_generate(ga, g, sink);
        if (*disc) return cmd_discretize(da, g, sink);
        if (*comp) return cmd_compress(coder, cin, cout_path, g, sink);
        if (*decomp) return cmd_decompress(din, dout, g, sink);
        if (*test) {
            if (!test_list.empty()) {
                ta.tests.clear();
                std::stringstream ss(test_list);
                std::string t;
                while (std::getline(ss, t, ',')) ta.tests.push_back(t);
            }
            return cmd_test(ta, g, sink);
        }
        if (*mc) return cmd_mc_null(mc_coder, mc_length, mc_width, mc_trials, observed, obs_opt->count() > 0, g, sink);
        if (*rep) return cmd_rep(ra, g, sink, seed_opt->count() > 0);
        if (*tables) return cmd_tables(report_path, table_dir, g, sink);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return data;
    }
    return usage;
}

}  // namespace kolmo::cli
