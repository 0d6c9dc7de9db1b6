// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "kolmo/codecs.hpp"
#include "kolmo/discretize.hpp"
#include "kolmo/generators.hpp"
#include "kolmo/pipeline.hpp"
#include "kolmo/stats.hpp"
#include "oracles.hpp"

using namespace kolmo;

namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& why) {
        if (!ok) {
            if (pass) detail << " first failure: " << why << ";";
            pass = false;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ---------------------------------------------------------------------------

Check ac1_round_trip() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(Seed{1001});
    std::size_t inputs = 0, failures = 0;
    for (int i = 0; i < 10000; ++i) {
        std::size_t n = rng.next_u64() % 2048;
        if (i % 500 == 0) n = 20000 + rng.next_u64() % 20000;
        if (n == 0) n = 1;
        std::vector<std::uint8_t> data(n);
        switch (i % 5) {
            case 0:  // uniform
                for (auto& b : data) b = static_cast<std::uint8_t>(rng.bits(8));
                break;
            case 1: {  // runs
                std::size_t k = 0;
                while (k < n) {
                    const auto len = 1 + rng.next_u64() % 40;
                    const auto v = static_cast<std::uint8_t>(rng.bits(8));
                    for (std::size_t j = 0; j < len && k < n; ++j) data[k++] = v;
                }
                break;
            }
            case 2: {  // periodic with noise
                const std::size_t period = 1 + rng.next_u64() % 100;
                for (std::size_t k = 0; k < n; ++k)
                    data[k] = k < period ? static_cast<std::uint8_t>(rng.bits(8)) : data[k - period];
                for (int e = 0; e < 5; ++e) data[rng.next_u64() % n] ^= static_cast<std::uint8_t>(rng.bits(8));
                break;
            }
            case 3:  // skewed small alphabet
                for (auto& b : data) b = static_cast<std::uint8_t>(rng.bits(2) & rng.bits(2));
                break;
            default: {  // hidden low-bit cycle
                for (std::size_t k = 0; k < n; ++k)
                    data[k] = static_cast<std::uint8_t>((rng.bits(8) & 0xF8u) | (k & 7u));
            }
        }
        // occasionally a partial last byte
        std::uint64_t bits = n * 8;
        if (i % 7 == 0) {
            const int drop = 1 + static_cast<int>(rng.next_u64() % 7);
            bits -= static_cast<std::uint64_t>(drop);
            data.back() &= static_cast<std::uint8_t>(0xFFu << drop);
        }
        for (auto coder : kAllCoders) {
            ++inputs;
            const auto back = decompress(compress(coder, data, bits));
            if (back.bytes != data || back.bit_length != bits) ++failures;
        }
    }
    const double secs = seconds_since(t0);
    c.require(failures == 0, std::to_string(failures) + " mismatches");
    c.require(secs < 120.0, "runtime over 2 min");
    c.detail << " " << inputs << " coder/input pairs, " << failures << " mismatches, " << fmt("%.1fs", secs);
    return c;
}

Check ac2_null_incompressibility() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const auto bounds = normal_quantile_bounds(8);
    double worst[5] = {-1, -1, -1, -1, -1};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto s = discretize_with_bounds(gen::iid_gaussian_returns(32000, Seed{seed}), bounds);
        for (auto coder : kAllCoders) {
            const double r = measure(coder, s).rate;
            worst[static_cast<int>(coder)] = std::max(worst[static_cast<int>(coder)], r);
            c.require(r <= 0.005, to_string(coder) + " rate " + fmt("%.5f", r) + " seed " + std::to_string(seed));
            if (coder == Coder::huffman || coder == Coder::cm)
                c.require(r <= 0.0, to_string(coder) + " rate positive, seed " + std::to_string(seed));
        }
    }
    const double secs = seconds_since(t0);
    c.require(secs < 60.0, "runtime over 1 min");
    c.detail << " max rates huffman " << fmt("%.4f", worst[1]) << " rle " << fmt("%.4f", worst[2]) << " lz "
             << fmt("%.4f", worst[3]) << " cm " << fmt("%.4f", worst[4]) << ", " << fmt("%.1fs", secs);
    return c;
}

bool battery_blind(const ReturnSeries& r) {
    for (const auto& rep : stats::standard_battery(r))
        if (stats::detects_structure(rep, 0.05)) return false;
    return true;
}

Check ac3_hidden_structure() {
    Check c;
    const auto bounds = normal_quantile_bounds(8);
    int blind = 0;
    double lo1 = 1, hi1 = 0, lo2 = 1, hi2 = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto r1 = gen::hidden_cycle_returns(32000, 1, Seed{seed});
        const auto r2 = gen::hidden_cycle_returns(32000, 3, Seed{seed});
        const double c1 = measure(Coder::cm, discretize_with_bounds(r1, bounds)).rate;
        const double c2 = measure(Coder::cm, discretize_with_bounds(r2, bounds)).rate;
        lo1 = std::min(lo1, c1), hi1 = std::max(hi1, c1);
        lo2 = std::min(lo2, c2), hi2 = std::max(hi2, c2);
        c.require(c1 >= 0.10 && c1 <= 0.125, "case 1 cm rate " + fmt("%.4f", c1));
        c.require(c2 >= 0.30 && c2 <= 0.375, "case 2 cm rate " + fmt("%.4f", c2));
        blind += battery_blind(r1) && battery_blind(r2);
    }
    c.require(blind >= 8, "tests blind in only " + std::to_string(blind) + "/10 seeds");
    c.detail << " case1 cm " << fmt("[%.4f", lo1) << fmt(", %.4f]", hi1) << ", case2 cm " << fmt("[%.4f", lo2)
             << fmt(", %.4f]", hi2) << ", LB/ADF/BDS blind in " << blind << "/10 seeds";
    return c;
}

Check ac4_biased_entropy() {
    Check c;
    const std::size_t n = 100000;
    const auto bits = gen::bernoulli_bits(n, 2.0 / 3.0, Seed{4});
    const auto o = measure(Coder::cm, bits);
    const double target = 0.918 * static_cast<double>(n);
    const double ratio = static_cast<double>(o.compressed_bits) / target;
    c.require(std::abs(ratio - 1.0) <= 0.03, "size ratio " + fmt("%.4f", ratio));
    c.detail << " cm " << o.compressed_bits << " bits vs 0.918n = " << fmt("%.0f", target) << " (ratio "
             << fmt("%.4f", ratio) << ")";
    return c;
}

Check ac5_pi_limit() {
    Check c;
    const auto returns = gen::pi_returns(50000, Seed{20240601});
    const auto s = empirical_quantile_discretize(returns, 8);
    for (auto coder : kAllCoders) {
        const double r = measure(coder, s).rate;
        c.require(std::abs(r) <= 0.01, to_string(coder) + " rate " + fmt("%.4f", r));
        c.detail << " " << to_string(coder) << " " << fmt("%.4f", r);
    }
    for (const auto& rep : stats::standard_battery(returns)) {
        c.require(!stats::detects_structure(rep, 0.05), rep.test + " rejects");
        c.detail << ", " << rep.test << " p " << fmt(rep.test == "bds" ? "min %.3f" : "%.3f", rep.min_p());
    }
    return c;
}

Check ac6_mc_null() {
    Check c;
    const auto null = mc_null_distribution(Coder::cm, 27423, 8, 100, Seed{20240601});
    const auto positive = std::count_if(null.rates.begin(), null.rates.end(), [](double r) { return r > 0; });
    c.require(positive == 0, std::to_string(positive) + " positive rates");
    const double p = empirical_p_value(1e-9, null);
    c.require(p <= 1.0 / 101.0, "p-value " + fmt("%.5f", p));
    c.detail << " 100 trials, positive " << positive << ", max rate " << fmt("%.5f", null.rates.back())
             << ", p(rate>0) = " << fmt("%.5f", p);
    return c;
}

Check ac7_counting_bound() {
    Check c;
    for (auto coder : kAllCoders) {
        const auto rows = counting_bound_audit(coder, 12, 10);
        double worst = 0;
        for (int k = 1; k <= 10; ++k) {
            const auto& r = rows[static_cast<std::size_t>(k)];
            c.require(r.fraction <= std::ldexp(1.0, -k), to_string(coder) + " k=" + std::to_string(k));
            worst = std::max(worst, r.fraction / r.bound);
        }
        c.detail << " " << to_string(coder) << " max fraction/bound " << fmt("%.3g", worst) << ";";
    }
    return c;
}

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
    return s;
}

Check ac8_worked_example() {
    Check c;
    // e1 as printed; the printed e2/e3/e4 run one term past what 14 prices yield,
    // so comparisons use the 13 derivable terms.
    const std::vector<double> e1{1000, 1028, 1044, 1015, 998, 1017, 1048, 1079, 1110, 1090, 1058, 1089, 1117, 1100};
    const std::string e2_printed = "28, 16, -29, -17, 19, 31, 31, 31, -20, -32, 31, 28, -17, -17";
    const std::string e3_printed = "60, 48, 3, 15, 51, 63, 63, 63, 12, 0, 63, 60, 15, 15";
    const std::string e4_printed =
        "111100, 110000, 000011, 001111, 110011, 111111, 111111, 111111, 001100, 000000, 111111, 111100, 001111, 001111";
    const std::string e6_printed = "110100001011101111111111010000111110011011";

    PipelineConfig cfg;
    cfg.trials = 0;
    StageSpec diff{Transform::first_difference}, shift{Transform::affine_shift}, bits{Transform::to_bits},
        half{Transform::take_every_kth};
    shift.offset = 32;
    bits.width = 6;
    SeriesData x = make_price_series(e1);
    x = apply_stage(diff, x);
    std::vector<std::string> e2;
    for (auto v : std::get<IntegerSeries>(x).values) e2.push_back(std::to_string(v));
    x = apply_stage(shift, x);
    std::vector<std::string> e3, e4;
    for (auto v : std::get<IntegerSeries>(x).values) e3.push_back(std::to_string(v));
    x = apply_stage(bits, x);
    const auto e5 = to_string(std::get<BitSequence>(x));
    for (std::size_t i = 0; i < e5.size(); i += 6) e4.push_back(e5.substr(i, 6));
    x = apply_stage(half, x);
    const auto e6 = to_string(std::get<BitSequence>(x));

    auto prefix_ok = [&](const std::string& ours, const std::string& printed, const char* name) {
        const bool ok = !ours.empty() && printed.compare(0, ours.size(), ours) == 0;
        c.require(ok, std::string(name) + " '" + ours + "'");
        c.detail << " " << name << " " << ours.size() << "/" << printed.size() << " chars match;";
    };
    prefix_ok(join(e2), e2_printed, "e2");
    prefix_ok(join(e3), e3_printed, "e3");
    prefix_ok(join(e4), e4_printed, "e4");
    prefix_ok(e6, e6_printed, "e6");
    return c;
}

Check ac9_volatility_erasure() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    PipelineConfig global;
    global.coders = {Coder::cm};
    global.trials = 199;
    global.stages = {{Transform::empirical_quantile}};
    PipelineConfig prog = global;
    prog.trials = 0;
    prog.stages[0].transform = Transform::progressive;
    prog.stages[0].window = 512;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto r = fixture::two_regime_returns(fixture::kVolClusterLength, Seed{seed});
        const auto g = run_pipeline(global, r).stages[0].outcomes[0];
        const auto p = run_pipeline(prog, r).stages[0].outcomes[0];
        const double drop = 1.0 - p.outcome.rate / g.outcome.rate;
        c.require(g.outcome.rate >= 0.01, "global rate " + fmt("%.4f", g.outcome.rate));
        c.require(g.p_value && *g.p_value <= 0.01, "global p " + fmt("%.4f", g.p_value.value_or(1.0)));
        c.require(drop >= 0.5, "relative drop " + fmt("%.3f", drop));
        c.detail << " s" << seed << fmt(": %.4f", g.outcome.rate) << fmt("->%.4f", p.outcome.rate)
                 << fmt(" p=%.4f", g.p_value.value_or(1.0)) << ";";
    }
    const double secs = seconds_since(t0);
    c.require(secs < 300.0, "runtime over 5 min");
    c.detail << fmt(" %.1fs", secs);
    return c;
}

Check ac10_calibration() {
    Check c;
    const int reps = 200;
    const std::size_t n = 4096;
    int lb = 0, adf = 0, bds = 0;
    stats::BdsOptions opt;
    opt.m_values = {2};
    opt.eps_multiples = {1.0};
    for (int i = 0; i < reps; ++i) {
        const auto z = gen::iid_gaussian_returns(n, derive_seed(Seed{777}, static_cast<std::uint64_t>(i)));
        lb += stats::ljung_box(z, 36).cells[0].p_value < 0.05;
        bds += stats::bds_test(z, opt).cells[0].p_value < 0.05;
        // the unit-root null holds for the levels of a random walk
        ReturnSeries walk = z;
        double level = 0.0;
        for (auto& v : walk.values) v = level += v;
        adf += stats::adf_test(walk).cells[0].p_value < 0.05;
    }
    auto in_band = [&](int k, const char* name) {
        const double f = static_cast<double>(k) / reps;
        c.require(f >= 0.02 && f <= 0.08, std::string(name) + " rejection rate " + fmt("%.3f", f));
        c.detail << " " << name << fmt(" %.3f", f) << ";";
    };
    in_band(lb, "ljung_box");
    in_band(adf, "adf");
    in_band(bds, "bds");

    double max_err = 0.0;
    for (std::size_t m : {200u, 350u, 500u}) {
        const auto r = gen::iid_gaussian_returns(m, Seed{m});
        stats::BdsOptions all;
        all.m_values = {2, 3};
        const auto rep = stats::bds_test(r, all);
        const double sd = rep.params.at("sd");
        for (const auto& cell : rep.cells) {
            const double w = oracle::bds_w_brute(r.values, cell.params.at("eps_multiple") * sd,
                                                 static_cast<int>(cell.params.at("m")));
            max_err = std::max(max_err, std::abs(cell.statistic - w));
        }
    }
    c.require(max_err <= 1e-12, "BDS oracle gap " + fmt("%.3g", max_err));
    c.detail << " BDS vs brute force max |dW| " << fmt("%.2g", max_err);
    return c;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Check()>> criteria[] = {
        {"AC1 round-trip losslessness", ac1_round_trip},
        {"AC2 null incompressibility", ac2_null_incompressibility},
        {"AC3 hidden-structure detection", ac3_hidden_structure},
        {"AC4 biased-source entropy", ac4_biased_entropy},
        {"AC5 pi practical limit", ac5_pi_limit},
        {"AC6 Monte-Carlo null", ac6_mc_null},
        {"AC7 counting bound", ac7_counting_bound},
        {"AC8 worked example", ac8_worked_example},
        {"AC9 volatility-clustering erasure", ac9_volatility_erasure},
        {"AC10 statistical-test calibration", ac10_calibration},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Check c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail << " exception: " << e.what();
        }
        failed += !c.pass;
        std::printf("%s %s:%s\n", c.pass ? "PASS" : "FAIL", name, c.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
