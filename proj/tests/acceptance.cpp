// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Everything runs through the public suite runner so the numbers here
// match what the CLI produces for the same seeds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "supcone/stochastic.hpp"
#include "supcone/suites.hpp"

using namespace supcone;
using njson = nlohmann::json;

namespace {

constexpr std::uint64_t kSeed = 20260823;

int g_failures = 0;

void report(int idx, const std::string& what, bool ok, const std::string& note = "") {
    std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, what.c_str(),
                note.empty() ? "" : " ", note.c_str());
    if (!ok) ++g_failures;
}

SuiteResult run(const std::string& suite, long trials, const std::string& backend,
                const std::string& mutate = "") {
    SuiteOptions opts;
    opts.suite = suite;
    opts.trials = trials;
    opts.seed = kSeed;
    opts.backend = backend;
    opts.mutate = mutate;
    return run_suite(opts);
}

std::string strip_timestamp(const std::string& report_json) {
    std::string out;
    std::size_t pos = 0;
    while (pos < report_json.size()) {
        std::size_t eol = report_json.find('\n', pos);
        if (eol == std::string::npos) eol = report_json.size();
        const std::string line = report_json.substr(pos, eol - pos);
        if (line.find("\"generated_at\"") == std::string::npos) out += line + "\n";
        pos = eol + 1;
    }
    return out;
}

// Every property in the report ran the requested number of trials and
// passed all of them (skipped entries are allowed only on the other
// backend's exclusives).
bool all_green(const SuiteResult& res, long trials, std::string& note) {
    if (!res.all_pass) {
        note = "failures in report";
        return false;
    }
    const njson rep = njson::parse(res.report_json);
    for (const auto& suite : rep.at("suites"))
        for (const auto& p : suite.at("properties")) {
            if (p.at("skipped").get<bool>()) continue;
            if (p.at("pass").get<long>() != trials || p.at("fail").get<long>() != 0) {
                note = "property " + p.at("name").get<std::string>() + " ran " +
                       std::to_string(p.at("pass").get<long>()) + "/" + std::to_string(trials);
                return false;
            }
        }
    return true;
}

void criterion_cone() {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteResult res = run("cone-axioms", 1000, "rational");
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string note;
    bool ok = all_green(res, 1000, note);
    if (ok && secs >= 60.0) {
        ok = false;
        note = "runtime " + std::to_string(secs) + "s";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.1fs)", secs);
    report(1, "cone axioms, 1000 exact instances per identity", ok,
           ok ? std::string(buf) : note);
}

void criterion_decomposition() {
    const SuiteResult res = run("bands-decomposition", 1000, "rational");
    std::string note;
    const bool ok = all_green(res, 1000, note);
    report(2, "decomposition identities, 1000 exact instances each", ok, note);
}

void criterion_multiplication() {
    const SuiteResult rat = run("multiplication", 1000, "rational");
    const SuiteResult flt = run("multiplication", 1000, "float");
    std::string note;
    bool ok = all_green(rat, 1000, note);
    if (ok) ok = all_green(flt, 1000, note);
    report(3, "multiplication laws exact plus exponential identities in float", ok, note);
}

void criterion_convergence() {
    const SuiteResult res = run("convergence", 500, "rational");
    std::string note;
    const bool ok = all_green(res, 500, note);
    report(4, "convergence oracles and series closed forms, 500 sequences", ok, note);
}

void criterion_borel_cantelli() {
    const SuiteResult res = run("borel-cantelli", 500, "rational");
    std::string note;
    bool ok = all_green(res, 500, note);

    // product harness sweep m = 2..16 with two probability families
    for (std::size_t m = 2; m <= 16 && ok; ++m) {
        std::vector<std::vector<Rat>> families;
        families.push_back(std::vector<Rat>(m, Rat(1, 2)));
        if (m <= 10) {
            std::vector<Rat> ramp(m);
            for (std::size_t k = 0; k < m; ++k) ramp[k] = Rat(long(k + 1), long(m + 1));
            families.push_back(std::move(ramp));
        }
        for (const auto& probs : families) {
            const Report rep = bcl2_product_harness<Rat>(m, probs);
            if (!rep.pass) {
                ok = false;
                note = "harness failed at m=" + std::to_string(m) + ": " + rep.detail;
                break;
            }
            // independent closed form of the headline value
            double total = 0, left = 1;
            for (const auto& p : probs) {
                total += to_double(p);
                left *= 1.0 - to_double(p);
            }
            if (left > std::exp(-total) + 1e-12) {
                ok = false;
                note = "exponential bound violated at m=" + std::to_string(m);
                break;
            }
            if (total >= 5.0 && left >= 0.01) {
                ok = false;
                note = "tail mass not small at m=" + std::to_string(m);
                break;
            }
        }
    }
    report(5, "borel-cantelli suites plus product harness m=2..16", ok, note);
}

void criterion_martingales() {
    const SuiteResult res = run("martingales", 200, "rational");
    std::string note;
    const bool ok = all_green(res, 200, note);
    report(6, "martingale bounds, stopping and band limits, 200 instances", ok, note);
}

void criterion_cli_selftest() {
    bool ok = true;
    std::string note;

    // byte reproducibility of a seeded full run
    const std::string a = strip_timestamp(run("all", 20, "rational").report_json);
    const std::string b = strip_timestamp(run("all", 20, "rational").report_json);
    if (a != b) {
        ok = false;
        note = "full rational run not reproducible";
    }
    if (ok) {
        const std::string fa = strip_timestamp(run("all", 20, "float").report_json);
        const std::string fb = strip_timestamp(run("all", 20, "float").report_json);
        if (fa != fb) {
            ok = false;
            note = "full float run not reproducible";
        }
    }

    // each built-in mutation must be caught, with a replayable counterexample
    const std::vector<std::pair<std::string, std::string>> where = {
        {"translation-meet", "cone-axioms"},
        {"birkhoff-inequality", "cone-axioms"},
        {"modular-law", "cone-axioms"},
        {"truncation-band", "bands-decomposition"},
        {"infinite-part-calculus", "bands-decomposition"},
        {"residual-limit", "bands-decomposition"},
        {"product-distributive", "multiplication"},
        {"infinity-band-product", "multiplication"},
        {"product-parts", "multiplication"},
        {"damped-agreement", "convergence"},
        {"series-closed-form", "convergence"},
        {"projseq-demorgan", "convergence"},
        {"commutation-blocks", "expectation"},
        {"chebyshev-bound", "expectation"},
        {"independent-limsup", "borel-cantelli"},
        {"stage-bound", "martingales"},
        {"level-series", "martingales"},
    };
    int caught = 0;
    for (const auto& [mut, suite] : where) {
        if (!ok) break;
        const SuiteResult res = run(suite, 80, "rational", mut);
        if (res.all_pass) {
            ok = false;
            note = "mutation " + mut + " was not caught";
            break;
        }
        bool has_cx = false;
        const njson rep = njson::parse(res.report_json);
        for (const auto& s : rep.at("suites"))
            for (const auto& p : s.at("properties"))
                if (p.at("counterexample").is_object() &&
                    p.at("counterexample").contains("trial_seed"))
                    has_cx = true;
        if (!has_cx) {
            ok = false;
            note = "mutation " + mut + " produced no counterexample";
            break;
        }
        const SuiteResult again = run(suite, 80, "rational", mut);
        if (strip_timestamp(again.report_json) != strip_timestamp(res.report_json)) {
            ok = false;
            note = "mutated run for " + mut + " not replayable";
            break;
        }
        ++caught;
    }
    if (ok && caught < 10) {
        ok = false;
        note = "only " + std::to_string(caught) + " mutations exercised";
    }
    report(7, "determinism and mutation self-test (" + std::to_string(caught) + " mutations)",
           ok, note);
}

} // namespace

int main() {
    criterion_cone();
    criterion_decomposition();
    criterion_multiplication();
    criterion_convergence();
    criterion_borel_cantelli();
    criterion_martingales();
    criterion_cli_selftest();
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures ? 1 : 0;
}
