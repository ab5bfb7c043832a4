// Command-line front end. Talks to the library exclusively through the
// C API so the shared-library boundary stays honest.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "supcone/capi.h"

namespace {

struct ScopedModel {
    sc_model* m = nullptr;
    ~ScopedModel() { sc_model_free(m); }
};

struct ScopedString {
    char* s = nullptr;
    ~ScopedString() { sc_string_free(s); }
};

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

// Default float tolerance is 1e-9; SUPCONE_FLOAT_TOL overrides it.
int read_tolerance(double& tol) {
    tol = 0; // library default
    const char* env = std::getenv("SUPCONE_FLOAT_TOL");
    if (!env || !*env) return 0;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0))
        return usage_error("SUPCONE_FLOAT_TOL must be a positive number");
    tol = v;
    return 0;
}

int run_verify(const std::string& suite, long trials, std::uint64_t seed,
               const std::string& backend, const std::string& model_path,
               const std::string& report_path, const std::string& mutate) {
    double tol = 0;
    if (int rc = read_tolerance(tol); rc != 0) return rc;

    ScopedModel model;
    if (!model_path.empty()) {
        if (sc_model_load(model_path.c_str(), &model.m) != SC_OK)
            return usage_error(sc_last_error());
    }

    ScopedString report;
    const int rc = sc_run_suite(suite.c_str(), trials, seed, backend.c_str(),
                                mutate.empty() ? nullptr : mutate.c_str(), model.m, tol,
                                &report.s);
    if (rc == SC_ERROR) return usage_error(sc_last_error());

    if (report_path.empty()) {
        std::cout << report.s;
    } else {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) return usage_error("cannot open report file: " + report_path);
        out << report.s;
        if (!out.good()) return usage_error("failed writing report file: " + report_path);
    }
    return rc;
}

int run_eval(const std::string& model_path, const std::string& expr) {
    ScopedModel model;
    if (sc_model_load(model_path.c_str(), &model.m) != SC_OK)
        return usage_error(sc_last_error());
    ScopedString result;
    if (sc_eval(model.m, expr.c_str(), &result.s) != SC_OK)
        return usage_error(sc_last_error());
    std::cout << result.s;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sup-completion verification harness"};
    app.require_subcommand(1);

    std::string suite = "all";
    long trials = 100;
    std::uint64_t seed = 0;
    std::string backend = "rational";
    std::string model_path, report_path, mutate;

    auto* verify = app.add_subcommand("verify", "run a property suite");
    verify->add_option("--suite", suite, "suite name or 'all'");
    verify->add_option("--trials", trials, "randomized instances per property");
    verify->add_option("--seed", seed, "master seed");
    verify->add_option("--backend", backend, "rational | float");
    verify->add_option("--model", model_path, "fixed model file instead of random models");
    verify->add_option("--report", report_path, "write the JSON report here (default stdout)");
    verify->add_option("--mutate", mutate, "inject a built-in identity corruption (self-test)");

    std::string eval_model, expr;
    auto* eval = app.add_subcommand("eval", "evaluate an expression over a model");
    eval->add_option("--model", eval_model, "model file")->required();
    eval->add_option("--expr", expr, "expression over the model's named vectors")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (verify->parsed())
        return run_verify(suite, trials, seed, backend, model_path, report_path, mutate);
    return run_eval(eval_model, expr);
}
