#include "supcone/capi.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "supcone/evalexpr.hpp"
#include "supcone/suites.hpp"

using namespace supcone;

struct sc_model {
    ModelSpec spec;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Runs f, converting exceptions into SC_ERROR + last-error text.
template <class F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SC_ERROR;
    } catch (...) {
        g_last_error = "unknown error";
        return SC_ERROR;
    }
}

} // namespace

extern "C" {

int sc_model_load(const char* path, sc_model** out) {
    if (!path || !out) {
        g_last_error = "sc_model_load: null argument";
        return SC_ERROR;
    }
    return guarded([&] {
        *out = new sc_model{load_model(path)};
        return SC_OK;
    });
}

int sc_model_from_json(const char* text, sc_model** out) {
    if (!text || !out) {
        g_last_error = "sc_model_from_json: null argument";
        return SC_ERROR;
    }
    return guarded([&] {
        *out = new sc_model{model_from_json_string(text)};
        return SC_OK;
    });
}

int sc_model_generate(uint64_t seed, sc_model** out) {
    if (!out) {
        g_last_error = "sc_model_generate: null argument";
        return SC_ERROR;
    }
    return guarded([&] {
        *out = new sc_model{generate_model(seed)};
        return SC_OK;
    });
}

int sc_model_save(const sc_model* m, const char* path) {
    if (!m || !path) {
        g_last_error = "sc_model_save: null argument";
        return SC_ERROR;
    }
    return guarded([&] {
        save_model(m->spec, path);
        return SC_OK;
    });
}

int sc_model_to_json(const sc_model* m, char** out) {
    if (!m || !out) {
        g_last_error = "sc_model_to_json: null argument";
        return SC_ERROR;
    }
    return guarded([&] {
        *out = dup_string(model_to_json_string(m->spec));
        return SC_OK;
    });
}

void sc_model_free(sc_model* m) { delete m; }

int sc_run_suite(const char* suite, long trials, uint64_t seed, const char* backend,
                 const char* mutate, const sc_model* model, double float_tol,
                 char** report_out) {
    if (!suite || !backend) {
        g_last_error = "sc_run_suite: null suite or backend";
        return SC_ERROR;
    }
    return guarded([&] {
        SuiteOptions opts;
        opts.suite = suite;
        opts.trials = trials;
        opts.seed = seed;
        opts.backend = backend;
        if (mutate) opts.mutate = mutate;
        if (model) opts.model = model->spec;
        if (float_tol > 0) opts.float_tol = float_tol;
        const SuiteResult res = run_suite(opts);
        if (report_out) *report_out = dup_string(res.report_json);
        return res.all_pass ? SC_OK : SC_FAIL;
    });
}

int sc_eval(const sc_model* m, const char* expr, char** result_out) {
    if (!m || !expr || !result_out) {
        g_last_error = "sc_eval: null argument";
        return SC_ERROR;
    }
    return guarded([&] {
        *result_out = dup_string(eval_expr(m->spec, expr));
        return SC_OK;
    });
}

int sc_suite_names(char** out) {
    if (!out) {
        g_last_error = "sc_suite_names: null argument";
        return SC_ERROR;
    }
    return guarded([&] {
        std::string joined;
        for (const auto& s : suite_names()) {
            joined += s;
            joined += '\n';
        }
        *out = dup_string(joined);
        return SC_OK;
    });
}

int sc_mutation_ids(char** out) {
    if (!out) {
        g_last_error = "sc_mutation_ids: null argument";
        return SC_ERROR;
    }
    return guarded([&] {
        std::string joined;
        for (const auto& s : mutation_ids()) {
            joined += s;
            joined += '\n';
        }
        *out = dup_string(joined);
        return SC_OK;
    });
}

const char* sc_last_error(void) { return g_last_error.c_str(); }

void sc_string_free(char* s) { std::free(s); }

} // extern "C"
