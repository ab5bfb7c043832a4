#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "supcone/capi.h"
#include "supcone/evalexpr.hpp"
#include "supcone/suites.hpp"

using namespace supcone;
using njson = nlohmann::json;

namespace {

ModelSpec three_atom_model() {
    ModelSpec m;
    m.atoms = {"a0", "a1", "a2"};
    m.weights = {Rat(1, 2), Rat(1, 4), Rat(1, 4)};
    m.vectors["x"] = {{Rat(0), true}, {Rat(2), false}, {Rat(0), false}};
    m.vectors["y"] = {{Rat(1), false}, {Rat(3), false}, {Rat(0), false}};
    return m;
}

std::string strip_timestamp(const std::string& report) {
    std::string out;
    std::size_t pos = 0;
    while (pos < report.size()) {
        std::size_t eol = report.find('\n', pos);
        if (eol == std::string::npos) eol = report.size();
        const std::string line = report.substr(pos, eol - pos);
        if (line.find("\"generated_at\"") == std::string::npos) out += line + "\n";
        pos = eol + 1;
    }
    return out;
}

} // namespace

TEST_CASE("generated models validate and round-trip bit for bit") {
    const ModelSpec m = generate_model(7);
    validate_model(m);
    const std::string once = model_to_json_string(m);
    const std::string twice = model_to_json_string(model_from_json_string(once));
    CHECK(once == twice);

    // file round trip
    const std::string path = "roundtrip_model.json";
    save_model(m, path);
    CHECK(model_to_json_string(load_model(path)) == once);
    std::remove(path.c_str());

    // the same seed regenerates the same model
    CHECK(model_to_json_string(generate_model(7)) == once);
    CHECK(model_to_json_string(generate_model(8)) != once);
}

TEST_CASE("model validation names the offending field") {
    ModelSpec m = three_atom_model();
    m.weights = {Rat(1, 2), Rat(1, 4), Rat(3, 20)}; // sums to 0.9
    try {
        validate_model(m);
        FAIL("expected a validation error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("weights") != std::string::npos);
    }

    ModelSpec bad = three_atom_model();
    bad.vectors["z"] = {{Rat(1), false}};
    try {
        validate_model(bad);
        FAIL("expected a validation error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("vectors.z") != std::string::npos);
    }
}

TEST_CASE("minimal one-atom model is valid") {
    ModelSpec m;
    m.atoms = {"only"};
    m.weights = {Rat(1)};
    validate_model(m);
    CHECK(model_from_json_string(model_to_json_string(m)).dim() == 1);
}

TEST_CASE("model parsing rejects malformed input") {
    CHECK_THROWS_AS(model_from_json_string("not json"), ParseError);
    CHECK_THROWS_AS(model_from_json_string("{\"weights\": [\"1\"]}"), ParseError);
    CHECK_THROWS_AS(model_from_json_string("{\"atoms\": [\"a\"], \"weights\": [\"1/0\"]}"),
                    ParseError);
}

TEST_CASE("expression evaluation over named vectors") {
    const ModelSpec m = three_atom_model();

    const njson r = njson::parse(eval_expr(m, "min(x, y)"));
    CHECK(r.at("value") == njson({"1", "2", "0"}));

    CHECK(njson::parse(eval_expr(m, "x + y")).at("value") == njson({"inf", "5", "0"}));
    CHECK(njson::parse(eval_expr(m, "x * 0")).at("value") == njson({"0", "0", "0"}));
    CHECK(njson::parse(eval_expr(m, "y - 1/2")).at("value") == njson({"1/2", "5/2", "-1/2"}));
    CHECK(njson::parse(eval_expr(m, "abs(neg(y - 2))")).at("value") == njson({"1", "0", "2"}));
    CHECK(njson::parse(eval_expr(m, "pos(x)")).at("value") == njson({"inf", "2", "0"}));
    CHECK(njson::parse(eval_expr(m, "max(x, y, 3)")).at("value") == njson({"inf", "3", "3"}));

    CHECK_THROWS_AS(eval_expr(m, "nope"), ParseError);
    CHECK_THROWS_AS(eval_expr(m, "min(x)"), ParseError);
    CHECK_THROWS_AS(eval_expr(m, "x + "), ParseError);
    CHECK_THROWS_AS(eval_expr(m, "x y"), ParseError);
    CHECK_THROWS_AS(eval_expr(m, "y - x"), DomainError); // infinite subtrahend
}

TEST_CASE("suite runner basics") {
    SuiteOptions opts;
    opts.suite = "cone-axioms";
    opts.trials = 0;
    const SuiteResult empty = run_suite(opts);
    CHECK(empty.all_pass);
    const njson rep = njson::parse(empty.report_json);
    CHECK(rep.at("all_pass") == true);
    for (const auto& p : rep.at("suites").at(0).at("properties")) {
        CHECK(p.at("pass") == 0);
        CHECK(p.at("fail") == 0);
    }

    opts.suite = "nonsense";
    CHECK_THROWS_AS(run_suite(opts), ParseError);
    opts.suite = "all";
    opts.backend = "decimal";
    CHECK_THROWS_AS(run_suite(opts), ParseError);
    opts.backend = "rational";
    opts.mutate = "nonsense";
    CHECK_THROWS_AS(run_suite(opts), ParseError);
    opts.mutate.clear();
    opts.trials = -1;
    CHECK_THROWS_AS(run_suite(opts), ParseError);
}

TEST_CASE("suite reports are byte-reproducible apart from the timestamp") {
    SuiteOptions opts;
    opts.suite = "multiplication";
    opts.trials = 10;
    opts.seed = 42;
    const std::string a = strip_timestamp(run_suite(opts).report_json);
    const std::string b = strip_timestamp(run_suite(opts).report_json);
    CHECK(a == b);

    opts.seed = 43;
    CHECK(strip_timestamp(run_suite(opts).report_json) != a);
}

TEST_CASE("a fixed model is embedded in the report and honored") {
    SuiteOptions opts;
    opts.suite = "expectation";
    opts.trials = 5;
    opts.model = generate_model(11);
    const SuiteResult res = run_suite(opts);
    CHECK(res.all_pass);
    const njson rep = njson::parse(res.report_json);
    CHECK(rep.at("model").is_object());
    CHECK(rep.at("model").at("atoms").size() == opts.model->dim());
}

TEST_CASE("c api lifecycle, reporting and error surface") {
    sc_model* m = nullptr;
    REQUIRE(sc_model_generate(3, &m) == SC_OK);

    char* text = nullptr;
    REQUIRE(sc_model_to_json(m, &text) == SC_OK);
    sc_model* m2 = nullptr;
    REQUIRE(sc_model_from_json(text, &m2) == SC_OK);
    char* text2 = nullptr;
    REQUIRE(sc_model_to_json(m2, &text2) == SC_OK);
    CHECK(std::string(text) == text2);

    char* report = nullptr;
    CHECK(sc_run_suite("cone-axioms", 5, 1, "rational", nullptr, m, 0, &report) == SC_OK);
    CHECK(njson::parse(report).at("all_pass") == true);
    sc_string_free(report);

    // a mutated run fails but still produces a report
    char* bad = nullptr;
    CHECK(sc_run_suite("cone-axioms", 40, 1, "rational", "modular-law", nullptr, 0, &bad) ==
          SC_FAIL);
    CHECK(njson::parse(bad).at("all_pass") == false);
    sc_string_free(bad);

    CHECK(sc_run_suite("nonsense", 1, 0, "rational", nullptr, nullptr, 0, nullptr) == SC_ERROR);
    CHECK(std::string(sc_last_error()).find("nonsense") != std::string::npos);

    char* val = nullptr;
    REQUIRE(sc_eval(m, "1/2 * e", &val) == SC_ERROR); // no vector named e
    CHECK(sc_eval(m, "x + y", &val) == SC_OK);
    CHECK(njson::parse(val).contains("value"));
    sc_string_free(val);

    sc_model* missing = nullptr;
    CHECK(sc_model_load("/no/such/file.json", &missing) == SC_ERROR);
    CHECK(std::string(sc_last_error()).size() > 0);

    char* names = nullptr;
    REQUIRE(sc_suite_names(&names) == SC_OK);
    CHECK(std::string(names).find("all\n") != std::string::npos);
    sc_string_free(names);

    char* muts = nullptr;
    REQUIRE(sc_mutation_ids(&muts) == SC_OK);
    CHECK(std::string(muts).find("modular-law") != std::string::npos);
    sc_string_free(muts);

    sc_string_free(text);
    sc_string_free(text2);
    sc_model_free(m);
    sc_model_free(m2);
    sc_model_free(nullptr); // harmless
}
