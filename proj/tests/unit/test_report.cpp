#include "corpus.hpp"
#include "report.hpp"

#include <doctest.h>

using namespace nctk;
using testing_support::instance;

namespace {

RunOutcome run(const std::string& name, RunOptions o) {
    return run_verb(instance(name), "instances/" + name + ".json", o);
}

RunOptions verb(const std::string& v) {
    RunOptions o;
    o.verb = v;
    return o;
}

}  // namespace

TEST_CASE("reports carry instance, verb, results and verdict") {
    const RunOutcome r = run("j2_weight1", verb("validate"));
    CHECK(r.exit_code == 0);
    CHECK(r.document.at("instance") == "instances/j2_weight1.json");
    CHECK(r.document.at("verb") == "validate");
    CHECK(r.document.at("verdict") == "pass");
    CHECK(r.document.at("results").is_array());
}

TEST_CASE("checker verbs exit 1 on a violated property") {
    CHECK(run("broken_noncommuting", verb("validate")).exit_code == 1);
    CHECK(run("j2_bad_hodge", verb("imhs")).exit_code == 1);
    RunOptions o = verb("purity");
    o.mode = "closed";
    o.z = std::vector<int>{0};
    CHECK(run("j2_weight1", o).exit_code == 0);
}

TEST_CASE("domain errors become error documents") {
    const RunOutcome r = run("broken_w", verb("cohomology"));
    CHECK(r.exit_code == 2);
    CHECK(r.document.at("error") == "FiltrationNotPreserved");
    CHECK(r.document.at("module") == "nc-model");

    const RunOutcome h = run("j2_pure0", verb("imhs"));
    CHECK(h.exit_code == 2);
    CHECK(h.document.at("error") == "MissingHodgeFiltration");
}

TEST_CASE("cohomology of the zero model") {
    RunOptions o = verb("cohomology");
    o.complex = "omega";
    const RunOutcome r = run("empty", o);
    CHECK(r.exit_code == 0);
    for (const auto& d : r.document.at("results").at(0).at("degrees")) CHECK(d.at("dim") == 0);
}

TEST_CASE("rendering is stable") {
    const RunOutcome r = run("tate_product", verb("decompose"));
    CHECK(render_json(r.document) == render_json(run("tate_product", verb("decompose")).document));
    const std::string text = render_text(r.document);
    CHECK(text.rfind("instance: instances/tate_product.json\n", 0) == 0);
    CHECK(text.find("verdict: pass") != std::string::npos);
}

TEST_CASE("every instance verb is dispatched") {
    for (const auto& v : instance_verbs()) {
        RunOptions o = verb(v);
        if (v == "purity") o.mode = "open";
        const RunOutcome r = run("j2_weight1", o);
        CAPTURE(v);
        CHECK(r.exit_code == 0);
    }
}
