#include "drshift/cli_core.hpp"
#include "drshift/graph_file.hpp"

#include <doctest.h>

#include <sstream>

using namespace drshift;

TEST_CASE("graph files parse with positions on errors") {
    const std::string good = "# ladder-like pair\n"
                             "vertex a\n"
                             "vertex b\n"
                             "edge e a -> {b}\n"
                             "edge f b -> {a}\n";
    Ultragraph g = parse_graph_text(good);
    CHECK(g->edge_count() == 2);
    CHECK(g->is_graph());

    const std::string ultra = "vertex a\nvertex b\nedge e a -> {a,b}\nedge f b -> {a}\n";
    CHECK_FALSE(parse_graph_text(ultra)->is_graph());

    try {
        parse_graph_text("vertex a\nedge e a -> {zzz}\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line == 2);
        CHECK(e.column > 1);
    }
    CHECK_THROWS_AS(parse_graph_text("vertx a\n"), parse_error);
}

TEST_CASE("entropy finite: agreement and exit codes") {
    std::ostringstream out, err;
    RunConfig cfg;
    cfg.n_max = 10;
    CHECK(cmd_entropy_finite("rose:3", false, cfg, out, err) == kExitOk);
    CHECK(out.str().find("agreement") != std::string::npos);
    CHECK(out.str().find("ok") != std::string::npos);

    std::ostringstream out2, err2;
    CHECK(cmd_entropy_finite("nonsense:7", false, cfg, out2, err2) == kExitParseError);
}

TEST_CASE("entropy cover: renewal doubling asserted") {
    std::ostringstream out, err;
    RunConfig cfg;
    cfg.n_max = 8;
    CHECK(cmd_entropy_cover("renewal:2", cfg, out, err) == kExitOk);
    CHECK(out.str().find("doubling") != std::string::npos);
    CHECK(out.str().find("exact") != std::string::npos);

    std::ostringstream out2, err2;
    cfg.depth = 1;
    cfg.n_max = 6;
    CHECK(cmd_entropy_cover("rose:3", cfg, out2, err2) == kExitOk);
}

TEST_CASE("entropy rowfinite: csv columns and determinism") {
    RunConfig cfg;
    cfg.budgets = {2, 4, 6};
    cfg.format = OutputFormat::Csv;
    std::ostringstream a, b, err;
    CHECK(cmd_entropy_rowfinite("ladder", cfg, a, err) == kExitOk);
    CHECK(cmd_entropy_rowfinite("ladder", cfg, b, err) == kExitOk);
    CHECK(a.str() == b.str()); // byte-identical across runs
    CHECK(a.str().rfind("budget,entropy_lo,entropy_hi,running_sup", 0) == 0);
}

TEST_CASE("json reports carry the schema tag") {
    RunConfig cfg;
    cfg.budgets = {2, 4};
    cfg.format = OutputFormat::Json;
    std::ostringstream out, err;
    CHECK(cmd_entropy_rowfinite("ladder", cfg, out, err) == kExitOk);
    CHECK(out.str().find("\"schema\": 1") != std::string::npos);
}

TEST_CASE("verify suites run through the command layer") {
    RunConfig cfg;
    std::ostringstream out, err;
    CHECK(cmd_verify("counterexamples", cfg, out, err) == kExitOk);
    CHECK(out.str().find("suite counterexamples: pass") != std::string::npos);

    std::ostringstream out2, err2;
    CHECK(cmd_verify("unknown-suite", cfg, out2, err2) == kExitParseError);
}
