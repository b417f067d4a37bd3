#include "doctest.h"

#include "lagspec/cli.hpp"
#include "lagspec/errors.hpp"
#include "../oracles.hpp"

#include <filesystem>
#include <sstream>

using namespace lagspec;

namespace {

const std::string configs = std::string(LAGSPEC_SOURCE_DIR) + "/configs/";

}  // namespace

TEST_CASE("rationals round-trip through JSON") {
    for (const Rational& r : {Rational(0), Rational(-7, 3), Rational(1, 1024), Rational(5)}) {
        CHECK(rational_from_json(rational_to_json(r), "t") == r);
    }
    CHECK(rational_from_json(Json("6/4"), "t") == Rational(3, 2));
    CHECK(rational_from_json(Json(3), "t") == 3);
    CHECK_THROWS_AS(rational_from_json(Json("1/0"), "t"), InputError);
    CHECK_THROWS_AS(rational_from_json(Json("abc"), "t"), InputError);
    CHECK_THROWS_AS(rational_from_json(Json(0.5), "t"), InputError);
}

TEST_CASE("curves, functions, barcodes and sets round-trip") {
    Rng rng(4);
    for (int i = 0; i < 10; ++i) {
        PLCurve l = random_curve(rng);
        PLCurve back = curve_from_json(curve_to_json(l), "t");
        CHECK(back.vertices() == l.vertices());
        CHECK(back.period() == l.period());
        CHECK(back.brane_constant() == l.brane_constant());
        PLFunction f = random_pl_function(rng, 2, 6);
        PLFunction g = function_from_json(function_to_json(f), "t");
        CHECK(g.knots == f.knots);
        CHECK(g.values == f.values);
        Barcode b = decompose(random_complex(rng, 8));
        CHECK(barcode_from_json(barcode_to_json(b), "t") == b);
    }
    PLSet V{2, CoordinateSplit::interleaved, {{{0, 0, 0, 0}, {1, 0, Rational(1, 2), 0}}}};
    PLSet W = plset_from_json(plset_to_json(V), "t");
    CHECK(W.n == 2);
    CHECK(W.split == CoordinateSplit::interleaved);
    CHECK(W.cells == V.cells);
}

TEST_CASE("malformed inputs are input errors") {
    Json cfg = Json::parse(R"({"kind": "pair-metrics"})");
    CHECK_THROWS_AS(config_from_json(cfg, "c"), InputError);
    cfg["schema"] = "v2";
    CHECK_THROWS_AS(config_from_json(cfg, "c"), InputError);
    cfg["schema"] = "v1";
    cfg["seed"] = -3;
    CHECK_THROWS_AS(config_from_json(cfg, "c"), InputError);
    Json curve = curve_to_json(zero_section(1));
    curve["vertices"].push_back(curve["vertices"][0]);
    CHECK_THROWS(curve_from_json(curve, "c"));
    CHECK_THROWS_AS(load_json_file(configs + "does-not-exist.json"), InputError);
}

TEST_CASE("config inputs resolve against the config directory") {
    ExperimentConfig c = config_from_json(load_json_file(configs + "pair_graphs.json"), configs + "pair_graphs.json");
    CHECK(c.kind == "pair-metrics");
    CHECK(std::filesystem::exists(c.inputs.at("function_1")));
    Json written = config_to_json(c);
    CHECK(written["inputs"]["function_1"] == "f1.json");
    ExperimentConfig again = config_from_json(written, configs + "data/pair_graphs.json");
    CHECK(again.inputs == c.inputs);
    CHECK(again.parameters == c.parameters);
    CHECK(again.seed == c.seed);
}

TEST_CASE("pair metrics on two graphs") {
    const std::string path = configs + "pair_graphs.json";
    ExperimentConfig c = config_from_json(load_json_file(path), path);
    RunReport r = run_pair_metrics(c);
    CHECK(r.pass());
    PLFunction f1 = function_from_json(load_json_file(c.inputs.at("function_1")), "f1");
    PLFunction f2 = function_from_json(load_json_file(c.inputs.at("function_2")), "f2");
    CHECK(rational_from_json(r.results["gamma"], "gamma") == oracle::osc_difference(f1, f2));
    Json out = r.to_json();
    CHECK(out["schema"] == "v1");
    REQUIRE(r.files.count("pair.svg"));
    CHECK(r.files.at("pair.svg").rfind("<svg", 0) == 0);
    RunReport again = run_pair_metrics(c);
    CHECK(again.files == r.files);
    CHECK(again.results == r.results);
}

TEST_CASE("execute writes and then verifies a report") {
    const std::string path = configs + "pair_graphs.json";
    ExperimentConfig c = config_from_json(load_json_file(path), path);
    auto dir = std::filesystem::temp_directory_path() / "lagspec_cli_test";
    std::filesystem::remove_all(dir);
    c.out_dir = dir.string();
    std::ostringstream log;
    CHECK(execute(c, log) == 0);
    CHECK(std::filesystem::exists(dir / "report.json"));
    CHECK(std::filesystem::exists(dir / "timings.json"));
    c.verify_only = true;
    CHECK(execute(c, log) == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("svg output is deterministic") {
    Barcode b{{{ExtRational(0), ExtRational::pos_infinity(), 0}, {ExtRational(Rational(1, 4)), ExtRational(1), 1}}};
    CHECK(svg_barcode(b, "x") == svg_barcode(b, "x"));
    CHECK(svg_barcode(b, "x").find("</svg>") != std::string::npos);
}
