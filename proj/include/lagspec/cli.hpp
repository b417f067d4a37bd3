#pragma once

#include "lagspec/barcode.hpp"
#include "lagspec/coisotropy.hpp"
#include "lagspec/curve.hpp"
#include "lagspec/floer.hpp"
#include "lagspec/peano.hpp"
#include "lagspec/support_probe.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace lagspec {

using Json = nlohmann::ordered_json;

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// `where` prefixes diagnostics, e.g. "curve.json"
Rational rational_from_json(const Json& j, const std::string& where);
Json rational_to_json(const Rational& r);
void require_schema(const Json& j, const std::string& where);

Json curve_to_json(const PLCurve& l);
PLCurve curve_from_json(const Json& j, const std::string& where);
Json function_to_json(const PLFunction& f);
PLFunction function_from_json(const Json& j, const std::string& where);
Json barcode_to_json(const Barcode& b);
Barcode barcode_from_json(const Json& j, const std::string& where);
Json plset_to_json(const PLSet& V);
PLSet plset_from_json(const Json& j, const std::string& where);
Json point_to_json(const Point& z);
Json rvec_to_json(const RVec& v);
Json certificate_to_json(const Certificate& c);
Json probe_report_to_json(const ProbeReport& r);
Json verdict_to_json(const RVec& x, const CoisotropyVerdict& v);

struct SvgCurve {
    PLCurve curve;
    std::string colour;
    std::string label;
};

struct SvgScene {
    Rational q0, q1, p0, p1;  // window in model coordinates
    std::vector<SvgCurve> curves;
    std::vector<std::vector<Point>> shaded;  // filled polygons
    std::vector<SupBox> boxes;
    std::vector<Point> marks;
    std::string title;
};

std::string svg_scene(const SvgScene& scene);
std::string svg_barcode(const Barcode& b, const std::string& title);
std::string svg_heatmap(const Grid& grid, const std::vector<SupportPoint>& points, const Rational& eps,
                        const PLCurve& curve, const std::string& title);

using Rng = std::mt19937_64;

Rational random_rational(Rng& rng, long lo, long hi, long denominator);
FilteredComplex random_complex(Rng& rng, std::size_t max_generators);
PLFunction random_pl_function(Rng& rng, const Rational& period, std::size_t max_knots);
// Graph or tongue curve on the base annulus of period 4; never the zero section.
PLCurve random_curve(Rng& rng);
// Image of l under the fibrewise translation by dg: primitive f_l + g.
PLCurve fiberwise_sum(const PLCurve& l, const PLFunction& g);

struct ExperimentConfig {
    std::string kind;
    std::map<std::string, std::string> inputs;
    Json parameters = Json::object();
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    bool verify_only = false;
};

struct CheckResult {
    std::string name;
    std::string claim;
    Json value;  // exact rational string, integer or boolean
    Json bound;
    bool pass = false;
};

struct RunReport {
    Json config;
    std::vector<CheckResult> checks;
    Json results = Json::object();
    std::map<std::string, double> timings;
    std::vector<std::string> artifacts;  // relative to the output directory
    std::map<std::string, std::string> files;  // artifact name -> contents

    bool pass() const;
    Json to_json() const;
};

ExperimentConfig config_from_json(const Json& j, const std::string& where);
Json config_to_json(const ExperimentConfig& c);

RunReport run_pair_metrics(const ExperimentConfig& c);
RunReport run_peano(const ExperimentConfig& c);
RunReport run_support_sweep(const ExperimentConfig& c);
RunReport run_coisotropy_check(const ExperimentConfig& c);
RunReport run_property_suite(const ExperimentConfig& c);
RunReport run(const ExperimentConfig& c);

// Writes report.json, timings.json and artifacts, or with verify_only compares
// against the stored report.  Returns the process exit code.
int execute(const ExperimentConfig& c, std::ostream& log);

}  // namespace lagspec
