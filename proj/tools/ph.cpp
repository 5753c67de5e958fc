// ph: distributed alpha-complex persistent homology of a 2D point file.
//
//   ph compute --input pts.txt --grid 2x2 [--density 1000] [--compare] [--plot out.svg] ...
//   ph oracle  --input pts.txt
//
// Exit status: 0 ok, 1 error or comparison mismatch, 2 collapse check failure.

#include "mvph/io.hpp"
#include "mvph/runtime.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>

namespace {

using namespace mvph;

struct Options {
    std::string input;
    std::string output_dir = ".";
    std::string grid = "1x1";
    int density = 1000;
    bool compare = false;
    double tolerance = 1e-8;
    std::string plot;
    std::string localized;
    std::optional<std::uint64_t> seed;
    bool timings = false;
    bool sequential = false;
};

std::pair<int, int> parse_grid(const std::string& s) {
    std::smatch m;
    static const std::regex re(R"((\d+)x(\d+))");
    if (!std::regex_match(s, m, re)) throw std::invalid_argument("--grid expects M1xM2, got '" + s + "'");
    int m1 = std::stoi(m[1]), m2 = std::stoi(m[2]);
    if (m1 < 1 || m2 < 1) throw std::invalid_argument("--grid dimensions must be positive");
    return {m1, m2};
}

std::vector<IndexedPoint> load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return read_points(in);
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_outputs(const Options& o, const Barcode& barcode) {
    std::filesystem::create_directories(o.output_dir);
    for (int d = 0; d < 2; ++d) {
        std::ostringstream os;
        write_bars(os, barcode, d);
        write_file(std::filesystem::path(o.output_dir) / ("dim" + std::to_string(d) + ".txt"), os.str());
    }
    if (!o.plot.empty()) write_file(o.plot, barcode_svg(barcode));
}

void print_terms(std::ostream& os, const char* name, const std::vector<Interval>& bars) {
    os << name << ':';
    for (const Interval& iv : bars) os << " [" << format_value(iv.birth) << ", " << format_value(iv.death) << ')';
    os << '\n';
}

int compute(const Options& o) {
    auto [m1, m2] = parse_grid(o.grid);
    auto points = load(o.input);
    RunOptions ro;
    ro.fuzz_seed = o.seed;
    ro.parallel = !o.sequential;
    RunResult r;
    try {
        r = run(points, m1, m2, o.density, ro);
    } catch (const CollapseAbort& e) {
        std::cerr << "ph: " << e.what() << '\n';
        print_terms(std::cerr, "E2_{0,0}", e.e2_00);
        print_terms(std::cerr, "E2_{1,0}", e.e2_10);
        print_terms(std::cerr, "E2_{0,1}", e.e2_01);
        print_terms(std::cerr, "E2_{1,1}", e.e2_11);
        return 2;
    }
    write_outputs(o, r.barcode);
    if (!o.localized.empty()) {
        std::ostringstream os;
        write_localized(os, r.localized);
        write_file(o.localized, os.str());
    }
    if (o.timings) {
        for (const PhaseTiming& t : r.timings) std::cout << "timing " << t.name << ' ' << t.seconds << '\n';
        std::cout << "messages " << r.stats.messages << "\nexpansion_rounds " << r.stats.expansion_rounds << '\n';
    }
    if (o.compare) {
        Comparison c = mvph::compare(r.barcode, sequential_persistence(points), o.tolerance);
        std::cout << c.describe() << '\n';
        if (!c.match) return 1;
    }
    return 0;
}

int oracle(const Options& o) {
    write_outputs(o, sequential_persistence(load(o.input)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistent homology of 2D alpha complexes over a grid cover"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--input", o.input, "point file")->required();
        sub->add_option("--output-dir,-o", o.output_dir, "directory for dim0.txt and dim1.txt")->capture_default_str();
        sub->add_option("--plot", o.plot, "write an SVG barcode plot");
    };
    CLI::App* comp = app.add_subcommand("compute", "distributed computation");
    common(comp);
    comp->add_option("--grid", o.grid, "cover grid M1xM2")->capture_default_str();
    comp->add_option("--density", o.density, "target average points per grid cell")->capture_default_str()->check(CLI::PositiveNumber);
    comp->add_flag("--compare", o.compare, "compare with the sequential oracle");
    comp->add_option("--tolerance", o.tolerance, "comparison tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);
    comp->add_option("--localized", o.localized, "write the cover origin of every bar");
    comp->add_option("--seed", o.seed, "shuffle message delivery (testing)");
    comp->add_flag("--timings", o.timings, "print phase timings");
    comp->add_flag("--sequential", o.sequential, "run workers one after another");
    CLI::App* orc = app.add_subcommand("oracle", "sequential computation only");
    common(orc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    try {
        return comp->parsed() ? compute(o) : oracle(o);
    } catch (const std::exception& e) {
        std::cerr << "ph: " << e.what() << '\n';
        return 1;
    }
}
