#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "z2sim/lattice.hpp"
#include "z2sim/model.hpp"

namespace z2sim {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// %.17g: enough digits to round-trip a double through text.
std::string format_full(double v);
std::string csv_join(const std::vector<std::string>& fields);

// Run configuration, readable from JSON and overridable by command-line
// flags. At most one of {eps, steps, delta} may be given; evolution-style
// commands require exactly one.
struct RunConfig {
    int dim = 1;
    Boundary boundary = Boundary::Periodic;
    int L1 = 4;
    int L2 = 0;
    ModelParams params;
    double t = 1.0;
    std::optional<double> eps;
    std::optional<int> steps;
    std::optional<double> delta;
    std::string ordering = "gm,m,e";
    std::string scheme = "product";
    std::string initial = "vacuum";
    std::vector<std::string> frames;
    std::vector<std::string> observables;
    std::string termspec_path;

    LatticeLayout layout() const;
    int step_controls() const;  // how many of {eps, steps, delta} are set
};

// Unknown keys, wrong types, and conflicting step controls all throw
// std::invalid_argument with a message naming the offending key.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct LinePlot {
    std::string title, xlabel, ylabel;
    bool logx = false, logy = false;
    std::vector<PlotSeries> series;
};

// Self-contained SVG document with axes, tick labels and a legend.
std::string render_svg(const LinePlot& plot);

}  // namespace z2sim
