#include "z2sim/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace z2sim {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("short write to " + path);
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string row;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) row += ',';
        row += fields[i];
    }
    row += '\n';
    return row;
}

LatticeLayout RunConfig::layout() const {
    if (dim == 1) return LatticeLayout::chain(L1, boundary);
    if (dim == 2) return LatticeLayout::torus(L1, L2);
    throw std::invalid_argument("config: dim must be 1 or 2");
}

int RunConfig::step_controls() const {
    return int(eps.has_value()) + int(steps.has_value()) + int(delta.has_value());
}

RunConfig parse_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

    RunConfig cfg;
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "dim") cfg.dim = val.get<int>();
            else if (key == "boundary") {
                const auto s = val.get<std::string>();
                if (s == "periodic") cfg.boundary = Boundary::Periodic;
                else if (s == "open") cfg.boundary = Boundary::Open;
                else throw std::invalid_argument("config: boundary must be periodic or open");
            } else if (key == "L1" || key == "L") cfg.L1 = val.get<int>();
            else if (key == "L2") cfg.L2 = val.get<int>();
            else if (key == "h") cfg.params.h = val.get<double>();
            else if (key == "J") cfg.params.J = val.get<double>();
            else if (key == "m") cfg.params.m = val.get<double>();
            else if (key == "b") cfg.params.b = val.get<double>();
            else if (key == "t") cfg.t = val.get<double>();
            else if (key == "eps") cfg.eps = val.get<double>();
            else if (key == "steps") cfg.steps = val.get<int>();
            else if (key == "delta") cfg.delta = val.get<double>();
            else if (key == "ordering") cfg.ordering = val.get<std::string>();
            else if (key == "scheme") cfg.scheme = val.get<std::string>();
            else if (key == "initial") cfg.initial = val.get<std::string>();
            else if (key == "frames") cfg.frames = val.get<std::vector<std::string>>();
            else if (key == "observables") cfg.observables = val.get<std::vector<std::string>>();
            else if (key == "termspec") cfg.termspec_path = val.get<std::string>();
            else throw std::invalid_argument("config: unknown key \"" + key + "\"");
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("config: key \"" + key + "\": " + e.what());
        }
    }
    if (cfg.step_controls() > 1)
        throw std::invalid_argument("config: eps, steps and delta are mutually exclusive");
    return cfg;
}

RunConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

namespace {

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string render_svg(const LinePlot& plot) {
    const double W = 640, H = 420, ml = 72, mr = 24, mt = 44, mb = 52;
    const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    auto usable = [&](double v, bool logscale) { return !logscale || v > 0.0; };
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool any = false;
    for (const auto& s : plot.series)
        for (const auto& [x, y] : s.points) {
            if (!usable(x, plot.logx) || !usable(y, plot.logy)) continue;
            const double px = plot.logx ? std::log10(x) : x;
            const double py = plot.logy ? std::log10(y) : y;
            if (!any) { xmin = xmax = px; ymin = ymax = py; any = true; }
            xmin = std::min(xmin, px); xmax = std::max(xmax, px);
            ymin = std::min(ymin, py); ymax = std::max(ymax, py);
        }
    if (!any) { xmin = ymin = 0; xmax = ymax = 1; }
    if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }

    auto sx = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto sy = [&](double v) { return H - mb - (v - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\" font-family=\"sans-serif\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << esc(plot.title) << "</text>\n";

    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / nticks;
        const double fy = ymin + (ymax - ymin) * i / nticks;
        const double px = sx(fx), py = sy(fy);
        svg << "<line x1=\"" << num(px) << "\" y1=\"" << num(mt) << "\" x2=\"" << num(px)
            << "\" y2=\"" << num(H - mb) << "\" stroke=\"#e0e0e0\"/>\n"
            << "<line x1=\"" << num(ml) << "\" y1=\"" << num(py) << "\" x2=\"" << num(W - mr)
            << "\" y2=\"" << num(py) << "\" stroke=\"#e0e0e0\"/>\n"
            << "<text x=\"" << num(px) << "\" y=\"" << num(H - mb + 18)
            << "\" text-anchor=\"middle\" font-size=\"11\">"
            << num(plot.logx ? std::pow(10.0, fx) : fx) << "</text>\n"
            << "<text x=\"" << num(ml - 8) << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">"
            << num(plot.logy ? std::pow(10.0, fy) : fy) << "</text>\n";
    }
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
        << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"" << H - 14 << "\" text-anchor=\"middle\" font-size=\"13\">"
        << esc(plot.xlabel) << "</text>\n"
        << "<text x=\"18\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << H / 2 << ")\">" << esc(plot.ylabel) << "</text>\n";

    for (size_t si = 0; si < plot.series.size(); ++si) {
        const auto& s = plot.series[si];
        const char* color = palette[si % 6];
        std::ostringstream pts;
        for (const auto& [x, y] : s.points) {
            if (!usable(x, plot.logx) || !usable(y, plot.logy)) continue;
            const double px = sx(plot.logx ? std::log10(x) : x);
            const double py = sy(plot.logy ? std::log10(y) : y);
            pts << num(px) << "," << num(py) << " ";
            svg << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"2.5\" fill=\""
                << color << "\"/>\n";
        }
        svg << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        const double lx = W - mr - 150, ly = mt + 16 + 16 * double(si);
        svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 22)
            << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(ly) << "\" font-size=\"12\">"
            << esc(s.name) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace z2sim
