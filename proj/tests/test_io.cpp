#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "z2sim/io.hpp"

using namespace z2sim;

TEST_CASE("numbers round-trip through text at full precision") {
    for (double v : {1.0 / 3.0, -2.718281828459045e-9, 6.02214076e23, 0.1}) {
        CHECK(std::stod(format_full(v)) == v);
    }
    CHECK(csv_join({"a", "b", "c"}) == "a,b,c\n");
    CHECK(csv_join({}) == "\n");
}

TEST_CASE("config parsing: defaults, overrides, and rejections") {
    const RunConfig d = parse_config("{}");
    CHECK(d.dim == 1);
    CHECK(d.boundary == Boundary::Periodic);
    CHECK(d.L1 == 4);
    CHECK(d.params.h == 1.0);
    CHECK(d.t == 1.0);
    CHECK(d.step_controls() == 0);
    CHECK(d.ordering == "gm,m,e");

    const RunConfig c = parse_config(R"({
        "dim": 2, "L1": 2, "L2": 2, "h": 0.5, "J": 2.0, "m": 0.25, "b": 0.75,
        "t": 3.0, "steps": 64, "ordering": "e,m,gm", "scheme": "hybrid",
        "frames": ["hardcore", "hat"], "observables": ["link_z_1"]
    })");
    CHECK(c.dim == 2);
    CHECK(c.params.b == 0.75);
    CHECK(c.steps.value() == 64);
    CHECK(c.step_controls() == 1);
    CHECK(c.frames == std::vector<std::string>{"hardcore", "hat"});
    CHECK(c.layout().n_qubits() == 12);

    // "L" is an accepted alias for the chain length.
    CHECK(parse_config(R"({"L": 6})").L1 == 6);

    CHECK_THROWS_WITH_AS(parse_config(R"({"hh": 1})"), doctest::Contains("hh"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"h": "big"})"), doctest::Contains("h"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"eps": 0.1, "steps": 4})"),
                         doctest::Contains("exclusive"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"eps": 0.1, "delta": 0.01})"),
                         doctest::Contains("exclusive"), std::invalid_argument);
    CHECK_THROWS(parse_config("[1,2]"));
    CHECK_THROWS(parse_config("not json"));

    RunConfig bad;
    bad.dim = 3;
    CHECK_THROWS(bad.layout());
}

TEST_CASE("text files round-trip and report failures") {
    const std::string path = std::filesystem::temp_directory_path() / "z2sim_io_test.txt";
    const std::string body = "line one\nline two\n";
    write_text_file(path, body);
    CHECK(read_text_file(path) == body);
    std::remove(path.c_str());
    CHECK_THROWS(read_text_file(path));
    CHECK_THROWS(write_text_file("/nonexistent-dir/x/y.txt", "z"));
}

TEST_CASE("svg rendering produces a plausible document") {
    LinePlot p;
    p.title = "error < bound";
    p.xlabel = "steps";
    p.ylabel = "delta";
    p.logx = p.logy = true;
    p.series.push_back({"measured", {{32, 0.1}, {64, 0.05}, {128, 0.025}}});
    p.series.push_back({"bound", {{32, 0.3}, {64, 0.15}, {128, 0.075}}});
    const std::string svg = render_svg(p);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("measured") != std::string::npos);
    CHECK(svg.find("error &lt; bound") != std::string::npos);  // escaped title
    CHECK(svg.find("nan") == std::string::npos);

    // Degenerate input still renders (no NaNs from an empty range).
    LinePlot empty;
    empty.title = "empty";
    const std::string s2 = render_svg(empty);
    CHECK(s2.find("nan") == std::string::npos);
    CHECK(s2.find("</svg>") != std::string::npos);
}
