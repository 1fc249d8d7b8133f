#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "dppln/io.hpp"
#include "config.hpp"

using namespace dppln;
using namespace dppln::cli;
namespace fs = std::filesystem;

namespace {

std::string run(void (*cmd)(const DesignConfig&, std::ostream&), const DesignConfig& c) {
    std::ostringstream out;
    cmd(c, out);
    return out.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::string header_value(const std::string& text, const std::string& key) {
    const auto pos = text.find("# " + key + "=");
    if (pos == std::string::npos) return {};
    const auto start = pos + key.size() + 3;
    return text.substr(start, text.find('\n', start) - start);
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("dppln_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

struct Process {
    int code;
    std::string out;
    std::string err;
};

Process run_binary(const std::string& args, const fs::path& dir) {
    const auto out = dir / "stdout.txt";
    const auto err = dir / "stderr.txt";
    const std::string cmd = std::string(DPPLN_TOOL) + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p);
        std::stringstream s;
        s << f.rdbuf();
        return s.str();
    };
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Config, DefaultsAreTheDesignPoint) {
    const auto c = parse_config("{}");
    const auto s = c.interaction.to_spec();
    EXPECT_EQ(s.lambda_p_nm, 519.0);
    EXPECT_EQ(s.lambda_s_nm, 780.0);
    EXPECT_NEAR(s.lambda_i_nm, 1551.03, 0.01);
    EXPECT_EQ(s.temperature_c, 25.0);
    EXPECT_EQ(s.length_mm, 10.0);
    EXPECT_FALSE(c.is_sweep());
    EXPECT_EQ(*c.geometry.width_um, 10.0);
    EXPECT_EQ(*c.geometry.depth_um, 10.0);
    EXPECT_EQ(c.material.index_increments.size(), 3u);
    EXPECT_FALSE(c.solver.accept_leaky);
}

TEST(Config, RejectsBadInput) {
    EXPECT_THROW(parse_config("{"), ConfigError);
    EXPECT_THROW(parse_config(R"({"interaction": {"lamda_p_nm": 519}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"geometry": {"width_um": -1, "depth_um": 10}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"geometry": {"width_um": 10, "depth_um": 10, "sweep": {"depths_um": [1], "widths_um": [1]}}})"),
                 ConfigError);
    EXPECT_THROW(parse_config(R"({"geometry": {"sweep": {"depths_um": [], "widths_um": [1]}}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"geometry": {"sweep": {"depths_um": [1, 2], "widths_um": [1], "pairing": "zip"}}})"),
                 ConfigError);
    EXPECT_THROW(parse_config(R"({"material": {"sellmeier_file": "/nope.json"}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"spectrum": {"method": "magic"}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"interaction": {"length_mm": "ten"}})"), ConfigError);
    try {
        parse_config(R"({"interaction": {"lambda_i_nm": 1500}})");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("energy"), std::string::npos) << e.what();
    }
}

TEST(Config, SweepForms) {
    const auto grid = parse_config(
        R"({"geometry": {"sweep": {"depths_um": {"start": 6, "stop": 10, "count": 3}, "widths_um": [7, 9]}}})");
    ASSERT_TRUE(grid.is_sweep());
    const std::vector<std::pair<double, double>> expected{{6, 7}, {6, 9}, {8, 7}, {8, 9}, {10, 7}, {10, 9}};
    EXPECT_EQ(grid.geometries(), expected);
    const auto zip = parse_config(R"({"geometry": {"sweep": {"depths_um": [6.5, 8], "widths_um": [6, 8], "pairing": "zip"}}})");
    EXPECT_EQ(zip.geometries(), (std::vector<std::pair<double, double>>{{6.5, 6}, {8, 8}}));
}

TEST(Config, DumpRoundTrip) {
    const auto c = parse_config(R"({"interaction": {"temperature_c": 40, "length_mm": 20},
        "geometry": {"sweep": {"depths_um": [8, 10], "widths_um": [9]}},
        "solver": {"accept_leaky": true}, "spectrum": {"samples": 501, "method": "taylor"}})");
    const auto text = dump_config(c);
    const auto again = parse_config(text);
    EXPECT_EQ(dump_config(again), text);
    EXPECT_TRUE(again.solver.accept_leaky);
    EXPECT_EQ(again.spectrum.method, spdc::SpectrumMethod::taylor);
    EXPECT_EQ(again.geometries(), c.geometries());
}

TEST(Commands, DesignJson) {
    const auto c = parse_config("{}");
    const auto j = nlohmann::json::parse(run(run_design, c));
    EXPECT_NEAR(j["gamma"].get<double>(), 0.9957, 0.02);
    EXPECT_NEAR(j["grating"]["Lambda1_um"].get<double>(), 4.580, 0.02 * 4.580);
    EXPECT_NEAR(j["grating"]["Lambda2_um"].get<double>(), 3.653, 0.02 * 3.653);
    EXPECT_EQ(j["modes"].size(), 5u);
    EXPECT_EQ(j["units"]["period"], "um");
    EXPECT_FALSE(j["amplitudes"]["absolute_scale"].get<bool>());
}

TEST(Commands, DesignIsDeterministic) {
    const auto c = parse_config("{}");
    EXPECT_EQ(run(run_design, c), run(run_design, c));
}

TEST(Commands, SweepTableRowsAndOrder) {
    const auto c = parse_config(R"({"geometry": {"sweep": {"depths_um": [6.5, 8, 10, 12], "widths_um": [6, 8, 10, 12],
        "pairing": "zip"}}, "solver": {"accept_leaky": true}})");
    const auto text = run(run_sweep, c);
    const auto rows = csv_rows(text);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"depth_um", "width_um", "gamma", "Lambda1_um", "Lambda2_um", "status"}));
    const double reference[] = {0.9294, 0.9884, 0.9957, 0.9982};
    for (int i = 0; i < 4; ++i) {
        ASSERT_EQ(rows[i + 1].size(), 6u);
        EXPECT_NEAR(std::stod(rows[i + 1][2]), reference[i], 0.02);
    }
    EXPECT_EQ(rows[1][0], "6.5");
    EXPECT_EQ(rows[1][5], "ok_leaky");
    EXPECT_EQ(rows[3][5], "ok");
    EXPECT_EQ(run(run_sweep, c), text);
}

TEST(Commands, SweepMarksUnguidedRows) {
    const auto c = parse_config(R"({"geometry": {"sweep": {"depths_um": [0.5, 10], "widths_um": [10]}}})");
    const auto rows = csv_rows(run(run_sweep, c));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1], (std::vector<std::string>{"0.5", "10", "", "", "", "no_guided_mode"}));
    EXPECT_EQ(rows[2][5], "ok");
}

TEST(Commands, SweepGammaNonDecreasingWithDepth) {
    const auto c = parse_config(R"({"geometry": {"sweep": {"depths_um": {"start": 7, "stop": 12, "count": 6},
        "widths_um": [10]}}})");
    const auto rows = csv_rows(run(run_sweep, c));
    double prev = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i][5], "ok");
        const double g = std::stod(rows[i][2]);
        EXPECT_GE(g, prev) << rows[i][0];
        prev = g;
    }
}

TEST(Commands, SinglePointSweepMatchesDesign) {
    const auto sweep = parse_config(R"({"geometry": {"sweep": {"depths_um": [10], "widths_um": [10]}}})");
    const auto rows = csv_rows(run(run_sweep, sweep));
    ASSERT_EQ(rows.size(), 2u);
    const auto j = nlohmann::json::parse(run(run_design, parse_config("{}")));
    EXPECT_EQ(rows[1][2], io::format_sig(j["gamma"].get<double>()));
    EXPECT_EQ(rows[1][3], io::format_sig(j["grating"]["Lambda1_um"].get<double>()));
    EXPECT_EQ(rows[1][4], io::format_sig(j["grating"]["Lambda2_um"].get<double>()));
}

TEST(Commands, SpectrumHeaderAndCurves) {
    const auto c = parse_config("{}");
    const auto text = run(run_spectrum, c);
    const double oe = std::stod(header_value(text, "fwhm_oe_nm"));
    const double eo = std::stod(header_value(text, "fwhm_eo_nm"));
    EXPECT_NEAR(oe, 0.29, 0.25 * 0.29);
    EXPECT_NEAR(eo, 6.35, 0.25 * 6.35);
    EXPECT_EQ(header_value(text, "method"), "exact");
    const auto rows = csv_rows(text);
    ASSERT_EQ(rows.size(), 2002u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"lambda_s_nm", "intensity_oe", "intensity_eo"}));
    EXPECT_EQ(rows[1001][0], "780");
    EXPECT_EQ(rows[1001][1], "1");
    EXPECT_EQ(rows[1001][2], "1");
}

TEST(Commands, GratingFourierCheck) {
    const auto j = nlohmann::json::parse(run(run_grating, parse_config("{}")));
    EXPECT_NEAR(j["abs_c_K1"].get<double>(), 0.4053, 1e-3);
    EXPECT_NEAR(j["abs_c_K2"].get<double>(), 0.4053, 1e-3);
    EXPECT_NEAR(j["Lambda0_um"].get<double>(), 4.064, 0.02 * 4.064);
    EXPECT_NEAR(j["Lambdap_um"].get<double>(), 36.1, 0.05 * 36.1);
    EXPECT_LE(j["check_length_um"].get<double>(), 10000.0);
}

TEST(Commands, FilesWrittenToOutputDirectory) {
    TempDir dir;
    auto c = parse_config("{}");
    c.output_directory = dir.path() / "run";
    const auto stdout_text = run(run_grating, c);
    std::ifstream pattern(*c.output_directory / "pattern.csv");
    ASSERT_TRUE(pattern.good());
    std::string first;
    std::getline(pattern, first);
    EXPECT_EQ(first.rfind("# Lambda0_um=", 0), 0u);
    std::stringstream fourier;
    fourier << std::ifstream(*c.output_directory / "fourier.json").rdbuf();
    EXPECT_EQ(fourier.str(), stdout_text);

    const auto rows = csv_rows([&] {
        std::stringstream s;
        s << std::ifstream(*c.output_directory / "pattern.csv").rdbuf();
        return s.str();
    }());
    double prev = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double x = std::stod(rows[i][1]);
        EXPECT_GT(x, prev);
        prev = x;
    }
    run(run_design, c);
    EXPECT_TRUE(fs::exists(*c.output_directory / "design.json"));
    EXPECT_TRUE(fs::exists(*c.output_directory / "field_idler_e.csv"));
}

TEST(Guarded, MapsErrorsToExitCodes) {
    std::ostringstream err;
    EXPECT_EQ(guarded(err, [] {}), 0);
    EXPECT_EQ(guarded(err, [] { throw ConfigError("x"); }), 1);
    EXPECT_EQ(guarded(err, [] { throw NoGuidedMode(780.0, "o", "y"); }), 2);
    EXPECT_EQ(guarded(err, [] { throw DegenerateModulation("z"); }), 2);
}

TEST(Binary, ExitCodesAndMessages) {
    TempDir dir;
    const auto ok = run_binary("design", dir.path());
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_NE(ok.out.find("\"gamma\""), std::string::npos);

    write(dir.path() / "zero.json", R"({"material": {"index_increments": [
        {"wavelength_nm": 519, "dn_o": 0, "dn_e": 0}, {"wavelength_nm": 780, "dn_o": 0, "dn_e": 0},
        {"wavelength_nm": 1550, "dn_o": 0, "dn_e": 0}]}})");
    const auto zero = run_binary("design --config " + (dir.path() / "zero.json").string(), dir.path());
    EXPECT_EQ(zero.code, 2);
    EXPECT_NE(zero.err.find("NoGuidedMode at 519 nm (ordinary)"), std::string::npos) << zero.err;

    write(dir.path() / "energy.json", R"({"interaction": {"lambda_i_nm": 1600}})");
    const auto energy = run_binary("design --config " + (dir.path() / "energy.json").string(), dir.path());
    EXPECT_EQ(energy.code, 1);
    EXPECT_NE(energy.err.find("energy"), std::string::npos) << energy.err;

    EXPECT_EQ(run_binary("design --config " + (dir.path() / "missing.json").string(), dir.path()).code, 1);
    EXPECT_NE(run_binary("frobnicate", dir.path()).code, 0);
}

TEST(Binary, OverridesAndDumpRoundTrip) {
    TempDir dir;
    const auto dumped = run_binary("spectrum --temperature 40 --length-mm 20 --dump-config", dir.path());
    ASSERT_EQ(dumped.code, 0) << dumped.err;
    const auto j = nlohmann::json::parse(dumped.out);
    EXPECT_EQ(j["interaction"]["temperature_c"].get<double>(), 40.0);
    EXPECT_EQ(j["interaction"]["length_mm"].get<double>(), 20.0);
    write(dir.path() / "dumped.json", dumped.out);

    const auto direct = run_binary("grating --temperature 40 --length-mm 20", dir.path());
    const auto replay = run_binary("grating --config " + (dir.path() / "dumped.json").string(), dir.path());
    ASSERT_EQ(direct.code, 0) << direct.err;
    EXPECT_EQ(direct.out, replay.out);

    const auto a = run_binary("design --out " + (dir.path() / "a").string(), dir.path());
    const auto b = run_binary("design --out " + (dir.path() / "b").string(), dir.path());
    ASSERT_EQ(a.code, 0);
    std::stringstream fa, fb;
    fa << std::ifstream(dir.path() / "a" / "field_signal_o.csv").rdbuf();
    fb << std::ifstream(dir.path() / "b" / "field_signal_o.csv").rdbuf();
    EXPECT_FALSE(fa.str().empty());
    EXPECT_EQ(fa.str(), fb.str());
}
