#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "scalevar/cli.hpp"
#include "scalevar/report_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ScratchDir {
    fs::path path;

    ScratchDir() : path(fs::temp_directory_path() / ("scalevar_cli_" + std::to_string(std::random_device{}()))) {
        fs::create_directories(path);
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

fs::path scratch() {
    static const ScratchDir dir;
    return dir.path;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Result {
    int code;
    std::string err;
};

Result run(const fs::path& config, std::vector<std::string> overrides = {}) {
    std::ostringstream out, err;
    const int code = scalevar::cli::run(config, overrides, out, err);
    return {code, err.str()};
}

fs::path bundled(const char* name) { return fs::path(SCALEVAR_CONFIG_DIR) / name; }

std::string out_prefix(const std::string& name) { return "output=" + (scratch() / name).string(); }

json summary(const std::string& name) { return json::parse(slurp(scratch() / (name + ".summary.json"))); }

fs::path write_config(const std::string& name, const json& j) {
    const fs::path p = scratch() / (name + ".json");
    std::ofstream(p) << j.dump();
    return p;
}

} // namespace

TEST_CASE("noether free particle config") {
    REQUIRE(run(bundled("noether_free_particle.json"), {out_prefix("free")}).code == 0);
    const json s = summary("free");
    CHECK(s["command"] == "noether");
    CHECK(s["drift"].get<double>() < 1e-12);
    CHECK(s["mean_re"].get<double>() == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("schrodinger gaussian config") {
    REQUIRE(run(bundled("schrodinger_gaussian.json"), {out_prefix("gauss")}).code == 0);
    const json s = summary("gauss");
    CHECK(s["drift_thm"].get<double>() < 1e-4);
    CHECK(s["drift_printed"].get<double>() > 0.5);
    CHECK(s["energy_forms_agree"] == false);
    CHECK(s["residual_max_abs"].get<double>() < 1e-12);
}

TEST_CASE("schema violations name the field") {
    const fs::path cfg = bundled("noether_free_particle.json");
    const Result bad_mu = run(cfg, {"scale.mu=2", out_prefix("x")});
    CHECK(bad_mu.code == 2);
    CHECK(bad_mu.err.find("scale.mu") != std::string::npos);

    json j = json::parse(slurp(cfg));
    j["grid"].erase("n");
    const Result missing = run(write_config("missing", j));
    CHECK(missing.code == 2);
    CHECK(missing.err.find("grid.n") != std::string::npos);

    const Result parse_error = run(cfg, {"problem.L=0.5*v1^^2", out_prefix("x")});
    CHECK(parse_error.code == 2);
    CHECK(parse_error.err.find("problem.L") != std::string::npos);
    CHECK(parse_error.err.find("column 8") != std::string::npos);

    CHECK(run(cfg, {"scale.epsilon=0.0015", out_prefix("x")}).err.find("scale.epsilon") != std::string::npos);
    CHECK(run(cfg, {"grid.pad=0", out_prefix("x")}).err.find("grid.pad") != std::string::npos);
    CHECK(run(cfg, {"command=solve", out_prefix("x")}).err.find("command") != std::string::npos);
    CHECK(run(cfg, {"problem.xi=[\"0\", \"1\"]", out_prefix("x")}).err.find("problem.xi") != std::string::npos);
    CHECK(run(cfg, {"problem.params={\"k\": \"two\"}", out_prefix("x")}).err.find("problem.params.k") !=
          std::string::npos);
    CHECK(run(cfg, {"nonsense", out_prefix("x")}).code == 2);
}

TEST_CASE("numerical and io failures") {
    const fs::path cfg = bundled("noether_free_particle.json");
    CHECK(run(cfg, {"problem.L=1/(q1 - t)", out_prefix("x")}).code == 3);
    CHECK(run(cfg, {"problem.path=ln(t - t)", out_prefix("x")}).code == 3);
    CHECK(run(scratch() / "does_not_exist.json").code == 1);
    std::ofstream(scratch() / "broken.json") << "{ not json";
    CHECK(run(scratch() / "broken.json").code == 2);
}

TEST_CASE("csv format") {
    REQUIRE(run(bundled("invariance_rotation.json"), {out_prefix("rot")}).code == 0);
    REQUIRE(run(bundled("check_el_oscillator.json"), {out_prefix("el")}).code == 0);
    const std::string csv = slurp(scratch() / "el.csv");
    CHECK(csv.find('\r') == std::string::npos);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t,re_1,im_1");
    double last_t = -1e300;
    int rows = 0;
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string cell;
        bool first = true;
        while (std::getline(cells, cell, ',')) {
            const double x = std::stod(cell);
            CHECK(scalevar::format_number(x) == cell);
            if (first) {
                CHECK(x > last_t);
                last_t = x;
                first = false;
            }
        }
        ++rows;
    }
    CHECK(rows == summary("el")["nodes"].get<int>());
    CHECK(slurp(scratch() / "rot.csv").rfind("t,c_re,c_im\n", 0) == 0);
}

TEST_CASE("summary never contains null") {
    for (const char* name : {"deriv_sine", "functional_oscillator", "holder_weierstrass", "check_dbr_oscillator"}) {
        REQUIRE(run(bundled((std::string(name) + ".json").c_str()), {out_prefix(name)}).code == 0);
        const std::string text = slurp(scratch() / (std::string(name) + ".summary.json"));
        CHECK(text.find("null") == std::string::npos);
    }
    const json d = summary("deriv_sine");
    CHECK(d["quantum_derivative"][0]["limit_re"].get<double>() == doctest::Approx(std::cos(0.5)).epsilon(1e-8));
    CHECK(d["quantum_derivative"][0]["converged"] == true);
}

TEST_CASE("identical configs give byte-identical output") {
    for (const auto& entry : fs::directory_iterator(SCALEVAR_CONFIG_DIR)) {
        const std::string stem = entry.path().stem().string();
        REQUIRE(run(entry.path(), {out_prefix(stem + "_a")}).code == 0);
        REQUIRE(run(entry.path(), {out_prefix(stem + "_b")}).code == 0);
        INFO(stem);
        CHECK(slurp(scratch() / (stem + "_a.csv")) == slurp(scratch() / (stem + "_b.csv")));
    }
}

TEST_CASE("thread count does not change the output") {
    const fs::path cfg = bundled("schrodinger_plane_wave.json");
    ::setenv("SCALEVAR_THREADS", "1", 1);
    REQUIRE(run(cfg, {out_prefix("serial")}).code == 0);
    ::setenv("SCALEVAR_THREADS", "8", 1);
    REQUIRE(run(cfg, {out_prefix("parallel"), "grid.n=4000"}).code == 0);
    REQUIRE(run(cfg, {out_prefix("parallel_ref"), "grid.n=4000"}).code == 0);
    ::unsetenv("SCALEVAR_THREADS");
    REQUIRE(run(cfg, {out_prefix("default")}).code == 0);
    CHECK(slurp(scratch() / "serial.csv") == slurp(scratch() / "default.csv"));
    ::setenv("SCALEVAR_THREADS", "1", 1);
    REQUIRE(run(cfg, {out_prefix("serial_big"), "grid.n=4000"}).code == 0);
    ::unsetenv("SCALEVAR_THREADS");
    CHECK(slurp(scratch() / "serial_big.csv") == slurp(scratch() / "parallel.csv"));
}

TEST_CASE("overrides keep string fields as strings") {
    const fs::path cfg = bundled("noether_free_particle.json");
    REQUIRE(run(cfg, {"scale.mu=1", "scale.epsilon=0.002", "grid.pad=0.02", out_prefix("ov")}).code == 0);
    const json s = summary("ov");
    CHECK(s["mu"] == "1");
    CHECK(s["epsilon"].get<double>() == 0.002);
}

TEST_CASE("executable exit codes") {
    const std::string bin = SCALEVAR_CLI_BINARY;
    const std::string cfg = bundled("noether_free_particle.json").string();
    const auto status = [](const std::string& cmd) {
        const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(raw);
    };
    CHECK(status(bin + " run " + cfg + " --set " + out_prefix("exe")) == 0);
    CHECK(status(bin + " run " + cfg + " --set scale.mu=2") == 2);
    CHECK(status(bin + " run " + cfg + " --set problem.L='1/(q1-t)' --set " + out_prefix("exe")) == 3);
    CHECK(status(bin) == 2);
    CHECK(fs::exists(scratch() / "exe.csv"));
}
