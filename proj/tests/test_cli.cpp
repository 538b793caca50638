#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vi/harness.hpp"
#include "vi/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Tmp {
    fs::path dir;
    explicit Tmp(const std::string& tag) : dir(fs::temp_directory_path() / ("vi_cli_" + tag)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Tmp() { fs::remove_all(dir); }
};

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(VI_SOLVE_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli: preset writes a trace and exits 0") {
    Tmp t("preset");
    CHECK(run_cli("preset network_51 --out " + (t.dir / "o").string(), t.dir / "log") == 0);
    std::ifstream trace(t.dir / "o" / "trace_network_51.csv");
    REQUIRE(trace);
    const auto rows = vi::read_trace_csv(trace);
    CHECK(!rows.empty());
    CHECK(slurp(t.dir / "log").find("tol_reached") != std::string::npos);
}

TEST_CASE("cli: identical invocations give byte-identical outputs") {
    Tmp t("repeat");
    for (const char* sub : {"a", "b"}) {
        CHECK(run_cli("network --out " + (t.dir / sub).string(), t.dir / "log") == 0);
        CHECK(run_cli("sweep --mu 0.6 --beta 0.8,0.9 --sigma-vals 1.5 --out " + (t.dir / sub).string(), t.dir / "log") == 0);
        CHECK(run_cli("compare --out " + (t.dir / sub).string(), t.dir / "log") == 0);
    }
    for (const char* f : {"trace_network.csv", "sweep_network.csv", "compare_network.csv"}) {
        const auto a = slurp(t.dir / "a" / f);
        CHECK(!a.empty());
        CHECK(a == slurp(t.dir / "b" / f));
    }
}

TEST_CASE("cli: deblur reads a PGM and writes the restored image") {
    Tmp t("deblur");
    vi::write_pgm_file((t.dir / "in.pgm").string(), vi::synthetic_test_image(32, 32));
    CHECK(run_cli("deblur --image " + (t.dir / "in.pgm").string() + " --blur gaussian --size 5 --sigma 1.5 --out " +
                      (t.dir / "o").string(),
                  t.dir / "log") == 0);
    const auto restored = vi::read_pgm_file((t.dir / "o" / "deblur_gaussian_restored.pgm").string());
    CHECK(restored.rows == 32);
    CHECK(fs::exists(t.dir / "o" / "trace_deblur_gaussian.csv"));
    CHECK(run_cli("deblur --blur motion --length 5 --angle 60 --max-iter 5 --out " + (t.dir / "o").string(),
                  t.dir / "log") == 0);
}

TEST_CASE("cli: usage errors exit 1") {
    Tmp t("usage");
    CHECK(run_cli("network --config " + (t.dir / "missing.txt").string(), t.dir / "log") == 1);
    CHECK(slurp(t.dir / "log").find("not found") != std::string::npos);
    CHECK(run_cli("network --bogus", t.dir / "log") == 1);
    CHECK(run_cli("", t.dir / "log") == 1);
    CHECK(run_cli("preset nope", t.dir / "log") == 1);
    CHECK(run_cli("network --variant fancy", t.dir / "log") == 1);
    CHECK(run_cli("deblur --blur box", t.dir / "log") == 1);
    {
        std::ofstream cfg(t.dir / "bad.txt");
        cfg << "sigma = 4.0\n";
    }
    CHECK(run_cli("network --config " + (t.dir / "bad.txt").string(), t.dir / "log") == 1);
    CHECK(slurp(t.dir / "log").find("sigma") != std::string::npos);
}

TEST_CASE("cli: numeric failures exit 2") {
    Tmp t("numeric");
    {
        std::ofstream cfg(t.dir / "huge.txt");
        cfg << "lambda1 = 1e308\n";
    }
    CHECK(run_cli("network --config " + (t.dir / "huge.txt").string() + " --out " + t.dir.string(), t.dir / "log") == 2);
}

TEST_CASE("cli: help documents every flag") {
    Tmp t("help");
    const std::vector<std::pair<std::string, std::vector<std::string>>> expected{
        {"network", {"--config", "--out", "--max-iter", "--tol", "--variant", "--strict"}},
        {"nash", {"--config", "--out", "--max-iter", "--tol", "--variant", "--strict"}},
        {"deblur", {"--image", "--blur", "--size", "--sigma", "--length", "--angle", "--strict"}},
        {"sweep", {"--mu", "--beta", "--sigma-vals", "--problem"}},
        {"compare", {"--variants", "--problem"}},
        {"preset", {"name", "--out"}},
    };
    for (const auto& [sub, flags] : expected) {
        CHECK(run_cli(sub + " --help", t.dir / "log") == 0);
        const auto text = slurp(t.dir / "log");
        for (const auto& f : flags) CHECK_MESSAGE(text.find(f) != std::string::npos, sub << " " << f);
    }
}
