// End-to-end checks against the built binary: exit codes, file outputs,
// determinism of the emitted bytes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kCli = COMPOSTER_CLI_PATH;
const std::string kPaperConfig = std::string(COMPOSTER_CONFIG_DIR) + "/paper.json";

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "composter_cli_stdout.txt";
    const std::string cmd = kCli + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::ostringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(status), buf.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("size: paper config runs clean with flags on stderr") {
    const fs::path out = fs::temp_directory_path() / "composter_report.json";
    const auto r = run("--config " + kPaperConfig + " size --out " + out.string());
    CHECK(r.exit_code == 0);
    const std::string report = slurp(out);
    CHECK(report.find("\"EQ10_VIOLATION\"") != std::string::npos);
    CHECK(report.find("\"PANEL_COUNT_MISMATCH\"") != std::string::npos);
    CHECK(report.find("EQ9_NONPHYSICAL") == std::string::npos);
}

TEST_CASE("size: --paper-faithful adds the nonphysical power flag, still exit 0") {
    const auto r = run("--config " + kPaperConfig + " --paper-faithful size");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("EQ9_NONPHYSICAL") != std::string::npos);
}

TEST_CASE("size: reports are byte-identical across runs") {
    const fs::path a = fs::temp_directory_path() / "composter_report_a.json";
    const fs::path b = fs::temp_directory_path() / "composter_report_b.json";
    CHECK(run("--config " + kPaperConfig + " size --out " + a.string()).exit_code == 0);
    CHECK(run("--config " + kPaperConfig + " size --out " + b.string()).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("pv-curve: CSV rows and MPP summary") {
    const fs::path out = fs::temp_directory_path() / "composter_curve.csv";
    const auto r = run("--config " + kPaperConfig +
                       " pv-curve --irradiance 1000 --temperature 25 --points 200 --out " +
                       out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("mpp:") != std::string::npos);

    const std::string csv = slurp(out);
    CHECK(csv.rfind("voltage_V,current_A,power_W\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 201);  // header + 200 rows
}

TEST_CASE("pv-curve: a single point is a usage error") {
    CHECK(run("--config " + kPaperConfig + " pv-curve --points 1").exit_code == 2);
}

TEST_CASE("simulate: blackout summary carries the autonomy verdict") {
    const fs::path out = fs::temp_directory_path() / "composter_trace.csv";
    const auto r = run("--config " + kPaperConfig +
                       " simulate --horizon 72 --dt 60 --scenario blackout --out " +
                       out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("\"autonomy\"") != std::string::npos);
    CHECK(slurp(out).rfind("t_s,irradiance_wm2,pv_w,load_w,net_w,soc,motor_rpm,drum_rpm\n",
                           0) == 0);
}

TEST_CASE("simulate: traces are byte-identical across runs") {
    const fs::path a = fs::temp_directory_path() / "composter_trace_a.csv";
    const fs::path b = fs::temp_directory_path() / "composter_trace_b.csv";
    const std::string args = " simulate --horizon 24 --dt 60 --out ";
    CHECK(run("--config " + kPaperConfig + args + a.string()).exit_code == 0);
    CHECK(run("--config " + kPaperConfig + args + b.string()).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("usage and config errors exit 2") {
    CHECK(run("simulate --dt 0").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("--config /does/not/exist.json size").exit_code == 2);

    const fs::path bad = fs::temp_directory_path() / "composter_bad.json";
    std::ofstream(bad) << "";
    CHECK(run("--config " + bad.string() + " size").exit_code == 2);
    std::ofstream(bad) << R"({"drum": {"diameter_m": -1}})";
    CHECK(run("--config " + bad.string() + " size").exit_code == 2);
}
