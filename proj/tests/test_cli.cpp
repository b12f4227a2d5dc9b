#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "fracspl/csv.hpp"
#include "fracspl/mittag.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(FRACSPL_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / "fracspl_cli_test";
    fs::create_directories(d);
    return d;
}

fs::path write_config(const std::string& name, const std::string& json) {
    const fs::path p = scratch_dir() / name;
    std::ofstream(p) << json;
    return p;
}

const char* kQuickScenario = R"({
  "problem": {"alpha": 0.5, "tau_q_alpha": 0.5, "rho": 1, "c": 1, "a": 1,
              "L": 1, "T": 1, "k": 1, "U0": "sin_pi_over_L", "V0": "zero", "F": "zero"},
  "spectral": {"n_modes": 3, "quad_points": 1024},
  "rothe": {"element_count": 8, "step_counts": [8, 16]},
  "output": {"directory": "OUTDIR"}
})";

std::string with_outdir(std::string json, const fs::path& dir) {
    const std::string key = "OUTDIR";
    json.replace(json.find(key), key.size(), dir.string());
    return json;
}

}  // namespace

TEST_CASE("ml-eval prints the value and delegates bit-for-bit") {
    const RunResult e = run_cli("ml-eval --alphas 1 --beta 1 --zs 1");
    CHECK(e.exit_code == 0);
    CHECK(e.output.substr(0, 12) == "2.7182818284");

    const RunResult zero = run_cli("ml-eval --alphas 0.5 --beta 1 --zs 0");
    CHECK(zero.exit_code == 0);
    CHECK(zero.output.substr(0, 2) == "1 ");

    const RunResult multi = run_cli("ml-eval --alphas 1.5,1,0.5 --beta 1.5 --zs -2,-1,-0.5");
    CHECK(multi.exit_code == 0);
    fracspl::MLQuery q;
    q.alphas = {1.5, 1.0, 0.5};
    q.beta = 1.5;
    q.zs = {-2.0, -1.0, -0.5};
    const std::string expected = fracspl::format_sig(fracspl::mml(q));
    CHECK(multi.output.substr(0, expected.size()) == expected);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run_cli("ml-eval --beta 1 --zs 1").exit_code == 1);
    CHECK(run_cli("ml-eval --alphas 1 --zs nonsense").exit_code == 1);
    CHECK(run_cli("no-such-subcommand").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);
}

TEST_CASE("missing config names the path") {
    const RunResult r = run_cli("spectral --config /nonexistent/scenario.json");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("/nonexistent/scenario.json") != std::string::npos);
}

TEST_CASE("zero data produce an all-zero CSV") {
    const fs::path out = scratch_dir() / "zero_out";
    std::string json = with_outdir(kQuickScenario, out);
    const std::string key = "\"sin_pi_over_L\"";
    json.replace(json.find(key), key.size(), "\"zero\"");
    const fs::path cfg = write_config("zero.json", json);
    const RunResult r = run_cli("spectral --config " + cfg.string());
    REQUIRE(r.exit_code == 0);
    const fracspl::CsvTable u = fracspl::read_csv(out / "u.csv");
    REQUIRE(u.header == std::vector<std::string>{"x", "t", "u"});
    REQUIRE(!u.rows.empty());
    for (const auto& row : u.rows) CHECK(row[2] == 0.0);
}

TEST_CASE("spectral output is deterministic and round-trips") {
    const fs::path out1 = scratch_dir() / "det1";
    const fs::path out2 = scratch_dir() / "det2";
    const fs::path cfg1 = write_config("det1.json", with_outdir(kQuickScenario, out1));
    const fs::path cfg2 = write_config("det2.json", with_outdir(kQuickScenario, out2));
    REQUIRE(run_cli("spectral --config " + cfg1.string()).exit_code == 0);
    REQUIRE(run_cli("spectral --config " + cfg2.string()).exit_code == 0);

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    const std::string bytes = slurp(out1 / "u.csv");
    CHECK(bytes == slurp(out2 / "u.csv"));
    CHECK(bytes.find('\r') == std::string::npos);  // LF line endings

    // every printed value re-parses exactly (17 significant digits)
    const fracspl::CsvTable t = fracspl::read_csv(out1 / "u.csv");
    for (const auto& row : t.rows) {
        CHECK(fracspl::format_sig(row[2]) == fracspl::format_sig(row[2], 17));
        CHECK(std::stod(fracspl::format_sig(row[2])) == row[2]);
    }
}

TEST_CASE("rothe writes trajectory and ledger") {
    const fs::path out = scratch_dir() / "rothe_out";
    const fs::path cfg = write_config("rothe.json", with_outdir(kQuickScenario, out));
    REQUIRE(run_cli("rothe --config " + cfg.string()).exit_code == 0);
    const fracspl::CsvTable traj = fracspl::read_csv(out / "trajectory.csv");
    CHECK(traj.header == std::vector<std::string>{"t", "x", "u", "delta_u"});
    CHECK(traj.rows.size() == 9 * 9);  // (n+1) time nodes x (M+1) space nodes
    const fracspl::CsvTable led = fracspl::read_csv(out / "ledger.csv");
    REQUIRE(led.header.size() == 7);
    CHECK(led.rows.size() == 8);
    for (const auto& row : led.rows)
        for (double v : row) CHECK(std::isfinite(v));
}

TEST_CASE("cross-validate accepts the quick scenario and rejects bad ones") {
    const fs::path out = scratch_dir() / "cv_out";
    const fs::path cfg = write_config("cv.json", with_outdir(kQuickScenario, out));
    const RunResult ok = run_cli("cross-validate --config " + cfg.string());
    CHECK(ok.exit_code == 0);
    const fracspl::CsvTable table = fracspl::read_csv(out / "error_table.csv");
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[1][2] < table.rows[0][2]);

    // per-element conductivity: no spectral ground truth
    std::string vark = with_outdir(kQuickScenario, scratch_dir() / "cv_vark");
    const std::string key = "\"k\": 1";
    vark.replace(vark.find(key), key.size(),
                 "\"k\": [1, 1, 2, 2, 2, 1, 1, 1]");
    const fs::path cfg_vark = write_config("cv_vark.json", vark);
    const RunResult vk = run_cli("cross-validate --config " + cfg_vark.string());
    CHECK(vk.exit_code == 1);
    CHECK(vk.output.find("spectral ground truth requires constant conductivity") != std::string::npos);

    // refinement that coarsens space while refining time: error grows, exit 3
    std::string worse = with_outdir(kQuickScenario, scratch_dir() / "cv_worse");
    const std::string skey = "\"step_counts\": [8, 16]";
    worse.replace(worse.find(skey), skey.size(), "\"step_counts\": [32, 64]");
    const std::string rkey = "\"element_count\": 8";
    worse.replace(worse.find(rkey), rkey.size(), "\"element_counts\": [64, 2]");
    const fs::path cfg_worse = write_config("cv_worse.json", worse);
    CHECK(run_cli("cross-validate --config " + cfg_worse.string()).exit_code == 3);
}

TEST_CASE("verify emits TAP and honours the exit-code contract") {
    const RunResult ok = run_cli("verify fracops --seed 7");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("TAP version 13") != std::string::npos);
    CHECK(ok.output.find("ok 1 - fracops/monotone-kernel-inequality") != std::string::npos);
    CHECK(ok.output.find("not ok") == std::string::npos);

    // same seed, same bytes
    CHECK(run_cli("verify fracops --seed 7").output == ok.output);

    const RunResult fault = run_cli("verify fracops --seed 7 --inject-increasing-kernel");
    CHECK(fault.exit_code == 4);
    CHECK(fault.output.find("not ok") != std::string::npos);

    CHECK(run_cli("verify nonsense").exit_code == 1);
}

TEST_CASE("thread cap env var is acknowledged") {
    const std::string cmd = "FRACSPL_THREADS=2 " + std::string(FRACSPL_CLI_PATH) +
                            " ml-eval --alphas 1 --beta 1 --zs 0 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    CHECK(WEXITSTATUS(pclose(pipe)) == 0);
    CHECK(out.find("FRACSPL_THREADS=2") != std::string::npos);
}
