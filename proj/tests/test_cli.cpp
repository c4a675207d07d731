#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "streamsim/experiment.hpp"
#include "streamsim/trace.hpp"

// Compile-time path to the CLI binary under test, injected by the build.
#ifndef STREAM_SIM_BIN_PATH
#error "STREAM_SIM_BIN_PATH must point at the stream_sim executable"
#endif

using namespace streamsim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int cli(const std::string& args, const fs::path& capture = {}) {
    std::string cmd = std::string("\"") + STREAM_SIM_BIN_PATH + "\" " + args;
    if (capture.empty()) cmd += " > /dev/null 2>&1";
    else cmd += " > \"" + capture.string() + "\" 2>&1";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write(const fs::path& p, std::string_view text) {
    std::ofstream out(p, std::ios::binary);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    REQUIRE(out);
}

}  // namespace

TEST_CASE("help and parse errors") {
    CHECK(cli("--help") == 0);
    CHECK(cli("run --help") == 0);
    CHECK(cli("") == 1);              // a subcommand is required
    CHECK(cli("--bogus") == 1);
    CHECK(cli("run --bogus") == 1);
    CHECK(cli("frobnicate") == 1);
}

TEST_CASE("run: happy path with flags over a preset") {
    TempDir dir("streamsim_cli_run");
    fs::path out = dir.path / "exp";
    fs::path printed = dir.path / "stdout.txt";
    CHECK(cli("run --preset figure5a --horizon 200 --out \"" + out.string() + "\"",
              printed) == 0);

    CHECK(fs::exists(out / "summary.csv"));
    CHECK(fs::exists(out / "effective_config.cfg"));
    CHECK(fs::exists(out / "01_stochastic_k10_v1e-16_seed1_steps.csv"));
    CHECK(fs::exists(out / "02_fixed22_k10_seed1_steps.csv"));
    CHECK(fs::exists(out / "03_fixed37_k10_seed1_steps.csv"));

    std::string log = slurp(printed);
    CHECK(log.find("01_stochastic_k10_v1e-16_seed1") != std::string::npos);
    CHECK(log.find("verdict=") != std::string::npos);

    auto rows = parse_summary_csv(slurp(out / "summary.csv"));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].controller == "stochastic");

    // The echoed config reproduces the run when fed back in.
    fs::path out2 = dir.path / "exp2";
    CHECK(cli("run --config \"" + (out / "effective_config.cfg").string() + "\" --out \"" +
              out2.string() + "\"") == 0);
    CHECK(slurp(out2 / "summary.csv") == slurp(out / "summary.csv"));
}

TEST_CASE("run: config file plus single-run flags") {
    TempDir dir("streamsim_cli_cfg");
    fs::path cfg = dir.path / "exp.cfg";
    write(cfg,
          "# tiny smoke experiment\n"
          "horizon = 120\n"
          "seed = 3\n");
    fs::path out = dir.path / "o";
    CHECK(cli("run --config \"" + cfg.string() + "\" --controller fixed:37 --k 5 --out \"" +
              out.string() + "\"") == 0);
    auto rows = parse_summary_csv(slurp(out / "summary.csv"));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].run_id == "01_fixed37_k5_seed3");
    CHECK(rows[0].k == 5);
    CHECK(rows[0].seed == 3);
}

TEST_CASE("run: failure exit codes") {
    TempDir dir("streamsim_cli_fail");
    CHECK(cli("run --config \"" + (dir.path / "missing.cfg").string() + "\"") == 2);
    CHECK(cli("run --preset nope") == 1);
    CHECK(cli("run --k 0") == 1);
    CHECK(cli("run --v -1") == 1);
    CHECK(cli("run --controller turbo") == 1);
    CHECK(cli("run --controller fixed:25 --horizon 10 --out \"" +
              (dir.path / "o").string() + "\"") == 1);

    // A file where the output directory should go -> I/O error.
    write(dir.path / "blocker", "not a directory\n");
    CHECK(cli("run --horizon 10 --out \"" + (dir.path / "blocker" / "sub").string() +
              "\"") == 2);

    // A trace file that fails validation -> trace error, not config error.
    fs::path bad_trace = dir.path / "bad.csv";
    write(bad_trace,
          "stream,qp,psnr_db,bitrate_kbps\n"
          "1,22,40.0,10000\n"
          "1,27,41.0,9000\n");  // psnr rising with qp
    fs::path cfg = dir.path / "with_trace.cfg";
    write(cfg, "trace = " + bad_trace.string() + "\n");
    CHECK(cli("run --config \"" + cfg.string() + "\" --horizon 10") == 3);
}

TEST_CASE("validate-trace") {
    TempDir dir("streamsim_cli_trace");

    fs::path good = dir.path / "good.csv";
    write(good, serialize_trace_csv(builtin_table1()));
    fs::path report = dir.path / "report.txt";
    CHECK(cli("validate-trace \"" + good.string() + "\"", report) == 0);
    std::string text = slurp(report);
    CHECK(text.find("OK") != std::string::npos);
    CHECK(text.find("10 streams") != std::string::npos);
    CHECK(text.find("4 quality modes") != std::string::npos);

    fs::path bad = dir.path / "bad.csv";
    write(bad,
          "stream,qp,psnr_db,bitrate_kbps\n"
          "1,22,41.0,10000\n"
          "1,27,39.0,11000\n");  // bitrate rising with qp
    CHECK(cli("validate-trace \"" + bad.string() + "\"") == 3);

    fs::path garbled = dir.path / "garbled.csv";
    write(garbled,
          "stream,qp,psnr_db,bitrate_kbps\n"
          "1,22,forty,10000\n");
    CHECK(cli("validate-trace \"" + garbled.string() + "\"") == 3);

    CHECK(cli("validate-trace \"" + (dir.path / "absent.csv").string() + "\"") == 2);
    CHECK(cli("validate-trace") == 1);  // missing required argument
}

TEST_CASE("compare") {
    TempDir dir("streamsim_cli_cmp");
    fs::path a_dir = dir.path / "a", b_dir = dir.path / "b";
    REQUIRE(cli("run --controller fixed:37 --horizon 150 --seed 1 --out \"" +
                a_dir.string() + "\"") == 0);
    REQUIRE(cli("run --controller fixed:22 --horizon 150 --seed 1 --out \"" +
                b_dir.string() + "\"") == 0);

    fs::path a = a_dir / "summary.csv", b = b_dir / "summary.csv";
    CHECK(cli("compare \"" + a.string() + "\"") == 1);  // need two files

    fs::path printed = dir.path / "cmp.txt";
    CHECK(cli("compare \"" + a.string() + "\" \"" + b.string() + "\"", printed) == 0);
    std::string text = slurp(printed);
    // Human-readable table first, then the machine CSV.
    CHECK(text.find("run_id") != std::string::npos);
    CHECK(text.find("run_id,mean_psnr_db,tail_mean_queue_bits,verdict") !=
          std::string::npos);
    // The lean stream rides the link; the rich one out-paces it.
    size_t qp37 = text.find("01_fixed37_k10_seed1");
    size_t qp22 = text.find("01_fixed22_k10_seed1");
    REQUIRE(qp37 != std::string::npos);
    REQUIRE(qp22 != std::string::npos);
    CHECK(qp37 < qp22);

    CHECK(cli("compare \"" + a.string() + "\" \"" + (dir.path / "nope.csv").string() +
              "\"") == 2);

    fs::path alien = dir.path / "alien.csv";
    write(alien, "totally,different,schema\n1,2,3\n");
    CHECK(cli("compare \"" + a.string() + "\" \"" + alien.string() + "\"") == 1);
}
