// Exit-code and output checks for the command-line tool. Takes the CLI path
// as the first argument.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <sys/wait.h>

#include "bikm/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

RunResult run(const std::string& cmd) {
    RunResult res;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return res;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), got);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
    return res;
}

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::fprintf(stderr, "cli check failed: %s\n", what.c_str());
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_checks <path-to-cli>\n");
        return 2;
    }
    const std::string cli = std::string("\"") + argv[1] + "\"";

    expect(run(cli).exit_code == 2, "no arguments exits 2");
    expect(run(cli + " frobnicate").exit_code == 2, "unknown subcommand exits 2");
    expect(run(cli + " bounds --no-such-flag").exit_code == 2, "unknown flag exits 2");
    expect(run(cli + " --help").exit_code == 0, "--help exits 0");

    const RunResult bounds = run(cli + " bounds --beta 2");
    expect(bounds.exit_code == 0, "bounds --beta 2 exits 0");
    expect(bounds.output.find("alpha_lp_tight 2.58") != std::string::npos,
           "bounds --beta 2 reports the tight value below 2.59");

    const fs::path dir = fs::temp_directory_path() / "bikm_cli_checks";
    std::error_code ec;
    fs::remove_all(dir, ec);
    fs::create_directories(dir);
    const std::string csv = (dir / "line.csv").string();
    bikm::write_file(csv, "0\n2\n10\n");

    const RunResult oracle = run(cli + " oracle kmeans --points " + csv + " --k 2");
    expect(oracle.exit_code == 0, "oracle kmeans exits 0");
    expect(oracle.output.substr(0, 1) == "2", "oracle kmeans on {0,2,10} with k=2 prints 2");

    // Domain errors exit 1 (k larger than the candidate set).
    const std::string inst = (dir / "inst.json").string();
    bikm::write_file(inst,
                     R"({"schema":1,"metric":"sqeuclidean","demands":[[0],[1]],"centers":[[0],[1]]})");
    expect(run(cli + " lp --instance " + inst + " --k 5 --out " + (dir / "x.json").string())
                   .exit_code == 1,
           "infeasible k exits 1");
    expect(run(cli + " reduce --points " + csv + " --epsilon 0.9 --out " +
               (dir / "y.json").string())
                   .exit_code == 1,
           "epsilon out of range exits 1");

    fs::remove_all(dir, ec);
    if (failures == 0) std::printf("cli checks passed\n");
    return failures == 0 ? 0 : 1;
}
