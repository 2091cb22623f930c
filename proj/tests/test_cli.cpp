// Subprocess checks of the command-line contract: exit code 0 for a
// certified configuration, 2 when the hypotheses are not verified, 1 for
// invalid input with the violated hypothesis named.
// Usage: test_cli <cli-binary> <configs-dir>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    std::cout << (ok ? "[pass] " : "[FAIL] ") << what << std::endl;
    if (!ok) ++failures;
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    std::string full = cmd + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return r;
    char buffer[4096];
    while (fgets(buffer, sizeof buffer, pipe)) r.output += buffer;
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: test_cli <cli-binary> <configs-dir>\n";
        return 1;
    }
    std::string cli = argv[1], configs = argv[2];

    {
        auto r = run(cli + " analyze " + configs + "/yamabe_s2_d1.cfg");
        expect(r.exit_code == 0, "certified configuration exits 0");
        expect(r.output.find("strict_local_min") != std::string::npos, "verdict printed");
    }
    {
        auto r = run(cli + " analyze " + configs + "/sphere_s4.cfg");
        expect(r.exit_code == 2, "pure sphere (inconclusive) exits 2");
    }
    {
        // lambda1(M1) >= lambda1(M2): refused with the hypothesis named.
        std::string path = "cli_bad_kernel.cfg";
        std::ofstream out(path);
        out << "mode = product\nsphere.d = 2\nsphere.r = 1\nfactor2.dim = 2\n"
               "factor2.volume = 1\nfactor2.lambda1 = 2\n";
        out.close();
        auto r = run(cli + " analyze " + path);
        expect(r.exit_code == 1, "eigenvalue-ordering violation exits 1");
        expect(r.output.find("lambda1(M1) < lambda1(M2)") != std::string::npos,
               "message names the violated hypothesis");
        std::remove(path.c_str());
    }
    {
        std::string path = "cli_malformed.cfg";
        std::ofstream out(path);
        out << "mode = product\nsphere.dd = 2\n";
        out.close();
        auto r = run(cli + " analyze " + path);
        expect(r.exit_code == 1, "malformed config exits 1");
        expect(r.output.find(":2:") != std::string::npos, "parse error is line anchored");
        std::remove(path.c_str());
    }
    {
        auto r = run(cli + " verify --suite spectral");
        expect(r.exit_code == 0, "spectral verify suite passes");
    }
    {
        auto r = run(cli + " series " + configs + "/product_n4.cfg --order 3 --json");
        expect(r.exit_code == 0, "series dump succeeds");
        expect(r.output.find("\"L\": 2") != std::string::npos, "series dump lists terms");
    }
    {
        auto r = run(cli + " energy " + configs + "/dim6_positive.cfg --json");
        expect(r.exit_code == 0, "energy subcommand accepts the positive dim-6 config");
        expect(r.output.find("dim6_positive") != std::string::npos, "regime reported");
    }

    if (failures == 0) {
        std::cout << "cli contract satisfied" << std::endl;
        return 0;
    }
    std::cout << failures << " cli checks FAILED" << std::endl;
    return 1;
}
