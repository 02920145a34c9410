#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#ifndef CHARWEB_CLI_PATH
#define CHARWEB_CLI_PATH "charweb"
#endif
#ifndef CHARWEB_FIXTURES_DIR
#define CHARWEB_FIXTURES_DIR "fixtures"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
    std::string command = std::string(CHARWEB_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buffer{};
    std::string output;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buffer.data(), buffer.size(), pipe)) output += buffer.data();
    int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

std::string fx(const std::string& name) {
    return std::string(CHARWEB_FIXTURES_DIR) + "/" + name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eval prints the canonical value") {
    RunResult r = run_cli("eval \"X1 & (X2 + X3)\" " + fx("three_lines.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("dim 1") != std::string::npos);
}

TEST_CASE("eval exit codes partition failure modes") {
    CHECK(run_cli("eval \"X1 +\" " + fx("three_lines.json")).exit_code == 2);   // syntax
    CHECK(run_cli("eval X1 " + fx("missing_file.json")).exit_code == 2);        // io
    CHECK(run_cli("eval X5 " + fx("three_lines.json")).exit_code == 3);         // range
}

TEST_CASE("genpos on the shipped counterexample") {
    RunResult r = run_cli("genpos " + fx("six_lines_counterexample.json"));
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("NOT in general position") != std::string::npos);

    RunResult ok = run_cli("genpos " + fx("three_lines.json"));
    CHECK(ok.exit_code == 0);
}

TEST_CASE("generic verification of the shipped certificates") {
    RunResult r = run_cli("--trials 20 verify " + fx("cert_lines_n3.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("HOLDS (20/20") != std::string::npos);

    RunResult inst = run_cli("verify " + fx("cert_lines_n2.json") + " " + fx("three_lines.json"));
    CHECK(inst.exit_code == 0);
}

TEST_CASE("reconstruct reproduces the homothety") {
    RunResult r = run_cli("reconstruct " + fx("cert_lines_n2.json") + " " +
                          fx("three_lines.json") + " " + fx("three_lines.json") + " " +
                          fx("homothety_block.json") + " --k 1");
    CHECK(r.exit_code == 0);
    // 2 * identity in row-vector convention
    CHECK(r.output.find("[2/1, 0/1]") != std::string::npos);
    CHECK(r.output.find("[0/1, 2/1]") != std::string::npos);
}

TEST_CASE("web report on the shipped presentation") {
    RunResult r = run_cli("web " + fx("presentation_z1z2.json") + " --at 1,1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("rigid: yes") != std::string::npos);

    RunResult singular = run_cli("web " + fx("presentation_z1z2.json") + " --at 0,0");
    CHECK(singular.exit_code == 1);
}

TEST_CASE("search positive and negative") {
    CHECK(run_cli("--trials 10 search --n 2 --dims 1,1,1 --target 1").exit_code == 0);
    CHECK(run_cli("--trials 10 search --n 2 --dims 1,1 --target 1").exit_code == 1);
    CHECK(run_cli("search --n 2 --dims 1,1,1,1,1,1 --target 1").exit_code == 4);
}

TEST_CASE("build produces a verified certificate") {
    RunResult r = run_cli("--trials 15 --format json build --n 2 --dims 1,1,1,1,1,1 --target 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"P\"") != std::string::npos);
}

TEST_CASE("json reports are byte-identical across repeated runs") {
    const std::string cmd = "--format json --seed 7 --trials 10 verify " + fx("cert_lines_n2.json");
    RunResult a = run_cli(cmd);
    RunResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);

    const std::string web_cmd =
        "--format json --seed 9 web " + fx("presentation_z1z2.json") + " --at 1,1";
    CHECK(run_cli(web_cmd).output == run_cli(web_cmd).output);
}

TEST_CASE("budget overruns exit with the resource code") {
    // 9 members exceed the default general-position budget of 8
    std::string path = "cli_test_nine_lines.json";
    {
        FILE* f = fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        fputs("{\"n\": 2, \"members\": [", f);
        for (int i = 0; i < 9; ++i)
            fprintf(f, "%s{\"n\": 2, \"basis\": [[\"1/1\", \"%d/1\"]]}", i ? ", " : "", i);
        fputs("]}", f);
        fclose(f);
    }
    RunResult r = run_cli("genpos " + path);
    CHECK(r.exit_code == 4);
    std::remove(path.c_str());
}

}  // TEST_SUITE
