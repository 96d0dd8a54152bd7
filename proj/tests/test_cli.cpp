#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& args) {
    std::string cmd = std::string(KELVIN_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp(const std::string& name, const std::string& body) {
    std::string path = std::string(TEST_TMP) + "/" + name;
    std::ofstream(path) << body;
    return path;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("kernel rows") {
    auto r = run("kernel --x 1 --tau 0.5");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("x,tau,method,value,errEstimate\n", 0) == 0);
    CHECK(count_lines(r.out) == 4);
    CHECK(r.out.find("1,0.5,definition,0.0075272360178691") != std::string::npos);
    CHECK(run("kernel --x 1 --tau 0.5").out == r.out);
}

TEST_CASE("tighter tolerance shrinks error estimates") {
    auto loose = run("kernel --x 2 --tau 1 --method mellin-barnes --rel-tol 1e-6 --abs-tol 1e-8");
    auto tight = run("kernel --x 2 --tau 1 --method mellin-barnes --rel-tol 1e-12 --abs-tol 1e-16");
    auto err = [](const std::string& s) { return std::stod(s.substr(s.rfind(',') + 1)); };
    CHECK(err(tight.out) <= err(loose.out));
}

TEST_CASE("invalid input exits 2") {
    CHECK(run("kernel --x 1 --tau ''").code == 2);
    CHECK(run("kernel --x 2,1 --tau 1").code == 2);
    CHECK(run("kernel --x 1 --tau 1 --rel-tol -1").code == 2);
    CHECK(run("verify nope").code == 2);
    CHECK(run("bogus").code == 2);
    auto bad = temp("bad.csv", "grid,value\n0,1\n1,0.5\n0.5,0.2\n");
    CHECK(run("transform forward-f --tau 1 --input " + bad).code == 2);
    auto nohdr = temp("nohdr.csv", "0,1\n1,2\n");
    CHECK(run("transform forward-f --tau 1 --input " + nohdr).code == 2);
}

TEST_CASE("config file and flag precedence") {
    auto cfg = temp("cfg.json", R"({"x": [0.5, 2], "tau": "0:1:3", "method": "definition"})");
    auto a = run("--config " + cfg + " kernel");
    CHECK(a.code == 0);
    CHECK(count_lines(a.out) == 7);
    auto b = run("--config " + cfg + " kernel --tau 1");
    CHECK(count_lines(b.out) == 3);
    CHECK(run("--config " + temp("broken.json", "{") + " kernel").code == 2);
}

TEST_CASE("round trip report") {
    auto r = run("transform inverse-f --x 0.5,1,2");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("x,value,reference,absError\n", 0) == 0);
}

TEST_CASE("forward output feeds the inverse") {
    auto ff = run("transform forward-f --tau 0:10:41");
    auto path = temp("ff.csv", ff.out);
    CHECK(run("transform inverse-f --variant published --tau-cap 10 --x 1 --input " + path).code == 0);
    CHECK(run("transform inverse-f --x 1 --input " + path).code == 2);
}

TEST_CASE("bvp commands") {
    auto t = run("bvp trace --r 0.5,1");
    CHECK(t.code == 0);
    CHECK(t.out.rfind("r,atZero,atBeta,forwardG\n0.5,0,", 0) == 0);
    CHECK(run("bvp solve --r 1 --theta-frac 0.5").code == 0);
    CHECK(run("bvp solve --r 1 --theta-frac 1.5").code == 2);
}

TEST_CASE("verify writes JSON and --out") {
    auto path = std::string(TEST_TMP) + "/spec.json";
    auto r = run("--out " + path + " verify quadrature");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body.find("\"suite\": \"quadrature\"") != std::string::npos);
    CHECK(body.find("wallTime") == std::string::npos);
    CHECK(run("verify quadrature --timing").out.find("wallTime") != std::string::npos);
}
