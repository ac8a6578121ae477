#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(QCONV_CLI_PATH) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    size_t k;
    while ((k = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), k);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

fs::path fresh_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("qconv_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

}  // namespace

TEST_CASE("dims") {
    Run r = run("--no-banner --format tsv dims 45");
    CHECK(r.code == 0);
    CHECK(r.out == "level\tindex\tcusps\te2\te3\tgenus\tm_E\tm_S\n45\t72\t8\t0\t0\t3\t8\t14\n");
    Run b = run("dims 45");
    CHECK(b.out.rfind("# qconv 1.0\n", 0) == 0);
}

TEST_CASE("verify agrees with brute force") {
    Run r = run("--no-banner verify 5 9 --upto 200");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "agrees with brute force for 1 <= n <= 200"));
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("verify 5").code == 2);
    CHECK(run("verify 3 9").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("dims 0").code == 2);
    CHECK(run("repr cubes 1 3").code == 2);
}

TEST_CASE("missing inputs exit 3") {
    fs::path d = fresh_dir("missing");
    Run r = run("--no-banner verify 5 9 --formula " + (d / "nope.formula").string());
    CHECK(r.code == 3);
    Run m = run("--no-banner repr squares 1 3 --upto 5 --basis-dir " + d.string());
    CHECK(m.code == 3);
    CHECK(contains(m.out, "needs basis for level"));
}

TEST_CASE("corrupted formula is caught") {
    fs::path d = fresh_dir("corrupt");
    REQUIRE(run("--no-banner evaluate 5 9 --upto 5 --basis-dir " + d.string()).code == 0);
    fs::path f = d / "w_5_9.formula";
    REQUIRE(fs::exists(f));
    REQUIRE(fs::exists(d / "level45.basis"));
    CHECK(run("--no-banner verify 5 9 --upto 100 --formula " + f.string() + " --basis-dir " + d.string()).code == 0);

    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    in.close();
    std::string text = ss.str();
    auto at = text.find("\nY 1 ");
    REQUIRE(at != std::string::npos);
    auto end = text.find('\n', at + 1);
    text = text.substr(0, at) + "\nY 1 7/3" + text.substr(end);
    std::ofstream(f) << text;

    Run r = run("--no-banner verify 5 9 --upto 100 --formula " + f.string() + " --basis-dir " + d.string());
    CHECK(r.code == 1);
    CHECK(contains(r.out, "mismatch at n="));

    std::ofstream(f) << "alpha 5\nbeta 9\nbasis_hash 0000000000000000\n";
    Run h = run("--no-banner verify 5 9 --formula " + f.string() + " --basis-dir " + d.string());
    CHECK(h.code == 1);
}

TEST_CASE("output is deterministic") {
    Run a = run("--no-banner build-basis 36");
    Run b = run("--no-banner build-basis 36");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "determinant nonzero"));
    Run e1 = run("--no-banner --format tsv evaluate 1 9 --upto 30");
    Run e2 = run("--no-banner --format tsv evaluate 1 9 --upto 30");
    CHECK(e1.code == 0);
    CHECK(e1.out == e2.out);
    CHECK(contains(e1.out, "n\tW(n)\n1\t0\n"));
}

TEST_CASE("repr with the oracle column") {
    Run r = run("--no-banner --format tsv repr squares 1 3 --upto 20 --oracle");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "needs W for (1,3) (1,12) (3,4)"));
    CHECK(contains(r.out, "n\tN(n)\toracle\n1\t8\t8\n"));
    CHECK_FALSE(contains(r.out, " *"));
    Run h = run("--no-banner repr hex 1 5 --upto 10 --oracle");
    CHECK(h.code == 0);
}

TEST_CASE("eta search and golden") {
    Run s = run("--no-banner eta-search 16");
    CHECK(s.code == 0);
    CHECK(contains(s.out, "m_S = 3"));
    Run g = run("--no-banner golden 48");
    CHECK(g.code == 0);
    CHECK(contains(g.out, "4/4 displays reproduced"));
    CHECK(run("--no-banner golden 7").code == 3);
}
