#include "kfactor/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <sstream>

using kfactor::cli::run_cli;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("kfactor-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("bound subcommands print exact rationals") {
    auto res = run({"bound", "f-rt", "--s", "5"});
    REQUIRE(res.code == 0);
    REQUIRE(res.out == "1/2\n");
    REQUIRE(run({"bound", "f-rt", "--s", "6"}).out == "4/7\n");
    REQUIRE(run({"bound", "threshold", "--r", "5"}).out == "4/7\n");
    REQUIRE(run({"bound", "rt-edge", "--ell", "6", "--n", "10"}).out == "200/7\n");
    REQUIRE(run({"bound", "rt-edge", "--ell", "5", "--n", "10"}).code == 1);
}

TEST_CASE("usage errors exit 1") {
    REQUIRE(run({"frobnicate"}).code == 1);
    REQUIRE(run({"check", "factor"}).code == 1);  // missing required flags
    REQUIRE(run({"check", "factor", "--graph", "/nonexistent/file", "--r", "3"}).code == 1);
}

TEST_CASE("gen + check factor round trip through files") {
    TempDir tmp;
    auto g = tmp.file("two.txt");
    auto gen = run({"gen", "two-cliques", "--n", "12", "--r", "4", "--out", g});
    REQUIRE(gen.code == 0);
    REQUIRE(gen.out.find("claims-fail: 0") != std::string::npos);

    auto factor = run({"check", "factor", "--graph", g, "--r", "4"});
    REQUIRE(factor.code == 0);
    REQUIRE(factor.out.find("outcome: no-factor") != std::string::npos);

    auto manifest = run({"check", "manifest", "--graph", g, "--manifest", g + ".manifest"});
    REQUIRE(manifest.code == 0);

    // a certificate block appears when a factor exists
    auto k8 = tmp.file("k8.txt");
    std::ostringstream text;
    text << "p edge 8 28\n";
    for (int u = 1; u <= 8; ++u)
        for (int v = u + 1; v <= 8; ++v) text << "e " << u << " " << v << "\n";
    kfactor::write_file(k8, text.str());
    auto found = run({"check", "factor", "--graph", k8, "--r", "4"});
    REQUIRE(found.code == 0);
    REQUIRE(found.out.find("outcome: factor-found") != std::string::npos);
    REQUIRE(found.out.find("factor:") != std::string::npos);
}

TEST_CASE("manifest check exits 2 when an exact claim is refuted") {
    TempDir tmp;
    auto g = tmp.file("k4.txt");
    kfactor::write_file(g, "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
    auto m = tmp.file("bad.manifest");
    kfactor::write_file(m, "manifest 1\nname bad\nclaim exact ks-free 3 true\n");
    auto res = run({"check", "manifest", "--graph", g, "--manifest", m});
    REQUIRE(res.code == 2);
    REQUIRE(res.out.find("FAIL") != std::string::npos);
}

TEST_CASE("identical invocations give byte-identical reports") {
    TempDir tmp;
    auto g1 = tmp.file("er1.txt");
    auto gen_args = std::vector<std::string>{"gen",  "er",     "--n",   "40",  "--alpha", "0.4",
                                           "--eps", "0.3",   "--seed", "5",  "--out",   g1};
    auto first = run(gen_args);
    auto g1_content = kfactor::read_file(g1);
    auto second = run(gen_args);
    REQUIRE(first.code == 0);
    REQUIRE(first.out == second.out);
    REQUIRE(kfactor::read_file(g1) == g1_content);

    // different seed, different graph
    auto g2 = tmp.file("er2.txt");
    run({"gen", "er", "--n", "40", "--alpha", "0.4", "--eps", "0.3", "--seed", "6", "--out", g2});
    REQUIRE(kfactor::read_file(g2) != g1_content);
}

TEST_CASE("reduce and tile pipeline work end to end") {
    TempDir tmp;
    auto g = tmp.file("k16.txt");
    std::ostringstream text;
    text << "p edge 16 120\n";
    for (int u = 1; u <= 16; ++u)
        for (int v = u + 1; v <= 16; ++v) text << "e " << u << " " << v << "\n";
    kfactor::write_file(g, text.str());
    auto part = tmp.file("part.txt");
    kfactor::write_file(part, "p part 16 2\n1 2 3 4 5 6 7 8\n9 10 11 12 13 14 15 16\n");

    auto mg = tmp.file("reduced.txt");
    auto reduce = run({"reduce", "--graph", g, "--partition", part, "--out-multigraph", mg});
    REQUIRE(reduce.code == 0);
    REQUIRE(reduce.out.find("density 1,2: 1 -> mult 2") != std::string::npos);

    auto k2k3 = run({"tile", "k2k3", "--multigraph", mg, "--mu", "0.5"});
    REQUIRE(k2k3.code == 0);
    REQUIRE(k2k3.out.find("mu-bound-ok: true") != std::string::npos);

    auto local = run({"tile", "k2k3", "--multigraph", mg, "--local", "--seed", "3"});
    REQUIRE(local.code == 0);
    REQUIRE(local.out.find("mode: local") != std::string::npos);

    auto tiling = tmp.file("tiling.txt");
    auto pipe = run({"tile", "pipeline", "--graph", g, "--partition", part, "--r", "4",
                     "--out-tiling", tiling});
    REQUIRE(pipe.code == 0);
    REQUIRE(pipe.out.find("covered: 16") != std::string::npos);
    REQUIRE(pipe.out.find("tiling-verified: true") != std::string::npos);

    auto check = run({"check", "tiling", "--graph", g, "--tiling", tiling});
    REQUIRE(check.code == 0);
    REQUIRE(check.out.find("valid: true") != std::string::npos);

    // corrupting the tiling flips the check to exit 2
    kfactor::write_file(tiling, "kr 1 2 3 4\nkr 4 5 6 7\n");
    auto bad = run({"check", "tiling", "--graph", g, "--tiling", tiling});
    REQUIRE(bad.code == 2);
}

TEST_CASE("absorb verbs run and re-verify") {
    TempDir tmp;
    auto g = tmp.file("k16.txt");
    std::ostringstream text;
    text << "p edge 16 120\n";
    for (int u = 1; u <= 16; ++u)
        for (int v = u + 1; v <= 16; ++v) text << "e " << u << " " << v << "\n";
    kfactor::write_file(g, text.str());

    auto abs = run({"absorb", "absorbers", "--graph", g, "--s", "1 2 3 4", "--want", "2"});
    REQUIRE(abs.code == 0);
    REQUIRE(abs.out.find("found: 2") != std::string::npos);
    REQUIRE(abs.out.find("re-verified") != std::string::npos);

    auto reach = run({"absorb", "reach", "--graph", g, "--u", "1", "--v", "2", "--r", "4", "--m",
                      "2", "--w", "3 4"});
    REQUIRE(reach.code == 0);
    REQUIRE(reach.out.find("reachable: true") != std::string::npos);

    auto build = run({"absorb", "build", "--graph", g, "--r", "4", "--gamma", "0.5", "--xi",
                      "0.25", "--seed", "7"});
    REQUIRE(build.code == 0);
    REQUIRE(build.out.find("size-ok: true") != std::string::npos);

    auto check = run({"absorb", "check", "--graph", g, "--set", "1 2 3 4", "--r", "4", "--xi",
                      "0.25"});
    REQUIRE(check.code == 0);
    REQUIRE(check.out.find("verdict: proven") != std::string::npos);

    // an absorbing-set refutation exits 2 with a counterexample
    auto iso = tmp.file("iso.txt");
    kfactor::write_file(iso, "p edge 8 21\ne 1 2\ne 1 3\ne 1 4\ne 1 5\ne 1 6\ne 1 7\ne 2 3\ne 2 4\n"
                             "e 2 5\ne 2 6\ne 2 7\ne 3 4\ne 3 5\ne 3 6\ne 3 7\ne 4 5\ne 4 6\n"
                             "e 4 7\ne 5 6\ne 5 7\ne 6 7\n");
    auto refuted = run({"absorb", "check", "--graph", iso, "--set", "", "--r", "4", "--xi", "0.6"});
    REQUIRE(refuted.code == 2);
    REQUIRE(refuted.out.find("verdict: refuted") != std::string::npos);
    REQUIRE(refuted.out.find("counterexample:") != std::string::npos);
}

TEST_CASE("lattice verb reports vectors and merging") {
    TempDir tmp;
    auto g = tmp.file("k16.txt");
    std::ostringstream text;
    text << "p edge 16 120\n";
    for (int u = 1; u <= 16; ++u)
        for (int v = u + 1; v <= 16; ++v) text << "e " << u << " " << v << "\n";
    kfactor::write_file(g, text.str());
    auto part = tmp.file("part.txt");
    kfactor::write_file(part, "p part 16 2\n1 2 3 4 5 6 7 8\n9 10 11 12 13 14 15 16\n");
    auto res = run({"absorb", "lattice", "--graph", g, "--partition", part, "--r", "4", "--mu",
                    "0.05", "--mode", "exact"});
    REQUIRE(res.code == 0);
    REQUIRE(res.out.find("transferral: true") != std::string::npos);
    REQUIRE(res.out.find("parts-after: 1") != std::string::npos);
}

TEST_CASE("config line is embedded for replay") {
    auto res = run({"bound", "f-rt", "--s", "5"});
    REQUIRE(res.out.find("config:") == std::string::npos);  // bound prints the bare value
    TempDir tmp;
    auto g = tmp.file("g.txt");
    kfactor::write_file(g, "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    auto check = run({"check", "min-degree", "--graph", g});
    REQUIRE(check.out.rfind("config: kfactor check min-degree --graph ", 0) == 0);
}
