#include "common.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "spinlab/cli.hpp"

using namespace spinlab;
using namespace spinlab::testing;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int rc = run_cli(args, out, err);
    return {rc, out.str(), err.str()};
}

long data_lines(const std::string& csv) {
    long n = 0;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') ++n;
    return n - 1;  // header
}

}  // namespace

TEST_CASE("density report") {
    auto K = quintic();
    auto cfg = make_spin_config(*K, default_S(*K));
    std::vector<SpinRecord> recs;
    auto r = run_density(20000, cfg, K, 2, &recs);
    long total = 0;
    for (auto& [pat, c] : r.counts) total += c;
    CHECK(total == r.records);
    CHECK(r.records == (long)recs.size());
    CHECK(r.dof == 3);
    double f = 0;
    for (const char* p : {"++", "+-", "-+", "--"}) f += pattern_frequency(r, p);
    CHECK(f == doctest::Approx(1.0));
}

TEST_CASE("govern16 and witnesses") {
    auto E = e8();
    int r = order4_automorphism(*E, 0);
    CHECK(E->order(r) == 4);
    CHECK(order4_automorphism(*E, 1) != r);
    Govern16Options o;
    o.X = 30000;
    auto rep = run_govern16(o, *E);
    CHECK(rep.r_index == r);
    CHECK(rep.eight_rank_ok);
    CHECK(rep.split == (long)rep.rows.size());
    for (auto& row : rep.rows) {
        CHECK((row.s == 1 || row.s == -1));
        CHECK(row.p % 8 == 1);
        CHECK(two_power_rank(row.p, 4) == row.b16);
    }
    REQUIRE(rep.probes.size() == 2);
    for (auto& c : rep.probes) CHECK(c.cells == c.insufficient + c.constant + c.inconsistent);

    auto w = run_nogoverning_witness(8, 30000, 10, *E);
    CHECK(w.size() >= 10);
    for (auto& x : w) {
        CHECK(x.p < x.q);
        CHECK(x.p % 8 == x.q % 8);
        CHECK(x.b16p != x.b16q);
    }
    auto w2 = run_nogoverning_witness(8, 60000, 10, *E);
    CHECK(w2.size() >= w.size());
    CHECK_THROWS_AS(run_nogoverning_witness(480, 500, 10, *E), Error);
    CHECK_THROWS_AS(run_nogoverning_witness(4, 500, 1, *E), Error);
}

TEST_CASE("command line exit codes") {
    CHECK(cli({"validate"}).code == 0);
    CHECK(cli({"validate", "--preset", "E8"}).code == 0);
    CHECK(cli({"validate", "--preset", "nope"}).code == 2);
    CHECK(cli({"spins", "--set-S", "1,2"}).code == 2);
    CHECK(cli({"charsum", "--modulus", "16"}).code == 2);
    CHECK(cli({"nogov", "--max-norm", "500", "--witnesses", "10"}).code == 1);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("command line outputs") {
    auto empty = cli({"spins", "--max-norm", "10"});
    CHECK(empty.code == 0);
    CHECK(empty.out[0] == '#');
    CHECK(data_lines(empty.out) == 0);

    auto a = cli({"spins", "--preset", "quintic11", "--set-S", "1,2", "--max-norm", "3000"});
    auto b = cli({"spins", "--preset", "quintic11", "--set-S", "1,2", "--max-norm", "3000", "--threads", "3"});
    CHECK(a.out == b.out);
    auto d = cli({"density", "--preset", "quintic11", "--set-S", "1,2", "--max-norm", "3000"});
    CHECK(d.out.find("records=" + std::to_string(data_lines(a.out))) != std::string::npos);

    auto t2a = cli({"type2", "--x", "100", "--seed", "4"});
    auto t2b = cli({"type2", "--x", "100", "--seed", "4"});
    CHECK(t2a.out == t2b.out);

    auto t1 = cli({"type1", "--max-norm", "10000", "--x0", "1250"});
    CHECK(t1.code == 0);
    CHECK(t1.out.find("10000,-60,1567,") != std::string::npos);
    CHECK(data_lines(t1.out) == 4);

    auto cs = cli({"charsum", "--q-min", "3", "--q-max", "50"});
    CHECK(data_lines(cs.out) > 15);
    auto cr = cli({"classrank", "--max-norm", "100", "--preset", "E8"});
    CHECK(cr.out.find("41,8,8,1,1,1,0,1") != std::string::npos);

    std::string path = "spinlab_cli_test_out.csv";
    auto f = cli({"validate", "--out", path});
    CHECK(f.code == 0);
    CHECK(f.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("check,passed,detail") != std::string::npos);
    std::remove(path.c_str());
}
