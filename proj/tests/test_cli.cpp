/*
   Copyright 2026 The radialkit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string("\"") + RADIALKIT_CLI + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, got);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        out.push_back(line);
    }
    return out;
}

} // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run("").code == 2);
    CHECK(run("tables --family kahler --m 0").code == 2);
    CHECK(run("tables --family riemann --m 1").code == 2);
    CHECK(run("validate --level fast").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("domain errors exit with 3") {
    CHECK(run("eigs --family kahler --m 1 --k 1 --R 2").code == 3);
    CHECK(run("sde --family kahler --m 1 --R 1 --r0 1.5 --paths 10").code == 3);
}

TEST_CASE("tables") {
    const auto k = run("tables --family kahler --m 2");
    REQUIRE(k.code == 0);
    CHECK(k.out.find("level 1: 12") != std::string::npos);
    const auto q = run("tables --family quaternion --m 1");
    REQUIRE(q.code == 0);
    CHECK(q.out.find("(Q, Ric_perp) = (12, 0)") != std::string::npos);
    CHECK(q.out.find("r,drift_k=-1,density_k=-1") != std::string::npos);
}

TEST_CASE("eigs") {
    const auto flat = run("eigs --family kahler --m 1 --k 0 --R 1 --n 512");
    REQUIRE(flat.code == 0);
    const auto l = lines(flat.out);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == "level,eigenvalue,error_estimate");
    CHECK(std::stod(l[1].substr(2)) == doctest::Approx(5.783185962946784).epsilon(1e-6));

    const auto closed = run("eigs --family kahler --m 2 --k 1 --R 1.5707963267948966 --closed --count 1 --n 512");
    REQUIRE(closed.code == 0);
    const auto c = lines(closed.out);
    REQUIRE(c.size() == 3);
    CHECK(std::abs(std::stod(c[1].substr(2))) < 1e-6);
    CHECK(std::stod(c[2].substr(2)) == doctest::Approx(12.0).epsilon(1e-6));
}

TEST_CASE("heat") {
    const auto h = run("heat --family quaternion --m 1 --k -1 --R 1 --t 0.2 --n 256");
    REQUIRE(h.code == 0);
    const auto l = lines(h.out);
    REQUIRE(l.size() == 257);
    CHECK(l[0] == "r,q_spectral,q_fd,difference,symmetry,ground_ratio_minus_one");
}

TEST_CASE("sde output is reproducible") {
    const std::string args = "sde --family kahler --m 1 --k -1 --R 1 --t 0.1 --paths 500 --dt 1e-3 --pde-n 256 --seed 4";
    const auto a = run(args + " --threads 1");
    const auto b = run(args + " --threads 2");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(lines(a.out)[0] == "quantity,t,s,mc_estimate,std_error,std_error_bound,reference,difference");
    CHECK(run(args + " --seed 5").out != a.out);
    CHECK(run("sde --family kahler --m 1 --R 1 --t 0.01 --paths 1 --dt 1e-3 --pde-n 64").code == 0);
}
