// Copyright 2026 The opmean authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "opmean/cli_runner.hpp"
#include "opmean/json_io.hpp"
#include "testutil.hpp"

using namespace opmean;
using namespace opmean::test;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("opmean_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name, const std::string& content) const {
        const fs::path p = path / name;
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p.string();
    }
    std::string read(const std::string& name) const {
        std::ifstream in(path / name, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};

const char* kDiagHalf = R"({"dim": 2, "re": [0.5, 0, 0, 0.5]})";
const char* kSigmaOne = R"({"dim": 2, "re": [0.25, 0, 0, 0.75]})";

}  // namespace

TEST_CASE("matrix json round trip") {
    const Mat m = read_matrix_json(R"({"dim":2,"re":[1,2,2,5],"im":[0,1,-1,0]})");
    CHECK(m(0, 1) == complexd(2.0, 1.0));
    CHECK(m(1, 0) == complexd(2.0, -1.0));
    const std::string dumped = matrix_to_json(m);
    const Mat back = read_matrix_json(dumped);
    CHECK(max_abs_diff(m, back) == 0.0);
    CHECK_THROWS_AS(read_matrix_json(R"({"dim":2,"re":[1,2,3]})"), InputError);
    CHECK_THROWS_AS(read_matrix_json("not json"), InputError);
    CHECK_THROWS_AS(read_psd_json(R"({"dim":2,"re":[1,0,0,-1]})"), InputError);
}

TEST_CASE("cpmap and instance json") {
    const CpMap id = read_cpmap_json(R"({"kraus":[{"dim":2,"re":[1,0,0,1]}]})");
    CHECK(id.dim_in() == 2);
    CHECK(id.is_trace_preserving());
    const auto inst = read_instance_json(R"({"f":[1,1],"g":[[0.1,10],[10,0.1]]})");
    CHECK(inst.x_size() == 2);
    CHECK(inst.g[1][0] == 10.0);
    CHECK_THROWS_AS(read_instance_json(R"({"f":[1],"g":[[1,-2]]})"), InputError);
    CHECK_THROWS_AS(read_cpmap_json(R"({"dim_in":2})"), InputError);
}

TEST_CASE("deterministic report serialization") {
    JsonWriter w;
    w.begin_object();
    w.key("value");
    w.value(1.0 / 3.0);
    w.key("arr");
    w.begin_array();
    w.value(2.0);
    w.value(true);
    w.value("x\"y");
    w.end_array();
    w.end_object();
    CHECK(w.str() == "{\"value\":0.33333333333333331,\"arr\":[2,true,\"x\\\"y\"]}");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "\"inf\"");
}

TEST_CASE("cli means and divergence commands") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = RunConfig::Command::Means;
    cfg.inputs = {tmp.file("a.json", kDiagHalf), tmp.file("b.json", kSigmaOne)};
    cfg.kind = "ka";
    cfg.t = 0.5;
    cfg.out_dir = (tmp.path / "out").string();
    CHECK(run(cfg) == 0);
    const std::string report = tmp.read("out/means.json");
    CHECK(report.find("\"result\"") != std::string::npos);

    RunConfig div;
    div.command = RunConfig::Command::Divergence;
    div.inputs = cfg.inputs;
    div.kind = "hoeffding-star";
    div.r = 0.5;
    div.out_dir = (tmp.path / "out2").string();
    CHECK(run(div) == 0);
    CHECK(tmp.read("out2/divergence.json").find("maximizer_alpha") !=
          std::string::npos);
}

TEST_CASE("cli reports are byte-identical across runs") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = RunConfig::Command::AppendixA;
    cfg.k = 2;
    cfg.r = 0.9;
    cfg.seed = 7;
    cfg.out_dir = (tmp.path / "r1").string();
    CHECK(run(cfg) == 0);
    cfg.out_dir = (tmp.path / "r2").string();
    CHECK(run(cfg) == 0);
    const std::string r1 = tmp.read("r1/appendix-a.json");
    const std::string r2 = tmp.read("r2/appendix-a.json");
    CHECK(!r1.empty());
    CHECK(r1 == r2);

    RunConfig mem;
    mem.command = RunConfig::Command::Membership;
    mem.inputs = {tmp.file("c.json", kDiagHalf), tmp.file("a1.json", kDiagHalf),
                  tmp.file("a2.json", kSigmaOne)};
    mem.seed = 42;
    mem.out_dir = (tmp.path / "m1").string();
    CHECK(run(mem) == 0);
    mem.out_dir = (tmp.path / "m2").string();
    CHECK(run(mem) == 0);
    CHECK(tmp.read("m1/membership.json") == tmp.read("m2/membership.json"));

    // The bounds sweep runs a parallel grid map; the report must still be
    // byte-stable.
    RunConfig bounds;
    bounds.command = RunConfig::Command::Bounds;
    bounds.inputs = {tmp.file("r1.json", kDiagHalf), tmp.file("r2.json", kSigmaOne),
                     tmp.file("s1.json", kSigmaOne),
                     tmp.file("s2.json", R"({"dim":2,"re":[0.75,0,0,0.25]})")};
    bounds.r = 0.5;
    bounds.grid = 15;
    bounds.format = "csv";
    bounds.out_dir = (tmp.path / "b1").string();
    CHECK(run(bounds) == 0);
    bounds.out_dir = (tmp.path / "b2").string();
    CHECK(run(bounds) == 0);
    const std::string b1 = tmp.read("b1/bounds.csv");
    CHECK(!b1.empty());
    CHECK(b1 == tmp.read("b2/bounds.csv"));
}

TEST_CASE("cli error paths") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = RunConfig::Command::Means;
    cfg.inputs = {tmp.file("bad.json", "{\"dim\": 2, \"re\": [1, 2]}"),
                  tmp.file("b.json", kSigmaOne)};
    CHECK(run(cfg) == 1);  // malformed input

    RunConfig missing;
    missing.command = RunConfig::Command::Divergence;
    missing.inputs = {(tmp.path / "absent.json").string(),
                      (tmp.path / "absent2.json").string()};
    missing.kind = "relative";
    CHECK(run(missing) == 1);

    RunConfig appa;
    appa.command = RunConfig::Command::AppendixA;
    appa.k = 1;
    appa.r = 0.01;  // below the k log(2/sqrt 3) threshold
    CHECK(run(appa) == 1);
}

TEST_CASE("cli csv output carries the schema header") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = RunConfig::Command::AppendixA;
    cfg.k = 1;
    cfg.r = 0.5;
    cfg.format = "csv";
    cfg.out_dir = (tmp.path / "csv").string();
    CHECK(run(cfg) == 0);
    const std::string csv = tmp.read("csv/appendix-a.csv");
    CHECK(csv.rfind("# opmean-report-v1", 0) == 0);
    CHECK(csv.find("mixture_sc,") != std::string::npos);
}
