// Copyright 2026 The vmgbs Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.h"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = vmgbs::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("vmgbs_cli_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string &name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"gen-dataset", "--out", "/tmp/x.jsonl"}).code == 2);  // missing seed
    CHECK(run({"gen-dataset", "--seed", "1", "--unknown", "2"}).code == 2);
    CHECK(run({"gen-dataset", "--seed", "abc", "--out", "/tmp/x"}).code == 2);
    CHECK(run({"verify"}).code == 2);
    CHECK(run({"gen-dataset", "--help"}).code == 0);
}

TEST_CASE("I/O errors exit with 1") {
    CHECK(run({"train", "--seed", "1", "--data", "/nonexistent/d.jsonl", "--out", "/tmp/m.json"}).code == 1);
    CHECK(run({"gen-dataset", "--seed", "1", "--pos", "2", "--neg", "2", "--out", "/nonexistent/dir/x"}).code == 1);
    CHECK(run({"gen-dataset", "--config", "/nonexistent/c.json", "--out", "/tmp/x"}).code == 1);
}

TEST_CASE("dataset, training, evaluation and verification round trip") {
    TempDir dir;
    const std::string ds = dir / "ds.jsonl";
    Result r = run({"gen-dataset", "--seed", "5", "--parent", "7", "--pos", "12", "--neg", "12", "--out", ds});
    REQUIRE(r.code == 0);
    auto manifest = nlohmann::json::parse(slurp(ds + ".manifest.json"));
    CHECK(manifest["command"] == "gen-dataset");
    CHECK(manifest["seed"] == 5);
    CHECK(manifest.contains("config_digest"));
    CHECK(manifest.contains("code_version"));
    CHECK(manifest["outputs"].size() == 1);

    // Byte-identical on re-run.
    const std::string ds2 = dir / "ds2.jsonl";
    REQUIRE(run({"gen-dataset", "--seed", "5", "--parent", "7", "--pos", "12", "--neg", "12", "--out", ds2}).code == 0);
    CHECK(slurp(ds) == slurp(ds2));

    for (std::string kind : {"spectral", "gbs-sample", "wl", "graphlet", "shortest-path"}) {
        CAPTURE(kind);
        const std::string model = dir / (kind + ".json");
        r = run({"train", "--seed", "2", "--data", ds, "--kind", kind, "--samples-per-pair", "2", "--out", model});
        REQUIRE(r.code == 0);
        auto mm = nlohmann::json::parse(slurp(model + ".manifest.json"));
        CHECK(mm["inputs"].size() == 1);
        const int trials = (kind == "spectral" || kind == "gbs-sample") ? 5 : 1;
        const std::string out = dir / (kind + ".csv");
        r = run({"eval", "--seed", "3", "--model", model, "--data", ds, "--trials", std::to_string(trials), "--out",
                 out});
        REQUIRE(r.code == 0);
        const std::string first = slurp(out);
        CHECK(first.rfind("pair,label,prediction,correct,votes_plus,votes_minus\n", 0) == 0);
        std::istringstream votes(slurp(out + ".votes.csv"));
        std::string line;
        int rows = 0;
        while (std::getline(votes, line)) ++rows;
        CHECK(rows == 1 + 24 * trials);
        REQUIRE(run({"eval", "--seed", "3", "--model", model, "--data", ds, "--trials", std::to_string(trials),
                     "--out", out})
                    .code == 0);
        CHECK(slurp(out) == first);
    }
    CHECK(run({"eval", "--seed", "3", "--model", dir / "wl.json", "--data", ds, "--trials", "3", "--out",
               dir / "bad.csv"})
              .code == 2);
    CHECK(run({"eval", "--seed", "3", "--model", dir / "spectral.json", "--data", ds, "--trials", "4", "--out",
               dir / "bad.csv"})
              .code == 2);
    CHECK(fs::exists(dir / "wl.json.gram.csv"));

    r = run({"verify", "--data", ds});
    CHECK(r.code == 0);
    CHECK(r.out.find("0 label mismatches") != std::string::npos);

    // A flipped label is caught.
    std::string text = slurp(ds);
    auto pos = text.find("\"label\":1");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 9, "\"label\":0");
    std::ofstream(dir / "flipped.jsonl") << text;
    CHECK(run({"verify", "--data", dir / "flipped.jsonl"}).code == 3);
}

TEST_CASE("program dump and sample stream") {
    TempDir dir;
    const std::string prog = dir / "prog.json";
    Result r = run({"verify", "--graph", "4;0-1,1-2,2-3,3-0", "--samples", "25", "--seed", "1", "--out", prog});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(slurp(prog));
    CHECK(j["unitary"].size() == 4);
    CHECK(j["squeezings"].size() == 4);
    CHECK(j["mesh"].size() == 6);
    std::istringstream csv(slurp(prog + ".samples.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "sample,m0,m1,m2,m3");
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 25);
    CHECK(run({"verify", "--graph", "{\"n\":3,\"edges\":[[0,1]]}"}).code == 0);
    CHECK(run({"verify", "--graph", "3;0-7"}).code == 2);
    CHECK(run({"verify", "--graph", "3;0-1", "--samples", "3"}).code == 2);
}

TEST_CASE("config file mirrors flags and flags win") {
    TempDir dir;
    const std::string cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"seed": 11, "parent": 7, "pos": 4, "neg": 4})";
    const std::string out = dir / "a.jsonl";
    REQUIRE(run({"gen-dataset", "--config", cfg, "--neg", "2", "--out", out}).code == 0);
    auto m = nlohmann::json::parse(slurp(out + ".manifest.json"));
    CHECK(m["seed"] == 11);
    CHECK(m["config"]["neg"] == 2);
    CHECK(m["config"]["pos"] == 4);
    CHECK(m["pairs"] == 6);

    std::ofstream(dir / "bad.json") << R"({"seed": 1, "nonsense": 3})";
    CHECK(run({"gen-dataset", "--config", dir / "bad.json", "--out", out}).code == 2);
    std::ofstream(dir / "typed.json") << R"({"seed": "one"})";
    CHECK(run({"gen-dataset", "--config", dir / "typed.json", "--out", out}).code == 2);
}

TEST_CASE("sweep and runtime-model write CSV with manifests") {
    TempDir dir;
    const std::string sweep = dir / "sweep.csv";
    std::vector<std::string> args{"sweep", "--seed", "4", "--pos", "10", "--neg", "10", "--eval-pairs", "2",
                                  "--squeeze-grid", "3,8", "--loss-grid", "0", "--trials", "7",
                                  "--samples-per-pair", "2", "--repetitions", "1", "--out", sweep};
    REQUIRE(run(args).code == 0);
    const std::string first = slurp(sweep);
    CHECK(first.rfind("squeeze_db,loss_db,n_required,accuracy_at_cap", 0) == 0);
    REQUIRE(run(args).code == 0);
    CHECK(slurp(sweep) == first);
    CHECK(fs::exists(sweep + ".manifest.json"));
    CHECK(run({"sweep", "--seed", "4", "--squeeze-grid", "3,x", "--out", sweep}).code == 2);

    const std::string rt = dir / "runtime.csv";
    REQUIRE(run({"runtime-model", "--seed", "2", "--min-n", "6", "--max-n", "6", "--pos", "8", "--neg", "8",
                 "--eval-pairs", "2", "--trials", "3", "--samples-per-pair", "2", "--repetitions", "1", "--out", rt})
                .code == 0);
    auto m = nlohmann::json::parse(slurp(rt + ".manifest.json"));
    CHECK(m.contains("host"));
    CHECK(slurp(rt).rfind("n,n_c,n_q", 0) == 0);
}
