// Copyright 2026 The SAC Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Runs the command-line tool as a subprocess.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

#include "sac/checkpoint.h"
#include "test_util.h"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run Sac(const std::string& args) {
  const std::string cmd = std::string(SAC_CLI_PATH) + " " + args + " 2>/dev/null";
  Run run;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) {
    run.out.append(buf.data(), n);
  }
  const int raw = pclose(pipe);
  run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return run;
}

// A corpus and a quickly trained checkpoint shared by several cases.
struct Trained {
  std::filesystem::path dir;
  std::filesystem::path corpus;
  std::filesystem::path model;
};

const Trained& TrainedModel() {
  static const Trained trained = [] {
    Trained t;
    t.dir = test::ScratchDir("cli");
    t.corpus = t.dir / "corpus.jsonl";
    t.model = t.dir / "model.satn";
    test::WriteCorpus(t.corpus, test::SyntheticPatents(300, 12));
    const auto run = Sac("train " + t.corpus.string() + " --out " + t.model.string() +
                         " --h 8 --c 6 --v-buckets 256 --max-epochs 2 --seed 3 --log " +
                         (t.dir / "log.jsonl").string());
    REQUIRE(run.status == 0);
    return t;
  }();
  return trained;
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(Sac("").status == 1);
  CHECK(Sac("frobnicate").status == 1);
  CHECK(Sac("split").status == 1);
  CHECK(Sac("gradcheck --no-such-flag").status == 1);
  CHECK(Sac("gradcheck --h abc").status == 1);
}

TEST_CASE("gradcheck prints a report") {
  const auto run = Sac("gradcheck --seed 7");
  REQUIRE(run.status == 0);
  const auto j = nlohmann::json::parse(run.out);
  CHECK(j["max_rel_error"].get<double>() < 1e-4);
  CHECK(j["worst_param"].is_string());
}

TEST_CASE("segment reads standard input") {
  const auto run = Sac("segment < " + test::DataPath("segment_golden.json").string());
  CHECK(run.status == 0);
  CHECK(nlohmann::json::parse(run.out).is_array());
}

TEST_CASE("train writes a checkpoint and a log") {
  const auto& t = TrainedModel();
  const auto ckpt = sac::LoadCheckpoint(t.model);
  CHECK(ckpt.dims.hidden == 8);
  CHECK(ckpt.vocabulary.size() == 6);
  std::ifstream log(t.dir / "log.jsonl");
  std::string line;
  int lines = 0;
  while (std::getline(log, line)) {
    CHECK(nlohmann::json::parse(line).contains("train_loss"));
    ++lines;
  }
  CHECK(lines == 2);
}

TEST_CASE("explicit flags override the config file") {
  const auto& t = TrainedModel();
  test::WriteText(t.dir / "cfg.conf", "h = 12\nc = 4\nv_buckets = 64\nmax_epochs = 1\n");
  const auto out = t.dir / "override.satn";
  const auto run = Sac("train " + t.corpus.string() + " --config " +
                       (t.dir / "cfg.conf").string() + " --h 4 --out " + out.string());
  REQUIRE(run.status == 0);
  const auto ckpt = sac::LoadCheckpoint(out);
  CHECK(ckpt.dims.hidden == 4);
  CHECK(ckpt.dims.labels == 4);
  CHECK(ckpt.dims.vocab_buckets == 64);
}

TEST_CASE("evaluate prints metrics for a split") {
  const auto& t = TrainedModel();
  const auto run = Sac("evaluate " + t.model.string() + " " + t.corpus.string() +
                       " --split test --seed 3");
  REQUIRE(run.status == 0);
  const auto j = nlohmann::json::parse(run.out);
  CHECK(j["per_class"].size() == 6);
  CHECK(j["macro"].contains("f1"));
  CHECK(j["macro"].contains("macro_f1_per_class_mean"));
  CHECK(j["micro"].contains("f1"));
}

TEST_CASE("predict emits one entry per document") {
  const auto& t = TrainedModel();
  const auto run = Sac("predict " + t.model.string() + " " + t.corpus.string() +
                       " --split all --attention");
  REQUIRE(run.status == 0);
  const auto all = nlohmann::json::parse(run.out);
  REQUIRE(all.is_array());
  CHECK(all.size() == 300);
  for (const auto& j : all) {
    CHECK(j["scores"].size() == 6);
    CHECK(j["attention"].size() == 6);
  }
}

TEST_CASE("vocabulary, split and stats") {
  const auto& t = TrainedModel();
  const auto vocab = Sac("build-vocab " + t.corpus.string() + " --c 3");
  REQUIRE(vocab.status == 0);
  CHECK(nlohmann::json::parse(vocab.out)["codes"].size() == 3);

  const auto split = Sac("split " + t.corpus.string() + " --seed 42");
  REQUIRE(split.status == 0);
  const auto s = nlohmann::json::parse(split.out);
  CHECK(s["train"].size() + s["validation"].size() + s["test"].size() == 300);

  const auto stats = Sac("stats " + t.corpus.string() + " --c 4");
  REQUIRE(stats.status == 0);
  const auto j = nlohmann::json::parse(stats.out);
  CHECK(j.contains("dropped"));
  CHECK(j.size() == 4 + 2);
}

TEST_CASE("pipeline failures exit 2") {
  const auto& t = TrainedModel();
  auto records = test::SyntheticPatents(40, 1);
  for (auto& r : records) r.ipc_codes = {"Z11Z 1/00"};
  test::WriteCorpus(t.dir / "nolabels.jsonl", records);
  CHECK(Sac("train " + (t.dir / "nolabels.jsonl").string() + " --out " +
            (t.dir / "x.satn").string()).status == 2);

  test::WriteText(t.dir / "garbage.satn", "not a checkpoint");
  CHECK(Sac("evaluate " + (t.dir / "garbage.satn").string() + " " +
            t.corpus.string()).status == 2);
  CHECK(Sac("stats /nonexistent/corpus.jsonl").status == 2);
}

TEST_CASE("identical invocations give identical outputs") {
  const auto& t = TrainedModel();
  const std::string common = t.corpus.string() + " --h 8 --c 6 --v-buckets 256 --max-epochs 2 --seed 3 --out ";
  REQUIRE(Sac("train " + common + (t.dir / "again.satn").string()).status == 0);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(t.model) == slurp(t.dir / "again.satn"));
  const std::string predict = "predict " + t.model.string() + " " + t.corpus.string();
  CHECK(Sac(predict).out == Sac(predict).out);
}
