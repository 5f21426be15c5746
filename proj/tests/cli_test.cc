// Copyright 2026 The BITE Tokenizer Authors
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

// Runs the bite binary end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bite/pipeline.h"
#include "nlohmann/json.hpp"
#include "test_support.h"

namespace bite {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') {
      q += "'\\''";
    } else {
      q += c;
    }
  }
  return q + "'";
}

// `args` is pasted into a shell command line unquoted.
CliResult Bite(const std::string& args, const std::string& stdin_text = "",
               const std::string& env = "") {
  static int counter = 0;
  const std::string base =
      testing::ScratchDir() + "/run" + std::to_string(counter++);
  testing::WriteFile(base + ".in", stdin_text);
  const std::string cmd = env + " " + Quote(BITE_CLI_PATH) + " " + args +
                          " < " + Quote(base + ".in") + " > " +
                          Quote(base + ".out") + " 2> " + Quote(base + ".err");
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = testing::ReadFile(base + ".out");
  r.err = testing::ReadFile(base + ".err");
  return r;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string ModelDirFlag() {
  return "--model-dir " + Quote(testing::SharedModelDir());
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Bite("").code, 1);
  EXPECT_EQ(Bite("frobnicate").code, 1);
  EXPECT_EQ(Bite("encode --bogus").code, 1);
  EXPECT_EQ(Bite("--help").code, 0);
  const CliResult v = Bite("--version");
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
  EXPECT_EQ(Bite(ModelDirFlag() + " --mode loud encode", "a b c\n").code, 1);
  EXPECT_EQ(Bite(ModelDirFlag() + " perturb --k 0", "a b c\n").code, 1);
}

TEST(CliTest, Preprocess) {
  const CliResult r = Bite("preprocess", "hi\nthe cat sat\n\n  x y z w  \n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "the cat sat\nx y z w\n");
  const json stats = json::parse(r.err);
  EXPECT_EQ(stats["kept"], 2);
  EXPECT_EQ(stats["dropped_blank"], 1);
  EXPECT_EQ(stats["dropped_short"], 1);

  const CliResult missing = Bite("preprocess -i /no/such/file");
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("/no/such/file"), std::string::npos);
}

TEST(CliTest, EncodeDecodeRoundTrip) {
  std::string text = "He went home .\nThe dogs were barking loudly .\n\n";
  const auto& lines = testing::GutenbergLines();
  for (size_t i = 0; i < 40; ++i) text += lines[i * 101] + "\n";
  const CliResult enc = Bite(ModelDirFlag() + " encode", text);
  ASSERT_EQ(enc.code, 0) << enc.err;
  const auto records = Lines(enc.out);
  ASSERT_EQ(records.size(), Lines(text).size());
  const json first = json::parse(records[0]);
  EXPECT_EQ(first["line_no"], 1);
  EXPECT_EQ(first["symbols"].size(), first["ids"].size());
  EXPECT_NE(
      std::find(first["symbols"].begin(), first["symbols"].end(), "[VBD]"),
      first["symbols"].end());

  const CliResult dec = Bite(ModelDirFlag() + " decode", enc.out);
  ASSERT_EQ(dec.code, 0) << dec.err;
  const auto decoded = Lines(dec.out);
  ASSERT_EQ(decoded.size(), records.size());
  EXPECT_EQ(decoded[0], "He went home.");
  EXPECT_EQ(decoded[1], "The dogs were barking loudly.");
  EXPECT_EQ(decoded[2], "");

  // Plain id lines work too, and a bad line does not stop the stream.
  const CliResult plain =
      Bite(ModelDirFlag() + " decode", "1 2\nnot ids\n999999\n\n");
  EXPECT_EQ(plain.code, 0);
  EXPECT_EQ(Lines(plain.out).size(), 4u);
  EXPECT_NE(plain.err.find("line 2"), std::string::npos);
}

TEST(CliTest, ModeOffMatchesSubwordOnly) {
  const CliResult off =
      Bite(ModelDirFlag() + " --mode off encode", "He went home .\n");
  ASSERT_EQ(off.code, 0) << off.err;
  const json j = json::parse(off.out);
  EXPECT_EQ(std::find(j["symbols"].begin(), j["symbols"].end(), "[VBD]"),
            j["symbols"].end());
  auto p =
      Pipeline::Load(PipelineConfig::ForModelDir(testing::SharedModelDir()));
  EXPECT_EQ(j["ids"],
            json((*p)->Encode("He went home .", PipelineMode::kOff)->ids));
}

TEST(CliTest, ModelDirFromEnvironmentAndConfig) {
  const CliResult env =
      Bite("encode", "He went home .\n",
           "BITE_MODEL_DIR=" + Quote(testing::SharedModelDir()));
  ASSERT_EQ(env.code, 0) << env.err;
  const std::string cfg = testing::ScratchDir() + "/cli-config.json";
  testing::WriteFile(cfg,
                     json{{"model_dir", testing::SharedModelDir()}}.dump());
  const CliResult conf =
      Bite("--config " + Quote(cfg) + " encode", "He went home .\n");
  EXPECT_EQ(conf.out, env.out);
  EXPECT_EQ(Bite(ModelDirFlag() + " encode", "He went home .\n").out, env.out);
}

TEST(CliTest, BadModelLeavesNoOutput) {
  const std::string dir = testing::ScratchDir() + "/badmodel";
  fs::create_directories(dir);
  testing::WriteFile(dir + "/tagger.model", "garbage\n");
  testing::WriteFile(dir + "/subword.json", "{}");
  const std::string out = testing::ScratchDir() + "/bad-out/enc.jsonl";
  const CliResult r =
      Bite("--model-dir " + Quote(dir) + " encode -o " + Quote(out),
           "He went home .\n");
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(Bite("--subword /no/such.json encode", "a\n").code, 3);
}

TEST(CliTest, TagFormat) {
  const CliResult r =
      Bite(ModelDirFlag() + " tag", "He went home .\nHi there\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Lines(r.out)[1], "went\tVBD");
  EXPECT_EQ(Lines(r.out)[4], "");
  EXPECT_EQ(Lines(r.out).size(), 8u);
}

TEST(CliTest, PerturbAndSimilarity) {
  const std::string text =
      "The dogs walked home .\nShe takes the older books .\n";
  const CliResult sample =
      Bite(ModelDirFlag() + " perturb --method sample --k 3 --seed 9", text);
  ASSERT_EQ(sample.code, 0) << sample.err;
  EXPECT_EQ(Lines(sample.out).size(), 6u);
  EXPECT_EQ(
      Bite(ModelDirFlag() + " perturb --method sample --k 3 --seed 9", text)
          .out,
      sample.out);
  const json rec = json::parse(Lines(sample.out)[0]);
  EXPECT_EQ(rec["clean"], "The dogs walked home .");

  const CliResult greedy = Bite(ModelDirFlag() + " perturb", text);
  ASSERT_EQ(greedy.code, 0) << greedy.err;
  EXPECT_EQ(Lines(greedy.out).size(), 2u);

  const std::string pairs = testing::ScratchDir() + "/pairs.jsonl";
  testing::WriteFile(pairs, greedy.out);
  const std::string csv = testing::ScratchDir() + "/sim.csv";
  const CliResult sim = Bite(ModelDirFlag() + " metrics similarity --pairs " +
                             Quote(pairs) + " --csv " + Quote(csv));
  ASSERT_EQ(sim.code, 0) << sim.err;
  const json report = json::parse(sim.out);
  EXPECT_EQ(report["metric_name"], "similarity");
  EXPECT_GT(report["value"].get<double>(), 0.0);
  EXPECT_LT(report["value"].get<double>(), 1.0);
  EXPECT_EQ(Lines(testing::ReadFile(csv)).size(), 2u);
}

TEST(CliTest, CoverageAndComplexityReports) {
  const std::string corpus = testing::ScratchDir() + "/cov.txt";
  testing::WriteFile(corpus, "the cat sat on the mat\nthe dogs ran\n");
  const CliResult cov = Bite(ModelDirFlag() + " metrics coverage --corpus " +
                             Quote(corpus) + " --sizes 1,2");
  ASSERT_EQ(cov.code, 0) << cov.err;
  const auto reports = Lines(cov.out);
  ASSERT_GE(reports.size(), 2u);
  for (const auto& line : reports) {
    EXPECT_EQ(json::parse(line)["metric_name"].get<std::string>().substr(0, 8),
              "coverage");
  }
  const std::string types = testing::ScratchDir() + "/types.txt";
  testing::WriteFile(types, "cat\nrunning\nzzzq\n");
  const CliResult cx =
      Bite(ModelDirFlag() + " metrics complexity --types " + Quote(types));
  ASSERT_EQ(cx.code, 0) << cx.err;
  EXPECT_GE(json::parse(cx.out)["value"].get<double>(), 3.0);
}

// Two runs of each stage write byte-identical files.
TEST(CliTest, DeterministicTraining) {
  const std::string dir = testing::ScratchDir() + "/det";
  fs::create_directories(dir);
  const std::string tagged = dir + "/train.tsv";
  {
    std::ofstream out(tagged);
    const auto& corpus = testing::OancCorpus();
    WriteTaggedCorpus(std::span(corpus.data(), 1500), out);
  }
  const std::string text = dir + "/text.txt";
  {
    std::ofstream out(text);
    const auto& lines = testing::GutenbergLines();
    for (size_t i = 0; i < 3000; ++i) out << lines[i] << "\n";
  }
  for (const char* run : {"a", "b"}) {
    const std::string d = dir + "/" + run;
    ASSERT_EQ(Bite("train-tagger --epochs 2 --corpus " + Quote(tagged) +
                   " -o " + Quote(d + "/tagger.model"))
                  .code,
              0);
    for (const char* type : {"bpe", "wordpiece", "unigram"}) {
      const CliResult r =
          Bite("--model-dir " + Quote(d) + " train-subword --corpus " +
               Quote(text) + " --vocab-size 800 --type " + type + " -o " +
               Quote(d + "/" + type + ".json"));
      ASSERT_EQ(r.code, 0) << r.err;
    }
    fs::copy_file(d + "/bpe.json", d + "/subword.json");
    ASSERT_EQ(Bite("--model-dir " + Quote(d) + " encode -i " + Quote(text) +
                   " -o " + Quote(d + "/enc.jsonl"))
                  .code,
              0);
    ASSERT_EQ(Bite("--model-dir " + Quote(d) +
                   " perturb --method sample --seed 5 -i " + Quote(text) +
                   " -o " + Quote(d + "/pert.jsonl"))
                  .code,
              0);
  }
  for (const char* f : {"tagger.model", "bpe.json", "wordpiece.json",
                        "unigram.json", "enc.jsonl", "pert.jsonl"}) {
    const std::string a = testing::ReadFile(dir + "/a/" + f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, testing::ReadFile(dir + "/b/" + f)) << f;
  }
}

}  // namespace
}  // namespace bite
