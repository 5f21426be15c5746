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

#include "bite/c_api.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <thread>

#include "bite/pipeline.h"
#include "bite/version.h"
#include "test_support.h"

namespace bite {
namespace {

using json = nlohmann::ordered_json;

// Takes ownership of a returned string.
json Call(char* out) {
  EXPECT_NE(out, nullptr);
  json j = json::parse(out);
  bite_string_free(out);
  return j;
}

class CApiTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    const json config = {{"model_dir", testing::SharedModelDir()}};
    char* error = nullptr;
    handle_ = bite_pipeline_load(config.dump().c_str(), &error);
    ASSERT_NE(handle_, nullptr) << (error ? error : "");
    EXPECT_EQ(error, nullptr);
  }
  static void TearDownTestSuite() { bite_pipeline_free(handle_); }

  static bite_pipeline* handle_;
};
bite_pipeline* CApiTest::handle_ = nullptr;

TEST(CApiVersionTest, MatchesHeader) {
  EXPECT_STREQ(bite_version(), BITE_VERSION_STRING);
}

TEST(CApiLoadTest, FailuresReportJson) {
  char* error = nullptr;
  EXPECT_EQ(bite_pipeline_load("{\"tagger\": \"/no/such/file\"}", &error),
            nullptr);
  ASSERT_NE(error, nullptr);
  const json e = Call(error);
  EXPECT_TRUE(e["error"]["code"].is_string());
  EXPECT_TRUE(e["error"]["message"].is_string());

  EXPECT_EQ(bite_pipeline_load("not json", nullptr), nullptr);
  error = nullptr;
  EXPECT_EQ(bite_pipeline_load("{\"colour\": \"red\"}", &error), nullptr);
  EXPECT_EQ(Call(error)["error"]["code"], "INVALID_ARGUMENT");
  bite_pipeline_free(nullptr);
}

TEST_F(CApiTest, EncodeDecodeTag) {
  const json enc = Call(bite_encode(handle_, R"({"text": "He went home ."})"));
  ASSERT_TRUE(enc.contains("ids")) << enc;
  EXPECT_EQ(enc["symbols"].size(), enc["ids"].size());

  // Same answer as the C++ pipeline.
  auto p =
      Pipeline::Load(PipelineConfig::ForModelDir(testing::SharedModelDir()));
  EXPECT_EQ(enc, EncodedToJson(*(*p)->Encode("He went home .")));

  json req;
  req["ids"] = enc["ids"];
  const json dec = Call(bite_decode(handle_, req.dump().c_str()));
  EXPECT_EQ(dec["tokens"], json({"He", "went", "home", "."}));
  EXPECT_EQ(dec["text"], "He went home.");

  const json off = Call(
      bite_encode(handle_, R"({"text": "He went home .", "mode": "off"})"));
  EXPECT_EQ(off,
            EncodedToJson(*(*p)->Encode("He went home .", PipelineMode::kOff)));

  const json tag = Call(bite_tag(handle_, R"({"text": "He went home ."})"));
  EXPECT_EQ(tag["tokens"][1], json({{"surface", "went"}, {"tag", "VBD"}}));
}

TEST_F(CApiTest, Perturb) {
  const json r = Call(bite_perturb(
      handle_,
      R"({"text": "The dogs walked home .", "method": "sample", "k": 2, "seed": 3})"));
  ASSERT_EQ(r["records"].size(), 2u) << r;
  EXPECT_EQ(r["records"][0]["clean"], "The dogs walked home .");
  const json again = Call(bite_perturb(
      handle_,
      R"({"text": "The dogs walked home .", "method": "sample", "k": 2, "seed": 3})"));
  EXPECT_EQ(r, again);
}

TEST_F(CApiTest, ErrorsAreJson) {
  auto code = [](char* out) { return Call(out)["error"]["code"]; };
  EXPECT_EQ(code(bite_encode(handle_, "{")), "INVALID_ARGUMENT");
  EXPECT_EQ(code(bite_encode(handle_, "[1]")), "INVALID_ARGUMENT");
  EXPECT_EQ(code(bite_encode(handle_, "{}")), "INVALID_ARGUMENT");
  EXPECT_EQ(code(bite_encode(handle_, R"({"text": 5})")), "INVALID_ARGUMENT");
  EXPECT_EQ(code(bite_encode(handle_, R"({"text": "a", "mode": "x"})")),
            "INVALID_ARGUMENT");
  EXPECT_EQ(code(bite_encode(handle_, nullptr)), "INVALID_ARGUMENT");
  EXPECT_EQ(code(bite_encode(nullptr, R"({"text": "a"})")), "INVALID_ARGUMENT");
  EXPECT_EQ(code(bite_decode(handle_, R"({"ids": [999999]})")), "OUT_OF_RANGE");
  EXPECT_EQ(code(bite_perturb(handle_, R"({"text": "a", "method": "best"})")),
            "INVALID_ARGUMENT");
  const json accented =
      Call(bite_encode(handle_, "{\"text\": \"caf\\u00e9\"}"));
  EXPECT_TRUE(accented.contains("ids"));
}

TEST_F(CApiTest, ConcurrentCallsAgreeWithSerialOnes) {
  const auto& lines = testing::GutenbergLines();
  std::vector<std::string> serial;
  for (size_t i = 0; i < 64; ++i) {
    const json req = {{"text", lines[i * 31]}};
    char* out = bite_encode(handle_, req.dump().c_str());
    serial.emplace_back(out);
    bite_string_free(out);
  }
  std::vector<std::string> parallel(serial.size());
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (size_t i = t; i < serial.size(); i += 4) {
        const json req = {{"text", lines[i * 31]}};
        char* out = bite_encode(handle_, req.dump().c_str());
        parallel[i] = out;
        bite_string_free(out);
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(parallel, serial);
}

}  // namespace
}  // namespace bite
