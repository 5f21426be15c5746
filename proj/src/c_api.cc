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

#include <cstdlib>
#include <cstring>
#include <memory>

#include "absl/status/status.h"
#include "bite/pipeline.h"
#include "bite/pretokenizer.h"
#include "bite/version.h"
#include "nlohmann/json.hpp"

struct bite_pipeline {
  std::unique_ptr<bite::Pipeline> impl;
};

namespace {

using json = nlohmann::ordered_json;

char* CopyOut(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

char* Dump(const json& j) {
  return CopyOut(j.dump(-1, ' ', false, json::error_handler_t::replace));
}

json ErrorJson(const absl::Status& status) {
  json err;
  err["code"] = absl::StatusCodeToString(status.code());
  err["message"] = std::string(status.message());
  json j;
  j["error"] = std::move(err);
  return j;
}

absl::StatusOr<json> ParseRequest(const char* text) {
  if (text == nullptr) return absl::InvalidArgumentError("null request");
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("request must be a JSON object");
  }
  return j;
}

absl::StatusOr<bite::PipelineMode> ModeOf(const bite::Pipeline& p,
                                          const json& request) {
  if (!request.contains("mode")) return p.config().mode;
  return bite::ParsePipelineMode(request["mode"].get<std::string>());
}

// Runs `body` with a parsed request and turns failures into error JSON.
template <typename Body>
char* Handle(const bite_pipeline* pipeline, const char* request_json,
             Body body) {
  try {
    if (pipeline == nullptr || !pipeline->impl) {
      return Dump(ErrorJson(absl::InvalidArgumentError("null pipeline")));
    }
    absl::StatusOr<json> request = ParseRequest(request_json);
    if (!request.ok()) return Dump(ErrorJson(request.status()));
    absl::StatusOr<json> response = body(*pipeline->impl, *request);
    if (!response.ok()) return Dump(ErrorJson(response.status()));
    return Dump(*response);
  } catch (const json::exception& e) {
    return Dump(ErrorJson(absl::InvalidArgumentError(e.what())));
  } catch (const std::exception& e) {
    return Dump(ErrorJson(absl::InternalError(e.what())));
  }
}

}  // namespace

extern "C" {

const char* bite_version(void) { return BITE_VERSION_STRING; }

bite_pipeline* bite_pipeline_load(const char* config_json, char** error_json) {
  auto fail = [error_json](const absl::Status& s) -> bite_pipeline* {
    if (error_json != nullptr) *error_json = Dump(ErrorJson(s));
    return nullptr;
  };
  if (error_json != nullptr) *error_json = nullptr;
  try {
    absl::StatusOr<json> request = ParseRequest(config_json);
    if (!request.ok()) return fail(request.status());
    absl::StatusOr<bite::PipelineConfig> config =
        bite::PipelineConfig::FromJson(*request);
    if (!config.ok()) return fail(config.status());
    absl::StatusOr<std::unique_ptr<bite::Pipeline>> p =
        bite::Pipeline::Load(*config);
    if (!p.ok()) return fail(p.status());
    return new bite_pipeline{*std::move(p)};
  } catch (const std::exception& e) {
    return fail(absl::InternalError(e.what()));
  }
}

void bite_pipeline_free(bite_pipeline* pipeline) { delete pipeline; }

char* bite_encode(const bite_pipeline* pipeline, const char* request_json) {
  return Handle(
      pipeline, request_json,
      [](const bite::Pipeline& p, const json& req) -> absl::StatusOr<json> {
        absl::StatusOr<bite::PipelineMode> mode = ModeOf(p, req);
        if (!mode.ok()) return mode.status();
        auto encoded = p.Encode(req.at("text").get<std::string>(), *mode);
        if (!encoded.ok()) return encoded.status();
        return bite::EncodedToJson(*encoded);
      });
}

char* bite_decode(const bite_pipeline* pipeline, const char* request_json) {
  return Handle(
      pipeline, request_json,
      [](const bite::Pipeline& p, const json& req) -> absl::StatusOr<json> {
        absl::StatusOr<bite::PipelineMode> mode = ModeOf(p, req);
        if (!mode.ok()) return mode.status();
        const auto ids = req.at("ids").get<std::vector<int>>();
        auto tokens = p.Decode(ids, *mode);
        if (!tokens.ok()) return tokens.status();
        json out;
        out["tokens"] = *tokens;
        out["text"] = bite::Detokenize(*tokens);
        return out;
      });
}

char* bite_tag(const bite_pipeline* pipeline, const char* request_json) {
  return Handle(
      pipeline, request_json,
      [](const bite::Pipeline& p, const json& req) -> absl::StatusOr<json> {
        auto tagged = p.Tag(req.at("text").get<std::string>());
        if (!tagged.ok()) return tagged.status();
        json out;
        out["tokens"] = bite::TaggedToJson(*tagged);
        return out;
      });
}

char* bite_perturb(const bite_pipeline* pipeline, const char* request_json) {
  return Handle(
      pipeline, request_json,
      [](const bite::Pipeline& p, const json& req) -> absl::StatusOr<json> {
        bite::PerturbOptions options;
        if (req.contains("method")) {
          auto m = bite::ParsePerturbMethod(req["method"].get<std::string>());
          if (!m.ok()) return m.status();
          options.method = *m;
        }
        if (req.contains("scorer")) {
          auto s = bite::ParseScorerKind(req["scorer"].get<std::string>());
          if (!s.ok()) return s.status();
          options.scorer = *s;
        }
        options.k = req.value("k", options.k);
        options.seed = req.value("seed", options.seed);
        options.retag = req.value("retag", options.retag);
        auto records = p.Perturb(req.at("text").get<std::string>(), options);
        if (!records.ok()) return records.status();
        json list = json::array();
        for (const auto& r : *records) {
          list.push_back(bite::PerturbRecordToJson(r));
        }
        json out;
        out["records"] = std::move(list);
        return out;
      });
}

void bite_string_free(char* s) { std::free(s); }

}  // extern "C"
