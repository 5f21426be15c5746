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

// bite: command-line front end for the tokenization pipeline.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "bite/bite.h"
#include "bite/metrics.h"
#include "bite/pipeline.h"
#include "bite/pretokenizer.h"
#include "bite/subword.h"
#include "bite/tagger.h"
#include "bite/text_util.h"
#include "bite/version.h"
#include "fmt/core.h"
#include "nlohmann/json.hpp"

namespace bite {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitModel = 3;

// A failure that already knows its exit code.
struct Failure {
  int code;
  std::string message;
};

template <typename T>
using Result = std::variant<T, Failure>;

Failure UsageError(std::string message) {
  return {kExitUsage, std::move(message)};
}
Failure IoError(std::string message) { return {kExitIo, std::move(message)}; }
Failure ModelError(const absl::Status& s) {
  return {kExitModel, std::string(s.message())};
}

struct GlobalOptions {
  std::string config_path;
  std::string model_dir;
  std::string tagger;
  std::string subword;
  std::string lemmas;
  std::string inflections;
  std::string mode;
  std::string overabundance;
};

// Config file, then BITE_MODEL_DIR / --model-dir, then explicit flags.
Result<PipelineConfig> BuildConfig(const GlobalOptions& g) {
  PipelineConfig config;
  if (!g.config_path.empty()) {
    absl::StatusOr<PipelineConfig> c = PipelineConfig::FromFile(g.config_path);
    if (!c.ok()) {
      if (absl::IsNotFound(c.status()))
        return IoError(std::string(c.status().message()));
      return UsageError(std::string(c.status().message()));
    }
    config = *c;
  } else {
    std::string dir = g.model_dir;
    if (dir.empty()) {
      if (const char* env = std::getenv("BITE_MODEL_DIR")) dir = env;
    }
    config = PipelineConfig::ForModelDir(dir);
  }
  if (!g.config_path.empty() && !g.model_dir.empty()) {
    PipelineConfig from_dir = PipelineConfig::ForModelDir(g.model_dir);
    config.tagger_path = from_dir.tagger_path;
    config.subword_path = from_dir.subword_path;
  }
  if (!g.tagger.empty()) config.tagger_path = g.tagger;
  if (!g.subword.empty()) config.subword_path = g.subword;
  if (!g.lemmas.empty()) config.lemma_path = g.lemmas;
  if (!g.inflections.empty()) config.inflection_path = g.inflections;
  if (!g.mode.empty()) {
    absl::StatusOr<PipelineMode> m = ParsePipelineMode(g.mode);
    if (!m.ok()) return UsageError(std::string(m.status().message()));
    config.mode = *m;
  }
  if (!g.overabundance.empty()) {
    absl::StatusOr<OverabundancePolicy> p = ParseOverabundance(g.overabundance);
    if (!p.ok()) return UsageError(std::string(p.status().message()));
    config.overabundance = *p;
  }
  return config;
}

struct Needs {
  bool tagger = false;
  bool subword = false;
};

Result<std::unique_ptr<Pipeline>> LoadPipeline(const GlobalOptions& g,
                                               Needs needs) {
  Result<PipelineConfig> config = BuildConfig(g);
  if (auto* f = std::get_if<Failure>(&config)) return *f;
  PipelineConfig& c = std::get<PipelineConfig>(config);
  if (needs.tagger && c.tagger_path.empty()) {
    return ModelError(absl::FailedPreconditionError(
        "no tagger model: pass --tagger, --model-dir or set BITE_MODEL_DIR"));
  }
  if (needs.subword && c.subword_path.empty()) {
    return ModelError(absl::FailedPreconditionError(
        "no subword model: pass --subword, --model-dir or set BITE_MODEL_DIR"));
  }
  absl::StatusOr<std::unique_ptr<Pipeline>> p = Pipeline::Load(c);
  if (!p.ok()) return ModelError(p.status());
  return *std::move(p);
}

// Input: a file or stdin for "-" / empty.
class Input {
 public:
  static Result<std::unique_ptr<Input>> Open(const std::string& path) {
    auto in = std::unique_ptr<Input>(new Input());
    if (path.empty() || path == "-") return in;
    in->file_.open(path);
    if (!in->file_) return IoError(fmt::format("cannot open '{}'", path));
    return in;
  }
  std::istream& stream() { return file_.is_open() ? file_ : std::cin; }

 private:
  Input() = default;
  std::ifstream file_;
};

// Output that only appears under its final name once complete.
class Output {
 public:
  static Result<std::unique_ptr<Output>> Open(const std::string& path) {
    auto out = std::unique_ptr<Output>(new Output());
    if (path.empty() || path == "-") return out;
    out->path_ = path;
    out->tmp_ = path + ".tmp";
    if (const fs::path parent = fs::path(path).parent_path(); !parent.empty()) {
      std::error_code ec;
      fs::create_directories(parent, ec);
    }
    out->file_.open(out->tmp_, std::ios::binary);
    if (!out->file_) return IoError(fmt::format("cannot write '{}'", path));
    return out;
  }
  ~Output() {
    if (!tmp_.empty() && !committed_) {
      file_.close();
      std::error_code ec;
      fs::remove(tmp_, ec);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  std::optional<Failure> Commit() {
    if (tmp_.empty()) {
      std::cout.flush();
      if (!std::cout) return IoError("failed writing standard output");
      return std::nullopt;
    }
    file_.close();
    if (!file_) return IoError(fmt::format("failed writing '{}'", path_));
    std::error_code ec;
    fs::rename(tmp_, path_, ec);
    if (ec)
      return IoError(
          fmt::format("cannot create '{}': {}", path_, ec.message()));
    committed_ = true;
    return std::nullopt;
  }

 private:
  Output() = default;
  std::string path_;
  std::string tmp_;
  std::ofstream file_;
  bool committed_ = false;
};

int Report(const Failure& f) {
  fmt::print(stderr, "bite: {}\n", f.message);
  return f.code;
}

#define BITE_TRY_ASSIGN(lhs, expr)                     \
  auto lhs##_result = (expr);                          \
  if (auto* f = std::get_if<Failure>(&lhs##_result)) { \
    return Report(*f);                                 \
  }                                                    \
  auto lhs = std::move(std::get<0>(lhs##_result))

#define BITE_TRY_COMMIT(out)                        \
  if (std::optional<Failure> f = (out)->Commit()) { \
    return Report(*f);                              \
  }

// Reads a plain-text corpus, one sentence per line.
Result<std::vector<std::string>> ReadLines(const std::string& path) {
  auto in = Input::Open(path);
  if (auto* f = std::get_if<Failure>(&in)) return *f;
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(std::get<0>(in)->stream(), line)) {
    lines.emplace_back(StripCr(line));
  }
  return lines;
}

// ---------------------------------------------------------------------------

struct PreprocessArgs {
  std::string input;
  std::string output;
  PreprocessOptions options;
};

int RunPreprocess(const PreprocessArgs& a) {
  if (a.options.min_words < 0 || a.options.min_chars < 0) {
    return Report(UsageError("thresholds must be non-negative"));
  }
  BITE_TRY_ASSIGN(in, Input::Open(a.input));
  BITE_TRY_ASSIGN(out, Output::Open(a.output));
  const PreprocessStats stats =
      PreprocessCorpus(in->stream(), out->stream(), a.options);
  BITE_TRY_COMMIT(out);
  json j;
  j["kept"] = stats.kept;
  j["dropped_blank"] = stats.dropped_blank;
  j["dropped_short"] = stats.dropped_short;
  fmt::print(stderr, "{}\n", j.dump());
  return kExitOk;
}

struct TrainTaggerArgs {
  std::string corpus;
  std::string output;
  TrainOptions options;
  std::string eval;
};

double Accuracy(const PerceptronTagger& tagger,
                std::span<const TaggedSentence> gold) {
  int64_t right = 0, total = 0;
  for (const TaggedSentence& s : gold) {
    std::vector<std::string> words;
    for (const TaggedToken& t : s) words.push_back(t.surface);
    const std::vector<PosTag> tags = tagger.Tag(words);
    for (size_t i = 0; i < s.size(); ++i) {
      right += tags[i] == s[i].tag;
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(right) / total;
}

int RunTrainTagger(const TrainTaggerArgs& a) {
  absl::StatusOr<std::vector<TaggedSentence>> corpus =
      ReadTaggedCorpusFile(a.corpus);
  if (!corpus.ok()) {
    return Report(absl::IsNotFound(corpus.status())
                      ? IoError(std::string(corpus.status().message()))
                      : UsageError(std::string(corpus.status().message())));
  }
  absl::StatusOr<PerceptronTagger> tagger =
      PerceptronTagger::Train(*corpus, a.options);
  if (!tagger.ok())
    return Report(UsageError(std::string(tagger.status().message())));
  BITE_TRY_ASSIGN(out, Output::Open(a.output));
  if (absl::Status s = tagger->Save(out->stream()); !s.ok()) {
    return Report(IoError(std::string(s.message())));
  }
  BITE_TRY_COMMIT(out);
  json report;
  report["sentences"] = corpus->size();
  report["features"] = tagger->num_features();
  if (!a.eval.empty()) {
    auto gold = ReadTaggedCorpusFile(a.eval);
    if (!gold.ok())
      return Report(IoError(std::string(gold.status().message())));
    report["eval_accuracy"] = Accuracy(*tagger, *gold);
  }
  fmt::print(stderr, "{}\n", report.dump());
  return kExitOk;
}

struct TrainSubwordArgs {
  std::string corpus;
  std::string output;
  std::string type = "bpe";
  int vocab_size = 8000;
  std::vector<std::string> specials;
};

int RunTrainSubword(const GlobalOptions& g, const TrainSubwordArgs& a) {
  std::optional<ModelType> type = ParseModelType(a.type);
  if (!type) {
    return Report(UsageError(fmt::format(
        "unknown model type '{}'; expected bpe, wordpiece or unigram",
        a.type)));
  }
  // The corpus goes through BITE unless the mode is off.
  Result<PipelineConfig> config = BuildConfig(g);
  if (auto* f = std::get_if<Failure>(&config)) return Report(*f);
  const PipelineMode mode = std::get<PipelineConfig>(config).mode;
  std::unique_ptr<Pipeline> pipeline;
  if (mode != PipelineMode::kOff) {
    BITE_TRY_ASSIGN(p, LoadPipeline(g, {.tagger = true}));
    pipeline = std::move(p);
  }
  BITE_TRY_ASSIGN(lines, ReadLines(a.corpus));
  std::vector<std::vector<std::string>> corpus;
  corpus.reserve(lines.size());
  for (const std::string& line : lines) {
    if (pipeline) {
      corpus.push_back(*pipeline->TransformLine(line, mode));
    } else {
      corpus.push_back(PretokenizeSurfaces(line));
    }
  }
  SubwordTrainOptions options;
  options.type = *type;
  options.vocab_size = a.vocab_size;
  if (mode != PipelineMode::kOff)
    options.special_symbols = BiteSpecialSymbols();
  for (const std::string& s : a.specials) {
    if (std::find(options.special_symbols.begin(),
                  options.special_symbols.end(),
                  s) == options.special_symbols.end()) {
      options.special_symbols.push_back(s);
    }
  }
  absl::StatusOr<SubwordModel> model = SubwordModel::Train(corpus, options);
  if (!model.ok())
    return Report(UsageError(std::string(model.status().message())));
  BITE_TRY_ASSIGN(out, Output::Open(a.output));
  if (absl::Status s = model->Save(out->stream()); !s.ok()) {
    return Report(IoError(std::string(s.message())));
  }
  BITE_TRY_COMMIT(out);
  json report;
  report["model_type"] = std::string(ModelTypeName(*type));
  report["mode"] = std::string(PipelineModeName(mode));
  report["vocab_size"] = model->vocab_size();
  fmt::print(stderr, "{}\n", report.dump());
  return kExitOk;
}

struct StreamArgs {
  std::string input;
  std::string output;
};

int RunEncode(const GlobalOptions& g, const StreamArgs& a) {
  BITE_TRY_ASSIGN(pipeline, LoadPipeline(g, {.tagger = true, .subword = true}));
  BITE_TRY_ASSIGN(in, Input::Open(a.input));
  BITE_TRY_ASSIGN(out, Output::Open(a.output));
  std::string line;
  int64_t line_no = 0, failed = 0;
  while (std::getline(in->stream(), line)) {
    ++line_no;
    absl::StatusOr<EncodedSequence> e = pipeline->Encode(StripCr(line));
    if (!e.ok()) {
      ++failed;
      fmt::print(stderr, "bite: line {}: {}\n", line_no,
                 std::string(e.status().message()));
      continue;
    }
    json j;
    j["line_no"] = line_no;
    j["symbols"] = e->symbols;
    j["ids"] = e->ids;
    out->stream() << j.dump(-1, ' ', false, json::error_handler_t::replace)
                  << '\n';
  }
  BITE_TRY_COMMIT(out);
  if (failed > 0) fmt::print(stderr, "bite: {} lines failed\n", failed);
  return kExitOk;
}

// Accepts JSON-lines records with an "ids" array, or whitespace-separated
// integers.
absl::StatusOr<std::vector<int>> ParseIds(std::string_view line) {
  std::vector<int> ids;
  const size_t first = line.find_first_not_of(" \t");
  if (first != std::string_view::npos && line[first] == '{') {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("ids") || !j["ids"].is_array()) {
      return absl::InvalidArgumentError("expected a record with an ids array");
    }
    for (const auto& v : j["ids"]) {
      if (!v.is_number_integer()) {
        return absl::InvalidArgumentError("ids must be integers");
      }
      ids.push_back(v.get<int>());
    }
    return ids;
  }
  for (std::string_view field : SplitAsciiWhitespace(line)) {
    int id;
    if (!ParseInt(field, &id)) {
      return absl::InvalidArgumentError(fmt::format("bad id '{}'", field));
    }
    ids.push_back(id);
  }
  return ids;
}

int RunDecode(const GlobalOptions& g, const StreamArgs& a) {
  BITE_TRY_ASSIGN(pipeline, LoadPipeline(g, {.subword = true}));
  BITE_TRY_ASSIGN(in, Input::Open(a.input));
  BITE_TRY_ASSIGN(out, Output::Open(a.output));
  std::string line;
  int64_t line_no = 0, failed = 0;
  while (std::getline(in->stream(), line)) {
    ++line_no;
    absl::StatusOr<std::vector<int>> ids = ParseIds(StripCr(line));
    absl::StatusOr<std::vector<std::string>> tokens =
        ids.ok() ? pipeline->Decode(*ids) : ids.status();
    if (!tokens.ok()) {
      ++failed;
      fmt::print(stderr, "bite: line {}: {}\n", line_no,
                 std::string(tokens.status().message()));
      out->stream() << '\n';
      continue;
    }
    out->stream() << Detokenize(*tokens) << '\n';
  }
  BITE_TRY_COMMIT(out);
  if (failed > 0) fmt::print(stderr, "bite: {} lines failed\n", failed);
  return kExitOk;
}

int RunTag(const GlobalOptions& g, const StreamArgs& a) {
  BITE_TRY_ASSIGN(pipeline, LoadPipeline(g, {.tagger = true}));
  BITE_TRY_ASSIGN(in, Input::Open(a.input));
  BITE_TRY_ASSIGN(out, Output::Open(a.output));
  std::string line;
  while (std::getline(in->stream(), line)) {
    std::vector<TaggedToken> tagged = *pipeline->Tag(StripCr(line));
    for (const TaggedToken& t : tagged) {
      out->stream() << t.surface << '\t' << TagName(t.tag) << '\n';
    }
    out->stream() << '\n';
  }
  BITE_TRY_COMMIT(out);
  return kExitOk;
}

struct PerturbArgs {
  StreamArgs io;
  std::string method = "greedy";
  std::string scorer = "encoding-divergence";
  int k = 4;
  uint64_t seed = 0;
  bool retag = false;
};

int RunPerturb(const GlobalOptions& g, const PerturbArgs& a) {
  PerturbOptions options;
  absl::StatusOr<PerturbMethod> method = ParsePerturbMethod(a.method);
  if (!method.ok())
    return Report(UsageError(std::string(method.status().message())));
  absl::StatusOr<ScorerKind> scorer = ParseScorerKind(a.scorer);
  if (!scorer.ok())
    return Report(UsageError(std::string(scorer.status().message())));
  if (a.k < 1) return Report(UsageError("--k must be at least 1"));
  options.method = *method;
  options.scorer = *scorer;
  options.k = a.k;
  options.seed = a.seed;
  options.retag = a.retag;
  const bool needs_subword = *scorer == ScorerKind::kEncodingDivergence;
  BITE_TRY_ASSIGN(pipeline,
                  LoadPipeline(g, {.tagger = true, .subword = needs_subword}));
  BITE_TRY_ASSIGN(in, Input::Open(a.io.input));
  BITE_TRY_ASSIGN(out, Output::Open(a.io.output));
  std::string line;
  int64_t line_no = 0, failed = 0;
  while (std::getline(in->stream(), line)) {
    ++line_no;
    // Each line gets its own stream so output does not depend on batching.
    PerturbOptions per_line = options;
    per_line.seed = options.seed + static_cast<uint64_t>(line_no - 1);
    auto records = pipeline->Perturb(StripCr(line), per_line);
    if (!records.ok()) {
      ++failed;
      fmt::print(stderr, "bite: line {}: {}\n", line_no,
                 std::string(records.status().message()));
      continue;
    }
    for (const PerturbRecord& r : *records) {
      out->stream() << PerturbRecordToJson(r).dump(
                           -1, ' ', false, json::error_handler_t::replace)
                    << '\n';
    }
  }
  BITE_TRY_COMMIT(out);
  if (failed > 0) fmt::print(stderr, "bite: {} lines failed\n", failed);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// metrics

struct MetricsArgs {
  std::string corpus;
  std::string types;
  std::string pairs;
  std::string with_subword;
  std::string without_subword;
  std::string sizes = "500,1000,3000,5000,10000";
  double lambda = 2.0;
  std::string output;
  std::string csv;
};

Result<std::vector<int>> ParseSizes(const std::string& text) {
  std::vector<int> sizes;
  for (std::string_view f : SplitChar(text, ',')) {
    int n;
    if (!ParseInt(f, &n) || n < 1) {
      return UsageError(fmt::format("bad vocabulary size '{}'", f));
    }
    sizes.push_back(n);
  }
  return sizes;
}

// Emits reports as JSON lines and, optionally, a CSV curve.
int EmitReports(const std::vector<MetricReport>& reports,
                const std::string& output, const std::string& csv,
                const std::string& x_key) {
  BITE_TRY_ASSIGN(out, Output::Open(output));
  for (const MetricReport& r : reports) {
    out->stream() << r.ToJson().dump() << '\n';
  }
  BITE_TRY_COMMIT(out);
  if (!csv.empty()) {
    BITE_TRY_ASSIGN(c, Output::Open(csv));
    c->stream() << "metric," << x_key << ",value\n";
    for (const MetricReport& r : reports) {
      c->stream() << r.metric_name << ','
                  << (r.parameters.contains(x_key) ? r.parameters[x_key].dump()
                                                   : "")
                  << ',' << fmt::format("{:.10g}", r.value) << '\n';
    }
    BITE_TRY_COMMIT(c);
  }
  return kExitOk;
}

int RunCoverage(const GlobalOptions& g, const MetricsArgs& a) {
  BITE_TRY_ASSIGN(sizes, ParseSizes(a.sizes));
  Result<PipelineConfig> config = BuildConfig(g);
  if (auto* f = std::get_if<Failure>(&config)) return Report(*f);
  const PipelineMode mode = std::get<PipelineConfig>(config).mode;
  std::unique_ptr<Pipeline> pipeline;
  if (mode != PipelineMode::kOff) {
    BITE_TRY_ASSIGN(p, LoadPipeline(g, {.tagger = true}));
    pipeline = std::move(p);
  }
  BITE_TRY_ASSIGN(lines, ReadLines(a.corpus));
  std::vector<std::vector<std::string>> corpus;
  for (const std::string& line : lines) {
    corpus.push_back(pipeline ? *pipeline->TransformLine(line, mode)
                              : PretokenizeSurfaces(line));
  }
  std::vector<MetricReport> reports;
  for (int n : sizes) {
    absl::StatusOr<TopNResult> top = TopNVocab(corpus, n);
    if (!top.ok())
      return Report(UsageError(std::string(top.status().message())));
    absl::flat_hash_set<std::string> vocab(top->vocab.begin(),
                                           top->vocab.end());
    absl::StatusOr<double> cov = Coverage(vocab, corpus);
    if (!cov.ok())
      return Report(UsageError(std::string(cov.status().message())));
    MetricReport r;
    r.metric_name = "coverage";
    r.parameters["vocab_size"] = n;
    r.parameters["mode"] = std::string(PipelineModeName(mode));
    r.parameters["corpus"] = a.corpus;
    r.parameters["truncated"] = top->truncated;
    r.value = *cov;
    r.units = "fraction";
    reports.push_back(std::move(r));
  }
  return EmitReports(reports, a.output, a.csv, "vocab_size");
}

int RunComplexity(const GlobalOptions& g, const MetricsArgs& a) {
  BITE_TRY_ASSIGN(pipeline, LoadPipeline(g, {.subword = true}));
  BITE_TRY_ASSIGN(lines, ReadLines(a.types));
  std::vector<std::string> types;
  for (const std::string& line : lines) {
    if (!IsSkippableLine(line)) types.push_back(line);
  }
  absl::StatusOr<double> value =
      SymbolComplexity(*pipeline->subword(), types, a.lambda);
  if (!value.ok())
    return Report(UsageError(std::string(value.status().message())));
  MetricReport r;
  r.metric_name = "symbol_complexity";
  r.parameters["vocab_size"] = pipeline->subword()->vocab_size();
  r.parameters["lambda"] = a.lambda;
  r.parameters["types"] = a.types;
  r.parameters["model"] = pipeline->config().subword_path;
  r.value = *value;
  r.units = "symbols";
  return EmitReports({r}, a.output, a.csv, "vocab_size");
}

int RunSimilarity(const GlobalOptions& g, const MetricsArgs& a) {
  BITE_TRY_ASSIGN(pipeline, LoadPipeline(g, {.tagger = true, .subword = true}));
  BITE_TRY_ASSIGN(lines, ReadLines(a.pairs));
  double total = 0;
  int64_t n = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    json j = json::parse(lines[i], nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("clean") ||
        !j["clean"].is_string() || !j.contains("adversarial") ||
        !j["adversarial"].is_string()) {
      return Report(UsageError(fmt::format(
          "{}:{}: expected a clean/adversarial record", a.pairs, i + 1)));
    }
    auto clean = pipeline->Encode(j["clean"].get<std::string>());
    auto adv = pipeline->Encode(j["adversarial"].get<std::string>());
    if (!clean.ok() || !adv.ok()) {
      return Report(ModelError(clean.ok() ? adv.status() : clean.status()));
    }
    total += Similarity(clean->symbols, adv->symbols);
    ++n;
  }
  if (n == 0) return Report(UsageError("no pairs"));
  MetricReport r;
  r.metric_name = "similarity";
  r.parameters["vocab_size"] = pipeline->subword()->vocab_size();
  r.parameters["mode"] = std::string(PipelineModeName(pipeline->config().mode));
  r.parameters["pairs"] = n;
  r.value = total / static_cast<double>(n);
  r.units = "fraction";
  return EmitReports({r}, a.output, a.csv, "vocab_size");
}

int RunSeqLen(const GlobalOptions& g, const MetricsArgs& a) {
  if (a.with_subword.empty() || a.without_subword.empty()) {
    return Report(
        UsageError("seqlen needs --with-subword and --without-subword"));
  }
  GlobalOptions with = g, without = g;
  with.subword = a.with_subword;
  without.subword = a.without_subword;
  if (with.mode.empty() || with.mode == "off") with.mode = "standard";
  without.mode = "off";
  BITE_TRY_ASSIGN(p_with,
                  LoadPipeline(with, {.tagger = true, .subword = true}));
  BITE_TRY_ASSIGN(p_without, LoadPipeline(without, {.subword = true}));
  BITE_TRY_ASSIGN(lines, ReadLines(a.corpus));
  std::vector<int64_t> len_with, len_without;
  std::vector<std::vector<BiteSymbol>> bite;
  for (const std::string& line : lines) {
    std::vector<TaggedToken> tagged = *p_with->Tag(line);
    bite.push_back(p_with->codec().Encode(tagged, BiteMode::kStandard));
    len_with.push_back(static_cast<int64_t>(
        p_with->EncodeTagged(tagged, p_with->config().mode)->ids.size()));
    len_without.push_back(static_cast<int64_t>(
        p_without->EncodeTagged(tagged, PipelineMode::kOff)->ids.size()));
  }
  absl::StatusOr<SeqLenDeltaResult> delta = SeqLenDelta(len_with, len_without);
  if (!delta.ok())
    return Report(UsageError(std::string(delta.status().message())));
  MetricReport r;
  r.metric_name = "seq_len_delta";
  r.parameters["vocab_size"] = p_with->subword()->vocab_size();
  r.parameters["mean_with"] = delta->mean_with;
  r.parameters["mean_without"] = delta->mean_without;
  r.parameters["inflected_percent"] = 100.0 * InflectedTokenFraction(bite);
  r.value = delta->delta_percent;
  r.units = "percent";
  return EmitReports({r}, a.output, a.csv, "vocab_size");
}

int Main(int argc, char** argv) {
  CLI::App app{"BITE tokenization pipeline"};
  app.set_version_flag("--version", BITE_VERSION_STRING);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config_path, "JSON pipeline config file");
  app.add_option("--model-dir", g.model_dir,
                 "Directory with tagger.model and subword.json "
                 "(default: $BITE_MODEL_DIR)");
  app.add_option("--tagger", g.tagger, "Tagger model file");
  app.add_option("--subword", g.subword, "Subword model file");
  app.add_option("--lemmas", g.lemmas,
                 "Lemma table (default: shipped lexicon)");
  app.add_option("--inflections", g.inflections,
                 "Inflection table (default: shipped lexicon)");
  app.add_option("--mode", g.mode,
                 "BITE mode: off, standard or ablated (default: standard)");
  app.add_option("--overabundance", g.overabundance,
                 "Surface choice for overabundant forms: first or agreement "
                 "(default: agreement)");

  int exit_code = kExitOk;

  PreprocessArgs pre;
  auto* preprocess =
      app.add_subcommand("preprocess", "Drop blank and short lines");
  preprocess->add_option("-i,--input", pre.input,
                         "Input text (default: stdin)");
  preprocess->add_option("-o,--output", pre.output,
                         "Output text (default: stdout)");
  preprocess
      ->add_option("--min-words", pre.options.min_words,
                   "Minimum words per line")
      ->capture_default_str();
  preprocess
      ->add_option("--min-chars", pre.options.min_chars,
                   "Minimum characters per line")
      ->capture_default_str();
  preprocess->callback([&] { exit_code = RunPreprocess(pre); });

  TrainTaggerArgs tt;
  auto* train_tagger =
      app.add_subcommand("train-tagger", "Train the POS tagger");
  train_tagger
      ->add_option("--corpus", tt.corpus, "Tagged corpus (word<TAB>tag)")
      ->required();
  train_tagger->add_option("-o,--output", tt.output, "Model file")->required();
  train_tagger->add_option("--epochs", tt.options.epochs, "Training epochs")
      ->capture_default_str();
  train_tagger->add_option("--seed", tt.options.seed, "Shuffle seed")
      ->capture_default_str();
  train_tagger->add_option("--eval", tt.eval,
                           "Tagged corpus to report accuracy on");
  train_tagger->callback([&] { exit_code = RunTrainTagger(tt); });

  TrainSubwordArgs ts;
  auto* train_subword = app.add_subcommand(
      "train-subword",
      "Train a subword model; BITE is applied first unless --mode off");
  train_subword
      ->add_option("--corpus", ts.corpus, "Text corpus, one sentence per line")
      ->required();
  train_subword->add_option("-o,--output", ts.output, "Model file")->required();
  train_subword->add_option("--type", ts.type, "bpe, wordpiece or unigram")
      ->capture_default_str();
  train_subword->add_option("--vocab-size", ts.vocab_size, "Vocabulary size")
      ->capture_default_str();
  train_subword->add_option("--special", ts.specials, "Extra special symbols");
  train_subword->callback([&] { exit_code = RunTrainSubword(g, ts); });

  StreamArgs enc, dec, tag;
  auto* encode = app.add_subcommand(
      "encode", "Text to JSON-lines {line_no, symbols, ids}");
  encode->add_option("-i,--input", enc.input, "Input text (default: stdin)");
  encode->add_option("-o,--output", enc.output, "Output (default: stdout)");
  encode->callback([&] { exit_code = RunEncode(g, enc); });

  auto* decode =
      app.add_subcommand("decode", "Ids (JSON lines or plain) to text");
  decode->add_option("-i,--input", dec.input, "Input (default: stdin)");
  decode->add_option("-o,--output", dec.output,
                     "Output text (default: stdout)");
  decode->callback([&] { exit_code = RunDecode(g, dec); });

  auto* tag_cmd = app.add_subcommand("tag", "Text to word<TAB>tag lines");
  tag_cmd->add_option("-i,--input", tag.input, "Input text (default: stdin)");
  tag_cmd->add_option("-o,--output", tag.output, "Output (default: stdout)");
  tag_cmd->callback([&] { exit_code = RunTag(g, tag); });

  PerturbArgs pa;
  auto* perturb =
      app.add_subcommand("perturb", "Inflectional perturbations as JSON lines");
  perturb->add_option("-i,--input", pa.io.input, "Input text (default: stdin)");
  perturb->add_option("-o,--output", pa.io.output, "Output (default: stdout)");
  perturb->add_option("--method", pa.method, "greedy or sample")
      ->capture_default_str();
  perturb->add_option("--k", pa.k, "Samples per sentence")
      ->capture_default_str();
  perturb
      ->add_option("--seed", pa.seed, "Sampling seed; line n uses seed + n - 1")
      ->capture_default_str();
  perturb->add_option("--scorer", pa.scorer, "encoding-divergence or hamming")
      ->capture_default_str();
  perturb->add_flag(
      "--retag", pa.retag,
      "Re-tag candidates before encoding them (encoding-divergence)");
  perturb->callback([&] { exit_code = RunPerturb(g, pa); });

  MetricsArgs ma;
  auto* metrics = app.add_subcommand("metrics", "Model-independent evaluation");
  metrics->require_subcommand(1);
  auto add_out = [&ma](CLI::App* c) {
    c->add_option("-o,--output", ma.output, "JSON lines (default: stdout)");
    c->add_option("--csv", ma.csv, "Also write a CSV curve here");
  };
  auto* coverage =
      metrics->add_subcommand("coverage", "Top-N vocabulary coverage");
  coverage->add_option("--corpus", ma.corpus, "Text corpus")->required();
  coverage->add_option("--sizes", ma.sizes, "Comma-separated N values")
      ->capture_default_str();
  add_out(coverage);
  coverage->callback([&] { exit_code = RunCoverage(g, ma); });

  auto* complexity =
      metrics->add_subcommand("complexity", "Symbol complexity of a type list");
  complexity->add_option("--types", ma.types, "One word type per line")
      ->required();
  complexity->add_option("--lambda", ma.lambda, "Unknown-symbol weight")
      ->capture_default_str();
  add_out(complexity);
  complexity->callback([&] { exit_code = RunComplexity(g, ma); });

  auto* similarity = metrics->add_subcommand(
      "similarity", "Mean clean/adversarial encoding similarity");
  similarity->add_option("--pairs", ma.pairs, "perturb output")->required();
  add_out(similarity);
  similarity->callback([&] { exit_code = RunSimilarity(g, ma); });

  auto* seqlen =
      metrics->add_subcommand("seqlen", "Encoded length increase from BITE");
  seqlen->add_option("--corpus", ma.corpus, "Text corpus")->required();
  seqlen
      ->add_option("--with-subword", ma.with_subword, "Model trained with BITE")
      ->required();
  seqlen
      ->add_option("--without-subword", ma.without_subword,
                   "Model trained without BITE")
      ->required();
  add_out(seqlen);
  seqlen->callback([&] { exit_code = RunSeqLen(g, ma); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  return exit_code;
}

}  // namespace
}  // namespace bite

int main(int argc, char** argv) { return bite::Main(argc, argv); }
