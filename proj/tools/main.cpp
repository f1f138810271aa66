// Copyright 2026 The ctxgr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ctxgr/bm25.hpp"
#include "ctxgr/corpus.hpp"
#include "ctxgr/decoder.hpp"
#include "ctxgr/dpo.hpp"
#include "ctxgr/error.hpp"
#include "ctxgr/eval.hpp"
#include "ctxgr/mock_model.hpp"
#include "ctxgr/prompt.hpp"
#include "ctxgr/random.hpp"
#include "ctxgr/similarity.hpp"
#include "ctxgr/synthetic.hpp"
#include "ctxgr/tokenizer.hpp"
#include "ctxgr/trie.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace ctxgr::cli {
namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kBadConfig = 3,
  kMissingInput = 4,
  kBadData = 5,
  kInternal = 6,
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
      return kBadConfig;
    case ErrorCode::kIo:
      return kMissingInput;
    case ErrorCode::kInvalidInput:
    case ErrorCode::kNotFound:
    case ErrorCode::kCollision:
      return kBadData;
    case ErrorCode::kDecode:
      return kInternal;
  }
  return kInternal;
}

void report_error(std::string_view kind, int code, std::string_view message) {
  std::cerr << json{{"error", kind}, {"exit", code}, {"message", message}}.dump()
            << '\n';
}

struct Flags {
  std::string config;
  std::optional<std::string> corpus;
  std::optional<std::string> queries;
  std::optional<std::string> workdir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> shots;
  std::optional<std::size_t> beam;
  std::optional<double> ratio;
  std::optional<std::size_t> k;
  std::optional<std::string> out;
  std::optional<std::string> system;
  bool oracle = false;
  std::optional<std::size_t> docs;
};

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  bool workdir_from_file = false;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw Error(ErrorCode::kIo, "cannot open config " + f.config);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& ex) {
      throw Error(ErrorCode::kConfig,
                  "config " + f.config + " is not valid JSON: " + ex.what());
    }
    cfg = RunConfig::from_json(j);
    workdir_from_file = j.contains("paths") && j["paths"].contains("workdir");
  }
  if (!workdir_from_file) {
    if (const char* env = std::getenv("ICICLE_WORKDIR"); env && *env) {
      cfg.paths.workdir = env;
    }
  }
  if (f.corpus) cfg.paths.corpus = *f.corpus;
  if (f.queries) cfg.paths.queries = *f.queries;
  if (f.workdir) cfg.paths.workdir = *f.workdir;
  if (f.seed) {
    cfg.split.seed = *f.seed;
    cfg.instances.seed = *f.seed;
  }
  if (f.shots) {
    auto list = parse_shot_list(*f.shots);
    cfg.eval.shots = list;
    if (list.size() == 1) {
      cfg.eval.n = list.front();
      cfg.instances.n_shots = list.front();
    }
  }
  if (f.beam) cfg.decode.beam_width = *f.beam;
  if (f.ratio) cfg.split.ratio = *f.ratio;
  if (f.k) cfg.negatives.k = *f.k;
  if (f.system) cfg.eval.system = *f.system;
  if (f.oracle) cfg.eval.oracle = true;
  cfg.validate();
  return cfg;
}

fs::path workdir(const RunConfig& cfg) { return fs::path(cfg.paths.workdir); }

fs::path input(const fs::path& p) {
  if (!fs::exists(p)) throw Error(ErrorCode::kIo, "missing input file " + p.string());
  return p;
}

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + p.string());
  return out;
}

void write_json(const fs::path& p, const json& j) {
  auto out = open_out(p);
  out << j.dump(2) << '\n';
}

json read_json(const fs::path& p) {
  std::ifstream in(input(p));
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    throw Error(ErrorCode::kInvalidInput, p.string() + ": " + ex.what());
  }
}

std::vector<json> read_jsonl(const fs::path& p) {
  std::ifstream in(input(p));
  std::vector<json> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& ex) {
      throw Error(ErrorCode::kInvalidInput,
                  p.string() + " line " + std::to_string(n) + ": " + ex.what());
    }
  }
  return out;
}

void write_manifest(const fs::path& output, std::string_view subcommand,
                    const RunConfig& cfg, json extra = json::object()) {
  extra["subcommand"] = subcommand;
  extra["config"] = cfg.to_json();
  write_json(fs::path(output.string() + ".manifest.json"), extra);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Everything downstream of ingest works from the normalized workdir copies.
struct Workspace {
  Corpus corpus;
  std::vector<QueryRecord> queries;
  Vocabulary vocab;

  explicit Workspace(const RunConfig& cfg) {
    const auto dir = workdir(cfg);
    corpus = ingest_corpus(input(dir / "corpus.jsonl"));
    queries = load_queries(input(dir / "queries.jsonl"), corpus);
    vocab = Vocabulary::from_json(read_json(dir / "vocab.json"));
  }

  CorpusSplit split(const RunConfig& cfg) const {
    return split_from_json(read_json(workdir(cfg) / "split.json"), corpus);
  }

  StringMap<std::vector<std::string>> negatives(const RunConfig& cfg) const {
    StringMap<std::vector<std::string>> out;
    for (const auto& j : read_jsonl(workdir(cfg) / "negatives.jsonl")) {
      try {
        out.emplace(j.at("doc_id").get<std::string>(),
                    j.at("negatives").get<std::vector<std::string>>());
      } catch (const json::exception& ex) {
        throw Error(ErrorCode::kInvalidInput,
                    std::string("negatives.jsonl: ") + ex.what());
      }
    }
    return out;
  }
};

int cmd_synth(const RunConfig& cfg, const Flags& f) {
  SyntheticConfig sc;
  sc.seed = cfg.split.seed;
  if (f.docs) sc.num_docs = *f.docs;
  const auto data = make_synthetic(sc);
  const fs::path dir = f.out ? fs::path(*f.out) : workdir(cfg);
  {
    auto out = open_out(dir / "corpus.jsonl");
    write_corpus(data.corpus, out);
  }
  {
    auto out = open_out(dir / "queries.jsonl");
    write_queries(data.queries, out);
  }
  std::cout << json{{"docs", data.corpus.size()}, {"queries", data.queries.size()},
                    {"dir", dir.string()}}.dump()
            << '\n';
  return kOk;
}

int cmd_ingest(const RunConfig& cfg) {
  if (cfg.paths.corpus.empty()) throw Error(ErrorCode::kConfig, "ingest needs --corpus");
  if (cfg.paths.queries.empty()) throw Error(ErrorCode::kConfig, "ingest needs --queries");
  const Corpus corpus = ingest_corpus(input(cfg.paths.corpus));
  const auto queries = load_queries(input(cfg.paths.queries), corpus);
  const Vocabulary vocab = build_vocab(corpus, queries);
  const auto dir = workdir(cfg);
  {
    auto out = open_out(dir / "corpus.jsonl");
    write_corpus(corpus, out);
  }
  {
    auto out = open_out(dir / "queries.jsonl");
    write_queries(queries, out);
  }
  write_json(dir / "vocab.json", vocab.to_json());
  write_manifest(dir / "corpus.jsonl", "ingest", cfg,
                 {{"docs", corpus.size()},
                  {"queries", queries.size()},
                  {"vocab_size", vocab.size()}});
  return kOk;
}

int cmd_split(const RunConfig& cfg, const Flags& f) {
  const Workspace ws(cfg);
  const auto split = split_corpus(ws.corpus, cfg.split.ratio, cfg.split.seed);
  json j = split_to_json(split);
  j["config"] = cfg.to_json();
  write_json(f.out ? fs::path(*f.out) : workdir(cfg) / "split.json", j);
  return kOk;
}

int cmd_mine_negatives(const RunConfig& cfg, const Flags& f) {
  const Workspace ws(cfg);
  const auto split = ws.split(cfg);
  const TfIdfSimilarity sim(ws.corpus);
  std::vector<std::size_t> pool;
  for (const auto& id : split.train_ids()) pool.push_back(*ws.corpus.index_of(id));
  const auto mined = mine_all_hard_negatives(ws.corpus, sim, pool, cfg.negatives.k);
  const fs::path path = f.out ? fs::path(*f.out) : workdir(cfg) / "negatives.jsonl";
  auto out = open_out(path);
  for (const auto& id : split.train_ids()) {
    out << json{{"doc_id", id}, {"negatives", mined.at(id)}}.dump() << '\n';
  }
  write_manifest(path, "mine-negatives", cfg,
                 {{"docs", split.train_ids().size()}, {"k", cfg.negatives.k}});
  return kOk;
}

int cmd_build_instances(const RunConfig& cfg, const Flags& f) {
  const Workspace ws(cfg);
  const auto split = ws.split(cfg);
  const auto negatives = ws.negatives(cfg);
  const auto buckets = split_queries(ws.queries, split);
  const std::size_t n = cfg.instances.n_shots;
  const fs::path path = f.out ? fs::path(*f.out) : workdir(cfg) / "instances.jsonl";
  auto out = open_out(path);
  std::size_t ctx = 0, noise = 0;
  for (const auto& q : buckets.retention) {
    auto it = negatives.find(q.gold_doc_id);
    if (it == negatives.end()) {
      throw Error(ErrorCode::kNotFound, "no negatives for " + q.gold_doc_id);
    }
    const std::uint64_t seed = mix_seed(cfg.instances.seed, stable_hash(q.query_id));
    const auto draws = sample_without_replacement(it->second, n, seed);
    const auto a = build_context_dependent(ws.corpus, ws.vocab, q, draws, n, seed);
    const auto b = build_query_irrelevant(ws.corpus, ws.vocab, q, draws, n);
    out << instance_to_json(a).dump() << '\n' << instance_to_json(b).dump() << '\n';
    ++ctx;
    ++noise;
  }
  write_manifest(path, "build-instances", cfg,
                 {{"context_dependent", ctx}, {"query_irrelevant", noise}, {"n", n}});
  return kOk;
}

struct System {
  std::unique_ptr<TfIdfSimilarity> base;
  std::unique_ptr<OracleSimilarity> oracle;
  std::unique_ptr<ParametricMemory> memory;
  std::unique_ptr<MockModel> model;
  std::unique_ptr<Bm25Collection> collection;
  std::unique_ptr<Retriever> retriever;
};

System make_system(const RunConfig& cfg, const Workspace& ws, const EvalWorld& world) {
  System s;
  if (cfg.eval.system == "bm25") {
    s.collection = std::make_unique<Bm25Collection>(ws.corpus, ws.vocab);
    s.retriever = std::make_unique<Bm25Retriever>(world, *s.collection,
                                                  cfg.decode.beam_width);
    return s;
  }
  s.base = std::make_unique<TfIdfSimilarity>(ws.corpus);
  const SimilarityBackend* sim = s.base.get();
  if (cfg.eval.oracle) {
    s.oracle = std::make_unique<OracleSimilarity>(ws.corpus, ws.queries, *s.base);
    sim = s.oracle.get();
  }
  s.memory = std::make_unique<ParametricMemory>(ws.corpus, world.split());
  s.model = std::make_unique<MockModel>(ws.corpus, ws.vocab, *s.memory, *sim, cfg.mock);
  s.retriever = std::make_unique<IcicleRetriever>(world, *s.model, cfg.decode.beam_width);
  return s;
}

EvalConfig eval_config(const RunConfig& cfg, std::size_t n) {
  EvalConfig ec;
  ec.n_shots = n;
  ec.beam_width = cfg.decode.beam_width;
  ec.seed = cfg.instances.seed;
  ec.ece_bins = cfg.eval.ece_bins;
  ec.measure_latency = cfg.eval.measure_latency;
  ec.threads = cfg.eval.threads;
  return ec;
}

std::string dataset_name(const RunConfig& cfg) {
  return cfg.paths.corpus.empty() ? std::string("corpus.jsonl")
                                  : fs::path(cfg.paths.corpus).filename().string();
}

void write_report(const RunConfig& cfg, const EvalReport& report, const fs::path& path) {
  json j = report_to_json(report, dataset_name(cfg), utc_timestamp());
  j["resolved_config"] = cfg.to_json();
  write_json(path, j);
  if (cfg.eval.emit_rows) {
    auto rows = open_out(fs::path(path).replace_extension(".csv"));
    write_rows_csv(report, rows);
  }
}

std::string report_name(const RunConfig& cfg, std::size_t n) {
  return "report_" + cfg.eval.system + (cfg.eval.oracle ? "_oracle" : "") + "_N" +
         std::to_string(n) + ".json";
}

int cmd_evaluate(const RunConfig& cfg, const Flags& f) {
  const Workspace ws(cfg);
  const auto split = ws.split(cfg);
  const auto buckets = split_queries(ws.queries, split);
  const EvalWorld world(ws.corpus, ws.vocab, split, ws.negatives(cfg));
  const auto sys = make_system(cfg, ws, world);
  const auto report = evaluate(*sys.retriever, world, buckets.retention,
                               buckets.adaptation, eval_config(cfg, cfg.eval.n));
  write_report(cfg, report,
               f.out ? fs::path(*f.out) : workdir(cfg) / report_name(cfg, cfg.eval.n));
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, const Flags& f) {
  const Workspace ws(cfg);
  const auto split = ws.split(cfg);
  const auto buckets = split_queries(ws.queries, split);
  const EvalWorld world(ws.corpus, ws.vocab, split, ws.negatives(cfg));
  const auto sys = make_system(cfg, ws, world);
  const auto reports = shot_sweep(*sys.retriever, world, buckets.retention,
                                  buckets.adaptation, cfg.eval.shots,
                                  eval_config(cfg, cfg.eval.n));
  const fs::path dir = f.out ? fs::path(*f.out) : workdir(cfg);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    write_report(cfg, reports[i], dir / report_name(cfg, cfg.eval.shots[i]));
  }
  return kOk;
}

int cmd_mine_dpo(const RunConfig& cfg, const Flags& f) {
  const Workspace ws(cfg);
  const auto split = ws.split(cfg);
  StringMap<QueryRecord> by_id;
  for (const auto& q : ws.queries) by_id.emplace(q.query_id, q);
  std::vector<InContextInstance> instances;
  for (const auto& j : read_jsonl(workdir(cfg) / "instances.jsonl")) {
    instances.push_back(instance_from_json(j, ws.corpus, ws.vocab, by_id));
  }

  const TfIdfSimilarity base(ws.corpus);
  std::optional<OracleSimilarity> oracle;
  if (cfg.eval.oracle) oracle.emplace(ws.corpus, ws.queries, base);
  const SimilarityBackend& sim = oracle ? static_cast<const SimilarityBackend&>(*oracle)
                                        : base;
  const ParametricMemory memory(ws.corpus, split);
  const MockModel policy(ws.corpus, ws.vocab, memory, sim, cfg.mock);
  const UniformScorer reference(ws.vocab.size());
  const DocidTrie global = build_trie(ws.vocab, split.train_ids());

  std::vector<Prompt> prompts;
  std::vector<DecodeResult> results;
  prompts.reserve(instances.size());
  results.reserve(instances.size());
  for (const auto& inst : instances) {
    prompts.push_back(make_prompt(inst, ws.vocab));
    const auto ctx = build_context_trie(ws.vocab, inst.candidate_ids());
    DecodeOptions opts;
    opts.beam_width = cfg.decode.beam_width;
    results.push_back(constrained_beam_search(policy, prompts.back(), global, ctx, opts));
  }
  const fs::path path = f.out ? fs::path(*f.out) : workdir(cfg) / "dpo_pairs.jsonl";
  auto out = open_out(path);
  std::map<std::string, std::size_t> kinds;
  std::size_t total = 0;
  double loss_sum = 0.0;
  // Mined one instance at a time so each pair keeps the prompt it came from.
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const DecodedInstance d{&instances[i], &results[i]};
    for (const auto& p : mine_pairs(std::span(&d, 1), cfg.decode.beam_width)) {
      out << pair_to_json(p).dump() << '\n';
      ++kinds[std::string(to_string(p.kind))];
      ++total;
      loss_sum += pair_margin(policy, reference, p, prompts[i], cfg.dpo.beta);
    }
  }
  json extra{{"instances", instances.size()},
             {"pairs", total},
             {"kinds", kinds},
             {"beta", cfg.dpo.beta},
             {"reference", "uniform"}};
  extra["mean_loss"] = total == 0 ? json() : json(loss_sum / static_cast<double>(total));
  write_manifest(path, "mine-dpo", cfg, extra);
  return kOk;
}

std::string fmt(const json& v) {
  if (v.is_null()) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v.get<double>());
  return buf;
}

int cmd_report(const RunConfig& cfg, const Flags& f) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(input(workdir(cfg)))) {
    const auto name = entry.path().filename().string();
    if (name.starts_with("report_") && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw Error(ErrorCode::kIo, "no report_*.json in " + cfg.paths.workdir);
  // Directory order is unspecified; the file name breaks ties in the sort.
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, json>> reports;
  for (const auto& p : files) {
    json r = read_json(p);
    std::string label = r.at("system").get<std::string>();
    const auto rc = r.find("resolved_config");
    if (rc != r.end() && rc->at("eval").value("oracle", false)) label += " (oracle)";
    reports.emplace_back(std::move(label), std::move(r));
  }
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return std::make_tuple(a.first, a.second.at("config").at("n_shots").template get<std::size_t>()) <
           std::make_tuple(b.first, b.second.at("config").at("n_shots").template get<std::size_t>());
  });
  std::string table =
      "| system | N | train H@1 | train H@10 | new H@1 | new H@10 | ECE | routing recall | hit given copy |\n"
      "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& [label, r] : reports) {
    const auto& tr = r.at("splits").at("train");
    const auto& nw = r.at("splits").at("new");
    table += "| " + label + " | " +
             std::to_string(r.at("config").at("n_shots").get<std::size_t>()) + " | " +
             fmt(tr.at("hits_at_1")) + " | " + fmt(tr.at("hits_at_10")) + " | " +
             fmt(nw.at("hits_at_1")) + " | " + fmt(nw.at("hits_at_10")) + " | " +
             fmt(r.at("ece")) + " | " + fmt(r.at("routing_recall")) + " | " +
             fmt(r.at("hit_given_copy")) + " |\n";
  }
  const fs::path path = f.out ? fs::path(*f.out) : workdir(cfg) / "summary.md";
  auto out = open_out(path);
  out << table;
  std::cout << table;
  return kOk;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON run config")->check(CLI::ExistingFile);
  sub->add_option("--corpus", f.corpus, "corpus JSONL");
  sub->add_option("--queries", f.queries, "query JSONL");
  sub->add_option("--workdir", f.workdir, "working directory (default $ICICLE_WORKDIR)");
  sub->add_option("--seed", f.seed, "seed for split and instance sampling");
  sub->add_option("--shots", f.shots, "shot count or comma-separated list");
  sub->add_option("--beam", f.beam, "beam width");
  sub->add_option("--ratio", f.ratio, "fraction of documents held out as new");
  sub->add_option("--k", f.k, "hard negatives per document");
  sub->add_option("--out", f.out, "output path");
}

int run(int argc, char** argv) {
  CLI::App app{"In-context generative retrieval pipeline"};
  app.require_subcommand(1);
  Flags f;
  std::map<std::string, std::function<int(const RunConfig&)>> handlers{
      {"synth", [&](const RunConfig& c) { return cmd_synth(c, f); }},
      {"ingest", [&](const RunConfig& c) { return cmd_ingest(c); }},
      {"split", [&](const RunConfig& c) { return cmd_split(c, f); }},
      {"mine-negatives", [&](const RunConfig& c) { return cmd_mine_negatives(c, f); }},
      {"build-instances", [&](const RunConfig& c) { return cmd_build_instances(c, f); }},
      {"evaluate", [&](const RunConfig& c) { return cmd_evaluate(c, f); }},
      {"sweep-shots", [&](const RunConfig& c) { return cmd_sweep(c, f); }},
      {"mine-dpo", [&](const RunConfig& c) { return cmd_mine_dpo(c, f); }},
      {"report", [&](const RunConfig& c) { return cmd_report(c, f); }},
  };
  const std::map<std::string, std::string> help{
      {"synth", "write the bundled-style synthetic corpus and queries"},
      {"ingest", "validate corpus and queries, write workdir copies and vocabulary"},
      {"split", "partition documents into train and new"},
      {"mine-negatives", "mine tf-idf hard negatives for train documents"},
      {"build-instances", "build context-dependent and query-irrelevant instances"},
      {"evaluate", "evaluate one system at one shot count"},
      {"sweep-shots", "evaluate one system over a list of shot counts"},
      {"mine-dpo", "decode training instances and mine preference pairs"},
      {"report", "summarize report files as a markdown table"},
  };
  for (const auto& [name, _] : handlers) {
    auto* sub = app.add_subcommand(name, help.at(name));
    add_common(sub, f);
    if (name == "evaluate" || name == "sweep-shots" || name == "mine-dpo") {
      sub->add_option("--system", f.system, "icicle or bm25");
      sub->add_flag("--oracle", f.oracle, "use the oracle similarity for the mock model");
    }
    if (name == "synth") sub->add_option("--docs", f.docs, "number of documents");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", kUsage, e.what());
    return kUsage;
  }
  const auto subs = app.get_subcommands();
  return handlers.at(subs.front()->get_name())(resolve(f));
}

}  // namespace
}  // namespace ctxgr::cli

int main(int argc, char** argv) {
  using namespace ctxgr::cli;
  try {
    return run(argc, argv);
  } catch (const ctxgr::Error& e) {
    const int code = exit_code(e.code());
    report_error(ctxgr::to_string(e.code()), code, e.what());
    return code;
  } catch (const fs::filesystem_error& e) {
    report_error("io", kMissingInput, e.what());
    return kMissingInput;
  } catch (const std::exception& e) {
    report_error("internal", kInternal, e.what());
    return kInternal;
  }
}
