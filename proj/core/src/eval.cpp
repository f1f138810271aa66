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

#include "ctxgr/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "ctxgr/error.hpp"
#include "ctxgr/prompt.hpp"
#include "ctxgr/random.hpp"

namespace ctxgr {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kPositionStream = 0x706f736974696f6eULL;

std::uint64_t query_seed(std::uint64_t seed, const QueryRecord& q) {
  return mix_seed(seed, stable_hash(q.query_id));
}

std::vector<std::size_t> indices_of(const Corpus& corpus,
                                    std::span<const std::string> ids) {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(corpus.index_of(id).value());
  return out;
}

std::vector<std::string> dedupe(const std::vector<DecodeEntry>& entries) {
  std::vector<std::string> out;
  StringSet seen;
  for (const auto& e : entries) {
    if (seen.insert(e.doc_id).second) out.push_back(e.doc_id);
  }
  return out;
}

template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

struct HitCounter {
  std::size_t at1 = 0, at10 = 0, n = 0;

  void add(std::optional<std::size_t> rank) {
    ++n;
    if (rank && *rank == 0) ++at1;
    if (rank && *rank < 10) ++at10;
  }
  HitsAtK finish() const { return {ratio(at1, n), ratio(at10, n), n}; }
};

struct RoutingCounter {
  std::size_t items = 0, copies = 0, copy_hits = 0;

  RoutingMetrics finish() const {
    return {ratio(copies, items), ratio(copy_hits, copies), items, copies};
  }
};

LatencyRecord summarize_latency(std::span<const RetrievalOutcome> outcomes,
                                bool timed) {
  LatencyRecord rec;
  rec.count = outcomes.size();
  if (outcomes.empty()) return rec;
  double tokens = 0.0, ttft = 0.0, total = 0.0, out_tokens = 0.0;
  for (const auto& o : outcomes) {
    tokens += static_cast<double>(o.input_tokens);
    ttft += o.timing.first_step_seconds;
    total += o.timing.total_seconds;
    out_tokens += static_cast<double>(o.output_tokens);
  }
  const auto n = static_cast<double>(outcomes.size());
  rec.mean_input_tokens = tokens / n;
  if (timed) {
    rec.mean_ttft_seconds = ttft / n;
    rec.mean_total_seconds = total / n;
    if (total > 0.0) rec.throughput_tokens_per_second = out_tokens / total;
  }
  return rec;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json();
}

nlohmann::json hits_json(const HitsAtK& h) {
  return {{"hits_at_1", h.hits_at_1}, {"hits_at_10", h.hits_at_10}, {"count", h.count}};
}

nlohmann::json split_json(const SplitMetrics& m) {
  nlohmann::json j = hits_json(m.overall);
  j["conditions"] = nlohmann::json::object();
  for (const auto& [name, h] : m.conditions) j["conditions"][name] = hits_json(h);
  if (m.routing) {
    j["routing"] = {{"routing_recall", m.routing->routing_recall},
                    {"hit_given_copy", m.routing->hit_given_copy},
                    {"context_items", m.routing->context_items},
                    {"copies", m.routing->copies}};
  } else {
    j["routing"] = nullptr;
  }
  return j;
}

}  // namespace

std::string_view to_string(EvalSplit split) {
  return split == EvalSplit::kTrain ? "train" : "new";
}

std::string_view to_string(Condition condition) {
  return condition == Condition::kContext ? "ctx" : "noise";
}

StringMap<std::vector<std::string>> mine_all_hard_negatives(
    const Corpus& corpus, const SimilarityBackend& similarity,
    std::span<const std::size_t> pool, std::size_t k) {
  StringMap<std::vector<std::string>> out;
  std::vector<std::vector<std::string>> mined(pool.size());
  parallel_for(pool.size(), 0, [&](std::size_t i) {
    mined[i] = mine_hard_negatives(corpus, similarity, pool,
                                   corpus.doc(pool[i]).doc_id, k);
  });
  for (std::size_t i = 0; i < pool.size(); ++i) {
    out.emplace(corpus.doc(pool[i]).doc_id, std::move(mined[i]));
  }
  return out;
}

EvalWorld::EvalWorld(const Corpus& corpus, const Vocabulary& vocab,
                     const CorpusSplit& split,
                     const SimilarityBackend& similarity,
                     std::size_t hard_negative_k)
    : EvalWorld(corpus, vocab, split, StringMap<std::vector<std::string>>{}) {
  const std::size_t k = std::min(hard_negative_k, train_indices_.size() - 1);
  hard_negatives_ = mine_all_hard_negatives(corpus, similarity, train_indices_, k);
}

EvalWorld::EvalWorld(const Corpus& corpus, const Vocabulary& vocab,
                     const CorpusSplit& split,
                     StringMap<std::vector<std::string>> hard_negatives)
    : corpus_(corpus),
      vocab_(vocab),
      split_(split),
      global_trie_(build_trie(vocab, split.train_ids())),
      train_indices_(indices_of(corpus, split.train_ids())),
      hard_negatives_(std::move(hard_negatives)) {}

const std::vector<std::string>& EvalWorld::hard_negatives(
    std::string_view doc_id) const {
  auto it = hard_negatives_.find(doc_id);
  if (it == hard_negatives_.end()) {
    throw Error(ErrorCode::kNotFound,
                "no hard negatives for \"" + std::string(doc_id) + "\"");
  }
  return it->second;
}

std::vector<std::string> build_query_candidate_set(
    const QueryRecord& query, std::span<const std::string> new_ids,
    std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kConfig, "candidate set size must be >= 1");
  if (n > new_ids.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "candidate set size " + std::to_string(n) + " exceeds " +
                    std::to_string(new_ids.size()) + " new documents");
  }
  std::vector<std::string> pool;
  pool.reserve(new_ids.size());
  bool found = false;
  for (const auto& id : new_ids) {
    if (id == query.gold_doc_id) {
      found = true;
    } else {
      pool.push_back(id);
    }
  }
  if (!found) {
    throw Error(ErrorCode::kInvalidInput,
                "gold of query " + query.query_id + " is not a new document");
  }
  const std::uint64_t qseed = query_seed(seed, query);
  auto set = sample_without_replacement(pool, n - 1, qseed);
  Rng rng(mix_seed(qseed, kPositionStream));
  const auto pos = static_cast<std::ptrdiff_t>(rng.below(n));
  set.insert(set.begin() + pos, query.gold_doc_id);
  return set;
}

bool EvalItem::gold_in_context() const {
  return std::find(candidates.begin(), candidates.end(), query->gold_doc_id) !=
         candidates.end();
}

std::vector<EvalItem> make_eval_items(const EvalWorld& world,
                                      std::span<const QueryRecord> retention,
                                      std::span<const QueryRecord> adaptation,
                                      std::size_t n_shots, std::uint64_t seed) {
  if (n_shots == 0) throw Error(ErrorCode::kConfig, "shot count must be >= 1");
  std::vector<EvalItem> items;
  items.reserve(2 * retention.size() + adaptation.size());
  for (const auto& q : retention) {
    const auto& negatives = world.hard_negatives(q.gold_doc_id);
    if (negatives.size() < n_shots) {
      throw Error(ErrorCode::kInvalidInput,
                  "query " + q.query_id + ": " + std::to_string(n_shots) +
                      " shots need that many hard negatives, have " +
                      std::to_string(negatives.size()));
    }
    const std::uint64_t qseed = query_seed(seed, q);
    auto draws = sample_without_replacement(negatives, n_shots, qseed);

    EvalItem ctx{&q, EvalSplit::kTrain, Condition::kContext, {}};
    ctx.candidates.assign(draws.begin(), draws.end() - 1);
    Rng rng(mix_seed(qseed, kPositionStream));
    const auto pos = static_cast<std::ptrdiff_t>(rng.below(n_shots));
    ctx.candidates.insert(ctx.candidates.begin() + pos, q.gold_doc_id);
    items.push_back(std::move(ctx));

    items.push_back({&q, EvalSplit::kTrain, Condition::kNoise, std::move(draws)});
  }
  for (const auto& q : adaptation) {
    items.push_back({&q, EvalSplit::kNew, Condition::kContext,
                     build_query_candidate_set(q, world.split().new_ids(),
                                               n_shots, seed)});
  }
  return items;
}

IcicleRetriever::IcicleRetriever(const EvalWorld& world, const Scorer& scorer,
                                 std::size_t beam_width)
    : world_(world), scorer_(scorer), beam_width_(beam_width) {}

RetrievalOutcome IcicleRetriever::retrieve(const EvalItem& item) const {
  const auto instance = instance_from_candidates(
      world_.corpus(), world_.vocab(), *item.query, item.candidates, 0);
  const Prompt prompt = make_prompt(instance, world_.vocab());
  const DocidTrie context = build_context_trie(world_.vocab(), item.candidates);

  RetrievalOutcome out;
  DecodeOptions opts;
  opts.beam_width = beam_width_;
  opts.timing = &out.timing;
  const DecodeResult result = constrained_beam_search(
      scorer_, prompt, world_.global_trie(), context, opts);
  out.ranked = dedupe(result.entries);
  out.top_route = result.entries.front().route;
  out.copy_confidence = result.copy_confidence;
  out.input_tokens = prompt.tokens.size();
  out.output_tokens = result.entries.front().token_path.size();
  return out;
}

std::vector<std::string> IcicleRetriever::search_space(const EvalItem& item) const {
  const DocidTrie context = build_context_trie(world_.vocab(), item.candidates);
  std::vector<std::string> ids;
  for (const auto* trie : {&world_.global_trie(), &context}) {
    for (const auto& path : trie->paths()) {
      ids.push_back(*trie->terminal(*trie->walk(path)));
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

Bm25Retriever::Bm25Retriever(const EvalWorld& world,
                             const Bm25Collection& collection, std::size_t depth)
    : world_(world), collection_(collection), depth_(depth) {}

std::vector<std::size_t> Bm25Retriever::space_indices(const EvalItem& item) const {
  std::vector<std::size_t> docs = world_.train_indices();
  for (const auto& id : item.candidates) {
    docs.push_back(world_.corpus().index_of(id).value());
  }
  return docs;
}

RetrievalOutcome Bm25Retriever::retrieve(const EvalItem& item) const {
  RetrievalOutcome out;
  const auto start = Clock::now();
  const Bm25Index index(collection_, space_indices(item));
  out.ranked = bm25_retrieve(index, item.query->text, depth_);
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - start).count();
  out.timing.first_step_seconds = elapsed;
  out.timing.total_seconds = elapsed;
  out.input_tokens = world_.vocab().encode(item.query->text).size();
  out.output_tokens = out.ranked.size();
  return out;
}

std::vector<std::string> Bm25Retriever::search_space(const EvalItem& item) const {
  const Bm25Index index(collection_, space_indices(item));
  std::vector<std::string> ids;
  for (auto d : index.docs()) ids.push_back(world_.corpus().doc(d).doc_id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

EvalReport evaluate(const Retriever& system, const EvalWorld& world,
                    std::span<const QueryRecord> retention,
                    std::span<const QueryRecord> adaptation,
                    const EvalConfig& config) {
  if (retention.empty() && adaptation.empty()) {
    throw Error(ErrorCode::kInvalidInput, "evaluate: no queries");
  }
  const auto items =
      make_eval_items(world, retention, adaptation, config.n_shots, config.seed);
  std::vector<RetrievalOutcome> outcomes(items.size());
  parallel_for(items.size(), config.measure_latency ? 1 : config.threads,
               [&](std::size_t i) { outcomes[i] = system.retrieve(items[i]); });

  EvalReport report;
  report.system = std::string(system.name());
  report.config = config;

  HitCounter train, fresh, train_ctx, train_noise;
  RoutingCounter route_train, route_new;
  std::size_t emit_miss = 0, wrong_ctx = 0, spurious = 0;
  std::vector<double> confidences;
  std::vector<int> truths;

  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    const auto& out = outcomes[i];
    const auto& gold = item.query->gold_doc_id;
    std::optional<std::size_t> rank;
    for (std::size_t r = 0; r < out.ranked.size(); ++r) {
      if (out.ranked[r] == gold) {
        rank = r;
        break;
      }
    }
    const bool in_ctx = item.gold_in_context();
    const bool correct = rank && *rank == 0;

    if (item.split == EvalSplit::kTrain) {
      train.add(rank);
      (item.condition == Condition::kContext ? train_ctx : train_noise).add(rank);
    } else {
      fresh.add(rank);
    }

    if (out.top_route) {
      const bool copied = *out.top_route == Route::kCopy;
      if (in_ctx) {
        auto& rc = item.split == EvalSplit::kTrain ? route_train : route_new;
        ++rc.items;
        if (copied) {
          ++rc.copies;
          if (correct) ++rc.copy_hits;
        }
      }
      if (copied && !correct) {
        ++emit_miss;
        ++(in_ctx ? wrong_ctx : spurious);
      }
    }
    if (out.copy_confidence) {
      confidences.push_back(*out.copy_confidence);
      truths.push_back(in_ctx ? 1 : 0);
    }

    QueryRow row;
    row.query_id = item.query->query_id;
    row.split = item.split;
    row.condition = item.condition;
    if (rank) row.rank_of_gold = *rank + 1;
    row.route = out.top_route;
    row.copy_confidence = out.copy_confidence;
    report.rows.push_back(std::move(row));
  }

  report.train.overall = train.finish();
  if (!retention.empty()) {
    report.train.conditions["ctx"] = train_ctx.finish();
    report.train.conditions["noise"] = train_noise.finish();
  }
  report.fresh.overall = fresh.finish();
  if (!adaptation.empty()) report.fresh.conditions["ctx"] = fresh.finish();

  if (system.routes()) {
    if (!retention.empty()) report.train.routing = route_train.finish();
    report.fresh.routing = route_new.finish();
    report.routing_recall = report.fresh.routing->routing_recall;
    report.hit_given_copy = report.fresh.routing->hit_given_copy;
    ErrorTaxonomy tax;
    tax.count = items.size();
    tax.emit_and_miss = ratio(emit_miss, items.size());
    tax.wrong_ctx_copy = ratio(wrong_ctx, items.size());
    tax.spurious_copy = ratio(spurious, items.size());
    tax.miss_rate = tax.emit_and_miss;
    report.error_taxonomy = tax;
  }
  if (!confidences.empty()) {
    report.ece = ece(confidences, truths, config.ece_bins);
  }
  report.latency = summarize_latency(outcomes, config.measure_latency);
  return report;
}

std::vector<EvalReport> shot_sweep(const Retriever& system,
                                   const EvalWorld& world,
                                   std::span<const QueryRecord> retention,
                                   std::span<const QueryRecord> adaptation,
                                   std::span<const std::size_t> shots,
                                   const EvalConfig& config) {
  if (shots.empty()) throw Error(ErrorCode::kConfig, "shot list is empty");
  if (!std::is_sorted(shots.begin(), shots.end()) ||
      std::adjacent_find(shots.begin(), shots.end()) != shots.end()) {
    throw Error(ErrorCode::kConfig, "shot list must be strictly ascending");
  }
  std::vector<EvalReport> reports;
  for (std::size_t n : shots) {
    EvalConfig cfg = config;
    cfg.n_shots = n;
    reports.push_back(evaluate(system, world, retention, adaptation, cfg));
  }
  return reports;
}

LatencyRecord latency_probe(const Retriever& system, const EvalWorld& world,
                            std::span<const QueryRecord> queries,
                            std::size_t n_shots, std::uint64_t seed) {
  const auto items = make_eval_items(world, {}, queries, n_shots, seed);
  std::vector<RetrievalOutcome> outcomes;
  outcomes.reserve(items.size());
  for (const auto& item : items) outcomes.push_back(system.retrieve(item));
  return summarize_latency(outcomes, true);
}

nlohmann::json report_to_json(const EvalReport& report,
                              std::string_view dataset,
                              std::string_view timestamp) {
  nlohmann::json j;
  j["system"] = report.system;
  j["dataset"] = dataset;
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  j["config"] = {{"n_shots", report.config.n_shots},
                 {"beam_width", report.config.beam_width},
                 {"seed", report.config.seed},
                 {"ece_bins", report.config.ece_bins}};
  j["splits"] = {{"train", split_json(report.train)},
                 {"new", split_json(report.fresh)}};
  j["ece"] = optional_json(report.ece);
  j["routing_recall"] = optional_json(report.routing_recall);
  j["hit_given_copy"] = optional_json(report.hit_given_copy);
  if (report.error_taxonomy) {
    const auto& t = *report.error_taxonomy;
    j["error_taxonomy"] = {{"emit_and_miss", t.emit_and_miss},
                           {"wrong_ctx_copy", t.wrong_ctx_copy},
                           {"spurious_copy", t.spurious_copy},
                           {"miss_rate", t.miss_rate},
                           {"count", t.count}};
  } else {
    j["error_taxonomy"] = nullptr;
  }
  const auto& lat = report.latency;
  j["latency"] = {{"mean_input_tokens", lat.mean_input_tokens},
                  {"mean_ttft_seconds", optional_json(lat.mean_ttft_seconds)},
                  {"mean_total_seconds", optional_json(lat.mean_total_seconds)},
                  {"throughput_tokens_per_second",
                   optional_json(lat.throughput_tokens_per_second)},
                  {"count", lat.count},
                  {"note", "proxy: word-token counts and mock-pipeline wall clock"}};
  j["notes"] = {{"ece_pooling",
                 "ctx and noise instances of the same query enter ECE as "
                 "independent samples"},
                {"routing_scope", "routing_recall and hit_given_copy use "
                                  "context-dependent items of the new split"}};
  return j;
}

void write_rows_csv(const EvalReport& report, std::ostream& out) {
  out << "qid,split,condition,rank_of_gold,route,s\n";
  for (const auto& r : report.rows) {
    out << r.query_id << ',' << to_string(r.split) << ',' << to_string(r.condition)
        << ',';
    if (r.rank_of_gold) out << *r.rank_of_gold;
    out << ',';
    if (r.route) out << to_string(*r.route);
    out << ',';
    if (r.copy_confidence) out << nlohmann::json(*r.copy_confidence).dump();
    out << '\n';
  }
}

}  // namespace ctxgr
