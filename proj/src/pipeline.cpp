// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include "kgforge/pipeline.hpp"

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "kgforge/consolidate.hpp"
#include "kgforge/decisions.hpp"
#include "kgforge/grounder.hpp"
#include "kgforge/importers.hpp"
#include "kgforge/linker.hpp"
#include "kgforge/mappers.hpp"
#include "kgforge/stats.hpp"

namespace kgforge {

namespace fs = std::filesystem;
using importers::Source;

namespace {

struct Invalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MappingStep {
  std::string type;
  std::string name;
  nlohmann::json params;
};

struct Plan {
  fs::path output_dir;
  std::map<Source, fs::path> sources;
  std::optional<fs::path> symmetric_relations;
  std::optional<fs::path> lemmas;
  std::vector<MappingStep> mappings;
  std::optional<fs::path> decisions;
  bool strict = true;
  bool pause_for_review = false;
  DatasourcePriority priority;
  bool pagerank = true;
  bool hits = true;
  std::size_t top_k = 10;
  stats::PageRankOptions pr_options;
  stats::HitsOptions hits_options;
  std::optional<fs::path> questions;
  std::optional<Datasource> grounding_subset = Datasource::kCn;
};

std::string get_string(const nlohmann::json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) throw Invalid(where + ": missing string field '" + key + "'");
  return it->get<std::string>();
}

fs::path existing(const fs::path& base, const std::string& rel, const std::string& what) {
  fs::path p = fs::path(rel).is_absolute() ? fs::path(rel) : base / rel;
  if (!fs::exists(p)) throw Invalid(what + " not found: " + p.string());
  return p;
}

Source source_named(const std::string& name, const std::string& where) {
  auto s = importers::parse_source(name);
  if (!s) throw Invalid(where + ": unknown source '" + name + "'");
  return *s;
}

Plan validate(const nlohmann::json& m, const fs::path& base) {
  if (!m.is_object()) throw Invalid("manifest must be a JSON object");
  Plan plan;
  const auto out = get_string(m, "output_dir", "manifest");
  plan.output_dir = fs::path(out).is_absolute() ? fs::path(out) : base / out;

  auto src = m.find("sources");
  if (src == m.end() || !src->is_object() || src->empty()) {
    throw Invalid("manifest: 'sources' must map source names to input paths");
  }
  for (const auto& [name, path] : src->items()) {
    if (!path.is_string()) throw Invalid("sources." + name + " must be a path");
    plan.sources.emplace(source_named(name, "sources"),
                         existing(base, path.get<std::string>(), "input for " + name));
  }

  if (m.contains("symmetric_relations")) {
    plan.symmetric_relations =
        existing(base, get_string(m, "symmetric_relations", "manifest"), "symmetric relation list");
  }
  if (m.contains("lemmas")) plan.lemmas = existing(base, get_string(m, "lemmas", "manifest"), "lemma file");
  if (m.contains("decisions")) {
    // The log may not exist yet; an absent log means nothing is decided.
    const auto rel = get_string(m, "decisions", "manifest");
    plan.decisions = fs::path(rel).is_absolute() ? fs::path(rel) : base / rel;
  }
  plan.strict = m.value("strict", true);
  plan.pause_for_review = m.value("pause_for_review", false);
  if (m.contains("priority")) plan.priority = DatasourcePriority::parse(get_string(m, "priority", "manifest"));

  auto need = [&](Source s, const std::string& step) {
    if (!plan.sources.count(s)) {
      throw Invalid("mapping '" + step + "' needs source " + std::string(importers::to_string(s)));
    }
  };

  std::set<std::string> names;
  for (const auto& step : m.value("mappings", nlohmann::json::array())) {
    if (!step.is_object()) throw Invalid("every mapping step must be an object");
    MappingStep ms{get_string(step, "type", "mapping"), "", step};
    const auto where = "mapping '" + ms.type + "'";
    if (ms.type == "exact") {
      const auto l = source_named(get_string(step, "left", where), where);
      const auto r = source_named(get_string(step, "right", where), where);
      need(l, ms.type);
      need(r, ms.type);
      ms.name = "exact-" + std::string(importers::to_string(l)) + "-" + std::string(importers::to_string(r));
    } else if (ms.type == "ili") {
      existing(base, get_string(step, "input", where), "ILI file");
      need(Source::kConceptNet, ms.type);
      need(source_named(step.value("synsets_from", "visualgenome"), where), ms.type);
      ms.name = "ili";
    } else if (ms.type == "predicate-matrix") {
      existing(base, get_string(step, "input", where), "Predicate Matrix file");
      need(Source::kFrameNet, ms.type);
      need(Source::kConceptNet, ms.type);
      ms.name = "predicate-matrix";
    } else if (ms.type == "ground-fe") {
      existing(base, get_string(step, "input", where), "frame-element corpus");
      need(Source::kFrameNet, ms.type);
      need(Source::kConceptNet, ms.type);
      ms.name = "ground-fe";
    } else if (ms.type == "wikidata") {
      existing(base, get_string(step, "synsets", where), "synset file");
      existing(base, get_string(step, "docs", where), "Wikidata docs file");
      if (step.contains("embeddings")) existing(base, get_string(step, "embeddings", where), "embeddings file");
      ms.name = "wikidata";
    } else {
      throw Invalid("unknown mapping type '" + ms.type + "'");
    }
    if (!names.insert(ms.name).second) throw Invalid("duplicate mapping step " + ms.name);
    plan.mappings.push_back(std::move(ms));
  }

  if (auto st = m.find("stats"); st != m.end()) {
    plan.pagerank = st->value("pagerank", true);
    plan.hits = st->value("hits", true);
    plan.top_k = st->value("top_k", std::size_t{10});
    plan.pr_options.damping = st->value("damping", plan.pr_options.damping);
    plan.pr_options.tol = st->value("tol", plan.pr_options.tol);
    plan.pr_options.max_iter = st->value("max_iter", plan.pr_options.max_iter);
    plan.hits_options.tol = plan.pr_options.tol;
    plan.hits_options.max_iter = st->value("hits_max_iter", plan.hits_options.max_iter);
  }
  if (m.contains("questions")) {
    plan.questions = existing(base, get_string(m, "questions", "manifest"), "question file");
    if (m.contains("grounding_subset")) {
      const auto code = get_string(m, "grounding_subset", "manifest");
      plan.grounding_subset = parse_datasource(code);
      if (!plan.grounding_subset) throw Invalid("unknown grounding subset '" + code + "'");
    }
  }
  return plan;
}

fs::path step_path(const nlohmann::json& step, const char* key, const fs::path& base) {
  const auto rel = step.at(key).get<std::string>();
  return fs::path(rel).is_absolute() ? fs::path(rel) : base / rel;
}

std::ifstream open_input(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + p.string());
  return in;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

class Runner {
 public:
  Runner(Plan plan, fs::path base) : plan_(std::move(plan)), base_(std::move(base)) {}

  PipelineOutcome run();

 private:
  void import_sources();
  void run_mappings();
  bool gate();
  void merge_and_report();

  void record(const fs::path& p) { artifacts_.push_back(fs::relative(p, plan_.output_dir).generic_string()); }
  void write_nodes(const fs::path& p, const NodeTable& t) {
    write_node_table(p, t);
    record(p);
  }
  void write_edges(const fs::path& p, const EdgeTable& t) {
    write_edge_table(p, t);
    record(p);
  }
  void finish(const std::string& status);

  Plan plan_;
  fs::path base_;
  nlohmann::json run_ = nlohmann::json::object();
  std::vector<std::string> artifacts_;
  std::map<Source, importers::ImportResult> imported_;
  std::vector<std::pair<std::string, EdgeTable>> mappings_;
  EdgeTable gated_;
};

void Runner::finish(const std::string& status) {
  run_["status"] = status;
  run_["artifacts"] = artifacts_;
  run_["stale"] = status == "failed" || status == "running";
  write_json(plan_.output_dir / "run.json", run_);
}

void Runner::import_sources() {
  const auto symmetric = plan_.symmetric_relations
                             ? importers::SymmetricRelationSet::load(*plan_.symmetric_relations)
                             : importers::SymmetricRelationSet();
  auto& stage = run_["import"] = nlohmann::json::array();
  for (const auto& [source, path] : plan_.sources) {
    const std::string name(importers::to_string(source));
    spdlog::info("import {} from {}", name, path.string());
    auto result = importers::import_source(source, path, symmetric);
    write_nodes(plan_.output_dir / "sources" / (name + ".nodes.tsv"), result.nodes);
    write_edges(plan_.output_dir / "sources" / (name + ".edges.tsv"), result.edges);
    stage.push_back({{"source", name},
                     {"nodes", result.nodes.rows.size()},
                     {"edges", result.edges.rows.size()},
                     {"skipped", result.diagnostics.skipped}});
    imported_.emplace(source, std::move(result));
  }
}

void Runner::run_mappings() {
  grounder::LemmaDictionary lemmas;
  if (plan_.lemmas) lemmas = grounder::load_lemmas(*plan_.lemmas);
  auto nodes_of = [&](Source s) -> const NodeTable& { return imported_.at(s).nodes; };

  std::unordered_set<std::string> all_ids;
  for (const auto& [s, r] : imported_) {
    for (const auto& n : r.nodes.rows) all_ids.insert(n.id);
  }

  auto& stage = run_["map"] = nlohmann::json::array();
  for (const auto& step : plan_.mappings) {
    spdlog::info("map {}", step.name);
    const auto& j = step.params;
    EdgeTable edges;
    Diagnostics diag;
    if (step.type == "exact") {
      mappers::ExactMatchOptions opts;
      opts.include_aliases = j.value("include_aliases", false);
      opts.skip_pos_tagged = true;
      edges = mappers::exact_label_match(nodes_of(*importers::parse_source(j.at("left").get<std::string>())),
                                         nodes_of(*importers::parse_source(j.at("right").get<std::string>())),
                                         opts);
    } else if (step.type == "ili") {
      auto in = open_input(step_path(j, "input", base_));
      const auto rows = mappers::parse_ili(in, diag);
      const auto synsets = *importers::parse_source(j.value("synsets_from", "visualgenome"));
      auto r = mappers::ili_align(rows, nodes_of(Source::kConceptNet), nodes_of(synsets));
      edges = std::move(r.edges);
      diag.merge(r.diagnostics);
    } else if (step.type == "predicate-matrix") {
      auto in = open_input(step_path(j, "input", base_));
      const auto rows = mappers::parse_predicate_matrix(in, diag);
      auto r = mappers::ingest_predicate_matrix(rows, nodes_of(Source::kFrameNet),
                                                nodes_of(Source::kConceptNet));
      edges = std::move(r.edges);
      diag.merge(r.diagnostics);
    } else if (step.type == "ground-fe") {
      auto in = open_input(step_path(j, "input", base_));
      const auto corpus = mappers::parse_fe_corpus(in, diag);
      auto r = mappers::ground_frame_elements(corpus, nodes_of(Source::kFrameNet),
                                              nodes_of(Source::kConceptNet), lemmas);
      edges = std::move(r.edges);
      diag.merge(r.diagnostics);
    } else if (step.type == "wikidata") {
      auto syn_in = open_input(step_path(j, "synsets", base_));
      auto doc_in = open_input(step_path(j, "docs", base_));
      const auto synsets = linker::parse_synsets(syn_in, diag);
      auto index = linker::build_index(linker::parse_docs(doc_in, diag));
      linker::LinkerConfig cfg;
      cfg.top_k = j.value("top_k", cfg.top_k);
      std::unique_ptr<linker::EmbeddingProvider> provider;
      if (j.contains("embeddings")) {
        provider = std::make_unique<linker::FileEmbeddingProvider>(step_path(j, "embeddings", base_));
      } else {
        provider = std::make_unique<linker::HashedBagOfWordsProvider>(j.value("dim", cfg.dim));
      }
      auto r = linker::link_synsets(synsets, index, *provider, cfg);
      diag.merge(r.diagnostics);
      edges.source = r.edges.source;
      for (auto& e : r.edges.rows) {
        if (all_ids.count(e.subject) && all_ids.count(e.object)) {
          edges.rows.push_back(std::move(e));
        } else {
          diag.skip(e.subject + " -> " + e.object + ": endpoint not in any node table");
        }
      }
    }
    write_edges(plan_.output_dir / "mappings" / (step.name + ".edges.tsv"), edges);
    stage.push_back({{"step", step.name}, {"edges", edges.rows.size()}, {"skipped", diag.skipped}});
    mappings_.emplace_back(step.name, std::move(edges));
  }
}

// Deterministic mappings pass through; probabilistic ones need a decision.
bool Runner::gate() {
  const auto decisions = plan_.decisions ? load_decisions(*plan_.decisions) : DecisionState{};
  EdgeTable probabilistic{"probabilistic", {}};
  std::vector<EdgeTable> parts;
  for (const auto& [name, table] : mappings_) {
    EdgeTable fixed{name, {}};
    for (const auto& e : table.rows) (is_probabilistic(e) ? probabilistic : fixed).rows.push_back(e);
    parts.push_back(std::move(fixed));
  }
  auto gated = filter_by_decisions(probabilistic, decisions,
                                   plan_.strict ? GateMode::kStrict : GateMode::kPermissive);
  run_["gate"] = {{"probabilistic", probabilistic.rows.size()},
                  {"accepted", gated.accepted},
                  {"rejected", gated.rejected},
                  {"undecided", gated.undecided},
                  {"unknown_decisions", gated.diagnostics.skipped},
                  {"bad_log_lines", decisions.diagnostics.skipped},
                  {"mode", plan_.strict ? "strict" : "permissive"}};
  if (plan_.pause_for_review && gated.undecided > 0) return false;
  parts.push_back(std::move(gated.edges));
  gated_ = concatenate(parts);
  return true;
}

void Runner::merge_and_report() {
  std::vector<NodeTable> node_tables;
  std::vector<EdgeTable> edge_tables;
  for (const auto& [s, r] : imported_) {
    node_tables.push_back(r.nodes);
    edge_tables.push_back(r.edges);
  }
  edge_tables.push_back(gated_);
  const NodeTable raw_nodes = concatenate(node_tables);
  const EdgeTable raw_edges = concatenate(edge_tables);
  const NodeTable nodes = dedup_nodes(raw_nodes);
  const EdgeTable edges = dedup_edges(raw_edges);
  write_nodes(plan_.output_dir / "cskg" / "raw_nodes.tsv", raw_nodes);
  write_edges(plan_.output_dir / "cskg" / "raw_edges.tsv", raw_edges);

  spdlog::info("merge {} nodes, {} edges", nodes.rows.size(), edges.rows.size());
  const auto plan = build_merge_plan(edges, plan_.priority);
  MergedGraph merged = apply_merge(nodes, edges, plan);
  verify_merged(merged);
  merged.nodes.source = "cskg";
  merged.edges.source = "cskg";
  write_nodes(plan_.output_dir / "cskg" / "nodes.tsv", merged.nodes);
  write_edges(plan_.output_dir / "cskg" / "edges.tsv", merged.edges);
  run_["merge"] = {{"raw_nodes", raw_nodes.rows.size()},
                   {"raw_edges", raw_edges.rows.size()},
                   {"dedup_nodes", nodes.rows.size()},
                   {"dedup_edges", edges.rows.size()},
                   {"components", plan.components.size()},
                   {"merged_nodes", merged.nodes.rows.size()},
                   {"merged_edges", merged.edges.rows.size()}};

  spdlog::info("stats");
  nlohmann::json report = nlohmann::json::object();
  const std::pair<const char*, const EdgeTable*> graphs[] = {{"pre_merge", &edges},
                                                             {"post_merge", &merged.edges}};
  for (const auto& [name, table] : graphs) {
    const auto st = stats::degree_stats(*table);
    auto section = st.to_json();
    stats::write_histograms(plan_.output_dir / "stats", std::string(name) + "_degree_", st);
    for (const char* dir : {"in", "out", "total"}) {
      record(plan_.output_dir / "stats" / (std::string(name) + "_degree_" + dir + ".tsv"));
    }
    if (!table->rows.empty()) {
      if (plan_.pagerank) {
        const auto pr = stats::pagerank(*table, plan_.pr_options);
        section["pagerank"] = {{"iterations", pr.iterations},
                               {"residual", pr.residual},
                               {"top", stats::ranked_json(stats::top_k(pr.ids, pr.scores, plan_.top_k))}};
      }
      if (plan_.hits) {
        const auto h = stats::hits(*table, plan_.hits_options);
        section["hits"] = {{"iterations", h.iterations},
                           {"residual", h.residual},
                           {"hubs", stats::ranked_json(stats::top_k(h.ids, h.hubs, plan_.top_k))},
                           {"authorities", stats::ranked_json(stats::top_k(h.ids, h.authorities, plan_.top_k))}};
      }
    }
    report[name] = std::move(section);
  }
  write_json(plan_.output_dir / "report.json", report);
  record(plan_.output_dir / "report.json");
  run_["stats"] = {{"pre_merge_mean_degree", report["pre_merge"]["mean_degree"]},
                   {"post_merge_mean_degree", report["post_merge"]["mean_degree"]}};

  if (plan_.questions) {
    spdlog::info("ground {}", plan_.questions->string());
    Diagnostics diag;
    auto in = open_input(*plan_.questions);
    const auto items = grounder::parse_qa_jsonl(in, diag);
    grounder::LemmaDictionary lemmas;
    if (plan_.lemmas) lemmas = grounder::load_lemmas(*plan_.lemmas);
    auto full = grounder::dataset_report(items, merged.nodes, merged.edges, std::nullopt, lemmas);
    nlohmann::json g = {{"full", full.to_json()}, {"skipped_lines", diag.skipped}};
    if (plan_.grounding_subset) {
      auto sub = grounder::dataset_report(items, merged.nodes, merged.edges, plan_.grounding_subset, lemmas);
      g[sub.subset] = sub.to_json();
    }
    write_json(plan_.output_dir / "grounding.json", g);
    record(plan_.output_dir / "grounding.json");
    run_["grounding"] = {{"questions", items.size()}, {"full_total", full.total}};
  }
}

PipelineOutcome Runner::run() {
  PipelineOutcome outcome;
  outcome.output_dir = plan_.output_dir;
  fs::create_directories(plan_.output_dir);
  try {
    finish("running");
    import_sources();
    run_mappings();
    if (!gate()) {
      spdlog::warn("paused: {} probabilistic mappings await review",
                   run_["gate"]["undecided"].get<std::size_t>());
      finish("paused");
      outcome.status = "paused";
      outcome.run = run_;
      return outcome;
    }
    merge_and_report();
    finish("ok");
    outcome.status = "ok";
  } catch (const std::exception& e) {
    spdlog::error("pipeline failed: {}", e.what());
    run_["error"] = e.what();
    try {
      finish("failed");
    } catch (const std::exception&) {
    }
    outcome.exit_code = 1;
    outcome.status = "failed";
    outcome.message = e.what();
  }
  outcome.run = run_;
  return outcome;
}

}  // namespace

PipelineOutcome run_pipeline(const nlohmann::json& manifest, const fs::path& base_dir) {
  Plan plan;
  try {
    plan = validate(manifest, base_dir);
  } catch (const std::exception& e) {
    spdlog::error("invalid manifest: {}", e.what());
    PipelineOutcome outcome;
    outcome.exit_code = 2;
    outcome.status = "invalid";
    outcome.message = e.what();
    return outcome;
  }
  return Runner(std::move(plan), base_dir).run();
}

PipelineOutcome run_pipeline_file(const fs::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) {
    PipelineOutcome outcome;
    outcome.exit_code = 2;
    outcome.status = "invalid";
    outcome.message = "cannot open manifest " + manifest_path.string();
    return outcome;
  }
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    PipelineOutcome outcome;
    outcome.exit_code = 2;
    outcome.status = "invalid";
    outcome.message = std::string("manifest is not valid JSON: ") + e.what();
    return outcome;
  }
  return run_pipeline(manifest, fs::absolute(manifest_path).parent_path());
}

}  // namespace kgforge
