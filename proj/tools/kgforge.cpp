// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors
//
// kgforge command-line entry point.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "kgforge/consolidate.hpp"
#include "kgforge/decisions.hpp"
#include "kgforge/grounder.hpp"
#include "kgforge/importers.hpp"
#include "kgforge/linker.hpp"
#include "kgforge/mappers.hpp"
#include "kgforge/pipeline.hpp"
#include "kgforge/review_service.hpp"
#include "kgforge/stats.hpp"
#include "kgforge/text.hpp"

namespace fs = std::filesystem;
using namespace kgforge;

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("kgforge");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%H:%M:%S] [%^%l%$] %v");
  const char* level = std::getenv("KGFORGE_LOG_LEVEL");
  spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::info);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return in;
}

void report(const std::string& what, const Diagnostics& d) {
  if (d.skipped == 0) return;
  spdlog::warn("{}: {} rows skipped", what, d.skipped);
  for (const auto& m : d.messages) spdlog::debug("  {}", m);
}

void write_json(const std::string& path, const nlohmann::json& j) {
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << j.dump(2) << '\n';
}

NodeTable read_nodes(const std::vector<std::string>& paths) {
  std::vector<NodeTable> tables;
  for (const auto& p : paths) tables.push_back(read_node_table(p));
  return concatenate(tables);
}

EdgeTable read_edges(const std::vector<std::string>& paths) {
  std::vector<EdgeTable> tables;
  for (const auto& p : paths) tables.push_back(read_edge_table(p));
  return concatenate(tables);
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"kgforge: consolidate commonsense knowledge sources into one property graph"};
  app.require_subcommand(1);

  // import
  std::string source_name, input, out_nodes, out_edges, symmetric_path;
  auto* import_cmd = app.add_subcommand("import", "Convert one raw source into node/edge tables");
  import_cmd->add_option("source", source_name,
                         "conceptnet, visualgenome, wordnet, roget, atomic, wikidata or framenet")
      ->required();
  import_cmd->add_option("--input", input, "Raw input file")->required()->check(CLI::ExistingFile);
  import_cmd->add_option("--out-nodes", out_nodes)->required();
  import_cmd->add_option("--out-edges", out_edges)->required();
  import_cmd->add_option("--symmetric-relations", symmetric_path)->check(CLI::ExistingFile);

  // map
  auto* map_cmd = app.add_subcommand("map", "Generate mapping edges");
  map_cmd->require_subcommand(1);
  std::string out_path;
  std::string left, right;
  bool include_aliases = false, keep_pos = false;
  auto* exact_cmd = map_cmd->add_subcommand("exact", "SameAs links between equal labels");
  exact_cmd->add_option("--left", left)->required()->check(CLI::ExistingFile);
  exact_cmd->add_option("--right", right)->required()->check(CLI::ExistingFile);
  exact_cmd->add_option("--out", out_path)->required();
  exact_cmd->add_flag("--include-aliases", include_aliases, "Match aliases as well as labels");
  exact_cmd->add_flag("--keep-pos-tagged", keep_pos, "Also match POS-tagged nodes");

  std::string ili_path, cn_nodes, synset_nodes, fn_nodes, lemmas_path, corpus_path;
  auto* ili_cmd = map_cmd->add_subcommand("ili", "Align WordNet 3.0 synsets with ConceptNet offsets");
  ili_cmd->add_option("--ili", ili_path)->required()->check(CLI::ExistingFile);
  ili_cmd->add_option("--cn-nodes", cn_nodes)->required()->check(CLI::ExistingFile);
  ili_cmd->add_option("--synset-nodes", synset_nodes)->required()->check(CLI::ExistingFile);
  ili_cmd->add_option("--out", out_path)->required();

  auto* pm_cmd = map_cmd->add_subcommand("predicate-matrix", "Link FrameNet LUs to ConceptNet");
  pm_cmd->add_option("--input", input)->required()->check(CLI::ExistingFile);
  pm_cmd->add_option("--fn-nodes", fn_nodes)->required()->check(CLI::ExistingFile);
  pm_cmd->add_option("--cn-nodes", cn_nodes)->required()->check(CLI::ExistingFile);
  pm_cmd->add_option("--out", out_path)->required();

  auto* fe_cmd = map_cmd->add_subcommand("ground-fe", "Ground frame-element spans to ConceptNet");
  fe_cmd->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  fe_cmd->add_option("--lemmas", lemmas_path)->check(CLI::ExistingFile);
  fe_cmd->add_option("--fn-nodes", fn_nodes)->required()->check(CLI::ExistingFile);
  fe_cmd->add_option("--cn-nodes", cn_nodes)->required()->check(CLI::ExistingFile);
  fe_cmd->add_option("--out", out_path)->required();

  std::string synsets_path, docs_path, embeddings_path, candidates_path;
  linker::LinkerConfig linker_cfg;
  auto* wd_cmd = map_cmd->add_subcommand("wikidata", "Link WordNet synsets to Wikidata items");
  wd_cmd->add_option("--synsets", synsets_path)->required()->check(CLI::ExistingFile);
  wd_cmd->add_option("--docs", docs_path)->required()->check(CLI::ExistingFile);
  wd_cmd->add_option("--embeddings", embeddings_path, "Vector TSV; hashed bag of words when omitted")
      ->check(CLI::ExistingFile);
  wd_cmd->add_option("--dim", linker_cfg.dim, "Dimension of the hashed provider")->check(CLI::PositiveNumber);
  wd_cmd->add_option("--top-k", linker_cfg.top_k)->check(CLI::PositiveNumber);
  wd_cmd->add_option("--candidates", candidates_path, "Write every scored candidate as JSON");
  wd_cmd->add_option("--out", out_path)->required();

  // merge
  std::vector<std::string> node_paths, edge_paths, mapping_paths;
  std::string decisions_path, priority_csv;
  bool permissive = false, strict = false;
  auto* merge_cmd = app.add_subcommand("merge", "Deduplicate, concatenate and merge SameAs components");
  merge_cmd->add_option("--nodes", node_paths)->required()->delimiter(',')->check(CLI::ExistingFile);
  merge_cmd->add_option("--edges", edge_paths)->required()->delimiter(',')->check(CLI::ExistingFile);
  merge_cmd->add_option("--mappings", mapping_paths)->delimiter(',')->check(CLI::ExistingFile);
  merge_cmd->add_option("--decisions", decisions_path, "Decision log gating probabilistic mappings");
  auto* strict_flag = merge_cmd->add_flag("--strict", strict, "Drop undecided probabilistic mappings (default)");
  merge_cmd->add_flag("--permissive", permissive, "Keep undecided probabilistic mappings")->excludes(strict_flag);
  merge_cmd->add_option("--priority", priority_csv, "Merged-id member order")
      ->default_str("vg,wn,cn,rg,at,fn,wd,mowgli");
  merge_cmd->add_option("--out-nodes", out_nodes)->required();
  merge_cmd->add_option("--out-edges", out_edges)->required();

  // stats
  std::string stats_edges, histogram_dir;
  bool with_pagerank = false, with_hits = false;
  stats::PageRankOptions pr_opts;
  stats::HitsOptions hits_opts;
  std::size_t top = 10;
  auto* stats_cmd = app.add_subcommand("stats", "Degree statistics, PageRank and HITS");
  stats_cmd->add_option("--edges", stats_edges)->required()->check(CLI::ExistingFile);
  stats_cmd->add_option("--out", out_path)->required();
  stats_cmd->add_flag("--pagerank", with_pagerank);
  stats_cmd->add_flag("--hits", with_hits);
  stats_cmd->add_option("--damping", pr_opts.damping)->check(CLI::Range(0.0, 1.0));
  stats_cmd->add_option("--tol", pr_opts.tol);
  stats_cmd->add_option("--max-iter", pr_opts.max_iter)->check(CLI::PositiveNumber);
  stats_cmd->add_option("--top-k", top)->check(CLI::PositiveNumber);
  stats_cmd->add_option("--histograms", histogram_dir, "Directory for degree histogram TSVs");

  // ground
  std::string questions_path, subset_code, triples_path;
  auto* ground_cmd = app.add_subcommand("ground", "Count question/answer connecting triples");
  ground_cmd->add_option("--nodes", node_paths)->required()->delimiter(',')->check(CLI::ExistingFile);
  ground_cmd->add_option("--edges", edge_paths)->required()->delimiter(',')->check(CLI::ExistingFile);
  ground_cmd->add_option("--questions", questions_path)->required()->check(CLI::ExistingFile);
  ground_cmd->add_option("--subset", subset_code, "Restrict edges to one datasource");
  ground_cmd->add_option("--lemmas", lemmas_path)->check(CLI::ExistingFile);
  ground_cmd->add_option("--out", out_path)->required();
  ground_cmd->add_option("--emit-triples", triples_path, "Write retrieved triples as an edge table");

  // run
  std::string manifest_path;
  auto* run_cmd = app.add_subcommand("run", "Run a pipeline manifest");
  run_cmd->add_option("manifest", manifest_path)->required();

  // serve
  std::string log_path, host = "127.0.0.1", ui_dir;
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "Serve mapping candidates for review");
  serve_cmd->add_option("--mappings", mapping_paths)->required()->delimiter(',')->check(CLI::ExistingFile);
  serve_cmd->add_option("--nodes", node_paths)->delimiter(',')->check(CLI::ExistingFile);
  serve_cmd->add_option("--docs", docs_path)->check(CLI::ExistingFile);
  serve_cmd->add_option("--synsets", synsets_path)->check(CLI::ExistingFile);
  serve_cmd->add_option("--log", log_path)->required();
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--port", port);
  serve_cmd->add_option("--ui", ui_dir, "Directory of built UI assets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*import_cmd) {
      const auto source = importers::parse_source(source_name);
      if (!source) throw Error(ErrorCode::kContract, "unknown source '" + source_name + "'");
      const auto symmetric = symmetric_path.empty() ? importers::SymmetricRelationSet()
                                                    : importers::SymmetricRelationSet::load(symmetric_path);
      auto result = importers::import_source(*source, input, symmetric);
      report(source_name, result.diagnostics);
      write_node_table(out_nodes, result.nodes);
      write_edge_table(out_edges, result.edges);
      spdlog::info("{}: {} nodes, {} edges", source_name, result.nodes.rows.size(), result.edges.rows.size());
    } else if (*map_cmd) {
      EdgeTable edges;
      Diagnostics diag;
      if (*exact_cmd) {
        mappers::ExactMatchOptions opts{include_aliases, !keep_pos};
        edges = mappers::exact_label_match(read_node_table(left), read_node_table(right), opts);
      } else if (*ili_cmd) {
        auto in = open_in(ili_path);
        const auto rows = mappers::parse_ili(in, diag);
        auto r = mappers::ili_align(rows, read_node_table(cn_nodes), read_node_table(synset_nodes));
        edges = std::move(r.edges);
        diag.merge(r.diagnostics);
      } else if (*pm_cmd) {
        auto in = open_in(input);
        const auto rows = mappers::parse_predicate_matrix(in, diag);
        auto r = mappers::ingest_predicate_matrix(rows, read_node_table(fn_nodes), read_node_table(cn_nodes));
        edges = std::move(r.edges);
        diag.merge(r.diagnostics);
      } else if (*fe_cmd) {
        auto in = open_in(corpus_path);
        const auto corpus = mappers::parse_fe_corpus(in, diag);
        const auto lemmas = lemmas_path.empty() ? grounder::LemmaDictionary{} : grounder::load_lemmas(lemmas_path);
        auto r = mappers::ground_frame_elements(corpus, read_node_table(fn_nodes), read_node_table(cn_nodes),
                                                lemmas);
        edges = std::move(r.edges);
        diag.merge(r.diagnostics);
      } else if (*wd_cmd) {
        auto syn_in = open_in(synsets_path);
        auto doc_in = open_in(docs_path);
        const auto synsets = linker::parse_synsets(syn_in, diag);
        const auto index = linker::build_index(linker::parse_docs(doc_in, diag));
        std::unique_ptr<linker::EmbeddingProvider> provider;
        if (embeddings_path.empty()) {
          provider = std::make_unique<linker::HashedBagOfWordsProvider>(linker_cfg.dim);
        } else {
          provider = std::make_unique<linker::FileEmbeddingProvider>(embeddings_path);
        }
        auto r = linker::link_synsets(synsets, index, *provider, linker_cfg);
        edges = std::move(r.edges);
        diag.merge(r.diagnostics);
        if (!candidates_path.empty()) {
          auto arr = nlohmann::json::array();
          for (const auto& c : r.candidates) {
            arr.push_back({{"synset", c.synset},
                           {"wikidata", c.wikidata},
                           {"retrieval_score", c.retrieval_score},
                           {"similarity", c.similarity ? nlohmann::json(*c.similarity) : nlohmann::json()}});
          }
          write_json(candidates_path, arr);
        }
      }
      report("map", diag);
      write_edge_table(out_path, edges);
      spdlog::info("{} mapping edges", edges.rows.size());
    } else if (*merge_cmd) {
      const auto priority = priority_csv.empty() ? DatasourcePriority() : DatasourcePriority::parse(priority_csv);
      EdgeTable mappings = read_edges(mapping_paths);
      if (!decisions_path.empty()) {
        EdgeTable probabilistic, fixed;
        for (auto& e : mappings.rows) (is_probabilistic(e) ? probabilistic : fixed).rows.push_back(std::move(e));
        const auto decisions = load_decisions(decisions_path);
        report("decision log", decisions.diagnostics);
        auto gated = filter_by_decisions(probabilistic, decisions,
                                         permissive ? GateMode::kPermissive : GateMode::kStrict);
        report("decisions", gated.diagnostics);
        spdlog::info("probabilistic mappings: {} accepted, {} rejected, {} undecided", gated.accepted,
                     gated.rejected, gated.undecided);
        mappings = concatenate(std::vector<EdgeTable>{fixed, gated.edges});
      }
      const NodeTable nodes = dedup_nodes(read_nodes(node_paths));
      const EdgeTable edges = dedup_edges(concatenate(std::vector<EdgeTable>{read_edges(edge_paths), mappings}));
      const auto plan = build_merge_plan(edges, priority);
      auto merged = apply_merge(nodes, edges, plan);
      verify_merged(merged);
      write_node_table(out_nodes, merged.nodes);
      write_edge_table(out_edges, merged.edges);
      spdlog::info("{} components; {} nodes, {} edges", plan.components.size(), merged.nodes.rows.size(),
                   merged.edges.rows.size());
    } else if (*stats_cmd) {
      const auto edges = read_edge_table(stats_edges);
      const auto st = stats::degree_stats(edges);
      auto j = st.to_json();
      hits_opts.tol = pr_opts.tol;
      hits_opts.max_iter = pr_opts.max_iter;
      if (with_pagerank) {
        const auto pr = stats::pagerank(edges, pr_opts);
        j["pagerank"] = {{"iterations", pr.iterations},
                         {"residual", pr.residual},
                         {"top", stats::ranked_json(stats::top_k(pr.ids, pr.scores, top))}};
      }
      if (with_hits) {
        const auto h = stats::hits(edges, hits_opts);
        j["hits"] = {{"iterations", h.iterations},
                     {"residual", h.residual},
                     {"hubs", stats::ranked_json(stats::top_k(h.ids, h.hubs, top))},
                     {"authorities", stats::ranked_json(stats::top_k(h.ids, h.authorities, top))}};
      }
      write_json(out_path, j);
      if (!histogram_dir.empty()) stats::write_histograms(histogram_dir, "degree_", st);
    } else if (*ground_cmd) {
      std::optional<Datasource> subset;
      if (!subset_code.empty()) {
        subset = parse_datasource(subset_code);
        if (!subset) throw Error(ErrorCode::kInvalidDatasource, "unknown subset '" + subset_code + "'");
      }
      Diagnostics diag;
      auto in = open_in(questions_path);
      const auto items = grounder::parse_qa_jsonl(in, diag);
      report("questions", diag);
      const auto lemmas = lemmas_path.empty() ? grounder::LemmaDictionary{} : grounder::load_lemmas(lemmas_path);
      auto result = grounder::dataset_report(items, read_nodes(node_paths), read_edges(edge_paths), subset, lemmas);
      result.diagnostics.merge(diag);
      write_json(out_path, result.to_json());
      if (!triples_path.empty()) {
        EdgeTable triples{"triples", {}};
        for (const auto& q : result.questions) {
          for (const auto& c : q.choices) triples.rows.insert(triples.rows.end(), c.triples.begin(), c.triples.end());
        }
        write_edge_table(triples_path, dedup_edges(triples));
      }
      spdlog::info("{} questions, {} triples", result.questions.size(), result.total);
    } else if (*run_cmd) {
      const auto outcome = run_pipeline_file(manifest_path);
      if (!outcome.message.empty()) std::cerr << outcome.message << '\n';
      std::cout << outcome.status << '\n';
      return outcome.exit_code;
    } else if (*serve_cmd) {
      review::NodeDirectory dir;
      for (const auto& p : node_paths) review::add_nodes(dir, read_node_table(p));
      Diagnostics diag;
      if (!docs_path.empty()) {
        auto in = open_in(docs_path);
        review::add_docs(dir, linker::parse_docs(in, diag));
      }
      if (!synsets_path.empty()) {
        auto in = open_in(synsets_path);
        review::add_synsets(dir, linker::parse_synsets(in, diag));
      }
      review::ReviewStore store(read_edges(mapping_paths), std::move(dir), log_path);
      review::ReviewService service(store, ui_dir.empty() ? std::nullopt : std::optional<fs::path>(ui_dir));
      spdlog::info("serving {} candidates on http://{}:{}", store.size(), host, port);
      service.serve(host, port);
    }
  } catch (const Error& e) {
    spdlog::error("{} error: {}", to_string(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
