// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include "kgforge/review_service.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <numeric>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "kgforge/text.hpp"

namespace kgforge::review {

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json info_json(const NodeDirectory& dir, const std::string& id) {
  auto it = dir.find(id);
  if (it == dir.end()) return {{"id", id}, {"label", ""}, {"aliases", nlohmann::json::array()}, {"description", ""}};
  return {{"id", id},
          {"label", it->second.label},
          {"aliases", it->second.aliases},
          {"description", it->second.description}};
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(nlohmann::json{{"error", message}}.dump(), "application/json");
}

bool ends_without_newline(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in || in.tellg() <= 0) return false;
  in.seekg(-1, std::ios::end);
  return in.get() != '\n';
}

constexpr const char* kPlaceholder =
    "<!doctype html><title>kgforge review</title>"
    "<p>No UI assets configured. The JSON API lives under /api/.</p>";

}  // namespace

void add_nodes(NodeDirectory& dir, const NodeTable& nodes) {
  for (const auto& n : nodes.rows) {
    auto& info = dir[n.id];
    if (info.label.empty()) info.label = n.label;
    if (info.aliases.empty()) info.aliases = n.aliases;
    if (info.description.empty()) {
      auto d = n.other.find("description");
      if (d != n.other.end() && d->is_string()) info.description = d->get<std::string>();
    }
  }
}

void add_docs(NodeDirectory& dir, const std::vector<linker::WikidataDoc>& docs) {
  for (const auto& d : docs) {
    auto& info = dir[d.id];
    if (info.label.empty()) info.label = d.label;
    if (info.aliases.empty()) info.aliases = d.aliases;
    if (info.description.empty()) info.description = d.description;
  }
}

void add_synsets(NodeDirectory& dir, const std::vector<linker::SynsetDoc>& synsets) {
  for (const auto& s : synsets) {
    auto& info = dir[s.id];
    if (info.label.empty() && !s.words.empty()) info.label = s.words.front();
    if (info.aliases.empty() && s.words.size() > 1) info.aliases.assign(s.words.begin() + 1, s.words.end());
    if (info.description.empty()) info.description = s.description;
  }
}

ReviewStore::ReviewStore(EdgeTable mappings, NodeDirectory directory, std::filesystem::path log_path)
    : mappings_(std::move(mappings)), directory_(std::move(directory)), log_path_(std::move(log_path)) {
  mappings_ = dedup_edges(mappings_);
  // Several predicates between one pair would share a key; keep the first.
  std::vector<EdgeRecord> unique;
  for (auto& e : mappings_.rows) {
    if (index_.emplace(CandidateKey{e.subject, e.object}, unique.size()).second) {
      unique.push_back(std::move(e));
    }
  }
  mappings_.rows = std::move(unique);

  order_.resize(mappings_.rows.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = mappings_.rows[a];
    const auto& eb = mappings_.rows[b];
    if (ea.effective_weight() != eb.effective_weight()) return ea.effective_weight() > eb.effective_weight();
    return std::tie(ea.subject, ea.object) < std::tie(eb.subject, eb.object);
  });

  state_.assign(mappings_.rows.size(), Decision::kPending);
  annotator_.assign(mappings_.rows.size(), "");
  const auto replayed = load_decisions(log_path_);
  for (const auto& [key, event] : replayed.latest) {
    auto it = index_.find(key);
    if (it == index_.end()) continue;
    state_[it->second] = event.decision;
    annotator_[it->second] = event.annotator;
  }
  if (replayed.diagnostics.skipped) {
    spdlog::warn("decision log {}: {} unreadable lines ignored", log_path_.string(),
                 replayed.diagnostics.skipped);
  }

  if (log_path_.has_parent_path()) std::filesystem::create_directories(log_path_.parent_path());
  const bool torn_tail = ends_without_newline(log_path_);
  log_.open(log_path_, std::ios::app | std::ios::binary);
  if (!log_) throw Error(ErrorCode::kIo, "cannot open decision log " + log_path_.string());
  // A crash mid-write leaves a partial last line; start the next event on a fresh one.
  if (torn_tail) log_ << '\n' << std::flush;
}

nlohmann::json ReviewStore::item_json(std::size_t i) const {
  const auto& e = mappings_.rows[i];
  nlohmann::json j = {{"subject", info_json(directory_, e.subject)},
                      {"object", info_json(directory_, e.object)},
                      {"weight", e.effective_weight()},
                      {"state", linker::to_string(state_[i])},
                      {"annotator", annotator_[i]}};
  if (auto s = e.other.find("similarity"); s != e.other.end()) j["similarity"] = *s;
  return j;
}

nlohmann::json ReviewStore::list(std::optional<Decision> status, std::size_t offset,
                                 std::size_t limit) const {
  std::lock_guard lock(mu_);
  auto items = nlohmann::json::array();
  std::size_t matched = 0;
  for (std::size_t i : order_) {
    if (status && state_[i] != *status) continue;
    if (matched >= offset && items.size() < limit) items.push_back(item_json(i));
    ++matched;
  }
  return {{"items", std::move(items)}, {"total", matched}, {"offset", offset}, {"limit", limit}};
}

std::optional<nlohmann::json> ReviewStore::item(const CandidateKey& key) const {
  std::lock_guard lock(mu_);
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return item_json(it->second);
}

nlohmann::json ReviewStore::progress() const {
  std::lock_guard lock(mu_);
  std::size_t counts[3] = {0, 0, 0};
  for (auto s : state_) ++counts[static_cast<int>(s)];
  return {{"pending", counts[0]},
          {"accepted", counts[1]},
          {"rejected", counts[2]},
          {"total", state_.size()}};
}

DecideResult ReviewStore::decide(const CandidateKey& key, const std::string& decision,
                                 const std::string& annotator) {
  const auto d = linker::parse_decision(decision);
  if (!d || *d == Decision::kPending) return {DecideStatus::kInvalidDecision, {}};

  std::lock_guard lock(mu_);
  auto it = index_.find(key);
  if (it == index_.end()) return {DecideStatus::kUnknownKey, {}};
  const std::size_t i = it->second;
  if (state_[i] == *d) return {DecideStatus::kOk, item_json(i)};
  if (state_[i] != Decision::kPending) return {DecideStatus::kConflict, item_json(i)};

  DecisionEvent event{key.first, key.second, *d, utc_now(), annotator};
  log_ << event.to_json().dump() << '\n';
  log_.flush();
  if (!log_) throw Error(ErrorCode::kIo, "write to decision log failed");
  state_[i] = *d;
  annotator_[i] = annotator;
  return {DecideStatus::kOk, item_json(i)};
}

ReviewService::ReviewService(ReviewStore& store, std::optional<std::filesystem::path> ui_dir)
    : store_(store), ui_dir_(std::move(ui_dir)), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

ReviewService::~ReviewService() { stop(); }

void ReviewService::install_routes() {
  auto& srv = *server_;

  srv.Get("/api/candidates", [this](const httplib::Request& req, httplib::Response& res) {
    std::optional<Decision> status;
    if (req.has_param("status")) {
      const auto s = req.get_param_value("status");
      if (s != "all") {
        status = linker::parse_decision(s);
        if (!status) return reply_error(res, 400, "unknown status '" + s + "'");
      }
    }
    auto number = [&](const char* name, std::size_t fallback) -> std::optional<std::size_t> {
      if (!req.has_param(name)) return fallback;
      auto v = text::parse_int(req.get_param_value(name));
      if (!v || *v < 0) return std::nullopt;
      return static_cast<std::size_t>(*v);
    };
    const auto offset = number("offset", 0);
    const auto limit = number("limit", 50);
    if (!offset || !limit) return reply_error(res, 400, "offset and limit must be non-negative integers");
    res.set_content(store_.list(status, *offset, *limit).dump(), "application/json");
  });

  srv.Post("/api/candidates/decision", [this](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    try {
      body = nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::parse_error&) {
      return reply_error(res, 400, "body is not valid JSON");
    }
    if (!body.is_object()) return reply_error(res, 400, "body must be a JSON object");
    for (const char* k : {"subject", "object", "decision"}) {
      if (!body.contains(k) || !body[k].is_string()) {
        return reply_error(res, 400, std::string("missing string field '") + k + "'");
      }
    }
    if (body.contains("annotator") && !body["annotator"].is_string()) {
      return reply_error(res, 400, "annotator must be a string");
    }
    const CandidateKey key{body["subject"].get<std::string>(), body["object"].get<std::string>()};
    const auto result = store_.decide(key, body["decision"].get<std::string>(),
                                      body.value("annotator", std::string()));
    switch (result.status) {
      case DecideStatus::kOk:
        res.set_content(result.item.dump(), "application/json");
        return;
      case DecideStatus::kUnknownKey:
        return reply_error(res, 404, "no candidate " + key.first + " -> " + key.second);
      case DecideStatus::kInvalidDecision:
        return reply_error(res, 422, "decision must be 'accepted' or 'rejected'");
      case DecideStatus::kConflict:
        res.status = 409;
        res.set_content(nlohmann::json{{"error", "candidate already decided"}, {"item", result.item}}.dump(),
                        "application/json");
        return;
    }
  });

  srv.Get("/api/progress", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(store_.progress().dump(), "application/json");
  });

  if (ui_dir_ && std::filesystem::is_directory(*ui_dir_)) {
    srv.set_mount_point("/", ui_dir_->string());
  } else {
    srv.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholder, "text/html");
    });
  }
}

int ReviewService::start(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void ReviewService::serve(const std::string& host, int port) {
  if (!server_->listen(host, port)) {
    throw Error(ErrorCode::kIo, "cannot listen on " + host + ":" + std::to_string(port));
  }
}

void ReviewService::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace kgforge::review
