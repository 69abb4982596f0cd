// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include <gtest/gtest.h>

#include <fstream>
#include <atomic>
#include <thread>

#include "fixtures.hpp"
#include "kgforge/decisions.hpp"
#include "kgforge/review_service.hpp"

// After Eigen: <resolv.h> defines a `_res` macro that clashes with Eigen.
#include <httplib.h>

using namespace kgforge;
using namespace kgforge::review;

namespace {

EdgeTable candidates(int n) {
  EdgeTable t{"wn-wd", {}};
  for (int i = 0; i < n; ++i) {
    EdgeRecord e{"wn:s" + std::to_string(i) + ".n.01", "mw:SameAs", "wd:Q" + std::to_string(i),
                 Datasource::kMowgli, (i % 10) / 10.0, Provenance::object()};
    e.other["similarity"] = (i % 10) / 10.0;
    t.rows.push_back(e);
  }
  return t;
}

NodeDirectory directory() {
  NodeDirectory d;
  d["wn:s1.n.01"] = {"first", {"uno"}, "the first synset"};
  d["wd:Q1"] = {"one", {}, "item one"};
  return d;
}

std::string decision_body(int i, const std::string& decision, const std::string& who = "tester") {
  return nlohmann::json{{"subject", "wn:s" + std::to_string(i) + ".n.01"},
                        {"object", "wd:Q" + std::to_string(i)},
                        {"decision", decision},
                        {"annotator", who}}
      .dump();
}

std::size_t count_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) n += line.empty() ? 0 : 1;
  return n;
}

struct Server {
  explicit Server(ReviewStore& store) : service(store), port(service.start("127.0.0.1", 0)), client("127.0.0.1", port) {}
  ReviewService service;
  int port;
  httplib::Client client;
};

}  // namespace

TEST(ReviewStore, ListPagesByWeight) {
  const auto dir = fixtures::scratch("review_list");
  ReviewStore store(candidates(25), directory(), dir / "log.jsonl");
  EXPECT_EQ(store.size(), 25u);
  const auto page = store.list(std::nullopt, 0, 5);
  EXPECT_EQ(page["total"], 25);
  ASSERT_EQ(page["items"].size(), 5u);
  EXPECT_EQ(page["items"][0]["weight"], 0.9);
  EXPECT_EQ(page["items"][0]["subject"]["id"], "wn:s19.n.01");
  const auto last = store.list(std::nullopt, 20, 50);
  EXPECT_EQ(last["items"].size(), 5u);
  const auto one = store.item({"wn:s1.n.01", "wd:Q1"});
  ASSERT_TRUE(one);
  EXPECT_EQ((*one)["subject"]["label"], "first");
  EXPECT_EQ((*one)["object"]["description"], "item one");
  EXPECT_EQ((*one)["state"], "pending");
}

TEST(ReviewService, HttpRoundTrip) {
  const auto dir = fixtures::scratch("review_http");
  ReviewStore store(candidates(6), directory(), dir / "log.jsonl");
  Server s(store);

  auto res = s.client.Get("/api/candidates?status=pending&limit=2");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(nlohmann::json::parse(res->body)["items"].size(), 2u);

  res = s.client.Post("/api/candidates/decision", decision_body(1, "accepted"), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(nlohmann::json::parse(res->body)["state"], "accepted");

  // Same decision again is idempotent; a different one conflicts.
  EXPECT_EQ(s.client.Post("/api/candidates/decision", decision_body(1, "accepted"), "application/json")->status, 200);
  EXPECT_EQ(s.client.Post("/api/candidates/decision", decision_body(1, "rejected"), "application/json")->status, 409);
  EXPECT_EQ(s.client.Post("/api/candidates/decision", decision_body(99, "accepted"), "application/json")->status, 404);
  EXPECT_EQ(s.client.Post("/api/candidates/decision", decision_body(2, "maybe"), "application/json")->status, 422);
  EXPECT_EQ(s.client.Post("/api/candidates/decision", "{oops", "application/json")->status, 400);
  EXPECT_EQ(s.client.Post("/api/candidates/decision", "{\"subject\":\"x\"}", "application/json")->status, 400);
  EXPECT_EQ(s.client.Get("/api/candidates?status=bogus")->status, 400);
  EXPECT_EQ(s.client.Get("/api/candidates?offset=-1")->status, 400);

  res = s.client.Post("/api/candidates/decision", decision_body(2, "rejected"), "application/json");
  EXPECT_EQ(res->status, 200);

  res = s.client.Get("/api/progress");
  const auto progress = nlohmann::json::parse(res->body);
  EXPECT_EQ(progress["accepted"], 1);
  EXPECT_EQ(progress["rejected"], 1);
  EXPECT_EQ(progress["pending"], 4);
  EXPECT_EQ(progress["total"], 6);

  const auto accepted = nlohmann::json::parse(s.client.Get("/api/candidates?status=accepted")->body);
  EXPECT_EQ(accepted["total"], 1);

  res = s.client.Get("/");
  EXPECT_EQ(res->status, 200);
  EXPECT_NE(res->body.find("/api/"), std::string::npos);

  s.service.stop();
  EXPECT_EQ(count_lines(dir / "log.jsonl"), 2u);
}

TEST(ReviewService, ConcurrentDecisionsAllLogged) {
  const auto dir = fixtures::scratch("review_concurrent");
  constexpr int kThreads = 8;
  constexpr int kPerThread = 10;
  {
    ReviewStore store(candidates(kThreads * kPerThread), directory(), dir / "log.jsonl");
    Server s(store);
    std::vector<std::thread> threads;
    std::atomic<int> ok{0};
    for (int t = 0; t < kThreads; ++t) {
      threads.emplace_back([&, t] {
        httplib::Client c("127.0.0.1", s.port);
        for (int k = 0; k < kPerThread; ++k) {
          const int i = t * kPerThread + k;
          auto res = c.Post("/api/candidates/decision", decision_body(i, i % 3 ? "accepted" : "rejected"),
                            "application/json");
          if (res && res->status == 200) ++ok;
        }
      });
    }
    for (auto& th : threads) th.join();
    EXPECT_EQ(ok.load(), kThreads * kPerThread);
    s.service.stop();
  }
  EXPECT_EQ(count_lines(dir / "log.jsonl"), static_cast<std::size_t>(kThreads * kPerThread));
  const auto state = load_decisions(dir / "log.jsonl");
  EXPECT_EQ(state.diagnostics.skipped, 0u);
  EXPECT_EQ(state.latest.size(), static_cast<std::size_t>(kThreads * kPerThread));
}

TEST(ReviewService, RestartReplaysLog) {
  const auto dir = fixtures::scratch("review_restart");
  {
    ReviewStore store(candidates(4), directory(), dir / "log.jsonl");
    store.decide({"wn:s0.n.01", "wd:Q0"}, "accepted", "a");
    store.decide({"wn:s3.n.01", "wd:Q3"}, "rejected", "b");
  }
  // A torn final line from a crash mid-write is ignored.
  std::ofstream(dir / "log.jsonl", std::ios::app) << "{\"subject\":\"wn:s1.n.01\",\"obj";
  ReviewStore again(candidates(4), directory(), dir / "log.jsonl");
  const auto p = again.progress();
  EXPECT_EQ(p["accepted"], 1);
  EXPECT_EQ(p["rejected"], 1);
  EXPECT_EQ((*again.item({"wn:s3.n.01", "wd:Q3"}))["annotator"], "b");

  EXPECT_EQ(again.decide({"wn:s2.n.01", "wd:Q2"}, "accepted", "c").status, DecideStatus::kOk);
  const auto replayed = load_decisions(dir / "log.jsonl");
  EXPECT_EQ(replayed.latest.size(), 3u);
  EXPECT_EQ(replayed.diagnostics.skipped, 1u);
}
