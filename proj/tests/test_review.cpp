#include <gtest/gtest.h>
#include <httplib.h>

#include <fstream>
#include <thread>

#include "curate/consensus.hpp"
#include "curate/errors.hpp"
#include "curate/json_io.hpp"
#include "curate/review_server.hpp"
#include "curate/review_store.hpp"
#include "support/gen.hpp"
#include "support/tempdir.hpp"

using namespace curate;

namespace {

ReviewTask task_for(const std::string& path, const std::string& text) {
  return make_review_task({path, 1000, text, {}, {}}, text, NormConfig::bundled());
}

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

ReviewStore::Options journal_at(const std::filesystem::path& p) {
  ReviewStore::Options o;
  o.journal = p;
  std::int64_t t = 1'700'000'000'000;
  o.clock = [t]() mutable { return t += 1000; };
  return o;
}

}  // namespace

TEST(ReviewStore, EnqueueAndList) {
  ReviewStore store;
  const auto id = store.enqueue(task_for("a.wav", "เบอร์ 04"));
  EXPECT_EQ(store.get(id)->status, TaskStatus::Pending);
  EXPECT_EQ(error_code([&] { store.enqueue(task_for("a.wav", "x 1")); }), "DuplicateId");
  auto resolved = task_for("b.wav", "x 2");
  resolved.status = TaskStatus::Resolved;
  EXPECT_EQ(error_code([&] { store.enqueue(resolved); }), "NotPending");
}

TEST(ReviewStore, TaskFromPipelineCarriesNumericFlag) {
  auto a = std::make_shared<MockBackend>("A");
  auto b = std::make_shared<MockBackend>("B");
  auto c = std::make_shared<MockBackend>("C");
  a->set_text("e.wav", "เบอร์ 04 ฟอง");
  b->set_text("e.wav", "เบอร์ 04 ฟอง");
  const std::vector<ManifestEntry> entries = {{"e.wav", 1, "", {}, {}}};
  const std::vector<std::shared_ptr<TranscriptionBackend>> backends = {a, b, c};
  const auto out = run_pipeline(entries, backends, {"A"});
  ReviewStore store;
  const auto id = store.enqueue(*out.at(0).task);
  const auto t = store.get(id);
  ASSERT_TRUE(t);
  EXPECT_TRUE(std::any_of(t->flags.begin(), t->flags.end(),
                          [](const TaskFlag& f) { return f.kind == FlagKind::NumericReading; }));
}

TEST(ReviewStore, ResolveValidates) {
  ReviewStore store;
  const auto id = store.enqueue(task_for("a.wav", "10150"));
  try {
    store.resolve(id, "เบอร์ 04", "ann");
    FAIL();
  } catch (const ReviewError& e) {
    EXPECT_EQ(e.code(), "ValidationFailed");
    ASSERT_FALSE(e.reasons().empty());
    EXPECT_NE(e.reasons()[0].find("ArabicDigit"), std::string::npos);
  }
  EXPECT_EQ(error_code([&] { store.resolve(id, "เก่งๆ", "ann"); }), "ValidationFailed");
  EXPECT_EQ(error_code([&] { store.resolve(id, "ใช้ blockchain", "ann"); }), "ValidationFailed");
  EXPECT_EQ(error_code([&] { store.resolve(id, "   ", "ann"); }), "ValidationFailed");
  const auto t = store.resolve(id, "หนึ่งศูนย์หนึ่งห้าศูนย์", "ann");
  EXPECT_EQ(t.status, TaskStatus::Resolved);
  EXPECT_EQ(t.corrected_text, "หนึ่งศูนย์หนึ่งห้าศูนย์");
  EXPECT_EQ(t.resolver, "ann");
  EXPECT_EQ(error_code([&] { store.resolve(id, "หนึ่งศูนย์หนึ่งห้าศูนย์", "ann"); }), "NotPending");
  EXPECT_EQ(error_code([&] { store.skip(id, "ann"); }), "NotPending");
  EXPECT_EQ(error_code([&] { store.resolve("nope", "ไป", "ann"); }), "NotFound");
}

TEST(ReviewStore, SkipThenResolveRejected) {
  ReviewStore store;
  const auto id = store.enqueue(task_for("a.wav", "1"));
  EXPECT_EQ(store.skip(id, "ann").status, TaskStatus::Skipped);
  EXPECT_EQ(error_code([&] { store.resolve(id, "หนึ่ง", "ann"); }), "NotPending");
}

TEST(ReviewStore, ListFiltersAndPaginates) {
  ReviewStore store;
  EXPECT_TRUE(store.list_tasks({}).tasks.empty());
  EXPECT_FALSE(store.list_tasks({}).next_cursor);
  const auto p1 = store.enqueue(task_for("1.wav", "1"));
  const auto r = store.enqueue(task_for("2.wav", "2"));
  const auto p2 = store.enqueue(task_for("3.wav", "3"));
  store.resolve(r, "สอง", "ann");
  const auto pending = store.list_tasks({TaskStatus::Pending});
  ASSERT_EQ(pending.tasks.size(), 2u);
  EXPECT_EQ(pending.tasks[0].id, p1);
  EXPECT_EQ(pending.tasks[1].id, p2);
  EXPECT_FALSE(pending.next_cursor);

  const auto first = store.list_tasks({TaskStatus::Pending, 1});
  ASSERT_EQ(first.tasks.size(), 1u);
  ASSERT_TRUE(first.next_cursor);
  const auto second = store.list_tasks({TaskStatus::Pending, 1, first.next_cursor});
  ASSERT_EQ(second.tasks.size(), 1u);
  EXPECT_EQ(second.tasks[0].id, p2);
  EXPECT_FALSE(second.next_cursor);
  EXPECT_EQ(error_code([&] { store.list_tasks({std::nullopt, 5, "x"}); }), "BadRequest");
}

TEST(ReviewStoreProperty, PaginationCoversEveryTaskOnce) {
  test::Rng rng(31);
  ReviewStore store;
  std::vector<std::string> ids;
  for (int i = 0; i < 97; ++i) {
    ids.push_back(store.enqueue(task_for(std::to_string(i) + ".wav", std::to_string(i))));
    if (test::pick(rng, 3) == 0) store.skip(ids.back(), "ann");
  }
  for (std::size_t limit : {1u, 2u, 7u, 50u, 200u}) {
    for (auto status : {std::optional<TaskStatus>{}, std::optional{TaskStatus::Pending}, std::optional{TaskStatus::Skipped}}) {
      std::vector<std::string> seen;
      TaskFilter f{status, limit, std::nullopt};
      for (;;) {
        const auto page = store.list_tasks(f);
        ASSERT_LE(page.tasks.size(), limit);
        for (const auto& t : page.tasks) seen.push_back(t.id);
        if (!page.next_cursor) break;
        ASSERT_FALSE(page.tasks.empty());
        f.cursor = page.next_cursor;
      }
      std::vector<std::string> expect;
      for (const auto& id : ids) {
        if (!status || store.get(id)->status == *status) expect.push_back(id);
      }
      ASSERT_EQ(seen, expect);
    }
  }
}

TEST(ReviewStore, RecordAb) {
  ReviewStore store;
  EXPECT_EQ(store.record_ab({"1", "ann", "ref", "sys", Verdict::WinA}), 1u);
  EXPECT_EQ(error_code([&] { store.record_ab({"2", "ann", "ref", "ref", Verdict::WinA}); }), "MalformedJudgment");
  EXPECT_EQ(error_code([&] { store.record_ab({"1", "ann", "ref", "sys", Verdict::Tie}); }), "DuplicateJudgment");
  EXPECT_EQ(store.record_ab({"1", "ann2", "ref", "sys", Verdict::Tie}), 2u);
}

TEST(ReviewStore, AbAggregateMatchesEval) {
  test::Rng rng(32);
  ReviewStore store;
  std::vector<AbJudgment> all;
  for (int i = 0; i < 2000; ++i) {
    const std::string other = "sys" + std::to_string(test::pick(rng, 3));
    AbJudgment j{"item" + std::to_string(i / 2), "ann" + std::to_string(i % 2), test::pick(rng, 2) ? "ref" : other, "",
                 static_cast<Verdict>(test::pick(rng, 3))};
    j.system_b = j.system_a == "ref" ? other : "ref";
    store.record_ab(j);
    all.push_back(j);
  }
  EXPECT_EQ(aggregate_ab(store.judgments(), "ref"), aggregate_ab(all, "ref"));
}

TEST(ReviewStore, BlindedAbFlow) {
  ReviewStore store;
  store.add_ab_item({"i1", "a.wav", "ref", "ไป", "sys", "ไม่ไป"});
  store.add_ab_item({"i2", "b.wav", "ref", "กิน", "sys", "กินข้าว"});
  EXPECT_EQ(error_code([&] { store.add_ab_item({"i1", "", "x", "", "y", ""}); }), "DuplicateId");

  const auto first = store.next_ab("ann");
  ASSERT_TRUE(first);
  EXPECT_EQ(first->item_id, "i1");
  // Same order on every fetch.
  EXPECT_EQ(store.next_ab("ann")->text_a, first->text_a);
  const bool swapped = ab_labels_swapped("i1");
  EXPECT_EQ(first->text_a, swapped ? "ไม่ไป" : "ไป");

  const auto j = store.record_blinded("i1", "ann", Verdict::WinA);
  EXPECT_EQ(j.system_a, "ref");
  EXPECT_EQ(j.verdict, swapped ? Verdict::WinB : Verdict::WinA);
  EXPECT_EQ(store.next_ab("ann")->item_id, "i2");
  EXPECT_EQ(store.next_ab("other")->item_id, "i1");
  store.record_blinded("i2", "ann", Verdict::Tie);
  EXPECT_FALSE(store.next_ab("ann"));
  EXPECT_EQ(error_code([&] { store.record_blinded("i2", "ann", Verdict::Tie); }), "DuplicateJudgment");
  EXPECT_EQ(error_code([&] { store.record_blinded("zz", "ann", Verdict::Tie); }), "NotFound");
}

TEST(ReviewStore, LabelOrderVariesAcrossItems) {
  int swapped = 0;
  for (int i = 0; i < 200; ++i) swapped += ab_labels_swapped("item" + std::to_string(i));
  EXPECT_GT(swapped, 50);
  EXPECT_LT(swapped, 150);
}

TEST(ReviewJournal, ReplayReconstructsState) {
  test::TempDir dir;
  const auto journal = dir / "review.jsonl";
  ReviewState before;
  {
    ReviewStore store(journal_at(journal));
    for (int i = 0; i < 20; ++i) store.enqueue(task_for(std::to_string(i) + ".wav", "เบอร์ " + std::to_string(i)));
    store.resolve(task_id_for("3.wav"), "เบอร์สาม", "ann");
    store.skip(task_id_for("4.wav"), "ann");
    store.add_ab_item({"i1", "a.wav", "ref", "x", "sys", "y"});
    store.record_blinded("i1", "ann", Verdict::WinB);
    store.record_ab({"i9", "ann", "ref", "sys", Verdict::Tie});
    before = store.state();
  }
  ReviewStore again(journal_at(journal));
  EXPECT_EQ(again.state(), before);
  EXPECT_EQ(again.export_resolved().size(), 1u);
  EXPECT_EQ(again.export_resolved()[0].text, "เบอร์สาม");
  // Continues the sequence after replay.
  again.enqueue(task_for("new.wav", "1"));
  EXPECT_EQ(again.state().seq, before.seq + 1);
}

TEST(ReviewJournal, SnapshotAndJournalAgree) {
  test::TempDir dir;
  const auto journal = dir / "review.jsonl";
  ReviewState before;
  {
    auto opts = journal_at(journal);
    opts.snapshot_every = 7;
    ReviewStore store(opts);
    for (int i = 0; i < 30; ++i) store.enqueue(task_for(std::to_string(i) + ".wav", std::to_string(i)));
    for (int i = 0; i < 10; ++i) store.skip(task_id_for(std::to_string(i) + ".wav"), "ann");
    before = store.state();
  }
  ASSERT_TRUE(std::filesystem::exists(ReviewStore::snapshot_path(journal)));
  EXPECT_EQ(ReviewStore(journal_at(journal)).state(), before);
  auto full = journal_at(journal);
  full.use_snapshot = false;
  EXPECT_EQ(ReviewStore(full).state(), before);
}

TEST(ReviewJournal, TornFinalLineIsDropped) {
  test::TempDir dir;
  const auto journal = dir / "review.jsonl";
  {
    ReviewStore store(journal_at(journal));
    store.enqueue(task_for("a.wav", "1"));
  }
  std::ofstream(journal, std::ios::app) << R"({"seq":2,"type":"TaskEnqu)";
  ReviewStore store(journal_at(journal));
  EXPECT_EQ(store.state().tasks.size(), 1u);
  store.enqueue(task_for("b.wav", "2"));
  EXPECT_EQ(ReviewStore(journal_at(journal)).state().tasks.size(), 2u);
}

TEST(ReviewJournal, ConcurrentWritersAreSerialized) {
  test::TempDir dir;
  ReviewStore store(journal_at(dir / "j.jsonl"));
  std::vector<std::jthread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 25; ++i) store.enqueue(task_for(std::to_string(t) + "-" + std::to_string(i), "1"));
    });
  }
  threads.clear();
  EXPECT_EQ(store.state().tasks.size(), 200u);
  EXPECT_EQ(ReviewStore(journal_at(dir / "j.jsonl")).state(), store.state());
}

TEST(AudioPath, GuardsRoot) {
  test::TempDir dir;
  std::filesystem::create_directories(dir / "audio/sub");
  EXPECT_FALSE(resolve_under_root(dir / "audio", "sub/a.wav").empty());
  EXPECT_TRUE(resolve_under_root(dir / "audio", "../secret").empty());
  EXPECT_TRUE(resolve_under_root(dir / "audio", "/etc/passwd").empty());
  EXPECT_TRUE(resolve_under_root(dir / "audio", "sub/../../x").empty());
  EXPECT_EQ(audio_content_type("a.WAV"), "audio/wav");
  EXPECT_EQ(audio_content_type("a.flac"), "audio/flac");
  EXPECT_EQ(audio_content_type("a.bin"), "application/octet-stream");
}

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::filesystem::create_directories(dir_ / "audio");
    std::ofstream(dir_ / "audio/a.wav", std::ios::binary) << "RIFFdata";
    store_ = std::make_unique<ReviewStore>(journal_at(dir_ / "j.jsonl"));
    server_ = std::make_unique<ReviewServer>(*store_, ReviewServer::Options{dir_ / "audio", {}});
    port_ = server_->bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->run(); });
    server_->wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override {
    server_->stop();
    if (thread_.joinable()) thread_.join();
  }

  Json get(const std::string& path, int expect_status = 200) {
    auto res = client_->Get(path);
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, expect_status) << path << " " << res->body;
    return Json::parse(res->body);
  }
  Json post(const std::string& path, const Json& body, int expect_status = 200) {
    auto res = client_->Post(path, dump_line(body), "application/json");
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, expect_status) << path << " " << res->body;
    return Json::parse(res->body);
  }

  test::TempDir dir_;
  std::unique_ptr<ReviewStore> store_;
  std::unique_ptr<ReviewServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(ServerTest, TaskLifecycle) {
  const auto id = store_->enqueue(make_review_task({"a.wav", 1000, "", {}, {}}, "6-7", store_->config()));
  auto page = get("/api/tasks?status=Pending&limit=10");
  ASSERT_EQ(page["tasks"].size(), 1u);
  EXPECT_TRUE(page["next_cursor"].is_null());
  EXPECT_EQ(page["tasks"][0]["proposed_text"], "หกถึงเจ็ด");

  EXPECT_EQ(get("/api/tasks/" + id)["id"], id);
  get("/api/tasks/none", 404);

  auto bad = post("/api/tasks/" + id + "/resolve", {{"corrected_text", "6-7"}, {"annotator_id", "ann"}}, 422);
  EXPECT_EQ(bad["error"], "ValidationFailed");
  EXPECT_FALSE(bad["reasons"].empty());

  auto ok = post("/api/tasks/" + id + "/resolve", {{"corrected_text", "หกถึงเจ็ด"}, {"annotator_id", "ann"}});
  EXPECT_EQ(ok["status"], "Resolved");
  EXPECT_EQ(ok["corrected_text"], "หกถึงเจ็ด");
  post("/api/tasks/" + id + "/resolve", {{"corrected_text", "หกถึงเจ็ด"}, {"annotator_id", "ann"}}, 409);
  post("/api/tasks/" + id + "/skip", {{"annotator_id", "ann"}}, 409);
  post("/api/tasks/" + id + "/resolve", {{"annotator_id", "ann"}}, 400);
  EXPECT_EQ(get("/api/tasks?status=Pending")["tasks"].size(), 0u);
}

TEST_F(ServerTest, BadRequests) {
  auto res = client_->Post("/api/normalize/preview", "{not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  get("/api/tasks?status=weird", 400);
  get("/api/tasks?limit=abc", 400);
  get("/api/abtests/next", 400);
}

TEST_F(ServerTest, Preview) {
  auto r = post("/api/normalize/preview", {{"text", "6-7"}, {"symbol_sense", "Minus"}});
  EXPECT_EQ(r["text"], "หกลบเจ็ด");
  EXPECT_EQ(r["flags"][0]["kind"], "SymbolSense");
  EXPECT_TRUE(r["complexity"]["complex"].get<bool>());
  r = post("/api/normalize/preview", {{"text", "เก่ง เก่ง"}});
  EXPECT_TRUE(r["flags"].empty());
  EXPECT_TRUE(r["reasons"].empty());
  EXPECT_FALSE(r["complexity"]["complex"].get<bool>());
}

TEST_F(ServerTest, AbFlowStaysBlind) {
  store_->add_ab_item({"i1", "a.wav", "pathumma", "ไป", "typhoon", "ไม่ไป"});
  auto next = get("/api/abtests/next?annotator_id=ann");
  ASSERT_FALSE(next["item"].is_null());
  const std::string body = dump_line(next);
  EXPECT_EQ(body.find("pathumma"), std::string::npos);
  EXPECT_EQ(body.find("typhoon"), std::string::npos);
  EXPECT_EQ(get("/api/abtests/next?annotator_id=ann")["item"], next["item"]);

  auto rec = post("/api/abtests/i1/judgment", {{"annotator_id", "ann"}, {"verdict", "WinA"}});
  EXPECT_EQ(dump_line(rec).find("pathumma"), std::string::npos);
  post("/api/abtests/i1/judgment", {{"annotator_id", "ann"}, {"verdict", "WinA"}}, 409);
  post("/api/abtests/i1/judgment", {{"annotator_id", "ann2"}, {"verdict", "maybe"}}, 400);
  post("/api/abtests/zz/judgment", {{"annotator_id", "ann"}, {"verdict", "Tie"}}, 404);
  EXPECT_TRUE(get("/api/abtests/next?annotator_id=ann")["item"].is_null());

  auto agg = get("/api/abtests/aggregate?reference=pathumma");
  ASSERT_EQ(agg["competitors"].size(), 1u);
  const auto& row = agg["competitors"][0];
  EXPECT_EQ(row["competitor"], "typhoon");
  EXPECT_EQ(row["total"], 1);
  // The annotator preferred the transcript shown under label A.
  const bool swapped = ab_labels_swapped("i1");
  EXPECT_EQ(row["wins"], swapped ? 0 : 1);
  EXPECT_EQ(row["losses"], swapped ? 1 : 0);
}

TEST_F(ServerTest, Audio) {
  const auto id = store_->enqueue(make_review_task({"a.wav", 1000, "", {}, {}}, "1", store_->config()));
  auto res = client_->Get("/api/audio/" + id);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "RIFFdata");
  EXPECT_EQ(res->get_header_value("Content-Type"), "audio/wav");

  const auto escape = store_->enqueue(make_review_task({"../j.jsonl", 1000, "", {}, {}}, "1", store_->config()));
  res = client_->Get("/api/audio/" + escape);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 403);

  const auto missing = store_->enqueue(make_review_task({"gone.wav", 1000, "", {}, {}}, "1", store_->config()));
  res = client_->Get("/api/audio/" + missing);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
}

TEST_F(ServerTest, ReadYourWrites) {
  for (int i = 0; i < 20; ++i) {
    const auto id = store_->enqueue(make_review_task({std::to_string(i) + ".wav", 1, "", {}, {}}, "1", store_->config()));
    post("/api/tasks/" + id + "/skip", {{"annotator_id", "ann"}});
    EXPECT_EQ(get("/api/tasks/" + id)["status"], "Skipped");
  }
}
