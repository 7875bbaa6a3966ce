#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "curate/eval.hpp"
#include "curate/normalizer.hpp"
#include "curate/review_task.hpp"

namespace curate {

struct TaskFilter {
  std::optional<TaskStatus> status;
  std::size_t limit = 50;
  std::optional<std::string> cursor;
};

struct TaskPage {
  std::vector<ReviewTask> tasks;
  std::optional<std::string> next_cursor;
};

/// A pair of transcripts of one clip awaiting blind comparison.
struct AbItem {
  std::string item_id;
  std::string audio_filepath;
  std::string system_a;
  std::string text_a;
  std::string system_b;
  std::string text_b;

  bool operator==(const AbItem&) const = default;
};

/// What an annotator sees: two transcripts labelled "A" and "B" with the
/// systems hidden. The label order is fixed per item_id.
struct AbPresentation {
  std::string item_id;
  std::string text_a;
  std::string text_b;
};

/// Whether item_id shows system_b under label "A".
bool ab_labels_swapped(std::string_view item_id);

/// Everything the journal reconstructs.
struct ReviewState {
  std::uint64_t seq = 0;
  std::vector<ReviewTask> tasks;  // enqueue order
  std::vector<AbJudgment> judgments;
  std::vector<AbItem> ab_items;

  bool operator==(const ReviewState&) const = default;
};

/// Review queue and A/B judgments backed by an append-only JSON-lines
/// journal. Mutations are serialized and each is on disk before it is
/// acknowledged; reads see every acknowledged mutation.
class ReviewStore {
 public:
  using Clock = std::function<std::int64_t()>;

  struct Options {
    std::filesystem::path journal;  // empty: memory only
    NormConfig config = NormConfig::bundled();
    Clock clock;  // milliseconds since epoch; defaults to the system clock
    std::size_t snapshot_every = 1000;  // 0 disables automatic snapshots
    bool use_snapshot = true;  // false replays the journal from its first event
  };

  explicit ReviewStore(Options options);
  ReviewStore();
  ~ReviewStore();
  ReviewStore(const ReviewStore&) = delete;
  ReviewStore& operator=(const ReviewStore&) = delete;

  /// Throws ReviewError("DuplicateId") or ("NotPending") for a task that is
  /// not Pending.
  std::string enqueue(ReviewTask task);

  /// Throws ReviewError("NotFound"), ("NotPending") or ("ValidationFailed")
  /// with the individual reasons.
  ReviewTask resolve(const std::string& id, const std::string& corrected_text, const std::string& annotator_id);
  ReviewTask skip(const std::string& id, const std::string& annotator_id);

  std::optional<ReviewTask> get(const std::string& id) const;
  TaskPage list_tasks(const TaskFilter& filter) const;

  /// Reasons `text` is not acceptable as a correction; empty when it is.
  std::vector<std::string> validate_correction(const std::string& text) const;

  /// Returns the number of judgments stored. Throws EvalError
  /// ("MalformedJudgment") or ReviewError("DuplicateJudgment") when the
  /// annotator already judged the item.
  std::size_t record_ab(const AbJudgment& judgment);

  /// Throws ReviewError("DuplicateId") or EvalError("MalformedJudgment").
  void add_ab_item(AbItem item);
  std::optional<AbItem> ab_item(const std::string& item_id) const;
  /// First item (in insertion order) the annotator has not judged.
  std::optional<AbPresentation> next_ab(const std::string& annotator_id) const;
  /// Records a verdict given against the blinded labels.
  /// Throws ReviewError("NotFound") for an unknown item.
  AbJudgment record_blinded(const std::string& item_id, const std::string& annotator_id, Verdict blinded);

  std::vector<AbJudgment> judgments() const;
  std::vector<ManifestEntry> export_resolved() const;
  ReviewState state() const;
  const NormConfig& config() const { return options_.config; }

  /// Writes `<journal>.snapshot` atomically. No-op without a journal.
  void snapshot();
  static std::filesystem::path snapshot_path(const std::filesystem::path& journal);

 private:
  void apply_event(const nlohmann::ordered_json& event);
  void append(nlohmann::ordered_json event);
  void write_snapshot();
  void check_judgment(const AbJudgment& j) const;
  void load();

  Options options_;
  std::mutex writer_;               // serializes mutations and journal appends
  mutable std::shared_mutex state_mutex_;  // guards state_ and the indexes
  ReviewState state_;
  std::unordered_map<std::string, std::size_t> task_index_;
  std::unordered_map<std::string, std::size_t> ab_index_;
  std::map<std::pair<std::string, std::string>, std::size_t> judged_;  // (item, annotator)
  std::FILE* journal_ = nullptr;
  std::size_t since_snapshot_ = 0;
};

}  // namespace curate
