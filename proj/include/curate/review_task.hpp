#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curate/manifest.hpp"
#include "curate/normalizer.hpp"

namespace curate {

enum class TaskStatus { Pending, Resolved, Skipped };
std::string_view to_string(TaskStatus s);
std::optional<TaskStatus> parse_task_status(std::string_view s);

/// A flag on a review task. Normalizer flags point into proposed_text;
/// complexity flags point into entry.text.
struct TaskFlag {
  FlagKind kind = FlagKind::NumericReading;
  Span span;
  std::string source;
  std::string note;
  std::string origin;  // "normalizer" or "complexity"

  bool operator==(const TaskFlag&) const = default;
};

struct ReviewTask {
  std::string id;
  ManifestEntry entry;  // entry.text holds the consensus winner as transcribed
  std::string proposed_text;
  std::vector<TaskFlag> flags;
  TaskStatus status = TaskStatus::Pending;
  std::optional<std::string> corrected_text;
  std::optional<std::string> resolver;
  std::string agreement;
  std::string chosen_backend;
  std::int64_t created_at_ms = 0;
  std::int64_t updated_at_ms = 0;

  bool operator==(const ReviewTask&) const = default;
};

/// "task-" + FNV-1a of the audio path.
std::string task_id_for(std::string_view audio_filepath);

/// Builds a pending task for a transcript that failed the complexity check.
/// proposed_text is the normalizer's output for `winner`.
ReviewTask make_review_task(const ManifestEntry& entry, const std::string& winner, const NormConfig& config);

}  // namespace curate
