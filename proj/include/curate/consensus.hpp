#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "curate/backends.hpp"
#include "curate/manifest.hpp"
#include "curate/normalizer.hpp"
#include "curate/review_task.hpp"

namespace curate {

struct Hypothesis {
  std::string backend_id;
  std::string text;
  std::optional<double> latency_ms;

  bool operator==(const Hypothesis&) const = default;
};

enum class Agreement { Unanimous, Majority, None };
std::string_view to_string(Agreement a);

struct ConsensusResult {
  std::string text;
  Agreement agreement = Agreement::None;
  std::string chosen_backend;
  std::vector<Hypothesis> votes;
  bool degraded = false;  // decided with one backend missing
};

struct VoteOptions {
  bool compare_normalized = true;
  NormConfig config = NormConfig::bundled();
};

/// Majority vote over exactly three hypotheses. Agreeing groups answer with
/// the raw text of their lexicographically-first backend_id; with no
/// agreement the authoritative backend wins.
/// Throws ConsensusError("WrongArity"), ("UnknownAuthoritative") or
/// ("DuplicateBackend").
ConsensusResult vote(std::span<const Hypothesis> hyps, std::string_view authoritative,
                     const VoteOptions& options = {});

/// Two survivors of a three-way vote. Equal texts give Majority; otherwise
/// the authoritative backend if it survived, else the lexicographically
/// first id, with agreement None. Always marked degraded.
ConsensusResult vote_degraded(std::span<const Hypothesis> survivors, std::string_view authoritative,
                              const VoteOptions& options = {});

enum class Route { CleanStore, ReviewQueue, Failed };
std::string_view to_string(Route r);

struct PipelineOutcome {
  ManifestEntry entry;
  std::optional<ConsensusResult> consensus;  // empty when route == Failed
  ComplexityReport complexity;
  Route route = Route::Failed;
  std::optional<ReviewTask> task;  // present iff route == ReviewQueue
  std::vector<std::string> errors;  // per-backend failures, "backend: message"
};

struct PipelineConfig {
  std::string authoritative;
  std::string language = "th";
  std::size_t concurrency = 4;
  VoteOptions vote;
};

/// Transcribes every entry on all three backends, votes, and routes the
/// winner. One backend down degrades the vote; two or more down fails the
/// entry. Never throws for a per-entry failure. Output order matches input.
/// Throws ConsensusError("WrongArity") unless exactly three backends are
/// given, ("UnknownAuthoritative") if none has the configured id.
std::vector<PipelineOutcome> run_pipeline(std::span<const ManifestEntry> entries,
                                          std::span<const std::shared_ptr<TranscriptionBackend>> backends,
                                          const PipelineConfig& config);

}  // namespace curate
