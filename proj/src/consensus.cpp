#include "curate/consensus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "curate/errors.hpp"
#include "curate/hash.hpp"

namespace curate {

std::string_view to_string(Agreement a) {
  switch (a) {
    case Agreement::Unanimous: return "Unanimous";
    case Agreement::Majority: return "Majority";
    case Agreement::None: return "None";
  }
  return "None";
}

std::string_view to_string(Route r) {
  switch (r) {
    case Route::CleanStore: return "CleanStore";
    case Route::ReviewQueue: return "ReviewQueue";
    case Route::Failed: return "Failed";
  }
  return "Failed";
}

std::string_view to_string(TaskStatus s) {
  switch (s) {
    case TaskStatus::Pending: return "Pending";
    case TaskStatus::Resolved: return "Resolved";
    case TaskStatus::Skipped: return "Skipped";
  }
  return "Pending";
}

std::optional<TaskStatus> parse_task_status(std::string_view s) {
  if (s == "Pending" || s == "pending") return TaskStatus::Pending;
  if (s == "Resolved" || s == "resolved") return TaskStatus::Resolved;
  if (s == "Skipped" || s == "skipped") return TaskStatus::Skipped;
  return std::nullopt;
}

std::string task_id_for(std::string_view audio_filepath) { return "task-" + hex64(fnv1a64(audio_filepath)); }

ReviewTask make_review_task(const ManifestEntry& entry, const std::string& winner, const NormConfig& config) {
  ReviewTask task;
  task.id = task_id_for(entry.audio_filepath);
  task.entry = entry;
  task.entry.text = winner;
  NormalizedText norm = normalize(winner, config);
  task.proposed_text = std::move(norm.text);
  for (auto& f : norm.flags) {
    task.flags.push_back({f.kind, f.span, std::move(f.source), std::move(f.note), "normalizer"});
  }
  for (auto& r : is_complex(winner, config.whitelist).reasons) {
    const FlagKind kind = r.kind == ComplexityKind::Punctuation ? FlagKind::SymbolSense : FlagKind::NumericReading;
    std::string note = std::string(to_string(r.kind)) + " in transcript";
    task.flags.push_back({kind, r.span, std::move(r.text), std::move(note), "complexity"});
  }
  return task;
}

namespace {

void check_unique_ids(std::span<const Hypothesis> hyps) {
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (hyps[i].backend_id.empty()) throw ConsensusError("EmptyBackendId", "hypothesis without backend_id");
    for (std::size_t j = i + 1; j < hyps.size(); ++j) {
      if (hyps[i].backend_id == hyps[j].backend_id) {
        throw ConsensusError("DuplicateBackend", "backend '" + hyps[i].backend_id + "' voted twice");
      }
    }
  }
}

std::vector<std::string> comparable_forms(std::span<const Hypothesis> hyps, const VoteOptions& options) {
  std::vector<std::string> forms;
  for (const auto& h : hyps) {
    forms.push_back(options.compare_normalized ? normalize(h.text, options.config).text : h.text);
  }
  return forms;
}

const Hypothesis& first_by_id(std::span<const Hypothesis> hyps, std::initializer_list<std::size_t> idx) {
  const Hypothesis* best = nullptr;
  for (std::size_t i : idx) {
    if (!best || hyps[i].backend_id < best->backend_id) best = &hyps[i];
  }
  return *best;
}

ConsensusResult make_result(const Hypothesis& winner, Agreement agreement, std::span<const Hypothesis> hyps) {
  ConsensusResult r;
  r.text = winner.text;
  r.agreement = agreement;
  r.chosen_backend = winner.backend_id;
  r.votes.assign(hyps.begin(), hyps.end());
  return r;
}

}  // namespace

ConsensusResult vote(std::span<const Hypothesis> hyps, std::string_view authoritative, const VoteOptions& options) {
  if (hyps.size() != 3) {
    throw ConsensusError("WrongArity", "vote needs exactly 3 hypotheses, got " + std::to_string(hyps.size()));
  }
  check_unique_ids(hyps);
  const auto auth = std::find_if(hyps.begin(), hyps.end(), [&](const Hypothesis& h) { return h.backend_id == authoritative; });
  if (auth == hyps.end()) {
    throw ConsensusError("UnknownAuthoritative", "no hypothesis from '" + std::string(authoritative) + "'");
  }

  const auto f = comparable_forms(hyps, options);
  const bool e01 = f[0] == f[1], e02 = f[0] == f[2], e12 = f[1] == f[2];
  if (e01 && e02) return make_result(first_by_id(hyps, {0, 1, 2}), Agreement::Unanimous, hyps);
  if (e01) return make_result(first_by_id(hyps, {0, 1}), Agreement::Majority, hyps);
  if (e02) return make_result(first_by_id(hyps, {0, 2}), Agreement::Majority, hyps);
  if (e12) return make_result(first_by_id(hyps, {1, 2}), Agreement::Majority, hyps);
  return make_result(*auth, Agreement::None, hyps);
}

ConsensusResult vote_degraded(std::span<const Hypothesis> survivors, std::string_view authoritative,
                              const VoteOptions& options) {
  if (survivors.size() != 2) {
    throw ConsensusError("WrongArity", "degraded vote needs exactly 2 hypotheses, got " +
                                           std::to_string(survivors.size()));
  }
  check_unique_ids(survivors);
  const auto f = comparable_forms(survivors, options);
  ConsensusResult r;
  if (f[0] == f[1]) {
    r = make_result(first_by_id(survivors, {0, 1}), Agreement::Majority, survivors);
  } else {
    auto auth = std::find_if(survivors.begin(), survivors.end(),
                             [&](const Hypothesis& h) { return h.backend_id == authoritative; });
    r = make_result(auth != survivors.end() ? *auth : first_by_id(survivors, {0, 1}), Agreement::None, survivors);
  }
  r.degraded = true;
  return r;
}

namespace {

PipelineOutcome process_entry(const ManifestEntry& entry, std::span<const std::shared_ptr<TranscriptionBackend>> backends,
                              const PipelineConfig& config) {
  PipelineOutcome out;
  out.entry = entry;
  std::vector<Hypothesis> hyps;
  for (const auto& b : backends) {
    const auto start = std::chrono::steady_clock::now();
    try {
      std::string text = b->transcribe(entry.audio_filepath, config.language);
      const std::chrono::duration<double, std::milli> took = std::chrono::steady_clock::now() - start;
      hyps.push_back({b->id(), std::move(text), took.count()});
    } catch (const std::exception& e) {
      out.errors.push_back(b->id() + ": " + e.what());
    }
  }

  if (hyps.size() == 3) {
    out.consensus = vote(hyps, config.authoritative, config.vote);
  } else if (hyps.size() == 2) {
    out.consensus = vote_degraded(hyps, config.authoritative, config.vote);
  } else {
    out.route = Route::Failed;
    return out;
  }

  out.complexity = is_complex(out.consensus->text, config.vote.config.whitelist);
  if (out.complexity.complex) {
    out.route = Route::ReviewQueue;
    out.task = make_review_task(entry, out.consensus->text, config.vote.config);
    out.task->agreement = std::string(to_string(out.consensus->agreement));
    out.task->chosen_backend = out.consensus->chosen_backend;
  } else {
    out.route = Route::CleanStore;
  }
  return out;
}

}  // namespace

std::vector<PipelineOutcome> run_pipeline(std::span<const ManifestEntry> entries,
                                          std::span<const std::shared_ptr<TranscriptionBackend>> backends,
                                          const PipelineConfig& config) {
  if (backends.size() != 3) {
    throw ConsensusError("WrongArity", "pipeline needs exactly 3 backends, got " + std::to_string(backends.size()));
  }
  if (std::none_of(backends.begin(), backends.end(), [&](const auto& b) { return b->id() == config.authoritative; })) {
    throw ConsensusError("UnknownAuthoritative", "no backend named '" + config.authoritative + "'");
  }

  std::vector<PipelineOutcome> outcomes(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      try {
        outcomes[i] = process_entry(entries[i], backends, config);
      } catch (const std::exception& e) {
        outcomes[i].entry = entries[i];
        outcomes[i].route = Route::Failed;
        outcomes[i].errors.push_back(std::string("pipeline: ") + e.what());
      }
    }
  };

  const std::size_t n_threads = std::min(std::max<std::size_t>(config.concurrency, 1), entries.size());
  if (n_threads <= 1) {
    worker();
    return outcomes;
  }
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  pool.clear();
  return outcomes;
}

}  // namespace curate
