#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "curate/normalizer.hpp"

namespace curate {

/// Levenshtein distance over Unicode scalar values. A Thai tone mark or
/// vowel sign is its own unit, so a wrong tone mark costs exactly one edit.
std::size_t edit_distance(std::u32string_view a, std::u32string_view b);
std::size_t edit_distance(std::string_view a, std::string_view b);

/// edit_distance(ref, hyp) / scalar length of ref. Throws
/// EvalError("EmptyReference") when ref is empty.
double cer(std::string_view ref, std::string_view hyp);

enum class EvalMode { Raw, NormalizedRefs, NormalizedBoth };
std::string_view to_string(EvalMode m);
std::optional<EvalMode> parse_eval_mode(std::string_view s);

struct EvalPair {
  std::string id;
  std::string ref;
  std::string hyp;
};

struct UtteranceScore {
  std::string id;
  std::string ref;  // as scored (after any normalization)
  std::string hyp;
  std::size_t edit_distance = 0;
  std::size_t ref_length = 0;
  double cer = 0.0;
};

struct SkippedUtterance {
  std::string id;
  std::string reason;
};

struct EvalOptions {
  /// Drop spaces from both sides before scoring.
  bool strip_spaces = false;
};

struct EvalReport {
  EvalMode mode = EvalMode::Raw;
  std::vector<UtteranceScore> per_utterance;
  std::vector<SkippedUtterance> skipped;
  std::size_t total_distance = 0;
  std::size_t total_ref_length = 0;
  /// Pooled: total_distance / total_ref_length. Empty when nothing scored.
  std::optional<double> aggregate_cer;
  /// Unweighted mean of per-utterance CERs, reported for comparison only.
  std::optional<double> mean_cer;
};

/// Throws EvalError("DuplicateId") if two pairs share an id. Empty
/// references are skipped with a reason rather than failing the report.
EvalReport evaluate(std::span<const EvalPair> pairs, EvalMode mode, const NormConfig& config,
                    const EvalOptions& options = {});

/// Cohen's kappa for two raters over the same items. Throws
/// EvalError("LengthMismatch") / EvalError("EmptyInput").
double cohens_kappa(std::span<const std::string> rater_a, std::span<const std::string> rater_b);

enum class Verdict { WinA, Tie, WinB };
std::string_view to_string(Verdict v);
/// Accepts WinA/Tie/WinB in any case, plus the short forms A, B, T.
std::optional<Verdict> parse_verdict(std::string_view s);

struct AbJudgment {
  std::string item_id;
  std::string annotator_id;
  std::string system_a;
  std::string system_b;
  Verdict verdict = Verdict::Tie;

  bool operator==(const AbJudgment&) const = default;
};

/// Throws EvalError("MalformedJudgment") on empty ids or system_a == system_b.
void validate(const AbJudgment& j);

struct AbTally {
  std::size_t wins = 0;  // from the reference system's side
  std::size_t ties = 0;
  std::size_t losses = 0;
  std::size_t total = 0;
  bool crosses_majority = false;  // wins > total / 2

  bool operator==(const AbTally&) const = default;
};

/// Win/tie/loss per competitor of `reference`. Throws
/// EvalError("JudgmentWithoutReference") for a pair that does not involve it.
std::map<std::string, AbTally> aggregate_ab(std::span<const AbJudgment> judgments, std::string_view reference);

/// CSV with header item_id,annotator_id,system_a,system_b,verdict.
std::vector<AbJudgment> read_ab_csv(std::istream& in);
void write_ab_csv(std::ostream& out, std::span<const AbJudgment> judgments);

/// Kappa between two annotators over the (item, pair) keys both judged.
/// Returns the number of shared items through `shared`.
double ab_kappa(std::span<const AbJudgment> judgments, std::string_view annotator_a,
                std::string_view annotator_b, std::size_t* shared = nullptr);

struct ParetoPoint {
  std::string model_name;
  double gflops_per_30s = 0.0;
  double avg_cer = 0.0;  // percent
};

struct ParetoRow {
  std::string model;
  double gflops = 0.0;
  double cer = 0.0;
  double speedup = 0.0;  // baseline gflops / this model's gflops
};

/// Throws EvalError("UnknownBaseline") or EvalError("InvalidPoint") for a
/// non-positive GFLOPs value.
std::vector<ParetoRow> pareto_export(std::span<const ParetoPoint> points, std::string_view baseline);

/// CSV with header model,gflops,cer.
std::vector<ParetoPoint> read_pareto_csv(std::istream& in);
/// Header model,gflops,cer,speedup.
std::string pareto_csv(std::span<const ParetoRow> rows);

/// Minimal RFC 4180 field splitter (quotes, doubled quotes).
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace curate
