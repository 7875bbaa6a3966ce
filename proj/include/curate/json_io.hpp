#pragma once

#include <json.hpp>

#include "curate/consensus.hpp"
#include "curate/eval.hpp"
#include "curate/manifest.hpp"
#include "curate/normalizer.hpp"
#include "curate/review_task.hpp"

namespace curate {

using Json = nlohmann::ordered_json;

Json to_json(const ManifestEntry& e);
ManifestEntry entry_from_json(const Json& j);

Json to_json(const AmbiguityFlag& f);
Json to_json(const NormalizedText& n, bool with_trace = true);
Json to_json(const ComplexityReport& r);

Json to_json(const TaskFlag& f);
TaskFlag task_flag_from_json(const Json& j);
Json to_json(const ReviewTask& t);
ReviewTask task_from_json(const Json& j);

Json to_json(const AbJudgment& j);
AbJudgment judgment_from_json(const Json& j);

Json to_json(const Hypothesis& h);
Json to_json(const ConsensusResult& r);
Json to_json(const PipelineOutcome& o);

Json to_json(const EvalReport& r);
Json to_json(const MixtureReport& r, int decimals = 2);
Json to_json(const std::map<std::string, AbTally>& tallies);

/// Compact single-line dump; invalid UTF-8 is replaced rather than thrown.
std::string dump_line(const Json& j);

}  // namespace curate
