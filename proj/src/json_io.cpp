#include "curate/json_io.hpp"

#include "curate/errors.hpp"

namespace curate {

std::string dump_line(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::replace); }

Json to_json(const ManifestEntry& e) { return Json::parse(to_json_line(e)); }

ManifestEntry entry_from_json(const Json& j) { return parse_manifest_line(dump_line(j), 0); }

namespace {

Json span_json(const Span& s) { return Json{{"begin", s.begin}, {"end", s.end}}; }

Span span_from_json(const Json& j) { return {j.at("begin").get<std::size_t>(), j.at("end").get<std::size_t>()}; }

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<std::string> optional_string(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

}  // namespace

Json to_json(const AmbiguityFlag& f) {
  return Json{{"kind", to_string(f.kind)}, {"span", span_json(f.span)}, {"source", f.source}, {"note", f.note}};
}

Json to_json(const NormalizedText& n, bool with_trace) {
  Json j;
  j["text"] = n.text;
  j["flags"] = Json::array();
  for (const auto& f : n.flags) j["flags"].push_back(to_json(f));
  if (with_trace) {
    j["trace"] = Json::array();
    for (const auto& s : n.trace) {
      j["trace"].push_back(Json{{"rule", s.rule}, {"offset", s.offset}, {"length", s.length},
                                {"input", s.input}, {"output", s.output}});
    }
  }
  return j;
}

Json to_json(const ComplexityReport& r) {
  Json j;
  j["complex"] = r.complex;
  j["reasons"] = Json::array();
  for (const auto& reason : r.reasons) {
    j["reasons"].push_back(Json{{"kind", to_string(reason.kind)}, {"span", span_json(reason.span)}, {"text", reason.text}});
  }
  return j;
}

Json to_json(const TaskFlag& f) {
  return Json{{"kind", to_string(f.kind)}, {"span", span_json(f.span)}, {"source", f.source},
              {"note", f.note},            {"origin", f.origin}};
}

TaskFlag task_flag_from_json(const Json& j) {
  TaskFlag f;
  const auto kind = parse_flag_kind(j.at("kind").get<std::string>());
  if (!kind) throw Error("JournalError", "unknown flag kind " + j.at("kind").dump());
  f.kind = *kind;
  f.span = span_from_json(j.at("span"));
  f.source = j.value("source", "");
  f.note = j.value("note", "");
  f.origin = j.value("origin", "");
  return f;
}

Json to_json(const ReviewTask& t) {
  Json j;
  j["id"] = t.id;
  j["entry"] = to_json(t.entry);
  j["proposed_text"] = t.proposed_text;
  j["flags"] = Json::array();
  for (const auto& f : t.flags) j["flags"].push_back(to_json(f));
  j["status"] = to_string(t.status);
  j["corrected_text"] = optional_json(t.corrected_text);
  j["resolver"] = optional_json(t.resolver);
  j["agreement"] = t.agreement;
  j["chosen_backend"] = t.chosen_backend;
  j["created_at_ms"] = t.created_at_ms;
  j["updated_at_ms"] = t.updated_at_ms;
  return j;
}

ReviewTask task_from_json(const Json& j) {
  ReviewTask t;
  t.id = j.at("id").get<std::string>();
  t.entry = entry_from_json(j.at("entry"));
  t.proposed_text = j.value("proposed_text", "");
  if (auto it = j.find("flags"); it != j.end()) {
    for (const auto& f : *it) t.flags.push_back(task_flag_from_json(f));
  }
  const auto status = parse_task_status(j.value("status", "Pending"));
  if (!status) throw Error("JournalError", "unknown task status " + j.at("status").dump());
  t.status = *status;
  t.corrected_text = optional_string(j, "corrected_text");
  t.resolver = optional_string(j, "resolver");
  t.agreement = j.value("agreement", "");
  t.chosen_backend = j.value("chosen_backend", "");
  t.created_at_ms = j.value("created_at_ms", std::int64_t{0});
  t.updated_at_ms = j.value("updated_at_ms", std::int64_t{0});
  return t;
}

Json to_json(const AbJudgment& j) {
  return Json{{"item_id", j.item_id},   {"annotator_id", j.annotator_id}, {"system_a", j.system_a},
              {"system_b", j.system_b}, {"verdict", to_string(j.verdict)}};
}

AbJudgment judgment_from_json(const Json& j) {
  AbJudgment out;
  out.item_id = j.at("item_id").get<std::string>();
  out.annotator_id = j.at("annotator_id").get<std::string>();
  out.system_a = j.at("system_a").get<std::string>();
  out.system_b = j.at("system_b").get<std::string>();
  const auto v = parse_verdict(j.at("verdict").get<std::string>());
  if (!v) throw EvalError("MalformedJudgment", "unknown verdict " + j.at("verdict").dump());
  out.verdict = *v;
  return out;
}

Json to_json(const Hypothesis& h) {
  Json j{{"backend_id", h.backend_id}, {"text", h.text}};
  if (h.latency_ms) j["latency_ms"] = *h.latency_ms;
  return j;
}

Json to_json(const ConsensusResult& r) {
  Json j;
  j["text"] = r.text;
  j["agreement"] = to_string(r.agreement);
  j["chosen_backend"] = r.chosen_backend;
  j["degraded"] = r.degraded;
  j["votes"] = Json::array();
  for (const auto& h : r.votes) {
    Json v{{"backend_id", h.backend_id}, {"text", h.text}};
    j["votes"].push_back(std::move(v));
  }
  return j;
}

Json to_json(const PipelineOutcome& o) {
  Json j;
  j["audio_filepath"] = o.entry.audio_filepath;
  j["route"] = to_string(o.route);
  j["consensus"] = o.consensus ? to_json(*o.consensus) : Json(nullptr);
  j["complexity"] = to_json(o.complexity);
  j["task_id"] = o.task ? Json(o.task->id) : Json(nullptr);
  j["errors"] = o.errors;
  return j;
}

Json to_json(const EvalReport& r) {
  Json j;
  j["mode"] = to_string(r.mode);
  j["aggregate_cer"] = optional_json(r.aggregate_cer);
  j["mean_cer"] = optional_json(r.mean_cer);
  j["total_edit_distance"] = r.total_distance;
  j["total_ref_length"] = r.total_ref_length;
  j["skipped"] = Json::array();
  for (const auto& s : r.skipped) j["skipped"].push_back(Json{{"id", s.id}, {"reason", s.reason}});
  j["per_utterance"] = Json::array();
  for (const auto& u : r.per_utterance) {
    j["per_utterance"].push_back(Json{{"id", u.id},
                                      {"ref", u.ref},
                                      {"hyp", u.hyp},
                                      {"edit_distance", u.edit_distance},
                                      {"ref_length", u.ref_length},
                                      {"cer", u.cer}});
  }
  return j;
}

Json to_json(const MixtureReport& r, int decimals) {
  Json j;
  j["groups"] = Json::array();
  for (const auto& g : r.groups) {
    j["groups"].push_back(Json{{"key", g.key},
                               {"hours", format_hours(g.duration_ms, decimals)},
                               {"duration_ms", g.duration_ms},
                               {"utterances", g.utterances}});
  }
  j["total_hours"] = format_hours(r.total_ms, decimals);
  j["total_duration_ms"] = r.total_ms;
  j["total_utterances"] = r.total_utterances;
  return j;
}

Json to_json(const std::map<std::string, AbTally>& tallies) {
  Json j = Json::array();
  for (const auto& [name, t] : tallies) {
    j.push_back(Json{{"competitor", name},
                     {"wins", t.wins},
                     {"ties", t.ties},
                     {"losses", t.losses},
                     {"total", t.total},
                     {"crosses_majority", t.crosses_majority}});
  }
  return j;
}

}  // namespace curate
