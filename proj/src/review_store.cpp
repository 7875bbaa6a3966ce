#include "curate/review_store.hpp"

#include <unistd.h>

#include <chrono>
#include <fstream>
#include <sstream>

#include "curate/errors.hpp"
#include "curate/hash.hpp"
#include "curate/json_io.hpp"

namespace curate {

bool ab_labels_swapped(std::string_view item_id) { return (fnv1a64(item_id) >> 7) & 1U; }

namespace {

std::int64_t system_now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

Json ab_item_json(const AbItem& item) {
  return Json{{"item_id", item.item_id}, {"audio_filepath", item.audio_filepath},
              {"system_a", item.system_a}, {"text_a", item.text_a},
              {"system_b", item.system_b}, {"text_b", item.text_b}};
}

AbItem ab_item_from_json(const Json& j) {
  return {j.at("item_id").get<std::string>(),  j.value("audio_filepath", ""),
          j.at("system_a").get<std::string>(), j.value("text_a", ""),
          j.at("system_b").get<std::string>(), j.value("text_b", "")};
}

ReviewError not_found(const std::string& what, const std::string& id) {
  return ReviewError("NotFound", "no " + what + " '" + id + "'");
}

}  // namespace

ReviewStore::ReviewStore() : ReviewStore(Options{}) {}

ReviewStore::ReviewStore(Options options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = system_now_ms;
  if (!options_.journal.empty()) load();
}

ReviewStore::~ReviewStore() {
  if (journal_) std::fclose(journal_);
}

std::filesystem::path ReviewStore::snapshot_path(const std::filesystem::path& journal) {
  auto p = journal;
  p += ".snapshot";
  return p;
}

void ReviewStore::load() {
  const auto snap = snapshot_path(options_.journal);
  if (options_.use_snapshot && std::filesystem::exists(snap)) {
    std::ifstream in(snap, std::ios::binary);
    const Json j = Json::parse(in);
    state_.seq = j.at("seq").get<std::uint64_t>();
    for (const auto& t : j.at("tasks")) {
      task_index_[t.at("id").get<std::string>()] = state_.tasks.size();
      state_.tasks.push_back(task_from_json(t));
    }
    for (const auto& item : j.at("ab_items")) {
      AbItem it = ab_item_from_json(item);
      ab_index_[it.item_id] = state_.ab_items.size();
      state_.ab_items.push_back(std::move(it));
    }
    for (const auto& jj : j.at("judgments")) {
      AbJudgment judgment = judgment_from_json(jj);
      judged_[{judgment.item_id, judgment.annotator_id}] = state_.judgments.size();
      state_.judgments.push_back(std::move(judgment));
    }
  }

  if (std::filesystem::exists(options_.journal)) {
    std::ifstream in(options_.journal, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string content = buf.str();
    std::size_t pos = 0, line_no = 0, good_end = 0;
    while (pos < content.size()) {
      const std::size_t nl = content.find('\n', pos);
      const bool complete = nl != std::string::npos;
      const std::string line = content.substr(pos, complete ? nl - pos : std::string::npos);
      ++line_no;
      if (!line.empty()) {
        Json event;
        try {
          event = Json::parse(line);
        } catch (const Json::parse_error&) {
          // A torn final line is what a crash mid-append leaves behind.
          if (!complete) break;
          throw Error("JournalError", options_.journal.string() + ":" + std::to_string(line_no) + ": unparseable event");
        }
        if (event.at("seq").get<std::uint64_t>() > state_.seq) apply_event(event);
      }
      if (!complete) {
        good_end = content.size();
        break;
      }
      pos = nl + 1;
      good_end = pos;
    }
    if (good_end < content.size()) std::filesystem::resize_file(options_.journal, good_end);
    else if (!content.empty() && content.back() != '\n') {
      std::ofstream(options_.journal, std::ios::binary | std::ios::app) << '\n';
    }
  }

  if (options_.journal.has_parent_path()) std::filesystem::create_directories(options_.journal.parent_path());
  journal_ = std::fopen(options_.journal.c_str(), "ab");
  if (!journal_) throw Error("JournalError", "cannot open " + options_.journal.string() + " for appending");
}

void ReviewStore::apply_event(const Json& event) {
  const std::string type = event.at("type").get<std::string>();
  const std::uint64_t seq = event.at("seq").get<std::uint64_t>();
  if (type == "TaskEnqueued") {
    ReviewTask task = task_from_json(event.at("task"));
    if (task_index_.count(task.id)) throw Error("JournalError", "task '" + task.id + "' enqueued twice");
    task_index_[task.id] = state_.tasks.size();
    state_.tasks.push_back(std::move(task));
  } else if (type == "TaskResolved" || type == "TaskSkipped") {
    const std::string id = event.at("id").get<std::string>();
    auto it = task_index_.find(id);
    if (it == task_index_.end()) throw Error("JournalError", "event for unknown task '" + id + "'");
    ReviewTask& task = state_.tasks[it->second];
    task.resolver = event.at("annotator_id").get<std::string>();
    task.updated_at_ms = event.value("at_ms", std::int64_t{0});
    if (type == "TaskResolved") {
      task.status = TaskStatus::Resolved;
      task.corrected_text = event.at("corrected_text").get<std::string>();
    } else {
      task.status = TaskStatus::Skipped;
    }
  } else if (type == "AbItemAdded") {
    AbItem item = ab_item_from_json(event.at("item"));
    ab_index_[item.item_id] = state_.ab_items.size();
    state_.ab_items.push_back(std::move(item));
  } else if (type == "AbRecorded") {
    AbJudgment j = judgment_from_json(event.at("judgment"));
    judged_[{j.item_id, j.annotator_id}] = state_.judgments.size();
    state_.judgments.push_back(std::move(j));
  } else {
    throw Error("JournalError", "unknown event type '" + type + "'");
  }
  state_.seq = seq;
}

void ReviewStore::append(Json event) {
  // Called with writer_ held. The event reaches the disk before the
  // in-memory state changes, so an acknowledged write survives a crash.
  Json full;
  full["seq"] = state_.seq + 1;
  for (auto& [k, v] : event.items()) full[k] = std::move(v);
  if (journal_) {
    const std::string line = dump_line(full) + "\n";
    if (std::fwrite(line.data(), 1, line.size(), journal_) != line.size() || std::fflush(journal_) != 0) {
      throw Error("JournalError", "write to " + options_.journal.string() + " failed");
    }
    ::fsync(::fileno(journal_));
  }
  {
    std::unique_lock lock(state_mutex_);
    apply_event(full);
  }
  if (journal_ && options_.snapshot_every > 0 && ++since_snapshot_ >= options_.snapshot_every) write_snapshot();
}

void ReviewStore::write_snapshot() {
  since_snapshot_ = 0;
  Json j;
  {
    std::shared_lock lock(state_mutex_);
    j["seq"] = state_.seq;
    j["tasks"] = Json::array();
    for (const auto& t : state_.tasks) j["tasks"].push_back(to_json(t));
    j["judgments"] = Json::array();
    for (const auto& x : state_.judgments) j["judgments"].push_back(to_json(x));
    j["ab_items"] = Json::array();
    for (const auto& item : state_.ab_items) j["ab_items"].push_back(ab_item_json(item));
  }
  const auto path = snapshot_path(options_.journal);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << dump_line(j) << '\n';
    if (!out.flush()) throw Error("JournalError", "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void ReviewStore::snapshot() {
  if (!journal_) return;
  std::lock_guard w(writer_);
  write_snapshot();
}

std::string ReviewStore::enqueue(ReviewTask task) {
  std::lock_guard w(writer_);
  if (task.id.empty()) throw ReviewError("InvalidTask", "task id is empty");
  if (task.status != TaskStatus::Pending) {
    throw ReviewError("NotPending", "only pending tasks can be enqueued");
  }
  if (task_index_.count(task.id)) throw ReviewError("DuplicateId", "task '" + task.id + "' already exists");
  task.corrected_text.reset();
  task.resolver.reset();
  task.created_at_ms = task.updated_at_ms = options_.clock();
  const std::string id = task.id;
  append(Json{{"type", "TaskEnqueued"}, {"task", to_json(task)}});
  return id;
}

std::vector<std::string> ReviewStore::validate_correction(const std::string& text) const {
  std::vector<std::string> reasons;
  if (text.find_first_not_of(' ') == std::string::npos) {
    reasons.push_back("EmptyText: correction is empty");
    return reasons;
  }
  for (const auto& r : is_complex(text, options_.config.whitelist).reasons) {
    reasons.push_back(std::string(to_string(r.kind)) + ": '" + r.text + "' at byte " + std::to_string(r.span.begin));
  }
  const NormalizedText norm = normalize(text, options_.config);
  for (const auto& f : norm.flags) {
    reasons.push_back(std::string(to_string(f.kind)) + ": '" + f.source + "' " + f.note);
  }
  if (reasons.empty() && norm.text != text) {
    reasons.push_back("NotCanonical: normalizes to '" + norm.text + "'");
  }
  return reasons;
}

ReviewTask ReviewStore::resolve(const std::string& id, const std::string& corrected_text,
                                const std::string& annotator_id) {
  std::lock_guard w(writer_);
  auto it = task_index_.find(id);
  if (it == task_index_.end()) throw not_found("task", id);
  if (state_.tasks[it->second].status != TaskStatus::Pending) {
    throw ReviewError("NotPending", "task '" + id + "' is " + std::string(to_string(state_.tasks[it->second].status)));
  }
  if (annotator_id.empty()) throw ReviewError("BadRequest", "annotator_id is required");
  auto reasons = validate_correction(corrected_text);
  if (!reasons.empty()) {
    throw ReviewError("ValidationFailed", "correction is not in canonical form", std::move(reasons));
  }
  append(Json{{"type", "TaskResolved"},
              {"at_ms", options_.clock()},
              {"id", id},
              {"corrected_text", corrected_text},
              {"annotator_id", annotator_id}});
  return state_.tasks[it->second];
}

ReviewTask ReviewStore::skip(const std::string& id, const std::string& annotator_id) {
  std::lock_guard w(writer_);
  auto it = task_index_.find(id);
  if (it == task_index_.end()) throw not_found("task", id);
  if (state_.tasks[it->second].status != TaskStatus::Pending) {
    throw ReviewError("NotPending", "task '" + id + "' is " + std::string(to_string(state_.tasks[it->second].status)));
  }
  if (annotator_id.empty()) throw ReviewError("BadRequest", "annotator_id is required");
  append(Json{{"type", "TaskSkipped"}, {"at_ms", options_.clock()}, {"id", id}, {"annotator_id", annotator_id}});
  return state_.tasks[it->second];
}

std::optional<ReviewTask> ReviewStore::get(const std::string& id) const {
  std::shared_lock lock(state_mutex_);
  auto it = task_index_.find(id);
  if (it == task_index_.end()) return std::nullopt;
  return state_.tasks[it->second];
}

TaskPage ReviewStore::list_tasks(const TaskFilter& filter) const {
  std::size_t start = 0;
  if (filter.cursor) {
    try {
      std::size_t used = 0;
      start = std::stoull(*filter.cursor, &used);
      if (used != filter.cursor->size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw ReviewError("BadRequest", "invalid cursor '" + *filter.cursor + "'");
    }
  }
  TaskPage page;
  std::shared_lock lock(state_mutex_);
  const auto& tasks = state_.tasks;
  std::size_t i = start;
  for (; i < tasks.size() && page.tasks.size() < filter.limit; ++i) {
    if (!filter.status || tasks[i].status == *filter.status) page.tasks.push_back(tasks[i]);
  }
  for (std::size_t j = i; j < tasks.size(); ++j) {
    if (!filter.status || tasks[j].status == *filter.status) {
      page.next_cursor = std::to_string(i);
      break;
    }
  }
  return page;
}

void ReviewStore::check_judgment(const AbJudgment& j) const {
  validate(j);
  if (judged_.count({j.item_id, j.annotator_id})) {
    throw ReviewError("DuplicateJudgment", "annotator '" + j.annotator_id + "' already judged '" + j.item_id + "'");
  }
}

std::size_t ReviewStore::record_ab(const AbJudgment& judgment) {
  std::lock_guard w(writer_);
  check_judgment(judgment);
  append(Json{{"type", "AbRecorded"}, {"judgment", to_json(judgment)}});
  return state_.judgments.size();
}

void ReviewStore::add_ab_item(AbItem item) {
  std::lock_guard w(writer_);
  if (item.item_id.empty() || item.system_a.empty() || item.system_b.empty()) {
    throw EvalError("MalformedJudgment", "A/B item needs an id and two systems");
  }
  if (item.system_a == item.system_b) {
    throw EvalError("MalformedJudgment", "A/B item compares '" + item.system_a + "' with itself");
  }
  if (ab_index_.count(item.item_id)) throw ReviewError("DuplicateId", "A/B item '" + item.item_id + "' already exists");
  append(Json{{"type", "AbItemAdded"}, {"item", ab_item_json(item)}});
}

std::optional<AbItem> ReviewStore::ab_item(const std::string& item_id) const {
  std::shared_lock lock(state_mutex_);
  auto it = ab_index_.find(item_id);
  if (it == ab_index_.end()) return std::nullopt;
  return state_.ab_items[it->second];
}

std::optional<AbPresentation> ReviewStore::next_ab(const std::string& annotator_id) const {
  std::shared_lock lock(state_mutex_);
  for (const auto& item : state_.ab_items) {
    if (judged_.count({item.item_id, annotator_id})) continue;
    if (ab_labels_swapped(item.item_id)) return AbPresentation{item.item_id, item.text_b, item.text_a};
    return AbPresentation{item.item_id, item.text_a, item.text_b};
  }
  return std::nullopt;
}

AbJudgment ReviewStore::record_blinded(const std::string& item_id, const std::string& annotator_id, Verdict blinded) {
  std::lock_guard w(writer_);
  auto it = ab_index_.find(item_id);
  if (it == ab_index_.end()) throw not_found("A/B item", item_id);
  const AbItem& item = state_.ab_items[it->second];
  Verdict v = blinded;
  if (ab_labels_swapped(item_id) && v != Verdict::Tie) v = v == Verdict::WinA ? Verdict::WinB : Verdict::WinA;
  AbJudgment j{item_id, annotator_id, item.system_a, item.system_b, v};
  check_judgment(j);
  append(Json{{"type", "AbRecorded"}, {"judgment", to_json(j)}});
  return j;
}

std::vector<AbJudgment> ReviewStore::judgments() const {
  std::shared_lock lock(state_mutex_);
  return state_.judgments;
}

std::vector<ManifestEntry> ReviewStore::export_resolved() const {
  std::shared_lock lock(state_mutex_);
  std::vector<ManifestEntry> out;
  for (const auto& t : state_.tasks) {
    if (t.status != TaskStatus::Resolved) continue;
    ManifestEntry e = t.entry;
    e.text = *t.corrected_text;
    out.push_back(std::move(e));
  }
  return out;
}

ReviewState ReviewStore::state() const {
  std::shared_lock lock(state_mutex_);
  return state_;
}

}  // namespace curate
