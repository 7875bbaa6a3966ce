#include "curate/review_server.hpp"

#include <httplib.h>

#include <fstream>
#include <sstream>

#include "curate/errors.hpp"
#include "curate/json_io.hpp"

namespace curate {

std::string_view audio_content_type(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".wav") return "audio/wav";
  if (ext == ".mp3") return "audio/mpeg";
  if (ext == ".flac") return "audio/flac";
  if (ext == ".ogg" || ext == ".opus") return "audio/ogg";
  if (ext == ".m4a" || ext == ".mp4") return "audio/mp4";
  if (ext == ".webm") return "audio/webm";
  return "application/octet-stream";
}

std::filesystem::path resolve_under_root(const std::filesystem::path& root, const std::string& audio_filepath) {
  std::error_code ec;
  const auto base = std::filesystem::weakly_canonical(root, ec);
  if (ec) return {};
  const auto target = std::filesystem::weakly_canonical(base / audio_filepath, ec);
  if (ec) return {};
  const auto rel = target.lexically_relative(base);
  if (rel.empty() || rel == "." || *rel.begin() == "..") return {};
  return target;
}

namespace {

int status_for(const std::string& code) {
  if (code == "NotFound") return 404;
  if (code == "NotPending" || code == "DuplicateId" || code == "DuplicateJudgment") return 409;
  if (code == "ValidationFailed") return 422;
  if (code == "Forbidden") return 403;
  if (code == "JournalError") return 500;
  return 400;
}

void send_json(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(dump_line(body), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, const std::string& code, const std::string& message,
                const std::vector<std::string>& reasons = {}) {
  Json body{{"error", code}, {"message", message}};
  if (!reasons.empty()) body["reasons"] = reasons;
  send_json(res, body, status_for(code));
}

Json parse_body(const httplib::Request& req) {
  try {
    Json j = Json::parse(req.body);
    if (!j.is_object()) throw ReviewError("BadRequest", "request body must be a JSON object");
    return j;
  } catch (const Json::parse_error&) {
    throw ReviewError("BadRequest", "request body is not valid JSON");
  }
}

std::string required_string(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) throw ReviewError("BadRequest", std::string("missing string field '") + key + "'");
  return it->get<std::string>();
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

// Turns toolkit exceptions into JSON error responses.
Handler guarded(Handler h) {
  return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
    try {
      h(req, res);
    } catch (const ReviewError& e) {
      send_error(res, e.code(), e.what(), e.reasons());
    } catch (const Error& e) {
      send_error(res, e.code(), e.what());
    } catch (const Json::exception& e) {
      send_error(res, "BadRequest", e.what());
    }
  };
}

}  // namespace

struct ReviewServer::Impl {
  ReviewStore& store;
  Options options;
  httplib::Server server;

  Impl(ReviewStore& s, Options o) : store(s), options(std::move(o)) { routes(); }

  void send_audio(httplib::Response& res, const std::string& audio_filepath) {
    if (options.audio_root.empty()) throw ReviewError("NotFound", "audio serving is not configured");
    const auto path = resolve_under_root(options.audio_root, audio_filepath);
    if (path.empty()) {
      send_error(res, "Forbidden", "audio path escapes the audio root");
      return;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ReviewError("NotFound", "no audio file for '" + audio_filepath + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    res.set_content(buf.str(), std::string(audio_content_type(path)));
  }

  void routes() {
    server.Get("/api/tasks", guarded([this](const httplib::Request& req, httplib::Response& res) {
      TaskFilter filter;
      if (req.has_param("status") && !req.get_param_value("status").empty()) {
        filter.status = parse_task_status(req.get_param_value("status"));
        if (!filter.status) throw ReviewError("BadRequest", "unknown status '" + req.get_param_value("status") + "'");
      }
      if (req.has_param("limit") && !req.get_param_value("limit").empty()) {
        try {
          filter.limit = std::stoul(req.get_param_value("limit"));
        } catch (const std::logic_error&) {
          throw ReviewError("BadRequest", "limit must be a number");
        }
      }
      if (req.has_param("cursor") && !req.get_param_value("cursor").empty()) filter.cursor = req.get_param_value("cursor");
      const TaskPage page = store.list_tasks(filter);
      Json body;
      body["tasks"] = Json::array();
      for (const auto& t : page.tasks) body["tasks"].push_back(to_json(t));
      body["next_cursor"] = page.next_cursor ? Json(*page.next_cursor) : Json(nullptr);
      send_json(res, body);
    }));

    server.Get(R"(/api/tasks/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      auto task = store.get(id);
      if (!task) throw ReviewError("NotFound", "no task '" + id + "'");
      send_json(res, to_json(*task));
    }));

    server.Post(R"(/api/tasks/([^/]+)/resolve)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = parse_body(req);
      send_json(res, to_json(store.resolve(req.matches[1], required_string(body, "corrected_text"),
                                           required_string(body, "annotator_id"))));
    }));

    server.Post(R"(/api/tasks/([^/]+)/skip)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = parse_body(req);
      send_json(res, to_json(store.skip(req.matches[1], required_string(body, "annotator_id"))));
    }));

    server.Post("/api/normalize/preview", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = parse_body(req);
      const std::string text = required_string(body, "text");
      NormConfig config = store.config();
      if (auto it = body.find("policy"); it != body.end() && it->is_string()) {
        auto policy = parse_numeric_policy(it->get<std::string>());
        if (!policy) throw ReviewError("BadRequest", "unknown policy " + it->dump());
        config.numeric_policy = *policy;
      }
      if (auto it = body.find("symbol_sense"); it != body.end() && it->is_string()) {
        auto sense = parse_symbol_sense(it->get<std::string>());
        if (!sense) throw ReviewError("BadRequest", "unknown symbol_sense " + it->dump());
        config.symbol_default = *sense;
      }
      Json out = to_json(normalize(text, config));
      out["complexity"] = to_json(is_complex(text, config.whitelist));
      out["reasons"] = store.validate_correction(text);
      send_json(res, out);
    }));

    server.Get("/api/abtests/next", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string annotator = req.get_param_value("annotator_id");
      if (annotator.empty()) throw ReviewError("BadRequest", "annotator_id is required");
      auto next = store.next_ab(annotator);
      if (!next) {
        send_json(res, Json{{"item", nullptr}});
        return;
      }
      send_json(res, Json{{"item",
                           {{"item_id", next->item_id},
                            {"text_a", next->text_a},
                            {"text_b", next->text_b},
                            {"audio_url", "/api/abtests/" + next->item_id + "/audio"}}}});
    }));

    server.Get("/api/abtests/aggregate", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string reference = req.get_param_value("reference");
      if (reference.empty()) throw ReviewError("BadRequest", "reference is required");
      const auto judgments = store.judgments();
      std::vector<AbJudgment> involving;
      for (const auto& j : judgments) {
        if (j.system_a == reference || j.system_b == reference) involving.push_back(j);
      }
      send_json(res, Json{{"reference", reference},
                          {"judgments", involving.size()},
                          {"competitors", to_json(aggregate_ab(involving, reference))}});
    }));

    server.Post(R"(/api/abtests/([^/]+)/judgment)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = parse_body(req);
      const std::string annotator = required_string(body, "annotator_id");
      const auto verdict = parse_verdict(required_string(body, "verdict"));
      if (!verdict) throw EvalError("MalformedJudgment", "verdict must be WinA, Tie or WinB");
      store.record_blinded(req.matches[1], annotator, *verdict);
      // The response stays blind: no system names.
      send_json(res, Json{{"item_id", req.matches[1].str()}, {"recorded", true}});
    }));

    server.Get(R"(/api/abtests/([^/]+)/audio)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      auto item = store.ab_item(req.matches[1]);
      if (!item) throw ReviewError("NotFound", "no A/B item '" + req.matches[1].str() + "'");
      send_audio(res, item->audio_filepath);
    }));

    server.Get(R"(/api/audio/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      auto task = store.get(req.matches[1]);
      if (!task) throw ReviewError("NotFound", "no task '" + req.matches[1].str() + "'");
      send_audio(res, task->entry.audio_filepath);
    }));

    if (!options.static_dir.empty()) server.set_mount_point("/", options.static_dir.string());
  }
};

ReviewServer::ReviewServer(ReviewStore& store, Options options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {}

ReviewServer::~ReviewServer() { stop(); }

int ReviewServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool ReviewServer::run() { return impl_->server.listen_after_bind(); }

void ReviewServer::stop() {
  if (impl_) impl_->server.stop();
}

void ReviewServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace curate
