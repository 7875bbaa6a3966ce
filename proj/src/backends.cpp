#include "curate/backends.hpp"

#include <array>
#include <httplib.h>
#include <json.hpp>
#include <regex>

#include "curate/errors.hpp"
#include "curate/hash.hpp"
#include "curate/manifest.hpp"

namespace curate {

namespace {

constexpr std::array<std::string_view, 12> kMockWords = {
    "สวัสดี", "ครับ",  "วันนี้", "อากาศ", "ดี",   "มาก",
    "ไป",    "ตลาด", "กิน",   "ข้าว",  "แล้ว", "บ้าน",
};

}  // namespace

MockBackend& MockBackend::set_text(const std::string& audio_ref, std::string text) {
  overrides_[audio_ref] = std::move(text);
  return *this;
}

MockBackend& MockBackend::fail_on(const std::string& audio_ref) {
  failing_.insert(audio_ref);
  return *this;
}

MockBackend& MockBackend::fail_all(bool on) {
  fail_all_ = on;
  return *this;
}

std::string MockBackend::default_text(const std::string& audio_ref) {
  std::uint64_t h = fnv1a64(audio_ref);
  const std::size_t words = 2 + h % 3;
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    h = h * 6364136223846793005ULL + 1442695040888963407ULL;
    out += kMockWords[(h >> 33) % kMockWords.size()];
  }
  return out;
}

std::string MockBackend::transcribe(const std::string& audio_ref, const std::string&) {
  if (fail_all_ || failing_.count(audio_ref)) throw BackendError(id_ + " is not answering");
  if (auto it = overrides_.find(audio_ref); it != overrides_.end()) return it->second;
  return default_text(audio_ref);
}

FileBackend::FileBackend(std::string id, const std::filesystem::path& hyps_manifest) : id_(std::move(id)) {
  for (auto& e : read_manifest(hyps_manifest).entries) texts_[e.audio_filepath] = std::move(e.text);
}

std::string FileBackend::transcribe(const std::string& audio_ref, const std::string&) {
  auto it = texts_.find(audio_ref);
  if (it == texts_.end()) throw BackendError(id_ + " has no hypothesis for " + audio_ref);
  return it->second;
}

HttpBackend::HttpBackend(std::string id, HttpBackendOptions options)
    : id_(std::move(id)), options_(std::move(options)) {
  static const std::regex kUrl(R"(^(http://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(options_.url, m, kUrl)) {
    throw Error("ConfigError", "backend " + id_ + ": unsupported url '" + options_.url + "'");
  }
  origin_ = m[1];
  path_ = m[2].matched ? m[2].str() : "/";
}

std::string HttpBackend::transcribe(const std::string& audio_ref, const std::string& language) {
  const std::string body = nlohmann::json{{"audio_ref", audio_ref}, {"language", language}}.dump();
  httplib::Client client(origin_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  std::string last_error;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    auto res = client.Post(path_, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      if (res->status < 500) break;  // client errors will not improve on retry
      continue;
    }
    try {
      auto j = nlohmann::json::parse(res->body);
      return j.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      last_error = std::string("bad response: ") + e.what();
      break;
    }
  }
  throw BackendError(id_ + " failed for " + audio_ref + ": " + last_error);
}

}  // namespace curate
