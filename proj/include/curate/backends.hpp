#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace curate {

/// A transcription service. transcribe() must be safe to call from several
/// threads at once and throws BackendError when the service cannot answer.
class TranscriptionBackend {
 public:
  virtual ~TranscriptionBackend() = default;
  virtual const std::string& id() const = 0;
  virtual std::string transcribe(const std::string& audio_ref, const std::string& language) = 0;
};

/// Deterministic stand-in. By default the text is a short Thai phrase picked
/// by hashing audio_ref, so all mocks agree unless told otherwise.
class MockBackend : public TranscriptionBackend {
 public:
  explicit MockBackend(std::string id) : id_(std::move(id)) {}

  MockBackend& set_text(const std::string& audio_ref, std::string text);
  MockBackend& fail_on(const std::string& audio_ref);
  MockBackend& fail_all(bool on = true);

  const std::string& id() const override { return id_; }
  std::string transcribe(const std::string& audio_ref, const std::string& language) override;

  static std::string default_text(const std::string& audio_ref);

 private:
  std::string id_;
  std::map<std::string, std::string> overrides_;
  std::set<std::string> failing_;
  bool fail_all_ = false;
};

/// Pre-computed hypotheses: a manifest whose `text` is this backend's output
/// for each audio_filepath. Unknown audio refs throw BackendError.
class FileBackend : public TranscriptionBackend {
 public:
  FileBackend(std::string id, const std::filesystem::path& hyps_manifest);
  FileBackend(std::string id, std::map<std::string, std::string> texts)
      : id_(std::move(id)), texts_(std::move(texts)) {}

  const std::string& id() const override { return id_; }
  std::string transcribe(const std::string& audio_ref, const std::string& language) override;

 private:
  std::string id_;
  std::map<std::string, std::string> texts_;
};

struct HttpBackendOptions {
  std::string url;  // http://host:port/path
  std::chrono::milliseconds timeout{30000};
  int retries = 2;
};

/// POSTs {"audio_ref", "language"} and reads {"text"} from the response.
class HttpBackend : public TranscriptionBackend {
 public:
  HttpBackend(std::string id, HttpBackendOptions options);

  const std::string& id() const override { return id_; }
  std::string transcribe(const std::string& audio_ref, const std::string& language) override;

 private:
  std::string id_;
  HttpBackendOptions options_;
  std::string origin_;
  std::string path_;
};

}  // namespace curate
