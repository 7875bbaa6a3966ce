#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "curate/review_store.hpp"

namespace curate {

/// Content type for an audio file, by extension.
std::string_view audio_content_type(const std::filesystem::path& path);

/// Resolves `audio_filepath` under `root`. Returns an empty path when the
/// result would escape the root.
std::filesystem::path resolve_under_root(const std::filesystem::path& root, const std::string& audio_filepath);

/// JSON-over-HTTP front end for a ReviewStore.
class ReviewServer {
 public:
  struct Options {
    std::filesystem::path audio_root;  // empty: audio endpoints answer 404
    std::filesystem::path static_dir;  // optional browser client mounted at /
  };

  ReviewServer(ReviewStore& store, Options options);
  ~ReviewServer();
  ReviewServer(const ReviewServer&) = delete;
  ReviewServer& operator=(const ReviewServer&) = delete;

  /// Binds without serving. Port 0 picks a free port; returns the bound
  /// port, or -1 on failure.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Call after bind().
  bool run();
  void stop();
  /// Blocks until the server accepts connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace curate
