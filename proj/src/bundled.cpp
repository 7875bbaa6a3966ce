#include <sstream>

#include "curate/normalizer.hpp"

namespace curate {

namespace detail {
extern const std::string_view kBundledLexicon;
extern const std::string_view kBundledTranslit;
}  // namespace detail

std::shared_ptr<const Lexicon> bundled_lexicon_ptr() {
  static const auto lexicon = [] {
    std::istringstream in{std::string(detail::kBundledLexicon)};
    return std::make_shared<const Lexicon>(Lexicon::parse(in, "bundled"));
  }();
  return lexicon;
}

std::shared_ptr<const TranslitDict> bundled_translit_ptr() {
  static const auto dict = [] {
    std::istringstream in{std::string(detail::kBundledTranslit)};
    return std::make_shared<const TranslitDict>(TranslitDict::parse(in));
  }();
  return dict;
}

const Lexicon& bundled_lexicon() { return *bundled_lexicon_ptr(); }
const TranslitDict& bundled_translit() { return *bundled_translit_ptr(); }

NormConfig NormConfig::bundled() {
  NormConfig config;
  config.lexicon = bundled_lexicon_ptr();
  config.translit = bundled_translit_ptr();
  return config;
}

}  // namespace curate
