#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace nllkit {

// Raised for malformed or inconsistent corpus data.
class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Observed { Positive, Unlabeled };

// Annotation of what a sample really is. Reported vulnerabilities carry a
// Positive observed label; Silent and Latent ones are the hidden noise in the
// unlabeled set; CleanUnknown is everything else.
enum class Truth { Reported, Silent, Latent, CleanUnknown };

inline bool truth_positive(Truth t) { return t != Truth::CleanUnknown; }
inline bool truth_noisy(Truth t) { return t == Truth::Silent || t == Truth::Latent; }

inline std::string to_string(Observed o) {
  return o == Observed::Positive ? "positive" : "unlabeled";
}

inline std::string to_string(Truth t) {
  switch (t) {
    case Truth::Reported: return "reported";
    case Truth::Silent: return "silent";
    case Truth::Latent: return "latent";
    case Truth::CleanUnknown: return "clean_unknown";
  }
  return "clean_unknown";
}

inline Observed parse_observed(const std::string& s) {
  if (s == "positive") return Observed::Positive;
  if (s == "unlabeled") return Observed::Unlabeled;
  throw CorpusError("unknown observed label: '" + s + "'");
}

inline Truth parse_truth(const std::string& s) {
  if (s == "reported") return Truth::Reported;
  if (s == "silent") return Truth::Silent;
  if (s == "latent") return Truth::Latent;
  if (s == "clean_unknown") return Truth::CleanUnknown;
  throw CorpusError("unknown truth annotation: '" + s + "'");
}

struct Sample {
  std::string id;
  std::string path;
  std::vector<double> features;
  Observed observed = Observed::Unlabeled;
  Truth truth = Truth::CleanUnknown;
  std::optional<std::string> type_tag;
  std::optional<long> latency_days;
};

struct Release {
  int index = 0;
  std::vector<Sample> samples;
};

struct Corpus {
  std::vector<Release> releases;
  std::size_t dimension = 0;
};

inline void validate_sample(const Sample& s, std::size_t dimension) {
  if (s.observed == Observed::Positive && s.truth != Truth::Reported)
    throw CorpusError("sample '" + s.id + "': positive observed label requires reported truth");
  if (truth_noisy(s.truth) && s.observed != Observed::Unlabeled)
    throw CorpusError("sample '" + s.id + "': noisy truth requires unlabeled observed label");
  if (s.latency_days && s.truth != Truth::Latent)
    throw CorpusError("sample '" + s.id + "': latency only applies to latent samples");
  if (s.latency_days && *s.latency_days < 0)
    throw CorpusError("sample '" + s.id + "': negative latency");
  if (s.features.size() != dimension)
    throw CorpusError("sample '" + s.id + "': feature dimension " +
                      std::to_string(s.features.size()) + " != " + std::to_string(dimension));
  for (double f : s.features)
    if (!std::isfinite(f)) throw CorpusError("sample '" + s.id + "': non-finite feature");
}

inline void validate_corpus(const Corpus& corpus) {
  if (corpus.releases.empty()) throw CorpusError("corpus has no releases");
  int prev_index = -1;
  for (const Release& rel : corpus.releases) {
    if (rel.index <= prev_index)
      throw CorpusError("release indices must be strictly increasing");
    prev_index = rel.index;
    std::unordered_set<std::string> ids;
    for (const Sample& s : rel.samples) {
      validate_sample(s, corpus.dimension);
      if (!ids.insert(s.id).second)
        throw CorpusError("duplicate sample id '" + s.id + "' in release " +
                          std::to_string(rel.index));
    }
  }
}

}  // namespace nllkit
