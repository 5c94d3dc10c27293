#pragma once

#include <array>
#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "jdiv/error.hpp"

namespace jdiv {

/// Granularity of the three-tier paper classification.
enum class Level { Macro = 0, Meso = 1, Micro = 2 };

inline constexpr std::array<Level, 3> kLevels = {Level::Macro, Level::Meso,
                                                 Level::Micro};

inline constexpr int level_index(Level l) { return static_cast<int>(l); }

inline constexpr const char* level_name(Level l) {
  switch (l) {
    case Level::Macro: return "macro";
    case Level::Meso: return "meso";
    case Level::Micro: return "micro";
  }
  return "?";
}

inline std::optional<Level> level_from_name(const std::string& s) {
  if (s == "macro") return Level::Macro;
  if (s == "meso") return Level::Meso;
  if (s == "micro") return Level::Micro;
  return std::nullopt;
}

/// Number of dot-separated segments, or 0 if any segment is empty.
inline int topic_depth(const std::string& code) {
  if (code.empty()) return 0;
  int segments = 1;
  size_t prev = 0;
  for (size_t i = 0; i < code.size(); ++i) {
    if (code[i] == '.') {
      if (i == prev) return 0;  // empty segment
      ++segments;
      prev = i + 1;
    }
  }
  if (prev == code.size()) return 0;  // trailing dot
  return segments;
}

/// Level implied by a code's segment count: 1 -> macro, 2 -> meso, 3 -> micro.
inline std::optional<Level> topic_level(const std::string& code) {
  switch (topic_depth(code)) {
    case 1: return Level::Macro;
    case 2: return Level::Meso;
    case 3: return Level::Micro;
    default: return std::nullopt;
  }
}

/// Parent code at the next coarser level ("6.238.17" -> "6.238").
inline std::string topic_parent(const std::string& code) {
  size_t pos = code.rfind('.');
  return pos == std::string::npos ? std::string() : code.substr(0, pos);
}

/// Macro-level root of any code ("6.238.17" -> "6").
inline std::string topic_macro_root(const std::string& code) {
  size_t pos = code.find('.');
  return pos == std::string::npos ? code : code.substr(0, pos);
}

/// One classification code at a known level.
struct TopicId {
  Level level;
  std::string code;

  friend bool operator==(const TopicId&, const TopicId&) = default;
  friend auto operator<=>(const TopicId&, const TopicId&) = default;
};

inline std::optional<TopicId> parse_topic(const std::string& code) {
  auto lvl = topic_level(code);
  if (!lvl) return std::nullopt;
  return TopicId{*lvl, code};
}

/// Index of every topic code observed in the corpus, per level, in sorted
/// order. The dense ids double as node ids of the discipline graphs.
class TopicTaxonomy {
 public:
  TopicTaxonomy() = default;

  /// Builds from per-level code collections; duplicates allowed.
  static TopicTaxonomy from_codes(std::array<std::vector<std::string>, 3> raw) {
    TopicTaxonomy t;
    for (int l = 0; l < 3; ++l) {
      auto& codes = raw[l];
      std::sort(codes.begin(), codes.end());
      codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
      t.codes_[l] = std::move(codes);
      for (size_t i = 0; i < t.codes_[l].size(); ++i) {
        t.index_[l].emplace(t.codes_[l][i], static_cast<int>(i));
      }
    }
    return t;
  }

  int id_of(Level level, const std::string& code) const {
    const auto& idx = index_[level_index(level)];
    auto it = idx.find(code);
    return it == idx.end() ? -1 : it->second;
  }

  const std::vector<std::string>& codes(Level level) const {
    return codes_[level_index(level)];
  }

  const std::string& code_of(Level level, int id) const {
    return codes_[level_index(level)].at(static_cast<size_t>(id));
  }

  size_t count(Level level) const { return codes_[level_index(level)].size(); }

 private:
  std::array<std::vector<std::string>, 3> codes_;
  std::array<std::unordered_map<std::string, int>, 3> index_;
};

}  // namespace jdiv
