#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "jdiv/csv.hpp"
#include "jdiv/error.hpp"
#include "jdiv/ingest.hpp"
#include "jdiv/node2vec.hpp"
#include "jdiv/rng.hpp"
#include "jdiv/sgns.hpp"
#include "jdiv/topics.hpp"

namespace jdiv {

namespace detail {

inline long long parse_ll(const std::string& key, const std::string& value) {
  try {
    size_t idx = 0;
    long long v = std::stoll(value, &idx);
    if (idx != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for '" + key + "': " + value);
  }
}

inline double parse_real(const std::string& key, const std::string& value) {
  try {
    size_t idx = 0;
    double v = std::stod(value, &idx);
    if (idx != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad number for '" + key + "': " + value);
  }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") {
    return true;
  }
  if (value == "false" || value == "0" || value == "off" || value == "no") {
    return false;
  }
  throw ConfigError("bad boolean for '" + key + "': " + value);
}

}  // namespace detail

/// All pipeline tunables. Embedding keys may be overridden per level with a
/// "<level>." prefix, e.g. "micro.epochs = 3".
struct PipelineConfig {
  uint64_t seed = 1;
  int dims = 64;
  double return_p = 1.0;
  double inout_q = 1.0;
  int walk_length = 80;
  int walks_per_node = 10;
  int window = 10;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.025;
  double order_q = 2.0;
  int top_n = 10;
  bool deterministic = true;
  int threads = 1;
  int year_min = 2016;
  int year_max = 2020;
  bool include_self_loops = false;
  double detect_threshold = 0.6;

  std::map<std::string, std::string> level_overrides;

  static bool is_level_key(const std::string& key) {
    return key == "dims" || key == "return_p" || key == "inout_q" ||
           key == "walk_length" || key == "walks_per_node" ||
           key == "window" || key == "negatives" || key == "epochs" ||
           key == "learning_rate";
  }

  void set(const std::string& raw_key, const std::string& raw_value) {
    std::string key = csv::trim(raw_key);
    std::string value = csv::trim(raw_value);
    auto dot = key.find('.');
    if (dot != std::string::npos) {
      std::string prefix = key.substr(0, dot);
      std::string suffix = key.substr(dot + 1);
      if (!level_from_name(prefix)) {
        throw ConfigError("unknown level prefix: " + prefix);
      }
      if (!is_level_key(suffix)) {
        throw ConfigError("key '" + suffix + "' cannot be set per level");
      }
      // validate the value with the same parser the base key uses
      PipelineConfig probe = *this;
      probe.level_overrides.clear();
      probe.set(suffix, value);
      level_overrides[key] = value;
      return;
    }

    if (key == "seed") {
      long long v = detail::parse_ll(key, value);
      if (v < 0) throw ConfigError("seed must be non-negative");
      seed = static_cast<uint64_t>(v);
    } else if (key == "dims") {
      dims = static_cast<int>(detail::parse_ll(key, value));
      if (dims < 1) throw ConfigError("dims must be positive");
    } else if (key == "return_p") {
      return_p = detail::parse_real(key, value);
      if (!(return_p > 0)) throw ConfigError("return_p must be positive");
    } else if (key == "inout_q") {
      inout_q = detail::parse_real(key, value);
      if (!(inout_q > 0)) throw ConfigError("inout_q must be positive");
    } else if (key == "walk_length") {
      walk_length = static_cast<int>(detail::parse_ll(key, value));
      if (walk_length < 1) throw ConfigError("walk_length must be positive");
    } else if (key == "walks_per_node") {
      walks_per_node = static_cast<int>(detail::parse_ll(key, value));
      if (walks_per_node < 1) {
        throw ConfigError("walks_per_node must be positive");
      }
    } else if (key == "window") {
      window = static_cast<int>(detail::parse_ll(key, value));
      if (window < 1) throw ConfigError("window must be positive");
    } else if (key == "negatives") {
      negatives = static_cast<int>(detail::parse_ll(key, value));
      if (negatives < 1) throw ConfigError("negatives must be positive");
    } else if (key == "epochs") {
      epochs = static_cast<int>(detail::parse_ll(key, value));
      if (epochs < 1) throw ConfigError("epochs must be positive");
    } else if (key == "learning_rate") {
      learning_rate = detail::parse_real(key, value);
      if (!(learning_rate > 0)) {
        throw ConfigError("learning_rate must be positive");
      }
    } else if (key == "order_q") {
      order_q = detail::parse_real(key, value);
      if (!(order_q >= 0)) throw ConfigError("order_q must be non-negative");
    } else if (key == "top_n") {
      top_n = static_cast<int>(detail::parse_ll(key, value));
      if (top_n < 1) throw ConfigError("top_n must be positive");
    } else if (key == "deterministic") {
      deterministic = detail::parse_bool(key, value);
    } else if (key == "threads") {
      threads = static_cast<int>(detail::parse_ll(key, value));
      if (threads < 1) throw ConfigError("threads must be positive");
    } else if (key == "year_min") {
      year_min = static_cast<int>(detail::parse_ll(key, value));
    } else if (key == "year_max") {
      year_max = static_cast<int>(detail::parse_ll(key, value));
    } else if (key == "include_self_loops") {
      include_self_loops = detail::parse_bool(key, value);
    } else if (key == "detect_threshold") {
      detect_threshold = detail::parse_real(key, value);
      if (!(detect_threshold >= 0)) {
        throw ConfigError("detect_threshold must be non-negative");
      }
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }

  /// Flat "key = value" file; '#' starts a comment, blank lines are skipped.
  static PipelineConfig from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    PipelineConfig cfg;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = csv::trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("config line " + std::to_string(line_no) +
                          " is not key = value: " + line);
      }
      cfg.set(line.substr(0, eq), line.substr(eq + 1));
    }
    cfg.validate();
    return cfg;
  }

  void validate() const {
    if (year_min > year_max) {
      throw ConfigError("year_min exceeds year_max");
    }
    for (Level l : kLevels) {
      walk_params(l).validate();
      train_params(l).validate();
    }
  }

  std::string override_or(const std::string& key, Level level,
                          const std::string& fallback) const {
    auto it = level_overrides.find(std::string(level_name(level)) + "." + key);
    return it == level_overrides.end() ? fallback : it->second;
  }

  WalkParams walk_params(Level level) const {
    WalkParams p;
    p.return_p = detail::parse_real(
        "return_p",
        override_or("return_p", level, csv::format_double(return_p)));
    p.inout_q = detail::parse_real(
        "inout_q", override_or("inout_q", level, csv::format_double(inout_q)));
    p.walk_length = static_cast<int>(detail::parse_ll(
        "walk_length",
        override_or("walk_length", level, std::to_string(walk_length))));
    p.walks_per_node = static_cast<int>(detail::parse_ll(
        "walks_per_node",
        override_or("walks_per_node", level, std::to_string(walks_per_node))));
    p.include_self_loops = include_self_loops;
    p.seed = derive_seed(seed, 0x77616c6bULL, level_index(level));
    return p;
  }

  TrainParams train_params(Level level) const {
    TrainParams p;
    p.dimensions = static_cast<int>(detail::parse_ll(
        "dims", override_or("dims", level, std::to_string(dims))));
    p.window = static_cast<int>(detail::parse_ll(
        "window", override_or("window", level, std::to_string(window))));
    p.negative_samples = static_cast<int>(detail::parse_ll(
        "negatives", override_or("negatives", level, std::to_string(negatives))));
    p.epochs = static_cast<int>(detail::parse_ll(
        "epochs", override_or("epochs", level, std::to_string(epochs))));
    p.initial_learning_rate = detail::parse_real(
        "learning_rate",
        override_or("learning_rate", level, csv::format_double(learning_rate)));
    p.seed = derive_seed(seed, 0x73676e73ULL, level_index(level));
    p.threads = deterministic ? 1 : threads;
    return p;
  }

  LoadOptions load_options() const {
    LoadOptions opts;
    opts.year_min = year_min;
    opts.year_max = year_max;
    return opts;
  }

  /// Canonical dump of every effective key, used for the config digest.
  std::string canonical_text() const {
    std::ostringstream os;
    os << "deterministic=" << (deterministic ? 1 : 0) << '\n';
    os << "detect_threshold=" << csv::format_double(detect_threshold) << '\n';
    os << "dims=" << dims << '\n';
    os << "epochs=" << epochs << '\n';
    os << "include_self_loops=" << (include_self_loops ? 1 : 0) << '\n';
    os << "inout_q=" << csv::format_double(inout_q) << '\n';
    os << "learning_rate=" << csv::format_double(learning_rate) << '\n';
    os << "negatives=" << negatives << '\n';
    os << "order_q=" << csv::format_double(order_q) << '\n';
    os << "return_p=" << csv::format_double(return_p) << '\n';
    os << "seed=" << seed << '\n';
    os << "threads=" << threads << '\n';
    os << "top_n=" << top_n << '\n';
    os << "walk_length=" << walk_length << '\n';
    os << "walks_per_node=" << walks_per_node << '\n';
    os << "window=" << window << '\n';
    os << "year_max=" << year_max << '\n';
    os << "year_min=" << year_min << '\n';
    for (const auto& [key, value] : level_overrides) {
      os << key << '=' << value << '\n';
    }
    return os.str();
  }

  /// FNV-1a over the canonical dump, printed as 16 hex digits.
  std::string digest() const {
    std::string text = canonical_text();
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
  }
};

}  // namespace jdiv
