#pragma once

// Event logs: words (most recent event first) or bags of events.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hcov/wqo.hpp"

namespace hcov {

enum class LogMode { Word, Bag };

inline const char* to_string(LogMode mode) { return mode == LogMode::Word ? "word" : "bag"; }

class History {
 public:
  explicit History(LogMode mode = LogMode::Word) : mode_(mode) {}

  /// `events` is most-recent-first.
  static History word(Word events) {
    History h(LogMode::Word);
    h.word_ = std::move(events);
    return h;
  }
  static History bag(Multiset events) {
    History h(LogMode::Bag);
    h.bag_ = std::move(events);
    return h;
  }

  LogMode mode() const { return mode_; }
  const Word& events() const { return word_; }
  const Multiset& counts() const { return bag_; }
  bool empty() const { return mode_ == LogMode::Word ? word_.empty() : bag_.empty(); }
  std::size_t length() const { return mode_ == LogMode::Word ? word_.size() : bag_.size(); }

  friend bool operator==(const History&, const History&) = default;
  friend auto operator<=>(const History&, const History&) = default;

  /// Word: space-separated, most recent first. Bag: "e:n" pairs sorted by event.
  std::string to_string() const {
    if (mode_ == LogMode::Bag) return bag_.to_string();
    std::string out;
    for (const auto& e : word_) {
      if (!out.empty()) out += ' ';
      out += e;
    }
    return out;
  }

 private:
  LogMode mode_;
  Word word_;
  Multiset bag_;
};

/// e + h: prepend for words, add one occurrence for bags.
inline History extend(const Symbol& event, const History& h) {
  if (h.mode() == LogMode::Bag) {
    Multiset m = h.counts();
    m.add(event);
    return History::bag(std::move(m));
  }
  Word w;
  w.reserve(h.events().size() + 1);
  w.push_back(event);
  w.insert(w.end(), h.events().begin(), h.events().end());
  return History::word(std::move(w));
}

inline bool history_leq(const History& h1, const History& h2) {
  if (h1.mode() != h2.mode()) throw std::invalid_argument("history_leq: log mode mismatch");
  if (h1.mode() == LogMode::Word) return word_embeds(h1.events(), h2.events());
  return multiset_embeds(h1.counts(), h2.counts());
}

/// Minimal basis of { h : target <= extend(emitted, h) }. Always a singleton:
/// the emitted event can absorb the most recent letter of a word target (or
/// one occurrence of a bag target), and nothing else.
inline std::vector<History> pre_history(const History& target, const Symbol& emitted) {
  if (target.mode() == LogMode::Bag) {
    Multiset m = target.counts();
    m.remove(emitted);
    return {History::bag(std::move(m))};
  }
  const Word& w = target.events();
  if (w.empty() || w.front() == emitted) return {History::word(Word(w.begin() + (w.empty() ? 0 : 1), w.end()))};
  return {target};
}

}  // namespace hcov
