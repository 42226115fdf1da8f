// Derivation certificates: explicit relator applications turning one word
// into another.  Producers build them through Derivation; the independent
// checker lives in presentations.hpp and re-validates every step against the
// raw relator list.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "words.hpp"

namespace gnk {

struct RewriteStep {
  enum class Kind { relator, rotate };

  Kind kind = Kind::relator;
  // relator: index of the subword that is replaced; rotate: shift amount.
  std::size_t position = 0;
  Word removed;
  Word inserted;
  // Index into the presentation's relator list (relator steps only).
  std::size_t relator = 0;

  friend bool operator==(RewriteStep const&, RewriteStep const&) = default;
};

// start ->* end.  When `cyclic` is set the certificate proves only that start
// is trivial iff end is trivial (rotation steps are conjugations); otherwise
// it proves start == end in the group.
struct DerivationCertificate {
  Word start;
  Word end;
  std::vector<RewriteStep> steps;
  bool cyclic = false;
};

// Canonical key of a relator up to rotation and reversal.
inline Word cyclic_key(Word const& r) {
  Word a = least_rotation(r);
  Word b = least_rotation(reversed(r));
  return a < b ? a : b;
}

class RelatorIndex {
 public:
  RelatorIndex() = default;
  explicit RelatorIndex(std::vector<Word> const& relators) {
    for (std::size_t i = 0; i < relators.size(); ++i) {
      index_.emplace(cyclic_key(relators[i]), i);
    }
  }

  std::optional<std::size_t> find(Word const& cyclic_word) const {
    auto it = index_.find(cyclic_key(cyclic_word));
    if (it == index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

 private:
  std::map<Word, std::size_t> index_;
};

// Mutable word together with the relator steps applied to it so far.
class Derivation {
 public:
  Derivation(Word start, RelatorIndex const& index, bool cyclic = false)
      : start_(start), current_(std::move(start)), index_(&index),
        cyclic_(cyclic) {}

  Word const& current() const noexcept { return current_; }
  std::vector<RewriteStep> const& steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_.size(); }

  // Replace current[pos, pos+len) by `inserted`; removed . inserted^R must be
  // a rotation of a relator or its reversal.
  void replace(std::size_t pos, std::size_t len, Word const& inserted) {
    if (pos + len > current_.size()) {
      throw Error("derivation: replacement out of range");
    }
    Word removed(current_.begin() + static_cast<std::ptrdiff_t>(pos),
                 current_.begin() + static_cast<std::ptrdiff_t>(pos + len));
    if (removed == inserted) {
      return;
    }
    auto rel = index_->find(concat(removed, reversed(inserted)));
    if (!rel) {
      throw Error("derivation: replacement is not a relator application");
    }
    RewriteStep step;
    step.position = pos;
    step.removed = removed;
    step.inserted = inserted;
    step.relator = *rel;
    current_.erase(current_.begin() + static_cast<std::ptrdiff_t>(pos),
                   current_.begin() + static_cast<std::ptrdiff_t>(pos + len));
    current_.insert(current_.begin() + static_cast<std::ptrdiff_t>(pos),
                    inserted.begin(), inserted.end());
    steps_.push_back(std::move(step));
  }

  void insert(std::size_t pos, Word const& inserted) { replace(pos, 0, inserted); }

  // Free reduction, one deleted square per step.
  void free_reduce() {
    std::size_t i = 0;
    while (i + 1 < current_.size()) {
      if (current_[i] == current_[i + 1]) {
        replace(i, 2, {});
        i = i > 0 ? i - 1 : 0;
      } else {
        ++i;
      }
    }
  }

  void rotate(std::size_t k) {
    if (!cyclic_) {
      throw Error("derivation: rotation in a non-cyclic derivation");
    }
    if (current_.empty() || k % current_.size() == 0) {
      return;
    }
    RewriteStep step;
    step.kind = RewriteStep::Kind::rotate;
    step.position = k % current_.size();
    current_ = rotate_left(current_, step.position);
    steps_.push_back(std::move(step));
  }

  // Free and cyclic reduction; the word ends cyclically reduced.
  void cyclic_reduce() {
    free_reduce();
    while (current_.size() >= 2 && current_.front() == current_.back()) {
      rotate(current_.size() - 1);
      free_reduce();
    }
  }

  // Replays steps recorded on a subword that starts at `offset`.
  void splice(std::size_t offset, std::vector<RewriteStep> const& steps) {
    for (auto const& s : steps) {
      if (s.kind != RewriteStep::Kind::relator) {
        throw Error("derivation: cannot splice rotation steps");
      }
      replace(offset + s.position, s.removed.size(), s.inserted);
    }
  }

  DerivationCertificate certificate() const {
    return DerivationCertificate{start_, current_, steps_, cyclic_};
  }

 private:
  Word start_;
  Word current_;
  std::vector<RewriteStep> steps_;
  RelatorIndex const* index_;
  bool cyclic_;
};

}  // namespace gnk
