#pragma once

#include "gsp/common.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

namespace gsp {

/// Sorted, duplicate-free subset of {0, ..., universe - 1}.
///
/// The tag distinguishes vertex subsets from frequency (eigenvector index)
/// subsets so the two cannot be swapped by accident.
template <typename Tag> class IndexSet {
public:
  IndexSet() = default;

  IndexSet(Index universe, std::vector<Index> members)
      : universe_(universe), members_(std::move(members)) {
    if (universe_ < 0)
      throw InputError("index set universe must be nonnegative");
    std::sort(members_.begin(), members_.end());
    for (std::size_t k = 0; k < members_.size(); ++k) {
      const Index i = members_[k];
      if (i < 0 || i >= universe_)
        throw InputError(std::string(Tag::name) + " index " +
                         std::to_string(i) + " out of range [0, " +
                         std::to_string(universe_) + ")");
      if (k > 0 && members_[k - 1] == i)
        throw InputError(std::string(Tag::name) + " index " +
                         std::to_string(i) + " listed twice");
    }
  }

  IndexSet(Index universe, std::initializer_list<Index> members)
      : IndexSet(universe, std::vector<Index>(members)) {}

  static IndexSet all(Index universe) { return first(universe, universe); }
  static IndexSet none(Index universe) { return IndexSet(universe, std::vector<Index>{}); }

  /// {0, ..., count - 1}
  static IndexSet first(Index count, Index universe) {
    if (count < 0 || count > universe)
      throw InputError("cannot take " + std::to_string(count) + " of " +
                       std::to_string(universe) + " indices");
    std::vector<Index> m(static_cast<std::size_t>(count));
    for (Index i = 0; i < count; ++i)
      m[static_cast<std::size_t>(i)] = i;
    return IndexSet(universe, std::move(m));
  }

  Index universe() const noexcept { return universe_; }
  Index size() const noexcept { return static_cast<Index>(members_.size()); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<Index> &members() const noexcept { return members_; }
  Index operator[](Index k) const { return members_[static_cast<std::size_t>(k)]; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  bool contains(Index i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
  }

  IndexSet complement() const {
    std::vector<Index> out;
    out.reserve(static_cast<std::size_t>(universe_ - size()));
    for (Index i = 0; i < universe_; ++i)
      if (!contains(i))
        out.push_back(i);
    return IndexSet(universe_, std::move(out));
  }

  /// 0/1 indicator vector of length universe.
  template <typename Scalar = double> Vector<Scalar> indicator() const {
    Vector<Scalar> v = Vector<Scalar>::Zero(universe_);
    for (Index i : members_)
      v(i) = Scalar(1);
    return v;
  }

  void require_universe(Index n) const {
    if (universe_ != n)
      throw InputError(std::string(Tag::name) + " set defined over " +
                       std::to_string(universe_) + " indices, expected " +
                       std::to_string(n));
  }

  friend bool operator==(const IndexSet &, const IndexSet &) = default;

private:
  Index universe_ = 0;
  std::vector<Index> members_;
};

struct VertexTag {
  static constexpr const char *name = "vertex";
};
struct FrequencyTag {
  static constexpr const char *name = "frequency";
};

using VertexSet = IndexSet<VertexTag>;
using FrequencySet = IndexSet<FrequencyTag>;

} // namespace gsp
