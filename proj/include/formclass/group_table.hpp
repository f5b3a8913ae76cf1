#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

namespace formclass {

struct GroupTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finite group given by a full multiplication table over indices 0..n-1.
class ClassGroupTable {
 public:
  ClassGroupTable() = default;
  ClassGroupTable(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> table,
                  std::size_t identity);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  std::size_t identity() const { return identity_; }

  std::size_t mul(std::size_t i, std::size_t j) const { return table_[i][j]; }
  std::size_t inverse(std::size_t i) const;
  std::size_t power(std::size_t i, std::uint64_t k) const;
  std::uint64_t element_order(std::size_t i) const;

  bool is_abelian() const;
  /// Human-readable failures of closure, identity, inverse, associativity;
  /// empty iff the table defines a group.
  std::vector<std::string> axiom_violations() const;

  /// d_1 | d_2 | ... with every d_i > 1; empty for the trivial group.
  /// Requires an abelian table.
  std::vector<std::uint64_t> invariant_factors() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
};

template <typename T>
struct GroupClosure {
  std::vector<T> elements;              ///< elements[0] is the identity
  std::vector<std::size_t> generators;  ///< indices into the candidate list that were used
  ClassGroupTable table;
};

/// Closes candidate elements of a finite group under multiplication.
/// Candidates already in the current subgroup are skipped, so the recorded
/// generators form a minimal-by-greed generating set. Elements are compared
/// with `eq` only, so T may be a non-canonical representative of a class.
template <typename T, typename Mul, typename Eq, typename Label>
GroupClosure<T> close_group(const T& identity, const std::vector<T>& candidates, Mul mul, Eq eq,
                            Label label, std::size_t limit) {
  GroupClosure<T> out;
  std::vector<T> gens;
  // Each element is parent * gens[via]; the identity has no parent.
  std::vector<std::size_t> parent{0}, via{0};
  out.elements.push_back(identity);

  auto find = [&](const T& x) -> std::size_t {
    for (std::size_t i = 0; i < out.elements.size(); ++i)
      if (eq(out.elements[i], x)) return i;
    return out.elements.size();
  };

  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (find(candidates[c]) != out.elements.size()) continue;
    gens.push_back(candidates[c]);
    out.generators.push_back(c);
    // Right-multiply everything by every generator until nothing new appears.
    std::deque<std::size_t> todo;
    for (std::size_t i = 0; i < out.elements.size(); ++i) todo.push_back(i);
    while (!todo.empty()) {
      std::size_t i = todo.front();
      todo.pop_front();
      for (std::size_t g = 0; g < gens.size(); ++g) {
        T y = mul(out.elements[i], gens[g]);
        if (find(y) != out.elements.size()) continue;
        if (out.elements.size() >= limit) {
          throw GroupTooLarge("group closure exceeded " + std::to_string(limit) + " elements");
        }
        out.elements.push_back(std::move(y));
        parent.push_back(i);
        via.push_back(g);
        todo.push_back(out.elements.size() - 1);
      }
    }
  }

  const std::size_t n = out.elements.size();
  // Right multiplication by each generator as a permutation of indices.
  std::vector<std::vector<std::size_t>> right(gens.size(), std::vector<std::size_t>(n));
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = find(mul(out.elements[i], gens[g]));
      if (j == n) throw std::logic_error("group closure is not closed");
      right[g][i] = j;
    }
  // x * e_j = (x * e_parent(j)) * g_via(j); parents precede children.
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    table[i][0] = i;
    for (std::size_t j = 1; j < n; ++j) table[i][j] = right[via[j]][table[i][parent[j]]];
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const T& x : out.elements) labels.push_back(label(x));
  out.table = ClassGroupTable(std::move(labels), std::move(table), 0);
  return out;
}

}  // namespace formclass
