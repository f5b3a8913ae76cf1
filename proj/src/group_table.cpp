#include "formclass/group_table.hpp"

#include <algorithm>
#include <map>

#include "formclass/numtheory.hpp"

namespace formclass {

ClassGroupTable::ClassGroupTable(std::vector<std::string> labels,
                                 std::vector<std::vector<std::size_t>> table, std::size_t identity)
    : labels_(std::move(labels)), table_(std::move(table)), identity_(identity) {
  const std::size_t n = labels_.size();
  if (n == 0) throw std::invalid_argument("group table is empty");
  if (table_.size() != n || identity_ >= n) throw std::invalid_argument("group table has wrong shape");
  for (const auto& row : table_) {
    if (row.size() != n) throw std::invalid_argument("group table has wrong shape");
    for (std::size_t v : row)
      if (v >= n) throw std::invalid_argument("group table entry out of range");
  }
}

std::size_t ClassGroupTable::inverse(std::size_t i) const {
  for (std::size_t j = 0; j < size(); ++j)
    if (table_[i][j] == identity_) return j;
  throw std::logic_error("element has no inverse");
}

std::size_t ClassGroupTable::power(std::size_t i, std::uint64_t k) const {
  std::size_t result = identity_;
  std::size_t base = i;
  while (k > 0) {
    if (k & 1) result = table_[result][base];
    base = table_[base][base];
    k >>= 1;
  }
  return result;
}

std::uint64_t ClassGroupTable::element_order(std::size_t i) const {
  std::uint64_t k = 1;
  for (std::size_t x = i; x != identity_; x = table_[x][i]) {
    if (++k > size()) throw std::logic_error("element order exceeds group size");
  }
  return k;
}

bool ClassGroupTable::is_abelian() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (table_[i][j] != table_[j][i]) return false;
  return true;
}

std::vector<std::string> ClassGroupTable::axiom_violations() const {
  std::vector<std::string> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    if (table_[identity_][i] != i || table_[i][identity_] != i) {
      out.push_back("identity fails on " + labels_[i]);
    }
    if (std::none_of(table_[i].begin(), table_[i].end(), [&](std::size_t v) { return v == identity_; })) {
      out.push_back("no inverse for " + labels_[i]);
    }
    std::vector<bool> hit(n);
    for (std::size_t v : table_[i]) hit[v] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
      out.push_back("row of " + labels_[i] + " is not a permutation");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (table_[table_[i][j]][k] != table_[i][table_[j][k]]) {
          out.push_back("associativity fails on (" + labels_[i] + ", " + labels_[j] + ", " +
                        labels_[k] + ")");
          return out;
        }
  return out;
}

std::vector<std::uint64_t> ClassGroupTable::invariant_factors() const {
  if (!is_abelian()) throw std::logic_error("invariant factors need an abelian group");
  const auto n = static_cast<Modulus>(size());
  // exponents[p][j] = exponent of the j-th largest cyclic p-factor
  std::map<Modulus, std::vector<int>> exponents;
  for (Modulus p : prime_factors(n)) {
    // counts[k] = #{x : x^(p^k) = e}
    std::vector<std::uint64_t> counts{1};
    std::uint64_t pk = 1;
    for (;;) {
      pk *= static_cast<std::uint64_t>(p);
      std::uint64_t c = 0;
      for (std::size_t x = 0; x < size(); ++x)
        if (power(x, pk) == identity_) ++c;
      if (c == counts.back()) break;
      counts.push_back(c);
    }
    // ranks[k-1] = number of cyclic factors of order >= p^k
    std::vector<int> ranks;
    for (std::size_t k = 1; k < counts.size(); ++k) {
      int r = 0;
      for (std::uint64_t q = counts[k] / counts[k - 1]; q > 1; q /= static_cast<std::uint64_t>(p)) ++r;
      ranks.push_back(r);
    }
    std::vector<int> e;
    for (int j = 1; !ranks.empty() && j <= ranks.front(); ++j) {
      e.push_back(static_cast<int>(std::count_if(ranks.begin(), ranks.end(), [j](int r) { return r >= j; })));
    }
    exponents[p] = e;
  }
  std::size_t count = 0;
  for (const auto& [p, e] : exponents) count = std::max(count, e.size());
  std::vector<std::uint64_t> out(count, 1);
  for (const auto& [p, e] : exponents)
    for (std::size_t j = 0; j < e.size(); ++j)
      for (int k = 0; k < e[j]; ++k) out[count - 1 - j] *= static_cast<std::uint64_t>(p);
  return out;
}

}  // namespace formclass
