#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace spherule {

/// Strictly increasing sphere indices in 1..m.  The empty set is the slot of the
/// standard form itself.
using IndexSet = std::vector<int>;

/// Distinct sphere indices where order matters.
using OrderedSeq = std::vector<int>;

/// Graded lexicographic order: by size first, then lexicographically.
struct GradedLess {
  bool operator()(const IndexSet& a, const IndexSet& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

IndexSet make_set(std::vector<int> elems);
bool contains(const IndexSet& J, int j);
IndexSet remove(const IndexSet& J, int j);
IndexSet insert(const IndexSet& J, int j);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
bool is_subset(const IndexSet& a, const IndexSet& b);
/// {1..m} minus J.
IndexSet complement(const IndexSet& J, int m);
IndexSet range_set(int first, int last);
/// Set of the elements of an ordered sequence.
IndexSet as_set(const OrderedSeq& seq);

std::string format_set(const IndexSet& J);

/// All subsets of `base` (including empty and base itself), graded order.
std::vector<IndexSet> subsets(const IndexSet& base);
std::vector<IndexSet> subsets_of_size(const IndexSet& base, std::size_t k);

/// Calls `visit` for every ordering of every k-element subset of `base`.
void for_each_ordered(const IndexSet& base, std::size_t k, const std::function<void(const OrderedSeq&)>& visit);

/// Calls `visit` for every ordering of all of `base`.
void for_each_permutation(const IndexSet& base, const std::function<void(const OrderedSeq&)>& visit);

std::vector<IndexSet> admissible_sets(int m, int n);
bool is_admissible(const IndexSet& J, int m, int n);

/// Non-broken-circuit basis for the order n+1 < 1 < ... < n < n+2 < ... < m.
/// When m <= n+1 this is the family of all admissible sets.
std::vector<IndexSet> nbc_basis(int m, int n);
bool is_nbc(const IndexSet& J, int m, int n);

std::uint64_t binomial(int a, int b);
std::uint64_t dimension(int m, int n);

}  // namespace spherule
