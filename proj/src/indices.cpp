#include "spherule/indices.hpp"

#include <algorithm>

#include "spherule/scalar.hpp"

namespace spherule {

IndexSet make_set(std::vector<int> elems) {
  std::sort(elems.begin(), elems.end());
  if (std::adjacent_find(elems.begin(), elems.end()) != elems.end()) {
    throw Error(ErrorKind::InvalidArgument, "index set has repeated elements");
  }
  return elems;
}

bool contains(const IndexSet& J, int j) { return std::binary_search(J.begin(), J.end(), j); }

IndexSet remove(const IndexSet& J, int j) {
  IndexSet r;
  r.reserve(J.size());
  for (int x : J)
    if (x != j) r.push_back(x);
  return r;
}

IndexSet insert(const IndexSet& J, int j) {
  IndexSet r = J;
  auto it = std::lower_bound(r.begin(), r.end(), j);
  if (it == r.end() || *it != j) r.insert(it, j);
  return r;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

bool is_subset(const IndexSet& a, const IndexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

IndexSet complement(const IndexSet& J, int m) { return set_difference(range_set(1, m), J); }

IndexSet range_set(int first, int last) {
  IndexSet r;
  for (int i = first; i <= last; ++i) r.push_back(i);
  return r;
}

IndexSet as_set(const OrderedSeq& seq) { return make_set(seq); }

std::string format_set(const IndexSet& J) {
  if (J.empty()) return "{}";
  std::string s = "{";
  for (std::size_t i = 0; i < J.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(J[i]);
  }
  return s + "}";
}

std::vector<IndexSet> subsets_of_size(const IndexSet& base, std::size_t k) {
  std::vector<IndexSet> out;
  if (k > base.size()) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    IndexSet s;
    for (auto i : idx) s.push_back(base[i]);
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == base.size() - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
  return out;
}

std::vector<IndexSet> subsets(const IndexSet& base) {
  std::vector<IndexSet> out;
  for (std::size_t k = 0; k <= base.size(); ++k) {
    auto s = subsets_of_size(base, k);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

void for_each_permutation(const IndexSet& base, const std::function<void(const OrderedSeq&)>& visit) {
  OrderedSeq p = base;
  std::sort(p.begin(), p.end());
  do {
    visit(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

void for_each_ordered(const IndexSet& base, std::size_t k, const std::function<void(const OrderedSeq&)>& visit) {
  for (const auto& s : subsets_of_size(base, k)) for_each_permutation(s, visit);
}

std::vector<IndexSet> admissible_sets(int m, int n) {
  std::vector<IndexSet> out;
  IndexSet all = range_set(1, m);
  for (int k = 1; k <= std::min(m, n + 1); ++k) {
    auto s = subsets_of_size(all, static_cast<std::size_t>(k));
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

bool is_admissible(const IndexSet& J, int m, int n) {
  if (J.empty() || static_cast<int>(J.size()) > n + 1) return false;
  return J.front() >= 1 && J.back() <= m;
}

bool is_nbc(const IndexSet& J, int m, int n) {
  if (!is_admissible(J, m, n)) return false;
  if (static_cast<int>(J.size()) <= n) return true;
  return m <= n + 1 || contains(J, n + 1);
}

std::vector<IndexSet> nbc_basis(int m, int n) {
  std::vector<IndexSet> out;
  for (auto& J : admissible_sets(m, n))
    if (is_nbc(J, m, n)) out.push_back(J);
  if (out.size() != dimension(m, n)) {
    throw Error(ErrorKind::DimensionMismatch, "NBC family size " + std::to_string(out.size()) +
                                                   " differs from the dimension formula " +
                                                   std::to_string(dimension(m, n)));
  }
  return out;
}

std::uint64_t binomial(int a, int b) {
  if (b < 0 || a < 0 || b > a) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= b; ++i) r = r * static_cast<std::uint64_t>(a - b + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t dimension(int m, int n) {
  std::uint64_t d = 0;
  for (int nu = 1; nu <= n; ++nu) d += binomial(m, nu);
  return d + binomial(m - 1, n);
}

}  // namespace spherule
