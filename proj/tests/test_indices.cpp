#include "doctest.h"
#include "fixtures.hpp"

using namespace spherule;

TEST_CASE("admissible sets") {
  CHECK(admissible_sets(2, 1) == std::vector<IndexSet>{{1}, {2}, {1, 2}});
  CHECK(admissible_sets(3, 1).size() == 6);
  CHECK(admissible_sets(4, 3).size() == 15);
  CHECK(admissible_sets(4, 2).size() == 14);
  CHECK(is_admissible({1, 3}, 3, 1));
  CHECK_FALSE(is_admissible({1, 2, 3}, 3, 1));
  CHECK_FALSE(is_admissible({}, 3, 1));
}

TEST_CASE("NBC basis") {
  CHECK(nbc_basis(3, 1) == std::vector<IndexSet>{{1}, {2}, {3}, {1, 2}, {2, 3}});
  CHECK(nbc_basis(2, 1).size() == 3);
  for (int n = 1; n <= 5; ++n) CHECK(nbc_basis(n + 1, n) == admissible_sets(n + 1, n));
  CHECK(is_nbc({1, 2}, 3, 1));
  CHECK_FALSE(is_nbc({1, 3}, 3, 1));
}

TEST_CASE("dimension formula") {
  CHECK(dimension(2, 1) == 3);
  CHECK(dimension(3, 1) == 5);
  for (int n = 1; n <= 6; ++n) CHECK(dimension(n + 1, n) == (std::uint64_t{1} << (n + 1)) - 1);
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= n + 4; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(nbc_basis(m, n).size() == dimension(m, n));
    }
}

TEST_CASE("set operations keep sets sorted") {
  CHECK(make_set({3, 1, 2}) == IndexSet{1, 2, 3});
  CHECK(insert({1, 3}, 2) == IndexSet{1, 2, 3});
  CHECK(remove({1, 2, 3}, 2) == IndexSet{1, 3});
  CHECK(set_union({1, 4}, {2, 4}) == IndexSet{1, 2, 4});
  CHECK(set_difference({1, 2, 4}, {2}) == IndexSet{1, 4});
  CHECK(set_intersection({1, 2, 4}, {2, 4, 5}) == IndexSet{2, 4});
  CHECK(complement({2}, 4) == IndexSet{1, 3, 4});
  CHECK(is_subset({1, 3}, {1, 2, 3}));
  CHECK(as_set({3, 1}) == IndexSet{1, 3});
  CHECK(format_set({1, 2}) == "{1,2}");
  CHECK(format_set({}) == "{}");
}

TEST_CASE("graded order sorts by size first") {
  GradedLess less;
  CHECK(less({3}, {1, 2}));
  CHECK(less({1, 2}, {1, 3}));
  CHECK_FALSE(less({1, 3}, {1, 2}));
}

TEST_CASE("enumeration counts") {
  CHECK(subsets({1, 2, 3}).size() == 8);
  CHECK(subsets_of_size({1, 2, 3, 4}, 2).size() == 6);
  std::size_t count = 0;
  for_each_ordered({1, 2, 3, 4}, 2, [&](const OrderedSeq& s) {
    CHECK(s.size() == 2);
    CHECK(s[0] != s[1]);
    ++count;
  });
  CHECK(count == 12);
  count = 0;
  for_each_permutation({1, 2, 3}, [&](const OrderedSeq&) { ++count; });
  CHECK(count == 6);
  CHECK(binomial(6, 2) == 15);
  CHECK(binomial(3, 5) == 0);
}
