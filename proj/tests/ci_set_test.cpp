#include "loci/ci_set.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "loci/experiment.hpp"
#include "test_util.hpp"

using loci::CISet;
using loci::Graph;

TEST(CISet, MembershipIsSymmetricAndCanonical) {
    CISet s(4, 1);
    EXPECT_TRUE(s.insert(2, 3, std::vector<int>{0}));
    EXPECT_FALSE(s.insert(3, 2, std::vector<int>{0}));  // same statement
    EXPECT_TRUE(s.contains(2, 3, std::vector<int>{0}));
    EXPECT_TRUE(s.contains(3, 2, std::vector<int>{0}));
    EXPECT_FALSE(s.contains(2, 3, std::vector<int>{}));
    EXPECT_FALSE(s.contains(2, 3, std::vector<int>{1}));
    EXPECT_EQ(s.size(), 1u);
    EXPECT_TRUE(s.pair_separated(3, 2));
    EXPECT_FALSE(s.pair_separated(0, 1));
}

TEST(CISet, RejectsMalformedTriples) {
    CISet s(4, 1);
    EXPECT_THROW(s.contains(0, 0, std::vector<int>{}), std::invalid_argument);
    EXPECT_THROW(s.contains(0, 1, std::vector<int>{1}), std::invalid_argument);
    EXPECT_THROW(s.contains(0, 1, std::vector<int>{2, 3}), std::invalid_argument);  // order bound
    EXPECT_THROW(s.insert(0, 4, std::vector<int>{}), std::invalid_argument);
    EXPECT_THROW(s.insert(0, 1, std::vector<int>{2, 3}), std::invalid_argument);
}

TEST(CISet, ConditioningSetsCollapseDuplicates) {
    CISet s(5, 2);
    EXPECT_TRUE(s.insert(0, 1, std::vector<int>{3, 2}));
    EXPECT_TRUE(s.contains(0, 1, std::vector<int>{2, 3}));
    EXPECT_TRUE(s.contains(1, 0, std::vector<int>{3, 2}));
    // The order bound applies to the set, not the token count.
    EXPECT_TRUE(s.contains(0, 1, std::vector<int>{3, 2, 3}));
    EXPECT_TRUE(s.insert(2, 3, std::vector<int>{4, 4}));
    EXPECT_TRUE(s.contains(2, 3, std::vector<int>{4}));
}

TEST(CISet, StatementsComeOutInCanonicalOrder) {
    CISet s(4, 2);
    s.insert(1, 3, std::vector<int>{0, 2});
    s.insert(0, 1, std::vector<int>{});
    s.insert(1, 3, std::vector<int>{2});
    s.insert(1, 2, std::vector<int>{});
    const std::vector<loci::CIStatement> out = s.statements();
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(out[0], (loci::CIStatement{0, 1, {}}));
    EXPECT_EQ(out[1], (loci::CIStatement{1, 2, {}}));
    EXPECT_EQ(out[2], (loci::CIStatement{1, 3, {2}}));
    EXPECT_EQ(out[3], (loci::CIStatement{1, 3, {0, 2}}));
}

TEST(CISet, DigestTracksContentNotInsertionOrder) {
    CISet s1(4, 1), s2(4, 1);
    s1.insert(0, 1, std::vector<int>{});
    s1.insert(2, 3, std::vector<int>{1});
    s2.insert(3, 2, std::vector<int>{1});
    s2.insert(1, 0, std::vector<int>{});
    EXPECT_EQ(s1.digest(), s2.digest());
    s2.insert(0, 2, std::vector<int>{});
    EXPECT_NE(s1.digest(), s2.digest());
    CISet other_k(4, 2);
    other_k.insert(0, 1, std::vector<int>{});
    other_k.insert(2, 3, std::vector<int>{1});
    EXPECT_NE(s1.digest(), other_k.digest());
}

TEST(GenerateFromDag, CrossedParentsDagListsTheExpectedOrderOneStatements) {
    const CISet s = loci::generate_from_dag(testutil::incompatible_pair_dag(), 1);
    // a=0 b=1 c=2 d=3 u=4 v=5
    const std::vector<int> empty;
    EXPECT_TRUE(s.contains(4, 2, empty));
    EXPECT_TRUE(s.contains(4, 3, empty));
    EXPECT_TRUE(s.contains(4, 1, empty));
    EXPECT_TRUE(s.contains(4, 5, empty));
    EXPECT_TRUE(s.contains(0, 5, empty));
    EXPECT_TRUE(s.contains(2, 5, empty));
    EXPECT_TRUE(s.contains(3, 5, empty));
    EXPECT_TRUE(s.contains(2, 3, empty));
    EXPECT_TRUE(s.contains(4, 2, std::vector<int>{5}));
    // Dependences by absence.
    EXPECT_FALSE(s.contains(0, 1, empty));
    EXPECT_FALSE(s.contains(0, 1, std::vector<int>{2}));
    EXPECT_FALSE(s.contains(4, 0, empty));
}

TEST(GenerateFromDag, IsolatedPairAndCompleteDag) {
    const CISet pair = loci::generate_from_dag(Graph(2), 0);
    EXPECT_EQ(pair.size(), 1u);
    EXPECT_TRUE(pair.contains(0, 1, std::vector<int>{}));

    const Graph tournament = testutil::make_dag(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    for (int k = 0; k <= 2; ++k) EXPECT_EQ(loci::generate_from_dag(tournament, k).size(), 0u);
}

TEST(GenerateFromDag, RejectsBadInput) {
    EXPECT_THROW(loci::generate_from_dag(Graph(3), -1), std::invalid_argument);
    EXPECT_THROW(loci::generate_from_dag(Graph(3), 2), std::invalid_argument);
    EXPECT_THROW(loci::generate_from_dag(testutil::make_pdag(2, {}, {{0, 1}}), 0), std::invalid_argument);
}

TEST(GenerateFromDag, AgreesWithPerQuerySeparationChecks) {
    loci::Rng rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        const Graph d = loci::random_dag(6, 2.5, rng);
        const CISet s = loci::generate_from_dag(d, 2);
        loci::detail::for_each_subset_upto(6, 2, [&](std::span<const int> z) {
            for (int a = 0; a < 6; ++a)
                for (int b = a + 1; b < 6; ++b) {
                    if (std::count(z.begin(), z.end(), a) || std::count(z.begin(), z.end(), b)) continue;
                    const std::vector<int> zs(z.begin(), z.end());
                    EXPECT_EQ(s.contains(a, b, zs), loci::d_separated(d, {a, b, zs}));
                }
        });
    }
}

TEST(GenerateFromDag, LowerOrderRestrictionMatchesLowerOrderGeneration) {
    loci::Rng rng(42);
    for (int rep = 0; rep < 20; ++rep) {
        const Graph d = loci::random_dag(6, 2.5, rng);
        const CISet full = loci::generate_from_dag(d, 2);
        for (int k = 0; k < 2; ++k) {
            const CISet low = loci::generate_from_dag(d, k);
            std::size_t restricted = 0;
            for (const loci::CIStatement& st : full.statements())
                if (static_cast<int>(st.z.size()) <= k) {
                    ++restricted;
                    EXPECT_TRUE(low.contains(st.a, st.b, st.z));
                }
            EXPECT_EQ(restricted, low.size());
        }
    }
}
