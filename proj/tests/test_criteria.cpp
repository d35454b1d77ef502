#include "support.hpp"

#include <gtest/gtest.h>

#include <unordered_map>

using namespace nilpath;

namespace {

Profile P(const char* s) { return Profile::parse(s); }

// Least number of generators summing to m, or -1; plain memoized recursion.
class SemigroupOracle {
public:
    SemigroupOracle(std::vector<std::int64_t> ps, bool inf) : ps_(std::move(ps)), inf_(inf) {}

    std::int64_t min_count(const Profile& m)
    {
        if (m.empty())
            return 0;
        const std::string key = m.str();
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        std::int64_t best = -1;
        auto consider = [&](const Profile& g) {
            if (g.empty() || !g.le(m))
                return;
            Profile rest = m;
            for (auto [k, c] : g.counts())
                rest.add(k, -c);
            const auto sub = min_count(rest);
            if (sub >= 0 && (best < 0 || sub + 1 < best))
                best = sub + 1;
        };
        for (auto p : ps_)
            for (std::int64_t a = 0; a <= m.max_index(); ++a)
                for (std::int64_t r = 0; r <= p; ++r) {
                    Profile g;
                    g.add(a, p - r); // add() ignores index 0
                    g.add(a + 1, r);
                    consider(g);
                }
        if (inf_)
            consider(Profile::unit(1));
        memo_[key] = best;
        return best;
    }

private:
    std::vector<std::int64_t> ps_;
    bool inf_;
    std::unordered_map<std::string, std::int64_t> memo_;
};

} // namespace

TEST(HasPthRoot, Examples)
{
    EXPECT_FALSE(has_pth_root(P("2:1"), 2));
    EXPECT_TRUE(has_pth_root(P("2:1,1:1"), 2));
    EXPECT_TRUE(has_pth_root(P("1:5"), 3));
}

TEST(FindRootProfile, Examples)
{
    EXPECT_EQ(find_root_profile(P("2:1,1:1"), 2), P("3:1"));
    EXPECT_FALSE(find_root_profile(P("2:1"), 2));
    EXPECT_EQ(find_root_profile(P(""), 3), P(""));
}

TEST(FindRootProfile, AlwaysVerifiedAgainstPowerMap)
{
    for (std::int64_t n = 1; n <= 11; ++n)
        for (const auto& m : testkit::all_profiles(n))
            for (std::int64_t p = 2; p <= 4; ++p) {
                const auto root = find_root_profile(m, p);
                EXPECT_EQ(root.has_value(), has_pth_root(m, p)) << m.str() << " p=" << p;
                if (root)
                    EXPECT_EQ(profile_power(*root, p), m);
            }
}

TEST(IsFSolvable, Examples)
{
    const auto w = is_f_solvable({{2, 3}, false}, P("3:1,2:1,1:1"));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->generators, (std::vector<Generator>{{2, 2, 1}, {2, 0, 1}}));
    EXPECT_EQ(w->e1_count, 0);
    EXPECT_EQ(w->total(), P("3:1,2:1,1:1"));

    EXPECT_FALSE(is_f_solvable({{2, 3}, false}, P("2:1")));

    const auto simple = is_f_solvable({{1}, false}, P("4:1,2:2"));
    ASSERT_TRUE(simple);
    for (const auto& g : simple->generators)
        EXPECT_EQ(g.p, 1);
}

TEST(IsFSolvable, MatchesOracleWithMinimalWitnesses)
{
    const std::vector<std::pair<std::vector<std::int64_t>, bool>> specs{
        {{2}, false}, {{3}, false}, {{2, 3}, false}, {{4}, true}, {{2, 5}, false}, {{}, true}};
    for (const auto& [ps, inf] : specs) {
        SemigroupOracle oracle(ps, inf);
        for (std::int64_t n = 1; n <= 9; ++n)
            for (const auto& m : testkit::all_profiles(n)) {
                const auto w = is_f_solvable({ps, inf}, m);
                const auto best = oracle.min_count(m);
                ASSERT_EQ(w.has_value(), best >= 0) << m.str();
                if (w) {
                    EXPECT_EQ(w->total(), m);
                    EXPECT_EQ(static_cast<std::int64_t>(w->generators.size()) + w->e1_count, best) << m.str();
                    if (!inf)
                        EXPECT_EQ(w->e1_count, 0);
                }
            }
    }
}

TEST(IsFSolvable, SimpleZeroIsUniversal)
{
    for (std::int64_t n = 1; n <= 12; ++n)
        for (const auto& m : testkit::all_profiles(n))
            EXPECT_TRUE(is_f_solvable({{1}, false}, m)) << m.str();
}

TEST(IsFSolvable, InfiniteZeroHandlesZeroMatrix)
{
    for (std::int64_t n = 1; n <= 20; ++n) {
        Profile zero;
        zero.add(1, n);
        const auto w = is_f_solvable({{}, true}, zero);
        ASSERT_TRUE(w);
        EXPECT_EQ(w->e1_count, n);
    }
    EXPECT_FALSE(is_f_solvable({{}, true}, P("2:1")));
}

TEST(IsFSolvable, SizeCap)
{
    try {
        (void)is_f_solvable({{2}, false}, P("5:5"), 24);
        FAIL() << "expected SizeCapExceeded";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SizeCapExceeded);
    }
}

TEST(SpecialTwoThree, Examples)
{
    EXPECT_FALSE(special_two_three(P("2:1")));
    EXPECT_TRUE(special_two_three(P("3:1,2:1,1:1")));
    EXPECT_TRUE(special_two_three(P("")));
}

TEST(CriteriaAgree, SmallSizesAllExponents)
{
    for (std::int64_t n = 1; n <= 8; ++n)
        for (const auto& m : testkit::all_profiles(n)) {
            for (std::int64_t p = 2; p <= 4; ++p) {
                const bool a = has_pth_root(m, p);
                EXPECT_EQ(a, !enumerate_preimages(m, p).empty()) << m.str() << " p=" << p;
                EXPECT_EQ(a, is_f_solvable({{p}, false}, m).has_value()) << m.str() << " p=" << p;
            }
            EXPECT_EQ(special_two_three(m), is_f_solvable({{2, 3}, false}, m).has_value()) << m.str();
        }
}
