#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace nilpath;

namespace {

Profile P(const char* s) { return Profile::parse(s); }

// m - e_k - e_l + e_{k+1} + e_{l-1} computed on a plain count vector; nullopt if negative.
std::optional<Profile> forward_by_hand(const Profile& m, std::int64_t k, std::int64_t l)
{
    std::map<std::int64_t, std::int64_t> c;
    for (auto [s, n] : m.counts())
        c[s] = n;
    c[k] -= 1;
    c[l] -= 1;
    c[k + 1] += 1;
    c[l - 1] += 1;
    Profile out;
    for (auto [s, n] : c) {
        if (s == 0)
            continue;
        if (n < 0)
            return std::nullopt;
        out.add(s, n);
    }
    return out;
}

// Exhaustive adjacency oracle over every window.
bool adjacent_by_search(const Profile& m, const Profile& mp, std::int64_t p)
{
    if (m == mp)
        return false;
    const std::int64_t top = std::max(m.max_index(), mp.max_index()) + 1;
    for (std::int64_t a = 0; p * a <= top; ++a)
        for (std::int64_t k = p * a; k <= p * (a + 1); ++k)
            for (std::int64_t l = k + 2; l <= p * (a + 1); ++l) {
                if (auto f = forward_by_hand(m, k, l); f && *f == mp)
                    return true;
                if (auto b = forward_by_hand(mp, k, l); b && *b == m)
                    return true;
            }
    return false;
}

} // namespace

TEST(Profile, TextAndJsonForms)
{
    const Profile m = P("2:1,4:1");
    EXPECT_EQ(m.str(), "4:1,2:1");
    EXPECT_EQ(to_json(m).dump(), R"({"4":1,"2":1})");
    EXPECT_EQ(profile_from_json(to_json(m)), m);
    EXPECT_EQ(P("").str(), "");
    EXPECT_TRUE(P("3:0").empty());
}

TEST(Profile, RejectsMalformedText)
{
    for (const char* bad : {"4", "a:1", "0:2", "2:-1", "2:1,,"}) {
        try {
            (void)Profile::parse(bad);
            ADD_FAILURE() << "accepted '" << bad << "'";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
        }
    }
}

TEST(Profile, SizeExamples)
{
    EXPECT_EQ(size(P("")), 0);
    EXPECT_EQ(size(P("3:1,1:2")), 5);
    EXPECT_EQ(size(P("2:2,1:2")), 6);
}

TEST(CellPowerProfile, Examples)
{
    EXPECT_EQ(cell_power_profile(5, 2), P("3:1,2:1"));
    EXPECT_EQ(cell_power_profile(4, 2), P("2:2"));
    EXPECT_EQ(cell_power_profile(1, 3), P("1:1"));
    EXPECT_TRUE(cell_power_profile(0, 3).empty());
}

TEST(CellPowerProfile, MatchesMatrixPowers)
{
    for (std::int64_t k = 1; k <= 9; ++k)
        for (std::int64_t p = 1; p <= 5; ++p)
            EXPECT_EQ(cell_power_profile(k, p),
                      nilpotent_profile(matrix_pow(jordan_cell(static_cast<std::size_t>(k)), static_cast<std::size_t>(p))))
                << "k=" << k << " p=" << p;
}

TEST(ProfilePower, Examples)
{
    EXPECT_EQ(profile_power(P("3:1"), 2), P("2:1,1:1"));
    EXPECT_TRUE(profile_power(P(""), 3).empty());
    EXPECT_EQ(profile_power(P("6:1"), 2), P("3:2"));
}

TEST(ProfilePower, MatchesMatrixOracleExhaustively)
{
    for (std::int64_t n = 1; n <= 8; ++n)
        for (const auto& m : testkit::all_profiles(n))
            for (std::int64_t p = 1; p <= 4; ++p)
                EXPECT_EQ(profile_power(m, p), testkit::power_by_matrix(m, p)) << m.str() << " p=" << p;
}

TEST(ProfilePower, HomomorphismAndSizePreservation)
{
    std::vector<Profile> small;
    for (std::int64_t n = 0; n <= 4; ++n)
        for (const auto& m : testkit::all_profiles(n))
            small.push_back(m);
    for (const auto& m : small)
        for (const auto& mp : small)
            for (std::int64_t p = 2; p <= 4; ++p) {
                Profile sum = m;
                sum += mp;
                Profile rhs = profile_power(m, p);
                rhs += profile_power(mp, p);
                EXPECT_EQ(profile_power(sum, p), rhs);
                EXPECT_EQ(size(sum), size(m) + size(mp));
                EXPECT_EQ(size(profile_power(sum, p)), size(sum));
            }
}

TEST(ProfilePower, TwoCellWindowIdentity)
{
    for (std::int64_t p = 2; p <= 4; ++p)
        for (std::int64_t a = 0; a <= 3; ++a)
            for (std::int64_t k = p * a; k <= p * (a + 1); ++k)
                for (std::int64_t l = k + 1; l <= p * (a + 1); ++l) {
                    Profile lhs = Profile::unit(k), rhs = Profile::unit(k + 1);
                    lhs += Profile::unit(l);
                    rhs += Profile::unit(l - 1);
                    EXPECT_EQ(profile_power(lhs, p), profile_power(rhs, p)) << p << " " << k << " " << l;
                }
}

TEST(Adjacency, Examples)
{
    auto mv = is_p_adjacent(P("1:2"), P("2:1"), 2);
    ASSERT_TRUE(mv);
    EXPECT_EQ(mv->a, 0);
    EXPECT_EQ(mv->k, 0);
    EXPECT_EQ(mv->l, 2);

    auto mv2 = is_p_adjacent(P("5:1,3:1"), P("4:2"), 3);
    ASSERT_TRUE(mv2);
    EXPECT_EQ(mv2->a, 1);
    EXPECT_EQ(mv2->k, 3);
    EXPECT_EQ(mv2->l, 5);

    EXPECT_FALSE(is_p_adjacent(P("2:1"), P("2:1"), 2));
}

TEST(Adjacency, AgreesWithWindowSearchAndRoundTrips)
{
    for (std::int64_t n = 1; n <= 7; ++n) {
        const auto all = testkit::all_profiles(n);
        for (std::int64_t p = 2; p <= 3; ++p)
            for (const auto& m : all)
                for (const auto& mp : all) {
                    const auto mv = is_p_adjacent(m, mp, p);
                    EXPECT_EQ(mv.has_value(), adjacent_by_search(m, mp, p)) << m.str() << " / " << mp.str() << " p=" << p;
                    if (mv) {
                        EXPECT_TRUE(move_window_ok(*mv, p));
                        EXPECT_EQ(apply_move(m, *mv, p), mp);
                        EXPECT_EQ(profile_power(m, p), profile_power(mp, p));
                    }
                }
    }
}

TEST(ApplyMove, Examples)
{
    const AdjacencyMove fwd{1, 2, 4, Direction::Forward};
    EXPECT_EQ(apply_move(P("4:1,2:1"), fwd, 2), P("3:2"));
    EXPECT_EQ(apply_move(P("3:2"), fwd.reversed(), 2), P("4:1,2:1"));
    EXPECT_EQ(apply_move(P("2:1"), AdjacencyMove{0, 0, 2, Direction::Forward}, 2), P("1:2"));
}

TEST(ApplyMove, ErrorPaths)
{
    for (auto [m, mv] : std::vector<std::pair<Profile, AdjacencyMove>>{
             {P("3:2"), {1, 2, 4, Direction::Forward}},  // no size-2 or size-4 cell
             {P("4:1,2:1"), {0, 2, 4, Direction::Forward}}, // window violated for p = 2
             {P("3:1,2:1"), {1, 2, 3, Direction::Forward}}}) { // l = k + 1
        try {
            (void)apply_move(m, mv, 2);
            ADD_FAILURE() << "accepted move on " << m.str();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidMove);
        }
    }
}

TEST(EnumeratePreimages, Examples)
{
    EXPECT_EQ(enumerate_preimages(P("1:2"), 2), (std::vector<Profile>{P("2:1"), P("1:2")}));
    EXPECT_TRUE(enumerate_preimages(P("2:1"), 2).empty());
    for (std::int64_t n = 1; n <= 6; ++n) {
        Profile zero;
        zero.add(1, n);
        EXPECT_EQ(enumerate_preimages(zero, 1), std::vector<Profile>{zero});
    }
}

TEST(EnumeratePreimages, MatchesBruteForce)
{
    for (std::int64_t n = 1; n <= 9; ++n) {
        const auto all = testkit::all_profiles(n);
        for (std::int64_t p = 2; p <= 4; ++p) {
            std::map<std::string, std::set<std::string>> by_target;
            for (const auto& m : all)
                by_target[testkit::power_by_matrix(m, p).str()].insert(m.str());
            for (const auto& target : all) {
                std::set<std::string> got;
                for (const auto& m : enumerate_preimages(target, p))
                    got.insert(m.str());
                EXPECT_EQ(got, by_target[target.str()]) << target.str() << " p=" << p;
            }
        }
    }
}

TEST(EnumeratePreimages, SizeCap)
{
    Profile big;
    big.add(1, 25);
    try {
        (void)enumerate_preimages(big, 2);
        FAIL() << "expected SizeCapExceeded";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SizeCapExceeded);
    }
    EXPECT_FALSE(enumerate_preimages(big, 2, 30).empty());
}
