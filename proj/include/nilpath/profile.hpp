#ifndef NILPATH_PROFILE_HPP
#define NILPATH_PROFILE_HPP

#include <nilpath/error.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace nilpath {

inline constexpr std::int64_t kDefaultSizeCap = 24;

/*
 * Jordan profile: multiplicity m_k of cells of size k >= 1. Only positive
 * counts are stored; iteration runs from the largest cell size down.
 */
class Profile {
public:
    using Map = std::map<std::int64_t, std::int64_t, std::greater<>>;

    Profile() = default;
    explicit Profile(Map counts)
    {
        for (auto [k, c] : counts)
            add(k, c);
    }
    Profile(std::initializer_list<std::pair<const std::int64_t, std::int64_t>> counts)
        : Profile(Map(counts))
    {
    }

    /// e_k; e_0 is the zero profile.
    static Profile unit(std::int64_t k)
    {
        Profile p;
        if (k > 0)
            p.add(k, 1);
        return p;
    }

    /// Profile of the multiset of cell sizes (size-0 entries ignored).
    static Profile from_cells(const std::vector<std::size_t>& sizes)
    {
        Profile p;
        for (auto k : sizes)
            if (k > 0)
                p.add(static_cast<std::int64_t>(k), 1);
        return p;
    }

    std::int64_t count(std::int64_t k) const
    {
        auto it = counts_.find(k);
        return it == counts_.end() ? 0 : it->second;
    }

    /// Adds delta to m_k; k = 0 is ignored (e_0 convention). Throws if a count goes negative.
    void add(std::int64_t k, std::int64_t delta)
    {
        if (k == 0 || delta == 0)
            return;
        require(k > 0, ErrorKind::InvalidArgument, "cell sizes are positive");
        std::int64_t c = count(k) + delta;
        require(c >= 0, ErrorKind::InvalidMove, "negative multiplicity at size " + std::to_string(k));
        if (c == 0)
            counts_.erase(k);
        else
            counts_[k] = c;
    }

    const Map& counts() const { return counts_; }
    bool empty() const { return counts_.empty(); }
    std::int64_t max_index() const { return counts_.empty() ? 0 : counts_.begin()->first; }
    std::int64_t cell_count() const
    {
        std::int64_t s = 0;
        for (auto [k, c] : counts_)
            s += c;
        return s;
    }

    /// Cell sizes in decreasing order, with repetition.
    std::vector<std::size_t> cells() const
    {
        std::vector<std::size_t> out;
        for (auto [k, c] : counts_)
            out.insert(out.end(), static_cast<std::size_t>(c), static_cast<std::size_t>(k));
        return out;
    }

    Profile& operator+=(const Profile& o)
    {
        for (auto [k, c] : o.counts_)
            add(k, c);
        return *this;
    }
    friend Profile operator+(Profile a, const Profile& b) { return a += b; }

    /// Componentwise m <= other.
    bool le(const Profile& o) const
    {
        for (auto [k, c] : counts_)
            if (o.count(k) < c)
                return false;
        return true;
    }

    friend bool operator==(const Profile&, const Profile&) = default;
    /// Reverse-lexicographic on the descending cell list.
    friend auto operator<=>(const Profile& a, const Profile& b)
    {
        auto ia = a.counts_.begin(), ib = b.counts_.begin();
        for (; ia != a.counts_.end() && ib != b.counts_.end(); ++ia, ++ib) {
            if (ia->first != ib->first)
                return ia->first <=> ib->first;
            if (ia->second != ib->second)
                return ia->second <=> ib->second;
        }
        if (ia == a.counts_.end() && ib == b.counts_.end())
            return std::strong_ordering::equal;
        return ia == a.counts_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    /// "k:m_k" pairs, descending k, comma separated. Empty profile is "".
    std::string str() const
    {
        std::string out;
        for (auto [k, c] : counts_) {
            if (!out.empty())
                out += ",";
            out += std::to_string(k) + ":" + std::to_string(c);
        }
        return out;
    }

    static Profile parse(std::string_view text);

private:
    Map counts_;
};

namespace detail {

inline std::int64_t parse_int(std::string_view s, std::string_view what)
{
    std::string t;
    for (char c : s)
        if (c != ' ' && c != '\t')
            t.push_back(c);
    if (t.empty())
        fail(ErrorKind::ParseError, "empty " + std::string(what));
    std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (start == t.size() || !std::all_of(t.begin() + static_cast<std::ptrdiff_t>(start), t.end(),
                                          [](char c) { return c >= '0' && c <= '9'; }))
        fail(ErrorKind::ParseError, "malformed " + std::string(what) + " '" + t + "'");
    try {
        return std::stoll(t);
    } catch (const std::exception&) {
        fail(ErrorKind::ParseError, std::string(what) + " out of range");
    }
}

} // namespace detail

inline Profile Profile::parse(std::string_view text)
{
    Profile p;
    std::string s(text);
    if (s.find_first_not_of(" \t") == std::string::npos)
        return p;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            fail(ErrorKind::ParseError, "profile entry '" + item + "' lacks ':'");
        auto k = detail::parse_int(std::string_view(item).substr(0, colon), "cell size");
        auto c = detail::parse_int(std::string_view(item).substr(colon + 1), "multiplicity");
        if (k <= 0 || c < 0)
            fail(ErrorKind::ParseError, "profile entry '" + item + "' out of range");
        p.add(k, c);
    }
    return p;
}

/// Element of Z^(N*): signed multiplicities, nonzero entries only.
class ProfileDelta {
public:
    ProfileDelta() = default;
    static ProfileDelta difference(const Profile& a, const Profile& b)
    {
        ProfileDelta d;
        for (auto [k, c] : a.counts())
            d.add(k, c);
        for (auto [k, c] : b.counts())
            d.add(k, -c);
        return d;
    }
    void add(std::int64_t k, std::int64_t delta)
    {
        if (k == 0 || delta == 0)
            return;
        auto v = (entries_[k] += delta);
        if (v == 0)
            entries_.erase(k);
    }
    std::int64_t at(std::int64_t k) const
    {
        auto it = entries_.find(k);
        return it == entries_.end() ? 0 : it->second;
    }
    const std::map<std::int64_t, std::int64_t>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }
    friend bool operator==(const ProfileDelta&, const ProfileDelta&) = default;

private:
    std::map<std::int64_t, std::int64_t> entries_;
};

/// S(m) = sum k m_k.
inline std::int64_t size(const Profile& m)
{
    std::int64_t s = 0;
    for (auto [k, c] : m.counts())
        s += k * c;
    return s;
}

/// Profile of J_k^p: r cells of size a+1 and p-r of size a, where k = pa + r.
inline Profile cell_power_profile(std::int64_t k, std::int64_t p)
{
    require(k >= 0 && p >= 1, ErrorKind::InvalidArgument, "cell_power_profile arguments");
    Profile out;
    const std::int64_t a = k / p, r = k % p;
    out.add(a + 1, r);
    out.add(a, p - r);
    return out;
}

/// m^[p]_a = sum_{-p<j<p} (p-|j|) m_{pa+j}.
inline Profile profile_power(const Profile& m, std::int64_t p)
{
    require(p >= 1, ErrorKind::InvalidArgument, "exponent must be positive");
    Profile out;
    if (m.empty())
        return out;
    const std::int64_t top = (m.max_index() + p - 1) / p + 1;
    for (std::int64_t a = 1; a <= top; ++a) {
        std::int64_t v = 0;
        for (std::int64_t j = -p + 1; j < p; ++j) {
            const std::int64_t idx = p * a + j;
            if (idx >= 1)
                v += (p - (j < 0 ? -j : j)) * m.count(idx);
        }
        out.add(a, v);
    }
    return out;
}

enum class Direction { Forward, Backward };

inline std::string_view to_string(Direction d)
{
    return d == Direction::Forward ? "forward" : "backward";
}

/*
 * Adjacency move with pa <= k < l <= p(a+1), l > k+1. Forward turns cells
 * (k, l) into (k+1, l-1); backward is the inverse.
 */
struct AdjacencyMove {
    std::int64_t a = 0;
    std::int64_t k = 0;
    std::int64_t l = 0;
    Direction direction = Direction::Forward;

    AdjacencyMove reversed() const
    {
        return {a, k, l, direction == Direction::Forward ? Direction::Backward : Direction::Forward};
    }
    friend bool operator==(const AdjacencyMove&, const AdjacencyMove&) = default;
};

/// True iff pa <= k < l <= p(a+1) and the move is not the identity (l = k+1).
inline bool move_window_ok(const AdjacencyMove& mv, std::int64_t p)
{
    return mv.a >= 0 && mv.k >= 0 && p * mv.a <= mv.k && mv.k < mv.l && mv.l <= p * (mv.a + 1)
        && mv.l != mv.k + 1;
}

/// e_k + e_l - e_{k+1} - e_{l-1} (with e_0 = 0), times the sign.
inline ProfileDelta move_delta(std::int64_t k, std::int64_t l, std::int64_t sign)
{
    ProfileDelta d;
    d.add(k, sign);
    d.add(l, sign);
    d.add(k + 1, -sign);
    d.add(l - 1, -sign);
    return d;
}

inline Profile apply_move(const Profile& m, const AdjacencyMove& mv, std::int64_t p)
{
    require(move_window_ok(mv, p), ErrorKind::InvalidMove,
            "window constraint pa <= k < l <= p(a+1), l > k+1 violated");
    const std::int64_t s = mv.direction == Direction::Forward ? -1 : 1;
    const ProfileDelta d = move_delta(mv.k, mv.l, s);
    Profile out = m;
    for (auto [k, c] : d.entries())
        if (c > 0)
            out.add(k, c);
    for (auto [k, c] : d.entries())
        if (c < 0)
            out.add(k, c);
    return out;
}

/*
 * Witnessing move for m ~_p m' (m != m'), searched over windows suggested by
 * the support of m - m'. The returned move maps m to m'.
 */
inline std::optional<AdjacencyMove> is_p_adjacent(const Profile& m, const Profile& mp, std::int64_t p)
{
    require(p >= 1, ErrorKind::InvalidArgument, "exponent must be positive");
    const ProfileDelta d = ProfileDelta::difference(m, mp);
    if (d.is_zero() || d.entries().size() > 4)
        return std::nullopt;
    std::vector<std::int64_t> ks{0}, ls;
    for (auto [idx, c] : d.entries()) {
        ks.push_back(idx);
        ks.push_back(idx - 1);
        ls.push_back(idx);
        ls.push_back(idx + 1);
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    for (auto k : ks) {
        if (k < 0)
            continue;
        const std::int64_t a = k / p;
        for (auto l : ls) {
            AdjacencyMove mv{a, k, l, Direction::Forward};
            if (!move_window_ok(mv, p))
                continue;
            // m - m' = +delta means m' is m after a forward move
            if (move_delta(k, l, 1) == d)
                return mv;
            if (move_delta(k, l, -1) == d)
                return AdjacencyMove{a, k, l, Direction::Backward};
        }
    }
    return std::nullopt;
}

/*
 * All m with S(m) = S(target) and m^[p] = target. Partitions are generated
 * largest part first; a branch is cut as soon as the accumulated power
 * profile exceeds the target anywhere. Result is in descending order.
 */
inline std::vector<Profile> enumerate_preimages(const Profile& target, std::int64_t p,
                                                std::int64_t size_cap = kDefaultSizeCap)
{
    require(p >= 1, ErrorKind::InvalidArgument, "exponent must be positive");
    const std::int64_t n = size(target);
    if (n > size_cap)
        fail(ErrorKind::SizeCapExceeded,
             "profile size " + std::to_string(n) + " exceeds cap " + std::to_string(size_cap));
    std::vector<std::int64_t> want(static_cast<std::size_t>(n + 2), 0), have(want.size(), 0);
    for (auto [k, c] : target.counts())
        want[static_cast<std::size_t>(k)] = c;

    std::vector<Profile> out;
    std::vector<std::int64_t> parts;
    auto contribute = [&](std::int64_t k, std::int64_t sign) {
        const std::int64_t a = k / p, r = k % p;
        bool ok = true;
        if (r > 0) {
            auto& h = have[static_cast<std::size_t>(a + 1)];
            h += sign * r;
            ok = ok && h <= want[static_cast<std::size_t>(a + 1)];
        }
        if (a > 0 && p - r > 0) {
            auto& h = have[static_cast<std::size_t>(a)];
            h += sign * (p - r);
            ok = ok && h <= want[static_cast<std::size_t>(a)];
        }
        return ok;
    };
    std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t remaining, std::int64_t max_part) {
        if (remaining == 0) {
            if (have == want) {
                Profile m;
                for (auto k : parts)
                    m.add(k, 1);
                out.push_back(std::move(m));
            }
            return;
        }
        for (std::int64_t k = std::min(remaining, max_part); k >= 1; --k) {
            bool ok = contribute(k, 1);
            if (ok) {
                parts.push_back(k);
                rec(remaining - k, k);
                parts.pop_back();
            }
            contribute(k, -1);
        }
    };
    rec(n, n);
    return out;
}

} // namespace nilpath

#endif // NILPATH_PROFILE_HPP
