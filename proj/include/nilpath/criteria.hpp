#ifndef NILPATH_CRITERIA_HPP
#define NILPATH_CRITERIA_HPP

#include <nilpath/profile.hpp>

#include <limits>
#include <optional>
#include <set>
#include <vector>

namespace nilpath {

/// Zero multiplicities of an analytic f; nothing else about f matters here.
struct ZeroSpec {
    std::vector<std::int64_t> finite_multiplicities;
    bool has_infinite_zero = false;
};

/// Generator (p-r) e_a + r e_{a+1} for a zero of multiplicity p.
struct Generator {
    std::int64_t p = 0;
    std::int64_t a = 0;
    std::int64_t r = 0;

    Profile profile() const
    {
        Profile g;
        g.add(a, p - r);
        g.add(a + 1, r);
        return g;
    }
    friend bool operator==(const Generator&, const Generator&) = default;
};

struct SemigroupWitness {
    std::vector<Generator> generators;
    std::int64_t e1_count = 0;

    Profile total() const
    {
        Profile sum;
        for (const auto& g : generators)
            sum += g.profile();
        sum.add(1, e1_count);
        return sum;
    }
};

/// For every k with R_k = (sum_{j>k} m_j) mod p nonzero: p - m_k <= R_k.
inline bool has_pth_root(const Profile& m, std::int64_t p)
{
    require(p >= 1, ErrorKind::InvalidArgument, "exponent must be positive");
    std::int64_t tail = 0; // sum_{j>k} m_j
    for (std::int64_t k = m.max_index(); k >= 1; --k) {
        const std::int64_t rem = tail % p;
        if (rem != 0 && p - m.count(k) > rem)
            return false;
        tail += m.count(k);
    }
    return true;
}

/*
 * Greedy merge: the largest remaining target part s is taken as the a+1 part
 * of a root cell pa + r with r = min(count, p); the p - r parts of size a must
 * be available. Result is always re-verified; on failure the exhaustive
 * preimage enumeration decides.
 */
inline std::optional<Profile> find_root_profile(const Profile& m, std::int64_t p,
                                                std::int64_t size_cap = kDefaultSizeCap)
{
    if (!has_pth_root(m, p))
        return std::nullopt;
    Profile rest = m, root;
    bool greedy_ok = true;
    while (!rest.empty()) {
        const std::int64_t s = rest.max_index();
        const std::int64_t a = s - 1;
        const std::int64_t r = std::min(rest.count(s), p);
        if (a > 0 && rest.count(a) < p - r && r < p) {
            greedy_ok = false;
            break;
        }
        rest.add(s, -r);
        if (r < p)
            rest.add(a, -(p - r));
        root.add(p * a + r, 1);
    }
    if (greedy_ok && profile_power(root, p) == m)
        return root;
    auto all = enumerate_preimages(m, p, size_cap);
    if (all.empty())
        return std::nullopt;
    return all.front();
}

/*
 * Semigroup membership by dynamic programming over the sub-profiles of m
 * (a mixed-radix grid with one digit per support index). dist[s] is the
 * least number of generators summing to s. The witness is read back from m
 * choosing, at each step, the first generator in (p asc, a desc, r asc)
 * order that stays on a shortest decomposition.
 */
inline std::optional<SemigroupWitness> is_f_solvable(const ZeroSpec& spec, const Profile& m,
                                                     std::int64_t size_cap = kDefaultSizeCap)
{
    const std::int64_t n = size(m);
    if (n > size_cap)
        fail(ErrorKind::SizeCapExceeded,
             "profile size " + std::to_string(n) + " exceeds cap " + std::to_string(size_cap));

    std::vector<std::int64_t> support; // ascending
    for (auto [k, c] : m.counts())
        support.insert(support.begin(), k);
    std::vector<std::size_t> stride(support.size());
    std::size_t states = 1;
    for (std::size_t i = 0; i < support.size(); ++i) {
        stride[i] = states;
        states *= static_cast<std::size_t>(m.count(support[i]) + 1);
    }
    auto digit_of = [&](std::int64_t k) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < support.size(); ++i)
            if (support[i] == k)
                return static_cast<std::ptrdiff_t>(i);
        return -1;
    };

    struct Gen {
        Generator g;
        bool is_e1 = false;
        std::vector<std::int64_t> delta; // per support digit
    };
    std::vector<Gen> gens;
    auto push = [&](Generator g, bool is_e1, const Profile& prof) {
        if (prof.empty() || !prof.le(m))
            return;
        Gen gen{g, is_e1, std::vector<std::int64_t>(support.size(), 0)};
        for (auto [k, c] : prof.counts())
            gen.delta[static_cast<std::size_t>(digit_of(k))] = c;
        gens.push_back(std::move(gen));
    };
    std::set<std::int64_t> ps(spec.finite_multiplicities.begin(), spec.finite_multiplicities.end());
    for (auto p : ps) {
        require(p >= 1, ErrorKind::InvalidArgument, "zero multiplicities are positive");
        for (std::int64_t a = m.max_index(); a >= 0; --a) {
            // (p-r) <= m_a (a >= 1) and r <= m_{a+1}
            const std::int64_t r_lo = a >= 1 ? std::max<std::int64_t>(0, p - m.count(a)) : 1;
            const std::int64_t r_hi = std::min(p, m.count(a + 1));
            for (std::int64_t r = r_lo; r <= r_hi; ++r) {
                Generator g{p, a, r};
                push(g, false, g.profile());
            }
        }
    }
    if (spec.has_infinite_zero)
        push(Generator{}, true, Profile::unit(1));

    constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> dist(states, kUnreachable);
    std::vector<std::int64_t> digits(support.size(), 0);
    dist[0] = 0;
    auto predecessor = [&](const Gen& g, const std::vector<std::int64_t>& d, std::size_t s) -> std::optional<std::size_t> {
        std::size_t off = 0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] < g.delta[i])
                return std::nullopt;
            off += static_cast<std::size_t>(g.delta[i]) * stride[i];
        }
        return s - off;
    };
    for (std::size_t s = 1; s < states; ++s) {
        // increment mixed-radix digits
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (digits[i] < m.count(support[i])) {
                ++digits[i];
                break;
            }
            digits[i] = 0;
        }
        for (const auto& g : gens) {
            auto prev = predecessor(g, digits, s);
            if (prev && dist[*prev] != kUnreachable)
                dist[s] = std::min(dist[s], dist[*prev] + 1);
        }
    }
    const std::size_t full = states - 1;
    if (dist[full] == kUnreachable)
        return std::nullopt;

    SemigroupWitness w;
    std::size_t s = full;
    std::vector<std::int64_t> d(support.size());
    for (std::size_t i = 0; i < support.size(); ++i)
        d[i] = m.count(support[i]);
    while (s != 0) {
        bool stepped = false;
        for (const auto& g : gens) {
            auto prev = predecessor(g, d, s);
            if (prev && dist[*prev] == dist[s] - 1) {
                if (g.is_e1)
                    ++w.e1_count;
                else
                    w.generators.push_back(g.g);
                for (std::size_t i = 0; i < d.size(); ++i)
                    d[i] -= g.delta[i];
                s = *prev;
                stepped = true;
                break;
            }
        }
        require(stepped, ErrorKind::InternalGuard, "witness reconstruction stalled");
    }
    require(w.total() == m, ErrorKind::InternalGuard, "witness does not sum to the profile");
    return w;
}

/// Closed-form test for f with one double and one triple zero: no pair (k,l)
/// with m_k = m_{k+2l} = 0 and m_{k+i} = 1 for 0 < i < 2l.
inline bool special_two_three(const Profile& m)
{
    const std::int64_t top = m.max_index();
    for (std::int64_t k = 1; k <= top; ++k) {
        if (m.count(k) != 0)
            continue;
        std::int64_t run = 0;
        while (m.count(k + run + 1) == 1)
            ++run;
        if (run % 2 == 1 && m.count(k + run + 1) == 0)
            return false;
    }
    return true;
}

} // namespace nilpath

#endif // NILPATH_CRITERIA_HPP
