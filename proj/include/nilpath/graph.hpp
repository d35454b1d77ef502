#ifndef NILPATH_GRAPH_HPP
#define NILPATH_GRAPH_HPP

#include <nilpath/profile.hpp>

#include <algorithm>
#include <deque>
#include <string>
#include <vector>

namespace nilpath {

struct ProfileEdge {
    std::size_t from = 0; // vertex indices, from < to
    std::size_t to = 0;
    AdjacencyMove move;   // maps vertices[from] to vertices[to]
};

/// The graph of root profiles of a fixed target under p-adjacency.
struct ProfileGraph {
    std::int64_t p = 1;
    Profile target;
    std::vector<Profile> vertices;
    std::vector<ProfileEdge> edges;

    std::ptrdiff_t index_of(const Profile& m) const
    {
        auto it = std::find(vertices.begin(), vertices.end(), m);
        return it == vertices.end() ? -1 : it - vertices.begin();
    }
    bool has_edge(const Profile& a, const Profile& b) const
    {
        auto ia = index_of(a), ib = index_of(b);
        if (ia < 0 || ib < 0)
            return false;
        auto lo = static_cast<std::size_t>(std::min(ia, ib)), hi = static_cast<std::size_t>(std::max(ia, ib));
        return std::any_of(edges.begin(), edges.end(), [&](const ProfileEdge& e) { return e.from == lo && e.to == hi; });
    }
};

struct ProfileChain {
    std::vector<Profile> steps;
    std::vector<AdjacencyMove> moves; // moves[i] maps steps[i] to steps[i+1]
};

inline ProfileGraph build_graph(const Profile& target, std::int64_t p, std::int64_t size_cap = kDefaultSizeCap)
{
    ProfileGraph g;
    g.p = p;
    g.target = target;
    g.vertices = enumerate_preimages(target, p, size_cap);
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < g.vertices.size(); ++j)
            if (auto mv = is_p_adjacent(g.vertices[i], g.vertices[j], p))
                g.edges.push_back({i, j, *mv});
    return g;
}

inline bool is_connected(const ProfileGraph& g)
{
    const std::size_t n = g.vertices.size();
    if (n <= 1)
        return true;
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : g.edges) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
    }
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                queue.push_back(w);
            }
    }
    return reached == n;
}

namespace detail {

inline ProfileChain reverse_chain(ProfileChain c)
{
    std::reverse(c.steps.begin(), c.steps.end());
    std::reverse(c.moves.begin(), c.moves.end());
    for (auto& mv : c.moves)
        mv = mv.reversed();
    return c;
}

/*
 * Induction on size:
 *  - equal profiles give the trivial chain;
 *  - a shared cell size k is stripped (largest such k) and re-added;
 *  - otherwise, with q the largest size present in either profile and
 *    m'_q > 0 (arguments swapped if needed), the largest cell of m inside
 *    (pa, p(a+1)] is pushed up one size at a time until m reaches q.
 */
inline ProfileChain chain_rec(const Profile& m, const Profile& mp, std::int64_t p, std::int64_t& budget)
{
    if (--budget < 0)
        fail(ErrorKind::InternalGuard, "profile_chain recursion guard tripped");
    if (m == mp)
        return {{m}, {}};

    for (auto [k, c] : m.counts()) {
        if (mp.count(k) > 0) {
            Profile a = m, b = mp;
            a.add(k, -1);
            b.add(k, -1);
            ProfileChain sub = chain_rec(a, b, p, budget);
            for (auto& s : sub.steps)
                s.add(k, 1);
            return sub;
        }
    }

    const std::int64_t q = std::max(m.max_index(), mp.max_index());
    if (mp.count(q) == 0)
        return reverse_chain(chain_rec(mp, m, p, budget));

    const std::int64_t a = (q + p - 1) / p - 1; // least a with pa < q <= p(a+1)
    ProfileChain out{{m}, {}};
    Profile cur = m;
    while (cur.count(q) == 0) {
        if (--budget < 0)
            fail(ErrorKind::InternalGuard, "profile_chain iteration guard tripped");
        std::int64_t k = 0;
        for (std::int64_t i = p * (a + 1); i > p * a; --i)
            if (cur.count(i) > 0) {
                k = i;
                break;
            }
        require(k > p * a && k < q, ErrorKind::InternalGuard, "no admissible cell below q");
        AdjacencyMove mv;
        if (cur.count(k) > 1) {
            mv = {a, k - 1, k + 1, Direction::Backward};
        } else {
            std::int64_t l = 0;
            for (std::int64_t i = k - 1; i > p * a; --i)
                if (cur.count(i) > 0) {
                    l = i;
                    break;
                }
            require(l > 0, ErrorKind::InternalGuard, "no partner cell below k");
            mv = {a, l - 1, k + 1, Direction::Backward};
        }
        require(move_window_ok(mv, p), ErrorKind::InternalGuard, "chain move leaves its window");
        cur = apply_move(cur, mv, p);
        out.steps.push_back(cur);
        out.moves.push_back(mv);
    }
    ProfileChain rest = chain_rec(cur, mp, p, budget);
    out.steps.insert(out.steps.end(), rest.steps.begin() + 1, rest.steps.end());
    out.moves.insert(out.moves.end(), rest.moves.begin(), rest.moves.end());
    return out;
}

} // namespace detail

inline ProfileChain profile_chain(const Profile& m, const Profile& mp, std::int64_t p)
{
    require(p >= 1, ErrorKind::InvalidArgument, "exponent must be positive");
    if (profile_power(m, p) != profile_power(mp, p))
        fail(ErrorKind::PowerMismatch, "profiles have different p-th power profiles");
    // each recursion strips or relocates at least one unit of size; moves per pass are bounded by q
    std::int64_t budget = 4 * (size(m) + std::max(m.max_index(), mp.max_index()) + 1) * (size(m) + 1);
    return detail::chain_rec(m, mp, p, budget);
}

inline std::string export_dot(const ProfileGraph& g)
{
    std::string out = "graph profiles {\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        out += "  v" + std::to_string(i) + " [label=\"" + g.vertices[i].str() + "\"];\n";
    for (const auto& e : g.edges)
        out += "  v" + std::to_string(e.from) + " -- v" + std::to_string(e.to) + " [label=\"(" + std::to_string(e.move.a)
            + "," + std::to_string(e.move.k) + "," + std::to_string(e.move.l) + ")\"];\n";
    out += "}\n";
    return out;
}

} // namespace nilpath

#endif // NILPATH_GRAPH_HPP
