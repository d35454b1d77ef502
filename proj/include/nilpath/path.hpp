#ifndef NILPATH_PATH_HPP
#define NILPATH_PATH_HPP

#include <nilpath/certify.hpp>
#include <nilpath/graph.hpp>
#include <nilpath/jordan.hpp>
#include <nilpath/section.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace nilpath {

enum class VerificationMode { Sampled, Certified };

inline std::string_view to_string(VerificationMode m)
{
    return m == VerificationMode::Sampled ? "sampled" : "certified";
}

inline constexpr std::size_t kLiftDepthCap = 32;
inline constexpr std::size_t kInitialLiftIntervals = 4;
inline constexpr long kDetourBudget = 64;

/*
 * U_t in the basis (x_k..x_1, y_l..y_1): the shift x_i -> x_{i+1},
 * y_j -> y_{j+1}, except y_1 -> (1-t) y_2 + t x_1. Vectors past the end of
 * either chain are zero, so k = 0 is allowed.
 */
inline Matrix basic_family(std::size_t k, std::size_t l, const Rational& t)
{
    require(k < l, ErrorKind::InvalidArgument, "basic_family needs k < l");
    const std::size_t n = k + l;
    Matrix m(n, n);
    for (std::size_t i = 0; i + 1 < k; ++i)
        m(i, i + 1) = 1;
    for (std::size_t i = k; i + 2 < n; ++i)
        m(i, i + 1) = 1;
    // column of y_1 is the last one
    if (l >= 2)
        m(n - 2, n - 1) = Scalar(Rational(1 - t));
    if (k >= 1)
        m(k - 1, n - 1) = Scalar(t);
    return m;
}

/// R(t) with columns (x_k..x_1, (1-t) y_l + t x_{l-1}, ..., (1-t) y_2 + t x_1, y_1).
inline Matrix basic_family_similarity(std::size_t k, std::size_t l, const Rational& t)
{
    require(k < l, ErrorKind::InvalidArgument, "basic_family_similarity needs k < l");
    if (t <= 0 || t >= 1)
        fail(ErrorKind::DegenerateParameter, "the similarity basis needs 0 < t < 1");
    const std::size_t n = k + l;
    auto x_index = [&](std::size_t i) { return k - i; };     // x_i, 1 <= i <= k
    auto y_index = [&](std::size_t j) { return k + l - j; }; // y_j, 1 <= j <= l
    Matrix r(n, n);
    for (std::size_t i = 1; i <= k; ++i)
        r(x_index(i), x_index(i)) = 1;
    for (std::size_t j = l; j >= 2; --j) {
        const std::size_t col = y_index(j);
        r(y_index(j), col) = Scalar(Rational(1 - t));
        if (j - 1 <= k)
            r(x_index(j - 1), col) = Scalar(t);
    }
    r(y_index(1), y_index(1)) = 1;
    return r;
}

struct PieceCertification {
    Scalar from;
    Scalar to;
    bool nonvanishing = false;
};

namespace detail {

/// Window index a with pa <= k < l <= p(a+1), if any.
inline std::optional<std::int64_t> window_of(std::int64_t k, std::int64_t l, std::int64_t p)
{
    const std::int64_t a = k / p;
    if (k >= 0 && k < l && l <= p * (a + 1))
        return a;
    return std::nullopt;
}

} // namespace detail

/// Path s -> Q(w(s)) X Q(w(s))^{-1}, Q(z) = (1-z) I + z Q, w piecewise linear through waypoints.
struct CentralizerSegment {
    Matrix x;
    Matrix q;
    std::vector<Scalar> waypoints;
    std::vector<PieceCertification> pieces;

    Scalar omega(const Rational& s) const
    {
        require(s >= 0 && s <= 1, ErrorKind::InvalidArgument, "segment parameter outside [0,1]");
        const long count = static_cast<long>(waypoints.size()) - 1;
        const Rational scaled = s * count;
        long j = static_cast<long>(mpz_class(scaled.get_num() / scaled.get_den()).get_si());
        j = std::min(j, count - 1);
        const Rational tau = scaled - j;
        const auto idx = static_cast<std::size_t>(j);
        return waypoints[idx] + Scalar(tau) * (waypoints[idx + 1] - waypoints[idx]);
    }

    Matrix conjugator_at(const Scalar& z) const
    {
        return Matrix::identity(x.rows()) * (Scalar(1) - z) + q * z;
    }

    Matrix evaluate(const Rational& s) const
    {
        const Matrix qz = conjugator_at(omega(s));
        return qz * x * inverse(qz);
    }
};

namespace detail {

inline RatPoly detour_polynomial(const Matrix& q)
{
    const std::size_t n = q.rows();
    std::vector<Scalar> nodes, vals;
    for (std::size_t i = 0; i <= n; ++i) {
        const Scalar z(static_cast<long>(i));
        nodes.push_back(z);
        vals.push_back(det(Matrix::identity(n) * (Scalar(1) - z) + q * z));
    }
    return interpolate(nodes, vals);
}

inline std::vector<PieceCertification> certify_waypoints(const RatPoly& d, const std::vector<Scalar>& waypoints)
{
    std::vector<PieceCertification> out;
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
        out.push_back({waypoints[i], waypoints[i + 1], certify_nonvanishing_segment(d, waypoints[i], waypoints[i + 1])});
    return out;
}

inline void check_root(const Matrix& a, std::int64_t p, const Matrix& x, const char* name)
{
    require(x.is_square() && x.rows() == a.rows(), ErrorKind::DimensionMismatch, std::string(name) + " has the wrong shape");
    if (matrix_pow(x, static_cast<std::size_t>(p)) != a)
        fail(ErrorKind::PowerMismatch, std::string(name) + "^p != A");
}

} // namespace detail

/// Centralizer path for a given conjugator Q commuting with A (Y = Q X Q^{-1}).
inline CentralizerSegment centralizer_segment_from(const Matrix& a, const Matrix& x, const Matrix& q)
{
    require(q * a == a * q, ErrorKind::InternalGuard, "conjugator does not commute with A");
    require(!det(q).is_zero(), ErrorKind::Singular, "conjugator is singular");
    const RatPoly d = detail::detour_polynomial(q);
    CentralizerSegment seg{x, q, {Scalar(0), Scalar(1)}, {}};
    seg.pieces = detail::certify_waypoints(d, seg.waypoints);
    if (seg.pieces.front().nonvanishing)
        return seg;
    for (long j = 2; j <= kDetourBudget; ++j) {
        const Scalar eps = Scalar(Rational(0), ratio(1, j));
        seg.waypoints = {Scalar(0), eps, Scalar(1) + eps, Scalar(1)};
        seg.pieces = detail::certify_waypoints(d, seg.waypoints);
        if (std::all_of(seg.pieces.begin(), seg.pieces.end(), [](const auto& pc) { return pc.nonvanishing; }))
            return seg;
    }
    fail(ErrorKind::DetourSearchExhausted, "no certified detour within the epsilon budget");
}

/*
 * Conjugators along one half of the deformation family: U_t^p =
 * q(t) A0 q(t)^{-1}. Interval i is covered by the section around its
 * anchor point j (the left end, or the right end when anchored_right):
 * q(t) = q_j g(q_j^{-1} U_t^p q_j). Since g(A0) = I, q is continuous
 * across partition points.
 */
struct LiftHalf {
    std::vector<Rational> partition;
    std::vector<Matrix> q;
    std::vector<Matrix> q_inv;
    bool anchored_right = false;
    std::vector<bool> certified; // certified mode only

    std::size_t intervals() const { return partition.size() - 1; }
    std::size_t anchor_of(std::size_t i) const { return anchored_right ? i + 1 : i; }
    std::size_t interval_of(const Rational& t) const
    {
        require(t >= partition.front() && t <= partition.back(), ErrorKind::InvalidArgument,
                "lift parameter outside this half");
        auto it = std::upper_bound(partition.begin(), partition.end(), t);
        std::size_t i = static_cast<std::size_t>(it - partition.begin()) - 1;
        return std::min(i, partition.size() - 2);
    }
};

/*
 * Lift of U_t over [0,1]. A single lift started at q(0) = I degenerates as
 * t -> 1 (and one started at t = 1 degenerates as t -> 0), so the family is
 * lifted from both ends: the left half from q(0) = I, the right half from a
 * similarity witness at t = 1. At t = 1/2 the two conjugators differ by an
 * element of C(A0), and a centralizer segment bridges the two roots there.
 *
 * path(s) runs left half, bridge, right half over thirds of [0,1];
 * path(s)^p = A0 throughout.
 */
class LiftFamily {
public:
    std::int64_t k = 0, l = 0, p = 1, a = 0;
    Matrix a0;
    std::shared_ptr<const ConjugationSection> section;
    VerificationMode mode = VerificationMode::Sampled;
    LiftHalf left;  // [0, 1/2]
    LiftHalf right; // [1/2, 1]
    CentralizerSegment bridge;

    static Rational meeting_point() { return Rational(1, 2); }

    std::size_t dimension() const { return static_cast<std::size_t>(k + l); }

    Matrix u(const Rational& t) const { return basic_family(static_cast<std::size_t>(k), static_cast<std::size_t>(l), t); }
    Matrix u_power(const Rational& t) const { return matrix_pow(u(t), static_cast<std::size_t>(p)); }

    Matrix local_section(const LiftHalf& h, std::size_t anchor, const Rational& t) const
    {
        return (*section)(h.q_inv[anchor] * u_power(t) * h.q[anchor]);
    }

    Matrix conjugator(const LiftHalf& h, const Rational& t) const
    {
        const std::size_t i = h.interval_of(t);
        if (t == h.partition[i])
            return h.q[i];
        if (t == h.partition[i + 1])
            return h.q[i + 1];
        const std::size_t j = h.anchor_of(i);
        return h.q[j] * local_section(h, j, t);
    }

    Matrix gamma(const LiftHalf& h, const Rational& t) const
    {
        const std::size_t i = h.interval_of(t);
        for (std::size_t j : {i, i + 1})
            if (t == h.partition[j])
                return h.q_inv[j] * u(t) * h.q[j];
        const std::size_t j = h.anchor_of(i);
        const Matrix g = local_section(h, j, t);
        return inverse(g) * h.q_inv[j] * u(t) * h.q[j] * g;
    }

    /// Pointwise lift in the family parameter (left half up to 1/2).
    Matrix gamma(const Rational& t) const
    {
        require(t >= 0 && t <= 1, ErrorKind::InvalidArgument, "lift parameter outside [0,1]");
        return t <= meeting_point() ? gamma(left, t) : gamma(right, t);
    }

    /// Continuous root path from J_k (+) J_l to a root similar to J_{k+1} (+) J_{l-1}.
    Matrix path(const Rational& s) const
    {
        require(s >= 0 && s <= 1, ErrorKind::InvalidArgument, "lift path parameter outside [0,1]");
        const Rational third(1, 3);
        if (s <= third)
            return gamma(left, s * 3 / 2);
        if (s <= 2 * third)
            return bridge.evaluate(s * 3 - 1);
        return gamma(right, meeting_point() + (s * 3 - 2) / 2);
    }
};

namespace detail {

/*
 * Certifies on [t0, t1] that det A(v(t)) and det(det A(v(t)) g(t)) have no
 * root, where v(t) = Phi(qj^{-1} U_t^p qj). Both are polynomials in t of
 * degree at most p r and n p r (r = rank ad_A0); they are recovered exactly
 * by interpolation and checked by Sturm counting.
 */
inline bool certify_lift_interval(const LiftFamily& lift, const Matrix& qj, const Matrix& qj_inv,
                                  const Rational& t0, const Rational& t1)
{
    const std::size_t r = lift.section->data().rank;
    const std::size_t n = lift.dimension();
    const std::size_t pp = static_cast<std::size_t>(lift.p);
    const std::size_t deg_alpha = pp * r;
    const std::size_t deg_beta = n * pp * r;
    if (r == 0)
        return true; // g is the constant identity

    const auto& sd = lift.section->data();
    std::vector<Scalar> nodes, alpha_vals, beta_vals;
    for (std::size_t j = 0; j <= deg_beta; ++j) {
        const Rational t = t0 + (t1 - t0) * ratio(static_cast<long>(j), static_cast<long>(deg_beta));
        const Matrix b = qj_inv * lift.u_power(t) * qj;
        auto parts = lift.section->parts(b);
        const Scalar alpha = det(parts.a_block);
        if (alpha.is_zero())
            return false;
        const Matrix y = solve(parts.a_block, parts.c_last);
        Vector f = sd.x0;
        const Vector by = sd.b_top * y.col(0);
        for (std::size_t i = 0; i < f.size(); ++i)
            f[i] = (f[i] - by[i]) * alpha;
        nodes.emplace_back(t);
        alpha_vals.push_back(alpha);
        beta_vals.push_back(det(unvec(f, n, n)));
    }
    const auto head = static_cast<long>(deg_alpha) + 1;
    const RatPoly alpha = interpolate(std::vector<Scalar>(nodes.begin(), nodes.begin() + head),
                                      std::vector<Scalar>(alpha_vals.begin(), alpha_vals.begin() + head));
    // the interpolant must reproduce every remaining node, else the degree bound is wrong
    for (std::size_t j = deg_alpha + 1; j < nodes.size(); ++j)
        require(alpha.eval(nodes[j]) == alpha_vals[j], ErrorKind::InternalGuard, "alpha degree bound violated");
    const RatPoly beta = interpolate(nodes, beta_vals);
    if (beta.is_zero())
        return false;
    return certify_nonvanishing_segment(alpha, Scalar(t0), Scalar(t1))
        && certify_nonvanishing_segment(beta, Scalar(t0), Scalar(t1));
}

/*
 * Adaptive partition from `from` towards `to`, starting at conjugator
 * q_from. A step is accepted when the section around the current point is
 * valid at the step's midpoint and far end (and, in certified mode, the
 * validity polynomials are certified on the whole step); otherwise the
 * step is halved.
 */
inline LiftHalf build_lift_half(const LiftFamily& lift, const Rational& from, const Rational& to, Matrix q_from,
                                std::size_t steps)
{
    struct Pending {
        Rational target;
        std::size_t depth;
    };
    LiftHalf h;
    h.partition = {from};
    h.q_inv = {inverse(q_from)};
    h.q = {std::move(q_from)};
    std::deque<Pending> pending;
    for (std::size_t i = 1; i <= steps; ++i)
        pending.push_back({from + (to - from) * ratio(static_cast<long>(i), static_cast<long>(steps)), 0});

    while (!pending.empty()) {
        const Rational cur = h.partition.back();
        const Pending next = pending.front();
        const Matrix qj = h.q.back();
        const Matrix qj_inv = h.q_inv.back();
        std::optional<Matrix> g_end;
        bool ok = true;
        try {
            (void)(*lift.section)(qj_inv * lift.u_power((cur + next.target) / 2) * qj);
            g_end = (*lift.section)(qj_inv * lift.u_power(next.target) * qj);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::OutsideNeighborhood)
                throw;
            ok = false;
        }
        bool cert = false;
        if (ok && lift.mode == VerificationMode::Certified) {
            cert = certify_lift_interval(lift, qj, qj_inv, std::min(cur, next.target), std::max(cur, next.target));
            ok = cert;
        }
        if (!ok) {
            if (next.depth + 1 > kLiftDepthCap)
                fail(ErrorKind::LiftDepthExceeded, "lift bisection exceeded depth cap");
            pending.front().depth = next.depth + 1;
            pending.push_front({(cur + next.target) / 2, next.depth + 1});
            continue;
        }
        Matrix q_next = qj * *g_end;
        Matrix q_next_inv = inverse(q_next);
        require(lift.u_power(next.target) == q_next * lift.a0 * q_next_inv, ErrorKind::InternalGuard,
                "lift identity fails at a partition point");
        h.partition.push_back(next.target);
        h.q.push_back(std::move(q_next));
        h.q_inv.push_back(std::move(q_next_inv));
        if (lift.mode == VerificationMode::Certified)
            h.certified.push_back(cert);
        pending.pop_front();
    }
    if (to < from) {
        std::reverse(h.partition.begin(), h.partition.end());
        std::reverse(h.q.begin(), h.q.end());
        std::reverse(h.q_inv.begin(), h.q_inv.end());
        std::reverse(h.certified.begin(), h.certified.end());
        h.anchored_right = true;
    }
    return h;
}

/// Bridge conjugator at t = 1/2: maps the left root onto the right one and commutes with A0.
inline CentralizerSegment lift_bridge(const LiftFamily& lift)
{
    const Rational mid = LiftFamily::meeting_point();
    const Matrix x = lift.gamma(lift.left, mid);
    const Matrix q = lift.right.q_inv.front() * lift.left.q.back();
    return centralizer_segment_from(lift.a0, x, q);
}

} // namespace detail

inline bool certify_lift_interval(const LiftFamily& lift, const LiftHalf& h, std::size_t i)
{
    const std::size_t j = h.anchor_of(i);
    return detail::certify_lift_interval(lift, h.q[j], h.q_inv[j], h.partition[i], h.partition[i + 1]);
}

inline LiftFamily lift_family(std::int64_t k, std::int64_t l, std::int64_t p,
                              VerificationMode mode = VerificationMode::Sampled)
{
    require(p >= 1, ErrorKind::InvalidArgument, "exponent must be positive");
    auto a = detail::window_of(k, l, p);
    if (!a)
        fail(ErrorKind::WindowViolation, "no a with pa <= k < l <= p(a+1)");

    LiftFamily lift;
    lift.k = k;
    lift.l = l;
    lift.p = p;
    lift.a = *a;
    lift.mode = mode;
    lift.a0 = matrix_pow(direct_sum({jordan_cell(static_cast<std::size_t>(k)), jordan_cell(static_cast<std::size_t>(l))}),
                         static_cast<std::size_t>(p));
    lift.section = std::make_shared<const ConjugationSection>(lift.a0);
    const std::size_t n = lift.dimension();
    const Rational mid = LiftFamily::meeting_point();
    const std::size_t steps = kInitialLiftIntervals / 2;

    lift.left = detail::build_lift_half(lift, Rational(0), mid, Matrix::identity(n), steps);
    lift.right = detail::build_lift_half(lift, Rational(1), mid, similarity_witness(lift.a0, lift.u_power(Rational(1))), steps);
    lift.bridge = detail::lift_bridge(lift);
    require(lift.path(Rational(0)) == lift.u(Rational(0)), ErrorKind::InternalGuard, "lift does not start at J_k + J_l");
    return lift;
}

/// Path s -> P (B (+) delta(s)) P^{-1}, delta the lifted deformation (reversed for backward moves).
struct AdjacencySegment {
    AdjacencyMove move;
    Matrix outer;
    Matrix outer_inv;
    Matrix bystander;
    std::shared_ptr<const LiftFamily> lift;
    bool reversed = false;
    Matrix w;     // backward only: gamma(1) = W (J_{k+1} (+) J_{l-1}) W^{-1}
    Matrix w_inv;

    Matrix inner(const Rational& s) const
    {
        if (!reversed)
            return lift->path(s);
        return w_inv * lift->path(1 - s) * w;
    }

    Matrix evaluate(const Rational& s) const
    {
        require(s >= 0 && s <= 1, ErrorKind::InvalidArgument, "segment parameter outside [0,1]");
        return outer * direct_sum({bystander, inner(s)}) * outer_inv;
    }
};

using PathSegment = std::variant<CentralizerSegment, AdjacencySegment>;

inline Matrix evaluate_segment(const PathSegment& seg, const Rational& s)
{
    return std::visit([&](const auto& v) { return v.evaluate(s); }, seg);
}

/// Constructive witness that X and Y lie in one path component of A^{1/p}.
struct RootPath {
    Matrix a;
    std::int64_t p = 1;
    Matrix x;
    Matrix y;
    std::vector<PathSegment> segments;
};

/// Uniform reparametrization: segment j covers [j/S, (j+1)/S].
inline Matrix evaluate(const RootPath& path, const Rational& t)
{
    require(t >= 0 && t <= 1, ErrorKind::InvalidArgument, "path parameter outside [0,1]");
    require(!path.segments.empty(), ErrorKind::InvalidArgument, "path has no segments");
    const long count = static_cast<long>(path.segments.size());
    const Rational scaled = t * count;
    long j = static_cast<long>(mpz_class(scaled.get_num() / scaled.get_den()).get_si());
    j = std::min(j, count - 1);
    return evaluate_segment(path.segments[static_cast<std::size_t>(j)], scaled - j);
}

inline CentralizerSegment centralizer_segment(const Matrix& a, std::int64_t p, const Matrix& x, const Matrix& y)
{
    detail::check_root(a, p, x, "X");
    detail::check_root(a, p, y, "Y");
    const Matrix q = similarity_witness(x, y);
    return centralizer_segment_from(a, x, q);
}

using LiftCache = std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, std::shared_ptr<const LiftFamily>>;

inline AdjacencySegment adjacency_segment(const Matrix& a, std::int64_t p, const Matrix& n, const AdjacencyMove& move,
                                          VerificationMode mode = VerificationMode::Sampled,
                                          LiftCache* cache = nullptr)
{
    detail::check_root(a, p, n, "N");
    if (!move_window_ok(move, p))
        fail(ErrorKind::WindowViolation, "move violates pa <= k < l <= p(a+1), l > k+1");
    const bool forward = move.direction == Direction::Forward;
    const std::size_t c1 = static_cast<std::size_t>(forward ? move.k : move.k + 1);
    const std::size_t c2 = static_cast<std::size_t>(forward ? move.l : move.l - 1);

    const JordanDecomposition jd = jordan_basis(n);
    const std::size_t cells = jd.cell_sizes.size();
    std::vector<bool> taken(cells, false);
    auto take_last = [&](std::size_t size) -> std::optional<std::size_t> {
        if (size == 0)
            return std::nullopt;
        for (std::size_t i = cells; i-- > 0;)
            if (!taken[i] && jd.cell_sizes[i] == size) {
                taken[i] = true;
                return i;
            }
        fail(ErrorKind::MissingCells, "N has no free Jordan cell of size " + std::to_string(size));
    };
    const auto second = take_last(c2);
    const auto first = take_last(c1);

    std::vector<std::size_t> offset(cells + 1, 0);
    for (std::size_t i = 0; i < cells; ++i)
        offset[i + 1] = offset[i] + jd.cell_sizes[i];
    std::vector<std::size_t> order, rest_sizes;
    for (std::size_t i = 0; i < cells; ++i)
        if (!taken[i]) {
            order.push_back(i);
            rest_sizes.push_back(jd.cell_sizes[i]);
        }
    if (first)
        order.push_back(*first);
    if (second)
        order.push_back(*second);
    std::vector<Vector> columns;
    for (auto i : order)
        for (std::size_t c = offset[i]; c < offset[i + 1]; ++c)
            columns.push_back(jd.conjugator.col(c));

    AdjacencySegment seg;
    seg.move = move;
    seg.outer = from_columns(columns, n.rows());
    seg.outer_inv = inverse(seg.outer);
    seg.bystander = jordan_model(rest_sizes);

    const auto key = std::make_tuple(move.k, move.l, p);
    if (cache && cache->count(key) && (*cache)[key]->mode == mode) {
        seg.lift = (*cache)[key];
    } else {
        seg.lift = std::make_shared<const LiftFamily>(lift_family(move.k, move.l, p, mode));
        if (cache)
            (*cache)[key] = seg.lift;
    }
    if (!forward) {
        seg.reversed = true;
        const std::size_t sizes[] = {c1, c2};
        seg.w = similarity_witness(jordan_model(sizes), seg.lift->path(Rational(1)));
        seg.w_inv = inverse(seg.w);
    }

    require(seg.evaluate(Rational(0)) == n, ErrorKind::InternalGuard, "adjacency segment does not start at N");
    const Matrix end = seg.evaluate(Rational(1));
    require(matrix_pow(end, static_cast<std::size_t>(p)) == a, ErrorKind::InternalGuard, "adjacency endpoint is not a root");
    require(nilpotent_profile(end) == apply_move(nilpotent_profile(n), move, p), ErrorKind::InternalGuard,
            "adjacency endpoint has the wrong profile");
    return seg;
}

/*
 * Full pipeline: follow a p-chain of profiles from profile(X) to
 * profile(Y) with one adjacency segment per move, then close with a
 * centralizer segment onto Y.
 */
inline RootPath connect_roots(const Matrix& a, std::int64_t p, const Matrix& x, const Matrix& y,
                              VerificationMode mode = VerificationMode::Sampled)
{
    require(p >= 1, ErrorKind::InvalidArgument, "exponent must be positive");
    require(a.is_square(), ErrorKind::NotSquare, "A must be square");
    (void)nilpotent_profile(a);
    detail::check_root(a, p, x, "X");
    detail::check_root(a, p, y, "Y");

    RootPath path{a, p, x, y, {}};
    const ProfileChain chain = profile_chain(nilpotent_profile(x), nilpotent_profile(y), p);
    LiftCache cache;
    Matrix cur = x;
    for (const auto& mv : chain.moves) {
        AdjacencySegment seg = adjacency_segment(a, p, cur, mv, mode, &cache);
        cur = seg.evaluate(Rational(1));
        path.segments.emplace_back(std::move(seg));
    }
    path.segments.emplace_back(centralizer_segment(a, p, cur, y));

    for (std::size_t j = 0; j + 1 < path.segments.size(); ++j)
        require(evaluate_segment(path.segments[j], Rational(1)) == evaluate_segment(path.segments[j + 1], Rational(0)),
                ErrorKind::InternalGuard, "segments do not stitch exactly");
    return path;
}

struct SampleRecord {
    Rational t;
    bool residual_zero = false;
    std::optional<Profile> profile;
    bool profile_admissible = false;
    std::string error;
};

struct SegmentCertification {
    std::size_t index = 0;
    std::string kind;
    bool checked = false; // false: sampled-only adjacency segment
    std::vector<PieceCertification> pieces;
    bool ok = true;
};

struct Certificate {
    VerificationMode mode = VerificationMode::Sampled;
    std::vector<SampleRecord> samples;
    std::vector<SegmentCertification> segment_certifications;
    bool endpoints_exact = false;
    bool stitches_exact = false;
    bool ok = false;
};

inline Certificate verify(const RootPath& path, std::size_t sample_count,
                          VerificationMode mode = VerificationMode::Sampled,
                          std::int64_t size_cap = kDefaultSizeCap)
{
    require(sample_count >= 1, ErrorKind::InvalidArgument, "need at least one sample interval");
    Certificate cert;
    cert.mode = mode;
    bool ok = true;

    const auto admissible = enumerate_preimages(nilpotent_profile(path.a), path.p, size_cap);
    for (std::size_t i = 0; i <= sample_count; ++i) {
        SampleRecord rec;
        rec.t = ratio(static_cast<long>(i), static_cast<long>(sample_count));
        try {
            const Matrix m = evaluate(path, rec.t);
            rec.residual_zero = matrix_pow(m, static_cast<std::size_t>(path.p)) == path.a;
            if (rec.residual_zero) {
                rec.profile = nilpotent_profile(m);
                rec.profile_admissible = std::find(admissible.begin(), admissible.end(), *rec.profile) != admissible.end();
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::OutsideNeighborhood)
                throw;
            rec.error = e.what();
        }
        ok = ok && rec.residual_zero && rec.profile_admissible;
        cert.samples.push_back(std::move(rec));
    }

    cert.endpoints_exact = evaluate(path, Rational(0)) == path.x && evaluate(path, Rational(1)) == path.y;
    cert.stitches_exact = true;
    for (std::size_t j = 0; j + 1 < path.segments.size(); ++j)
        cert.stitches_exact = cert.stitches_exact
            && evaluate_segment(path.segments[j], Rational(1)) == evaluate_segment(path.segments[j + 1], Rational(0));
    ok = ok && cert.endpoints_exact && cert.stitches_exact;

    std::map<const LiftFamily*, std::vector<PieceCertification>> lift_certs;
    for (std::size_t j = 0; j < path.segments.size(); ++j) {
        SegmentCertification sc;
        sc.index = j;
        if (const auto* c = std::get_if<CentralizerSegment>(&path.segments[j])) {
            sc.kind = "centralizer";
            sc.checked = true;
            sc.pieces = detail::certify_waypoints(detail::detour_polynomial(c->q), c->waypoints);
        } else {
            const auto& adj = std::get<AdjacencySegment>(path.segments[j]);
            sc.kind = "adjacency";
            if (mode == VerificationMode::Certified) {
                sc.checked = true;
                auto& pieces = lift_certs[adj.lift.get()];
                if (pieces.empty()) {
                    for (const LiftHalf* h : {&adj.lift->left, &adj.lift->right})
                        for (std::size_t i = 0; i < h->intervals(); ++i)
                            pieces.push_back({Scalar(h->partition[i]), Scalar(h->partition[i + 1]),
                                              certify_lift_interval(*adj.lift, *h, i)});
                    const auto& b = adj.lift->bridge;
                    auto bridge = detail::certify_waypoints(detail::detour_polynomial(b.q), b.waypoints);
                    pieces.insert(pieces.end(), bridge.begin(), bridge.end());
                }
                sc.pieces = pieces;
            }
        }
        sc.ok = std::all_of(sc.pieces.begin(), sc.pieces.end(), [](const auto& pc) { return pc.nonvanishing; });
        ok = ok && sc.ok;
        cert.segment_certifications.push_back(std::move(sc));
    }
    cert.ok = ok;
    return cert;
}

} // namespace nilpath

#endif // NILPATH_PATH_HPP
