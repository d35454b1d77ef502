#ifndef NILPATH_JSON_IO_HPP
#define NILPATH_JSON_IO_HPP

#include <nilpath/criteria.hpp>
#include <nilpath/graph.hpp>
#include <nilpath/path.hpp>

#include <nlohmann/json.hpp>

#include <string>

namespace nilpath {

using Json = nlohmann::ordered_json;

namespace detail {

template <typename J>
const J& field(const J& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
    return j.at(key);
}

template <typename J>
std::int64_t int_field(const J& j, const char* key)
{
    const auto& v = field(j, key);
    if (!v.is_number_integer())
        fail(ErrorKind::ParseError, std::string("field '") + key + "' must be an integer");
    return v.template get<std::int64_t>();
}

template <typename J>
std::string string_value(const J& v, const char* what)
{
    if (!v.is_string())
        fail(ErrorKind::ParseError, std::string(what) + " must be a string");
    return v.template get<std::string>();
}

} // namespace detail

inline Json to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c).str());
        rows.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

template <typename J>
Matrix matrix_from_json(const J& j)
{
    const auto rows = detail::int_field(j, "rows");
    const auto cols = detail::int_field(j, "cols");
    if (rows < 0 || cols < 0)
        fail(ErrorKind::ParseError, "negative matrix dimension");
    const auto& entries = detail::field(j, "entries");
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(rows))
        fail(ErrorKind::ParseError, "entries must be an array of 'rows' rows");
    Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto& row = entries[r];
        if (!row.is_array() || row.size() != m.cols())
            fail(ErrorKind::ParseError, "row " + std::to_string(r) + " must have 'cols' entries");
        for (std::size_t c = 0; c < m.cols(); ++c)
            m(r, c) = Scalar::parse(detail::string_value(row[c], "matrix entry"));
    }
    return m;
}

/// Object of string keys (cell sizes, descending) to counts.
inline Json to_json(const Profile& m)
{
    Json j = Json::object();
    for (auto [k, c] : m.counts())
        j[std::to_string(k)] = c;
    return j;
}

template <typename J>
Profile profile_from_json(const J& j)
{
    if (!j.is_object())
        fail(ErrorKind::ParseError, "profile JSON must be an object");
    Profile m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto k = detail::parse_int(it.key(), "cell size");
        if (k <= 0 || !it.value().is_number_integer() || it.value().template get<std::int64_t>() < 0)
            fail(ErrorKind::ParseError, "profile entry '" + it.key() + "' out of range");
        m.add(k, it.value().template get<std::int64_t>());
    }
    return m;
}

inline Json to_json(const AdjacencyMove& mv)
{
    return Json{{"a", mv.a}, {"k", mv.k}, {"l", mv.l}, {"direction", std::string(to_string(mv.direction))}};
}

template <typename J>
AdjacencyMove move_from_json(const J& j)
{
    AdjacencyMove mv{detail::int_field(j, "a"), detail::int_field(j, "k"), detail::int_field(j, "l"), Direction::Forward};
    const auto dir = detail::string_value(detail::field(j, "direction"), "direction");
    if (dir == "backward")
        mv.direction = Direction::Backward;
    else if (dir != "forward")
        fail(ErrorKind::ParseError, "direction must be 'forward' or 'backward'");
    return mv;
}

inline Json to_json(const ProfileChain& c, std::int64_t p)
{
    Json steps = Json::array(), moves = Json::array();
    for (const auto& s : c.steps)
        steps.push_back(s.str());
    for (const auto& mv : c.moves)
        moves.push_back(to_json(mv));
    return Json{{"p", p}, {"length", c.steps.size()}, {"steps", std::move(steps)}, {"moves", std::move(moves)}};
}

inline Json to_json(const ProfileGraph& g)
{
    Json vertices = Json::array(), edges = Json::array();
    for (const auto& v : g.vertices)
        vertices.push_back(v.str());
    for (const auto& e : g.edges)
        edges.push_back(Json{{"from", g.vertices[e.from].str()}, {"to", g.vertices[e.to].str()}, {"move", to_json(e.move)}});
    return Json{{"p", g.p},
                {"target", g.target.str()},
                {"vertexCount", g.vertices.size()},
                {"edgeCount", g.edges.size()},
                {"connected", is_connected(g)},
                {"vertices", std::move(vertices)},
                {"edges", std::move(edges)}};
}

inline Json to_json(const SemigroupWitness& w)
{
    Json gens = Json::array();
    for (const auto& g : w.generators)
        gens.push_back(Json{{"p", g.p}, {"a", g.a}, {"r", g.r}, {"profile", g.profile().str()}});
    return Json{{"generators", std::move(gens)}, {"e1Count", w.e1_count}};
}

namespace detail {

inline Json scalars_to_json(const std::vector<Scalar>& v)
{
    Json out = Json::array();
    for (const auto& s : v)
        out.push_back(s.str());
    return out;
}

inline Json pieces_to_json(const std::vector<PieceCertification>& pieces)
{
    Json out = Json::array();
    for (const auto& pc : pieces)
        out.push_back(Json{{"from", pc.from.str()}, {"to", pc.to.str()}, {"nonvanishing", pc.nonvanishing}});
    return out;
}

inline Json half_to_json(const LiftHalf& h)
{
    Json partition = Json::array(), qs = Json::array();
    for (const auto& t : h.partition)
        partition.push_back(rational_str(t));
    for (const auto& q : h.q)
        qs.push_back(to_json(q));
    return Json{{"anchoredRight", h.anchored_right}, {"partition", std::move(partition)}, {"q", std::move(qs)}};
}

template <typename J>
std::vector<Scalar> scalars_from_json(const J& j, const char* what)
{
    if (!j.is_array())
        fail(ErrorKind::ParseError, std::string(what) + " must be an array");
    std::vector<Scalar> out;
    for (const auto& v : j)
        out.push_back(Scalar::parse(string_value(v, what)));
    return out;
}

template <typename J>
LiftHalf half_from_json(const J& j, const LiftFamily& lift, const Rational& lo, const Rational& hi)
{
    LiftHalf h;
    const auto& anchored = field(j, "anchoredRight");
    if (!anchored.is_boolean())
        fail(ErrorKind::ParseError, "anchoredRight must be a boolean");
    h.anchored_right = anchored.template get<bool>();
    for (const auto& t : field(j, "partition"))
        h.partition.push_back(parse_rational(string_value(t, "partition point")));
    for (const auto& q : field(j, "q")) {
        h.q.push_back(matrix_from_json(q));
        require(h.q.back().rows() == lift.dimension() && h.q.back().is_square(), ErrorKind::ParseError,
                "lift conjugator has the wrong shape");
        if (det(h.q.back()).is_zero())
            fail(ErrorKind::ParseError, "lift conjugator is singular");
        h.q_inv.push_back(inverse(h.q.back()));
    }
    if (h.partition.size() < 2 || h.partition.front() != lo || h.partition.back() != hi || h.q.size() != h.partition.size()
        || std::adjacent_find(h.partition.begin(), h.partition.end(), std::greater_equal<>()) != h.partition.end())
        fail(ErrorKind::ParseError, "lift partition must increase across its half with one conjugator per point");
    for (std::size_t i = 0; i < h.partition.size(); ++i)
        if (lift.u_power(h.partition[i]) != h.q[i] * lift.a0 * h.q_inv[i])
            fail(ErrorKind::ParseError, "lift identity fails at partition point " + rational_str(h.partition[i]));
    // q must be continuous: the far end of each interval is reached from its anchor
    for (std::size_t i = 0; i < h.intervals(); ++i) {
        const std::size_t a = h.anchor_of(i), b = h.anchored_right ? i : i + 1;
        bool ok = false;
        try {
            ok = h.q[a] * lift.local_section(h, a, h.partition[b]) == h.q[b];
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::OutsideNeighborhood)
                throw;
        }
        if (!ok)
            fail(ErrorKind::ParseError, "lift conjugators are discontinuous at " + rational_str(h.partition[b]));
    }
    return h;
}

} // namespace detail

inline Json to_json(const PathSegment& seg)
{
    if (const auto* c = std::get_if<CentralizerSegment>(&seg)) {
        return Json{{"kind", "centralizer"},
                    {"X", to_json(c->x)},
                    {"Q", to_json(c->q)},
                    {"waypoints", detail::scalars_to_json(c->waypoints)},
                    {"pieces", detail::pieces_to_json(c->pieces)}};
    }
    const auto& a = std::get<AdjacencySegment>(seg);
    Json j{{"kind", "adjacency"},
           {"move", to_json(a.move)},
           {"P", to_json(a.outer)},
           {"B", to_json(a.bystander)},
           {"A0", to_json(a.lift->a0)},
           {"liftMode", std::string(to_string(a.lift->mode))},
           {"liftLeft", detail::half_to_json(a.lift->left)},
           {"liftRight", detail::half_to_json(a.lift->right)},
           {"bridgeWaypoints", detail::scalars_to_json(a.lift->bridge.waypoints)}};
    if (a.reversed)
        j["W"] = to_json(a.w);
    return j;
}

inline Json to_json(const RootPath& path)
{
    Json segs = Json::array();
    for (const auto& s : path.segments)
        segs.push_back(to_json(s));
    return Json{{"A", to_json(path.a)},
                {"p", path.p},
                {"segments", std::move(segs)},
                {"endpoints", Json{{"X", to_json(path.x)}, {"Y", to_json(path.y)}}}};
}

/*
 * Rebuilds a path from its JSON form. Derived data (section bases,
 * inverses) is recomputed, and every stored identity is rechecked exactly:
 * lift conjugators at partition points, centralizer commutation, and the
 * segment stitching.
 */
template <typename J>
RootPath path_from_json(const J& j)
{
    RootPath path;
    path.a = matrix_from_json(detail::field(j, "A"));
    path.p = detail::int_field(j, "p");
    if (path.p < 1)
        fail(ErrorKind::ParseError, "p must be positive");
    const auto& ends = detail::field(j, "endpoints");
    path.x = matrix_from_json(detail::field(ends, "X"));
    path.y = matrix_from_json(detail::field(ends, "Y"));
    const auto& segs = detail::field(j, "segments");
    if (!segs.is_array() || segs.empty())
        fail(ErrorKind::ParseError, "segments must be a nonempty array");

    for (const auto& sj : segs) {
        const auto kind = detail::string_value(detail::field(sj, "kind"), "segment kind");
        if (kind == "centralizer") {
            const Matrix x = matrix_from_json(detail::field(sj, "X"));
            const Matrix q = matrix_from_json(detail::field(sj, "Q"));
            std::vector<Scalar> waypoints = detail::scalars_from_json(detail::field(sj, "waypoints"), "waypoint");
            if (waypoints.size() < 2 || !waypoints.front().is_zero() || !waypoints.back().is_one())
                fail(ErrorKind::ParseError, "waypoints must run from 0 to 1");
            if (q * path.a != path.a * q || det(q).is_zero())
                fail(ErrorKind::ParseError, "centralizer conjugator must be invertible and commute with A");
            CentralizerSegment seg{x, q, waypoints, {}};
            seg.pieces = detail::certify_waypoints(detail::detour_polynomial(q), waypoints);
            path.segments.emplace_back(std::move(seg));
        } else if (kind == "adjacency") {
            AdjacencySegment seg;
            seg.move = move_from_json(detail::field(sj, "move"));
            if (!move_window_ok(seg.move, path.p))
                fail(ErrorKind::ParseError, "adjacency move violates its window");
            seg.outer = matrix_from_json(detail::field(sj, "P"));
            seg.outer_inv = inverse(seg.outer);
            seg.bystander = matrix_from_json(detail::field(sj, "B"));
            auto lift = std::make_shared<LiftFamily>();
            lift->k = seg.move.k;
            lift->l = seg.move.l;
            lift->p = path.p;
            lift->a = seg.move.a;
            lift->mode = detail::string_value(detail::field(sj, "liftMode"), "liftMode") == "certified"
                ? VerificationMode::Certified
                : VerificationMode::Sampled;
            lift->a0 = matrix_from_json(detail::field(sj, "A0"));
            const Matrix expected_a0 = matrix_pow(
                direct_sum({jordan_cell(static_cast<std::size_t>(lift->k)), jordan_cell(static_cast<std::size_t>(lift->l))}),
                static_cast<std::size_t>(path.p));
            if (lift->a0 != expected_a0)
                fail(ErrorKind::ParseError, "A0 does not match (J_k + J_l)^p");
            lift->section = std::make_shared<const ConjugationSection>(lift->a0);
            const Rational mid = LiftFamily::meeting_point();
            lift->left = detail::half_from_json(detail::field(sj, "liftLeft"), *lift, Rational(0), mid);
            lift->right = detail::half_from_json(detail::field(sj, "liftRight"), *lift, mid, Rational(1));
            if (lift->left.anchored_right || !lift->right.anchored_right)
                fail(ErrorKind::ParseError, "left half must be anchored left and right half anchored right");
            if (lift->left.q.front() != Matrix::identity(lift->dimension()))
                fail(ErrorKind::ParseError, "lift must start at the identity");
            CentralizerSegment bridge = detail::lift_bridge(*lift);
            bridge.waypoints = detail::scalars_from_json(detail::field(sj, "bridgeWaypoints"), "bridge waypoint");
            if (bridge.waypoints.size() < 2 || !bridge.waypoints.front().is_zero() || !bridge.waypoints.back().is_one())
                fail(ErrorKind::ParseError, "bridge waypoints must run from 0 to 1");
            bridge.pieces = detail::certify_waypoints(detail::detour_polynomial(bridge.q), bridge.waypoints);
            lift->bridge = std::move(bridge);
            seg.lift = lift;
            if (sj.contains("W")) {
                seg.reversed = true;
                seg.w = matrix_from_json(sj.at("W"));
                seg.w_inv = inverse(seg.w);
            }
            path.segments.emplace_back(std::move(seg));
        } else {
            fail(ErrorKind::ParseError, "unknown segment kind '" + kind + "'");
        }
    }
    for (std::size_t i = 0; i + 1 < path.segments.size(); ++i)
        if (evaluate_segment(path.segments[i], Rational(1)) != evaluate_segment(path.segments[i + 1], Rational(0)))
            fail(ErrorKind::ParseError, "segments do not stitch exactly");
    return path;
}

inline Json to_json(const Certificate& cert)
{
    Json samples = Json::array();
    for (const auto& s : cert.samples) {
        Json j{{"t", rational_str(s.t)}, {"residualZero", s.residual_zero}};
        j["profile"] = s.profile ? to_json(*s.profile) : Json(nullptr);
        j["admissible"] = s.profile_admissible;
        if (!s.error.empty())
            j["error"] = s.error;
        samples.push_back(std::move(j));
    }
    Json segs = Json::array();
    for (const auto& sc : cert.segment_certifications)
        segs.push_back(Json{{"segment", sc.index},
                            {"kind", sc.kind},
                            {"checked", sc.checked},
                            {"pieces", detail::pieces_to_json(sc.pieces)},
                            {"ok", sc.ok}});
    return Json{{"mode", std::string(to_string(cert.mode))},
                {"samples", std::move(samples)},
                {"segmentCertifications", std::move(segs)},
                {"endpointsExact", cert.endpoints_exact},
                {"stitchesExact", cert.stitches_exact},
                {"ok", cert.ok}};
}

} // namespace nilpath

#endif // NILPATH_JSON_IO_HPP
