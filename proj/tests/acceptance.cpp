// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>

using namespace nilpath;
using nilpath::testkit::all_profiles;
using nilpath::testkit::random_invertible;
using nilpath::testkit::random_partition;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void check(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

bool report(int id, const char* title, double limit_s, const std::function<Outcome()>& body)
{
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (o.ok && secs >= limit_s) {
        o.ok = false;
        o.detail = "time limit exceeded";
    }
    std::printf("%s AC%d %s (%.2f s, limit %.0f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title, secs, limit_s,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
    return o.ok;
}

Profile pair_profile(std::int64_t k, std::int64_t l)
{
    Profile m;
    m.add(k, 1);
    m.add(l, 1);
    return m;
}

struct RootPair {
    Matrix a, x, y;
};

RootPair root_pair()
{
    const Matrix x = direct_sum({jordan_cell(4), jordan_cell(2)});
    const Matrix a = matrix_pow(x, 2);
    const Matrix j33 = direct_sum({jordan_cell(3), jordan_cell(3)});
    const Matrix s = similarity_witness(matrix_pow(j33, 2), a);
    return {a, x, s * j33 * inverse(s)};
}

Outcome end_to_end(VerificationMode mode)
{
    Outcome o;
    const auto c = root_pair();
    const RootPath path = connect_roots(c.a, 2, c.x, c.y, mode);
    const Certificate cert = verify(path, 100, mode);
    const Profile target = nilpotent_profile(c.a);
    o.check(cert.samples.size() == 101, "expected 101 samples");
    for (const auto& s : cert.samples) {
        o.check(s.error.empty(), "sample error at t=" + s.t.get_str() + ": " + s.error);
        o.check(s.residual_zero, "nonzero residual at t=" + s.t.get_str());
        o.check(s.profile && s.profile_admissible && profile_power(*s.profile, 2) == target,
                "inadmissible profile at t=" + s.t.get_str());
    }
    o.check(evaluate(path, Rational(0)) == c.x && evaluate(path, Rational(1)) == c.y, "endpoints differ");
    o.check(cert.endpoints_exact, "certificate reports inexact endpoints");
    o.check(cert.stitches_exact, "certificate reports inexact stitches");
    if (mode == VerificationMode::Certified) {
        std::size_t pieces = 0;
        for (const auto& sc : cert.segment_certifications) {
            o.check(sc.checked, "segment " + std::to_string(sc.index) + " not checked");
            o.check(sc.ok, "segment " + std::to_string(sc.index) + " certification failed");
            for (const auto& pc : sc.pieces) {
                o.check(pc.nonvanishing, "piece " + pc.from.str() + " -> " + pc.to.str() + " not certified");
                ++pieces;
            }
        }
        o.check(pieces > 0, "no certified pieces");
        if (o.ok)
            o.detail = std::to_string(pieces) + " pieces certified";
    }
    o.check(cert.ok, "certificate not ok");
    return o;
}

} // namespace

int main()
{
    bool all = true;

    all &= report(1, "adjacent pairs share the power profile", 1, [] {
        Outcome o;
        std::size_t cases = 0;
        for (std::int64_t p = 2; p <= 4; ++p)
            for (std::int64_t a = 0; a <= 3; ++a)
                for (std::int64_t k = p * a; k <= p * (a + 1); ++k)
                    for (std::int64_t l = k + 1; l <= p * (a + 1); ++l) {
                        ++cases;
                        o.check(profile_power(pair_profile(k, l), p) == profile_power(pair_profile(k + 1, l - 1), p),
                                "p=" + std::to_string(p) + " k=" + std::to_string(k) + " l=" + std::to_string(l));
                    }
        if (o.ok)
            o.detail = std::to_string(cases) + " cases";
        return o;
    });

    all &= report(2, "power map matches matrix powers", 60, [] {
        Outcome o;
        std::mt19937 rng(2024);
        std::uniform_int_distribution<std::size_t> dim(1, 8);
        for (int it = 0; it < 200; ++it) {
            const std::size_t n = dim(rng);
            const std::int64_t p = 2 + it % 2;
            const auto parts = random_partition(n, rng);
            const Matrix s = random_invertible(n, rng, -3, 3);
            const Matrix m = s * jordan_model(parts) * inverse(s);
            const Profile prof = nilpotent_profile(m);
            o.check(prof == testkit::profile_of_parts(parts), "profile of conjugate differs");
            o.check(nilpotent_profile(matrix_pow(m, static_cast<std::size_t>(p))) == profile_power(prof, p),
                    prof.str() + " p=" + std::to_string(p));
        }
        return o;
    });

    all &= report(3, "root criteria agree for sizes up to 12", 30, [] {
        Outcome o;
        std::size_t count = 0;
        for (std::int64_t n = 1; n <= 12; ++n)
            for (const auto& m : all_profiles(n))
                for (std::int64_t p = 2; p <= 4; ++p) {
                    ++count;
                    const bool a = has_pth_root(m, p);
                    const bool b = !enumerate_preimages(m, p).empty();
                    const bool c = is_f_solvable({{p}, false}, m).has_value();
                    o.check(a == b && b == c, m.str() + " p=" + std::to_string(p));
                }
        if (o.ok)
            o.detail = std::to_string(count) + " checks";
        return o;
    });

    all &= report(4, "two-three criterion matches the semigroup test", 30, [] {
        Outcome o;
        for (std::int64_t n = 1; n <= 12; ++n)
            for (const auto& m : all_profiles(n))
                o.check(special_two_three(m) == is_f_solvable({{2, 3}, false}, m).has_value(), m.str());
        return o;
    });

    all &= report(5, "root profile graphs are connected and chains validate", 60, [] {
        Outcome o;
        std::mt19937 rng(5);
        std::size_t graphs = 0, chains = 0;
        for (std::int64_t p = 2; p <= 4; ++p) {
            std::set<std::string> seen;
            for (std::int64_t n = 1; n <= 12; ++n)
                for (const auto& m : all_profiles(n)) {
                    const Profile target = profile_power(m, p);
                    if (!seen.insert(target.str()).second)
                        continue;
                    const ProfileGraph g = build_graph(target, p);
                    ++graphs;
                    o.check(is_connected(g), "disconnected: " + target.str() + " p=" + std::to_string(p));
                    std::uniform_int_distribution<std::size_t> pick(0, g.vertices.size() - 1);
                    for (int r = 0; r < 8; ++r) {
                        const Profile& u = g.vertices[pick(rng)];
                        const Profile& v = g.vertices[pick(rng)];
                        const ProfileChain c = profile_chain(u, v, p);
                        ++chains;
                        const std::string tag = u.str() + " -> " + v.str() + " p=" + std::to_string(p);
                        o.check(!c.steps.empty() && c.steps.front() == u && c.steps.back() == v, "endpoints " + tag);
                        o.check(c.moves.size() + 1 == c.steps.size(), "move count " + tag);
                        for (std::size_t i = 0; i + 1 < c.steps.size() && i < c.moves.size(); ++i) {
                            o.check(move_window_ok(c.moves[i], p), "window " + tag);
                            o.check(apply_move(c.steps[i], c.moves[i], p) == c.steps[i + 1], "move " + tag);
                            o.check(is_p_adjacent(c.steps[i], c.steps[i + 1], p).has_value(), "adjacency " + tag);
                            o.check(g.has_edge(c.steps[i], c.steps[i + 1]), "edge " + tag);
                        }
                    }
                }
        }
        if (o.ok)
            o.detail = std::to_string(graphs) + " graphs, " + std::to_string(chains) + " chains";
        return o;
    });

    all &= report(6, "end-to-end root path, sampled", 120, [] { return end_to_end(VerificationMode::Sampled); });

    all &= report(7, "square roots of E stay in the explicit family", 10, [] {
        Outcome o;
        Matrix e(3, 3);
        e(0, 2) = 1;
        Matrix y(3, 3);
        y(0, 1) = 2;
        y(1, 2) = Scalar(ratio(1, 2));
        const RootPath path = connect_roots(e, 2, jordan_cell(3), y);
        const Certificate cert = verify(path, 100);
        o.check(cert.ok, "certificate not ok");
        for (long j = 0; j <= 100; ++j) {
            const Matrix m = evaluate(path, ratio(j, 100));
            const std::string at = " at t=" + ratio(j, 100).get_str();
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c <= r; ++c)
                    o.check(m(r, c).is_zero(), "not strictly upper triangular" + at);
            o.check(m(0, 1) * m(1, 2) == Scalar(1), "entry(1,2)*entry(2,3) != 1" + at);
            o.check(matrix_pow(m, 2) == e, "square differs from E" + at);
        }
        return o;
    });

    all &= report(8, "conjugation section near random nilpotents", 60, [] {
        Outcome o;
        std::mt19937 rng(8);
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        std::uniform_int_distribution<long> small(-5, 5);
        for (int it = 0; it < 100; ++it) {
            const std::size_t n = dim(rng);
            const Matrix base = random_invertible(n, rng);
            const Matrix a0 = base * jordan_model(random_partition(n, rng)) * inverse(base);
            const ConjugationSection g(a0);
            o.check(g(a0) == Matrix::identity(n), "g(A0) != I");
            Matrix pert(n, n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    pert(r, c) = Scalar(ratio(small(rng), 1000));
            const Matrix rr = Matrix::identity(n) + pert;
            const Matrix b = rr * a0 * inverse(rr);
            const Matrix gb = g(b);
            o.check(!det(gb).is_zero(), "g(B) singular in case " + std::to_string(it));
            o.check(b * gb == gb * a0, "B g(B) != g(B) A0 in case " + std::to_string(it));
        }
        return o;
    });

    all &= report(9, "kernel section annihilates rank-preserving perturbations", 10, [] {
        Outcome o;
        std::mt19937 rng(9);
        std::uniform_int_distribution<long> small(-3, 3);
        int accepted = 0, cases = 0;
        while (cases < 100) {
            const std::size_t n = 2 + static_cast<std::size_t>(cases % 5);
            const std::size_t r = 1 + static_cast<std::size_t>(cases) % (n - 1);
            Matrix d(n, n);
            for (std::size_t i = 0; i < r; ++i)
                d(i, i) = 1;
            const Matrix u = random_invertible(n, rng) * d * random_invertible(n, rng);
            const auto kernel = nullspace(u);
            const SectionData s = section_setup(u, kernel.front());
            Matrix e1(n, n), e2(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    e1(i, j) = Scalar(ratio(small(rng), 100));
                    e2(i, j) = Scalar(ratio(small(rng), 100));
                }
            const Matrix v = (Matrix::identity(n) + e1) * u * (Matrix::identity(n) + e2);
            if (rank(v) != rank(u))
                continue;
            ++cases;
            try {
                const Vector f = section_eval(s, v);
                o.check(is_zero_vector(v * f), "v f(v) != 0 in case " + std::to_string(cases));
                ++accepted;
            } catch (const Error& err) {
                o.check(err.kind() == ErrorKind::OutsideNeighborhood, err.what());
            }
        }
        o.check(accepted > 0, "no perturbation accepted");
        if (o.ok)
            o.detail = std::to_string(accepted) + "/100 accepted";
        return o;
    });

    all &= report(10, "end-to-end root path, certified", 600, [] { return end_to_end(VerificationMode::Certified); });

    return all ? 0 : 1;
}
