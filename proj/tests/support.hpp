#ifndef NILPATH_TESTS_SUPPORT_HPP
#define NILPATH_TESTS_SUPPORT_HPP

#include <nilpath/nilpath.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <vector>

namespace nilpath::testkit {

inline Matrix from_ints(std::initializer_list<std::initializer_list<long>> rows)
{
    const std::size_t r = rows.size(), c = rows.begin()->size();
    Matrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long v : row)
            m(i, j++) = Scalar(v);
        ++i;
    }
    return m;
}

/// Random integer matrix with entries in [lo, hi] and nonzero determinant.
inline Matrix random_invertible(std::size_t n, std::mt19937& rng, long lo = -3, long hi = 3)
{
    std::uniform_int_distribution<long> d(lo, hi);
    for (;;) {
        Matrix m(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                m(r, c) = Scalar(d(rng));
        if (!det(m).is_zero())
            return m;
    }
}

/// Uniform-ish random partition of n as a descending list of parts.
inline std::vector<std::size_t> random_partition(std::size_t n, std::mt19937& rng)
{
    std::vector<std::size_t> parts;
    std::size_t left = n;
    while (left > 0) {
        std::uniform_int_distribution<std::size_t> d(1, left);
        parts.push_back(d(rng));
        left -= parts.back();
    }
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

inline Profile profile_of_parts(const std::vector<std::size_t>& parts)
{
    Profile m;
    for (auto k : parts)
        m.add(static_cast<std::int64_t>(k), 1);
    return m;
}

/// All partitions of n, generated independently of the library (plain recursion).
inline std::vector<Profile> all_profiles(std::int64_t n)
{
    std::vector<Profile> out;
    std::vector<std::int64_t> parts;
    std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t left, std::int64_t max_part) {
        if (left == 0) {
            Profile m;
            for (auto k : parts)
                m.add(k, 1);
            out.push_back(m);
            return;
        }
        for (std::int64_t k = std::min(left, max_part); k >= 1; --k) {
            parts.push_back(k);
            rec(left - k, k);
            parts.pop_back();
        }
    };
    rec(n, n);
    return out;
}

/// Power map computed from matrices: profile of (J-model)^p by ranks.
inline Profile power_by_matrix(const Profile& m, std::int64_t p)
{
    return nilpotent_profile(matrix_pow(jordan_model(m.cells()), static_cast<std::size_t>(p)));
}

} // namespace nilpath::testkit

#endif // NILPATH_TESTS_SUPPORT_HPP
