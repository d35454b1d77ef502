#ifndef NILPATH_JORDAN_HPP
#define NILPATH_JORDAN_HPP

#include <nilpath/matrix.hpp>
#include <nilpath/profile.hpp>

#include <vector>

namespace nilpath {

/// P^{-1} N P = J_{s_1} (+) J_{s_2} (+) ..., sizes non-increasing.
struct JordanDecomposition {
    Matrix conjugator;
    std::vector<std::size_t> cell_sizes;
};

namespace detail {

/// Powers N^0 .. N^j until N^j = 0; throws NotNilpotent if N^n != 0.
inline std::vector<Matrix> nilpotent_powers(const Matrix& m)
{
    require(m.is_square(), ErrorKind::NotSquare, "nilpotent matrix must be square");
    std::vector<Matrix> powers{Matrix::identity(m.rows())};
    while (!powers.back().is_zero()) {
        if (powers.size() > m.rows())
            fail(ErrorKind::NotNilpotent, "M^n is nonzero");
        powers.push_back(powers.back() * m);
    }
    return powers;
}

} // namespace detail

/// m_k = r_{k-1} - 2 r_k + r_{k+1} with r_k = rank(M^k).
inline Profile nilpotent_profile(const Matrix& m)
{
    auto powers = detail::nilpotent_powers(m);
    std::vector<std::int64_t> ranks;
    for (const auto& pw : powers)
        ranks.push_back(static_cast<std::int64_t>(rank(pw)));
    ranks.push_back(0);
    Profile out;
    for (std::size_t k = 1; k + 1 < ranks.size(); ++k)
        out.add(static_cast<std::int64_t>(k), ranks[k - 1] - 2 * ranks[k] + ranks[k + 1]);
    return out;
}

/*
 * Chain-basis construction. For each size k from the largest down, chain
 * tops are taken from the echelon kernel basis of N^k, keeping those that
 * are independent of ker N^{k-1} plus the images of longer chains. Each
 * chain contributes columns N^{k-1} v, ..., N v, v, so a matrix already in
 * Jordan form yields the identity conjugator.
 */
inline JordanDecomposition jordan_basis(const Matrix& m)
{
    auto powers = detail::nilpotent_powers(m);
    const std::size_t n = m.rows();
    const std::size_t index = powers.size() - 1;

    std::vector<std::vector<Vector>> kernels(index + 1);
    for (std::size_t j = 1; j <= index; ++j)
        kernels[j] = nullspace(powers[j]);

    struct Top {
        std::size_t size;
        Vector v;
    };
    std::vector<Top> tops;
    for (std::size_t k = index; k >= 1; --k) {
        SpanBuilder span(n);
        for (const auto& w : kernels[k - 1])
            span.try_add(w);
        for (const auto& t : tops)
            span.try_add(powers[t.size - k] * t.v);
        for (const auto& w : kernels[k])
            if (span.try_add(w))
                tops.push_back({k, w});
    }

    JordanDecomposition out;
    std::vector<Vector> columns;
    for (const auto& t : tops) {
        out.cell_sizes.push_back(t.size);
        for (std::size_t j = t.size; j-- > 0;)
            columns.push_back(powers[j] * t.v);
    }
    require(columns.size() == n, ErrorKind::InternalGuard, "chain basis has wrong length");
    out.conjugator = from_columns(columns, n);
    require(out.conjugator * jordan_model(out.cell_sizes) == m * out.conjugator, ErrorKind::InternalGuard,
            "Jordan basis identity failed");
    require(!det(out.conjugator).is_zero(), ErrorKind::InternalGuard, "Jordan basis is singular");
    return out;
}

/// Invertible Q with Y = Q X Q^{-1}, built from both Jordan bases.
inline Matrix similarity_witness(const Matrix& x, const Matrix& y)
{
    require(x.is_square() && y.is_square() && x.rows() == y.rows(), ErrorKind::DimensionMismatch,
            "similarity_witness needs square matrices of equal size");
    auto jx = jordan_basis(x);
    auto jy = jordan_basis(y);
    if (jx.cell_sizes != jy.cell_sizes)
        fail(ErrorKind::NotSimilar, "profiles differ");
    return jy.conjugator * inverse(jx.conjugator);
}

} // namespace nilpath

#endif // NILPATH_JORDAN_HPP
