#ifndef NILPATH_CERTIFY_HPP
#define NILPATH_CERTIFY_HPP

#include <nilpath/matrix.hpp>

#include <algorithm>
#include <utility>
#include <vector>

namespace nilpath {

/// Univariate polynomial over Q(i), coefficients low degree first, trailing zeros trimmed.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
    RatPoly(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }

    static RatPoly constant(const Scalar& s) { return RatPoly(std::vector<Scalar>{s}); }
    /// x - root
    static RatPoly linear_root(const Scalar& root) { return RatPoly({-root, Scalar(1)}); }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar(0); }
    const Scalar& leading() const { return c_.back(); }

    bool is_real() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_real(); });
    }

    Scalar eval(const Scalar& x) const
    {
        Scalar acc;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + c_[i];
        return acc;
    }

    RatPoly derivative() const
    {
        std::vector<Scalar> d;
        for (std::size_t i = 1; i < c_.size(); ++i)
            d.push_back(c_[i] * Scalar(static_cast<long>(i)));
        return RatPoly(std::move(d));
    }

    RatPoly real_part() const
    {
        std::vector<Scalar> r;
        for (const auto& s : c_)
            r.emplace_back(s.re());
        return RatPoly(std::move(r));
    }
    RatPoly imag_part() const
    {
        std::vector<Scalar> r;
        for (const auto& s : c_)
            r.emplace_back(s.im());
        return RatPoly(std::move(r));
    }

    /// p(z0 + s dz) as a polynomial in s.
    RatPoly compose_affine(const Scalar& z0, const Scalar& dz) const
    {
        const RatPoly lin({z0, dz});
        RatPoly acc;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * lin + constant(c_[i]);
        return acc;
    }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b)
    {
        std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = a.coeff(i) + b.coeff(i);
        return RatPoly(std::move(r));
    }
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b)
    {
        std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = a.coeff(i) - b.coeff(i);
        return RatPoly(std::move(r));
    }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero())
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                if (!b.c_[j].is_zero())
                    r[i + j] += a.c_[i] * b.c_[j];
        }
        return RatPoly(std::move(r));
    }
    friend bool operator==(const RatPoly&, const RatPoly&) = default;

    /// Quotient and remainder over the field Q(i).
    static std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b)
    {
        require(!b.is_zero(), ErrorKind::ZeroPolynomial, "division by the zero polynomial");
        if (a.degree() < b.degree())
            return {RatPoly(), a};
        std::vector<Scalar> rem = a.c_;
        std::vector<Scalar> quo(rem.size() - b.c_.size() + 1);
        const Scalar lead_inv = Scalar(1) / b.leading();
        for (std::size_t i = quo.size(); i-- > 0;) {
            const Scalar f = rem[i + b.c_.size() - 1] * lead_inv;
            quo[i] = f;
            if (f.is_zero())
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                rem[i + j] -= f * b.c_[j];
        }
        rem.resize(b.c_.size() - 1);
        return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
    }

    RatPoly monic() const
    {
        if (is_zero())
            return *this;
        const Scalar inv = Scalar(1) / leading();
        std::vector<Scalar> r = c_;
        for (auto& x : r)
            x *= inv;
        return RatPoly(std::move(r));
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero())
            c_.pop_back();
    }
    std::vector<Scalar> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline RatPoly poly_gcd(RatPoly a, RatPoly b)
{
    while (!b.is_zero()) {
        auto r = RatPoly::divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace detail {

/*
 * Integer polynomial helpers for the Sturm sequence. Working with primitive
 * integer polynomials and pseudo-remainders keeps coefficient growth in
 * check; only signs matter, so every positive rescaling is free.
 */
using IntPoly = std::vector<Integer>; // low degree first, trimmed

inline void trim(IntPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline IntPoly primitive(IntPoly p)
{
    trim(p);
    if (p.empty())
        return p;
    Integer g = 0;
    for (const auto& c : p)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (auto& c : p)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return p;
}

inline IntPoly to_int_poly(const RatPoly& f)
{
    Integer l = 1;
    for (const auto& c : f.coeffs())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den_mpz_t());
    IntPoly out;
    for (const auto& c : f.coeffs()) {
        Integer v = c.re().get_num() * (l / c.re().get_den());
        out.push_back(v);
    }
    return primitive(out);
}

inline IntPoly int_derivative(const IntPoly& p)
{
    IntPoly d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(p[i] * static_cast<unsigned long>(i));
    return primitive(d);
}

/// lc(b)^steps * a mod b; steps counts the scalings actually applied.
inline IntPoly pseudo_remainder(IntPoly a, const IntPoly& b, std::size_t& steps)
{
    const std::size_t db = b.size() - 1;
    const Integer& lb = b.back();
    steps = 0;
    while (a.size() >= b.size()) {
        ++steps;
        const Integer la = a.back();
        const std::size_t shift = a.size() - b.size();
        for (auto& c : a)
            c *= lb;
        for (std::size_t j = 0; j <= db; ++j)
            a[shift + j] -= la * b[j];
        a.pop_back();
        trim(a);
    }
    return a;
}

/// Sign of p(num/den) for den > 0.
inline int sign_at(const IntPoly& p, const Rational& x)
{
    const Integer& num = x.get_num();
    const Integer& den = x.get_den();
    Integer acc = 0;
    Integer den_pow = 1;
    // sum c_i num^i den^(d-i), evaluated by Horner in num with den powers
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * num + p[i] * den_pow;
        den_pow *= den;
    }
    return sgn(acc);
}

inline std::vector<IntPoly> sturm_sequence(const IntPoly& f)
{
    std::vector<IntPoly> seq{f, int_derivative(f)};
    while (!seq.back().empty()) {
        const IntPoly& a = seq[seq.size() - 2];
        const IntPoly& b = seq.back();
        std::size_t steps = 0;
        IntPoly r = pseudo_remainder(a, b, steps);
        // r = lc(b)^steps * rem; the Sturm term is -rem
        const bool flip = sgn(b.back()) < 0 && steps % 2 == 1;
        r = primitive(std::move(r));
        if (!flip)
            for (auto& c : r)
                c = -c;
        seq.push_back(std::move(r));
    }
    seq.pop_back();
    return seq;
}

inline int sign_variations(const std::vector<IntPoly>& seq, const Rational& x)
{
    int last = 0, changes = 0;
    for (const auto& p : seq) {
        const int s = sign_at(p, x);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

} // namespace detail

/*
 * Number of distinct real roots of f in the open interval (lo, hi). Roots at
 * the endpoints are divided out first so the classical Sturm count applies.
 */
inline std::size_t sturm_root_count(RatPoly f, const Rational& lo, const Rational& hi)
{
    require(!f.is_zero(), ErrorKind::ZeroPolynomial, "Sturm count of the zero polynomial");
    require(f.is_real(), ErrorKind::InvalidArgument, "Sturm count needs real coefficients");
    require(lo < hi, ErrorKind::InvalidArgument, "empty interval");
    for (const Rational& e : {lo, hi})
        while (f.degree() > 0 && f.eval(Scalar(e)).is_zero())
            f = RatPoly::divmod(f, RatPoly::linear_root(Scalar(e))).first;
    if (f.degree() <= 0)
        return 0;
    auto seq = detail::sturm_sequence(detail::to_int_poly(f));
    const int v = detail::sign_variations(seq, lo) - detail::sign_variations(seq, hi);
    require(v >= 0, ErrorKind::InternalGuard, "negative Sturm count");
    return static_cast<std::size_t>(v);
}

/*
 * True iff f(z0 + s (z1 - z0)) != 0 for every real s in [0, 1]. The real and
 * imaginary parts of the composed polynomial are real polynomials in s; f
 * vanishes on the segment exactly where both do, i.e. at a real root of
 * their gcd.
 */
inline bool certify_nonvanishing_segment(const RatPoly& f, const Scalar& z0, const Scalar& z1)
{
    require(!f.is_zero(), ErrorKind::ZeroPolynomial, "certification of the zero polynomial");
    if (f.eval(z0).is_zero() || f.eval(z1).is_zero())
        return false;
    if (z0 == z1)
        return true;
    const RatPoly g = f.compose_affine(z0, z1 - z0);
    const RatPoly h = poly_gcd(g.real_part(), g.imag_part());
    if (h.degree() <= 0)
        return true;
    return sturm_root_count(h, Rational(0), Rational(1)) == 0;
}

/// Entrywise polynomial matrix.
struct PolyMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<RatPoly> entries; // row-major

    const RatPoly& operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

    Matrix eval(const Scalar& t) const
    {
        Matrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                m(r, c) = (*this)(r, c).eval(t);
        return m;
    }
};

/// Interpolates values at distinct nodes (Newton divided differences).
inline RatPoly interpolate(const std::vector<Scalar>& nodes, std::vector<Scalar> values)
{
    require(nodes.size() == values.size(), ErrorKind::InvalidArgument, "node/value count mismatch");
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (nodes[i] == nodes[j])
                fail(ErrorKind::DuplicateSample, "interpolation nodes must be distinct");
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n; i-- > level;)
            values[i] = (values[i] - values[i - 1]) / (nodes[i] - nodes[i - level]);
    RatPoly acc;
    for (std::size_t i = n; i-- > 0;)
        acc = acc * RatPoly::linear_root(nodes[i]) + RatPoly::constant(values[i]);
    return acc;
}

/// Exact entrywise interpolation through degree_bound + 1 samples.
inline PolyMatrix poly_interpolate_entries(const std::vector<std::pair<Scalar, Matrix>>& samples,
                                           std::size_t degree_bound)
{
    require(samples.size() == degree_bound + 1, ErrorKind::InvalidArgument,
            "need exactly degree_bound + 1 samples");
    const std::size_t rows = samples.front().second.rows(), cols = samples.front().second.cols();
    std::vector<Scalar> nodes;
    for (const auto& [t, m] : samples) {
        require(m.rows() == rows && m.cols() == cols, ErrorKind::DimensionMismatch, "sample shapes differ");
        nodes.push_back(t);
    }
    PolyMatrix out{rows, cols, {}};
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            std::vector<Scalar> vals;
            for (const auto& s : samples)
                vals.push_back(s.second(r, c));
            out.entries.push_back(interpolate(nodes, std::move(vals)));
        }
    return out;
}

} // namespace nilpath

#endif // NILPATH_CERTIFY_HPP
