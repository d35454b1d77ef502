#ifndef NILPATH_SCALAR_HPP
#define NILPATH_SCALAR_HPP

#include <nilpath/error.hpp>

#include <gmpxx.h>

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>

namespace nilpath {

using Rational = mpq_class;
using Integer = mpz_class;

/*
 * Exact Gaussian rational re + im*i with re, im in Q.
 *
 * gmpxx keeps results of arithmetic in canonical form (positive
 * denominator, gcd 1), so equality is plain component comparison.
 */
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}                    // NOLINT(google-explicit-constructor)
    Scalar(int v) : re_(v) {}                     // NOLINT(google-explicit-constructor)
    Scalar(Rational re) : re_(std::move(re)) {}   // NOLINT(google-explicit-constructor)
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return sgn(im_) == 0 && re_ == 1; }

    Scalar conj() const { return Scalar(re_, -im_); }
    /// |z|^2, always real and non-negative.
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar& operator+=(const Scalar& o)
    {
        re_ += o.re_;
        if (sgn(o.im_) != 0)
            im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o)
    {
        re_ -= o.re_;
        if (sgn(o.im_) != 0)
            im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o)
    {
        if (is_real() && o.is_real()) {
            re_ *= o.re_;
            return *this;
        }
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    Scalar& operator/=(const Scalar& o)
    {
        require(!o.is_zero(), ErrorKind::Singular, "division by zero scalar");
        if (o.is_real()) {
            re_ /= o.re_;
            if (sgn(im_) != 0)
                im_ /= o.re_;
            return *this;
        }
        Rational d = o.norm2();
        Rational re = (re_ * o.re_ + im_ * o.im_) / d;
        Rational im = (im_ * o.re_ - re_ * o.im_) / d;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Canonical text: "a/b" or "a/b+c/d i" / "a/b-c/d i".
    std::string str() const;

    /// Accepts "a", "a/b", "a/b+c/d i", "c/d i", "i", "-i" (whitespace tolerant).
    static Scalar parse(std::string_view text);

private:
    Rational re_{0};
    Rational im_{0};
};

inline std::string rational_str(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace detail {

inline std::string strip_spaces(std::string_view s)
{
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out.push_back(c);
    return out;
}

inline bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace detail

/// num/den in canonical form (the two-argument mpq_class constructor does not reduce).
inline Rational ratio(long num, long den)
{
    require(den != 0, ErrorKind::InvalidArgument, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "[+-]digits[/digits]" into a canonical rational.
inline Rational parse_rational(std::string_view text)
{
    std::string s = detail::strip_spaces(text);
    std::string_view v = s;
    bool negative = false;
    if (!v.empty() && (v.front() == '+' || v.front() == '-')) {
        negative = v.front() == '-';
        v.remove_prefix(1);
    }
    auto slash = v.find('/');
    std::string_view num = v.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : v.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
        fail(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");
    Rational q{Integer{std::string(num)}, Integer{std::string(den)}};
    if (q.get_den() == 0)
        fail(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    if (negative)
        q = -q;
    return q;
}

inline std::string Scalar::str() const
{
    std::string out = rational_str(re_);
    if (sgn(im_) != 0) {
        out += sgn(im_) > 0 ? "+" : "-";
        out += rational_str(abs(im_));
        out += " i";
    }
    return out;
}

inline Scalar Scalar::parse(std::string_view text)
{
    std::string s = detail::strip_spaces(text);
    if (s.empty())
        fail(ErrorKind::ParseError, "empty scalar");
    if (s.back() != 'i')
        return Scalar(parse_rational(s));

    s.pop_back();
    // split at the last sign that is not leading
    std::size_t split = std::string::npos;
    for (std::size_t pos = s.size(); pos-- > 1;) {
        if (s[pos] == '+' || s[pos] == '-') {
            split = pos;
            break;
        }
    }
    std::string re_text = split == std::string::npos ? std::string() : s.substr(0, split);
    std::string im_text = split == std::string::npos ? s : s.substr(split);
    Rational im;
    if (im_text.empty() || im_text == "+")
        im = 1;
    else if (im_text == "-")
        im = -1;
    else
        im = parse_rational(im_text);
    Rational re = re_text.empty() ? Rational(0) : parse_rational(re_text);
    return Scalar(re, im);
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& z)
{
    return os << z.str();
}

} // namespace nilpath

#endif // NILPATH_SCALAR_HPP
