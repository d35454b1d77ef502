#ifndef NILPATH_MATRIX_HPP
#define NILPATH_MATRIX_HPP

#include <nilpath/error.hpp>
#include <nilpath/scalar.hpp>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nilpath {

using Vector = std::vector<Scalar>;

/// Dense exact matrix, row-major. Zero-size matrices are allowed (J_0).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries))
    {
        require(data_.size() == rows_ * cols_, ErrorKind::DimensionMismatch,
                "entry count does not match shape");
    }
    Matrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            require(row.size() == cols_, ErrorKind::DimensionMismatch, "ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }
    static Matrix diagonal(std::span<const Scalar> d)
    {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }
    static Matrix column(std::span<const Scalar> v)
    {
        return Matrix(v.size(), 1, std::vector<Scalar>(v.begin(), v.end()));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<Scalar>& entries() const { return data_; }

    Vector col(std::size_t c) const
    {
        Vector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            v[r] = (*this)(r, c);
        return v;
    }
    void set_col(std::size_t c, std::span<const Scalar> v)
    {
        require(v.size() == rows_, ErrorKind::DimensionMismatch, "column length");
        for (std::size_t r = 0; r < rows_; ++r)
            (*this)(r, c) = v[r];
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (!x.is_zero())
                return false;
        return true;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        require(r0 + nr <= rows_ && c0 + nc <= cols_, ErrorKind::DimensionMismatch, "block out of range");
        Matrix b(nr, nc);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c)
                b(r, c) = (*this)(r0 + r, c0 + c);
        return b;
    }

    Matrix& operator+=(const Matrix& o)
    {
        require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::DimensionMismatch, "matrix add");
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o)
    {
        require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::DimensionMismatch, "matrix sub");
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(const Scalar& s)
    {
        for (auto& x : data_)
            x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
    friend Matrix operator-(Matrix a)
    {
        for (auto& x : a.data_)
            x = -x;
        return a;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        require(a.cols_ == b.rows_, ErrorKind::DimensionMismatch, "matrix product shape");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a(i, k);
                if (aik.is_zero())
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Scalar& bkj = b(k, j);
                    if (!bkj.is_zero())
                        out(i, j) += aik * bkj;
                }
            }
        return out;
    }

    friend Vector operator*(const Matrix& a, std::span<const Scalar> v)
    {
        require(a.cols_ == v.size(), ErrorKind::DimensionMismatch, "matrix-vector shape");
        Vector out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                if (!a(i, k).is_zero() && !v[k].is_zero())
                    out[i] += a(i, k) * v[k];
        return out;
    }
    friend Vector operator*(const Matrix& a, const Vector& v) { return a * std::span<const Scalar>(v); }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

inline bool is_zero_vector(std::span<const Scalar> v)
{
    for (const auto& x : v)
        if (!x.is_zero())
            return false;
    return true;
}

/// J_k: ones on the superdiagonal. J_0 is the 0x0 matrix.
inline Matrix jordan_cell(std::size_t k)
{
    Matrix m(k, k);
    for (std::size_t i = 0; i + 1 < k; ++i)
        m(i, i + 1) = 1;
    return m;
}

inline Matrix direct_sum(std::span<const Matrix> blocks)
{
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix out(rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c)
                out(r0 + r, c0 + c) = b(r, c);
        r0 += b.rows();
        c0 += b.cols();
    }
    return out;
}

inline Matrix direct_sum(std::initializer_list<Matrix> blocks)
{
    return direct_sum(std::span<const Matrix>(blocks.begin(), blocks.size()));
}

/// Direct sum of Jordan cells of the given sizes, in order.
inline Matrix jordan_model(std::span<const std::size_t> sizes)
{
    std::vector<Matrix> cells;
    cells.reserve(sizes.size());
    for (auto k : sizes)
        cells.push_back(jordan_cell(k));
    return direct_sum(cells);
}

inline Matrix matrix_pow(const Matrix& m, std::size_t e)
{
    require(m.is_square(), ErrorKind::NotSquare, "matrix_pow needs a square matrix");
    Matrix out = Matrix::identity(m.rows());
    for (std::size_t i = 0; i < e; ++i)
        out = out * m;
    return out;
}

/// Kronecker product a (x) b.
inline Matrix kronecker(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero())
                continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    if (!b(r, c).is_zero())
                        out(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
        }
    return out;
}

/// Column-major stacking of a matrix into a vector.
inline Vector vec(const Matrix& m)
{
    Vector v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r)
            v.push_back(m(r, c));
    return v;
}

inline Matrix unvec(std::span<const Scalar> v, std::size_t rows, std::size_t cols)
{
    require(v.size() == rows * cols, ErrorKind::DimensionMismatch, "unvec length");
    Matrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r)
            m(r, c) = v[c * rows + r];
    return m;
}

namespace detail {

/*
 * Fraction-free (Bareiss) forward elimination, in place. Returns the rank
 * and the sign of the row permutation. After the call the leading
 * rank x rank principal part of the permuted matrix is upper triangular
 * and its last pivot equals the corresponding leading minor.
 */
struct BareissResult {
    std::size_t rank = 0;
    int sign = 1;
    Scalar last_pivot{1};
};

inline BareissResult bareiss(Matrix& m)
{
    BareissResult res;
    const std::size_t rows = m.rows(), cols = m.cols();
    Scalar prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m(piv, c).is_zero())
            ++piv;
        if (piv == rows)
            continue;
        if (piv != r) {
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m(piv, j), m(r, j));
            res.sign = -res.sign;
        }
        const Scalar pivot = m(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Scalar factor = m(i, c);
            for (std::size_t j = c + 1; j < cols; ++j) {
                Scalar v = pivot * m(i, j);
                if (!factor.is_zero())
                    v -= factor * m(r, j);
                m(i, j) = v / prev;
            }
            m(i, c) = 0;
        }
        prev = pivot;
        ++r;
    }
    res.rank = r;
    res.last_pivot = prev;
    return res;
}

} // namespace detail

inline std::size_t rank(const Matrix& m)
{
    Matrix work = m;
    return detail::bareiss(work).rank;
}

inline Scalar det(const Matrix& m)
{
    require(m.is_square(), ErrorKind::NotSquare, "det needs a square matrix");
    if (m.rows() == 0)
        return Scalar(1);
    Matrix work = m;
    auto res = detail::bareiss(work);
    if (res.rank < m.rows())
        return Scalar(0);
    Scalar d = work(m.rows() - 1, m.cols() - 1);
    return res.sign < 0 ? -d : d;
}

/// Reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c).is_zero())
            ++piv;
        if (piv == m.rows())
            continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(piv, j), m(r, j));
        const Scalar inv = Scalar(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero())
                continue;
            const Scalar f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero())
                    m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Kernel basis in echelon order: one vector per free column, ascending.
inline std::vector<Vector> nullspace(const Matrix& m)
{
    Matrix work = m;
    auto pivots = rref(work);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vector v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -work(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves a x = b for square invertible a (Bareiss elimination + back substitution).
inline Matrix solve(const Matrix& a, const Matrix& b)
{
    require(a.is_square(), ErrorKind::NotSquare, "solve needs a square matrix");
    require(a.rows() == b.rows(), ErrorKind::DimensionMismatch, "solve right-hand side");
    const std::size_t n = a.rows(), m = b.cols();
    Matrix aug(n, n + m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < m; ++j)
            aug(i, n + j) = b(i, j);
    }
    // elimination restricted to the first n columns for pivot choice
    Scalar prev(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && aug(piv, c).is_zero())
            ++piv;
        if (piv == n)
            fail(ErrorKind::Singular, "matrix is singular");
        if (piv != c)
            for (std::size_t j = 0; j < n + m; ++j)
                std::swap(aug(piv, j), aug(c, j));
        const Scalar pivot = aug(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            const Scalar factor = aug(i, c);
            for (std::size_t j = c + 1; j < n + m; ++j) {
                Scalar v = pivot * aug(i, j);
                if (!factor.is_zero())
                    v -= factor * aug(c, j);
                aug(i, j) = v / prev;
            }
            aug(i, c) = 0;
        }
        prev = pivot;
    }
    Matrix x(n, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t ii = n; ii-- > 0;) {
            Scalar s = aug(ii, n + j);
            for (std::size_t k = ii + 1; k < n; ++k)
                if (!aug(ii, k).is_zero())
                    s -= aug(ii, k) * x(k, j);
            x(ii, j) = s / aug(ii, ii);
        }
    return x;
}

inline Matrix inverse(const Matrix& m)
{
    require(m.is_square(), ErrorKind::NotSquare, "inverse needs a square matrix");
    return solve(m, Matrix::identity(m.rows()));
}

/*
 * Incrementally maintained span of vectors. Stored rows are kept reduced
 * against earlier pivots so membership tests are a single sweep.
 */
class SpanBuilder {
public:
    explicit SpanBuilder(std::size_t dim) : dim_(dim) {}

    std::size_t dimension() const { return rows_.size(); }

    Vector reduce(Vector v) const
    {
        require(v.size() == dim_, ErrorKind::DimensionMismatch, "span vector length");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Scalar f = v[pivots_[i]];
            if (f.is_zero())
                continue;
            for (std::size_t j = 0; j < dim_; ++j)
                if (!rows_[i][j].is_zero())
                    v[j] -= f * rows_[i][j];
        }
        return v;
    }

    bool contains(const Vector& v) const { return is_zero_vector(reduce(v)); }

    /// Adds v if it is independent of the current span; returns whether it was added.
    bool try_add(const Vector& v)
    {
        Vector r = reduce(v);
        std::size_t piv = 0;
        while (piv < dim_ && r[piv].is_zero())
            ++piv;
        if (piv == dim_)
            return false;
        const Scalar inv = Scalar(1) / r[piv];
        for (auto& x : r)
            x *= inv;
        rows_.push_back(std::move(r));
        pivots_.push_back(piv);
        return true;
    }

private:
    std::size_t dim_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

inline Vector unit_vector(std::size_t dim, std::size_t i)
{
    Vector v(dim);
    v[i] = 1;
    return v;
}

/// Square matrix whose columns are the given vectors.
inline Matrix from_columns(const std::vector<Vector>& cols, std::size_t dim)
{
    Matrix m(dim, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        m.set_col(c, cols[c]);
    return m;
}

} // namespace nilpath

#endif // NILPATH_MATRIX_HPP
