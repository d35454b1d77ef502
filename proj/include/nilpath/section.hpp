#ifndef NILPATH_SECTION_HPP
#define NILPATH_SECTION_HPP

#include <nilpath/matrix.hpp>

#include <vector>

namespace nilpath {

/*
 * Local kernel section around a reference operator u with u x0 = 0.
 *
 * Bases: B = (e_1..e_r, kernel vectors..., x0) with e_{r+1}..e_n spanning
 * ker u, and C = (u e_1, ..., u e_r, completion). In these bases u has the
 * block form [[I_r, 0], [0, 0]]. For an operator v whose upper-left block
 * A(v) is invertible, f(v) = x0 - B_top A(v)^{-1} C(v)_last, i.e. the last
 * column of [[I, -A^{-1}C], [0, I]] read back in original coordinates.
 */
struct SectionData {
    Matrix reference;      // u
    Vector x0;
    std::size_t rank = 0;  // r = rank(u)
    Matrix basis_b;        // columns e_1..e_n
    Matrix c_inv_top;      // first r rows of C^{-1}
    Matrix b_top;          // first r columns of basis_b
};

inline SectionData section_setup(const Matrix& u, const Vector& x0)
{
    require(u.is_square(), ErrorKind::NotSquare, "reference operator must be square");
    const std::size_t n = u.rows();
    require(x0.size() == n, ErrorKind::DimensionMismatch, "x0 length");
    require(!is_zero_vector(x0), ErrorKind::NotInKernel, "x0 must be nonzero");
    require(is_zero_vector(u * x0), ErrorKind::NotInKernel, "u x0 != 0");

    SectionData s;
    s.reference = u;
    s.x0 = x0;

    // kernel basis with x0 last
    SpanBuilder kernel(n);
    kernel.try_add(x0);
    std::vector<Vector> kernel_vectors;
    for (const auto& w : nullspace(u))
        if (kernel.try_add(w))
            kernel_vectors.push_back(w);
    s.rank = n - kernel.dimension();

    SpanBuilder full = kernel;
    std::vector<Vector> head;
    for (std::size_t i = 0; i < n && head.size() < s.rank; ++i) {
        Vector e = unit_vector(n, i);
        if (full.try_add(e))
            head.push_back(std::move(e));
    }
    std::vector<Vector> b_cols = head;
    b_cols.insert(b_cols.end(), kernel_vectors.begin(), kernel_vectors.end());
    b_cols.push_back(x0);
    s.basis_b = from_columns(b_cols, n);
    s.b_top = from_columns(head, n);

    SpanBuilder image(n);
    std::vector<Vector> c_cols;
    for (const auto& e : head) {
        Vector ue = u * e;
        require(image.try_add(ue), ErrorKind::InternalGuard, "image vectors are dependent");
        c_cols.push_back(std::move(ue));
    }
    for (std::size_t i = 0; i < n && c_cols.size() < n; ++i) {
        Vector e = unit_vector(n, i);
        if (image.try_add(e))
            c_cols.push_back(std::move(e));
    }
    const Matrix c_inv = inverse(from_columns(c_cols, n));
    s.c_inv_top = c_inv.block(0, 0, s.rank, n);

    // normal form check: C^{-1} u B = [[I, 0], [0, 0]]
    Matrix normal = c_inv * u * s.basis_b;
    Matrix expected(n, n);
    for (std::size_t i = 0; i < s.rank; ++i)
        expected(i, i) = 1;
    require(normal == expected, ErrorKind::InternalGuard, "section bases fail the block normal form");
    return s;
}

/// f(v); throws OutsideNeighborhood if the A(v) block is singular.
inline Vector section_eval(const SectionData& s, const Matrix& v)
{
    require(v.rows() == s.reference.rows() && v.cols() == s.reference.cols(), ErrorKind::DimensionMismatch,
            "operator shape");
    if (s.rank == 0)
        return s.x0;
    const Matrix cv = s.c_inv_top * v;
    const Matrix a_block = cv * s.b_top;
    const Matrix c_last = cv * Matrix::column(s.x0);
    if (det(a_block).is_zero())
        fail(ErrorKind::OutsideNeighborhood, "A(v) block is singular");
    const Matrix y = solve(a_block, c_last);
    Vector f = s.x0;
    const Vector by = s.b_top * y.col(0);
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] -= by[i];
    return f;
}

/// Operator M -> B M - M A on column-stacked n x n matrices.
inline Matrix sylvester_operator(const Matrix& b, const Matrix& a)
{
    const std::size_t n = a.rows();
    return kronecker(Matrix::identity(n), b) - kronecker(a.transpose(), Matrix::identity(n));
}

/*
 * Cross-section g of P -> P A0 P^{-1} near A0: g(B) = unvec f(Phi(B)) with
 * Phi(B) = [M -> B M - M A0] and the section built at ad_{A0} with x0 = I.
 */
class ConjugationSection {
public:
    explicit ConjugationSection(Matrix a0)
        : a0_(std::move(a0))
    {
        require(a0_.is_square(), ErrorKind::NotSquare, "conjugation_section needs a square matrix");
        data_ = section_setup(sylvester_operator(a0_, a0_), vec(Matrix::identity(a0_.rows())));
    }

    const Matrix& base() const { return a0_; }
    const SectionData& data() const { return data_; }

    /// g(B) with all validity conditions checked exactly.
    Matrix operator()(const Matrix& b) const
    {
        require(b.rows() == a0_.rows() && b.is_square(), ErrorKind::DimensionMismatch, "g(B) shape");
        const Matrix phi = sylvester_operator(b, a0_);
        Matrix g = unvec(section_eval(data_, phi), a0_.rows(), a0_.cols());
        if (rank(phi) != data_.rank)
            fail(ErrorKind::OutsideNeighborhood, "rank of Phi(B) differs from rank of ad_A0");
        if (det(g).is_zero())
            fail(ErrorKind::OutsideNeighborhood, "g(B) is singular");
        require(b * g == g * a0_, ErrorKind::InternalGuard, "B g(B) != g(B) A0");
        return g;
    }

    /// Section polynomial data for certification: A-block and unnormalized g.
    struct Parts {
        Matrix a_block;
        Matrix c_last;
    };
    Parts parts(const Matrix& b) const
    {
        const Matrix phi = sylvester_operator(b, a0_);
        const Matrix cv = data_.c_inv_top * phi;
        return {cv * data_.b_top, cv * Matrix::column(data_.x0)};
    }

private:
    Matrix a0_;
    SectionData data_;
};

inline ConjugationSection conjugation_section(const Matrix& a0)
{
    return ConjugationSection(a0);
}

} // namespace nilpath

#endif // NILPATH_SECTION_HPP
