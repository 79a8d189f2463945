#include "regen/field_linalg.hpp"

#include <stdexcept>
#include <string>

namespace regen {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t f = 3; f * f <= n; f += 2)
        if (n % f == 0) return false;
    return true;
}

std::int64_t next_prime(std::int64_t n) {
    if (n <= 2) return 2;
    std::int64_t c = n;
    while (!is_prime(c)) ++c;
    return c;
}

Field::Field(std::int64_t p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("field modulus must be prime, got " + std::to_string(p));
    if (p >= (std::int64_t{1} << 31)) throw std::invalid_argument("field modulus too large");
}

std::int64_t Field::inv(std::int64_t a) const {
    a = reduce(a);
    if (a == 0) throw std::invalid_argument("division by zero in GF(p)");
    // extended Euclid on (a, p)
    std::int64_t r0 = a, r1 = p_, s0 = 1, s1 = 0;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    return reduce(s0);
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : f_(f), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

Matrix Matrix::identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    Matrix m(f, rows.size(), nc);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != nc) throw std::invalid_argument("ragged row list");
        for (std::size_t c = 0; c < nc; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(f_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (f_ != rhs.f_) throw std::invalid_argument("field mismatch in matrix product");
    if (cols_ != rhs.rows_) throw std::invalid_argument("shape mismatch in matrix product");
    Matrix out(f_, rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            std::int64_t a = at(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c)
                out.set(r, c, out.at(r, c) + a * rhs.at(k, c));
        }
    return out;
}

bool Matrix::operator==(const Matrix& rhs) const {
    return f_ == rhs.f_ && rows_ == rhs.rows_ && cols_ == rhs.cols_ && e_ == rhs.e_;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw std::invalid_argument("field mismatch in hconcat");
    if (a.rows() != b.rows()) throw std::invalid_argument("row-count mismatch in hconcat");
    Matrix out(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.at(r, c));
        for (std::size_t c = 0; c < b.cols(); ++c) out.set(r, a.cols() + c, b.at(r, c));
    }
    return out;
}

namespace {

// In-place Gauss-Jordan; returns pivot column indices.
std::vector<std::size_t> rref_inplace(Matrix& m) {
    const Field& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && m.at(pr, col) == 0) ++pr;
        if (pr == m.rows()) continue;
        if (pr != row)
            for (std::size_t c = 0; c < m.cols(); ++c) {
                std::int64_t t = m.at(row, c);
                m.set(row, c, m.at(pr, c));
                m.set(pr, c, t);
            }
        std::int64_t piv_inv = f.inv(m.at(row, col));
        for (std::size_t c = 0; c < m.cols(); ++c) m.set(row, c, f.mul(m.at(row, c), piv_inv));
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row) continue;
            std::int64_t factor = m.at(r, col);
            if (factor == 0) continue;
            for (std::size_t c = 0; c < m.cols(); ++c)
                m.set(r, c, f.sub(m.at(r, c), f.mul(factor, m.at(row, c))));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const Matrix& m) {
    Matrix work = m;
    return rref_inplace(work).size();
}

Matrix rref(const Matrix& m) {
    Matrix work = m;
    rref_inplace(work);
    return work;
}

Subspace::Subspace(Field f, std::size_t ambient) : ambient_(ambient), basis_(f, ambient, 0) {}

Subspace Subspace::from_columns(const Matrix& m) {
    // Reduced column echelon form of the span: row-reduce the transpose and
    // keep the nonzero rows back as columns.
    Matrix t = m.transpose();
    std::vector<std::size_t> pivots;
    {
        Matrix work = t;
        pivots = rref_inplace(work);
        t = work;
    }
    Subspace s(m.field(), m.rows());
    Matrix basis(m.field(), m.rows(), pivots.size());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t c = 0; c < m.rows(); ++c) basis.set(c, r, t.at(r, c));
    s.basis_ = basis;
    return s;
}

Subspace Subspace::full(Field f, std::size_t ambient) {
    return from_columns(Matrix::identity(f, ambient));
}

bool Subspace::contains(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw std::invalid_argument("ambient-dimension mismatch");
    return rank(hconcat(basis_, other.basis_)) == dim();
}

bool Subspace::operator==(const Subspace& rhs) const {
    return ambient_ == rhs.ambient_ && basis_ == rhs.basis_;
}

Subspace span_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("ambient-dimension mismatch");
    return Subspace::from_columns(hconcat(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("ambient-dimension mismatch");
    if (a.dim() == 0 || b.dim() == 0) return Subspace(a.field(), a.ambient_dim());
    Subspace k = kernel(hconcat(a.basis(), b.basis()));
    // Top block of each kernel vector gives coefficients x with A x in b.
    Matrix coeff(a.field(), a.dim(), k.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < k.dim(); ++c) coeff.set(r, c, k.basis().at(r, c));
    return Subspace::from_columns(a.basis() * coeff);
}

Subspace kernel(const Matrix& m) {
    const Field& f = m.field();
    Matrix red = m;
    std::vector<std::size_t> pivots = rref_inplace(red);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    Matrix basis(f, m.cols(), m.cols() - pivots.size());
    std::size_t out = 0;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        basis.set(free, out, 1);
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            basis.set(pivots[pi], out, f.neg(red.at(pi, free)));
        ++out;
    }
    return Subspace::from_columns(basis);
}

}  // namespace regen
