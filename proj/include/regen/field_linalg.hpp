#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace regen {

bool is_prime(std::int64_t n);

/// Smallest prime >= n (n >= 2).
std::int64_t next_prime(std::int64_t n);

/// Prime field GF(p). Cheap value type; requires p < 2^31 so that
/// products of reduced elements fit in a signed 64-bit integer.
class Field {
public:
    explicit Field(std::int64_t p);

    std::int64_t p() const { return p_; }

    /// Reduce any signed value into [0, p).
    std::int64_t reduce(std::int64_t x) const {
        std::int64_t r = x % p_;
        return r < 0 ? r + p_ : r;
    }

    std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % p_; }
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
    std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % p_; }
    std::int64_t neg(std::int64_t a) const { return a == 0 ? 0 : p_ - a; }

    /// Multiplicative inverse of a nonzero element (extended Euclid).
    std::int64_t inv(std::int64_t a) const;

    bool operator==(const Field&) const = default;

private:
    std::int64_t p_;
};

/// Dense row-major matrix over GF(p). Entries are kept reduced mod p.
class Matrix {
public:
    Matrix(Field f, std::size_t rows, std::size_t cols);

    static Matrix identity(Field f, std::size_t n);
    static Matrix from_rows(Field f, const std::vector<std::vector<std::int64_t>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return f_; }

    std::int64_t at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t v) { e_[r * cols_ + c] = f_.reduce(v); }

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    bool operator==(const Matrix& rhs) const;

private:
    Field f_;
    std::size_t rows_, cols_;
    std::vector<std::int64_t> e_;
};

/// Columns of a next to columns of b (equal row counts and fields).
Matrix hconcat(const Matrix& a, const Matrix& b);

std::size_t rank(const Matrix& m);

/// Reduced row echelon form.
Matrix rref(const Matrix& m);

/// A subspace of GF(p)^ambient, held as a basis matrix whose columns are
/// independent vectors. Bases are canonicalized to reduced column echelon
/// form, so equal subspaces compare equal entry for entry.
class Subspace {
public:
    /// The zero subspace.
    Subspace(Field f, std::size_t ambient);

    /// Span of the columns of m (dependent columns are dropped).
    static Subspace from_columns(const Matrix& m);

    /// All of GF(p)^ambient.
    static Subspace full(Field f, std::size_t ambient);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }
    const Field& field() const { return basis_.field(); }

    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& rhs) const;

private:
    std::size_t ambient_;
    Matrix basis_;
};

/// dim(a + b) = rank of the concatenated bases.
Subspace span_sum(const Subspace& a, const Subspace& b);

/// a ∩ b, computed from the kernel of [A | B]: a solution (x, y) of
/// A x + B y = 0 yields the intersection vector A x. Validated elsewhere
/// against dim a + dim b = dim(a+b) + dim(a∩b).
Subspace intersect(const Subspace& a, const Subspace& b);

/// Right null space of m; dim = cols - rank.
Subspace kernel(const Matrix& m);

}  // namespace regen
