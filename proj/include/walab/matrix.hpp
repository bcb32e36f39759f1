#ifndef WALAB_MATRIX_HPP
#define WALAB_MATRIX_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "walab/field.hpp"
#include "walab/parallel.hpp"

namespace walab {

// Dense row-major matrix of Scalars over one field. Exact arithmetic only.
class Matrix {
public:
    // Zero-filled rows x cols matrix.
    Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols);
    static Matrix identity(const FieldSpec& field, std::size_t n);
    static Matrix from_rows(const FieldSpec& field,
                            const std::vector<std::vector<Scalar>>& rows);

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Scalar& at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Scalar& v);

    Matrix operator*(const Matrix& other) const;
    Matrix operator+(const Matrix& other) const;
    Matrix scaled(const Scalar& c) const;
    Matrix transposed() const;

    bool operator==(const Matrix& other) const;
    bool operator!=(const Matrix& other) const { return !(*this == other); }

    // Row rank by exact Gaussian elimination with first-nonzero pivoting.
    // GF(2) matrices go through the packed bit kernel; the result is
    // identical to the generic path (tests cross-check both).
    std::size_t rank() const;
    std::size_t rank(ExecMode mode) const;

    std::string to_string() const;

private:
    std::size_t idx(std::size_t r, std::size_t c) const { return r * cols_ + c; }

    FieldSpec field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> entries_;
};

// Generic-elimination rank, no GF(2) packing. Reference path for tests.
std::size_t rank_generic(const Matrix& m);

// Solves T * basis = targets exactly for a square full-rank basis; targets
// must have the same column count. Throws SingularBasis otherwise.
Matrix solve_rows(const Matrix& basis, const Matrix& targets);

// Inverse of a square full-rank matrix; throws SingularBasis.
Matrix inverse(const Matrix& m);

// Row-vector helpers used by the automata code.
std::vector<Scalar> row_times_matrix(const std::vector<Scalar>& v, const Matrix& m);
Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

// Incrementally maintained row space, kept in echelon form by exact
// elimination. Used for reachability closures and zeroness pruning.
class RowSpan {
public:
    RowSpan(const FieldSpec& field, std::size_t width);

    std::size_t size() const { return rows_.size(); }
    std::size_t width() const { return width_; }

    bool contains(std::vector<Scalar> v) const;
    // Adds v to the span; returns false (and changes nothing) if v was
    // already in it.
    bool absorb(std::vector<Scalar> v);
    // Pivot columns of the echelon rows, in absorption order. The original
    // absorbed rows restricted to these columns form an invertible matrix.
    const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

private:
    void reduce(std::vector<Scalar>& v) const;

    FieldSpec field_;
    std::size_t width_;
    std::vector<std::vector<Scalar>> rows_; // echelon rows
    std::vector<std::size_t> pivots_;       // pivots_[i] pivots rows_[i]
};

namespace kernels {

// Packed GF(2) elimination: rows are little-endian 64-bit blocks, ncols
// bits wide. Returns the rank. Serial and OpenMP variants share the pivot
// sequence, so their results are bit-identical.
std::size_t gf2_rank_serial(std::vector<std::vector<std::uint64_t>> rows, std::size_t ncols);
std::size_t gf2_rank_parallel(std::vector<std::vector<std::uint64_t>> rows, std::size_t ncols);
std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> rows, std::size_t ncols, ExecMode mode);

} // namespace kernels

} // namespace walab

#endif
