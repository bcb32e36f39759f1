#include "walab/matrix.hpp"

#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace walab {

Matrix::Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols),
      entries_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(const FieldSpec& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, Scalar::one(field));
    return m;
}

Matrix Matrix::from_rows(const FieldSpec& field,
                         const std::vector<std::vector<Scalar>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), nc);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != nc)
            throw Error("ragged rows in matrix literal");
        for (std::size_t c = 0; c < nc; ++c) {
            if (rows[r][c].field() != field)
                throw FieldMismatch("matrix entry field differs from matrix field");
            m.entries_[m.idx(r, c)] = rows[r][c];
        }
    }
    return m;
}

const Scalar& Matrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_)
        throw Error("matrix index out of range");
    return entries_[idx(r, c)];
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& v) {
    if (r >= rows_ || c >= cols_)
        throw Error("matrix index out of range");
    if (v.field() != field_)
        throw FieldMismatch("entry field differs from matrix field");
    entries_[idx(r, c)] = v;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (field_ != other.field_)
        throw FieldMismatch("matrix product across fields");
    if (cols_ != other.rows_)
        throw LengthMismatch("matrix product shape mismatch");
    Matrix out(field_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = entries_[idx(i, k)];
            if (a.is_zero())
                continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                out.entries_[out.idx(i, j)] += a * other.entries_[other.idx(k, j)];
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
    if (field_ != other.field_)
        throw FieldMismatch("matrix sum across fields");
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw LengthMismatch("matrix sum shape mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        out.entries_[i] += other.entries_[i];
    return out;
}

Matrix Matrix::scaled(const Scalar& c) const {
    if (c.field() != field_)
        throw FieldMismatch("scale factor field differs from matrix field");
    Matrix out = *this;
    for (auto& e : out.entries_)
        e *= c;
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out.entries_[out.idx(c, r)] = entries_[idx(r, c)];
    return out;
}

bool Matrix::operator==(const Matrix& other) const {
    return field_ == other.field_ && rows_ == other.rows_ &&
           cols_ == other.cols_ && entries_ == other.entries_;
}

std::size_t Matrix::rank() const { return rank(exec_mode()); }

std::size_t Matrix::rank(ExecMode mode) const {
    if (field_.kind() == FieldSpec::Kind::gf2) {
        std::size_t blocks = (cols_ + 63) / 64;
        std::vector<std::vector<std::uint64_t>> packed(
            rows_, std::vector<std::uint64_t>(blocks, 0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!entries_[idx(r, c)].is_zero())
                    packed[r][c / 64] |= std::uint64_t(1) << (c % 64);
        return kernels::gf2_rank(std::move(packed), cols_, mode);
    }
    return rank_generic(*this);
}

std::string Matrix::to_string() const {
    std::string out;
    for (std::size_t r = 0; r < rows_; ++r) {
        out += "[";
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c)
                out += " ";
            out += entries_[idx(r, c)].to_string();
        }
        out += "]";
        if (r + 1 < rows_)
            out += "\n";
    }
    return out;
}

std::size_t rank_generic(const Matrix& m) {
    std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Scalar>> a;
    a.reserve(nr);
    for (std::size_t r = 0; r < nr; ++r) {
        std::vector<Scalar> row;
        row.reserve(nc);
        for (std::size_t c = 0; c < nc; ++c)
            row.push_back(m.at(r, c));
        a.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t pivot = nr;
        for (std::size_t r = rank; r < nr; ++r) {
            if (!a[r][col].is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot == nr)
            continue;
        std::swap(a[rank], a[pivot]);
        for (std::size_t r = rank + 1; r < nr; ++r) {
            if (a[r][col].is_zero())
                continue;
            Scalar f = a[r][col] / a[rank][col];
            for (std::size_t c = col; c < nc; ++c)
                a[r][c] -= f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols())
        throw SingularBasis("inverse of non-square matrix");
    std::size_t n = m.rows();
    const FieldSpec& field = m.field();
    // Gauss-Jordan on [m | I].
    std::vector<std::vector<Scalar>> a;
    a.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<Scalar> row;
        row.reserve(2 * n);
        for (std::size_t c = 0; c < n; ++c)
            row.push_back(m.at(r, c));
        for (std::size_t c = 0; c < n; ++c)
            row.push_back(r == c ? Scalar::one(field) : Scalar::zero(field));
        a.push_back(std::move(row));
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t r = col; r < n; ++r) {
            if (!a[r][col].is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot == n)
            throw SingularBasis("matrix is singular");
        std::swap(a[col], a[pivot]);
        Scalar inv = a[col][col].inverse();
        for (std::size_t c = 0; c < 2 * n; ++c)
            a[col][c] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero())
                continue;
            Scalar f = a[r][col];
            for (std::size_t c = col; c < 2 * n; ++c)
                a[r][c] -= f * a[col][c];
        }
    }
    Matrix out(field, n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out.set(r, c, a[r][n + c]);
    return out;
}

Matrix solve_rows(const Matrix& basis, const Matrix& targets) {
    if (basis.rows() != basis.cols())
        throw SingularBasis("row basis must be square");
    if (targets.cols() != basis.cols())
        throw LengthMismatch("target width differs from basis width");
    if (targets.field() != basis.field())
        throw FieldMismatch("targets and basis live over different fields");
    return targets * inverse(basis);
}

std::vector<Scalar> row_times_matrix(const std::vector<Scalar>& v, const Matrix& m) {
    if (v.size() != m.rows())
        throw LengthMismatch("row vector length differs from matrix height");
    std::vector<Scalar> out(m.cols(), Scalar::zero(m.field()));
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero())
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[j] += v[k] * m.at(k, j);
    }
    return out;
}

Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    if (a.size() != b.size())
        throw LengthMismatch("dot product of unequal lengths");
    if (a.empty())
        throw LengthMismatch("dot product of empty vectors");
    Scalar acc = Scalar::zero(a.front().field());
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

RowSpan::RowSpan(const FieldSpec& field, std::size_t width)
    : field_(field), width_(width) {}

void RowSpan::reduce(std::vector<Scalar>& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Scalar& coef = v[pivots_[i]];
        if (coef.is_zero())
            continue;
        Scalar f = coef / rows_[i][pivots_[i]];
        for (std::size_t c = 0; c < width_; ++c)
            v[c] -= f * rows_[i][c];
    }
}

bool RowSpan::contains(std::vector<Scalar> v) const {
    if (v.size() != width_)
        throw LengthMismatch("row width differs from span width");
    reduce(v);
    for (const auto& x : v)
        if (!x.is_zero())
            return false;
    return true;
}

bool RowSpan::absorb(std::vector<Scalar> v) {
    if (v.size() != width_)
        throw LengthMismatch("row width differs from span width");
    reduce(v);
    for (std::size_t c = 0; c < width_; ++c) {
        if (!v[c].is_zero()) {
            rows_.push_back(std::move(v));
            pivots_.push_back(c);
            return true;
        }
    }
    return false;
}

namespace kernels {

namespace {

bool get_bit(const std::vector<std::uint64_t>& row, std::size_t c) {
    return (row[c / 64] >> (c % 64)) & 1;
}

void xor_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
    for (std::size_t b = 0; b < dst.size(); ++b)
        dst[b] ^= src[b];
}

} // namespace

std::size_t gf2_rank_serial(std::vector<std::vector<std::uint64_t>> rows,
                            std::size_t ncols) {
    std::size_t nr = rows.size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < nr; ++col) {
        std::size_t pivot = nr;
        for (std::size_t r = rank; r < nr; ++r) {
            if (get_bit(rows[r], col)) {
                pivot = r;
                break;
            }
        }
        if (pivot == nr)
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < nr; ++r)
            if (get_bit(rows[r], col))
                xor_into(rows[r], rows[rank]);
        ++rank;
    }
    return rank;
}

std::size_t gf2_rank_parallel(std::vector<std::vector<std::uint64_t>> rows,
                              std::size_t ncols) {
    std::size_t nr = rows.size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < nr; ++col) {
        std::size_t pivot = nr;
        for (std::size_t r = rank; r < nr; ++r) {
            if (get_bit(rows[r], col)) {
                pivot = r;
                break;
            }
        }
        if (pivot == nr)
            continue;
        std::swap(rows[rank], rows[pivot]);
        // Rows are cleared independently of one another, so the update loop
        // is order-free and the result matches the serial kernel exactly.
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::size_t r = rank + 1; r < nr; ++r)
            if (get_bit(rows[r], col))
                xor_into(rows[r], rows[rank]);
        ++rank;
    }
    return rank;
}

std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> rows,
                     std::size_t ncols, ExecMode mode) {
    return mode == ExecMode::parallel ? gf2_rank_parallel(std::move(rows), ncols)
                                      : gf2_rank_serial(std::move(rows), ncols);
}

} // namespace kernels

} // namespace walab
