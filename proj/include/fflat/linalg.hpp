#pragma once
/**
 * @file linalg.hpp
 * @brief Dense exact linear and multilinear algebra over Rat.
 *
 * Everything here is tiny-dimension dense code (n <= ~12). Elimination uses a
 * fixed pivot rule (first nonzero entry in the current column, scanning rows
 * top to bottom) so kernels and solutions are reproducible byte for byte.
 */
#include "fflat/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fflat {

/// Thrown when operands have incompatible dimensions.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using RatVector = std::vector<Rat>;

inline RatVector zero_vector(std::size_t n) { return RatVector(n); }

inline RatVector unit_vector(std::size_t n, std::size_t i) {
    RatVector v(n);
    v.at(i) = 1;
    return v;
}

inline bool is_zero(std::span<const Rat> v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline void require_same(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
}

inline RatVector operator+(RatVector a, const RatVector& b) {
    require_same(a.size(), b.size(), "vector add");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
inline RatVector operator-(RatVector a, const RatVector& b) {
    require_same(a.size(), b.size(), "vector sub");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}
inline RatVector operator-(RatVector a) {
    for (auto& x : a) x = -x;
    return a;
}
inline RatVector operator*(const Rat& c, RatVector a) {
    for (auto& x : a) x *= c;
    return a;
}
inline RatVector& operator+=(RatVector& a, const RatVector& b) {
    require_same(a.size(), b.size(), "vector add");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
inline RatVector& operator-=(RatVector& a, const RatVector& b) {
    require_same(a.size(), b.size(), "vector sub");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}
/// a += c * b
inline void axpy(RatVector& a, const Rat& c, const RatVector& b) {
    require_same(a.size(), b.size(), "axpy");
    if (c.is_zero()) return;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!b[i].is_zero()) a[i] += c * b[i];
}

inline Rat dot(const RatVector& a, const RatVector& b) {
    require_same(a.size(), b.size(), "dot");
    Rat s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RatMatrix(std::initializer_list<std::initializer_list<Rat>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionError("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static RatMatrix from_columns(const std::vector<RatVector>& cols, std::size_t rows) {
        RatMatrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            require_same(cols[j].size(), rows, "from_columns");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }
    static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
        RatMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require_same(rows[i].size(), cols, "from_rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool square() const { return rows_ == cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<const Rat> entries() const { return data_; }
    [[nodiscard]] RatVector row(std::size_t i) const {
        return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    [[nodiscard]] RatVector col(std::size_t j) const {
        RatVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    [[nodiscard]] bool is_zero() const { return fflat::is_zero(data_); }
    [[nodiscard]] bool is_symmetric() const {
        if (!square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    [[nodiscard]] RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RatMatrix& operator+=(const RatMatrix& o) {
        check_same_shape(o, "matrix add");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    RatMatrix& operator-=(const RatMatrix& o) {
        check_same_shape(o, "matrix sub");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    RatMatrix& operator*=(const Rat& c) {
        for (auto& x : data_) x *= c;
        return *this;
    }

    friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
    friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
    friend RatMatrix operator-(RatMatrix a) { return a *= Rat(-1); }
    friend RatMatrix operator*(const Rat& c, RatMatrix a) { return a *= c; }
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        require_same(a.cols_, b.rows_, "matrix product");
        RatMatrix p(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rat& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) p(i, j) += aik * b(k, j);
            }
        return p;
    }
    friend RatVector operator*(const RatMatrix& a, const RatVector& x) {
        require_same(a.cols_, x.size(), "matrix-vector product");
        RatVector y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                if (!a(i, j).is_zero() && !x[j].is_zero()) y[i] += a(i, j) * x[j];
        return y;
    }
    friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

private:
    void check_same_shape(const RatMatrix& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError(std::string(what) + ": shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

/// Commutator AB - BA.
inline RatMatrix commutator(const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; }

/// Reduced row echelon form plus the pivot column of each nonzero row.
struct Echelon {
    RatMatrix reduced;
    std::vector<std::size_t> pivots;
};

inline Echelon rref(RatMatrix m) {
    Echelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        const Rat inv = Rat(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Rat f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

inline std::size_t rank(const RatMatrix& a) { return rref(a).pivots.size(); }

/**
 * One exact solution of A x = b, or nullopt when the system is inconsistent.
 * Free variables are set to zero.
 */
inline std::optional<RatVector> solve_linear(const RatMatrix& a, const RatVector& b) {
    require_same(a.rows(), b.size(), "solve_linear");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
    RatVector x(a.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
    return x;
}

/**
 * Basis of ker A. One vector per free column, in increasing column order;
 * that free variable is 1, the other free variables 0.
 */
inline std::vector<RatVector> null_space(const RatMatrix& a) {
    auto e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector v(a.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& a) {
    if (!a.square()) throw DimensionError("inverse of non-square matrix");
    const std::size_t n = a.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    auto e = rref(std::move(aug));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

inline Rat determinant(RatMatrix m) {
    if (!m.square()) throw DimensionError("determinant of non-square matrix");
    const std::size_t n = m.rows();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            const Rat f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

/// True iff some power of the square matrix vanishes (checked up to its size).
inline bool is_nilpotent(const RatMatrix& m) {
    if (!m.square()) throw DimensionError("nilpotency of non-square matrix");
    RatMatrix p = m;
    for (std::size_t k = 1; k < m.rows(); ++k) {
        if (p.is_zero()) return true;
        p = p * m;
    }
    return p.is_zero();
}

/// Linearly independent subset-free test: rank equals count.
inline bool linearly_independent(const std::vector<RatVector>& vs, std::size_t dim) {
    if (vs.empty()) return true;
    return rank(RatMatrix::from_columns(vs, dim)) == vs.size();
}

/// Basis (pivot columns) of the span of the given vectors.
inline std::vector<RatVector> span_basis(const std::vector<RatVector>& vs, std::size_t dim) {
    if (vs.empty()) return {};
    auto e = rref(RatMatrix::from_columns(vs, dim));
    std::vector<RatVector> out;
    for (auto p : e.pivots) out.push_back(vs[p]);
    return out;
}

struct Signature {
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    std::size_t n_zero = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

/**
 * Inertia of a symmetric matrix by symmetric Gaussian congruence over Q.
 * A zero diagonal with a nonzero off-diagonal entry is handled by the
 * substitution e_k <- e_k + e_j before eliminating.
 */
inline Signature congruent_signature(RatMatrix s) {
    if (!s.is_symmetric()) throw std::invalid_argument("malformed scalar product: matrix is not symmetric");
    const std::size_t n = s.rows();
    Signature sig;
    for (std::size_t k = 0; k < n; ++k) {
        if (s(k, k).is_zero()) {
            std::size_t j = k + 1;
            while (j < n && s(j, j).is_zero()) ++j;
            if (j < n) {
                for (std::size_t t = 0; t < n; ++t) std::swap(s(k, t), s(j, t));
                for (std::size_t t = 0; t < n; ++t) std::swap(s(t, k), s(t, j));
            } else {
                j = k + 1;
                while (j < n && s(k, j).is_zero()) ++j;
                if (j == n) {
                    ++sig.n_zero;
                    continue;
                }
                // row_k += row_j, col_k += col_j; new diagonal is 2 s(k,j) + s(j,j) = 2 s(k,j)
                for (std::size_t t = 0; t < n; ++t) s(k, t) += s(j, t);
                for (std::size_t t = 0; t < n; ++t) s(t, k) += s(t, j);
            }
        }
        const Rat pivot = s(k, k);
        (pivot.sign() > 0 ? sig.n_plus : sig.n_minus)++;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (s(i, k).is_zero()) continue;
            const Rat f = s(i, k) / pivot;
            for (std::size_t t = k; t < n; ++t) s(i, t) -= f * s(k, t);
            for (std::size_t t = k; t < n; ++t) s(t, i) -= f * s(t, k);
        }
    }
    return sig;
}

/**
 * Dense rank-3 array of structure constants: at(i,j,k) is the coefficient of
 * e_k in e_i . e_j.
 */
class RatTensor3 {
public:
    RatTensor3() = default;
    explicit RatTensor3(std::size_t n) : n_(n), data_(n * n * n) {}

    [[nodiscard]] std::size_t dim() const { return n_; }
    Rat& at(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
    const Rat& at(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * n_ + j) * n_ + k]; }

    /// The product vector e_i . e_j.
    [[nodiscard]] RatVector product(std::size_t i, std::size_t j) const {
        auto b = data_.begin() + static_cast<std::ptrdiff_t>((i * n_ + j) * n_);
        return RatVector(b, b + static_cast<std::ptrdiff_t>(n_));
    }
    void set_product(std::size_t i, std::size_t j, const RatVector& v) {
        require_same(v.size(), n_, "set_product");
        for (std::size_t k = 0; k < n_; ++k) at(i, j, k) = v[k];
    }

    [[nodiscard]] bool is_zero() const { return fflat::is_zero(data_); }
    [[nodiscard]] std::span<const Rat> entries() const { return data_; }
    friend bool operator==(const RatTensor3&, const RatTensor3&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Rat> data_;
};

} // namespace fflat
