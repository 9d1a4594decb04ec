#pragma once
/**
 * @file cohomology.hpp
 * @brief Nijenhuis (left-symmetric) and Hochschild (associative) cochain
 * complexes, their cocycle spaces, and the correspondence between scalar
 * 2-forms and operators given by a scalar product.
 */
#include "fflat/algebra.hpp"
#include "fflat/metric.hpp"
#include "fflat/residual.hpp"

#include <stdexcept>
#include <vector>

namespace fflat {

enum class Flavor { nijenhuis, hochschild };

inline const char* to_string(Flavor f) { return f == Flavor::nijenhuis ? "nijenhuis" : "hochschild"; }

/**
 * Left action x |> v and right action v <| x of an algebra on a carrier space
 * V = Q^m, stored as one m x m matrix per basis element of the algebra.
 * For the Nijenhuis flavor the algebra is read as a left-symmetric product,
 * for the Hochschild flavor as an associative one.
 */
class BimoduleSpec {
public:
    BimoduleSpec() = default;
    BimoduleSpec(AlgebraTable algebra, std::size_t carrier, std::vector<RatMatrix> left, std::vector<RatMatrix> right,
                 Flavor flavor, Validation validation = Validation::checked)
        : algebra_(std::move(algebra)), carrier_(carrier), left_(std::move(left)), right_(std::move(right)),
          flavor_(flavor) {
        require_same(left_.size(), algebra_.dim(), "left action count");
        require_same(right_.size(), algebra_.dim(), "right action count");
        for (const auto* side : {&left_, &right_})
            for (const auto& m : *side)
                if (m.rows() != carrier_ || m.cols() != carrier_)
                    throw DimensionError("action matrices must be carrier x carrier");
        valid_ = axioms().all_zero();
        if (validation == Validation::checked && !valid_)
            throw AxiomError(std::string("bimodule axioms fail for the ") + to_string(flavor_) + " flavor");
    }

    /// Zero actions on Q^m.
    static BimoduleSpec trivial(const AlgebraTable& alg, Flavor flavor, std::size_t carrier = 1) {
        std::vector<RatMatrix> z(alg.dim(), RatMatrix(carrier, carrier));
        return BimoduleSpec(alg, carrier, z, z, flavor);
    }
    /// The algebra acting on itself by left and right multiplication.
    static BimoduleSpec regular(const AlgebraTable& alg, Flavor flavor) {
        return BimoduleSpec(alg, alg.dim(), lefts(alg), rights(alg), flavor);
    }
    /// Left multiplication, zero right action.
    static BimoduleSpec left_only(const AlgebraTable& alg, Flavor flavor) {
        return BimoduleSpec(alg, alg.dim(), lefts(alg), zeros(alg), flavor);
    }
    /// Zero left action, right multiplication v <| x = v x.
    static BimoduleSpec right_only(const AlgebraTable& alg, Flavor flavor) {
        return BimoduleSpec(alg, alg.dim(), zeros(alg), rights(alg), flavor);
    }

    /// Same module in the carrier basis given by the columns of p.
    [[nodiscard]] BimoduleSpec conjugate(const RatMatrix& p) const {
        auto pinv = inverse(p);
        if (!pinv || p.rows() != carrier_) throw std::invalid_argument("conjugate: need an invertible carrier matrix");
        std::vector<RatMatrix> l, r;
        for (const auto& m : left_) l.push_back(*pinv * m * p);
        for (const auto& m : right_) r.push_back(*pinv * m * p);
        return BimoduleSpec(algebra_, carrier_, l, r, flavor_, valid_ ? Validation::checked : Validation::unchecked);
    }

    [[nodiscard]] const AlgebraTable& algebra() const { return algebra_; }
    [[nodiscard]] std::size_t dim() const { return algebra_.dim(); }
    [[nodiscard]] std::size_t carrier() const { return carrier_; }
    [[nodiscard]] Flavor flavor() const { return flavor_; }
    [[nodiscard]] bool valid() const { return valid_; }
    [[nodiscard]] const std::vector<RatMatrix>& left() const { return left_; }
    [[nodiscard]] const std::vector<RatMatrix>& right() const { return right_; }

    [[nodiscard]] RatMatrix left_matrix(const RatVector& x) const { return combine(left_, x); }
    [[nodiscard]] RatMatrix right_matrix(const RatVector& x) const { return combine(right_, x); }
    [[nodiscard]] RatVector act_left(const RatVector& x, const RatVector& v) const { return left_matrix(x) * v; }
    [[nodiscard]] RatVector act_right(const RatVector& v, const RatVector& x) const { return right_matrix(x) * v; }

    /// Residuals of the flavor's compatibility conditions, as operators on V per basis pair.
    [[nodiscard]] ResidualReport axioms() const {
        const std::size_t n = dim(), m = carrier_;
        auto e = [n](std::size_t i) { return unit_vector(n, i); };
        auto op = [&](const char* name, auto&& fn) {
            Residual r(name, {n, n, m}, m);
            r.fill([&](auto idx) { return fn(idx[0], idx[1]) * unit_vector(m, idx[2]); });
            return r;
        };
        ResidualReport rep;
        if (flavor_ == Flavor::nijenhuis) {
            rep.add(op("bimodule:left-commutator", [&](std::size_t i, std::size_t j) {
                auto br = algebra_.product(i, j) - algebra_.product(j, i);
                return commutator(left_[i], left_[j]) - left_matrix(br);
            }));
            // x|>(v<|y) - (x|>v)<|y - v<|(x*y) + (v<|x)<|y, as an operator in v
            rep.add(op("bimodule:mixed", [&](std::size_t i, std::size_t j) {
                return left_[i] * right_[j] - right_[j] * left_[i] - right_matrix(algebra_.product(i, j)) +
                       right_[j] * right_[i];
            }));
        } else {
            rep.add(op("bimodule:left", [&](std::size_t i, std::size_t j) {
                return left_matrix(algebra_.multiply(e(i), e(j))) - left_[i] * left_[j];
            }));
            rep.add(op("bimodule:middle", [&](std::size_t i, std::size_t j) {
                return right_[j] * left_[i] - left_[i] * right_[j];
            }));
            rep.add(op("bimodule:right", [&](std::size_t i, std::size_t j) {
                return right_[j] * right_[i] - right_matrix(algebra_.multiply(e(i), e(j)));
            }));
        }
        return rep;
    }

private:
    static std::vector<RatMatrix> lefts(const AlgebraTable& alg) {
        std::vector<RatMatrix> out;
        for (std::size_t i = 0; i < alg.dim(); ++i) out.push_back(left_mult(alg, unit_vector(alg.dim(), i)));
        return out;
    }
    static std::vector<RatMatrix> rights(const AlgebraTable& alg) {
        std::vector<RatMatrix> out;
        for (std::size_t i = 0; i < alg.dim(); ++i) out.push_back(right_mult(alg, unit_vector(alg.dim(), i)));
        return out;
    }
    static std::vector<RatMatrix> zeros(const AlgebraTable& alg) {
        return std::vector<RatMatrix>(alg.dim(), RatMatrix(alg.dim(), alg.dim()));
    }
    RatMatrix combine(const std::vector<RatMatrix>& ms, const RatVector& x) const {
        require_same(x.size(), dim(), "action element");
        RatMatrix out(carrier_, carrier_);
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!x[i].is_zero()) out += x[i] * ms[i];
        return out;
    }

    AlgebraTable algebra_;
    std::size_t carrier_ = 0;
    std::vector<RatMatrix> left_, right_;
    Flavor flavor_ = Flavor::hochschild;
    bool valid_ = false;
};

/// A p-linear map g^p -> V stored densely: values[(i_1..i_p) * m + k].
class Cochain {
public:
    Cochain() = default;
    Cochain(std::size_t degree, std::size_t dim, std::size_t carrier)
        : degree_(degree), dim_(dim), carrier_(carrier), values_(slots(degree, dim) * carrier) {}
    Cochain(std::size_t degree, std::size_t dim, std::size_t carrier, RatVector values)
        : degree_(degree), dim_(dim), carrier_(carrier), values_(std::move(values)) {
        require_same(values_.size(), slots(degree, dim) * carrier, "cochain values");
    }

    /// Degree 1: f(e_j) is column j of m.
    static Cochain from_matrix(const RatMatrix& m) {
        Cochain c(1, m.cols(), m.rows());
        for (std::size_t j = 0; j < m.cols(); ++j) c.set({j}, m.col(j));
        return c;
    }
    /// Degree 2, scalar: f(e_i, e_j) = m(i, j).
    static Cochain from_form(const RatMatrix& m) {
        if (!m.square()) throw DimensionError("bilinear form must be square");
        Cochain c(2, m.rows(), 1);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) c.values_[i * m.cols() + j] = m(i, j);
        return c;
    }

    [[nodiscard]] std::size_t degree() const { return degree_; }
    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] std::size_t carrier() const { return carrier_; }
    [[nodiscard]] const RatVector& values() const { return values_; }
    [[nodiscard]] bool is_zero() const { return fflat::is_zero(values_); }

    [[nodiscard]] RatMatrix to_matrix() const {
        if (degree_ != 1) throw DimensionError("to_matrix needs a 1-cochain");
        RatMatrix m(carrier_, dim_);
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < carrier_; ++k) m(k, j) = values_[j * carrier_ + k];
        return m;
    }
    [[nodiscard]] RatMatrix to_form() const {
        if (degree_ != 2 || carrier_ != 1) throw DimensionError("to_form needs a scalar 2-cochain");
        RatMatrix m(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) m(i, j) = values_[i * dim_ + j];
        return m;
    }

    [[nodiscard]] RatVector at(std::span<const std::size_t> idx) const {
        auto b = values_.begin() + static_cast<std::ptrdiff_t>(offset(idx));
        return RatVector(b, b + static_cast<std::ptrdiff_t>(carrier_));
    }
    void set(std::span<const std::size_t> idx, const RatVector& v) {
        require_same(v.size(), carrier_, "cochain value");
        std::copy(v.begin(), v.end(), values_.begin() + static_cast<std::ptrdiff_t>(offset(idx)));
    }
    void set(std::initializer_list<std::size_t> idx, const RatVector& v) {
        set(std::span<const std::size_t>(idx.begin(), idx.size()), v);
    }

    /// f(args...) by multilinear expansion.
    [[nodiscard]] RatVector eval(const std::vector<RatVector>& args) const {
        require_same(args.size(), degree_, "cochain arity");
        RatVector out(carrier_);
        std::vector<std::size_t> idx(degree_, 0);
        expand(args, idx, 0, Rat(1), out);
        return out;
    }

    friend bool operator==(const Cochain& a, const Cochain& b) {
        return a.degree_ == b.degree_ && a.dim_ == b.dim_ && a.carrier_ == b.carrier_ && a.values_ == b.values_;
    }

    static std::size_t slots(std::size_t degree, std::size_t dim) {
        std::size_t s = 1;
        for (std::size_t k = 0; k < degree; ++k) s *= dim;
        return s;
    }

private:
    std::size_t offset(std::span<const std::size_t> idx) const {
        require_same(idx.size(), degree_, "cochain index arity");
        std::size_t s = 0;
        for (auto i : idx) s = s * dim_ + i;
        return s * carrier_;
    }
    void expand(const std::vector<RatVector>& args, std::vector<std::size_t>& idx, std::size_t pos, const Rat& coeff,
                RatVector& out) const {
        if (pos == degree_) {
            axpy(out, coeff, at(idx));
            return;
        }
        require_same(args[pos].size(), dim_, "cochain argument");
        for (std::size_t i = 0; i < dim_; ++i) {
            if (args[pos][i].is_zero()) continue;
            idx[pos] = i;
            expand(args, idx, pos + 1, coeff * args[pos][i], out);
        }
    }

    std::size_t degree_ = 0, dim_ = 0, carrier_ = 0;
    RatVector values_;
};

namespace detail {

inline Rat sign(std::size_t k) { return k % 2 == 0 ? Rat(1) : Rat(-1); }

/**
 * (delta f)(x_0..x_p) =
 *     sum_{i<p} (-1)^i x_i |> f(.. ^x_i .. x_p)
 *   + sum_{i<p} (-1)^i f(.. ^x_i .. x_{p-1}, x_i) <| x_p
 *   - sum_{i<j<p} (-1)^{i+j+1} f([x_i,x_j], .. ^x_i .. ^x_j .. x_p)
 *   - sum_{i<p} (-1)^i f(.. ^x_i .. x_{p-1}, x_i * x_p)
 * with [x,y] = x*y - y*x. Every sum is empty for p = 0.
 */
inline RatVector nijenhuis_value(const Cochain& f, const BimoduleSpec& bm, const std::vector<RatVector>& xs) {
    const std::size_t p = f.degree();
    const auto& alg = bm.algebra();
    RatVector out(bm.carrier());
    auto without = [&](std::size_t skip, std::size_t upto) {
        std::vector<RatVector> r;
        for (std::size_t k = 0; k < upto; ++k)
            if (k != skip) r.push_back(xs[k]);
        return r;
    };
    for (std::size_t i = 0; i < p; ++i) {
        const Rat s = sign(i);
        axpy(out, s, bm.act_left(xs[i], f.eval(without(i, p + 1))));
        auto moved = without(i, p);
        moved.push_back(xs[i]);
        axpy(out, s, bm.act_right(f.eval(moved), xs[p]));
        auto prod = without(i, p);
        prod.push_back(alg.multiply(xs[i], xs[p]));
        axpy(out, -s, f.eval(prod));
    }
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
            std::vector<RatVector> args{alg.multiply(xs[i], xs[j]) - alg.multiply(xs[j], xs[i])};
            for (std::size_t k = 0; k <= p; ++k)
                if (k != i && k != j) args.push_back(xs[k]);
            axpy(out, -sign(i + j + 1), f.eval(args));
        }
    return out;
}

/**
 * (delta f)(x_0..x_p) = x_0 |> f(x_1..x_p)
 *   + sum_{i<p} (-1)^{i+1} f(.. x_i o x_{i+1} ..) + (-1)^{p+1} f(x_0..x_{p-1}) <| x_p
 */
inline RatVector hochschild_value(const Cochain& f, const BimoduleSpec& bm, const std::vector<RatVector>& xs) {
    const std::size_t p = f.degree();
    const auto& alg = bm.algebra();
    RatVector out = bm.act_left(xs[0], f.eval(std::vector<RatVector>(xs.begin() + 1, xs.end())));
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<RatVector> args(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(i));
        args.push_back(alg.multiply(xs[i], xs[i + 1]));
        args.insert(args.end(), xs.begin() + static_cast<std::ptrdiff_t>(i + 2), xs.end());
        axpy(out, sign(i + 1), f.eval(args));
    }
    axpy(out, sign(p + 1), bm.act_right(f.eval(std::vector<RatVector>(xs.begin(), xs.end() - 1)), xs[p]));
    return out;
}

} // namespace detail

inline constexpr std::size_t max_cochain_degree = 3;

inline Cochain delta(const Cochain& f, const BimoduleSpec& bm) {
    if (!bm.valid()) throw AxiomError("delta: bimodule axioms do not hold");
    if (f.degree() > max_cochain_degree) throw std::invalid_argument("delta: degree above 3 is not supported");
    require_same(f.dim(), bm.dim(), "cochain dimension");
    require_same(f.carrier(), bm.carrier(), "cochain carrier");
    const std::size_t n = bm.dim(), p = f.degree();
    Cochain out(p + 1, n, bm.carrier());
    std::vector<std::size_t> idx(p + 1, 0);
    for (std::size_t s = 0; s < Cochain::slots(p + 1, n); ++s) {
        std::size_t rem = s;
        for (std::size_t k = p + 1; k-- > 0;) {
            idx[k] = rem % n;
            rem /= n;
        }
        std::vector<RatVector> xs;
        for (auto i : idx) xs.push_back(unit_vector(n, i));
        out.set(idx, bm.flavor() == Flavor::nijenhuis ? detail::nijenhuis_value(f, bm, xs)
                                                       : detail::hochschild_value(f, bm, xs));
    }
    return out;
}

/// Matrix of delta_p acting on flattened cochain values.
inline RatMatrix delta_matrix(std::size_t p, const BimoduleSpec& bm) {
    const std::size_t n = bm.dim(), m = bm.carrier();
    const std::size_t cols = Cochain::slots(p, n) * m, rows = Cochain::slots(p + 1, n) * m;
    RatMatrix out(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        auto img = delta(Cochain(p, n, m, unit_vector(cols, c)), bm);
        for (std::size_t r = 0; r < rows; ++r) out(r, c) = img.values()[r];
    }
    return out;
}

inline std::vector<Cochain> cocycle_basis(std::size_t p, const BimoduleSpec& bm) {
    std::vector<Cochain> out;
    for (auto& v : null_space(delta_matrix(p, bm))) out.emplace_back(p, bm.dim(), bm.carrier(), std::move(v));
    return out;
}

/// Image of delta_{p-1}; empty in degree 0.
inline std::vector<Cochain> coboundary_basis(std::size_t p, const BimoduleSpec& bm) {
    std::vector<Cochain> out;
    if (p == 0) return out;
    const auto d = delta_matrix(p - 1, bm);
    std::vector<RatVector> cols;
    for (std::size_t c = 0; c < d.cols(); ++c) cols.push_back(d.col(c));
    for (auto& v : span_basis(cols, d.rows())) out.emplace_back(p, bm.dim(), bm.carrier(), std::move(v));
    return out;
}

/// Basis of {u : u([x,y]) = x*u(y) - y*u(x)}, unknowns u(r,c) flattened row-major.
inline std::vector<RatMatrix> z1_ce_L(const AlgebraTable& bracket, const AlgebraTable& levi) {
    require_same(bracket.dim(), levi.dim(), "z1_ce_L");
    const std::size_t n = bracket.dim();
    RatMatrix sys(n * n * n, n * n);
    for (std::size_t c = 0; c < n * n; ++c) {
        RatMatrix u(n, n);
        u(c / n, c % n) = 1;
        std::size_t row = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto x = unit_vector(n, i), y = unit_vector(n, j);
                auto res = u * bracket.multiply(x, y) - levi.multiply(x, u * y) + levi.multiply(y, u * x);
                for (std::size_t k = 0; k < n; ++k) sys(row++, c) = res[k];
            }
    }
    std::vector<RatMatrix> out;
    for (const auto& v : null_space(sys)) {
        RatMatrix u(n, n);
        for (std::size_t c = 0; c < n * n; ++c) u(c / n, c % n) = v[c];
        out.push_back(std::move(u));
    }
    return out;
}

/// Basis of {v : v(x o y) = v(x) o y}, the Hochschild 1-cocycles for the right regular action.
inline std::vector<RatMatrix> z1_as_r(const AlgebraTable& circ) {
    std::vector<RatMatrix> out;
    for (const auto& c : cocycle_basis(1, BimoduleSpec::right_only(circ, Flavor::hochschild)))
        out.push_back(c.to_matrix());
    return out;
}

/// theta(x, y) = <v(x), y>, i.e. the Gram-type matrix v^T G.
inline Cochain theta_from_v(const RatMatrix& v, const ScalarProduct& metric) {
    if (v.rows() != metric.dim() || v.cols() != metric.dim()) throw DimensionError("theta_from_v: size mismatch");
    return Cochain::from_form(v.transpose() * metric.gram());
}

/// Inverse of theta_from_v: v = G^{-1} theta^T.
inline RatMatrix v_from_theta(const Cochain& theta, const ScalarProduct& metric) {
    const auto t = theta.to_form();
    require_same(t.rows(), metric.dim(), "v_from_theta");
    return metric.gram_inverse() * t.transpose();
}

} // namespace fflat
