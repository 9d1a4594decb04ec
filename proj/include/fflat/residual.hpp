#pragma once
/**
 * @file residual.hpp
 * @brief Named exact residuals of algebraic identities.
 *
 * A Residual is a dense array indexed by a tuple of basis indices, each slot
 * holding a small vector of components (width). A scalar identity has an
 * empty index shape and width 1; an operator identity M = 0 on an n-dim space
 * has shape {n} (the basis vector fed in) and width n.
 */
#include "fflat/linalg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fflat {

struct Residual {
    std::string name;
    std::vector<std::size_t> shape;
    std::size_t width = 1;
    std::vector<Rat> values;

    Residual() = default;
    Residual(std::string name_, std::vector<std::size_t> shape_, std::size_t width_)
        : name(std::move(name_)), shape(std::move(shape_)), width(width_) {
        std::size_t count = width;
        for (auto s : shape) count *= s;
        values.resize(count);
    }

    [[nodiscard]] std::size_t slots() const {
        std::size_t c = 1;
        for (auto s : shape) c *= s;
        return c;
    }
    [[nodiscard]] bool zero() const { return is_zero(values); }

    /// Flat slot index of an index tuple (row-major over shape).
    [[nodiscard]] std::size_t slot(std::span<const std::size_t> idx) const {
        if (idx.size() != shape.size()) throw DimensionError("residual index arity mismatch");
        std::size_t s = 0;
        for (std::size_t k = 0; k < idx.size(); ++k) s = s * shape[k] + idx[k];
        return s;
    }
    void set(std::span<const std::size_t> idx, const RatVector& v) {
        require_same(v.size(), width, "residual component count");
        std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(slot(idx) * width));
    }
    void set(std::initializer_list<std::size_t> idx, const RatVector& v) {
        set(std::span<const std::size_t>(idx.begin(), idx.size()), v);
    }
    [[nodiscard]] RatVector get(std::span<const std::size_t> idx) const {
        auto b = values.begin() + static_cast<std::ptrdiff_t>(slot(idx) * width);
        return RatVector(b, b + static_cast<std::ptrdiff_t>(width));
    }
    [[nodiscard]] RatVector get(std::initializer_list<std::size_t> idx) const {
        return get(std::span<const std::size_t>(idx.begin(), idx.size()));
    }

    /// Calls fn(index tuple) for every slot in row-major order.
    template <class Fn>
    void for_each_index(Fn&& fn) const {
        std::vector<std::size_t> idx(shape.size(), 0);
        for (std::size_t s = 0; s < slots(); ++s) {
            std::size_t rem = s;
            for (std::size_t k = shape.size(); k-- > 0;) {
                idx[k] = rem % shape[k];
                rem /= shape[k];
            }
            fn(std::span<const std::size_t>(idx));
        }
    }

    /// Fills every slot from fn(index tuple) -> component vector.
    template <class Fn>
    void fill(Fn&& fn) {
        for_each_index([&](std::span<const std::size_t> idx) { set(idx, fn(idx)); });
    }

    static Residual scalar(std::string name, const Rat& value) {
        Residual r(std::move(name), {}, 1);
        r.values[0] = value;
        return r;
    }
    static Residual vector(std::string name, const RatVector& v) {
        Residual r(std::move(name), {}, v.size());
        r.values = v;
        return r;
    }
    /// Operator identity: slot i holds M e_i (column i).
    static Residual operator_(std::string name, const RatMatrix& m) {
        Residual r(std::move(name), {m.cols()}, m.rows());
        for (std::size_t j = 0; j < m.cols(); ++j) r.set({j}, m.col(j));
        return r;
    }
};

class ResidualReport {
public:
    ResidualReport() = default;
    explicit ResidualReport(std::vector<Residual> items) : items_(std::move(items)) {}

    void add(Residual r) { items_.push_back(std::move(r)); }
    void merge(const ResidualReport& other) {
        items_.insert(items_.end(), other.items_.begin(), other.items_.end());
    }

    [[nodiscard]] bool all_zero() const {
        return std::all_of(items_.begin(), items_.end(), [](const Residual& r) { return r.zero(); });
    }
    [[nodiscard]] const std::vector<Residual>& items() const { return items_; }
    [[nodiscard]] bool contains(std::string_view name) const {
        return std::any_of(items_.begin(), items_.end(), [&](const Residual& r) { return r.name == name; });
    }
    [[nodiscard]] const Residual& operator[](std::string_view name) const {
        for (const auto& r : items_)
            if (r.name == name) return r;
        throw std::out_of_range("no residual named '" + std::string(name) + "'");
    }
    [[nodiscard]] std::vector<std::string> failing() const {
        std::vector<std::string> out;
        for (const auto& r : items_)
            if (!r.zero()) out.push_back(r.name);
        return out;
    }

    /**
     * Text form: a summary line per residual ("name: zero" / "name: NONZERO"),
     * followed by one line per failing index tuple with its exact components.
     */
    [[nodiscard]] std::string to_text() const {
        std::ostringstream os;
        for (const auto& r : items_) {
            os << r.name << ": " << (r.zero() ? "zero" : "NONZERO") << '\n';
            if (r.zero()) continue;
            r.for_each_index([&](std::span<const std::size_t> idx) {
                auto v = r.get(idx);
                if (is_zero(v)) return;
                os << "  " << r.name << '[';
                for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << idx[k];
                os << "] = (";
                for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << v[k];
                os << ")\n";
            });
        }
        return os.str();
    }

private:
    std::vector<Residual> items_;
};

} // namespace fflat
