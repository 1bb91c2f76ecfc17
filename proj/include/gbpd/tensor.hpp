#pragma once

#include <cmath>
#include <vector>

#include "gbpd/region.hpp"

namespace gbpd {

/// Per-variable state-space sizes for the whole system.
struct Space {
    std::vector<Var> vars;  // sorted ascending
    std::vector<int> cards; // aligned with vars, all >= 1

    int card(Var v) const;
    struct Shape shape(const Region& r) const;
};

/// Shape of a dense table over E_r = ∏_{i∈r} E_i. Variables sorted
/// ascending; the smallest id varies slowest (row-major), fixed globally so
/// serialized tables are unambiguous.
struct Shape {
    std::vector<Var> vars;
    std::vector<int> cards;

    std::size_t size() const {
        std::size_t n = 1;
        for (int c : cards) n *= static_cast<std::size_t>(c);
        return n;
    }
    Region region() const { return Region(vars); }

    friend bool operator==(const Shape& a, const Shape& b) {
        return a.vars == b.vars && a.cards == b.cards;
    }
};

/// Dense real tensor over a finite configuration space. Used both for
/// observables (energies) and densities; the empty shape is a scalar.
class Tensor {
public:
    Tensor() : shape_{{}, {}}, v_(1, 0.0) {}
    explicit Tensor(Shape shape, double fill = 0.0)
        : shape_(std::move(shape)), v_(shape_.size(), fill) {}
    Tensor(Shape shape, std::vector<double> values);

    static Tensor scalar(double x) {
        Tensor t;
        t.v_[0] = x;
        return t;
    }

    const Shape& shape() const { return shape_; }
    std::size_t size() const { return v_.size(); }
    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    double& operator[](std::size_t i) { return v_[i]; }
    double operator[](std::size_t i) const { return v_[i]; }
    const std::vector<double>& values() const { return v_; }

    Tensor& operator+=(const Tensor& o);
    Tensor& operator-=(const Tensor& o);
    Tensor& operator*=(double s);
    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend Tensor operator*(double s, Tensor a) { return a *= s; }

    double sup_norm() const;
    double sum() const;
    bool finite() const;

private:
    Shape shape_;
    std::vector<double> v_;
};

using Observable = Tensor;
using Density = Tensor;

/// Strictly positive density summing to one.
class Belief {
public:
    explicit Belief(Tensor p);
    const Tensor& density() const { return p_; }
    const Shape& shape() const { return p_.shape(); }

private:
    Tensor p_;
};

/// Walks all cells of `outer` while tracking the linear index of the
/// projection onto the sub-shape `inner` (inner.vars ⊆ outer.vars).
class FiberIndexer {
public:
    FiberIndexer(const Shape& outer, const Shape& inner);

    std::size_t outer_size() const { return outer_size_; }
    std::size_t fiber_size() const { return fiber_size_; } // |E_{outer∖inner}|

    template <class F>
    void for_each(F&& f) const { // f(outer_index, inner_index)
        const auto n = outer_size_;
        std::vector<int> coord(cards_.size(), 0);
        std::size_t ib = 0;
        for (std::size_t ia = 0; ia < n; ++ia) {
            f(ia, ib);
            for (std::size_t k = cards_.size(); k-- > 0;) {
                if (++coord[k] < cards_[k]) {
                    ib += inner_stride_[k];
                    break;
                }
                coord[k] = 0;
                ib -= inner_stride_[k] * static_cast<std::size_t>(cards_[k] - 1);
            }
        }
    }

private:
    std::vector<int> cards_;                 // outer cards, slowest first
    std::vector<std::size_t> inner_stride_;  // 0 for summed-out variables
    std::size_t outer_size_ = 1;
    std::size_t fiber_size_ = 1;
};

/// Cylindrical extension of u to the target shape (u's region ⊆ target's).
Tensor extend(const Tensor& u, const Shape& target);

/// (Σ^{ba} w)(x_b) = Σ_{x' ∈ E_{a∖b}} w(x_b, x').
Tensor partial_sum(const Tensor& w, const Shape& target);

/// Average over the fiber; inverse of extend on cylindrical tensors.
Tensor restrict_mean(const Tensor& u, const Shape& target);

/// Gibbs density p = e^{-θH} / Σ e^{-θH}, min-shifted so large energies
/// cannot overflow.
Belief gibbs(const Tensor& H, double theta = 1.0);

/// E^{ba}[f] = Σ^{ba}(f·p) / Σ^{ba}(p) with p = gibbs(H); b = ∅ gives the
/// scalar Gibbs expectation.
Tensor conditional_expectation(const Tensor& H, const Tensor& f, const Shape& target);

/// Counting inner product Σ u·v.
double inner(const Tensor& u, const Tensor& v);
/// Weighted expectation E_p[u·v].
double inner(const Tensor& u, const Tensor& v, const Belief& weight);

/// Elementwise ln with positivity floor 1e-300.
Tensor safe_log(const Tensor& u);
Tensor elementwise_exp(const Tensor& u);
Tensor elementwise_mul(const Tensor& u, const Tensor& v);

} // namespace gbpd
