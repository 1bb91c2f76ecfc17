#include "gbpd/tensor.hpp"

#include <algorithm>
#include <limits>

namespace gbpd {

namespace {
constexpr double kLogFloor = 1e-300;
}

int Space::card(Var v) const {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    if (it == vars.end() || *it != v)
        throw PreconditionError("variable " + std::to_string(v) + " not declared");
    return cards[static_cast<std::size_t>(it - vars.begin())];
}

Shape Space::shape(const Region& r) const {
    Shape s;
    s.vars = r.vars();
    s.cards.reserve(s.vars.size());
    for (Var v : s.vars) s.cards.push_back(card(v));
    return s;
}

Tensor::Tensor(Shape shape, std::vector<double> values)
    : shape_(std::move(shape)), v_(std::move(values)) {
    if (v_.size() != shape_.size())
        throw PreconditionError("table length does not match shape size");
}

Tensor& Tensor::operator+=(const Tensor& o) {
    if (!(shape_ == o.shape_)) throw PreconditionError("tensor shape mismatch in +");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
    if (!(shape_ == o.shape_)) throw PreconditionError("tensor shape mismatch in -");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
}

Tensor& Tensor::operator*=(double s) {
    for (double& x : v_) x *= s;
    return *this;
}

double Tensor::sup_norm() const {
    double m = 0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
}

double Tensor::sum() const {
    double s = 0;
    for (double x : v_) s += x;
    return s;
}

bool Tensor::finite() const {
    for (double x : v_)
        if (!std::isfinite(x)) return false;
    return true;
}

Belief::Belief(Tensor p) : p_(std::move(p)) {
    double s = 0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
        if (!(p_[i] > 0))
            throw PreconditionError("belief entries must be strictly positive");
        s += p_[i];
    }
    if (std::abs(s - 1.0) > 1e-12)
        throw PreconditionError("belief does not sum to one");
}

FiberIndexer::FiberIndexer(const Shape& outer, const Shape& inner) {
    if (!outer.region().contains(inner.region()))
        throw PreconditionError("region " + inner.region().str() +
                                " is not contained in " + outer.region().str());
    cards_ = outer.cards;
    inner_stride_.assign(cards_.size(), 0);
    // strides of inner, slowest-first like the layout
    std::vector<std::size_t> istr(inner.cards.size(), 1);
    for (std::size_t k = inner.cards.size(); k-- > 1;)
        istr[k - 1] = istr[k] * static_cast<std::size_t>(inner.cards[k]);
    for (std::size_t k = 0, j = 0; k < outer.vars.size(); ++k) {
        if (j < inner.vars.size() && inner.vars[j] == outer.vars[k]) {
            if (inner.cards[j] != outer.cards[k])
                throw PreconditionError("cardinality mismatch on variable " +
                                        std::to_string(outer.vars[k]));
            inner_stride_[k] = istr[j];
            ++j;
        } else {
            fiber_size_ *= static_cast<std::size_t>(outer.cards[k]);
        }
    }
    outer_size_ = outer.size();
}

Tensor extend(const Tensor& u, const Shape& target) {
    FiberIndexer ix(target, u.shape());
    Tensor out(target);
    ix.for_each([&](std::size_t ia, std::size_t ib) { out[ia] = u[ib]; });
    return out;
}

Tensor partial_sum(const Tensor& w, const Shape& target) {
    FiberIndexer ix(w.shape(), target);
    Tensor out(target);
    ix.for_each([&](std::size_t ia, std::size_t ib) { out[ib] += w[ia]; });
    return out;
}

Tensor restrict_mean(const Tensor& u, const Shape& target) {
    FiberIndexer ix(u.shape(), target);
    Tensor out = partial_sum(u, target);
    out *= 1.0 / static_cast<double>(ix.fiber_size());
    return out;
}

Belief gibbs(const Tensor& H, double theta) {
    if (!(theta > 0)) throw PreconditionError("temperature parameter must be positive");
    if (!H.finite()) throw PreconditionError("non-finite energy in gibbs");
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < H.size(); ++i) m = std::min(m, H[i]);
    Tensor p(H.shape());
    double z = 0;
    for (std::size_t i = 0; i < H.size(); ++i) {
        p[i] = std::exp(-theta * (H[i] - m));
        z += p[i];
    }
    bool floored = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] /= z;
        if (p[i] == 0.0) { // underflow of an extreme tail
            p[i] = kLogFloor;
            floored = true;
        }
    }
    if (floored) {
        double s = p.sum();
        for (std::size_t i = 0; i < p.size(); ++i) p[i] /= s;
    }
    return Belief(std::move(p));
}

Tensor conditional_expectation(const Tensor& H, const Tensor& f, const Shape& target) {
    if (!(H.shape() == f.shape()))
        throw PreconditionError("energy and observable shapes differ");
    Belief p = gibbs(H);
    Tensor num = partial_sum(elementwise_mul(f, p.density()), target);
    Tensor den = partial_sum(p.density(), target);
    Tensor out(target);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = num[i] / den[i];
    return out;
}

double inner(const Tensor& u, const Tensor& v) {
    if (!(u.shape() == v.shape())) throw PreconditionError("shape mismatch in inner");
    double s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

double inner(const Tensor& u, const Tensor& v, const Belief& weight) {
    if (!(u.shape() == v.shape()) || !(u.shape() == weight.shape()))
        throw PreconditionError("shape mismatch in weighted inner");
    double s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i] * weight.density()[i];
    return s;
}

Tensor safe_log(const Tensor& u) {
    Tensor out(u.shape());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] > 0)) throw NumericError("log of non-positive value");
        out[i] = std::log(std::max(u[i], kLogFloor));
    }
    return out;
}

Tensor elementwise_exp(const Tensor& u) {
    Tensor out(u.shape());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::exp(u[i]);
    return out;
}

Tensor elementwise_mul(const Tensor& u, const Tensor& v) {
    if (!(u.shape() == v.shape())) throw PreconditionError("shape mismatch in product");
    Tensor out(u.shape());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * v[i];
    return out;
}

} // namespace gbpd
