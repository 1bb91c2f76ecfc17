#include "gbpd/field.hpp"

namespace gbpd {

Complex::Complex(Hypergraph X, Space space)
    : X_(std::move(X)), space_(std::move(space)), mu_(mobius(X_)), nums_(mobius_numbers(X_)) {
    shapes_.reserve(static_cast<std::size_t>(X_.size()));
    for (int i = 0; i < X_.size(); ++i)
        shapes_.push_back(space_.shape(X_.member(i)));
}

void Complex::ensure_degree(int p) const {
    while (static_cast<int>(nerves_.size()) <= p) {
        int q = static_cast<int>(nerves_.size());
        nerves_.push_back(nerve(X_, q));
        std::map<Chain, int> ix;
        for (std::size_t k = 0; k < nerves_.back().size(); ++k)
            ix[nerves_.back()[k]] = static_cast<int>(k);
        chain_index_.push_back(std::move(ix));
    }
}

const std::vector<Chain>& Complex::chains(int p) const {
    ensure_degree(p);
    return nerves_[static_cast<std::size_t>(p)];
}

int Complex::chain_index(int p, const Chain& c) const {
    ensure_degree(p);
    const auto& ix = chain_index_[static_cast<std::size_t>(p)];
    auto it = ix.find(c);
    return it == ix.end() ? -1 : it->second;
}

Field& Field::operator+=(const Field& o) {
    if (degree != o.degree || values.size() != o.values.size())
        throw PreconditionError("field degree mismatch in +");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

Field& Field::operator-=(const Field& o) {
    if (degree != o.degree || values.size() != o.values.size())
        throw PreconditionError("field degree mismatch in -");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}

Field& Field::operator*=(double s) {
    for (Tensor& t : values) t *= s;
    return *this;
}

double Field::sup_norm() const {
    double m = 0;
    for (const Tensor& t : values) m = std::max(m, t.sup_norm());
    return m;
}

bool Field::finite() const {
    for (const Tensor& t : values)
        if (!t.finite()) return false;
    return true;
}

Field make_field(const Complex& C, int degree) {
    Field f;
    f.degree = degree;
    const auto& chains = C.chains(degree);
    f.values.reserve(chains.size());
    for (const Chain& c : chains)
        f.values.emplace_back(C.member_shape(c.terminal()));
    return f;
}

Field random_field(const Complex& C, int degree, std::mt19937_64& rng, double lo, double hi) {
    Field f = make_field(C, degree);
    std::uniform_real_distribution<double> dist(lo, hi);
    for (Tensor& t : f.values)
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = dist(rng);
    return f;
}

double pairing(const Complex& C, const Field& A, const Field& B) {
    (void)C;
    if (A.degree != B.degree) throw PreconditionError("pairing needs equal degrees");
    double s = 0;
    for (std::size_t i = 0; i < A.values.size(); ++i) s += inner(A.values[i], B.values[i]);
    return s;
}

double pairing(const Complex& C, const Field& A, const Field& B, const BeliefField& p) {
    if (A.degree != B.degree) throw PreconditionError("pairing needs equal degrees");
    const auto& chains = C.chains(A.degree);
    double s = 0;
    for (std::size_t i = 0; i < chains.size(); ++i) {
        const Belief& w = p[static_cast<std::size_t>(chains[i].terminal())];
        s += inner(A.values[i], B.values[i], w);
    }
    return s;
}

BeliefField beliefs_of(const Complex& C, const Field& H) {
    if (H.degree != 0) throw PreconditionError("beliefs_of expects a degree-0 field");
    (void)C;
    BeliefField q;
    q.reserve(H.values.size());
    for (const Tensor& t : H.values) q.push_back(gibbs(t));
    return q;
}

std::size_t field_dim(const Complex& C, int degree) {
    std::size_t n = 0;
    for (const Chain& c : C.chains(degree)) n += C.member_shape(c.terminal()).size();
    return n;
}

std::vector<double> flatten(const Field& f) {
    std::vector<double> x;
    for (const Tensor& t : f.values)
        x.insert(x.end(), t.values().begin(), t.values().end());
    return x;
}

Field unflatten(const Complex& C, int degree, const std::vector<double>& x) {
    Field f = make_field(C, degree);
    std::size_t k = 0;
    for (Tensor& t : f.values)
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = x.at(k++);
    if (k != x.size()) throw PreconditionError("flat vector length mismatch");
    return f;
}

Field density_field(const Complex& C, const BeliefField& q) {
    Field f = make_field(C, 0);
    if (q.size() != f.values.size())
        throw PreconditionError("belief field size mismatch");
    for (std::size_t i = 0; i < q.size(); ++i) f.values[i] = q[i].density();
    return f;
}

} // namespace gbpd
