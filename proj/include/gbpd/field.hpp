#pragma once

#include <map>
#include <random>
#include <vector>

#include "gbpd/hypergraph.hpp"
#include "gbpd/tensor.hpp"

namespace gbpd {

/// Hypergraph + configuration spaces, with cached nerves and member shapes.
/// Immutable; shared read-only by every operator downstream.
class Complex {
public:
    Complex(Hypergraph X, Space space);

    const Hypergraph& X() const { return X_; }
    const Space& space() const { return space_; }

    const std::vector<Chain>& chains(int p) const;
    int chain_index(int p, const Chain& c) const; // -1 when degenerate/absent
    const Shape& member_shape(int i) const { return shapes_[static_cast<std::size_t>(i)]; }

    const IncidenceFn& mu() const { return mu_; }
    const MobiusNumbers& mobius_nums() const { return nums_; }

private:
    Hypergraph X_;
    Space space_;
    std::vector<Shape> shapes_;
    IncidenceFn mu_;
    MobiusNumbers nums_;
    mutable std::vector<std::vector<Chain>> nerves_;
    mutable std::vector<std::map<Chain, int>> chain_index_;
    void ensure_degree(int p) const;
};

/// Assignment of one tensor to every non-degenerate p-chain, the tensor
/// living on the chain's terminal (smallest) region. All chains are
/// materialized so shape errors surface early.
struct Field {
    int degree = 0;
    std::vector<Tensor> values; // aligned with Complex::chains(degree)

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double s);
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(double s, Field a) { return a *= s; }

    double sup_norm() const;
    bool finite() const;
};

using DensityField = Field;
using BeliefField = std::vector<Belief>;

Field make_field(const Complex& C, int degree);
Field random_field(const Complex& C, int degree, std::mt19937_64& rng, double lo = -1.0,
                   double hi = 1.0);

/// Counting pairing Σ_chains ⟨A_c, B_c⟩ between equal-degree fields.
double pairing(const Complex& C, const Field& A, const Field& B);
/// p-weighted pairing Σ_chains E_{p_terminal}[A_c · B_c].
double pairing(const Complex& C, const Field& A, const Field& B, const BeliefField& p);

/// Per-member Gibbs states of a degree-0 energy field.
BeliefField beliefs_of(const Complex& C, const Field& H);

/// Flat coordinates of a field in the fixed chain/cell basis.
std::size_t field_dim(const Complex& C, int degree);
std::vector<double> flatten(const Field& f);
Field unflatten(const Complex& C, int degree, const std::vector<double>& x);

/// The degree-0 density field carrying the beliefs' densities.
Field density_field(const Complex& C, const BeliefField& q);

} // namespace gbpd
