#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gbpd/region.hpp"

namespace gbpd {

/// A p-chain of the nerve: member indices i0 < i1 < ... < ip whose regions
/// strictly decrease. Members are ordered by (cardinality desc, lex), so
/// strict inclusion always increases the index.
struct Chain {
    std::vector<int> idx;

    int degree() const { return static_cast<int>(idx.size()) - 1; }
    int terminal() const { return idx.back(); }
    int initial() const { return idx.front(); }

    friend bool operator==(const Chain& a, const Chain& b) { return a.idx == b.idx; }
    friend bool operator<(const Chain& a, const Chain& b) { return a.idx < b.idx; }
};

/// Finite family of regions ordered by inclusion. Construction fixes the
/// member order (cardinality desc, then lex) and precomputes the order
/// relation and the cones; everything is immutable afterwards.
class Hypergraph {
public:
    Hypergraph(std::vector<Region> regions, bool close, bool include_empty);

    const Region& omega() const { return omega_; }
    const std::vector<Region>& members() const { return members_; }
    const Region& member(int i) const { return members_[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(members_.size()); }
    bool closed() const { return closed_; }

    /// member(i) ⊇ member(j)
    bool geq(int i, int j) const { return geq_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    /// cone Λ^i: indices of members contained in member(i), i included
    const std::vector<int>& cone(int i) const { return cone_[static_cast<std::size_t>(i)]; }

    int index_of(const Region& r) const; // -1 when r is not a member
    int require_member(const Region& r) const;

    /// intersection of two members; requires closedness (result is a member)
    int intersect(int i, int j) const { return meet_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

private:
    Region omega_;
    std::vector<Region> members_;
    std::vector<std::vector<bool>> geq_;
    std::vector<std::vector<int>> cone_;
    std::vector<std::vector<int>> meet_; // -1 when not a member
    std::map<Region, int> index_;
    bool closed_ = false;
};

/// Builds the hypergraph spanned by `regions`; `close` adds all iterated
/// intersections, `include_empty` adds the empty region.
Hypergraph build(const std::vector<Region>& regions, bool close, bool include_empty);

/// All non-degenerate p-chains in deterministic (lexicographic) order.
std::vector<Chain> nerve(const Hypergraph& X, int p);

/// Values of an incidence function on comparable member pairs; Möbius
/// coefficients are exact integers on a finite poset.
struct IncidenceFn {
    std::map<std::pair<int, int>, std::int64_t> entries;

    std::int64_t operator()(int a, int b) const {
        auto it = entries.find({a, b});
        return it == entries.end() ? 0 : it->second;
    }
};

/// Dirichlet convolution (f * g)_{ac} = sum_{a ⊇ b ⊇ c} f_{ab} g_{bc}.
IncidenceFn convolve(const Hypergraph& X, const IncidenceFn& f, const IncidenceFn& g);
IncidenceFn zeta_fn(const Hypergraph& X);

/// Möbius function, inverse of zeta: mu_{aa} = 1, mu_{ac} = -sum_{a ⊇ b ⊋ c} mu_{ab}.
IncidenceFn mobius(const Hypergraph& X);

struct MobiusNumbers {
    std::vector<std::int64_t> c;     // right numbers, c = 1·mu
    std::vector<std::int64_t> c_bar; // left numbers, c_bar = mu·1
};

/// Computes c_b = sum_{a ⊇ b} mu_{ab} and checks sum_{a ⊇ b} c_a = 1 for all b.
MobiusNumbers mobius_numbers(const Hypergraph& X);

/// Λ^a as member indices, and its coboundary dΛ^a = 1-chains entering the cone.
std::vector<int> cone_members(const Hypergraph& X, const Region& a);
std::vector<Chain> cone_coboundary(const Hypergraph& X, const Region& a);

/// The smallest member containing s (X must be intersection-closed).
int x_closure(const Hypergraph& X, const Region& s);

struct BoundarySplit {
    Region boundary_vars;
    std::vector<int> interior; // members not contained in boundary_vars
    std::vector<int> boundary; // members contained in boundary_vars
    std::vector<int> trace;    // trace[i] = index of member(i) ∩ boundary_vars
    std::vector<bool> is_boundary;
};

/// Splits X into interior and boundary members; every a ∩ boundary_vars must
/// itself be a member (adaptedness), otherwise the offending region is named.
BoundarySplit boundary_split(const Hypergraph& X, const Region& boundary_vars);

struct RetractReport {
    bool retractable = false;
    /// human-readable reduction steps, in order
    std::vector<std::string> steps;
};

/// Graham-style reduction: repeatedly delete members contained in another
/// member and variables occurring in a single member; retractable iff a
/// single member remains.
RetractReport is_retractable(const Hypergraph& X);

struct DiameterReport {
    int diameter = 0;
    bool connected = true;
};

/// Diameter of the undirected comparability graph on members; disconnected
/// inputs report the per-component maximum with a flag.
DiameterReport diameter(const Hypergraph& X);

} // namespace gbpd
