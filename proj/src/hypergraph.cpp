#include "gbpd/hypergraph.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace gbpd {

Hypergraph::Hypergraph(std::vector<Region> regions, bool close, bool include_empty) {
    if (regions.empty()) throw PreconditionError("hypergraph needs at least one region");

    std::set<Region> pool(regions.begin(), regions.end());
    if (pool.size() != regions.size())
        throw PreconditionError("duplicate region in hypergraph input");
    if (include_empty) pool.insert(Region{});

    if (close) {
        // iterate pairwise intersections to a fixpoint
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<Region> snapshot(pool.begin(), pool.end());
            for (std::size_t i = 0; i < snapshot.size(); ++i)
                for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
                    Region m = region_intersect(snapshot[i], snapshot[j]);
                    if (pool.insert(m).second) grew = true;
                }
        }
    }

    members_.assign(pool.begin(), pool.end());
    std::sort(members_.begin(), members_.end(), [](const Region& a, const Region& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });

    omega_ = Region{};
    for (const Region& r : members_) omega_ = region_union(omega_, r);

    const auto n = members_.size();
    geq_.assign(n, std::vector<bool>(n, false));
    cone_.assign(n, {});
    meet_.assign(n, std::vector<int>(n, -1));
    for (std::size_t i = 0; i < n; ++i) index_[members_[i]] = static_cast<int>(i);

    closed_ = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            geq_[i][j] = members_[i].contains(members_[j]);
            if (geq_[i][j]) cone_[i].push_back(static_cast<int>(j));
            Region m = region_intersect(members_[i], members_[j]);
            auto it = index_.find(m);
            if (it == index_.end())
                closed_ = false;
            else
                meet_[i][j] = it->second;
        }
    }
}

int Hypergraph::index_of(const Region& r) const {
    auto it = index_.find(r);
    return it == index_.end() ? -1 : it->second;
}

int Hypergraph::require_member(const Region& r) const {
    int i = index_of(r);
    if (i < 0) throw PreconditionError("region " + r.str() + " is not a member");
    return i;
}

Hypergraph build(const std::vector<Region>& regions, bool close, bool include_empty) {
    return Hypergraph(regions, close, include_empty);
}

std::vector<Chain> nerve(const Hypergraph& X, int p) {
    if (p < 0) throw PreconditionError("chain degree must be non-negative");
    std::vector<Chain> out;
    Chain cur;
    cur.idx.reserve(static_cast<std::size_t>(p) + 1);
    // members are ordered so that strict inclusion increases the index;
    // depth-first enumeration in index order is lexicographic
    auto extend_chain = [&](auto&& self, int last) -> void {
        if (cur.degree() == p) {
            out.push_back(cur);
            return;
        }
        for (int j = last + 1; j < X.size(); ++j) {
            if (!X.geq(last, j)) continue;
            cur.idx.push_back(j);
            self(self, j);
            cur.idx.pop_back();
        }
    };
    for (int i = 0; i < X.size(); ++i) {
        cur.idx = {i};
        extend_chain(extend_chain, i);
    }
    return out;
}

IncidenceFn convolve(const Hypergraph& X, const IncidenceFn& f, const IncidenceFn& g) {
    IncidenceFn out;
    for (int a = 0; a < X.size(); ++a)
        for (int c : X.cone(a)) {
            std::int64_t acc = 0;
            for (int b : X.cone(a))
                if (X.geq(b, c)) acc += f(a, b) * g(b, c);
            if (acc != 0) out.entries[{a, c}] = acc;
        }
    return out;
}

IncidenceFn zeta_fn(const Hypergraph& X) {
    IncidenceFn z;
    for (int a = 0; a < X.size(); ++a)
        for (int b : X.cone(a)) z.entries[{a, b}] = 1;
    return z;
}

IncidenceFn mobius(const Hypergraph& X) {
    IncidenceFn mu;
    for (int a = 0; a < X.size(); ++a) {
        // iterate c from large to small region; cone indices are ascending so
        // a forward sweep visits every b with a ⊇ b ⊋ c before c
        for (int c : X.cone(a)) {
            if (c == a) {
                mu.entries[{a, a}] = 1;
                continue;
            }
            std::int64_t acc = 0;
            for (int b : X.cone(a)) {
                if (b == c) break;
                if (X.geq(b, c)) acc += mu(a, b);
            }
            if (acc != 0) mu.entries[{a, c}] = -acc;
        }
    }
    return mu;
}

MobiusNumbers mobius_numbers(const Hypergraph& X) {
    IncidenceFn mu = mobius(X);
    MobiusNumbers out;
    out.c.assign(static_cast<std::size_t>(X.size()), 0);
    out.c_bar.assign(static_cast<std::size_t>(X.size()), 0);
    for (int b = 0; b < X.size(); ++b)
        for (int a = 0; a < X.size(); ++a)
            if (X.geq(a, b)) out.c[static_cast<std::size_t>(b)] += mu(a, b);
    for (int a = 0; a < X.size(); ++a)
        for (int b : X.cone(a)) out.c_bar[static_cast<std::size_t>(a)] += mu(a, b);
    for (int b = 0; b < X.size(); ++b) {
        std::int64_t s = 0;
        for (int a = 0; a < X.size(); ++a)
            if (X.geq(a, b)) s += out.c[static_cast<std::size_t>(a)];
        if (s != 1)
            throw NumericError("Moebius number identity failed on member " +
                               X.member(b).str());
    }
    return out;
}

std::vector<int> cone_members(const Hypergraph& X, const Region& a) {
    return X.cone(X.require_member(a));
}

std::vector<Chain> cone_coboundary(const Hypergraph& X, const Region& a) {
    int ia = X.require_member(a);
    std::vector<Chain> out;
    for (const Chain& ch : nerve(X, 1))
        if (!X.geq(ia, ch.idx[0]) && X.geq(ia, ch.idx[1])) out.push_back(ch);
    return out;
}

int x_closure(const Hypergraph& X, const Region& s) {
    if (!X.closed())
        throw PreconditionError("x_closure requires an intersection-closed hypergraph");
    // intersection of all members containing s; a member by closedness
    int best = -1;
    for (int i = 0; i < X.size(); ++i) {
        if (!X.member(i).contains(s)) continue;
        best = best < 0 ? i : X.intersect(best, i);
    }
    if (best < 0)
        throw PreconditionError("closure undefined: no member contains " + s.str());
    return best;
}

BoundarySplit boundary_split(const Hypergraph& X, const Region& boundary_vars) {
    BoundarySplit out;
    out.boundary_vars = boundary_vars;
    out.trace.assign(static_cast<std::size_t>(X.size()), -1);
    out.is_boundary.assign(static_cast<std::size_t>(X.size()), false);
    for (int i = 0; i < X.size(); ++i) {
        Region tr = region_intersect(X.member(i), boundary_vars);
        int j = X.index_of(tr);
        if (j < 0)
            throw PreconditionError("covering not adapted to boundary: " +
                                    X.member(i).str() + " ∩ " + boundary_vars.str() +
                                    " = " + tr.str() + " is not a member");
        out.trace[static_cast<std::size_t>(i)] = j;
        if (boundary_vars.contains(X.member(i))) {
            out.boundary.push_back(i);
            out.is_boundary[static_cast<std::size_t>(i)] = true;
        } else {
            out.interior.push_back(i);
        }
    }
    return out;
}

RetractReport is_retractable(const Hypergraph& X) {
    RetractReport rep;
    std::vector<Region> live(X.members().begin(), X.members().end());
    bool changed = true;
    while (changed && live.size() > 1) {
        changed = false;
        // rule (i): drop a member contained in another member
        for (std::size_t i = 0; i < live.size() && !changed; ++i)
            for (std::size_t j = 0; j < live.size(); ++j) {
                if (i == j) continue;
                if (live[j].contains(live[i])) {
                    rep.steps.push_back("drop member " + live[i].str() + " ⊆ " +
                                        live[j].str());
                    live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                    break;
                }
            }
        if (changed) continue;
        // rule (ii): drop a variable occurring in exactly one member
        std::map<Var, int> count;
        for (const Region& r : live)
            for (Var v : r.vars()) ++count[v];
        for (auto [v, c] : count) {
            if (c != 1) continue;
            for (Region& r : live)
                if (r.contains(v)) {
                    rep.steps.push_back("drop variable " + std::to_string(v) +
                                        " (only in " + r.str() + ")");
                    r = region_diff(r, Region{v});
                    break;
                }
            changed = true;
            break;
        }
    }
    rep.retractable = live.size() <= 1;
    return rep;
}

DiameterReport diameter(const Hypergraph& X) {
    const int n = X.size();
    DiameterReport rep;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && (X.geq(i, j) || X.geq(j, i)))
                adj[static_cast<std::size_t>(i)].push_back(j);

    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        std::queue<int> q;
        q.push(s);
        comp[static_cast<std::size_t>(s)] = ncomp;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[static_cast<std::size_t>(u)])
                if (comp[static_cast<std::size_t>(v)] < 0) {
                    comp[static_cast<std::size_t>(v)] = ncomp;
                    q.push(v);
                }
        }
        ++ncomp;
    }
    rep.connected = (ncomp == 1);

    for (int s = 0; s < n; ++s) {
        std::vector<int> dist(static_cast<std::size_t>(n), -1);
        std::queue<int> q;
        q.push(s);
        dist[static_cast<std::size_t>(s)] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[static_cast<std::size_t>(u)])
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    q.push(v);
                }
        }
        for (int t = 0; t < n; ++t)
            rep.diameter = std::max(rep.diameter, dist[static_cast<std::size_t>(t)]);
    }
    return rep;
}

} // namespace gbpd
