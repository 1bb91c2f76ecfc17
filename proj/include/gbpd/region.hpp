#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "gbpd/errors.hpp"

namespace gbpd {

using Var = int;

/// A region is a set of variable ids, kept sorted strictly ascending.
/// The empty region is valid and plays the role of the vacuum.
class Region {
public:
    Region() = default;
    Region(std::initializer_list<Var> vars) : vars_(vars) { normalize(); }
    explicit Region(std::vector<Var> vars) : vars_(std::move(vars)) { normalize(); }

    const std::vector<Var>& vars() const { return vars_; }
    std::size_t size() const { return vars_.size(); }
    bool empty() const { return vars_.empty(); }

    bool contains(Var v) const {
        return std::binary_search(vars_.begin(), vars_.end(), v);
    }
    // a.contains(b) <=> b ⊆ a
    bool contains(const Region& b) const {
        return std::includes(vars_.begin(), vars_.end(), b.vars_.begin(), b.vars_.end());
    }
    bool strictly_contains(const Region& b) const {
        return size() > b.size() && contains(b);
    }

    friend bool operator==(const Region& a, const Region& b) { return a.vars_ == b.vars_; }
    friend bool operator!=(const Region& a, const Region& b) { return a.vars_ != b.vars_; }
    // lexicographic; used only to fix deterministic orderings
    friend bool operator<(const Region& a, const Region& b) { return a.vars_ < b.vars_; }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(vars_[i]);
        }
        return s + "}";
    }

private:
    void normalize() {
        std::sort(vars_.begin(), vars_.end());
        auto last = std::unique(vars_.begin(), vars_.end());
        if (last != vars_.end())
            throw PreconditionError("duplicate variable id in region " + str());
        for (Var v : vars_)
            if (v < 0) throw PreconditionError("negative variable id in region");
    }

    std::vector<Var> vars_;
};

inline Region region_union(const Region& a, const Region& b) {
    std::vector<Var> out;
    std::set_union(a.vars().begin(), a.vars().end(), b.vars().begin(), b.vars().end(),
                   std::back_inserter(out));
    return Region(std::move(out));
}

inline Region region_intersect(const Region& a, const Region& b) {
    std::vector<Var> out;
    std::set_intersection(a.vars().begin(), a.vars().end(), b.vars().begin(),
                          b.vars().end(), std::back_inserter(out));
    return Region(std::move(out));
}

// a \ b
inline Region region_diff(const Region& a, const Region& b) {
    std::vector<Var> out;
    std::set_difference(a.vars().begin(), a.vars().end(), b.vars().begin(),
                        b.vars().end(), std::back_inserter(out));
    return Region(std::move(out));
}

inline std::ostream& operator<<(std::ostream& os, const Region& r) { return os << r.str(); }

} // namespace gbpd
