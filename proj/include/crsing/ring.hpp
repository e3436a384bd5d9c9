#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace crsing {

// Variables carry a CR role.  Holomorphic variables come with an
// antiholomorphic mate (stored as a separate slot, printed conj(name));
// real variables are their own conjugates.
enum class VarRole : std::uint8_t { Holomorphic, Antiholomorphic, Real };

struct Variable {
    std::string name;  // base name; antiholomorphic slots reuse the mate's name
    VarRole role;
    int mate;  // index of conjugate slot, -1 for real variables
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
  public:
    struct Decl {
        std::string name;
        bool complex_var;  // complex => a conjugate slot is added right after
    };

    static RingPtr make(const std::vector<Decl>& decls) {
        auto r = std::shared_ptr<Ring>(new Ring());
        for (const auto& d : decls) {
            if (r->index_.count(d.name)) throw std::invalid_argument("duplicate variable: " + d.name);
            int idx = static_cast<int>(r->vars_.size());
            r->index_[d.name] = idx;
            if (d.complex_var) {
                r->vars_.push_back({d.name, VarRole::Holomorphic, idx + 1});
                r->vars_.push_back({d.name, VarRole::Antiholomorphic, idx});
            } else {
                r->vars_.push_back({d.name, VarRole::Real, -1});
            }
        }
        return r;
    }

    // All variables independent holomorphic slots: used for complexification
    // and for plain commutative-algebra work where roles are irrelevant.
    static RingPtr make_plain(const std::vector<std::string>& names) {
        auto r = std::shared_ptr<Ring>(new Ring());
        for (const auto& n : names) {
            if (r->index_.count(n)) throw std::invalid_argument("duplicate variable: " + n);
            r->index_[n] = static_cast<int>(r->vars_.size());
            r->vars_.push_back({n, VarRole::Holomorphic, -1});
        }
        return r;
    }

    std::size_t size() const { return vars_.size(); }
    const Variable& var(int i) const { return vars_.at(static_cast<std::size_t>(i)); }
    const std::vector<Variable>& vars() const { return vars_; }

    // Lookup by declared (base) name; returns the holomorphic/real slot.
    int find(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }

    int conj_of(int i) const {
        const Variable& v = var(i);
        return v.role == VarRole::Real ? i : v.mate;
    }

    std::string display_name(int i) const {
        const Variable& v = var(i);
        if (v.role == VarRole::Antiholomorphic) return "conj(" + v.name + ")";
        return v.name;
    }

    bool same_as(const Ring& o) const { return this == &o; }

  private:
    Ring() = default;
    std::vector<Variable> vars_;
    std::map<std::string, int> index_;
};

}  // namespace crsing
