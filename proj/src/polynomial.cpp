#include "crsing/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace crsing {

std::string VanishingOrder::str() const {
    switch (kind) {
        case FINITE: return std::to_string(value);
        case INFINITE: return "INFINITE";
        default: return "UNKNOWN_BEYOND(" + std::to_string(value) + ")";
    }
}

Polynomial Polynomial::constant(RingPtr ring, GaussianRational c) {
    Polynomial p(std::move(ring));
    if (!c.is_zero()) p.terms_[Monomial(p.ring_->size(), 0)] = std::move(c);
    return p;
}

Polynomial Polynomial::variable(RingPtr ring, int var_index, int power) {
    Polynomial p(std::move(ring));
    if (var_index < 0 || var_index >= static_cast<int>(p.ring_->size()))
        throw std::out_of_range("variable index");
    if (power < 0) throw std::invalid_argument("negative power");
    Monomial m(p.ring_->size(), 0);
    m[static_cast<std::size_t>(var_index)] = power;
    p.terms_[m] = GaussianRational(1);
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

GaussianRational Polynomial::constant_term() const {
    if (ring_ == nullptr) return GaussianRational();
    Monomial one(ring_->size(), 0);
    auto it = terms_.find(one);
    return it == terms_.end() ? GaussianRational() : it->second;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
}

VanishingOrder Polynomial::order_of_vanishing() const {
    if (terms_.empty()) return VanishingOrder::infinite();
    int d = total_degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_) d = std::min(d, total_degree(m));
    return VanishingOrder::finite(d);
}

int Polynomial::degree_in(int var_index) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<std::size_t>(var_index)]);
    return d;
}

void Polynomial::add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(ring_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (ring_ == nullptr) ring_ = o.ring_;
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (ring_ == nullptr) ring_ = o.ring_;
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r(a.ring_ ? a.ring_ : b.ring_);
    Monomial prod;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            prod = ma;
            for (std::size_t i = 0; i < prod.size(); ++i) prod[i] += mb[i];
            r.add_term(prod, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::scaled(const GaussianRational& c) const {
    Polynomial r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
    return r;
}

Polynomial Polynomial::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative exponent");
    Polynomial acc = Polynomial::constant(ring_, GaussianRational(1));
    Polynomial base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first || ia->second != ib->second) return false;
    }
    return true;
}

Polynomial Polynomial::conj() const {
    Polynomial r(ring_);
    Monomial swapped;
    for (const auto& [m, c] : terms_) {
        swapped.assign(m.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            int j = ring_->conj_of(static_cast<int>(i));
            swapped[static_cast<std::size_t>(j)] += m[i];
        }
        r.add_term(swapped, c.conj());
    }
    return r;
}

Polynomial Polynomial::wirtinger(int var_index) const {
    Polynomial r(ring_);
    std::size_t v = static_cast<std::size_t>(var_index);
    for (const auto& [m, c] : terms_) {
        if (m[v] == 0) continue;
        Monomial d = m;
        d[v] -= 1;
        r.add_term(d, c * GaussianRational(m[v]));
    }
    return r;
}

Polynomial Polynomial::substitute(const std::vector<std::optional<Polynomial>>& images,
                                  RingPtr target, int truncate_above) const {
    // Image powers are shared across terms; with a cap, every intermediate is
    // truncated (degrees only add, so nothing below the cap is lost).
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t i, int e) -> const Polynomial& {
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(Polynomial::constant(target, GaussianRational(1)));
        while (static_cast<int>(pw.size()) <= e) {
            Polynomial next = pw.back() * *images[i];
            if (truncate_above >= 0) next = next.truncated(truncate_above);
            pw.push_back(std::move(next));
        }
        return pw[static_cast<std::size_t>(e)];
    };
    Polynomial result(target);
    for (const auto& [m, c] : terms_) {
        Polynomial term = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (i >= images.size() || !images[i])
                throw std::invalid_argument("substitute: no image for occurring variable " +
                                            ring_->display_name(static_cast<int>(i)));
            term = term * power(i, m[i]);
            if (truncate_above >= 0) term = term.truncated(truncate_above);
        }
        result += term;
    }
    if (truncate_above >= 0) result = result.truncated(truncate_above);
    return result;
}

Polynomial Polynomial::truncated(int cap) const {
    Polynomial r(ring_);
    for (const auto& [m, c] : terms_)
        if (total_degree(m) <= cap) r.terms_[m] = c;
    return r;
}

Polynomial Polynomial::restricted_to(const std::vector<int>& keep, RingPtr target) const {
    if (keep.size() != target->size()) throw std::invalid_argument("restricted_to: slot mismatch");
    std::vector<int> where(ring_->size(), -1);
    for (std::size_t k = 0; k < keep.size(); ++k) where[static_cast<std::size_t>(keep[k])] = static_cast<int>(k);
    Polynomial r(target);
    Monomial img;
    for (const auto& [m, c] : terms_) {
        img.assign(target->size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (where[i] < 0)
                throw std::invalid_argument("restricted_to: dropped variable occurs: " +
                                            ring_->display_name(static_cast<int>(i)));
            img[static_cast<std::size_t>(where[i])] = m[i];
        }
        r.add_term(img, c);
    }
    return r;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        GaussianRational coeff = c;
        bool negated = false;
        if (coeff.is_real() && sgn(coeff.re) < 0) {
            coeff = -coeff;
            negated = true;
        } else if (sgn(coeff.re) == 0 && sgn(coeff.im) < 0) {
            coeff = -coeff;
            negated = true;
        }
        if (first) {
            if (negated) out << "-";
            first = false;
        } else {
            out << (negated ? " - " : " + ");
        }
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ring_->display_name(static_cast<int>(i));
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty()) {
            out << coeff.str();
        } else if (coeff.is_one()) {
            out << mono;
        } else {
            out << coeff.str() << "*" << mono;
        }
    }
    return out.str();
}

Point::Point(RingPtr ring) : ring_(std::move(ring)), values_(ring_->size()) {}

void Point::set(int var_index, GaussianRational v) {
    const Variable& var = ring_->var(var_index);
    if (var.role == VarRole::Antiholomorphic)
        throw std::invalid_argument("set holomorphic/real slots only");
    if (var.role == VarRole::Real && !v.is_real())
        throw std::invalid_argument("real variable " + var.name + " needs a real value");
    values_[static_cast<std::size_t>(var_index)] = v;
    if (var.role == VarRole::Holomorphic && var.mate >= 0)
        values_[static_cast<std::size_t>(var.mate)] = v.conj();
}

const GaussianRational& Point::value(int slot) const { return values_.at(static_cast<std::size_t>(slot)); }

GaussianRational evaluate(const Polynomial& p, const Point& pt) {
    GaussianRational acc;
    for (const auto& [m, c] : p.terms()) {
        GaussianRational t = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (int k = 0; k < m[i]; ++k) t *= pt.value(static_cast<int>(i));
        }
        acc += t;
    }
    return acc;
}

Polynomial poly_determinant(const std::vector<std::vector<Polynomial>>& a) {
    std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
    if (n == 1) return a[0][0];
    Polynomial det(a[0][0].ring());
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j].is_zero()) continue;
        std::vector<std::vector<Polynomial>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Polynomial> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(std::move(row));
        }
        Polynomial cof = a[0][j] * poly_determinant(minor);
        det += (j % 2 == 0) ? cof : -cof;
    }
    return det;
}

Complexification complexify_ring(const RingPtr& ring) {
    std::vector<std::string> names;
    names.reserve(ring->size());
    for (std::size_t i = 0; i < ring->size(); ++i) {
        const Variable& v = ring->var(static_cast<int>(i));
        if (v.role == VarRole::Antiholomorphic)
            names.push_back(v.name + "_bar");
        else
            names.push_back(v.name);
    }
    Complexification cx;
    cx.doubled = Ring::make_plain(names);
    cx.original = ring;
    return cx;
}

Polynomial Complexification::to_doubled(const Polynomial& p) const {
    if (!p.ring()->same_as(*original)) throw std::invalid_argument("complexify: wrong ring");
    Polynomial r(doubled);
    for (const auto& [m, c] : p.terms()) r.add_term(m, c);
    return r;
}

Polynomial Complexification::to_original(const Polynomial& p) const {
    if (!p.ring()->same_as(*doubled)) throw std::invalid_argument("restrict: wrong ring");
    Polynomial r(original);
    for (const auto& [m, c] : p.terms()) r.add_term(m, c);
    return r;
}

Realification realify_ring(const RingPtr& ring) {
    Realification rf;
    rf.original = ring;
    rf.re_slot.assign(ring->size(), -1);
    rf.im_slot.assign(ring->size(), -1);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < ring->size(); ++i) {
        const Variable& v = ring->var(static_cast<int>(i));
        if (v.role == VarRole::Holomorphic) {
            rf.re_slot[i] = static_cast<int>(names.size());
            rf.im_slot[i] = static_cast<int>(names.size()) + 1;
            rf.re_slot[static_cast<std::size_t>(v.mate)] = rf.re_slot[i];
            rf.im_slot[static_cast<std::size_t>(v.mate)] = rf.im_slot[i];
            names.push_back("re_" + v.name);
            names.push_back("im_" + v.name);
        } else if (v.role == VarRole::Real) {
            rf.re_slot[i] = static_cast<int>(names.size());
            names.push_back(v.name);
        }
    }
    rf.real_ring = Ring::make_plain(names);
    return rf;
}

std::pair<Polynomial, Polynomial> Realification::split(const Polynomial& p) const {
    if (!p.ring()->same_as(*original)) throw std::invalid_argument("realify: wrong ring");
    std::vector<std::optional<Polynomial>> images(original->size());
    GaussianRational I = GaussianRational::i();
    for (std::size_t i = 0; i < original->size(); ++i) {
        const Variable& v = original->var(static_cast<int>(i));
        Polynomial x = Polynomial::variable(real_ring, re_slot[i]);
        if (v.role == VarRole::Real) {
            images[i] = x;
        } else {
            Polynomial y = Polynomial::variable(real_ring, im_slot[i]);
            images[i] = (v.role == VarRole::Holomorphic) ? x + y.scaled(I) : x - y.scaled(I);
        }
    }
    Polynomial q = p.substitute(images, real_ring);
    // split coefficients: q = re + i*im with re, im rational-coefficient
    Polynomial re(real_ring), im(real_ring);
    for (const auto& [m, c] : q.terms()) {
        if (sgn(c.re) != 0) re.add_term(m, GaussianRational(c.re));
        if (sgn(c.im) != 0) im.add_term(m, GaussianRational(c.im));
    }
    return {re, im};
}

}  // namespace crsing
