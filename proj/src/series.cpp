#include "crsing/series.hpp"

#include <stdexcept>

#include "crsing/linalg.hpp"

namespace crsing {

namespace {

// Images vector that fixes every slot, with the listed slots overridden.
std::vector<std::optional<Polynomial>> identity_images(const RingPtr& ring) {
    std::vector<std::optional<Polynomial>> im(ring->size());
    for (std::size_t i = 0; i < ring->size(); ++i)
        im[i] = Polynomial::variable(ring, static_cast<int>(i));
    return im;
}

GaussianRational linear_coefficient(const Polynomial& p, int slot) {
    Monomial m(p.ring()->size(), 0);
    m[static_cast<std::size_t>(slot)] = 1;
    auto it = p.terms().find(m);
    return it == p.terms().end() ? GaussianRational(0) : it->second;
}

}  // namespace

std::vector<Polynomial> implicit_series_solve(const std::vector<Polynomial>& eqs,
                                              const std::vector<int>& unknown_slots, int cap) {
    if (eqs.empty()) return {};
    RingPtr ring = eqs.front().ring();
    const std::size_t k = unknown_slots.size();
    if (eqs.size() != k)
        throw std::invalid_argument("implicit solve: need as many equations as unknowns");
    if (cap < 0) throw std::invalid_argument("implicit solve: negative cap");

    Matrix jac(k, Row(k));
    for (std::size_t i = 0; i < k; ++i) {
        if (!eqs[i].constant_term().is_zero())
            throw std::invalid_argument("implicit solve: equation has a constant term");
        for (std::size_t j = 0; j < k; ++j)
            jac[i][j] = linear_coefficient(eqs[i], unknown_slots[j]);
    }
    auto jac_inv = inverse(jac);
    if (!jac_inv)
        throw std::invalid_argument("implicit solve: degenerate linear part in the unknowns");

    // remainder after stripping the constant-coefficient linear part
    std::vector<Polynomial> rem = eqs;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            rem[i] -= Polynomial::variable(ring, unknown_slots[j]).scaled(jac[i][j]);

    // u = -J^{-1} rem(u, p); each pass settles one more total degree
    std::vector<Polynomial> u(k, Polynomial(ring));
    for (int pass = 0; pass <= cap; ++pass) {
        auto im = identity_images(ring);
        for (std::size_t j = 0; j < k; ++j) im[static_cast<std::size_t>(unknown_slots[j])] = u[j];
        std::vector<Polynomial> next(k, Polynomial(ring));
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < k; ++i) {
                if ((*jac_inv)[j][i].is_zero()) continue;
                next[j] -= rem[i].substitute(im, ring, cap).scaled((*jac_inv)[j][i]);
            }
        }
        bool stable = true;
        for (std::size_t j = 0; j < k && stable; ++j) stable = next[j] == u[j];
        u = std::move(next);
        if (stable) break;
    }

    // the jets must kill the system through the cap
    auto im = identity_images(ring);
    for (std::size_t j = 0; j < k; ++j) im[static_cast<std::size_t>(unknown_slots[j])] = u[j];
    for (std::size_t i = 0; i < k; ++i)
        if (!eqs[i].substitute(im, ring, cap).is_zero())
            throw std::logic_error("implicit solve: residual survived the iteration");
    return u;
}

std::vector<Polynomial> formal_inverse(const std::vector<Polynomial>& comps,
                                       const std::vector<int>& slots, int cap) {
    if (comps.size() != slots.size())
        throw std::invalid_argument("formal inverse: one component per slot");
    if (comps.empty()) return {};
    RingPtr ring = comps.front().ring();
    const std::size_t k = slots.size();

    std::vector<bool> allowed(ring->size(), false);
    for (int s : slots) allowed[static_cast<std::size_t>(s)] = true;
    for (const auto& c : comps) {
        if (!c.constant_term().is_zero())
            throw std::invalid_argument("formal inverse: map does not fix the origin");
        for (const auto& [m, coef] : c.terms())
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] > 0 && !allowed[i])
                    throw std::invalid_argument("formal inverse: component uses foreign slot " +
                                                ring->display_name(static_cast<int>(i)));
    }

    Matrix lin(k, Row(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) lin[i][j] = linear_coefficient(comps[i], slots[j]);
    auto lin_inv = inverse(lin);
    if (!lin_inv) throw std::invalid_argument("formal inverse: linear part is singular");

    std::vector<Polynomial> tail = comps;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            tail[i] -= Polynomial::variable(ring, slots[j]).scaled(lin[i][j]);

    // g = L^{-1}(x - tail(g)), settled degree by degree
    std::vector<Polynomial> g(k, Polynomial(ring));
    for (int pass = 0; pass <= cap; ++pass) {
        std::vector<Polynomial> tg = compose_jets(tail, slots, g, cap);
        std::vector<Polynomial> next(k, Polynomial(ring));
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < k; ++i) {
                if ((*lin_inv)[j][i].is_zero()) continue;
                next[j] += (Polynomial::variable(ring, slots[i]) - tg[i]).scaled((*lin_inv)[j][i]);
            }
        }
        bool stable = true;
        for (std::size_t j = 0; j < k && stable; ++j) stable = next[j] == g[j];
        g = std::move(next);
        if (stable) break;
    }

    auto check = compose_jets(g, slots, comps, cap);
    for (std::size_t j = 0; j < k; ++j)
        if (check[j] != Polynomial::variable(ring, slots[j]))
            throw std::logic_error("formal inverse: composition is not the identity");
    return g;
}

std::vector<Polynomial> compose_jets(const std::vector<Polynomial>& outer,
                                     const std::vector<int>& slots,
                                     const std::vector<Polynomial>& inner, int cap) {
    if (slots.size() != inner.size())
        throw std::invalid_argument("compose: one inner jet per slot");
    if (outer.empty()) return {};
    RingPtr ring = outer.front().ring();
    auto im = identity_images(ring);
    for (std::size_t j = 0; j < slots.size(); ++j)
        im[static_cast<std::size_t>(slots[j])] = inner[j];
    std::vector<Polynomial> out;
    out.reserve(outer.size());
    for (const auto& p : outer) out.push_back(p.substitute(im, ring, cap));
    return out;
}

}  // namespace crsing
