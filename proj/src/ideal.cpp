#include "crsing/ideal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace crsing {

Caps& caps() {
    static Caps c;
    return c;
}

MonomialOrder MonomialOrder::elimination(std::vector<int> drop_slots, std::size_t nvars) {
    std::vector<char> mask(nvars, 0);
    for (int s : drop_slots) mask.at(static_cast<std::size_t>(s)) = 1;
    return MonomialOrder(ELIMINATION, std::move(mask));
}

namespace {

// grevlex on a masked sub-vector; mask == nullptr means all slots
int grevlex_cmp(const Monomial& a, const Monomial& b, const std::vector<char>* mask, char want) {
    int da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (mask && (*mask)[i] != want) continue;
        da += a[i];
        db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (mask && (*mask)[i] != want) continue;
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

}  // namespace

bool MonomialOrder::greater(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
        case GREVLEX:
            return grevlex_cmp(a, b, nullptr, 0) > 0;
        case ELIMINATION: {
            int c = grevlex_cmp(a, b, &in_block_, 1);
            if (c != 0) return c > 0;
            return grevlex_cmp(a, b, &in_block_, 0) > 0;
        }
        case LOCAL: {
            int da = total_degree(a), db = total_degree(b);
            if (da != db) return da < db;
            for (std::size_t i = a.size(); i-- > 0;) {
                if (a[i] != b[i]) return a[i] < b[i];
            }
            return false;
        }
    }
    return false;
}

namespace {

struct Term {
    Monomial m;
    GaussianRational c;
};

// Terms sorted strictly descending under the active order.
using TVec = std::vector<Term>;

TVec to_tvec(const Polynomial& p, const MonomialOrder& ord) {
    TVec v;
    v.reserve(p.term_count());
    for (const auto& [m, c] : p.terms()) v.push_back({m, c});
    std::sort(v.begin(), v.end(), [&](const Term& a, const Term& b) { return ord.greater(a.m, b.m); });
    return v;
}

Polynomial to_poly(const TVec& v, const RingPtr& ring) {
    Polynomial p(ring);
    for (const auto& t : v) p.add_term(t.m, t.c);
    return p;
}

bool divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial mono_sub(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

int tvec_degree(const TVec& f) {
    int d = -1;
    for (const auto& t : f) d = std::max(d, total_degree(t.m));
    return d;
}

int ecart(const TVec& f) { return tvec_degree(f) - total_degree(f.front().m); }

void check_degree_cap(const TVec& f, const char* where) {
    if (tvec_degree(f) > caps().max_degree)
        throw cap_exceeded(std::string(where) + ": total degree exceeds cap " +
                           std::to_string(caps().max_degree));
}

// f += coeff * x^shift * g, merge of order-sorted vectors
TVec addmul(const TVec& f, const GaussianRational& coeff, const Monomial& shift, const TVec& g,
            const MonomialOrder& ord) {
    TVec out;
    out.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    Monomial gm;
    auto shifted = [&](std::size_t jj) {
        gm = g[jj].m;
        for (std::size_t k = 0; k < gm.size(); ++k) gm[k] += shift[k];
        return gm;
    };
    while (i < f.size() || j < g.size()) {
        if (j >= g.size()) {
            out.push_back(f[i++]);
            continue;
        }
        const Monomial& gshift = shifted(j);
        if (i >= f.size()) {
            GaussianRational c = coeff * g[j].c;
            if (!c.is_zero()) out.push_back({gshift, c});
            ++j;
            continue;
        }
        if (f[i].m == gshift) {
            GaussianRational c = f[i].c + coeff * g[j].c;
            if (!c.is_zero()) out.push_back({f[i].m, c});
            ++i;
            ++j;
        } else if (ord.greater(f[i].m, gshift)) {
            out.push_back(f[i++]);
        } else {
            GaussianRational c = coeff * g[j].c;
            if (!c.is_zero()) out.push_back({gshift, c});
            ++j;
        }
    }
    return out;
}

void make_monic(TVec& f) {
    if (f.empty()) return;
    GaussianRational inv = GaussianRational(1) / f.front().c;
    if (inv.is_one()) return;
    for (auto& t : f) t.c *= inv;
}

// Full normal form for global orders: every term of the result is
// irreducible modulo the basis.
TVec normal_form_global(TVec h, const std::vector<TVec>& basis, const MonomialOrder& ord) {
    TVec result;
    while (!h.empty()) {
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.empty()) continue;
            if (divides(g.front().m, h.front().m)) {
                GaussianRational factor = -(h.front().c / g.front().c);
                h = addmul(h, factor, mono_sub(h.front().m, g.front().m), g, ord);
                if (!h.empty()) check_degree_cap(h, "normal form");
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            result.push_back(h.front());
            h.erase(h.begin());
        }
    }
    return result;
}

// Mora weak normal form for the local order.  Zero result certifies
// membership in the localized ideal; a nonzero result has a leading
// monomial outside the leading-term ideal.
TVec normal_form_mora(TVec h, const std::vector<TVec>& basis, const MonomialOrder& ord) {
    std::vector<TVec> reducers = basis;
    long guard = 0;
    while (!h.empty()) {
        int best = -1, best_ecart = 0;
        for (std::size_t k = 0; k < reducers.size(); ++k) {
            if (reducers[k].empty()) continue;
            if (!divides(reducers[k].front().m, h.front().m)) continue;
            int e = ecart(reducers[k]);
            if (best < 0 || e < best_ecart) {
                best = static_cast<int>(k);
                best_ecart = e;
            }
        }
        if (best < 0) return h;
        if (best_ecart > ecart(h)) reducers.push_back(h);
        const TVec& g = reducers[static_cast<std::size_t>(best)];
        GaussianRational factor = -(h.front().c / g.front().c);
        h = addmul(h, factor, mono_sub(h.front().m, g.front().m), g, ord);
        if (!h.empty()) check_degree_cap(h, "Mora normal form");
        if (++guard > 200000) throw cap_exceeded("Mora normal form: iteration guard tripped");
    }
    return h;
}

TVec reduce(TVec h, const std::vector<TVec>& basis, const MonomialOrder& ord) {
    return ord.is_local() ? normal_form_mora(std::move(h), basis, ord)
                          : normal_form_global(std::move(h), basis, ord);
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

std::vector<TVec> buchberger(std::vector<TVec> gens, const MonomialOrder& ord) {
    std::vector<TVec> g;
    for (auto& f : gens) {
        if (f.empty()) continue;
        check_degree_cap(f, "generator");
        make_monic(f);
        g.push_back(std::move(f));
    }
    std::vector<Pair> queue;
    std::set<std::pair<std::size_t, std::size_t>> done;
    auto push_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i)
            queue.push_back({i, j, mono_lcm(g[i].front().m, g[j].front().m)});
    };
    for (std::size_t j = 0; j < g.size(); ++j) push_pairs(j);

    while (!queue.empty()) {
        // normal selection: lowest lcm degree first, deterministic tiebreak
        std::size_t pick = 0;
        for (std::size_t k = 1; k < queue.size(); ++k) {
            int dk = total_degree(queue[k].lcm), dp = total_degree(queue[pick].lcm);
            if (dk < dp || (dk == dp && std::lexicographical_compare(queue[k].lcm.begin(),
                                                                     queue[k].lcm.end(),
                                                                     queue[pick].lcm.begin(),
                                                                     queue[pick].lcm.end())))
                pick = k;
        }
        Pair pr = queue[pick];
        queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(pick));
        done.insert({pr.i, pr.j});

        const Monomial& mi = g[pr.i].front().m;
        const Monomial& mj = g[pr.j].front().m;
        // product criterion
        Monomial sum(mi.size());
        for (std::size_t k = 0; k < mi.size(); ++k) sum[k] = mi[k] + mj[k];
        if (sum == pr.lcm) continue;
        // chain criterion
        bool skip = false;
        for (std::size_t k = 0; k < g.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!divides(g[k].front().m, pr.lcm)) continue;
            auto key1 = std::minmax(pr.i, k);
            auto key2 = std::minmax(pr.j, k);
            if (done.count({key1.first, key1.second}) && done.count({key2.first, key2.second}))
                skip = true;
        }
        if (skip) continue;

        TVec sp = addmul(TVec{}, GaussianRational(1), mono_sub(pr.lcm, mi), g[pr.i], ord);
        sp = addmul(sp, -GaussianRational(1), mono_sub(pr.lcm, mj), g[pr.j], ord);
        TVec nf = reduce(std::move(sp), g, ord);
        if (nf.empty()) continue;
        make_monic(nf);
        check_degree_cap(nf, "basis element");
        g.push_back(std::move(nf));
        if (g.size() > caps().max_basis)
            throw cap_exceeded("basis size exceeds cap " + std::to_string(caps().max_basis));
        push_pairs(g.size() - 1);
    }

    // interreduce leading terms
    std::vector<TVec> lead_reduced;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j) continue;
            if (!divides(g[j].front().m, g[i].front().m)) continue;
            // on equal leading monomials keep the earlier element
            if (g[j].front().m == g[i].front().m && j > i) continue;
            redundant = true;
        }
        if (!redundant) lead_reduced.push_back(g[i]);
    }
    // tail-reduce (global orders only: local tails need not terminate)
    if (!ord.is_local()) {
        for (std::size_t i = 0; i < lead_reduced.size(); ++i) {
            std::vector<TVec> others;
            for (std::size_t j = 0; j < lead_reduced.size(); ++j)
                if (j != i) others.push_back(lead_reduced[j]);
            lead_reduced[i] = reduce(lead_reduced[i], others, ord);
            make_monic(lead_reduced[i]);
        }
        lead_reduced.erase(std::remove_if(lead_reduced.begin(), lead_reduced.end(),
                                          [](const TVec& v) { return v.empty(); }),
                           lead_reduced.end());
    }
    std::sort(lead_reduced.begin(), lead_reduced.end(),
              [&](const TVec& a, const TVec& b) { return ord.greater(a.front().m, b.front().m); });
    return lead_reduced;
}

RingPtr common_ring(const std::vector<Polynomial>& gens) {
    for (const auto& p : gens)
        if (p.ring()) return p.ring();
    throw std::invalid_argument("empty generator list without ring");
}

std::vector<TVec> convert_in(const std::vector<Polynomial>& gens, const MonomialOrder& ord) {
    std::vector<TVec> v;
    for (const auto& p : gens)
        if (!p.is_zero()) v.push_back(to_tvec(p, ord));
    return v;
}

std::vector<Polynomial> convert_out(const std::vector<TVec>& basis, const RingPtr& ring) {
    std::vector<Polynomial> out;
    out.reserve(basis.size());
    for (const auto& b : basis) out.push_back(to_poly(b, ring));
    return out;
}

}  // namespace

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& ord) {
    if (gens.empty()) return {};
    RingPtr ring = common_ring(gens);
    return convert_out(buchberger(convert_in(gens, ord), ord), ring);
}

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                       const MonomialOrder& ord) {
    if (p.is_zero() || basis.empty()) return p;
    return to_poly(reduce(to_tvec(p, ord), convert_in(basis, ord), ord), p.ring());
}

bool ideal_membership(const Polynomial& p, const std::vector<Polynomial>& gens,
                      const MonomialOrder& ord) {
    if (p.is_zero()) return true;
    auto gb = groebner_basis(gens, ord);
    return normal_form(p, gb, ord).is_zero();
}

bool ideals_equal(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                  const MonomialOrder& ord) {
    auto ga = groebner_basis(a, ord);
    auto gb = groebner_basis(b, ord);
    for (const auto& p : a)
        if (!normal_form(p, gb, ord).is_zero()) return false;
    for (const auto& p : b)
        if (!normal_form(p, ga, ord).is_zero()) return false;
    return true;
}

EliminationResult eliminate(const std::vector<Polynomial>& gens, const std::vector<int>& drop_slots) {
    RingPtr ring = common_ring(gens);
    std::vector<char> drop(ring->size(), 0);
    for (int s : drop_slots) drop.at(static_cast<std::size_t>(s)) = 1;

    // Back-substitution pre-pass: a generator c*x + r with x dropped,
    // constant c, and x absent from r lets us splice x := -r/c directly.
    std::vector<Polynomial> work;
    for (const auto& p : gens)
        if (!p.is_zero()) work.push_back(p);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t gi = 0; gi < work.size() && !changed; ++gi) {
            const Polynomial& p = work[gi];
            for (std::size_t x = 0; x < ring->size() && !changed; ++x) {
                if (!drop[x]) continue;
                GaussianRational lin_coeff;
                bool solvable = p.degree_in(static_cast<int>(x)) == 1;
                if (!solvable) continue;
                Polynomial rest(ring);
                for (const auto& [m, c] : p.terms()) {
                    if (m[x] == 0) {
                        rest.add_term(m, c);
                        continue;
                    }
                    Monomial base = m;
                    base[x] = 0;
                    if (total_degree(base) != 0) {
                        solvable = false;
                        break;
                    }
                    lin_coeff = c;
                }
                if (!solvable || lin_coeff.is_zero()) continue;
                std::vector<std::optional<Polynomial>> images(ring->size());
                for (std::size_t k = 0; k < ring->size(); ++k)
                    images[k] = Polynomial::variable(ring, static_cast<int>(k));
                images[x] = rest.scaled(-(GaussianRational(1) / lin_coeff));
                std::vector<Polynomial> next;
                for (std::size_t gj = 0; gj < work.size(); ++gj) {
                    if (gj == gi) continue;
                    Polynomial q = work[gj].substitute(images, ring);
                    if (!q.is_zero()) next.push_back(std::move(q));
                }
                work = std::move(next);
                changed = true;
            }
        }
    }

    std::vector<int> remaining_drop;
    for (std::size_t i = 0; i < ring->size(); ++i)
        if (drop[i]) remaining_drop.push_back(static_cast<int>(i));

    std::vector<Polynomial> basis;
    if (!work.empty()) {
        MonomialOrder ord = MonomialOrder::elimination(remaining_drop, ring->size());
        basis = groebner_basis(work, ord);
    }

    EliminationResult res;
    std::vector<std::string> names;
    std::set<std::string> used;
    for (std::size_t i = 0; i < ring->size(); ++i) {
        if (drop[i]) continue;
        res.kept_slots.push_back(static_cast<int>(i));
        const Variable& v = ring->var(static_cast<int>(i));
        std::string n = v.role == VarRole::Antiholomorphic ? v.name + "_bar" : v.name;
        while (used.count(n)) n += "_";
        used.insert(n);
        names.push_back(n);
    }
    res.ring = Ring::make_plain(names);
    for (const auto& p : basis) {
        bool clean = true;
        for (const auto& [m, c] : p.terms()) {
            for (int s : remaining_drop)
                if (m[static_cast<std::size_t>(s)] > 0) {
                    clean = false;
                    break;
                }
            if (!clean) break;
        }
        if (clean) res.gens.push_back(p.restricted_to(res.kept_slots, res.ring));
    }
    return res;
}

std::vector<Polynomial> saturation(const std::vector<Polynomial>& gens, const Polynomial& f) {
    RingPtr ring = common_ring(gens);
    RingPtr big = extend_ring(ring, {"sat_t"});
    int t = static_cast<int>(big->size()) - 1;
    std::vector<Polynomial> work;
    for (const auto& p : gens) work.push_back(embed(p, big));
    Polynomial one = Polynomial::constant(big, GaussianRational(1));
    work.push_back(one - Polynomial::variable(big, t) * embed(f, big));
    EliminationResult er = eliminate(work, {t});
    std::vector<Polynomial> out;
    for (const auto& p : er.gens) {
        Polynomial q(ring);
        for (const auto& [m, c] : p.terms()) q.add_term(m, c);
        out.push_back(std::move(q));
    }
    return out;
}

int ideal_dimension(const std::vector<Polynomial>& gens) {
    RingPtr ring = common_ring(gens);
    auto gb = groebner_basis(gens, MonomialOrder::grevlex());
    std::vector<Monomial> lms;
    for (const auto& p : gb) {
        if (p.is_constant() && !p.is_zero()) return -1;
        lms.push_back(p.terms().begin()->first);
    }
    std::size_t n = ring->size();
    if (n > 24) throw std::invalid_argument("ideal_dimension: too many variables");
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int sz = __builtin_popcount(mask);
        if (sz <= best) continue;
        bool independent = true;
        for (const auto& m : lms) {
            bool inside = true;
            for (std::size_t i = 0; i < n && inside; ++i)
                if (m[i] > 0 && !(mask & (1u << i))) inside = false;
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = sz;
    }
    return best;
}

LocalMultiplicity local_multiplicity(const std::vector<Polynomial>& gens) {
    RingPtr ring = common_ring(gens);
    MonomialOrder ord = MonomialOrder::local();
    auto sb = groebner_basis(gens, ord);
    std::size_t n = ring->size();

    // the term map is grevlex-sorted, so re-extract leads under the local order
    std::vector<Monomial> lms;
    for (const auto& p : sb) lms.push_back(to_tvec(p, ord).front().m);
    // a unit leading term makes the local ideal everything
    for (const auto& m : lms)
        if (total_degree(m) == 0) return {true, 0, sb};

    std::vector<int> bound(n, -1);
    for (const auto& m : lms) {
        int support = -1;
        bool pure = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (m[i] == 0) continue;
            if (support >= 0) {
                pure = false;
                break;
            }
            support = static_cast<int>(i);
        }
        if (pure && support >= 0) {
            std::size_t s = static_cast<std::size_t>(support);
            if (bound[s] < 0 || m[s] < bound[s]) bound[s] = m[s];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (bound[i] < 0) return LocalMultiplicity::infinite(sb);

    // count staircase monomials below the pure-power box
    long count = 0;
    Monomial cur(n, 0);
    const long limit = 2000000;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == n) {
            for (const auto& m : lms)
                if (divides(m, cur)) return;
            if (++count > limit) throw cap_exceeded("staircase count exceeds enumeration limit");
            return;
        }
        for (int e = 0; e < bound[i]; ++e) {
            cur[i] = e;
            walk(i + 1);
        }
        cur[i] = 0;
    };
    walk(0);
    return {true, count, sb};
}

RingPtr extend_ring(const RingPtr& ring, const std::vector<std::string>& extra_names) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < ring->size(); ++i) {
        const Variable& v = ring->var(static_cast<int>(i));
        names.push_back(v.role == VarRole::Antiholomorphic ? v.name + "_bar" : v.name);
    }
    for (const auto& n : extra_names) names.push_back(n);
    return Ring::make_plain(names);
}

Polynomial embed(const Polynomial& p, const RingPtr& bigger) {
    Polynomial q(bigger);
    std::size_t extra = bigger->size() - p.ring()->size();
    for (const auto& [m, c] : p.terms()) {
        Monomial big = m;
        big.resize(m.size() + extra, 0);
        q.add_term(big, c);
    }
    return q;
}

}  // namespace crsing
