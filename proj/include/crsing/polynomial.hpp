#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"
#include "ring.hpp"

namespace crsing {

using Monomial = std::vector<int>;  // exponent vector, one slot per ring variable

inline int total_degree(const Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

// Graded reverse lexicographic, "greater" predicate.  Canonical storage
// order for every polynomial: leading term first.
struct GrevlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }
};

// Vanishing order of a polynomial or truncated series at 0.
struct VanishingOrder {
    enum Kind { FINITE, INFINITE, UNKNOWN_BEYOND } kind;
    int value;  // order if FINITE; truncation cap if UNKNOWN_BEYOND

    static VanishingOrder finite(int k) { return {FINITE, k}; }
    static VanishingOrder infinite() { return {INFINITE, 0}; }
    static VanishingOrder unknown_beyond(int cap) { return {UNKNOWN_BEYOND, cap}; }

    bool operator==(const VanishingOrder& o) const { return kind == o.kind && value == o.value; }
    std::string str() const;
};

class Polynomial {
  public:
    using TermMap = std::map<Monomial, GaussianRational, GrevlexGreater>;

    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial constant(RingPtr ring, GaussianRational c);
    static Polynomial variable(RingPtr ring, int var_index, int power = 1);

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GaussianRational constant_term() const;
    std::size_t term_count() const { return terms_.size(); }

    int degree() const;                       // max total degree, -1 for 0
    VanishingOrder order_of_vanishing() const;  // min total degree, INFINITE for 0
    int degree_in(int var_index) const;       // max exponent of one variable

    void add_term(const Monomial& m, const GaussianRational& c);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial scaled(const GaussianRational& c) const;
    Polynomial pow(int k) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Conjugation automorphism: conjugates coefficients and swaps each
    // variable with its mate (identity on real variables).
    Polynomial conj() const;
    bool is_real_valued() const { return *this == conj(); }

    // Formal Wirtinger partial with respect to slot var_index.
    Polynomial wirtinger(int var_index) const;

    // Simultaneous substitution var -> polynomial over a common target ring.
    // Slots not bound must not occur unless map_identity provides them.
    Polynomial substitute(const std::vector<std::optional<Polynomial>>& images,
                          RingPtr target, int truncate_above = -1) const;

    // Keep only terms of total degree <= cap.
    Polynomial truncated(int cap) const;

    // Drop-in for polynomials whose exponents are zero outside `keep`:
    // reinterpret over the smaller ring given by ordered slot list `keep`.
    Polynomial restricted_to(const std::vector<int>& keep, RingPtr target) const;

    std::string str() const;

  private:
    RingPtr ring_;
    TermMap terms_;
};

// Evaluation point: exact values for holomorphic and real slots; the
// antiholomorphic slots take conjugate values automatically.
class Point {
  public:
    explicit Point(RingPtr ring);
    void set(int var_index, GaussianRational v);  // var_index must be holo or real slot
    const GaussianRational& value(int slot) const;  // any slot, conj applied
    const RingPtr& ring() const { return ring_; }

  private:
    RingPtr ring_;
    std::vector<GaussianRational> values_;
};

GaussianRational evaluate(const Polynomial& p, const Point& pt);

// Determinant of a square polynomial matrix by cofactor expansion.
Polynomial poly_determinant(const std::vector<std::vector<Polynomial>>& a);

// Complexification: antiholomorphic slots become independent variables.
// Exponent vectors carry over unchanged; Complexification remembers the
// slot correspondence so the diagonal restriction is exact.
struct Complexification {
    RingPtr doubled;   // same slot count, all roles stripped of pairing
    RingPtr original;

    Polynomial to_doubled(const Polynomial& p) const;
    Polynomial to_original(const Polynomial& p) const;  // restrict xi := conj(z)
};

Complexification complexify_ring(const RingPtr& ring);

// Real coordinates: each complex pair (z, conj z) gets slots (x, y) with
// z = x + i y; real variables pass through.  re/im are the two real parts
// of the rewritten polynomial (coefficients split over Q).
struct Realification {
    RingPtr real_ring;
    std::vector<int> re_slot;  // per original slot: slot of its x (or passthrough)
    std::vector<int> im_slot;  // per original slot: slot of its y, -1 for real vars
    RingPtr original;

    std::pair<Polynomial, Polynomial> split(const Polynomial& p) const;
};

Realification realify_ring(const RingPtr& ring);

// Truncated formal power series: polynomial jet known exactly up to cap.
struct TruncatedSeries {
    Polynomial jet;
    int cap;

    TruncatedSeries() : cap(0) {}
    TruncatedSeries(Polynomial p, int c) : jet(p.truncated(c)), cap(c) {}

    VanishingOrder order_of_vanishing() const {
        if (jet.is_zero()) return VanishingOrder::unknown_beyond(cap);
        return jet.order_of_vanishing();
    }

    TruncatedSeries operator+(const TruncatedSeries& o) const {
        int c = std::min(cap, o.cap);
        return TruncatedSeries(jet + o.jet, c);
    }
    TruncatedSeries operator*(const TruncatedSeries& o) const {
        int c = std::min(cap, o.cap);
        return TruncatedSeries(jet * o.jet, c);
    }
};

}  // namespace crsing
