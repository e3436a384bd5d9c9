#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace crsing {

// Hard resource limits for basis computations.  Exceeding one throws; we
// never truncate silently.
struct Caps {
    std::size_t max_basis = 20000;
    int max_degree = 60;
};

Caps& caps();

struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Monomial orders used by basis computations.  GREVLEX and ELIMINATION are
// global (1 is smallest); LOCAL is negative-graded revlex (1 is largest),
// the order under which standard bases see vanishing order at 0.
class MonomialOrder {
  public:
    enum Kind { GREVLEX, ELIMINATION, LOCAL };

    static MonomialOrder grevlex() { return MonomialOrder(GREVLEX, {}); }
    static MonomialOrder local() { return MonomialOrder(LOCAL, {}); }
    // drop_slots form the leading block; anything containing them outranks
    // every monomial free of them.
    static MonomialOrder elimination(std::vector<int> drop_slots, std::size_t nvars);

    bool greater(const Monomial& a, const Monomial& b) const;
    bool is_local() const { return kind_ == LOCAL; }
    Kind kind() const { return kind_; }

  private:
    MonomialOrder(Kind k, std::vector<char> mask) : kind_(k), in_block_(std::move(mask)) {}
    Kind kind_;
    std::vector<char> in_block_;
};

// Reduced Groebner basis for global orders; Mora standard basis for the
// local order (interreduced leads, monic, deterministically sorted).
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& ord);

// Full normal form for global orders; Mora weak normal form for LOCAL
// (zero iff membership in the localized ideal).
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                       const MonomialOrder& ord);

bool ideal_membership(const Polynomial& p, const std::vector<Polynomial>& gens,
                      const MonomialOrder& ord);

bool ideals_equal(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                  const MonomialOrder& ord);

struct EliminationResult {
    RingPtr ring;                 // ring on the kept slots
    std::vector<int> kept_slots;  // slot indices in the original ring
    std::vector<Polynomial> gens; // generators of the elimination ideal
};

EliminationResult eliminate(const std::vector<Polynomial>& gens, const std::vector<int>& drop_slots);

// (I : f^infinity) via the extra-variable trick.
std::vector<Polynomial> saturation(const std::vector<Polynomial>& gens, const Polynomial& f);

// Dimension of V(I) from the leading-term staircase of a global basis;
// -1 for the unit ideal.
int ideal_dimension(const std::vector<Polynomial>& gens);

struct LocalMultiplicity {
    bool finite;
    long value;  // dim_C of the local quotient when finite
    std::vector<Polynomial> std_basis;

    static LocalMultiplicity infinite(std::vector<Polynomial> sb) { return {false, 0, std::move(sb)}; }
};

// dim_C O_0 / <gens> via standard basis and staircase count.  Generators
// must vanish at 0 unless the ideal is the whole ring locally.
LocalMultiplicity local_multiplicity(const std::vector<Polynomial>& gens);

// Extend a ring by fresh plain variables; embed polynomials slot-for-slot.
RingPtr extend_ring(const RingPtr& ring, const std::vector<std::string>& extra_names);
Polynomial embed(const Polynomial& p, const RingPtr& bigger);

}  // namespace crsing
