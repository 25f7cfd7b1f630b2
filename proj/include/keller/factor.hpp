#pragma once

#include "keller/groebner.hpp"
#include "keller/poly.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace keller {

struct Factor {
    Polynomial poly;  // canonically normalized
    unsigned multiplicity = 1;
};

enum class AbsoluteStatus { NotChecked, AbsolutelyIrreducible, Undetermined };

struct Factorization {
    Rational content{0};
    std::vector<Factor> factors;
    // Parallel to `factors` when the absolute check ran.
    std::vector<AbsoluteStatus> absolute;
    std::vector<std::size_t> gao_dimension;

    bool irreducible() const { return factors.size() == 1 && factors[0].multiplicity == 1; }
    Polynomial expand(const VarContext& ctx) const;
};

struct FactorOptions {
    int max_degree = 10;
    bool absolute = false;
};

// Square-free parts of the primitive part of f, grouped by multiplicity and
// normalized; sorted by multiplicity.
std::vector<Factor> squarefree_decomposition(const Polynomial& f);

// Factorization over Q of a polynomial in at most two (involved) variables.
Factorization factor_bivariate(const Polynomial& f, const FactorOptions& options = {});

// Dimension of the Gao/Ruppert solution space for a squarefree polynomial in
// two variables; it counts the absolutely irreducible factors.
std::size_t absolute_factor_count(const Polynomial& f);

struct Preservation {
    bool preserved = false;
    Polynomial image;
    Factorization image_factors;
};

// Whether vj(p, q) stays irreducible in Q[x, y].
Preservation stays_irreducible(const Polynomial& vj, const Endomorphism& f, const FactorOptions& options = {});

struct UnitWitness {
    Polynomial factor;  // irreducible factor of v(p, q)
    unsigned multiplicity = 1;
    std::optional<Polynomial> G;  // set when the factor lies in Q[p, q]
};

struct UnitsVerdict {
    bool all_units_in_Cpq = true;
    std::vector<UnitWitness> witnesses;
};

UnitsVerdict localization_units_check(const Endomorphism& f, const Polynomial& v, const FactorOptions& options = {},
                                      const GroebnerLimits& limits = {});
// Same, with the membership basis of f already built.
UnitsVerdict localization_units_check(const Endomorphism& f, const Polynomial& v, const SubringMembership& membership,
                                      const FactorOptions& options = {});

struct ProbeResult {
    bool violation = false;
    std::optional<std::pair<Polynomial, Polynomial>> witness;  // a1 outside Q[p,q], a1*a2 = G(p,q)
    std::optional<Polynomial> G;
    std::size_t tested = 0;
    std::size_t skipped = 0;  // images beyond the factorization cap
};

// One-sided search for a1*a2 in Q[p,q] - 0 with a1 outside Q[p,q]. The first
// two samples are G = u1 and G = u2, the rest random of degree <= degree_bound.
ProbeResult factorially_closed_probe(const Endomorphism& f, std::size_t samples, int degree_bound, std::uint64_t seed,
                                     const FactorOptions& options = {}, const GroebnerLimits& limits = {});

}  // namespace keller
