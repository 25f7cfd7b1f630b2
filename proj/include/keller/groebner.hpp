#pragma once

#include "keller/order.hpp"
#include "keller/poly.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace keller {

struct GroebnerLimits {
    std::size_t max_spairs = 50000;
    std::uint32_t max_degree = 60;

    // Default caps, with KELLER_MAX_SPAIRS applied when set.
    static GroebnerLimits from_environment();
};

struct GroebnerStats {
    std::size_t spairs = 0;
    std::size_t zero_reductions = 0;
    std::uint32_t max_degree = 0;

    GroebnerStats& operator+=(const GroebnerStats& o) {
        spairs += o.spairs;
        zero_reductions += o.zero_reductions;
        max_degree = std::max(max_degree, o.max_degree);
        return *this;
    }
};

// Generator list in a fixed context. Zero generators are dropped, so an empty
// list is the zero ideal.
struct Ideal {
    VarContext context;
    std::vector<Polynomial> generators;

    Ideal() = default;
    Ideal(VarContext ctx, std::vector<Polynomial> gens);
};

struct GroebnerBasis {
    Ideal ideal;  // the input
    MonomialOrder order = MonomialOrder::grevlex();
    // Reduced basis: integer-primitive, positive leading coefficient under
    // `order`, sorted by descending leading monomial.
    std::vector<Polynomial> elements;
    GroebnerStats stats;
};

struct NormalFormResult {
    Polynomial remainder;
    bool reduced = false;
};

// Leading monomial / coefficient under an arbitrary order.
const Term& leading_term(const Polynomial& p, const MonomialOrder& order);

// Full reduction of f by `basis`; among reducers the lowest index wins.
NormalFormResult normal_form(const Polynomial& f, std::span<const Polynomial> basis, const MonomialOrder& order);

GroebnerBasis buchberger(const Ideal& ideal, const MonomialOrder& order, const GroebnerLimits& limits = {});

struct GroebnerCheck {
    bool generators_reduce = false;  // every input generator has normal form 0
    bool spolys_reduce = false;      // every S-polynomial reduces to 0
    bool ok() const { return generators_reduce && spolys_reduce; }
};
GroebnerCheck verify_groebner(const GroebnerBasis& basis);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

struct Elimination {
    Ideal result;  // in the context of the kept variables, original order
    GroebnerBasis basis;
};

// ideal ∩ Q[kept]: basis elements free of `drop` under a block order with the
// dropped variables first.
Elimination eliminate(const Ideal& ideal, std::span<const std::string> drop, const GroebnerLimits& limits = {});

// Generator H of ker(u1 -> p, u2 -> q, u3 -> x), written H = sum_j H_j u3^j.
struct KernelGenerator {
    Polynomial H;                  // in {u1, u2, u3}
    unsigned r = 0;                // degree of H in u3
    std::vector<Polynomial> coeffs;  // H_0 .. H_r, each in {u1, u2}
    GroebnerBasis basis;
};

KernelGenerator kernel_generator(const Endomorphism& f, const GroebnerLimits& limits = {});

// Decides w ∈ Q[p, q] with the tag-variable basis of (p - u1, q - u2) in
// Q[x, y, u1, u2]. Build once per map, query many times.
class SubringMembership {
  public:
    explicit SubringMembership(const Endomorphism& f, const GroebnerLimits& limits = {});

    // G in {u1, u2} with G(p, q) = w, verified by substitution.
    std::optional<Polynomial> member(const Polynomial& w) const;
    const GroebnerBasis& basis() const { return basis_; }

  private:
    Endomorphism map_;
    VarContext tagged_;
    GroebnerBasis basis_;
};

std::optional<Polynomial> subring_membership(const Polynomial& w, const Endomorphism& f,
                                             const GroebnerLimits& limits = {});

}  // namespace keller
