#pragma once

#include "keller/factor.hpp"
#include "keller/funcfield.hpp"
#include "keller/groebner.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace keller {

enum class Verdict {
    NotKellerNonConstantJacobian,
    NotKellerZeroJacobian,
    Degenerate,
    Automorphism,
    CounterexampleCandidate,
};

std::string to_string(Verdict v);

struct VFactorEvidence {
    Polynomial factor;  // in {u1, u2}
    unsigned multiplicity = 1;
    bool preserved = false;
    Factorization image;  // of factor(p, q)
};

struct TfaeBits {
    bool i = false;    // inverse found and verified
    bool ii = false;   // r = 1
    bool iii = false;  // all units of the localization lie in Q(p, q)
    bool consistent() const { return i == ii && ii == iii; }
};

struct ClassifyConfig {
    GroebnerLimits limits;
    FactorOptions factor;
    bool force = false;
};

struct ClassificationReport {
    Endomorphism map;
    Verdict verdict = Verdict::Degenerate;
    std::string reason;  // for Degenerate
    JacobianResult jacobian;
    bool forced = false;
    std::optional<KernelGenerator> kernel;
    std::optional<UVDecomposition> uv;
    std::optional<Factorization> v_factorization;
    std::vector<VFactorEvidence> v_factors;
    std::optional<UnitsVerdict> units;
    std::optional<std::pair<Polynomial, Polynomial>> inverse;
    std::optional<bool> inverse_matches_kernel;  // -H0/H1 agrees with the membership inverse
    std::optional<TfaeBits> tfae;
    std::vector<std::string> notes;
    GroebnerStats stats;
    double millis = 0;
};

ClassificationReport classify(const Endomorphism& f, const ClassifyConfig& config = {});

// (s, t) in {u1, u2} with s(p, q) = x and t(p, q) = y; MembershipFailed otherwise.
std::pair<Polynomial, Polynomial> invert(const Endomorphism& f, const GroebnerLimits& limits = {});

bool verify_inverse(const Endomorphism& f, const Polynomial& s, const Polynomial& t);

unsigned birationality_degree(const Endomorphism& f, const GroebnerLimits& limits = {});

struct AffineStep {
    // (p, q) -> (a p + b q + e, c p + d q + f)
    Rational a{1}, b{0}, c{0}, d{1}, e{0}, f{0};
    Rational det() const { return a * d - b * c; }
};

// in_x: (p, q) -> (p, q + c p^k), i.e. y -> y + c x^k on the current pair.
// otherwise: (p, q) -> (p + c q^k, q).
struct ElementaryStep {
    bool in_x = true;
    Rational c{1};
    unsigned k = 2;
};

using TameStep = std::variant<AffineStep, ElementaryStep>;

struct TameRecipe {
    std::uint64_t seed = 0;
    std::vector<TameStep> steps;
    int degree_cap = 12;
};

TameRecipe make_recipe(std::uint64_t seed, int degree_cap = 12);
Endomorphism generate_tame(const TameRecipe& recipe);
Rational recipe_jacobian(const TameRecipe& recipe);
std::string describe(const TameRecipe& recipe);

struct TfaeReport {
    TfaeBits bits;
    bool consistent = false;
};

TfaeReport cross_check_tfae(const Endomorphism& f, const ClassifyConfig& config = {});

}  // namespace keller
