#pragma once

#include "keller/poly.hpp"

#include <cstddef>
#include <string>

namespace keller {

// lex, grevlex, or a two-block elimination order. In a block order the first
// `split` context variables are compared first (by `inner`, grevlex unless
// asked otherwise), then the remaining ones by grevlex.
class MonomialOrder {
  public:
    enum class Kind { Lex, Grevlex, Block };

    static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0, Kind::Grevlex); }
    static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, 0, Kind::Grevlex); }
    static MonomialOrder block(std::size_t split, Kind inner = Kind::Grevlex) {
        return MonomialOrder(Kind::Block, split, inner);
    }

    Kind kind() const { return kind_; }
    std::size_t split() const { return split_; }
    Kind inner() const { return inner_; }

    // <0, 0, >0 as a compares below, equal to, above b.
    int compare(const Monomial& a, const Monomial& b) const {
        switch (kind_) {
            case Kind::Lex:
                return lex_range(a, b, 0, kMaxVars);
            case Kind::Grevlex:
                return grevlex_range(a, b, 0, kMaxVars);
            case Kind::Block: {
                int c = inner_ == Kind::Lex ? lex_range(a, b, 0, split_) : grevlex_range(a, b, 0, split_);
                return c != 0 ? c : grevlex_range(a, b, split_, kMaxVars);
            }
        }
        return 0;
    }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    std::string describe() const;
    bool operator==(const MonomialOrder&) const = default;

  private:
    MonomialOrder(Kind k, std::size_t split, Kind inner) : kind_(k), split_(split), inner_(inner) {}

    static int lex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
    }

    static int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        std::uint64_t da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += a[i];
            db += b[i];
        }
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t i = hi; i-- > lo;)
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        return 0;
    }

    Kind kind_;
    std::size_t split_;
    Kind inner_;
};

}  // namespace keller
