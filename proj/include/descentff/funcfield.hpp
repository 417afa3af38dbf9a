#pragma once

#include <optional>

#include "descentff/poly.hpp"

namespace dff {

// Rational function field K(t) over a coefficient field K. Elements are
// kept reduced with a monic denominator, so structural equality is field
// equality.
template <FieldCtx F>
class RatFuncField {
  public:
    struct Elem {
        Poly<F> num;
        Poly<F> den;  // monic, coprime to num; den == 1 for polynomials
    };

    explicit RatFuncField(const F& base) : base_(&base) {}

    const F& coeff_field() const { return *base_; }

    Elem make(Poly<F> num, Poly<F> den) const {
        require(!den.c.empty(), errc::degenerate_input, "rational function with zero denominator");
        if (num.c.empty()) return zero();
        Poly<F> g = pol::gcd(*base_, num, den);
        if (!g.c.empty() && pol::degi(g) > 0) {
            num = pol::divide_exact(*base_, num, g);
            den = pol::divide_exact(*base_, den, g);
        }
        auto lc = pol::lead(den);
        if (!base_->eq(lc, base_->one())) {
            auto li = base_->inv(lc);
            num = pol::scale(*base_, num, li);
            den = pol::scale(*base_, den, li);
        }
        return {std::move(num), std::move(den)};
    }
    Elem from_poly(Poly<F> p) const { return make(std::move(p), pol::one(*base_)); }
    Elem t() const { return from_poly(pol::monomial(*base_, base_->one(), 1)); }
    Elem lift(const typename F::Elem& c) const { return from_poly(pol::constant(*base_, c)); }

    Elem zero() const { return {{}, pol::one(*base_)}; }
    Elem one() const { return {pol::one(*base_), pol::one(*base_)}; }
    Elem from_int(std::int64_t n) const { return from_poly(pol::constant(*base_, base_->from_int(n))); }

    bool is_zero(const Elem& a) const { return a.num.c.empty(); }
    bool eq(const Elem& a, const Elem& b) const {
        return pol::eq(*base_, a.num, b.num) && pol::eq(*base_, a.den, b.den);
    }
    bool is_polynomial(const Elem& a) const { return pol::degi(a.den) == 0; }

    Elem add(const Elem& a, const Elem& b) const {
        Poly<F> n = pol::add(*base_, pol::mul(*base_, a.num, b.den), pol::mul(*base_, b.num, a.den));
        return make(std::move(n), pol::mul(*base_, a.den, b.den));
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Poly<F> n = pol::sub(*base_, pol::mul(*base_, a.num, b.den), pol::mul(*base_, b.num, a.den));
        return make(std::move(n), pol::mul(*base_, a.den, b.den));
    }
    Elem neg(const Elem& a) const { return {pol::neg(*base_, a.num), a.den}; }
    Elem mul(const Elem& a, const Elem& b) const {
        return make(pol::mul(*base_, a.num, b.num), pol::mul(*base_, a.den, b.den));
    }
    Elem inv(const Elem& a) const {
        require(!is_zero(a), errc::degenerate_input, "inverse of zero");
        return make(a.den, a.num);
    }
    std::uint64_t characteristic() const { return base_->characteristic(); }

    // valuation at t = infinity: deg(den) - deg(num); the pole order of the
    // function as a map from the projective line
    int deg(const Elem& a) const {
        require(!is_zero(a), errc::degenerate_input, "degree of zero");
        return pol::degi(a.num) - pol::degi(a.den);
    }

    std::optional<Elem> sqrt(const Elem& a) const {
        if (is_zero(a)) return a;
        auto rnum = pol::formal_square_root(*base_, a.num);
        if (!rnum) return std::nullopt;
        auto rden = pol::formal_square_root(*base_, a.den);
        if (!rden) return std::nullopt;
        return make(*rnum, *rden);
    }

    Key key(const Elem& a) const {
        Key kn = pol::key(*base_, a.num), kd = pol::key(*base_, a.den);
        Key out;
        out.push_back(kn.size());
        out.insert(out.end(), kn.begin(), kn.end());
        out.insert(out.end(), kd.begin(), kd.end());
        return out;
    }
    std::string to_string(const Elem& a) const {
        std::string s = "(" + pol::to_string(*base_, a.num, "t") + ")";
        if (pol::degi(a.den) > 0) s += "/(" + pol::to_string(*base_, a.den, "t") + ")";
        return s;
    }

  private:
    const F* base_;
};

}  // namespace dff
