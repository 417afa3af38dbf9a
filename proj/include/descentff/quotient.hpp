#pragma once

#include <memory>
#include <optional>

#include "descentff/factor.hpp"

namespace dff {

// Generic deterministic Tonelli-Shanks over a finite field context that
// exposes order(), pow() and canonical keys. Returns the key-smaller root.
template <class K>
std::optional<typename K::Elem> generic_sqrt(const K& k, const typename K::Elem& a) {
    if (k.is_zero(a)) return a;
    const mpz_class& q = k.order();
    mpz_class e = (q - 1) / 2;
    if (!k.eq(k.pow(a, e), k.one())) return std::nullopt;
    mpz_class q2 = q - 1;
    unsigned s = 0;
    while (mpz_even_p(q2.get_mpz_t())) { q2 >>= 1; ++s; }
    typename K::Elem r;
    if (s == 1) {
        r = k.pow(a, (q + 1) / 4);
    } else {
        // deterministic non-residue: fixed-seed sampling
        Rng rng(0x90017e11u);
        typename K::Elem z;
        while (true) {
            z = k.sample(rng);
            if (k.is_zero(z)) continue;
            if (!k.eq(k.pow(z, e), k.one())) break;
        }
        unsigned m = s;
        auto c = k.pow(z, q2);
        auto t = k.pow(a, q2);
        auto rr = k.pow(a, (q2 + 1) / 2);
        while (!k.eq(t, k.one())) {
            unsigned i = 0;
            auto tt = t;
            while (!k.eq(tt, k.one())) { tt = k.mul(tt, tt); ++i; }
            auto b = c;
            for (unsigned j = 0; j + i + 1 < m; ++j) b = k.mul(b, b);
            m = i;
            c = k.mul(b, b);
            t = k.mul(t, c);
            rr = k.mul(rr, b);
        }
        r = rr;
    }
    auto nr = k.neg(r);
    return key_cmp(k.key(r), k.key(nr)) <= 0 ? r : nr;
}

// Field extension as a quotient by a monic irreducible polynomial over an
// arbitrary base field. Used for towers that never need flattening (e.g.
// residue fields over an already-large finite field, or quadratic
// extensions of a rational function field).
template <FieldCtx F>
class QuotientExt {
  public:
    using Elem = Poly<F>;  // representative of degree < deg(modulus)

    QuotientExt(const F& base, Poly<F> modulus) : base_(&base), mod_(std::move(modulus)) {
        require(!mod_.c.empty() && pol::degi(mod_) >= 1, errc::unsupported_field,
                "quotient modulus must have degree >= 1");
        mod_ = pol::monic(base, mod_);
        if constexpr (FiniteFieldCtx<F>) {
            mpz_pow_ui(q_.get_mpz_t(), base.order().get_mpz_t(),
                       static_cast<unsigned long>(pol::degi(mod_)));
        }
    }

    const F& coeff_field() const { return *base_; }
    const Poly<F>& modulus() const { return mod_; }
    int degree() const { return pol::degi(mod_); }

    Elem zero() const { return {}; }
    Elem one() const { return pol::one(*base_); }
    Elem gen() const { return pol::rem(*base_, pol::monomial(*base_, base_->one(), 1), mod_); }
    Elem from_int(std::int64_t n) const { return pol::constant(*base_, base_->from_int(n)); }
    Elem lift(const typename F::Elem& c) const { return pol::constant(*base_, c); }

    bool is_zero(const Elem& a) const { return a.c.empty(); }
    bool eq(const Elem& a, const Elem& b) const { return pol::eq(*base_, a, b); }
    Elem add(const Elem& a, const Elem& b) const { return pol::add(*base_, a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return pol::sub(*base_, a, b); }
    Elem neg(const Elem& a) const { return pol::neg(*base_, a); }
    Elem mul(const Elem& a, const Elem& b) const {
        return pol::rem(*base_, pol::mul(*base_, a, b), mod_);
    }
    Elem inv(const Elem& a) const {
        require(!is_zero(a), errc::degenerate_input, "inverse of zero");
        Poly<F> g, u, v;
        pol::xgcd(*base_, a, mod_, g, u, v);
        require(pol::degi(g) == 0, errc::internal_consistency,
                "quotient modulus is not irreducible: inverse failed");
        return pol::rem(*base_, pol::scale(*base_, u, base_->inv(g.c[0])), mod_);
    }
    std::uint64_t characteristic() const { return base_->characteristic(); }

    Key key(const Elem& a) const { return pol::key(*base_, a); }
    std::string to_string(const Elem& a) const { return pol::to_string(*base_, a, "w"); }

    const mpz_class& order() const
        requires FiniteFieldCtx<F>
    {
        return q_;
    }
    Elem pow(Elem a, mpz_class e) const {
        Elem r = one();
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Elem sample(Rng& rng) const
        requires FiniteFieldCtx<F>
    {
        Elem e;
        e.c.resize(pol::degi(mod_));
        for (auto& c : e.c) c = base_->sample(rng);
        pol::trim(*base_, e);
        return e;
    }
    bool is_square(const Elem& a) const
        requires FiniteFieldCtx<F>
    {
        if (is_zero(a)) return true;
        return eq(pow(a, (q_ - 1) / 2), one());
    }
    std::optional<Elem> sqrt(const Elem& a) const
        requires FiniteFieldCtx<F>
    {
        return generic_sqrt(*this, a);
    }

  private:
    const F* base_;
    Poly<F> mod_;
    mpz_class q_;
};

}  // namespace dff
