#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "descentff/poly.hpp"

namespace dff {

// F_{p^n} as a single-step quotient F_p[z]/(modulus); elements are coefficient
// vectors of fixed length n over the prime field. Towers are flattened to
// this shape before heavy arithmetic.
class ExtField {
  public:
    using Elem = std::vector<std::uint64_t>;

    ExtField(PrimeField base, std::vector<std::uint64_t> modulus)
        : base_(base), mod_(std::move(modulus)) {
        require(mod_.size() >= 2, errc::unsupported_field, "extension modulus must have degree >= 1");
        require(mod_.back() == 1, errc::unsupported_field, "extension modulus must be monic");
        n_ = mod_.size() - 1;
        // X^n == -(low part of modulus)
        red_.resize(n_);
        for (size_t i = 0; i < n_; ++i) red_[i] = base_.neg(mod_[i]);
        q_ = 1;
        mpz_class p(static_cast<unsigned long>(base_.p()));
        mpz_pow_ui(q_.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(n_));
    }

    const PrimeField& base() const { return base_; }
    std::uint64_t p() const { return base_.p(); }
    size_t degree() const { return n_; }
    const std::vector<std::uint64_t>& modulus() const { return mod_; }
    const mpz_class& order() const { return q_; }

    Elem zero() const { return Elem(n_, 0); }
    Elem one() const { return from_int(1); }
    Elem from_int(std::int64_t v) const {
        Elem e(n_, 0);
        e[0] = base_.from_int(v);
        return e;
    }
    Elem from_base(std::uint64_t v) const {
        Elem e(n_, 0);
        e[0] = v % base_.p();
        return e;
    }
    // the residue class of z, the generator of the quotient
    Elem gen() const {
        Elem e(n_, 0);
        if (n_ > 1) e[1] = 1;
        else e[0] = base_.neg(mod_[0]);  // degree-1 quotient: z == -mod[0]
        return e;
    }

    bool is_zero(const Elem& a) const {
        for (auto v : a)
            if (v) return false;
        return true;
    }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r(n_);
        for (size_t i = 0; i < n_; ++i) r[i] = base_.add(a[i], b[i]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(n_);
        for (size_t i = 0; i < n_; ++i) r[i] = base_.sub(a[i], b[i]);
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r(n_);
        for (size_t i = 0; i < n_; ++i) r[i] = base_.neg(a[i]);
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        if (n_ == 1) return Elem{base_.mul(a[0], b[0])};
        std::vector<std::uint64_t> t(2 * n_ - 1, 0);
        std::uint64_t p = base_.p();
        for (size_t i = 0; i < n_; ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < n_; ++j) {
                if (!b[j]) continue;
                t[i + j] = mod64::add(t[i + j], mod64::mul(a[i], b[j], p), p);
            }
        }
        for (size_t i = 2 * n_ - 2; i >= n_; --i) {
            std::uint64_t c = t[i];
            if (c) {
                for (size_t j = 0; j < n_; ++j)
                    t[i - n_ + j] = mod64::add(t[i - n_ + j], mod64::mul(c, red_[j], p), p);
            }
            if (i == n_) break;
        }
        t.resize(n_);
        return t;
    }

    Elem inv(const Elem& a) const {
        require(!is_zero(a), errc::degenerate_input, "inverse of zero");
        if (n_ == 1) return Elem{base_.inv(a[0])};
        // extended euclid in F_p[z]
        Poly<PrimeField> r0 = pol::make(base_, std::vector<std::uint64_t>(mod_));
        Poly<PrimeField> r1 = pol::make(base_, std::vector<std::uint64_t>(a));
        Poly<PrimeField> t0 = pol::zero(base_), t1 = pol::one(base_);
        while (!r1.c.empty()) {
            Poly<PrimeField> q, r;
            pol::divrem(base_, r0, r1, q, r);
            r0 = std::move(r1);
            r1 = std::move(r);
            Poly<PrimeField> t = pol::sub(base_, t0, pol::mul(base_, q, t1));
            t0 = std::move(t1);
            t1 = std::move(t);
        }
        auto s = base_.inv(pol::lead(r0));
        Poly<PrimeField> res = pol::scale(base_, t0, s);
        Elem out(n_, 0);
        for (size_t i = 0; i < res.c.size(); ++i) out[i] = res.c[i];
        return out;
    }

    std::uint64_t characteristic() const { return base_.p(); }

    Elem pow(Elem a, mpz_class e) const {
        Elem r = one();
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Elem pow_u(Elem a, std::uint64_t e) const {
        Elem r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Elem frobenius(const Elem& a) const { return pow_u(a, base_.p()); }

    bool is_square(const Elem& a) const {
        if (is_zero(a)) return true;
        if (base_.p() == 2) return true;
        mpz_class e = (q_ - 1) / 2;
        return eq(pow(a, e), one());
    }

    // Tonelli-Shanks over F_q; deterministic: the non-residue used is the
    // first one in the canonical element order, and the smaller of +-r under
    // that order is returned.
    std::optional<Elem> sqrt(const Elem& a) const {
        if (is_zero(a)) return a;
        if (!is_square(a)) return std::nullopt;
        mpz_class qm1 = q_ - 1;
        mpz_class q2 = qm1;
        unsigned s = 0;
        while (mpz_even_p(q2.get_mpz_t())) { q2 >>= 1; ++s; }
        Elem r;
        if (s == 1) {
            r = pow(a, (q_ + 1) / 4);
        } else {
            Elem z = first_non_square();
            mpz_class m = s;
            Elem c = pow(z, q2);
            Elem t = pow(a, q2);
            Elem rr = pow(a, (q2 + 1) / 2);
            while (!eq(t, one())) {
                unsigned i = 0;
                Elem tt = t;
                while (!eq(tt, one())) { tt = mul(tt, tt); ++i; }
                Elem b = c;
                for (unsigned j = 0; j + i + 1 < m.get_ui(); ++j) b = mul(b, b);
                m = i;
                c = mul(b, b);
                t = mul(t, c);
                rr = mul(rr, b);
            }
            r = rr;
        }
        Elem nr = neg(r);
        return key_cmp(key(r), key(nr)) <= 0 ? r : nr;
    }

    Elem sample(Rng& rng) const {
        Elem e(n_);
        for (size_t i = 0; i < n_; ++i) e[i] = rng.below(base_.p());
        return e;
    }

    Key key(const Elem& a) const { return a; }
    std::string to_string(const Elem& a) const {
        if (n_ == 1) return std::to_string(a[0]);
        std::string s = "[";
        for (size_t i = 0; i < n_; ++i) {
            if (i) s += ",";
            s += std::to_string(a[i]);
        }
        return s + "]";
    }

  private:
    Elem first_non_square() const {
        // enumerate canonical elements: constants first, then z+c, ...
        for (std::uint64_t c = 2; c < base_.p(); ++c) {
            Elem e = from_base(c);
            if (!is_square(e)) return e;
        }
        for (std::uint64_t c = 0; c < base_.p(); ++c) {
            Elem e = gen();
            e[0] = c;
            if (!is_square(e)) return e;
        }
        fail(errc::internal_consistency, "no quadratic non-residue found");
    }

    PrimeField base_;
    std::vector<std::uint64_t> mod_;
    std::vector<std::uint64_t> red_;
    size_t n_ = 0;
    mpz_class q_;
};

static_assert(FieldCtx<ExtField>);

// Finite fields expose their order, a canonical Frobenius, and seeded
// sampling; that is exactly what the factoring kernels need.
template <class F>
concept FiniteFieldCtx = FieldCtx<F> && requires(const F k, const typename F::Elem a, Rng& rng) {
    { k.order() } -> std::convertible_to<mpz_class>;
    { k.sample(rng) } -> std::convertible_to<typename F::Elem>;
    { k.is_square(a) } -> std::convertible_to<bool>;
    { k.sqrt(a) } -> std::convertible_to<std::optional<typename F::Elem>>;
};

// PrimeField satisfies the finite concept through a thin adaptor.
class PrimeFieldFq : public PrimeField {
  public:
    explicit PrimeFieldFq(std::uint64_t p) : PrimeField(p), q_(static_cast<unsigned long>(p)) {}
    explicit PrimeFieldFq(const PrimeField& f) : PrimeField(f), q_(static_cast<unsigned long>(f.p())) {}
    const mpz_class& order() const { return q_; }

  private:
    mpz_class q_;
};

static_assert(FiniteFieldCtx<ExtField>);
static_assert(FiniteFieldCtx<PrimeFieldFq>);

}  // namespace dff
