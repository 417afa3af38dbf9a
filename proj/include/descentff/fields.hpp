#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "descentff/base.hpp"

namespace dff {

// Fields are immutable context objects; elements are plain values that only
// make sense relative to their context. All operations are const, so any
// number of computations can share one context concurrently.
template <class F>
concept FieldCtx = requires(const F k, const typename F::Elem a, const typename F::Elem b, std::int64_t n) {
    typename F::Elem;
    { k.zero() } -> std::convertible_to<typename F::Elem>;
    { k.one() } -> std::convertible_to<typename F::Elem>;
    { k.add(a, b) } -> std::convertible_to<typename F::Elem>;
    { k.sub(a, b) } -> std::convertible_to<typename F::Elem>;
    { k.mul(a, b) } -> std::convertible_to<typename F::Elem>;
    { k.neg(a) } -> std::convertible_to<typename F::Elem>;
    { k.inv(a) } -> std::convertible_to<typename F::Elem>;
    { k.is_zero(a) } -> std::convertible_to<bool>;
    { k.eq(a, b) } -> std::convertible_to<bool>;
    { k.from_int(n) } -> std::convertible_to<typename F::Elem>;
    { k.characteristic() } -> std::convertible_to<std::uint64_t>;
    { k.key(a) } -> std::convertible_to<Key>;
    { k.to_string(a) } -> std::convertible_to<std::string>;
};

// The rational field, backed by GMP.
class Rationals {
  public:
    using Elem = mpq_class;

    Elem zero() const { return mpq_class(0); }
    Elem one() const { return mpq_class(1); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        require(a != 0, errc::degenerate_input, "inverse of zero");
        return 1 / a;
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem from_int(std::int64_t n) const { return mpq_class(static_cast<long>(n)); }
    std::uint64_t characteristic() const { return 0; }

    std::optional<Elem> sqrt(const Elem& a) const {
        if (a < 0) return std::nullopt;
        mpz_class n = a.get_num(), d = a.get_den();
        if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
        if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        return mpq_class(rn, rd);
    }

    Key key(const Elem& a) const {
        // sign, then magnitude limbs of num/den; enough for a total order on
        // equal-size keys and for exact hashing
        Key k;
        k.push_back(a < 0 ? 1 : 0);
        std::string s = a.get_str();
        for (char c : s) k.push_back(static_cast<std::uint64_t>(c));
        return k;
    }
    std::string to_string(const Elem& a) const { return a.get_str(); }
};

// Prime field F_p for p < 2^62; elements are canonical residues in [0, p).
class PrimeField {
  public:
    using Elem = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        require(mod64::is_prime(p), errc::unsupported_field, "modulus " + std::to_string(p) + " is not prime");
        require(p < (1ull << 62), errc::unsupported_field, "prime too large");
    }

    std::uint64_t p() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }
    Elem add(Elem a, Elem b) const { return mod64::add(a, b, p_); }
    Elem sub(Elem a, Elem b) const { return mod64::sub(a, b, p_); }
    Elem mul(Elem a, Elem b) const { return mod64::mul(a, b, p_); }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem inv(Elem a) const { return mod64::inv(a, p_); }
    Elem pow(Elem a, std::uint64_t e) const { return mod64::pow(a, e, p_); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    Elem from_int(std::int64_t n) const {
        std::int64_t r = n % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return static_cast<Elem>(r);
    }
    std::uint64_t characteristic() const { return p_; }

    bool is_square(Elem a) const {
        if (a == 0 || p_ == 2) return true;
        return pow(a, (p_ - 1) / 2) == 1;
    }

    // Tonelli-Shanks; the returned root is the smaller of the two canonical
    // representatives, so the choice is deterministic.
    std::optional<Elem> sqrt(Elem a) const {
        if (a == 0) return 0;
        if (p_ == 2) return a;
        if (!is_square(a)) return std::nullopt;
        Elem r;
        if (p_ % 4 == 3) {
            r = pow(a, (p_ + 1) / 4);
        } else {
            std::uint64_t q = p_ - 1;
            int s = 0;
            while ((q & 1) == 0) { q >>= 1; ++s; }
            Elem z = 2;
            while (is_square(z)) ++z;
            Elem m = s, c = pow(z, q), t = pow(a, q), rr = pow(a, (q + 1) / 2);
            while (t != 1) {
                Elem i = 0, tt = t;
                while (tt != 1) { tt = mul(tt, tt); ++i; }
                Elem b = c;
                for (Elem j = 0; j + i + 1 < m; ++j) b = mul(b, b);
                m = i;
                c = mul(b, b);
                t = mul(t, c);
                rr = mul(rr, b);
            }
            r = rr;
        }
        return r <= p_ - r ? r : p_ - r;
    }

    Elem sample(Rng& rng) const { return rng.below(p_); }

    Key key(Elem a) const { return Key{a}; }
    std::string to_string(Elem a) const { return std::to_string(a); }

  private:
    std::uint64_t p_;
};

static_assert(FieldCtx<Rationals>);
static_assert(FieldCtx<PrimeField>);

}  // namespace dff
