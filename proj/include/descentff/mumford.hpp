#pragma once

#include <cmath>

#include "descentff/finite.hpp"
#include "descentff/quotient.hpp"

namespace dff {

// Hyperelliptic curve y^2 = f(x) with f squarefree of odd degree over an
// exact field; the unique point at infinity is the base point of the
// Mumford representation.
template <FieldCtx K>
struct HypCurve {
    const K* k = nullptr;
    Poly<K> f;
    int genus = 0;

    static HypCurve make(const K& k, Poly<K> f) {
        require(k.characteristic() != 2, errc::unsupported_curve, "characteristic 2 not supported");
        require(!f.c.empty() && pol::degi(f) >= 3 && pol::degi(f) % 2 == 1, errc::unsupported_curve,
                "f must have odd degree >= 3");
        auto sq = pol::gcd(k, f, pol::derivative(k, f));
        require(pol::degi(sq) == 0, errc::unsupported_curve, "f must be squarefree");
        int genus = (pol::degi(f) - 1) / 2;
        return {&k, std::move(f), genus};
    }
    bool same_curve(const HypCurve& o) const { return k == o.k && pol::eq(*k, f, o.f); }
};

// Mumford pair (a, b): a monic, deg b < deg a, a | b^2 - f. The identity is
// (1, 0). "Reduced" additionally means deg a <= genus.
template <FieldCtx K>
struct Mumford {
    Poly<K> a, b;
    bool is_identity() const { return !a.c.empty() && a.c.size() == 1; }
};

namespace jac {

template <FieldCtx K>
Mumford<K> identity(const HypCurve<K>& C) {
    return {pol::one(*C.k), pol::zero(*C.k)};
}

// validation: the only way to build a divisor from raw polynomials
template <FieldCtx K>
Mumford<K> validate(const HypCurve<K>& C, Poly<K> a, Poly<K> b) {
    const K& k = *C.k;
    require(!a.c.empty(), errc::malformed, "a must be nonzero");
    require(k.eq(pol::lead(a), k.one()), errc::malformed, "a must be monic");
    if (pol::degi(a) == 0)
        require(b.c.empty(), errc::malformed, "identity must be (1, 0)");
    else if (!b.c.empty())
        require(pol::degi(b) < pol::degi(a), errc::malformed, "deg b must be below deg a");
    Poly<K> rem = pol::rem(k, pol::sub(k, pol::mul(k, b, b), C.f), a);
    require(rem.c.empty(), errc::not_on_jacobian, "a does not divide b^2 - f");
    // a | b^2 - f with f squarefree already forces ramification points to
    // carry multiplicity at most one, so semi-reduced inputs violating that
    // are rejected by the divisibility check above
    return {std::move(a), std::move(b)};
}

template <FieldCtx K>
Mumford<K> negate(const HypCurve<K>& C, const Mumford<K>& d) {
    return {d.a, pol::neg(*C.k, d.b)};
}

template <FieldCtx K>
bool eq(const HypCurve<K>& C, const Mumford<K>& x, const Mumford<K>& y) {
    return pol::eq(*C.k, x.a, y.a) && pol::eq(*C.k, x.b, y.b);
}

// Cantor composition followed by classical reduction.
template <FieldCtx K>
Mumford<K> cantor_add(const HypCurve<K>& C, const Mumford<K>& d1, const Mumford<K>& d2) {
    const K& k = *C.k;
    // composition
    Poly<K> g1, e1, e2;
    pol::xgcd(k, d1.a, d2.a, g1, e1, e2);
    Poly<K> bsum = pol::add(k, d1.b, d2.b);
    Poly<K> d, c1, c2;
    if (bsum.c.empty()) {
        d = g1;
        c1 = pol::one(k);
        c2 = pol::zero(k);
    } else {
        pol::xgcd(k, g1, bsum, d, c1, c2);
    }
    // d = c1*(e1 a1 + e2 a2) + c2 (b1 + b2)
    Poly<K> s1 = pol::mul(k, c1, e1), s2 = pol::mul(k, c1, e2), s3 = c2;
    Poly<K> a3 = pol::divide_exact(k, pol::mul(k, d1.a, d2.a), pol::mul(k, d, d));
    Poly<K> num = pol::add(
        k,
        pol::add(k, pol::mul(k, pol::mul(k, s1, d1.a), d2.b),
                 pol::mul(k, pol::mul(k, s2, d2.a), d1.b)),
        pol::mul(k, s3, pol::add(k, pol::mul(k, d1.b, d2.b), C.f)));
    Poly<K> b3 = pol::rem(k, pol::divide_exact(k, num, d), a3);
    // reduction
    while (!a3.c.empty() && pol::degi(a3) > C.genus) {
        Poly<K> a4 = pol::divide_exact(k, pol::sub(k, C.f, pol::mul(k, b3, b3)), a3);
        a4 = pol::monic(k, a4);
        Poly<K> b4 = pol::rem(k, pol::neg(k, b3), a4);
        a3 = std::move(a4);
        b3 = std::move(b4);
    }
    a3 = pol::monic(k, a3);
    b3 = pol::rem(k, b3, a3);
    return {std::move(a3), std::move(b3)};
}

template <FieldCtx K>
Mumford<K> scalar_mul(const HypCurve<K>& C, mpz_class n, const Mumford<K>& d) {
    Mumford<K> base = d;
    if (n < 0) {
        base = negate(C, d);
        n = -n;
    }
    Mumford<K> acc = identity(C);
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = cantor_add(C, acc, base);
        base = cantor_add(C, base, base);
        n >>= 1;
    }
    return acc;
}

// c_D: the monic polynomial in y whose roots are the y-coordinates of the
// affine points of D, with multiplicity; computed as the characteristic
// polynomial of multiplication by b on K[x]/(a), which agrees with
// Res_x(a(x), y - b(x)).
template <FieldCtx K>
Poly<K> c_polynomial(const HypCurve<K>& C, const Mumford<K>& d) {
    const K& k = *C.k;
    require(!d.is_identity(), errc::empty_divisor, "c polynomial of the identity divisor");
    int n = pol::degi(d.a);
    // multiplication-by-b matrix on the x-power basis of K[x]/(a)
    std::vector<std::vector<typename K::Elem>> M(n, std::vector<typename K::Elem>(n, k.zero()));
    Poly<K> xi = pol::rem(k, d.b, d.a);  // b * x^0
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) M[i][j] = pol::coeff(k, xi, i);
        if (j + 1 < n) xi = pol::rem(k, pol::shift_up(k, xi, 1), d.a);
    }
    // characteristic polynomial det(y I - M) by cofactor expansion on
    // polynomials in y (n is at most the genus, so tiny)
    require(n <= 6, errc::unsupported_curve, "c polynomial limited to degree <= 6");
    std::vector<std::vector<Poly<K>>> A(n, std::vector<Poly<K>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Poly<K> e = pol::constant(k, k.neg(M[i][j]));
            if (i == j) e = pol::add(k, e, pol::monomial(k, k.one(), 1));
            A[i][j] = e;
        }
    struct Det {
        const K& k;
        std::vector<std::vector<Poly<K>>>& A;
        Poly<K> run(std::vector<int> rows, std::vector<int> cols) {
            if (rows.size() == 1) return A[rows[0]][cols[0]];
            Poly<K> acc;
            for (size_t j = 0; j < cols.size(); ++j) {
                if (A[rows[0]][cols[j]].c.empty()) continue;
                std::vector<int> r2(rows.begin() + 1, rows.end());
                std::vector<int> c2;
                for (size_t l = 0; l < cols.size(); ++l)
                    if (l != j) c2.push_back(cols[l]);
                Poly<K> minor = run(r2, c2);
                Poly<K> term = pol::mul(k, A[rows[0]][cols[j]], minor);
                if (j % 2 == 1) term = pol::neg(k, term);
                acc = pol::add(k, acc, term);
            }
            return acc;
        }
    } det{k, A};
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    return det.run(idx, idx);
}

}  // namespace jac

// ----------------------------------------------------------------------
// element enumeration for small finite fields (used by the desk oracles)

inline std::uint64_t field_order_u64(const PrimeFieldFq& k) { return k.p(); }
inline std::uint64_t field_order_u64(const ExtField& k) {
    require(mpz_fits_ulong_p(k.order().get_mpz_t()), errc::budget_exceeded, "field too large");
    return k.order().get_ui();
}
inline PrimeFieldFq::Elem nth_elem(const PrimeFieldFq& k, std::uint64_t i) { return i % k.p(); }
inline ExtField::Elem nth_elem(const ExtField& k, std::uint64_t i) {
    ExtField::Elem e = k.zero();
    for (size_t j = 0; j < k.degree(); ++j) {
        e[j] = i % k.p();
        i /= k.p();
    }
    return e;
}
template <FiniteFieldCtx F>
std::uint64_t field_order_u64(const QuotientExt<F>& k) {
    require(mpz_fits_ulong_p(k.order().get_mpz_t()), errc::budget_exceeded, "field too large");
    return k.order().get_ui();
}
template <FiniteFieldCtx F>
typename QuotientExt<F>::Elem nth_elem(const QuotientExt<F>& k, std::uint64_t i) {
    std::uint64_t q0 = field_order_u64(k.coeff_field());
    typename QuotientExt<F>::Elem e;
    e.c.resize(k.degree());
    for (int j = 0; j < k.degree(); ++j) {
        e.c[j] = nth_elem(k.coeff_field(), i % q0);
        i /= q0;
    }
    pol::trim(k.coeff_field(), e);
    return e;
}

namespace jac {

// Full list of reduced divisors over a small finite field; deterministic
// enumeration order.
template <class K>
std::vector<Mumford<K>> enumerate_jacobian(const HypCurve<K>& C, std::uint64_t budget) {
    const K& k = *C.k;
    std::uint64_t q = field_order_u64(k);
    double est = 1;
    for (int i = 0; i < C.genus; ++i) est *= (q + 1 + 2 * std::sqrt(static_cast<double>(q)));
    require(est <= static_cast<double>(budget), errc::budget_exceeded,
            "jacobian enumeration beyond the configured budget");
    std::vector<Mumford<K>> out;
    out.push_back(identity(C));
    // enumerate monic a by degree, then b with a | b^2 - f
    for (int da = 1; da <= C.genus; ++da) {
        std::uint64_t na = 1;
        for (int i = 0; i < da; ++i) na *= q;
        for (std::uint64_t ia = 0; ia < na; ++ia) {
            Poly<K> a;
            a.c.resize(da + 1, k.zero());
            std::uint64_t v = ia;
            for (int i = 0; i < da; ++i) {
                a.c[i] = nth_elem(k, v % q);
                v /= q;
            }
            a.c[da] = k.one();
            std::uint64_t nb = 1;
            for (int i = 0; i < da; ++i) nb *= q;
            for (std::uint64_t ib = 0; ib < nb; ++ib) {
                Poly<K> b;
                b.c.resize(da, k.zero());
                std::uint64_t w = ib;
                for (int i = 0; i < da; ++i) {
                    b.c[i] = nth_elem(k, w % q);
                    w /= q;
                }
                pol::trim(k, b);
                if (!pol::rem(k, pol::sub(k, pol::mul(k, b, b), C.f), a).c.empty()) continue;
                out.push_back(validate(C, a, b));
            }
        }
    }
    return out;
}

template <class K>
typename K::Elem fe_pow_local(const K& k, typename K::Elem a, mpz_class e) {
    auto r = k.one();
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = k.mul(r, a);
        a = k.mul(a, a);
        e >>= 1;
    }
    return r;
}

template <class K>
mpz_class count_points(const K& k, const Poly<K>& f) {
    std::uint64_t q = field_order_u64(k);
    mpz_class n = 0;
    mpz_class e = (k.order() - 1) / 2;
    for (std::uint64_t i = 0; i < q; ++i) {
        auto x = nth_elem(k, i);
        auto fx = pol::eval(k, f, x);
        if (k.is_zero(fx))
            n += 1;
        else if (k.eq(fe_pow_local(k, fx, e), k.one()))
            n += 2;
    }
    // points at infinity: one for an odd-degree model, two/zero for even
    if (pol::degi(f) % 2 == 1) {
        n += 1;
    } else {
        auto lc = pol::lead(f);
        if (k.eq(fe_pow_local(k, lc, e), k.one())) n += 2;
    }
    return n;
}

// L-polynomial from point counts over the extensions F_{q^i}, i = 1..genus;
// returns the coefficient list c_0..c_{2g} (integers) with |J| = L(1).
template <class K>
std::vector<mpz_class> zeta_l_polynomial(const HypCurve<K>& C, std::uint64_t budget,
                                         std::uint64_t seed) {
    const K& k = *C.k;
    int g = C.genus;
    require(g <= 4, errc::unsupported_curve, "L-polynomial limited to genus <= 4");
    std::uint64_t q = field_order_u64(k);
    double cost = 1;
    for (int i = 0; i < g; ++i) cost *= q;
    require(cost <= static_cast<double>(budget), errc::budget_exceeded,
            "point counting beyond the configured budget");

    mpz_class qz(static_cast<unsigned long>(q));
    std::vector<mpz_class> S(g + 1);
    for (int i = 1; i <= g; ++i) {
        // count points over the degree-i extension
        mpz_class Ni = 0;
        if (i == 1) {
            Ni = count_points(k, C.f);
        } else {
            auto mod = fac::random_irreducible(k, i, seed ^ (0xc0ff33ull * i));
            QuotientExt<K> L(k, mod);
            Poly<QuotientExt<K>> fL;
            for (auto& c : C.f.c) fL.c.push_back(L.lift(c));
            Ni = count_points(L, fL);
        }
        mpz_class qi;
        mpz_pow_ui(qi.get_mpz_t(), qz.get_mpz_t(), i);
        S[i] = qi + 1 - Ni;
    }
    std::vector<mpz_class> c(2 * g + 1);
    c[0] = 1;
    for (int kk = 1; kk <= g; ++kk) {
        mpz_class acc = S[kk];
        for (int j = 1; j < kk; ++j) acc += c[j] * S[kk - j];
        require(mpz_divisible_ui_p(acc.get_mpz_t(), kk), errc::internal_consistency,
                "Newton identity failed");
        c[kk] = -acc / kk;
    }
    for (int kk = g + 1; kk <= 2 * g; ++kk) {
        mpz_class qpow;
        mpz_pow_ui(qpow.get_mpz_t(), qz.get_mpz_t(), kk - g);
        c[kk] = qpow * c[2 * g - kk];
    }
    return c;
}

inline mpz_class l_value_at_one(const std::vector<mpz_class>& c) {
    mpz_class s = 0;
    for (auto& x : c) s += x;
    return s;
}

}  // namespace jac
}  // namespace dff
