#pragma once

#include <map>
#include <utility>
#include <vector>

#include "descentff/finite.hpp"

namespace dff {
namespace fac {

template <FiniteFieldCtx F>
typename F::Elem fe_pow(const F& k, typename F::Elem a, mpz_class e) {
    auto r = k.one();
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = k.mul(r, a);
        a = k.mul(a, a);
        e >>= 1;
    }
    return r;
}


// Squarefree decomposition (Yun over finite fields, with the p-th power
// descent for the inseparable part). Returns pairs (squarefree monic factor,
// multiplicity).
template <FiniteFieldCtx F>
std::vector<std::pair<Poly<F>, int>> squarefree(const F& k, const Poly<F>& f0) {
    std::vector<std::pair<Poly<F>, int>> out;
    Poly<F> f = pol::monic(k, f0);
    if (pol::degi(f) == 0) return out;
    std::uint64_t p = k.characteristic();

    auto push = [&](const Poly<F>& g, int mult) {
        if (!g.c.empty() && pol::degi(g) > 0) out.push_back({g, mult});
    };

    int outer_mult = 1;
    while (true) {
        Poly<F> df = pol::derivative(k, f);
        if (df.c.empty()) {
            // f is a p-th power: f(X) = h(X^p); coefficients are q/p-th powers
            require(p > 0, errc::internal_consistency, "zero derivative in characteristic 0");
            Poly<F> h;
            h.c.resize((f.c.size() - 1) / p + 1);
            mpz_class e = k.order() / p;  // c^(q/p) is the p-th root of c
            for (size_t i = 0; i < h.c.size(); ++i) {
                auto c = pol::coeff(k, f, static_cast<int>(i * p));
                h.c[i] = fe_pow(k, c, e);
            }
            pol::trim(k, h);
            f = h;
            outer_mult *= static_cast<int>(p);
            if (pol::degi(f) == 0) break;
            continue;
        }
        Poly<F> g = pol::gcd(k, f, df);
        Poly<F> w = pol::divide_exact(k, f, g);
        int i = 1;
        while (pol::degi(w) > 0) {
            Poly<F> y = pol::gcd(k, w, g);
            Poly<F> piece = pol::divide_exact(k, w, y);
            push(piece, i * outer_mult);
            w = y;
            g = pol::divide_exact(k, g, y);
            ++i;
        }
        if (pol::degi(g) == 0) break;
        f = g;  // remaining part is a p-th power
    }
    return out;
}

// x^(q^j) mod f, iterated from a cached x^q.
template <FiniteFieldCtx F>
Poly<F> frobenius_power(const F& k, const Poly<F>& f, const Poly<F>& xq, const Poly<F>& prev) {
    // prev = x^(q^(j-1)); returns prev composed with xq mod f
    Poly<F> r = pol::zero(k);
    for (size_t i = prev.c.size(); i-- > 0;) {
        r = pol::rem(k, pol::mul(k, r, xq), f);
        r = pol::add(k, r, pol::constant(k, prev.c[i]));
    }
    return r;
}

// Distinct-degree factorization of a squarefree monic f; returns pairs
// (product of irreducibles of degree d, d) in increasing d.
template <FiniteFieldCtx F>
std::vector<std::pair<Poly<F>, int>> distinct_degree(const F& k, Poly<F> f) {
    std::vector<std::pair<Poly<F>, int>> out;
    Poly<F> x = pol::monomial(k, k.one(), 1);
    Poly<F> xq = pol::pow_mod(k, x, k.order(), f);
    Poly<F> h = xq;
    int d = 1;
    while (pol::degi(f) >= 2 * d) {
        Poly<F> g = pol::gcd(k, pol::sub(k, h, pol::rem(k, x, f)), f);
        if (!g.c.empty() && pol::degi(g) > 0) {
            out.push_back({g, d});
            f = pol::divide_exact(k, f, g);
            h = pol::rem(k, h, f);
        }
        ++d;
        if (pol::degi(f) < 2 * d) break;
        h = frobenius_power(k, f, pol::rem(k, xq, f), h);
    }
    if (pol::degi(f) > 0) out.push_back({f, pol::degi(f)});
    return out;
}

// Cantor-Zassenhaus equal-degree splitting; deterministic given the rng.
template <FiniteFieldCtx F>
void equal_degree(const F& k, const Poly<F>& f, int d, Rng& rng, std::vector<Poly<F>>& out) {
    int n = pol::degi(f);
    if (n == d) {
        out.push_back(pol::monic(k, f));
        return;
    }
    Poly<F> factor;
    while (true) {
        // random polynomial of degree < n
        Poly<F> a;
        a.c.resize(n);
        for (int i = 0; i < n; ++i) a.c[i] = k.sample(rng);
        pol::trim(k, a);
        if (a.c.empty() || pol::degi(a) < 1) continue;
        Poly<F> g = pol::gcd(k, a, f);
        if (pol::degi(g) > 0 && pol::degi(g) < n) { factor = g; break; }
        if (k.characteristic() != 2) {
            mpz_class e = 1;
            mpz_class qd;
            mpz_pow_ui(qd.get_mpz_t(), k.order().get_mpz_t(), static_cast<unsigned long>(d));
            e = (qd - 1) / 2;
            Poly<F> b = pol::pow_mod(k, a, e, f);
            Poly<F> bm1 = pol::sub(k, b, pol::one(k));
            Poly<F> g2 = pol::gcd(k, bm1, f);
            if (pol::degi(g2) > 0 && pol::degi(g2) < n) { factor = g2; break; }
        } else {
            // trace map splitting for characteristic 2
            mpz_class steps = k.order();
            unsigned long bits = mpz_sizeinbase(steps.get_mpz_t(), 2) - 1;  // q = 2^bits
            Poly<F> t = pol::rem(k, a, f), acc = t;
            for (unsigned long i = 1; i < bits * static_cast<unsigned long>(d); ++i) {
                t = pol::rem(k, pol::mul(k, t, t), f);
                acc = pol::add(k, acc, t);
            }
            Poly<F> g2 = pol::gcd(k, acc, f);
            if (pol::degi(g2) > 0 && pol::degi(g2) < n) { factor = g2; break; }
        }
    }
    equal_degree(k, factor, d, rng, out);
    equal_degree(k, pol::divide_exact(k, f, factor), d, rng, out);
}

// Full factorization into monic irreducibles with multiplicities plus the
// leading coefficient; deterministic given the seed.
template <FiniteFieldCtx F>
struct Factorization {
    typename F::Elem lead;
    std::vector<std::pair<Poly<F>, int>> factors;
};

template <FiniteFieldCtx F>
Factorization<F> factor(const F& k, const Poly<F>& f, std::uint64_t seed) {
    require(!f.c.empty(), errc::degenerate_input, "factor of zero polynomial");
    Factorization<F> out;
    out.lead = pol::lead(f);
    if (pol::degi(f) == 0) return out;
    Rng rng(seed ^ 0x5eedf00dULL);
    for (auto& [sf, mult] : squarefree(k, f)) {
        for (auto& [prod, d] : distinct_degree(k, sf)) {
            std::vector<Poly<F>> irr;
            equal_degree(k, prod, d, rng, irr);
            // canonical order inside each degree block
            std::sort(irr.begin(), irr.end(), [&](const Poly<F>& a, const Poly<F>& b) {
                return key_cmp(pol::key(k, a), pol::key(k, b)) < 0;
            });
            for (auto& g : irr) out.factors.push_back({g, mult});
        }
    }
    std::stable_sort(out.factors.begin(), out.factors.end(),
                     [&](const auto& a, const auto& b) {
                         if (pol::degi(a.first) != pol::degi(b.first))
                             return pol::degi(a.first) < pol::degi(b.first);
                         return key_cmp(pol::key(k, a.first), pol::key(k, b.first)) < 0;
                     });
    return out;
}

// Roots in the coefficient field, with multiplicities.
template <FiniteFieldCtx F>
std::vector<std::pair<typename F::Elem, int>> roots(const F& k, const Poly<F>& f, std::uint64_t seed) {
    std::vector<std::pair<typename F::Elem, int>> out;
    for (auto& [g, m] : factor(k, f, seed).factors)
        if (pol::degi(g) == 1) out.push_back({k.neg(g.c[0]), m});
    return out;
}

template <FiniteFieldCtx F>
bool is_irreducible(const F& k, const Poly<F>& f) {
    if (f.c.empty() || pol::degi(f) == 0) return false;
    int n = pol::degi(f);
    if (n == 1) return true;
    Poly<F> x = pol::monomial(k, k.one(), 1);
    Poly<F> xq = pol::pow_mod(k, x, k.order(), f);
    // x^(q^n) == x mod f, and gcd(x^(q^(n/l)) - x, f) == 1 for primes l | n
    Poly<F> h = xq;
    std::vector<Poly<F>> frob{h};  // frob[j] = x^(q^(j+1))
    for (int j = 1; j < n; ++j) {
        h = frobenius_power(k, f, xq, h);
        frob.push_back(h);
    }
    if (!pol::eq(k, frob[n - 1], pol::rem(k, x, f))) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) { prime = false; break; }
        if (!prime) continue;
        Poly<F> g = pol::gcd(k, pol::sub(k, frob[n / l - 1], x), f);
        if (g.c.empty() || pol::degi(g) != 0) return false;
    }
    return true;
}

// Seeded random monic irreducible of exact degree d.
template <FiniteFieldCtx F>
Poly<F> random_irreducible(const F& k, int d, std::uint64_t seed) {
    require(d >= 1, errc::degenerate_input, "degree must be positive");
    Rng rng(seed ^ 0x177edULL);
    while (true) {
        Poly<F> f;
        f.c.resize(d + 1, k.zero());
        f.c[d] = k.one();
        for (int i = 0; i < d; ++i) f.c[i] = k.sample(rng);
        if (is_irreducible(k, f)) return f;
    }
}

}  // namespace fac
}  // namespace dff
