#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "descentff/fields.hpp"

namespace dff {

// Dense univariate polynomial over a field context. Coefficient i is the
// coefficient of X^i; the leading coefficient is nonzero unless the
// polynomial is zero (empty vector). All functions keep that canonical form.
template <FieldCtx F>
struct Poly {
    std::vector<typename F::Elem> c;
    bool is_zero() const { return c.empty(); }
};

namespace pol {

template <FieldCtx F>
void trim(const F& k, Poly<F>& a) {
    while (!a.c.empty() && k.is_zero(a.c.back())) a.c.pop_back();
}

template <FieldCtx F>
Poly<F> make(const F& k, std::vector<typename F::Elem> cs) {
    Poly<F> a{std::move(cs)};
    trim(k, a);
    return a;
}

template <FieldCtx F>
Poly<F> zero(const F&) { return {}; }

template <FieldCtx F>
Poly<F> constant(const F& k, const typename F::Elem& e) {
    Poly<F> a;
    if (!k.is_zero(e)) a.c.push_back(e);
    return a;
}

template <FieldCtx F>
Poly<F> one(const F& k) { return constant(k, k.one()); }

// X^n and c*X^n
template <FieldCtx F>
Poly<F> monomial(const F& k, const typename F::Elem& e, int n) {
    Poly<F> a;
    if (k.is_zero(e)) return a;
    a.c.assign(n + 1, k.zero());
    a.c[n] = e;
    return a;
}

template <FieldCtx F>
Degree deg(const Poly<F>& a) {
    return a.c.empty() ? Degree::neg_infinity() : Degree::of(static_cast<int>(a.c.size()) - 1);
}

// degree as int for nonzero input only
template <FieldCtx F>
int degi(const Poly<F>& a) {
    require(!a.c.empty(), errc::degenerate_input, "degree of zero polynomial");
    return static_cast<int>(a.c.size()) - 1;
}

template <FieldCtx F>
typename F::Elem lead(const Poly<F>& a) {
    require(!a.c.empty(), errc::degenerate_input, "leading coefficient of zero polynomial");
    return a.c.back();
}

template <FieldCtx F>
typename F::Elem coeff(const F& k, const Poly<F>& a, int i) {
    if (i < 0 || i >= static_cast<int>(a.c.size())) return k.zero();
    return a.c[i];
}

template <FieldCtx F>
bool eq(const F& k, const Poly<F>& a, const Poly<F>& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (!k.eq(a.c[i], b.c[i])) return false;
    return true;
}

template <FieldCtx F>
Poly<F> add(const F& k, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), k.zero());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = k.add(r.c[i], b.c[i]);
    trim(k, r);
    return r;
}

template <FieldCtx F>
Poly<F> sub(const F& k, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), k.zero());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = k.sub(r.c[i], b.c[i]);
    trim(k, r);
    return r;
}

template <FieldCtx F>
Poly<F> neg(const F& k, const Poly<F>& a) {
    Poly<F> r = a;
    for (auto& e : r.c) e = k.neg(e);
    return r;
}

template <FieldCtx F>
Poly<F> mul(const F& k, const Poly<F>& a, const Poly<F>& b) {
    if (a.c.empty() || b.c.empty()) return {};
    Poly<F> r;
    r.c.assign(a.c.size() + b.c.size() - 1, k.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (k.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = k.add(r.c[i + j], k.mul(a.c[i], b.c[j]));
    }
    trim(k, r);
    return r;
}

template <FieldCtx F>
Poly<F> scale(const F& k, const Poly<F>& a, const typename F::Elem& s) {
    if (k.is_zero(s)) return {};
    Poly<F> r = a;
    for (auto& e : r.c) e = k.mul(e, s);
    trim(k, r);
    return r;
}

// multiply by X^n
template <FieldCtx F>
Poly<F> shift_up(const F& k, const Poly<F>& a, int n) {
    if (a.c.empty()) return {};
    Poly<F> r;
    r.c.assign(a.c.size() + n, k.zero());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i + n] = a.c[i];
    return r;
}

template <FieldCtx F>
Poly<F> monic(const F& k, const Poly<F>& a) {
    require(!a.c.empty(), errc::degenerate_input, "monic of zero polynomial");
    return scale(k, a, k.inv(lead(a)));
}

template <FieldCtx F>
void divrem(const F& k, const Poly<F>& a, const Poly<F>& b, Poly<F>& q, Poly<F>& r) {
    require(!b.c.empty(), errc::degenerate_input, "division by zero polynomial");
    q = {};
    r = a;
    auto db = degi(b);
    auto linv = k.inv(lead(b));
    if (!r.c.empty() && degi(r) >= db) q.c.assign(degi(r) - db + 1, k.zero());
    while (!r.c.empty() && degi(r) >= db) {
        int d = degi(r) - db;
        auto f = k.mul(r.c.back(), linv);
        q.c[d] = f;
        for (int i = 0; i <= db; ++i)
            r.c[d + i] = k.sub(r.c[d + i], k.mul(f, b.c[i]));
        trim(k, r);
    }
    trim(k, q);
}

template <FieldCtx F>
Poly<F> rem(const F& k, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> q, r;
    divrem(k, a, b, q, r);
    return r;
}

template <FieldCtx F>
Poly<F> quo(const F& k, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> q, r;
    divrem(k, a, b, q, r);
    return q;
}

// exact division; throws if the remainder is nonzero
template <FieldCtx F>
Poly<F> divide_exact(const F& k, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> q, r;
    divrem(k, a, b, q, r);
    require(r.c.empty(), errc::internal_consistency, "exact polynomial division left a remainder");
    return q;
}

template <FieldCtx F>
bool divides(const F& k, const Poly<F>& b, const Poly<F>& a) {
    if (a.c.empty()) return true;
    if (b.c.empty()) return false;
    return rem(k, a, b).c.empty();
}

// monic gcd
template <FieldCtx F>
Poly<F> gcd(const F& k, Poly<F> a, Poly<F> b) {
    while (!b.c.empty()) {
        Poly<F> r = rem(k, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.c.empty()) return a;
    return monic(k, a);
}

// returns (g, u, v) with g monic, u*a + v*b = g
template <FieldCtx F>
void xgcd(const F& k, const Poly<F>& a, const Poly<F>& b, Poly<F>& g, Poly<F>& u, Poly<F>& v) {
    require(!(a.c.empty() && b.c.empty()), errc::degenerate_input, "gcd of two zero polynomials");
    Poly<F> r0 = a, r1 = b;
    Poly<F> s0 = one(k), s1 = zero(k);
    Poly<F> t0 = zero(k), t1 = one(k);
    while (!r1.c.empty()) {
        Poly<F> q, r;
        divrem(k, r0, r1, q, r);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<F> s = sub(k, s0, mul(k, q, s1));
        s0 = std::move(s1);
        s1 = std::move(s);
        Poly<F> t = sub(k, t0, mul(k, q, t1));
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    auto linv = k.inv(lead(r0));
    g = scale(k, r0, linv);
    u = scale(k, s0, linv);
    v = scale(k, t0, linv);
}

template <FieldCtx F>
Poly<F> derivative(const F& k, const Poly<F>& a) {
    Poly<F> r;
    if (a.c.size() <= 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i)
        r.c[i - 1] = k.mul(a.c[i], k.from_int(static_cast<std::int64_t>(i)));
    trim(k, r);
    return r;
}

template <FieldCtx F>
typename F::Elem eval(const F& k, const Poly<F>& a, const typename F::Elem& x) {
    auto r = k.zero();
    for (size_t i = a.c.size(); i-- > 0;) r = k.add(k.mul(r, x), a.c[i]);
    return r;
}

template <FieldCtx F>
Poly<F> compose(const F& k, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    for (size_t i = a.c.size(); i-- > 0;) {
        r = mul(k, r, b);
        r = add(k, r, constant(k, a.c[i]));
    }
    return r;
}

template <FieldCtx F>
Poly<F> pow_mod(const F& k, Poly<F> base, const mpz_class& e, const Poly<F>& m) {
    Poly<F> r = one(k);
    base = rem(k, base, m);
    mpz_class n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) r = rem(k, mul(k, r, base), m);
        base = rem(k, mul(k, base, base), m);
        n >>= 1;
    }
    return r;
}

// Lagrange interpolation through (xs[i], ys[i]); xs must be distinct.
template <FieldCtx F>
Poly<F> interpolate(const F& k, const std::vector<typename F::Elem>& xs,
                    const std::vector<typename F::Elem>& ys) {
    require(xs.size() == ys.size(), errc::degenerate_input, "interpolation size mismatch");
    size_t n = xs.size();
    // Newton form for O(n^2)
    std::vector<typename F::Elem> dd = ys;
    for (size_t j = 1; j < n; ++j) {
        for (size_t i = n; i-- > j;) {
            auto den = k.sub(xs[i], xs[i - j]);
            require(!k.is_zero(den), errc::degenerate_input, "interpolation nodes not distinct");
            dd[i] = k.mul(k.sub(dd[i], dd[i - 1]), k.inv(den));
        }
    }
    Poly<F> r;
    for (size_t i = n; i-- > 0;) {
        // r = r * (X - xs[i]) + dd[i]
        Poly<F> lin = make(k, {k.neg(xs[i]), k.one()});
        r = add(k, mul(k, r, lin), constant(k, dd[i]));
    }
    return r;
}

// Determinant of the (m+n) x (m+n) Sylvester matrix with the rows of `a`
// first, where a and b are taken with formal degrees m and n (coefficient
// arrays padded with zeros up to those degrees). Matching the determinant
// of the padded matrix keeps specialization and interpolation honest when
// leading coefficients vanish.
template <FieldCtx F>
typename F::Elem sylvester_resultant(const F& k, const Poly<F>& a, const Poly<F>& b, int m, int n) {
    require(m >= 0 && n >= 0, errc::degenerate_input, "negative formal degree");
    require(static_cast<int>(a.c.size()) <= m + 1 && static_cast<int>(b.c.size()) <= n + 1,
            errc::degenerate_input, "formal degree below actual degree");
    int N = m + n;
    if (N == 0) return k.one();
    std::vector<std::vector<typename F::Elem>> M(N, std::vector<typename F::Elem>(N, k.zero()));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) M[r][r + (m - i)] = coeff(k, a, i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) M[n + r][r + (n - i)] = coeff(k, b, i);
    // fraction-free is unnecessary over a field; plain elimination with sign
    auto det = k.one();
    for (int col = 0; col < N; ++col) {
        int piv = -1;
        for (int r = col; r < N; ++r)
            if (!k.is_zero(M[r][col])) { piv = r; break; }
        if (piv < 0) return k.zero();
        if (piv != col) {
            std::swap(M[piv], M[col]);
            det = k.neg(det);
        }
        det = k.mul(det, M[col][col]);
        auto pinv = k.inv(M[col][col]);
        for (int r = col + 1; r < N; ++r) {
            if (k.is_zero(M[r][col])) continue;
            auto f = k.mul(M[r][col], pinv);
            for (int cc = col; cc < N; ++cc)
                M[r][cc] = k.sub(M[r][cc], k.mul(f, M[col][cc]));
        }
    }
    return det;
}

// Resultant with formal degrees equal to the actual degrees.
template <FieldCtx F>
typename F::Elem resultant(const F& k, const Poly<F>& a, const Poly<F>& b) {
    require(!a.c.empty() && !b.c.empty(), errc::degenerate_input, "resultant of zero polynomial");
    return sylvester_resultant(k, a, b, degi(a), degi(b));
}

// Exact square root of a polynomial, or nullopt. The root is normalized so
// its leading coefficient is the field's canonical square root of lead(h).
template <FieldCtx F>
std::optional<Poly<F>> formal_square_root(const F& k, const Poly<F>& h) {
    require(k.characteristic() != 2, errc::unsupported_field, "square roots need characteristic != 2");
    require(!h.c.empty(), errc::degenerate_input, "square root of zero polynomial");
    int dh = degi(h);
    if (dh % 2 != 0) return std::nullopt;
    auto lc_root = k.sqrt(lead(h));
    if (!lc_root) return std::nullopt;
    int ds = dh / 2;
    Poly<F> s;
    s.c.assign(ds + 1, k.zero());
    s.c[ds] = *lc_root;
    auto inv2lc = k.inv(k.add(*lc_root, *lc_root));
    // match coefficients from the top: coefficient of X^(dh-j) determines s[ds-j]
    for (int j = 1; j <= ds; ++j) {
        // sum over known pairs (ds-i, ds-j+i), 0 < i < j
        auto acc = k.zero();
        for (int i = 1; i < j; ++i)
            acc = k.add(acc, k.mul(s.c[ds - i], s.c[ds - (j - i)]));
        auto target = k.sub(coeff(k, h, dh - j), acc);
        s.c[ds - j] = k.mul(target, inv2lc);
    }
    Poly<F> s2 = mul(k, s, s);
    if (!eq(k, s2, h)) return std::nullopt;
    return s;
}

template <FieldCtx F>
std::string to_string(const F& k, const Poly<F>& a, const std::string& var) {
    if (a.c.empty()) return "0";
    std::string s;
    for (size_t i = a.c.size(); i-- > 0;) {
        if (k.is_zero(a.c[i])) continue;
        if (!s.empty()) s += " + ";
        std::string c = k.to_string(a.c[i]);
        if (i == 0) {
            s += c;
        } else {
            if (c != "1") s += c + "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

template <FieldCtx F>
Key key(const F& k, const Poly<F>& a) {
    Key out;
    out.push_back(a.c.size());
    for (const auto& e : a.c) {
        Key ke = k.key(e);
        out.push_back(ke.size());
        out.insert(out.end(), ke.begin(), ke.end());
    }
    return out;
}

}  // namespace pol
}  // namespace dff
