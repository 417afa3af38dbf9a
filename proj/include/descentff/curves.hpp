#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "descentff/funcfield.hpp"
#include "descentff/linalg.hpp"
#include "descentff/series.hpp"
#include "descentff/tower.hpp"

namespace dff {

// Residue fields of places are presented uniformly as a two-level quotient
// tower over the base field: first the base-line coordinate, then the cover
// coordinate. Trivial levels use degree-1 moduli.
using KT = QuotientExt<ExtField>;
using KTX = QuotientExt<KT>;
using RFx = RatFuncField<ExtField>;

enum class CurveFamily { p1, super_d5, super_d6, hyp_odd, hyp_even };

struct Place {
    bool infinite = false;
    int inf_index = 0;
    Poly<ExtField> p;   // affine: monic irreducible in u; infinite: cluster minimal polynomial
    std::shared_ptr<const ExtField> base;
    std::shared_ptr<const KT> kt;
    std::shared_ptr<const KTX> ktx;
    Poly<KT> q;         // affine: monic irreducible in v over kt
    KTX::Elem ubar, vbar;  // affine point coordinates / infinite Newton seed in vbar
    int ram = 1;        // e over the base coordinate line
    int degree = 1;     // residue degree over the base field
    Key id;
};

struct Divisor {
    std::vector<std::pair<Place, mpq_class>> terms;  // sorted by place id

    mpq_class coeff(const Key& id) const {
        for (auto& [pl, c] : terms)
            if (pl.id == id) return c;
        return 0;
    }
    void add_term(const Place& pl, const mpq_class& c) {
        if (c == 0) return;
        for (size_t i = 0; i < terms.size(); ++i) {
            int cmp = key_cmp(pl.id, terms[i].first.id);
            if (cmp == 0) {
                terms[i].second += c;
                if (terms[i].second == 0) terms.erase(terms.begin() + i);
                return;
            }
            if (cmp < 0) {
                terms.insert(terms.begin() + i, {pl, c});
                return;
            }
        }
        terms.push_back({pl, c});
    }
    mpq_class degree() const {
        mpq_class d = 0;
        for (auto& [pl, c] : terms) d += c * pl.degree;
        return d;
    }
    bool is_integral() const {
        for (auto& [pl, c] : terms)
            if (c.get_den() != 1) return false;
        return true;
    }
    bool is_effective() const {
        for (auto& [pl, c] : terms)
            if (c < 0) return false;
        return true;
    }
    Divisor plus(const Divisor& o) const {
        Divisor r = *this;
        for (auto& [pl, c] : o.terms) r.add_term(pl, c);
        return r;
    }
    Divisor minus(const Divisor& o) const {
        Divisor r = *this;
        for (auto& [pl, c] : o.terms) r.add_term(pl, -c);
        return r;
    }
    Divisor scaled(const mpq_class& s) const {
        Divisor r;
        if (s == 0) return r;
        r.terms = terms;
        for (auto& [pl, c] : r.terms) c *= s;
        return r;
    }
    bool same_as(const Divisor& o) const {
        if (terms.size() != o.terms.size()) return false;
        for (size_t i = 0; i < terms.size(); ++i)
            if (!(terms[i].first.id == o.terms[i].first.id && terms[i].second == o.terms[i].second))
                return false;
        return true;
    }
    Key key() const {
        Key out;
        for (auto& [pl, c] : terms) {
            out.push_back(0xD1F);
            out.insert(out.end(), pl.id.begin(), pl.id.end());
            out.push_back(static_cast<std::uint64_t>(c.get_num().get_si()));
            out.push_back(static_cast<std::uint64_t>(c.get_den().get_si()));
        }
        return out;
    }
};

// A function on the curve: sum_b num[b](u) v^b / den(u), v-degree below the
// cover degree.
struct CurveFn {
    std::vector<Poly<ExtField>> num;
    Poly<ExtField> den;
    bool is_zero() const {
        for (auto& n : num)
            if (!n.c.empty()) return false;
        return true;
    }
};

class Curve {
  public:
    static Curve projective_line(std::shared_ptr<const ExtField> F, std::uint64_t seed) {
        Curve c;
        c.family_ = CurveFamily::p1;
        c.F_ = std::move(F);
        c.m_ = 1;
        c.phi_ = {pol::zero(*c.F_), pol::one(*c.F_)};
        c.genus_ = 0;
        c.seed_ = seed;
        c.init_infinite_places();
        return c;
    }

    // x^d + g(t) = 0 with g a squarefree cubic, d in {5, 6}
    static Curve superelliptic(std::shared_ptr<const ExtField> F, int d, Poly<ExtField> g,
                               std::uint64_t seed) {
        require(d == 5 || d == 6, errc::unsupported_curve, "superelliptic degree must be 5 or 6");
        std::uint64_t ch = F->characteristic();
        if (d == 5)
            require(ch != 2 && ch != 3 && ch != 5, errc::unsupported_curve,
                    "characteristic must not divide 30");
        else
            require(ch != 2 && ch != 3, errc::unsupported_curve,
                    "characteristic must not divide 6");
        require(!g.c.empty() && pol::degi(g) == 3, errc::unsupported_curve, "g must be a cubic");
        auto sq = pol::gcd(*F, g, pol::derivative(*F, g));
        require(pol::degi(sq) == 0, errc::unsupported_curve, "g must be squarefree");
        Curve c;
        c.family_ = d == 5 ? CurveFamily::super_d5 : CurveFamily::super_d6;
        c.F_ = std::move(F);
        c.m_ = d;
        c.g_ = std::move(g);
        c.phi_.assign(d + 1, pol::zero(*c.F_));
        c.phi_[0] = c.g_;
        c.phi_[d] = pol::one(*c.F_);
        c.genus_ = 4;
        c.seed_ = seed;
        c.init_infinite_places();
        return c;
    }

    // y^2 = f(x) with f squarefree of degree >= 3, over the finite base field
    static Curve hyperelliptic(std::shared_ptr<const ExtField> F, Poly<ExtField> f,
                               std::uint64_t seed) {
        require(F->characteristic() != 2, errc::unsupported_curve,
                "characteristic 2 not supported");
        require(!f.c.empty() && pol::degi(f) >= 3, errc::unsupported_curve, "deg f must be >= 3");
        auto sq = pol::gcd(*F, f, pol::derivative(*F, f));
        require(pol::degi(sq) == 0, errc::unsupported_curve, "f must be squarefree");
        Curve c;
        int m = pol::degi(f);
        c.family_ = (m % 2 == 1) ? CurveFamily::hyp_odd : CurveFamily::hyp_even;
        c.F_ = std::move(F);
        c.m_ = 2;
        c.f_ = std::move(f);
        c.phi_ = {pol::neg(*c.F_, c.f_), pol::zero(*c.F_), pol::one(*c.F_)};
        c.genus_ = (m - 1) / 2;
        c.seed_ = seed;
        c.init_infinite_places();
        return c;
    }

    const ExtField& F() const { return *F_; }
    std::shared_ptr<const ExtField> F_ptr() const { return F_; }
    CurveFamily family() const { return family_; }
    int genus() const { return genus_; }
    int cover_degree() const { return m_; }
    const Poly<ExtField>& g_poly() const { return g_; }
    const Poly<ExtField>& f_poly() const { return f_; }
    const std::vector<Place>& infinite_places() const { return inf_; }
    std::uint64_t seed() const { return seed_; }

    CurveFn fn_from(std::vector<Poly<ExtField>> num, Poly<ExtField> den) const {
        require(!den.c.empty(), errc::degenerate_input, "zero denominator");
        num.resize(m_, pol::zero(*F_));
        return {std::move(num), std::move(den)};
    }
    CurveFn fn_constant(const ExtField::Elem& c) const {
        return fn_from({pol::constant(*F_, c)}, pol::one(*F_));
    }

    // ------------------------------------------------------------------
    // places

    std::vector<Place> places_above(const Poly<ExtField>& p_in) const {
        const ExtField& F = *F_;
        Poly<ExtField> p = pol::monic(F, p_in);
        require(pol::degi(p) >= 1, errc::degenerate_input,
                "place needs a nonconstant minimal polynomial");
        auto kt = std::make_shared<KT>(F, p);
        Poly<KT> phi_bar;
        phi_bar.c.resize(m_ + 1);
        for (int b = 0; b <= m_; ++b) phi_bar.c[b] = pol::rem(F, phi_[b], p);
        pol::trim(*kt, phi_bar);
        auto fz = fac::factor(*kt, phi_bar, seed_ ^ 0x9a1eULL);
        std::vector<Place> out;
        out.reserve(fz.factors.size());
        for (auto& [q, mult] : fz.factors) out.push_back(make_affine_place(p, kt, q));
        return out;
    }

    // ------------------------------------------------------------------
    // local expansions

    std::pair<Laurent<KTX>, Laurent<KTX>> expand(const Place& pl, int prec) const {
        {
            std::lock_guard<std::mutex> lk(cache_->mu);
            auto it = cache_->exp.find(pl.id);
            if (it != cache_->exp.end() && it->second.first >= prec) {
                const auto& uv = it->second.second;
                const KTX& L = *pl.ktx;
                return {ser::truncate(L, uv.first, prec), ser::truncate(L, uv.second, prec)};
            }
        }
        auto uv = expand_uncached(pl, prec);
        {
            std::lock_guard<std::mutex> lk(cache_->mu);
            auto it = cache_->exp.find(pl.id);
            if (it == cache_->exp.end() || it->second.first < prec)
                cache_->exp[pl.id] = {prec, uv};
        }
        return uv;
    }

    std::pair<Laurent<KTX>, Laurent<KTX>> expand_uncached(const Place& pl, int prec) const {
        const KTX& L = *pl.ktx;
        int pp = prec + 10;
        if (!pl.infinite) {
            KTX::Elem dv = eval_dphi_dv(L, pl.ubar, pl.vbar);
            if (!L.is_zero(dv)) {
                Laurent<KTX> u =
                    ser::add(L, ser::constant(L, pl.ubar, pp), ser::tau_pow(L, 1, pp));
                auto coeffs = phi_coeffs_in_v(L, u, pp);
                Laurent<KTX> v = newton_poly_root(L, coeffs, pl.vbar, pp);
                return {u, v};
            }
            KTX::Elem du = eval_dphi_du(L, pl.ubar, pl.vbar);
            require(!L.is_zero(du), errc::unsupported_curve, "affine model singular at a place");
            Laurent<KTX> v =
                ser::add(L, ser::constant(L, pl.vbar, pp), ser::tau_pow(L, 1, pp));
            auto coeffs = phi_coeffs_in_u(L, v, pp);
            Laurent<KTX> u = newton_poly_root(L, coeffs, pl.ubar, pp);
            return {u, v};
        }
        return expand_infinite(pl, prec);
    }

    // ------------------------------------------------------------------
    // valuations and principal divisors

    int valuation(const CurveFn& fn, const Place& pl) const {
        require(!fn.is_zero(), errc::undefined_valuation, "valuation of the zero function");
        require(pl.base.get() == F_.get(), errc::place_mismatch,
                "place does not live on this curve's base field");
        int bound = crude_valuation_bound(fn);
        for (int prec = 8;; prec *= 2) {
            const KTX& L = *pl.ktx;
            auto [u, v] = expand(pl, prec);
            Laurent<KTX> nval = eval_fn_num(L, fn, u, v, prec);
            Laurent<KTX> dval = ser::eval_poly(L, lift_poly(L, fn.den), u, prec);
            auto vn = ser::valuation(L, nval);
            auto vd = ser::valuation(L, dval);
            if (vn && vd) return *vn - *vd;
            require(prec < 64 * (bound + 8), errc::internal_consistency,
                    "valuation did not stabilize");
        }
    }

    Divisor divisor_of(const CurveFn& fn) const {
        require(!fn.is_zero(), errc::undefined_valuation, "divisor of the zero function");
        Divisor D;
        std::map<Key, Poly<ExtField>> fibers;
        Poly<ExtField> res = numerator_resultant(fn);
        require(!res.c.empty(), errc::internal_consistency,
                "vanishing resultant for a nonzero function");
        auto collect = [&](const Poly<ExtField>& poly) {
            if (poly.c.empty() || pol::degi(poly) == 0) return;
            auto fz = fac::factor(*F_, poly, seed_ ^ 0xd1f2ULL);
            for (auto& [p, mult] : fz.factors) fibers.emplace(pol::key(*F_, p), p);
        };
        collect(res);
        collect(fn.den);
        for (auto& [key, p] : fibers)
            for (auto& pl : places_above(p)) {
                int v = valuation(fn, pl);
                if (v != 0) D.add_term(pl, v);
            }
        for (auto& pl : inf_) {
            int v = valuation(fn, pl);
            if (v != 0) D.add_term(pl, v);
        }
        require(D.degree() == 0, errc::internal_consistency,
                "principal divisor has nonzero degree: valuation bug");
        return D;
    }

    // ------------------------------------------------------------------
    // Riemann-Roch spaces

    struct RRSpace {
        int dim = 0;
        std::vector<CurveFn> basis;
    };

    RRSpace rr_space(const Divisor& D) const {
        require(D.is_integral(), errc::unsupported_denominator,
                "Riemann-Roch space needs an integral divisor");
        const ExtField& F = *F_;

        // denominator accommodating the allowed affine poles
        std::map<Key, std::pair<Poly<ExtField>, int>> den_pows;
        for (auto& [pl, c] : D.terms) {
            if (pl.infinite || c <= 0) continue;
            int n = static_cast<int>(c.get_num().get_si());
            int k = (n + pl.ram - 1) / pl.ram;
            auto key = pol::key(F, pl.p);
            auto it = den_pows.find(key);
            if (it == den_pows.end())
                den_pows[key] = {pl.p, k};
            else
                it->second.second = std::max(it->second.second, k);
        }
        Poly<ExtField> u = pol::one(F);
        for (auto& [key, pk] : den_pows)
            for (int i = 0; i < pk.second; ++i) u = pol::mul(F, u, pk.first);
        int du = pol::degi(u);

        auto [e_inf, w_v] = infinite_weights();
        long nmax = 0;
        for (auto& [pl, c] : D.terms)
            if (pl.infinite) nmax = std::max(nmax, c.get_num().get_si());
        long N = nmax + static_cast<long>(e_inf) * du;
        if (N < 0) return {};

        struct Mono {
            int a, b;
        };
        std::vector<Mono> monos;
        for (int b = 0; b < m_; ++b)
            for (int a = 0; e_inf * a + w_v * b <= N; ++a) monos.push_back({a, b});

        // constraint places: D's support, every place over a denominator
        // factor, and infinite places whose bound is finer than the crude one
        std::map<Key, int> want;
        for (auto& [pl, c] : D.terms) want[pl.id] = static_cast<int>(c.get_num().get_si());
        std::map<Key, Place> cplaces;
        for (auto& [pl, c] : D.terms)
            if (!pl.infinite) cplaces.emplace(pl.id, pl);
        for (auto& [key, pk] : den_pows)
            for (auto& pl : places_above(pk.first)) cplaces.emplace(pl.id, pl);

        lin::Mat<ExtField> rows;
        auto add_conditions = [&](const Place& pl, int n, int vmin) {
            int need_below = -n;
            if (vmin >= need_below) return;
            const KTX& L = *pl.ktx;
            int prec = need_below + 2 * (std::abs(vmin) + static_cast<int>(N) + e_inf * (du + 1)) + 16;
            auto [us, vs] = expand(pl, prec);
            Laurent<KTX> uinv =
                ser::inv(L, ser::eval_poly(L, lift_poly(L, u), us, prec));
            int dim_res = residue_dim(L);
            size_t ncond = static_cast<size_t>(need_below - vmin);
            std::vector<std::vector<ExtField::Elem>> cond(
                ncond * dim_res, std::vector<ExtField::Elem>(monos.size(), F.zero()));
            for (size_t mi = 0; mi < monos.size(); ++mi) {
                Laurent<KTX> s = ser::mul(L, ser::pow_int(L, us, monos[mi].a),
                                          ser::pow_int(L, vs, monos[mi].b));
                s = ser::mul(L, s, uinv);
                for (int e = vmin; e < need_below; ++e) {
                    auto flat = flatten(L, ser::coeff(L, s, e));
                    for (int j = 0; j < dim_res; ++j)
                        cond[static_cast<size_t>(e - vmin) * dim_res + j][mi] = flat[j];
                }
            }
            for (auto& r : cond) rows.push_back(std::move(r));
        };

        for (auto& [id, pl] : cplaces) {
            int n = want.count(id) ? want[id] : 0;
            int k = 0;
            auto it = den_pows.find(pol::key(F, pl.p));
            if (it != den_pows.end()) k = it->second.second;
            add_conditions(pl, n, -k * pl.ram);
        }
        for (auto& pl : inf_) {
            int n = want.count(pl.id) ? want[pl.id] : 0;
            add_conditions(pl, n, static_cast<int>(-N + e_inf * du));
        }

        auto null = lin::nullspace(F, rows, static_cast<int>(monos.size()));
        RRSpace out;
        out.dim = static_cast<int>(null.size());
        for (auto& vec : null) {
            CurveFn fn;
            fn.num.assign(m_, pol::zero(F));
            for (size_t mi = 0; mi < monos.size(); ++mi) {
                if (F.is_zero(vec[mi])) continue;
                fn.num[monos[mi].b] =
                    pol::add(F, fn.num[monos[mi].b], pol::monomial(F, vec[mi], monos[mi].a));
            }
            fn.den = u;
            out.basis.push_back(std::move(fn));
        }
        return out;
    }

    int riemann_roch_dim(const Divisor& D) const { return rr_space(D).dim; }

    // A function with divisor exactly D, when D is principal.
    std::optional<CurveFn> function_with_divisor(const Divisor& D) const {
        if (!D.is_integral() || D.degree() != 0) return std::nullopt;
        auto sp = rr_space(D.scaled(-1));
        if (sp.dim == 0) return std::nullopt;
        require(sp.dim == 1, errc::internal_consistency, "degree-0 divisor with l > 1");
        Divisor dh = divisor_of(sp.basis[0]);
        if (dh.same_as(D)) return sp.basis[0];
        return std::nullopt;
    }

    bool is_principal(const Divisor& D) const { return function_with_divisor(D).has_value(); }

    // ------------------------------------------------------------------
    // shared helpers (also used by the descent layer)

    static int residue_dim(const KTX& L) {
        return L.degree() * static_cast<int>(L.coeff_field().degree());
    }
    static std::vector<ExtField::Elem> flatten(const KTX& L, const KTX::Elem& e) {
        const KT& kt = L.coeff_field();
        const ExtField& F = kt.coeff_field();
        int d2 = L.degree(), d1 = kt.degree();
        std::vector<ExtField::Elem> out(static_cast<size_t>(d1) * d2, F.zero());
        for (int i = 0; i < static_cast<int>(e.c.size()); ++i)
            for (int j = 0; j < static_cast<int>(e.c[i].c.size()); ++j)
                out[static_cast<size_t>(i) * d1 + j] = e.c[i].c[j];
        return out;
    }
    static KTX::Elem lift_F(const KTX& L, const ExtField::Elem& c) {
        const KT& kt = L.coeff_field();
        return L.lift(pol::constant(kt.coeff_field(), c));
    }
    static Poly<KTX> lift_poly(const KTX& L, const Poly<ExtField>& a) {
        Poly<KTX> r;
        r.c.reserve(a.c.size());
        for (auto& c : a.c) r.c.push_back(lift_F(L, c));
        pol::trim(L, r);
        return r;
    }

  private:
    Place make_affine_place(const Poly<ExtField>& p, std::shared_ptr<const KT> kt,
                            const Poly<KT>& q) const {
        Place pl;
        pl.infinite = false;
        pl.p = p;
        pl.base = F_;
        pl.kt = kt;
        pl.ktx = std::make_shared<KTX>(*kt, q);
        pl.q = q;
        pl.ubar = pl.ktx->lift(kt->gen());
        pl.vbar = pl.ktx->gen();
        bool ram = false;
        if (family_ == CurveFamily::super_d5 || family_ == CurveFamily::super_d6)
            ram = pl.ktx->is_zero(pl.vbar);
        else if (family_ == CurveFamily::hyp_odd || family_ == CurveFamily::hyp_even)
            ram = pl.ktx->is_zero(pl.vbar);
        pl.ram = ram ? ram_index() : 1;
        pl.degree = pol::degi(p) * pol::degi(q);
        pl.id = Key{0};
        Key kp = pol::key(*F_, p);
        Key kq = pol::key(*kt, q);
        pl.id.push_back(kp.size());
        pl.id.insert(pl.id.end(), kp.begin(), kp.end());
        pl.id.insert(pl.id.end(), kq.begin(), kq.end());
        return pl;
    }

    int ram_index() const {
        switch (family_) {
            case CurveFamily::super_d5: return 5;
            case CurveFamily::super_d6: return 6;
            case CurveFamily::hyp_odd:
            case CurveFamily::hyp_even: return 2;
            default: return 1;
        }
    }

    void init_infinite_places() {
        const ExtField& F = *F_;
        auto trivial_kt = std::make_shared<KT>(F, pol::monomial(F, F.one(), 1));  // F[z]/(z)
        auto make_inf = [&](int idx, std::shared_ptr<const KT> kt, const KTX::Elem& seed_val,
                            std::shared_ptr<const KTX> ktx, int ram, int degree,
                            const Poly<ExtField>& minpoly) {
            Place pl;
            pl.infinite = true;
            pl.inf_index = idx;
            pl.p = minpoly;
            pl.base = F_;
            pl.kt = std::move(kt);
            pl.ktx = std::move(ktx);
            pl.vbar = seed_val;
            pl.ubar = pl.ktx->zero();
            pl.ram = ram;
            pl.degree = degree;
            pl.id = Key{1, static_cast<std::uint64_t>(idx)};
            inf_.push_back(std::move(pl));
        };
        auto trivial_ktx = [&](std::shared_ptr<const KT> kt) {
            return std::make_shared<KTX>(*kt, pol::monomial(*kt, kt->one(), 1));
        };

        switch (family_) {
            case CurveFamily::p1: {
                auto ktx = trivial_ktx(trivial_kt);
                make_inf(0, trivial_kt, ktx->zero(), ktx, 1, 1, pol::monomial(F, F.one(), 1));
                break;
            }
            case CurveFamily::super_d5: {
                auto ktx = trivial_ktx(trivial_kt);
                // branch seed V0 = -g3
                make_inf(0, trivial_kt, lift_F(*ktx, F.neg(pol::lead(g_))), ktx, 5, 1,
                         pol::monomial(F, F.one(), 1));
                break;
            }
            case CurveFamily::super_d6: {
                // clusters of branches labelled by the cube roots of -lc(g)
                Poly<ExtField> cube = pol::make(
                    F, {pol::lead(g_), F.zero(), F.zero(), F.one()});  // z^3 + g3
                auto fz = fac::factor(F, cube, seed_ ^ 0x1f6fULL);
                int idx = 0;
                for (auto& [w, mult] : fz.factors) {
                    auto kt = std::make_shared<KT>(F, w);
                    auto ktx = trivial_ktx(kt);
                    make_inf(idx++, kt, ktx->lift(kt->gen()), ktx, 2, pol::degi(w), w);
                }
                break;
            }
            case CurveFamily::hyp_odd: {
                auto ktx = trivial_ktx(trivial_kt);
                make_inf(0, trivial_kt, lift_F(*ktx, F.inv(pol::lead(f_))), ktx, 2, 1,
                         pol::monomial(F, F.one(), 1));
                break;
            }
            case CurveFamily::hyp_even: {
                Poly<ExtField> sq =
                    pol::make(F, {F.neg(pol::lead(f_)), F.zero(), F.one()});  // z^2 - lc(f)
                auto fz = fac::factor(F, sq, seed_ ^ 0x2f6fULL);
                int idx = 0;
                for (auto& [w, mult] : fz.factors) {
                    auto kt = std::make_shared<KT>(F, w);
                    auto ktx = trivial_ktx(kt);
                    make_inf(idx++, kt, ktx->lift(kt->gen()), ktx, 1, pol::degi(w), w);
                }
                break;
            }
        }
    }

    // phi as a polynomial in v with series coefficients, after substituting u
    std::vector<Laurent<KTX>> phi_coeffs_in_v(const KTX& L, const Laurent<KTX>& u,
                                              int prec) const {
        std::vector<Laurent<KTX>> coeffs;
        coeffs.reserve(phi_.size());
        for (auto& pb : phi_) coeffs.push_back(ser::eval_poly(L, lift_poly(L, pb), u, prec));
        return coeffs;
    }
    // phi as a polynomial in u with series coefficients, after substituting v
    std::vector<Laurent<KTX>> phi_coeffs_in_u(const KTX& L, const Laurent<KTX>& v,
                                              int prec) const {
        int max_a = 0;
        for (auto& pb : phi_)
            if (!pb.c.empty()) max_a = std::max(max_a, pol::degi(pb));
        std::vector<Laurent<KTX>> coeffs(max_a + 1, ser::zero(L, prec));
        std::vector<Laurent<KTX>> vpow(m_ + 1, ser::constant(L, L.one(), prec));
        for (int b = 1; b <= m_; ++b) vpow[b] = ser::mul(L, vpow[b - 1], v);
        for (int b = 0; b <= m_; ++b) {
            const auto& pb = phi_[b];
            for (int a = 0; a < static_cast<int>(pb.c.size()); ++a) {
                if (F_->is_zero(pb.c[a])) continue;
                coeffs[a] = ser::add(
                    L, coeffs[a], ser::scale(L, vpow[b], lift_F(L, pb.c[a])));
            }
        }
        return coeffs;
    }

    KTX::Elem eval_dphi_dv(const KTX& L, const KTX::Elem& ub, const KTX::Elem& vb) const {
        KTX::Elem acc = L.zero();
        for (int b = m_; b >= 1; --b) {
            acc = L.mul(acc, vb);
            auto cb = pol::eval(L, lift_poly(L, phi_[b]), ub);
            acc = L.add(acc, L.mul(L.from_int(b), cb));
        }
        return acc;
    }
    KTX::Elem eval_dphi_du(const KTX& L, const KTX::Elem& ub, const KTX::Elem& vb) const {
        KTX::Elem acc = L.zero();
        for (int b = m_; b >= 0; --b) {
            acc = L.mul(acc, vb);
            auto der = pol::derivative(*F_, phi_[b]);
            acc = L.add(acc, pol::eval(L, lift_poly(L, der), ub));
        }
        return acc;
    }

    // Newton iteration for a simple root of P(W) = sum coeffs[i] W^i, with
    // working precision ramped along the quadratic convergence
    static Laurent<KTX> newton_poly_root(const KTX& L, const std::vector<Laurent<KTX>>& coeffs,
                                         const KTX::Elem& w0, int prec) {
        std::vector<Laurent<KTX>> dcoeffs;
        for (size_t i = 1; i < coeffs.size(); ++i)
            dcoeffs.push_back(ser::scale(L, coeffs[i], L.from_int(static_cast<std::int64_t>(i))));
        auto eval_at = [&](const std::vector<Laurent<KTX>>& cs, const Laurent<KTX>& w, int pc) {
            Laurent<KTX> acc = ser::zero(L, pc);
            for (size_t i = cs.size(); i-- > 0;) {
                acc = ser::mul(L, acc, w);
                acc = ser::add(L, acc, ser::truncate(L, cs[i], pc));
            }
            return acc;
        };
        Laurent<KTX> w = ser::constant(L, w0, 1);
        for (int pc = 2;; pc *= 2) {
            if (pc > prec) pc = prec;
            w.prec = pc;  // correct modulo tau^(pc/2); Newton doubles that
            Laurent<KTX> pw = eval_at(coeffs, w, pc);
            Laurent<KTX> dpw = eval_at(dcoeffs, w, pc);
            w = ser::sub(L, w, ser::mul(L, pw, ser::inv(L, dpw)));
            w = ser::truncate(L, w, pc);
            if (pc == prec) break;
        }
        return w;
    }

    std::pair<Laurent<KTX>, Laurent<KTX>> expand_infinite(const Place& pl, int prec) const {
        const KTX& L = *pl.ktx;
        const ExtField& F = *F_;
        int pp = prec + 24;
        auto mono = [&](const ExtField::Elem& c, int e) {
            return ser::scale(L, ser::tau_pow(L, e, pp), lift_F(L, c));
        };
        switch (family_) {
            case CurveFamily::p1: {
                Laurent<KTX> u = ser::tau_pow(L, -1, pp);
                return {u, ser::zero(L, pp)};
            }
            case CurveFamily::super_d5: {
                // x = tau^-3 W^2, t = tau^-5 W^3;  W^10 + g3 W^9 + g2 tau^5 W^6
                //   + g1 tau^10 W^3 + g0 tau^15 = 0, W(0) = -g3
                std::vector<Laurent<KTX>> cs(11, ser::zero(L, pp));
                cs[10] = ser::constant(L, L.one(), pp);
                cs[9] = ser::constant(L, lift_F(L, pol::coeff(F, g_, 3)), pp);
                cs[6] = mono(pol::coeff(F, g_, 2), 5);
                cs[3] = mono(pol::coeff(F, g_, 1), 10);
                cs[0] = mono(pol::coeff(F, g_, 0), 15);
                Laurent<KTX> W = newton_poly_root(L, cs, pl.vbar, pp);
                Laurent<KTX> W2 = ser::mul(L, W, W);
                Laurent<KTX> W3 = ser::mul(L, W2, W);
                Laurent<KTX> u = ser::mul(L, ser::tau_pow(L, -5, pp), W3);
                Laurent<KTX> v = ser::mul(L, ser::tau_pow(L, -3, pp), W2);
                return {u, v};
            }
            case CurveFamily::super_d6: {
                // x = tau^-1 W, t = tau^-2 W;  W^6 + g3 W^3 + g2 tau^2 W^2
                //   + g1 tau^4 W + g0 tau^6 = 0, W(0) = cube root of -g3
                std::vector<Laurent<KTX>> cs(7, ser::zero(L, pp));
                cs[6] = ser::constant(L, L.one(), pp);
                cs[3] = ser::constant(L, lift_F(L, pol::coeff(F, g_, 3)), pp);
                cs[2] = mono(pol::coeff(F, g_, 2), 2);
                cs[1] = mono(pol::coeff(F, g_, 1), 4);
                cs[0] = mono(pol::coeff(F, g_, 0), 6);
                Laurent<KTX> W = newton_poly_root(L, cs, pl.vbar, pp);
                Laurent<KTX> u = ser::mul(L, ser::tau_pow(L, -2, pp), W);
                Laurent<KTX> v = ser::mul(L, ser::tau_pow(L, -1, pp), W);
                return {u, v};
            }
            case CurveFamily::hyp_odd: {
                // x = tau^-2 W, y = tau^-m W^g; P = sum_i f_i tau^(2(m-i)) W^i - W^(2g)
                int m = pol::degi(f_);
                int g = (m - 1) / 2;
                std::vector<Laurent<KTX>> cs(m + 1, ser::zero(L, pp));
                for (int i = 0; i <= m; ++i) cs[i] = mono(pol::coeff(F, f_, i), 2 * (m - i));
                cs[2 * g] = ser::sub(L, cs[2 * g], ser::constant(L, L.one(), pp));
                Laurent<KTX> W = newton_poly_root(L, cs, pl.vbar, pp);
                Laurent<KTX> u = ser::mul(L, ser::tau_pow(L, -2, pp), W);
                Laurent<KTX> v = ser::mul(L, ser::tau_pow(L, -m, pp), ser::pow_int(L, W, g));
                return {u, v};
            }
            case CurveFamily::hyp_even: {
                // x = tau^-1, y = tau^-(g+1) W; W^2 = sum_i f_i tau^(m-i)
                int m = pol::degi(f_);
                std::vector<Laurent<KTX>> cs(3, ser::zero(L, pp));
                cs[2] = ser::constant(L, L.one(), pp);
                Laurent<KTX> rhs = ser::zero(L, pp);
                for (int i = 0; i <= m; ++i)
                    rhs = ser::add(L, rhs, mono(pol::coeff(F, f_, i), m - i));
                cs[0] = ser::neg(L, rhs);
                Laurent<KTX> W = newton_poly_root(L, cs, pl.vbar, pp);
                Laurent<KTX> u = ser::tau_pow(L, -1, pp);
                Laurent<KTX> v = ser::mul(L, ser::tau_pow(L, -(m / 2), pp), W);
                return {u, v};
            }
        }
        fail(errc::internal_consistency, "unknown family");
    }

    Laurent<KTX> eval_fn_num(const KTX& L, const CurveFn& fn, const Laurent<KTX>& u,
                             const Laurent<KTX>& v, int prec) const {
        Laurent<KTX> acc = ser::zero(L, prec);
        for (size_t b = fn.num.size(); b-- > 0;) {
            acc = ser::mul(L, acc, v);
            acc = ser::add(L, acc, ser::eval_poly(L, lift_poly(L, fn.num[b]), u, prec));
        }
        return acc;
    }

    Poly<ExtField> numerator_resultant(const CurveFn& fn) const {
        const ExtField& F = *F_;
        bool only_const = true;
        for (size_t b = 1; b < fn.num.size(); ++b)
            if (!fn.num[b].c.empty()) only_const = false;
        if (only_const) return fn.num[0];
        RFx K(F);
        Poly<RFx> N, Phi;
        for (auto& nb : fn.num) N.c.push_back(K.from_poly(nb));
        pol::trim(K, N);
        for (auto& pb : phi_) Phi.c.push_back(K.from_poly(pb));
        pol::trim(K, Phi);
        auto r = pol::resultant(K, Phi, N);
        require(pol::degi(r.den) == 0, errc::internal_consistency, "resultant denominator");
        return r.num;
    }

    int crude_valuation_bound(const CurveFn& fn) const {
        int dmax = pol::degi(fn.den);
        for (auto& nb : fn.num)
            if (!nb.c.empty()) dmax = std::max(dmax, pol::degi(nb));
        return 8 * (dmax + m_ + 4);
    }

    std::pair<int, int> infinite_weights() const {
        switch (family_) {
            case CurveFamily::p1: return {1, 1};
            case CurveFamily::super_d5: return {5, 3};
            case CurveFamily::super_d6: return {2, 1};
            case CurveFamily::hyp_odd: return {2, pol::degi(f_)};
            case CurveFamily::hyp_even: return {1, pol::degi(f_) / 2};
        }
        return {1, 1};
    }

    struct ExpCache {
        std::mutex mu;
        std::map<Key, std::pair<int, std::pair<Laurent<KTX>, Laurent<KTX>>>> exp;
    };
    std::shared_ptr<ExpCache> cache_ = std::make_shared<ExpCache>();

    CurveFamily family_ = CurveFamily::p1;
    std::shared_ptr<const ExtField> F_;
    int m_ = 1;
    Poly<ExtField> g_, f_;
    std::vector<Poly<ExtField>> phi_;  // phi_[b] = coefficient of v^b, a polynomial in u
    int genus_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<Place> inf_;
};

// Divisor class in Pic(curve, Q.Sigma): rational coefficients are allowed
// only at places over Sigma, with denominators in {1, 2, 5}.
struct QPicClass {
    const Curve* carrier = nullptr;
    Divisor rep;
    std::vector<Place> sigma;

    void validate() const {
        for (auto& [pl, c] : rep.terms) {
            auto den = c.get_den();
            require(den == 1 || den == 2 || den == 5, errc::unsupported_denominator,
                    "coefficient denominators must lie in {1,2,5}");
            if (den != 1) {
                bool over_sigma = false;
                for (auto& s : sigma)
                    if (s.id == pl.id) over_sigma = true;
                require(over_sigma, errc::unsupported_denominator,
                        "rational coefficients only above the declared support set");
            }
        }
    }
};

inline bool class_equal(const QPicClass& a, const QPicClass& b) {
    require(a.carrier == b.carrier, errc::curve_mismatch, "classes on different carriers");
    require(a.sigma.size() == b.sigma.size(), errc::curve_mismatch, "different support sets");
    for (size_t i = 0; i < a.sigma.size(); ++i)
        require(a.sigma[i].id == b.sigma[i].id, errc::curve_mismatch, "different support sets");
    a.validate();
    b.validate();
    Divisor diff = a.rep.minus(b.rep);
    mpz_class l = 1;
    for (auto& [pl, c] : diff.terms) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    Divisor Z = diff.scaled(mpq_class(l));
    const Curve& X = *a.carrier;
    if (a.sigma.empty()) {
        if (Z.degree() != 0) return false;
        return X.is_principal(Z);
    }
    // search a bounded integral combination of Sigma places with matching degree
    mpq_class degZq = Z.degree();
    require(degZq.get_den() == 1, errc::internal_consistency, "non-integral divisor degree");
    long degZ = degZq.get_num().get_si();
    long B = std::abs(degZ) + 6;
    size_t ns = a.sigma.size();
    std::vector<long> s(ns, -B);
    while (true) {
        long deg = 0;
        for (size_t i = 0; i < ns; ++i) deg += s[i] * a.sigma[i].degree;
        if (deg == degZ) {
            Divisor cand = Z;
            for (size_t i = 0; i < ns; ++i)
                cand.add_term(a.sigma[i], -mpq_class(s[i]));
            if (cand.degree() == 0 && X.is_principal(cand)) return true;
        }
        size_t i = 0;
        while (i < ns && s[i] == B) {
            s[i] = -B;
            ++i;
        }
        if (i == ns) break;
        ++s[i];
    }
    return false;
}

}  // namespace dff
