#include <doctest.h>

#include "descentff/curves.hpp"

using namespace dff;

namespace {

Poly<ExtField> P(const ExtField& F, std::vector<std::int64_t> cs) {
    std::vector<ExtField::Elem> v;
    for (auto c : cs) v.push_back(F.from_int(c));
    return pol::make(F, std::move(v));
}

Curve d5_curve(FieldTower& T) {
    auto F = T.standard(1);
    return Curve::superelliptic(F, 5, P(*F, {1, 1, 0, 1}), 11);
}

}  // namespace

TEST_CASE("genus of the supported families") {
    FieldTower T(13, 1);
    auto F = T.standard(1);
    CHECK(Curve::projective_line(F, 1).genus() == 0);
    CHECK(Curve::hyperelliptic(F, P(*F, {2, 0, 0, 0, 0, 1}), 1).genus() == 2);  // y^2 = x^5+2
    CHECK(Curve::superelliptic(F, 5, P(*F, {1, 1, 0, 1}), 1).genus() == 4);
    CHECK(Curve::superelliptic(F, 6, P(*F, {1, 1, 0, 1}), 1).genus() == 4);
    CHECK(Curve::hyperelliptic(F, P(*F, {1, 1, 0, 1}), 1).genus() == 1);
    CHECK_THROWS_AS(Curve::superelliptic(F, 4, P(*F, {1, 1, 0, 1}), 1), error);
    // non-squarefree g rejected
    CHECK_THROWS_AS(Curve::superelliptic(F, 5, P(*F, {0, 0, 0, 1}), 1), error);
}

TEST_CASE("structure of places at infinity") {
    FieldTower T(13, 1);
    auto F = T.standard(1);
    auto X5 = Curve::superelliptic(F, 5, P(*F, {1, 1, 0, 1}), 1);
    CHECK(X5.infinite_places().size() == 1);
    CHECK(X5.infinite_places()[0].ram == 5);
    auto X6 = Curve::superelliptic(F, 6, P(*F, {1, 1, 0, 1}), 1);
    // branches at infinity are labelled by the cube roots of -1
    size_t total = 0;
    for (auto& pl : X6.infinite_places()) total += pl.degree;
    CHECK(total == 3);
    auto C6 = Curve::hyperelliptic(F, P(*F, {1, 1, 0, 1, 0, 0, 1}), 1);
    size_t tot2 = 0;
    for (auto& pl : C6.infinite_places()) tot2 += pl.degree;
    CHECK(tot2 == 2);  // lead coefficient 1 is a square, two rational branches
}

TEST_CASE("divisor of x on the degree-5 model: P1+P2+P3 - 3*inf") {
    FieldTower T(13, 1);
    Curve X = d5_curve(T);
    const ExtField& F = X.F();
    CurveFn x = X.fn_from({pol::zero(F), pol::one(F)}, pol::one(F));
    Divisor D = X.divisor_of(x);
    mpq_class inf_coeff = 0, zero_deg = 0;
    for (auto& [pl, c] : D.terms) {
        if (pl.infinite)
            inf_coeff = c;
        else {
            CHECK(c > 0);
            zero_deg += c * pl.degree;
        }
    }
    CHECK(inf_coeff == -3);
    CHECK(zero_deg == 3);
    CHECK(D.degree() == 0);
    for (auto& [pl, c] : D.terms)
        if (!pl.infinite) CHECK(c == 1);
}

TEST_CASE("valuations at infinity on the degree-5 model") {
    FieldTower T(13, 1);
    Curve X = d5_curve(T);
    const ExtField& F = X.F();
    const Place& inf = X.infinite_places()[0];
    CurveFn x = X.fn_from({pol::zero(F), pol::one(F)}, pol::one(F));
    CurveFn t = X.fn_from({pol::monomial(F, F.one(), 1)}, pol::one(F));
    CHECK(X.valuation(x, inf) == -3);
    CHECK(X.valuation(t, inf) == -5);
}

TEST_CASE("uniformizer at an unramified affine place") {
    FieldTower T(13, 1);
    Curve X = d5_curve(T);
    const ExtField& F = X.F();
    // g(2) = 11 != 0 over F_13, so the fiber over t = 2 is unramified
    CurveFn tm2 = X.fn_from({P(F, {-2, 1})}, pol::one(F));
    for (auto& pl : X.places_above(P(F, {-2, 1}))) {
        CHECK(pl.ram == 1);
        CHECK(X.valuation(tm2, pl) == 1);
    }
}

TEST_CASE("div(c) = 0 and div(fg) = div f + div g") {
    FieldTower T(13, 5);
    Curve X = d5_curve(T);
    const ExtField& F = X.F();
    CHECK(X.divisor_of(X.fn_constant(F.from_int(7))).terms.empty());
    CHECK_THROWS_AS(X.divisor_of(X.fn_constant(F.zero())), error);

    RFx K(F);
    Poly<RFx> phi;
    phi.c = {K.from_poly(X.g_poly()), K.zero(), K.zero(), K.zero(), K.zero(), K.one()};
    QuotientExt<RFx> FFld(K, phi);
    auto to_ff = [&](const CurveFn& fn) {
        Poly<RFx> e;
        for (auto& nb : fn.num) e.c.push_back(K.make(nb, fn.den));
        pol::trim(K, e);
        return e;
    };

    Rng rng(17);
    for (int trial = 0; trial < 4; ++trial) {
        auto rand_fn = [&](int maxdeg) {
            std::vector<Poly<ExtField>> num(5, pol::zero(F));
            for (int b = 0; b < 2; ++b) {
                Poly<ExtField> nb;
                nb.c.resize(maxdeg + 1);
                for (auto& c : nb.c) c = F.from_base(rng.below(13));
                pol::trim(F, nb);
                num[b] = nb;
            }
            return X.fn_from(num, pol::one(F));
        };
        CurveFn f = rand_fn(2), g = rand_fn(1);
        if (f.is_zero() || g.is_zero()) continue;
        auto prod = FFld.mul(to_ff(f), to_ff(g));
        Poly<ExtField> den = pol::one(F);
        for (auto& c : prod.c) den = pol::mul(F, den, c.den);
        std::vector<Poly<ExtField>> num;
        for (auto& c : prod.c) num.push_back(pol::divide_exact(F, pol::mul(F, c.num, den), c.den));
        CurveFn fg = X.fn_from(num, den);
        Divisor lhs = X.divisor_of(fg);
        Divisor rhs = X.divisor_of(f).plus(X.divisor_of(g));
        CHECK(lhs.same_as(rhs));
    }
}

TEST_CASE("Riemann-Roch dimensions on the degree-5 model") {
    FieldTower T(13, 1);
    Curve X = d5_curve(T);
    const Place& inf = X.infinite_places()[0];

    Divisor zero;
    CHECK(X.riemann_roch_dim(zero) == 1);

    // l(6*inf) = genus = 4 because 6*inf is canonical
    Divisor six_inf;
    six_inf.add_term(inf, 6);
    CHECK(X.riemann_roch_dim(six_inf) == 4);

    // l(3*inf) = 2: the vanishing even theta characteristic
    Divisor three_inf;
    three_inf.add_term(inf, 3);
    CHECK(X.riemann_roch_dim(three_inf) == 2);

    // l(D) = deg D - g + 1 beyond 2g - 2
    for (int n = 7; n <= 11; ++n) {
        Divisor D;
        D.add_term(inf, n);
        CHECK(X.riemann_roch_dim(D) == n - 4 + 1);
    }

    Divisor neg;
    neg.add_term(inf, -1);
    CHECK(X.riemann_roch_dim(neg) == 0);
}

TEST_CASE("Riemann-Roch beyond 2g-2 with affine poles") {
    FieldTower T(13, 9);
    Curve X = d5_curve(T);
    const ExtField& F = X.F();
    Rng rng(31);
    for (int done = 0; done < 12; ++done) {
        Divisor D;
        int deg = 0;
        while (deg <= 6) {
            std::uint64_t c0 = rng.below(13);
            auto pls = X.places_above(P(F, {static_cast<std::int64_t>(c0), 1}));
            auto& pl = pls[rng.below(pls.size())];
            int mult = 1 + static_cast<int>(rng.below(2));
            D.add_term(pl, mult);
            deg += mult * pl.degree;
        }
        mpq_class dq = D.degree();
        int n = static_cast<int>(dq.get_num().get_si());
        CHECK(X.riemann_roch_dim(D) == n - 4 + 1);
    }
}

TEST_CASE("principality and class arithmetic") {
    FieldTower T(13, 3);
    Curve X = d5_curve(T);
    const ExtField& F = X.F();
    CurveFn x = X.fn_from({pol::zero(F), pol::one(F)}, pol::one(F));
    Divisor dx = X.divisor_of(x);
    CHECK(X.is_principal(dx));
    auto h = X.function_with_divisor(dx);
    REQUIRE(h.has_value());
    CHECK(X.divisor_of(*h).same_as(dx));

    auto pls = X.places_above(P(F, {-2, 1}));
    Divisor Z;
    Z.add_term(pls[0], 1);
    Z.add_term(X.infinite_places()[0], -pls[0].degree);
    CHECK(Z.degree() == 0);
    CHECK(!X.is_principal(Z));

    QPicClass c1{&X, dx, {}};
    QPicClass c2{&X, Divisor{}, {}};
    CHECK(class_equal(c1, c2));
    QPicClass c3{&X, Z, {}};
    CHECK(!class_equal(c3, c2));
    CHECK(class_equal(c3, c3));
}

TEST_CASE("projective line places and dimensions") {
    FieldTower T(13, 1);
    auto F = T.standard(1);
    Curve P1 = Curve::projective_line(F, 1);
    Divisor D;
    D.add_term(P1.infinite_places()[0], 3);
    CHECK(P1.riemann_roch_dim(D) == 4);
    auto pls = P1.places_above(P(*F, {1, 1}));
    REQUIRE(pls.size() == 1);
    D.add_term(pls[0], 2);
    CHECK(P1.riemann_roch_dim(D) == 6);
    CurveFn lin = P1.fn_from({P(*F, {1, 1})}, pol::one(*F));
    Divisor dl = P1.divisor_of(lin);
    CHECK(dl.degree() == 0);
    CHECK(dl.terms.size() == 2);
}
