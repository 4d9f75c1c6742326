#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kappa/flows.hpp"
#include "kappa/hatalg.hpp"
#include "kappa/realization.hpp"

using namespace kappa;

namespace {

WeylOp random_weyl(const Context* ctx, std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 4), coeff(-3, 3), comp(0, ctx->dim() - 1),
        kindpick(0, 2), expd(0, 2);
    WeylOp w(ctx);
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Poly f = Poly::constant(ctx, GaussRat(coeff(rng)));
        if (f.is_zero()) continue;
        for (int j = kindpick(rng); j > 0; --j)
            f = f * Poly::var(ctx, kindpick(rng) == 0 ? VarKind::X : VarKind::A, comp(rng));
        Mono dm;
        for (int j = expd(rng); j > 0; --j) dm = dm * Mono::var(VarKind::D, comp(rng));
        w += WeylOp::from_dpoly(Poly::mono(ctx, dm, GaussRat::one())).scaled_poly(f);
    }
    return w;
}

Poly random_xpoly(const Context* ctx, std::mt19937& rng, int maxdeg = 3) {
    std::uniform_int_distribution<int> nterms(1, 4), coeff(-3, 3), comp(0, ctx->dim() - 1),
        deg(0, maxdeg);
    Poly p(ctx);
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Mono m;
        for (int j = deg(rng); j > 0; --j) m = m * Mono::var(VarKind::X, comp(rng));
        p += Poly::mono(ctx, m, GaussRat(coeff(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("weyl_mul defining relation") {
    Context c(2, 2);
    const Context* ctx = &c;

    SECTION("d_0 x_0 = x_0 d_0 + eta_00") {
        WeylOp lhs = WeylOp::del(ctx, 0) * WeylOp::x(ctx, 0);
        WeylOp rhs = WeylOp::x(ctx, 0) * WeylOp::del(ctx, 0) +
                     WeylOp::one(ctx).scaled(GaussRat(ctx->eta(0)));
        CHECK(lhs == rhs);
        CHECK(ctx->eta(0) == -1);
    }
    SECTION("coordinates commute") {
        WeylOp x0 = WeylOp::x(ctx, 0), x1 = WeylOp::x(ctx, 1);
        CHECK((x0 * x1 - x1 * x0).is_zero());
    }
    SECTION("[d_mu, x_nu] = eta_{mu nu}") {
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu) {
                WeylOp comm = WeylOp::del(ctx, mu).commutator(WeylOp::x(ctx, nu));
                Poly expect = mu == nu ? Poly::constant(ctx, GaussRat(ctx->eta(mu)))
                                       : Poly::zero(ctx);
                CHECK(comm == WeylOp::from_xpoly(expect));
            }
    }
    SECTION("dimension mismatch is rejected") {
        Context c3(3, 2);
        CHECK_THROWS_AS(WeylOp::x(ctx, 0) * WeylOp::x(&c3, 0), std::invalid_argument);
    }
}

TEST_CASE("weyl_mul is associative on randomized triples") {
    Context c(2, 3);
    std::mt19937 rng(2024);
    for (int rep = 0; rep < 25; ++rep) {
        WeylOp u = random_weyl(&c, rng), v = random_weyl(&c, rng), w = random_weyl(&c, rng);
        CHECK((u * v) * w == u * (v * w));
    }
}

TEST_CASE("act_on_poly") {
    Context c(2, 2);
    const Context* ctx = &c;
    Poly x0 = Poly::var(ctx, VarKind::X, 0);

    SECTION("x_0 acting on 1") { CHECK(WeylOp::x(ctx, 0).act(Poly::one(ctx)) == x0); }
    SECTION("d_0 acting on x_0^2 gives 2 eta_00 x_0") {
        CHECK(WeylOp::del(ctx, 0).act(x0 * x0) == x0.scaled(GaussRat(2 * ctx->eta(0))));
    }
    SECTION("derivatives annihilate 1") {
        CHECK(WeylOp::del(ctx, 0).act(Poly::one(ctx)).is_zero());
    }
    SECTION("xhat_mu acting on 1 gives x_mu for every catalog realization") {
        for (auto& name : catalog_names()) {
            Realization r = catalog_realization(ctx, name);
            for (int mu = 0; mu < 2; ++mu)
                CHECK(r.xhat(mu).act(Poly::one(ctx)) == Poly::var(ctx, VarKind::X, mu));
        }
    }
    SECTION("algebra action: act(uv, f) = act(u, act(v, f))") {
        std::mt19937 rng(55);
        for (int rep = 0; rep < 20; ++rep) {
            WeylOp u = random_weyl(ctx, rng), v = random_weyl(ctx, rng);
            Poly f = random_xpoly(ctx, rng);
            CHECK((u * v).act(f) == u.act(v.act(f)));
        }
    }
}

TEST_CASE("act_on_planewave") {
    Context c(2, 3);
    const Context* ctx = &c;

    SECTION("d_mu on e^{ikx} gives i k_mu") {
        PlaneWave w = PlaneWave::unit(ctx, VarKind::K);
        PlaneWave out = WeylOp::del(ctx, 0).act(w);
        CHECK(out.pref == Poly::var(ctx, VarKind::K, 0).times_i());
    }
    SECTION("xhat_mu on e^{iqx} gives x^alpha phi_{alpha mu}(iq)") {
        Realization left = catalog_realization(ctx, "left");
        PlaneWave w = PlaneWave::unit(ctx, VarKind::Q);
        for (int mu = 0; mu < 2; ++mu) {
            PlaneWave out = left.xhat(mu).act(w);
            Poly expect(ctx);
            std::map<VarId, Poly> sub = d_to_ik(ctx, VarKind::Q);
            for (int al = 0; al < 2; ++al)
                expect += Poly::var(ctx, VarKind::X, al).scaled(GaussRat(ctx->eta(al))) *
                          left.phi(al, mu).substituted(sub);
            CHECK(out.pref == expect);
        }
    }
    SECTION("Z on e^{iqx}: eigenvalue is the reciprocal of 1 + (aq)") {
        Realization left = catalog_realization(ctx, "left");
        auto ops = derive_ops(left);
        PlaneWave w = PlaneWave::unit(ctx, VarKind::Q);
        PlaneWave out = WeylOp::from_dpoly(ops.Z).act(w);
        Poly aq = dot(ctx, VarKind::A, VarKind::Q);
        CHECK(out.pref == (Poly::one(ctx) + aq).reciprocal());
        // d16: z^{-1} = G_1 phi evaluated on the plane wave
        PlaneWave outz = WeylOp::from_dpoly(ops.Zinv).act(w);
        CHECK(outz.pref == Poly::one(ctx) + aq);
    }
}

TEST_CASE("hat_T images") {
    Context c(2, 3);
    const Context* ctx = &c;

    SECTION("T(xhat_mu) = x_mu") {
        for (auto& name : catalog_names()) {
            Realization r = catalog_realization(ctx, name);
            for (int mu = 0; mu < 2; ++mu)
                CHECK(hat_T({mu}, r) == Poly::var(ctx, VarKind::X, mu));
        }
    }
    SECTION("left covariant: T(xhat_mu xhat_nu) = x_mu(x_nu - i a_nu)") {
        Realization left = catalog_realization(ctx, "left");
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu) {
                Poly expect = Poly::var(ctx, VarKind::X, mu) *
                              (Poly::var(ctx, VarKind::X, nu) -
                               Poly::var(ctx, VarKind::A, nu).times_i());
                CHECK(hat_T({mu, nu}, left) == expect);
            }
    }
    SECTION("right covariant: T(xhat_mu xhat_nu) = (x_mu + i a_mu) x_nu") {
        Realization right = catalog_realization(ctx, "right");
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu) {
                Poly expect = (Poly::var(ctx, VarKind::X, mu) +
                               Poly::var(ctx, VarKind::A, mu).times_i()) *
                              Poly::var(ctx, VarKind::X, nu);
                CHECK(hat_T({mu, nu}, right) == expect);
            }
    }
}

TEST_CASE("unhat is the inverse of T") {
    Context c(2, 3);
    const Context* ctx = &c;

    SECTION("T^{-1}(x_mu) is the single-letter word") {
        Realization nat = catalog_realization(ctx, "natural");
        HatAlgebra alg(nat);
        HatOp h = alg.unhat(Poly::var(ctx, VarKind::X, 0));
        CHECK(h.terms().size() == 1);
        CHECK(h.terms().begin()->first.first == HatWord{0});
    }
    SECTION("a -> 0: T^{-1} is the identity embedding") {
        Context c0(2, 0);
        Realization nat = catalog_realization(&c0, "natural");
        HatAlgebra alg(nat);
        Poly f = Poly::var(&c0, VarKind::X, 0) * Poly::var(&c0, VarKind::X, 1) +
                 Poly::var(&c0, VarKind::X, 1);
        CHECK(alg.unhat(f).terms().size() == 2);
        CHECK(alg.T(alg.unhat(f)) == f);
    }
    SECTION("T o T^{-1} = id on polynomials of degree <= 4, every catalog realization") {
        std::mt19937 rng(808);
        for (auto& name : catalog_names()) {
            Realization r = catalog_realization(ctx, name);
            HatAlgebra alg(r);
            for (int rep = 0; rep < 4; ++rep) {
                Poly f = random_xpoly(ctx, rng, 4);
                INFO(name);
                CHECK(alg.T(alg.unhat(f)) == f);
            }
        }
    }
}

TEST_CASE("momentum_partial") {
    Context c(2, 2);
    const Context* ctx = &c;

    SECTION("identity map") {
        auto J = momentum_partial(MomentumMap::identity(ctx));
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu)
                CHECK(J[mu][nu] == (mu == nu ? Poly::one(ctx) : Poly::zero(ctx)));
    }
    SECTION("product rule on k_mu (ak)") {
        MomentumMap m(ctx, 1);
        Poly ak = dot(ctx, VarKind::A, VarKind::K);
        for (int mu = 0; mu < 2; ++mu) m[mu] = Poly::var(ctx, VarKind::K, mu) * ak;
        auto J = momentum_partial(m);
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu) {
                Poly expect = Poly::var(ctx, VarKind::K, mu) *
                              Poly::var(ctx, VarKind::A, nu).scaled(GaussRat(ctx->eta(nu)));
                if (mu == nu) expect += ak;
                CHECK(J[mu][nu] == expect);
            }
    }
    SECTION("left covariant h: d h_{la nu}/d p_al = eta_{la nu} a^al") {
        Realization left = catalog_realization(ctx, "left");
        auto h = h_of_momentum(left);
        for (int la = 0; la < 2; ++la)
            for (int nu = 0; nu < 2; ++nu)
                for (int al = 0; al < 2; ++al) {
                    Poly expect = la == nu
                                      ? Poly::var(ctx, VarKind::A, al)
                                            .scaled(GaussRat(ctx->eta(al) * ctx->eta(la)))
                                      : Poly::zero(ctx);
                    CHECK(h[la][nu].derivative(VarKind::K, al) == expect);
                }
    }
}

TEST_CASE("hat algebra product rules") {
    Context c(2, 3);
    const Context* ctx = &c;
    Realization nat = catalog_realization(ctx, "natural");
    HatAlgebra alg(nat);

    SECTION("realize respects the product") {
        HatOp u = HatOp::xhat(ctx, 0), v = HatOp::xhat(ctx, 1);
        CHECK(alg.realize(alg.mul(u, v)) == nat.xhat(0) * nat.xhat(1));
        HatOp d = HatOp::from_dpoly(Poly::var(ctx, VarKind::D, 0));
        CHECK(alg.realize(alg.mul(d, u)) ==
              WeylOp::del(ctx, 0) * nat.xhat(0));
    }
    SECTION("b1 in the hat algebra") {
        HatOp u = HatOp::xhat(ctx, 0), v = HatOp::xhat(ctx, 1);
        HatOp comm = alg.mul(u, v) - alg.mul(v, u);
        HatOp rhs = (HatOp::xhat(ctx, 1).scaled_poly(Poly::var(ctx, VarKind::A, 0)) -
                     HatOp::xhat(ctx, 0).scaled_poly(Poly::var(ctx, VarKind::A, 1)))
                        .times_i();
        CHECK(alg.T(comm - rhs).is_zero());
    }
}
