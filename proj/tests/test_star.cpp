#include <catch2/catch_amalgamated.hpp>

#include "kappa/star.hpp"

using namespace kappa;

TEST_CASE("unit law") {
    Context c(2, 3);
    const Context* ctx = &c;
    for (auto& name : catalog_names()) {
        Star st(catalog_realization(ctx, name));
        Poly f = Poly::var(ctx, VarKind::X, 0) * Poly::var(ctx, VarKind::X, 1) +
                 Poly::var(ctx, VarKind::X, 0);
        INFO(name);
        CHECK(st.star(Poly::one(ctx), f) == f);
        CHECK(st.star(f, Poly::one(ctx)) == f);
    }
}

TEST_CASE("x_mu * x_nu matches the T-images") {
    Context c(2, 2);
    const Context* ctx = &c;
    SECTION("left covariant") {
        Star st(catalog_realization(ctx, "left"));
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu) {
                Poly xm = Poly::var(ctx, VarKind::X, mu), xn = Poly::var(ctx, VarKind::X, nu);
                CHECK(st.star(xm, xn) ==
                      xm * (xn - Poly::var(ctx, VarKind::A, nu).times_i()));
            }
    }
    SECTION("right covariant") {
        Star st(catalog_realization(ctx, "right"));
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu) {
                Poly xm = Poly::var(ctx, VarKind::X, mu), xn = Poly::var(ctx, VarKind::X, nu);
                CHECK(st.star(xm, xn) ==
                      (xm + Poly::var(ctx, VarKind::A, mu).times_i()) * xn);
            }
    }
}

TEST_CASE("kernel extraction agrees with the hat-algebra path") {
    Context c(2, 3);
    const Context* ctx = &c;
    auto monos = x_monomials_up_to(ctx, 3);
    for (auto& name : catalog_names()) {
        Star st(catalog_realization(ctx, name));
        INFO(name);
        for (auto& f : monos)
            for (auto& g : monos)
                CHECK(st.star(f, g) == st.star_kernel(f, g));
    }
}

TEST_CASE("associativity") {
    Context c(2, 2);
    const Context* ctx = &c;
    for (auto& name : catalog_names()) {
        Star st(catalog_realization(ctx, name));
        INFO(name);
        CHECK(st.check_associativity(2));
        CHECK(st.check_associativity_kernel());
    }
}

TEST_CASE("associativity kernel holds at order 3") {
    Context c(2, 3);
    for (auto& name : catalog_names()) {
        Star st(catalog_realization(&c, name));
        INFO(name);
        CHECK(st.check_associativity_kernel());
    }
}

TEST_CASE("xhat ladder identities and Leibniz rule") {
    Context c(2, 2);
    const Context* ctx = &c;
    for (auto& name : catalog_names()) {
        Realization r = catalog_realization(ctx, name);
        HatAlgebra alg(r);
        DerivedOps ops = derive_ops(r);
        auto words = hat_words_up_to(ctx, 2);
        INFO(name);
        for (auto& w : words)
            for (int mu = 0; mu < 2; ++mu) {
                CHECK(ladder_residual_b43(alg, ops, mu, w).is_zero());
                CHECK(ladder_residual_b46(alg, ops, mu, w).is_zero());
            }
        // Leibniz rule on pairs of short words, including the empty word
        std::vector<HatOp> elems{HatOp::one(ctx)};
        for (auto& w : hat_words_up_to(ctx, 2)) elems.push_back(HatOp::word(ctx, w));
        for (auto& f : elems)
            for (auto& g : elems)
                for (int mu = 0; mu < 2; ++mu)
                    CHECK(xhat_leibniz_residual(alg, ops, mu, f, g).is_zero());
    }
}

TEST_CASE("longer Leibniz words for the natural realization") {
    Context c(2, 3);
    const Context* ctx = &c;
    Realization nat = catalog_realization(ctx, "natural");
    HatAlgebra alg(nat);
    DerivedOps ops = derive_ops(nat);
    for (auto& w : hat_words_up_to(ctx, 3))
        CHECK(ladder_residual_b46(alg, ops, 0, w).is_zero());
}

TEST_CASE("translation invariance") {
    Context c(2, 2);
    const Context* ctx = &c;
    SECTION("constants are trivial") {
        Star st(catalog_realization(ctx, "natural"));
        Poly two = Poly::constant(ctx, GaussRat(2));
        CHECK(st.star(Star::translate(two), Star::translate(two)) ==
              Star::translate(st.star(two, two)));
    }
    SECTION("monomials of degree <= 2 for the catalog") {
        for (auto& name : catalog_names()) {
            Star st(catalog_realization(ctx, name));
            INFO(name);
            CHECK(st.check_translation_invariance(2));
        }
    }
    SECTION("a -> 0 is pointwise translation invariance") {
        Context c0(2, 0);
        Star st(catalog_realization(&c0, "natural"));
        CHECK(st.check_translation_invariance(2));
    }
}

TEST_CASE("duality") {
    Context c(2, 2);
    const Context* ctx = &c;

    SECTION("phi_from_kernel reproduces the realization") {
        for (auto& name : catalog_names()) {
            Realization r = catalog_realization(ctx, name);
            auto phi = phi_from_kernel(D_map(r));
            INFO(name);
            for (int al = 0; al < 2; ++al)
                for (int mu = 0; mu < 2; ++mu) CHECK(phi[al][mu] == r.phi(al, mu));
        }
    }
    SECTION("left and right covariant realizations are dual") {
        DualPair p = dual_realization(catalog_realization(ctx, "left"));
        CHECK(p.dual == catalog_realization(ctx, "right"));
        DualPair pr = dual_realization(catalog_realization(ctx, "right"));
        CHECK(pr.dual == catalog_realization(ctx, "left"));
    }
    SECTION("the symmetric realization is self-dual under a -> -a") {
        Realization sym = catalog_realization(ctx, "symmetric");
        DualPair p = dual_realization(sym);
        std::map<VarId, Poly> flip_a;
        for (int mu = 0; mu < 2; ++mu)
            flip_a[var_id(VarKind::A, mu)] = -Poly::var(ctx, VarKind::A, mu);
        for (int al = 0; al < 2; ++al)
            for (int mu = 0; mu < 2; ++mu)
                CHECK(p.dual.phi(al, mu) == sym.phi(al, mu).substituted(flip_a));
    }
    SECTION("the double dual is the realization itself") {
        for (auto& name : catalog_names()) {
            Realization r = catalog_realization(ctx, name);
            DualPair p = dual_realization(r);
            DualPair pp = dual_realization(p.dual);
            INFO(name);
            CHECK(pp.dual == r);
        }
    }
    SECTION("yhat commutes with xhat and satisfies the flipped relations") {
        for (auto& name : catalog_names()) {
            Realization r = catalog_realization(ctx, name);
            DualPair p = dual_realization(r);
            INFO(name);
            for (int mu = 0; mu < 2; ++mu)
                for (int nu = 0; nu < 2; ++nu) {
                    CHECK(p.yhat(mu).commutator(r.xhat(nu)).is_zero());
                    WeylOp rhs = (p.yhat(nu).scaled_poly(Poly::var(ctx, VarKind::A, mu)) -
                                  p.yhat(mu).scaled_poly(Poly::var(ctx, VarKind::A, nu)))
                                     .times_i();
                    CHECK(p.yhat(mu).commutator(p.yhat(nu)) == -rhs);
                }
        }
    }
    SECTION("yhat_mu = (xhat_mu - i a_mu (xhat del^L)) Z") {
        for (auto& name : catalog_names()) {
            Realization r = catalog_realization(ctx, name);
            DualPair p = dual_realization(r);
            DerivedOps ops = derive_ops(r);
            WeylOp xdL(ctx);
            for (int al = 0; al < 2; ++al)
                xdL += (r.xhat(al) * WeylOp::from_dpoly(ops.partialL[al]))
                           .scaled(GaussRat(ctx->eta(al)));
            INFO(name);
            for (int mu = 0; mu < 2; ++mu) {
                WeylOp expect =
                    (r.xhat(mu) - xdL.scaled_poly(Poly::var(ctx, VarKind::A, mu)).times_i()) *
                    WeylOp::from_dpoly(ops.Z);
                CHECK(p.yhat(mu) == expect);
            }
        }
    }
    SECTION("natural dual generators") {
        Realization nat = catalog_realization(ctx, "natural");
        DualPair p = dual_realization(nat);
        DerivedOps ops = derive_ops(nat);
        // yhat_mu = X_mu - i a_mu (X D) + i (aX) del^L_mu Z
        WeylOp XD(ctx), aX(ctx);
        for (int al = 0; al < 2; ++al) {
            XD += (ops.bigX[al] * WeylOp::from_dpoly(ops.dirac[al]))
                      .scaled(GaussRat(ctx->eta(al)));
            aX += ops.bigX[al].scaled_poly(Poly::var(ctx, VarKind::A, al))
                      .scaled(GaussRat(ctx->eta(al)));
        }
        for (int mu = 0; mu < 2; ++mu) {
            WeylOp expect = ops.bigX[mu] -
                            XD.scaled_poly(Poly::var(ctx, VarKind::A, mu)).times_i() +
                            (aX * WeylOp::from_dpoly(ops.partialL[mu] * ops.Z)).times_i();
            CHECK(p.yhat(mu) == expect);
        }
    }
    SECTION("f *_phi g = g *_phitilde f and the module relations") {
        for (auto& name : catalog_names()) {
            Realization r = catalog_realization(ctx, name);
            DualPair p = dual_realization(r);
            Star sp(r), sd(p.dual);
            auto monos = x_monomials_up_to(ctx, 2);
            INFO(name);
            for (auto& f : monos)
                for (auto& g : monos) CHECK(sp.star(f, g) == sd.star(g, f));
            for (auto& f : monos)
                for (int mu = 0; mu < 2; ++mu) {
                    Poly xm = Poly::var(ctx, VarKind::X, mu);
                    Poly lhs = r.xhat(mu).act(f);
                    CHECK(lhs == sp.star(xm, f));
                    CHECK(lhs == sd.star(f, xm));
                    Poly lhs2 = p.yhat(mu).act(f);
                    CHECK(lhs2 == sd.star(xm, f));
                    CHECK(lhs2 == sp.star(f, xm));
                }
        }
    }
    SECTION("flipped coproduct equals (S x S) o coproduct o S^{-1} on momenta") {
        for (auto& name : catalog_names()) {
            Realization r = catalog_realization(ctx, name);
            MomentumMap D = D_map(r), S = antipode_S(r);
            // S(k) = -k + O(a): write S = neg o T with T = -S = id + O(a):
            // S^{-1} = T^{-1} o neg
            MomentumMap T = -S;
            MomentumMap Tinv = momentum_invert(T);
            MomentumMap SinvMap = compose1(Tinv, -MomentumMap::identity(ctx));
            REQUIRE(compose1(S, SinvMap) == MomentumMap::identity(ctx));
            REQUIRE(compose1(SinvMap, S) == MomentumMap::identity(ctx));
            // H_mu(k,q) = S^{-1}_mu(D(S(k), S(q))) should equal D_mu(q, k)
            std::map<VarId, Poly> k_to_q;
            for (int mu = 0; mu < 2; ++mu)
                k_to_q[var_id(VarKind::K, mu)] = Poly::var(ctx, VarKind::Q, mu);
            std::map<VarId, Poly> subSS, flip;
            for (int mu = 0; mu < 2; ++mu) {
                subSS[var_id(VarKind::K, mu)] = S[mu];
                subSS[var_id(VarKind::Q, mu)] = S[mu].substituted(k_to_q);
                flip[var_id(VarKind::K, mu)] = Poly::var(ctx, VarKind::Q, mu);
                flip[var_id(VarKind::Q, mu)] = Poly::var(ctx, VarKind::K, mu);
            }
            std::vector<Poly> DSS(2, Poly::zero(ctx));
            for (int mu = 0; mu < 2; ++mu) DSS[mu] = D[mu].substituted(subSS);
            auto H = SinvMap.applied(DSS);
            INFO(name);
            for (int mu = 0; mu < 2; ++mu) CHECK(H[mu] == D[mu].substituted(flip));
        }
    }
}
