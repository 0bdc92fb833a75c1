#include "helpers.hpp"

using namespace th;

TEST_CASE("PGL_2 multipliers") {
    Group g = make_group("PGL:2");
    CHECK(multiplier(g.form(FormKind::PAIR_SC_EVEN)) == 2);
    CHECK(multiplier(g.form(FormKind::PAIR_EVEN)) == 4);
    // 2*basic at (w1, w1) with w1 = alpha^vee / 2
    WInvForm f{QMat(0, 0), QVec{Rat(2)}};
    CHECK(evaluate_form(g, f, QVec{Rat(1, 2)}, QVec{Rat(1, 2)}) == 1);
}

TEST_CASE("basic form on A1") {
    Group g = make_group("SL:2");
    WInvForm f{QMat(0, 0), QVec{Rat(1)}};
    CHECK(evaluate_form(g, f, QVec{Rat(1)}, QVec{Rat(1)}) == 2);
    CHECK(multiplier(g.form(FormKind::PAIR_EVEN)) == 1);
}

TEST_CASE("symplectic groups use the basic form") {
    for (int l = 2; l <= 5; ++l) {
        Group g = make_group("Sp:" + std::to_string(2 * l));
        CHECK(multiplier(g.form(FormKind::PAIR_SC_EVEN)) == 1);
        CHECK(coker_r_G(g).is_trivial());
    }
}

TEST_CASE("coker r_G") {
    CHECK(fac(coker_r_G(make_group("SO:11"))) == std::vector<long>{2});
    CHECK(fac(coker_r_G(make_group("E7ad"))) == std::vector<long>{2});
    CHECK(coker_r_G(make_group("F4")).is_trivial());
    CHECK(fac(coker_r_G(make_group("SL:4/mu:2"))) == std::vector<long>{2});
}

TEST_CASE("ev cokernels") {
    for (int n = 2; n <= 6; ++n) {
        Group g = make_group("SL:" + std::to_string(n));
        CHECK(fac(ev_hom(g, zero(g), EvVariant::EV_TILDE).cokernel) == std::vector<long>{n});
    }
    Group spin = make_group("Spin:8");
    CHECK(fac(ev_hom(spin, zero(spin), EvVariant::EV_TILDE).cokernel) == std::vector<long>{2, 2});
    Group spin10 = make_group("Spin:10");
    CHECK(fac(ev_hom(spin10, zero(spin10), EvVariant::EV_TILDE).cokernel) == std::vector<long>{4});
    Group gl = make_group("GL:6");
    CHECK(fac(ev_hom(gl, resolve_delta(gl, 4, ""), EvVariant::EV_TILDE).cokernel) == std::vector<long>{2});
    Group e6 = make_group("E6sc");
    CHECK(fac(ev_hom(e6, zero(e6), EvVariant::EV).cokernel) == std::vector<long>{3});
}

TEST_CASE("ev does not depend on the coroot part of the lift") {
    Group g = make_group("PSO:8");
    QVec a = qv({1, 1, Rat(1, 2), Rat(1, 2)});  // eps1
    QVec b = a;
    b[0] += 3;
    b[2] -= 1;
    auto ea = ev_hom(g, cls(g, a), EvVariant::EV_TILDE), eb = ev_hom(g, cls(g, b), EvVariant::EV_TILDE);
    CHECK(ea.cokernel == eb.cokernel);
    CHECK(ea.image == eb.image);
}

TEST_CASE("pullback along the diagonal torus of SL_2") {
    Group t = make_group("torus:1"), sl = make_group("SL:2");
    QMat phi = QMat::from_rows({{Rat(1)}});
    WInvForm basic{QMat(0, 0), QVec{Rat(1)}};
    WInvForm p = pullback_form(phi, basic, t, sl);
    REQUIRE(p.b_ab.rows() == 1);
    CHECK(p.b_ab(0, 0) == 2);
    CHECK(p.alpha.empty());
}

// test-side: the D_l Gram on simple coroots (simply laced, Bourbaki numbering)
static QMat dl_gram(int l) {
    QMat c(l, l);
    for (int i = 0; i < l; ++i) c(i, i) = 2;
    for (int i = 0; i + 1 < l - 1; ++i) c(i, i + 1) = c(i + 1, i) = -1;
    c(l - 3, l - 1) = c(l - 1, l - 3) = -1;
    return c;
}

static QVec half_spin(int l) {  // omega_l^vee in simple coroot coordinates
    QVec v(l);
    for (int i = 0; i < l - 2; ++i) v[i] = frac(i + 1, 2);
    v[l - 2] = frac(l - 2, 4);
    v[l - 1] = frac(l, 4);
    return v;
}

TEST_CASE("half-spin lattice norms decide the even multiplier") {
    // norm of the glue vector is l/4; the even multiplier is the least c with c*l/4 even
    for (int l : {4, 6, 8, 10, 12, 16}) {
        QMat gram = dl_gram(l);
        QVec w = half_spin(l);
        Rat norm = dot(w, gram * w);
        CHECK(norm == frac(l, 4));
        long c = 1;
        while (Rat(Rat(c) * norm).get_den() != 1 || Rat(Rat(c) * norm).get_num() % 2 != 0) ++c;
        Group g = make_group("Omega+:" + std::to_string(2 * l));
        CHECK(g.datum.cochar.contains(lift_with_ss_part(g.datum, w)));
        CHECK(multiplier(g.form(FormKind::PAIR_EVEN)) == c);
    }
    // l = 8 glues D8 into the E8 lattice, which is even
    CHECK(multiplier(make_group("Omega+:16").form(FormKind::PAIR_EVEN)) == 1);
}
