#include "helpers.hpp"

using namespace th;

TEST_CASE("relative Picard ranks") {
    Group gl = make_group("GL:2");
    CHECK(rpic_report(gl, {2, 0}, zero(gl)).free_rank == 3);
    Group t = make_group("torus:1");
    CHECK(rpic_report(t, {2, 0}, zero(t)).free_rank == 2);
    Group sl = make_group("SL:2");
    CHECK(rpic_report(sl, {1, 0}, zero(sl)).free_rank == 1);
}

TEST_CASE("marked genus lattices") {
    CHECK(marked_genus(2, 0).hhat_rank() == 1);
    CHECK(marked_genus(3, 2).hhat_rank() == 3);
    CHECK(marked_genus(1, 2).hhat_rank() == 2);
    CHECK_THROWS_AS(marked_genus(-1, 0), Error);
    CHECK_THROWS_AS(marked_genus(0, 2).hhat_rank(), Error);
}

TEST_CASE("image of omega plus gamma") {
    for (const char* s : {"GL:2", "torus:1", "torus:1 x Sp:4"}) {
        Group g = make_group(s);
        auto im = im_omega_gamma(g, {3, 0}, zero(g), false);
        CHECK(fac(im.factors) == std::vector<long>{4});
        CHECK(im_omega_gamma(g, {3, 2}, zero(g), false).factors.is_trivial());
    }
    Group t = make_group("torus:1");
    auto rig = im_omega_gamma(t, {3, 0}, zero(t), true);
    CHECK(fac(rig.factors) == std::vector<long>{2});
    CHECK(rig.ns.rank() == 1);
}

TEST_CASE("weight cokernels") {
    Group sl = make_group("SL:2");
    for (int g = 1; g <= 3; ++g) CHECK(fac(coker_omega(sl, {g, 1}, zero(sl)).group) == std::vector<long>{2});
    Group t = make_group("torus:2");
    CHECK(coker_omega(t, {2, 1}, cls(t, qv({3, 1}))).group.is_trivial());
    Group spin = make_group("Spin:8");
    CHECK(fac(coker_omega(spin, {1, 1}, zero(spin)).group) == std::vector<long>{2, 2});
}

TEST_CASE("torus gamma-bar cokernels") {
    Group t1 = make_group("torus:1");
    CHECK(fac(coker_gamma_bar(t1, 3, zero(t1))) == std::vector<long>{2});
    // d = 2 at g = 3: Z/(4/gcd(4, 0)) = 0
    CHECK(coker_gamma_bar(t1, 3, cls(t1, qv({2}))).is_trivial());
    Group t2 = make_group("torus:2");
    CHECK(fac(coker_gamma_bar(t2, 2, cls(t2, qv({1, 0})))) == std::vector<long>{2});
    // g = 1, d = 0: trivial by convention
    CHECK(coker_gamma_bar(t1, 1, zero(t1)).is_trivial());
    CHECK(fac(coker_gamma_bar(t1, 1, cls(t1, qv({3})))) == std::vector<long>{0});
}

TEST_CASE("restriction to a fixed curve") {
    Group gl3 = make_group("GL:3");
    CHECK(coker_res_bar(gl3, {2, 1}, zero(gl3)).group.is_trivial());
    Group so = make_group("SO:11");
    CHECK(fac(coker_res_bar(so, {2, 1}, zero(so)).group) == std::vector<long>{2});
    Group gl2 = make_group("GL:2");
    auto r = coker_res_bar(gl2, {3, 0}, zero(gl2));
    CHECK(r.resolved);
    CHECK(fac(r.group) == std::vector<long>{4});
    Group t = make_group("torus:1");
    CHECK(curve_ns(t, zero(t), 2).rank == 2);
}

TEST_CASE("genus zero") {
    Group sl = make_group("SL:2");
    auto r = genus0_report(sl, 1, zero(sl));
    CHECK(r.free_rank == 1);
    CHECK(fac(r.group) == std::vector<long>{2});
    CHECK_THROWS_AS(genus0_report(sl, 0, zero(sl)), Error);
}

TEST_CASE("class group comparison") {
    Group t = make_group("torus:1");
    auto a = cl_report(t, {2, 1}, zero(t), 0);
    CHECK(a.applicable);
    CHECK(a.which == "torus");
    Group sl2 = make_group("SL:2");
    CHECK(cl_report(sl2, {2, 1}, zero(sl2), 0).caveat);
    CHECK_FALSE(cl_report(sl2, {2, 0}, zero(sl2), 0).applicable);  // needs g + n >= 3
    Group sl3 = make_group("SL:3");
    CHECK_FALSE(cl_report(sl3, {3, 0}, zero(sl3), 5).applicable);
    CHECK(cl_report(sl3, {4, 0}, zero(sl3), 5).applicable);
}

TEST_CASE("rigidified membership for PGL_2") {
    Group g = make_group("PGL:2");
    Pi1Element d = cls(g, qv({Rat(1, 2)}));
    REQUIRE(d.order == 2);
    // 2*basic is not even on Lambda(T_D) = <w1>
    NSClass c{QVec(1), WInvForm{QMat(0, 0), QVec{Rat(2)}}};
    CHECK_THROWS_AS(ns_membership(g, d, c, true), Error);
    // 4*basic: functional 4(w1, -) takes 4 on the coroot, i.e. twice the root, so it vanishes
    NSClass c4{QVec(1), WInvForm{QMat(0, 0), QVec{Rat(4)}}};
    CHECK(ns_membership(g, d, c4, true));
    CHECK(ns_membership(g, zero(g), c4, true));
    // SL_2 with the basic form at delta = 0
    Group sl = make_group("SL:2");
    CHECK(ns_membership(sl, zero(sl), NSClass{QVec(1), WInvForm{QMat(0, 0), QVec{Rat(1)}}}, true));
}

TEST_CASE("NS ranks drop by the abelian rank after rigidification") {
    for (const char* s : {"GL:3", "torus:2 x SO:5", "C[mu:2](Sp:4)"}) {
        Group g = make_group(s);
        CHECK(ns_lattice(g, zero(g), false).rank() - ns_lattice(g, zero(g), true).rank() == g.s());
    }
}
