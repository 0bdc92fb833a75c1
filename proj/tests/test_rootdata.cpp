#include "helpers.hpp"

using namespace th;

TEST_CASE("simple factor tables") {
    auto a1 = simple_factor_table("A1");
    CHECK(a1.cartan == ZMat::from_rows({{2}}));
    CHECK(a1.basic_gram == ZMat::from_rows({{2}}));
    CHECK(fac(a1.fund_group) == std::vector<long>{2});
    CHECK(fac(simple_factor_table("D4").fund_group) == std::vector<long>{2, 2});
    CHECK(fac(simple_factor_table("D5").fund_group) == std::vector<long>{4});
    CHECK(simple_factor_table("G2").fund_group.is_trivial());
    CHECK(simple_factor_table("E8").fund_group.is_trivial());
    CHECK(fac(simple_factor_table("E6").fund_group) == std::vector<long>{3});
    // basic(a_i^vee, a_j^vee) = d_i <alpha_i, alpha_j^vee> = d_i cartan(j, i)
    for (const char* t : {"B3", "C3", "F4", "G2", "E7"}) {
        auto tab = simple_factor_table(t);
        for (int i = 0; i < tab.rank; ++i)
            for (int j = 0; j < tab.rank; ++j) CHECK(tab.basic_gram(i, j) == tab.symmetrizer[i] * tab.cartan(j, i));
    }
}

TEST_CASE("fundamental groups and centres of named groups") {
    Group g = make_group("SL:4/mu:2");
    CHECK(fac(g.parts.pi1) == std::vector<long>{2});
    Group spin7 = make_group("Spin:7");
    CHECK(g.parts.pi1.factors.size() == 1);
    CHECK(spin7.parts.pi1.is_trivial());
    CHECK(fac(spin7.parts.center_chars) == std::vector<long>{2});
    Group e7 = make_group("E7ad");
    CHECK(e7.parts.center_chars.is_trivial());
    CHECK(fac(e7.parts.pi1) == std::vector<long>{2});
    CHECK(fac(make_group("SL:4/mu:4").parts.pi1) == std::vector<long>{4});
    CHECK(fac(make_group("C[mu:2](Omega-:8)").parts.pi1) == std::vector<long>{2, 0});
}

TEST_CASE("GL_n splits into SL_n and a rank one abelian part") {
    for (int n = 2; n <= 5; ++n) {
        Group g = make_group("GL:" + std::to_string(n));
        CHECK(g.s() == 1);
        CHECK(g.k() == 1);
        CHECK(g.parts.lambda_D == g.datum.coroot_lattice());
        CHECK(fac(g.parts.pi1) == std::vector<long>{0});
        // pi1(G^ss) = pi1(PGL_n)
        CHECK(fac(quotient_group(g.parts.lambda_ss, g.datum.coroot_lattice())) == std::vector<long>{n});
    }
}

TEST_CASE("GL lift of degree d") {
    Group g = make_group("GL:3");
    for (long d = -4; d <= 4; ++d) {
        Pi1Element p = resolve_delta(g, d, "");
        CHECK(p.d_ab.size() == 1);
        CHECK(abs(p.d_ab[0]) == std::labs(d));
        // delta^ss = d mod 3 in pi1(PGL_3)
        CHECK(p.order_ss == (d % 3 == 0 ? 1 : 3));
        CHECK(p.order == (d == 0 ? 1 : 0));
    }
}

TEST_CASE("SO_10 standard cocharacter has order two") {
    Group g = make_group("SO:10");
    // eps_1 in simple coroot coordinates of D5
    QVec e1 = qv({1, 1, 1, Rat(1, 2), Rat(1, 2)});
    REQUIRE(g.datum.cochar.contains(e1));
    CHECK(cls(g, e1).order == 2);
    CHECK(cls(g, e1).order_ss == 2);
}

TEST_CASE("twists") {
    Group a = make_group("C[mu:2](C[mu:2:eps1](Spin:8))");
    CHECK(fac(quotient_group(a.parts.lambda_ss, a.datum.coroot_lattice())) == std::vector<long>{2, 2});
    Group b = make_group("C[mu:4](Spin:6)");
    CHECK(fac(quotient_group(b.parts.lambda_ss, b.datum.coroot_lattice())) == std::vector<long>{4});
    CHECK(b.parts.lambda_D == b.datum.coroot_lattice());
    CHECK(validate_datum(make_group("C[mu:2:omega-](Spin:8)").datum).empty());
}

TEST_CASE("lift with prescribed semisimple part") {
    Group g = make_group("C[mu:2](SL:4)");
    QVec v = qv({Rat(1, 2), 1, Rat(3, 2)});
    QVec lift = lift_with_ss_part(g.datum, v);
    REQUIRE(lift.size() == 4);
    CHECK(g.datum.cochar.contains(lift));
    for (int i = 0; i < 3; ++i) CHECK(lift[i] == v[i]);
}

TEST_CASE("spec errors") {
    auto kind = [](const std::string& s) {
        try {
            make_group(s);
        } catch (const Error& e) {
            return e.kind();
        }
        return std::string("none");
    };
    CHECK(kind("SL:4/mu:3") == "InvalidIsogeny");
    CHECK(kind("XX:3") == "ParseError");
    CHECK(kind("Omega+:10") == "InvalidIsogeny");
    CHECK(kind("C[mu:2](SL:2 x SL:2)") == "InvalidIsogeny");
    CHECK(kind("GL:2") == "none");
}

TEST_CASE("custom datum text") {
    Group g = make_group(parse_datum_text("abelian_rank = 0\nfactors = [A:1]\ncochar = [[1/2]]\n"));
    CHECK(fac(g.parts.pi1) == std::vector<long>{2});
    CHECK_THROWS_AS(make_group(parse_datum_text("abelian_rank = 0\nfactors = [A:1]\ncochar = [[1/3]]\n")), Error);
}
