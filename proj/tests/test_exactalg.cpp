#include <numeric>
#include <random>

#include "helpers.hpp"

using namespace th;

TEST_CASE("snf of a small matrix") {
    ZMat m = ZMat::from_rows({{2, 4}, {6, 8}});
    auto r = snf(m);
    CHECK(r.factors == ZVec{2, 4});
    // U m V is diagonal
    ZMat d = r.U * m * r.V;
    CHECK(d(0, 1) == 0);
    CHECK(d(1, 0) == 0);
    CHECK(snf_factors(m) == r.factors);
}

namespace {

// determinantal divisors of a 3x3 matrix
std::array<long, 3> det_divisors(const std::array<std::array<long, 3>, 3>& a) {
    long g1 = 0, g2 = 0;
    for (auto& row : a)
        for (long x : row) g1 = std::gcd(g1, x);
    for (int r1 = 0; r1 < 3; ++r1)
        for (int r2 = r1 + 1; r2 < 3; ++r2)
            for (int c1 = 0; c1 < 3; ++c1)
                for (int c2 = c1 + 1; c2 < 3; ++c2)
                    g2 = std::gcd(g2, a[r1][c1] * a[r2][c2] - a[r1][c2] * a[r2][c1]);
    long det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    return {g1, g2, std::labs(det)};
}

}  // namespace

TEST_CASE("snf agrees with determinantal divisors") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> e(-9, 9);
    for (int t = 0; t < 300; ++t) {
        std::array<std::array<long, 3>, 3> a;
        ZMat m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = a[i][j] = e(rng);
        auto dd = det_divisors(a);
        ZVec f = snf(m).factors;
        for (auto& x : f) x = abs(x);
        CHECK(f[0] == dd[0]);
        CHECK(f[0] * f[1] == dd[1]);
        CHECK(f[0] * f[1] * f[2] == dd[2]);
        if (f[0] != 0 && f[1] != 0) CHECK(f[1] % f[0] == 0);
    }
}

TEST_CASE("dual of the A1 coroot lattice under the basic form") {
    Lattice q = Lattice::standard(1);
    Lattice d = lattice_dual(q, QMat::from_rows({{Rat(2)}}));
    CHECK(d.rank() == 1);
    CHECK(d.contains(QVec{Rat(1, 2)}));
    CHECK_FALSE(d.contains(QVec{Rat(1, 4)}));
}

TEST_CASE("quotients") {
    // coweights of A3 over coroots
    auto t = simple_factor_table("A3");
    Lattice p = Lattice::from_generators(t.coweights);
    FGAbGroup q = quotient_group(p, Lattice::standard(3));
    CHECK(fac(q) == std::vector<long>{4});

    Group pso = make_group("PSO:8"), spin = make_group("Spin:8");
    CHECK(fac(quotient_group(pso.datum.cochar, spin.datum.cochar)) == std::vector<long>{2, 2});

    Lattice small = Lattice::from_generators(QMat::from_rows({{Rat(2), Rat(0)}, {Rat(0), Rat(2)}}));
    auto ic = image_in_finite_quotient(Lattice::standard(2), small, {QVec{Rat(1), Rat(1)}});
    CHECK(fac(ic.subgroup) == std::vector<long>{2});
    CHECK(fac(ic.cokernel) == std::vector<long>{2});
}

TEST_CASE("congruence lattices") {
    Lattice a = congruence_lattice(1, {{QVec{Rat(1, 2)}, Rat(1)}, {QVec{Rat(3, 4)}, Rat(1)}});
    CHECK(a.contains(QVec{Rat(4)}));
    CHECK_FALSE(a.contains(QVec{Rat(2)}));
    CHECK(a.rank() == 1);

    Lattice b = congruence_lattice(2, {{QVec{Rat(1, 2), Rat(1, 2)}, Rat(1)}});
    Lattice want = Lattice::from_generators(QMat::from_rows({{Rat(2), Rat(1)}, {Rat(0), Rat(1)}}));
    CHECK(b == want);
}

TEST_CASE("invariant factor normalization") {
    auto g = FGAbGroup::from_cyclic({4, 6, 0, 2, 1});
    CHECK(g.factors == ZVec{2, 2, 12, 0});
    CHECK(g.free_rank() == 1);
    CHECK(g.order() == 0);
    CHECK(FGAbGroup::from_cyclic({1, 1}).is_trivial());
    CHECK(FGAbGroup::from_cyclic({2, 3}).factors == ZVec{6});
}

TEST_CASE("integer solving and kernels") {
    ZMat a = ZMat::from_rows({{2, 4, 6}});
    ZMat k = integer_kernel(a);
    CHECK(k.cols() == 2);
    CHECK((a * k).is_zero());
    CHECK(solve_integer(a, ZVec{2}).has_value());
    CHECK_FALSE(solve_integer(a, ZVec{3}).has_value());
}

TEST_CASE("rational parsing") {
    CHECK(parse_rat("-3/6") == Rat(-1, 2));
    CHECK(rat_str(parse_rat("4/2")) == "2");
    CHECK_THROWS_AS(parse_rat("x"), Error);
}
