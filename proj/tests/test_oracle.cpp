#include "helpers.hpp"

using namespace th;
namespace O = piclat::oracle;

namespace {

O::FamilyParams famA(long n, long r, long s, long D = 0) {
    O::FamilyParams p;
    p.family = O::Family::A;
    p.n = n, p.r = r, p.s = s, p.Delta = D;
    return p;
}

O::FamilyParams fam(O::Family f, int l, O::Iso d, O::Iso s, long ord = 1) {
    O::FamilyParams p;
    p.family = f;
    p.l = l, p.derived = d, p.ss = s, p.ord = ord;
    return p;
}

using V = std::vector<long long>;

}  // namespace

TEST_CASE("family A closed forms") {
    CHECK(O::oracle(famA(4, 2, 2), O::Quantity::COKER_RG).invariants == V{2});
    CHECK(O::oracle(famA(2, 2, 2), O::Quantity::MULTIPLIER_SC_EVEN).multiplier == 2);
    CHECK(O::oracle(famA(2, 2, 2), O::Quantity::MULTIPLIER_EVEN).multiplier == 4);
    CHECK(O::oracle(famA(4, 1, 4, 1), O::Quantity::COKER_EV_TILDE).invariants.empty());
    CHECK(O::oracle(famA(6, 1, 6, 4), O::Quantity::COKER_EV_TILDE).invariants == V{2});
    CHECK(O::oracle(famA(5, 1, 1), O::Quantity::COKER_EV).invariants == V{5});
    CHECK_THROWS_AS(O::oracle(famA(6, 4, 4), O::Quantity::COKER_EV), Error);
    CHECK_THROWS_AS(O::oracle(famA(6, 3, 2), O::Quantity::COKER_EV), Error);
}

TEST_CASE("order ratio guard") {
    for (long a = -12; a <= 12; ++a)
        for (long m = 1; m <= 12; ++m) CHECK(O::order_ratio_guard(a, m));
}

TEST_CASE("families BC, D, E, FG") {
    CHECK(O::oracle(fam(O::Family::BC, 3, O::Iso::Sp, O::Iso::Sp), O::Quantity::COKER_EV).invariants == V{2});
    CHECK(O::oracle(fam(O::Family::BC, 5, O::Iso::SO, O::Iso::SO), O::Quantity::COKER_RG).invariants == V{2});
    CHECK(O::oracle(fam(O::Family::D, 4, O::Iso::Spin, O::Iso::Spin), O::Quantity::COKER_EV_TILDE).invariants ==
          V{2, 2});
    CHECK(O::oracle(fam(O::Family::D, 5, O::Iso::Spin, O::Iso::Spin), O::Quantity::COKER_EV_TILDE).invariants ==
          V{4});
    CHECK(O::oracle(fam(O::Family::D, 5, O::Iso::PSO, O::Iso::PSO), O::Quantity::MULTIPLIER_EVEN).multiplier == 8);
    CHECK(O::oracle(fam(O::Family::E, 6, O::Iso::SC, O::Iso::SC), O::Quantity::COKER_EV).invariants == V{3});
    CHECK(O::oracle(fam(O::Family::E, 7, O::Iso::AD, O::Iso::AD), O::Quantity::COKER_RG).invariants == V{2});
    for (int l : {2, 4})
        for (auto q : {O::Quantity::COKER_RG, O::Quantity::COKER_EV, O::Quantity::COKER_EV_TILDE})
            CHECK(O::oracle(fam(O::Family::FG, l, O::Iso::SC, O::Iso::SC), q).invariants.empty());
    CHECK_THROWS_AS(O::oracle(fam(O::Family::D, 5, O::Iso::Omega, O::Iso::Omega), O::Quantity::COKER_EV), Error);
}

TEST_CASE("torus closed forms") {
    O::FamilyParams p;
    p.family = O::Family::TORUS;
    p.dim = 1, p.g = 3, p.d = {0};
    CHECK(O::oracle(p, O::Quantity::TORUS_COKER_GAMMA_BAR).invariants == V{2});
    CHECK(O::oracle(p, O::Quantity::TORUS_COKER_OMEGA).invariants == V{2});
    p.dim = 2, p.g = 2, p.d = {1, 0};
    CHECK(O::oracle(p, O::Quantity::TORUS_COKER_GAMMA_BAR).invariants == V{2});
    p.dim = 1, p.g = 1, p.d = {0};
    CHECK(O::oracle(p, O::Quantity::TORUS_COKER_GAMMA_BAR).invariants.empty());
}

TEST_CASE("normalize") {
    CHECK(O::normalize({4, 6, 0, 2, 1}) == V{2, 2, 12, 0});
    CHECK(O::normalize({}).empty());
    CHECK(O::normalize({1, 1}).empty());
    CHECK(O::normalize({9, 3}) == V{3, 9});
}

TEST_CASE("brute force Weyl invariants") {
    auto a2 = O::bruteforce_invariant_forms("A2");
    CHECK(a2.weyl_order == 6);
    CHECK(a2.kernel_rank == 1);
    CHECK(a2.gram == std::vector<std::vector<long long>>{{2, -1}, {-1, 2}});
    CHECK(O::bruteforce_invariant_forms("B2").kernel_rank == 1);
    CHECK(O::bruteforce_invariant_forms("G2").weyl_order == 12);
    CHECK_THROWS_AS(O::bruteforce_invariant_forms("A4"), Error);
}
