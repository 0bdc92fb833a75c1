#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

// Closed-form values for simple groups and tori, written independently of the generic engine.
namespace piclat::oracle {

enum class Family { A, BC, D, E, FG, TORUS };

// isogeny tags for the derived group and for G^ss
enum class Iso { Spin, SO, Sp, PSp, PSO, Omega, SC, AD };

struct FamilyParams {
    Family family = Family::A;
    // A: D(G) = SL_n/mu_r, G^ss = SL_n/mu_s, delta^ss = Delta in Z/s
    long n = 0, r = 1, s = 1, Delta = 0;
    // BC, D: rank l; E: l in {6,7,8}; FG: l = 4 (F4) or 2 (G2)
    int l = 0;
    Iso derived = Iso::SC, ss = Iso::SC;
    long ord = 1;  // order of delta^ss in pi1(G^ss)
    // TORUS
    int dim = 0, g = 1;
    std::vector<long> d;
};

enum class Quantity {
    MULTIPLIER_SC_EVEN,
    MULTIPLIER_EVEN,
    COKER_RG,
    COKER_EV,
    COKER_EV_TILDE,
    TORUS_COKER_OMEGA,
    TORUS_COKER_GAMMA_BAR
};
std::string quantity_name(Quantity q);
std::string iso_name(Iso i);

struct Value {
    bool is_group = true;
    mpq_class multiplier;               // relative to the basic form
    std::vector<long long> invariants;  // d1 | d2 | ..., units dropped, zeros (free) last
};

// invariant factors of a direct sum of cyclic groups (0 = Z), via prime powers
std::vector<long long> normalize(const std::vector<long long>& orders);

void check_params(const FamilyParams& p);  // throws InvalidParams
Value oracle(const FamilyParams& p, Quantity q);

// ratio check gcd(2a, m) / gcd(a, m) in {1, 2}
bool order_ratio_guard(long a, long m);

struct BruteForceForms {
    int weyl_order = 0;
    int kernel_rank = 0;
    std::vector<std::vector<long long>> gram;  // generator on the simple coroots
};
// "A1".."A3", "B2", "B3", "C2", "C3", "G2"
BruteForceForms bruteforce_invariant_forms(const std::string& type_tag);

}  // namespace piclat::oracle
