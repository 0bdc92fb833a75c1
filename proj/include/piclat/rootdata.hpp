#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "piclat/exactalg.hpp"

namespace piclat {

enum class TypeTag { A, B, C, D, E6, E7, E8, F4, G2 };

struct SimpleFactorTable {
    TypeTag tag = TypeTag::A;
    int rank = 0;
    ZMat cartan;       // cartan(i,j) = <alpha_j, alpha_i^vee>
    QMat coweights;    // columns: fundamental coweights in simple-coroot coordinates
    ZMat basic_gram;   // minimal even invariant form on the simple coroots
    ZVec symmetrizer;  // basic_gram(i,i) = 2 * symmetrizer[i]
    FGAbGroup fund_group;  // P^vee / Q^vee with generators in coroot coordinates

    std::string name() const;
    QMat roots() const { return to_rat(cartan); }  // columns: simple roots as functionals
    QMat simple_reflection(int i) const;           // acts on coroot coordinates
};

SimpleFactorTable simple_factor_table(TypeTag tag, int rank);
SimpleFactorTable simple_factor_table(const std::string& tag);  // "A3", "E6", ...

// Ambient: simple-coroot coordinates per factor (in order), then the abelian block Q^a.
struct ReductiveDatum {
    std::vector<SimpleFactorTable> factors;
    int abelian_rank = 0;
    Lattice cochar;
    std::optional<QVec> delta_unit;  // lift used by integer delta shorthand
    std::string label;

    std::size_t ss_dim() const;
    std::size_t dim() const { return ss_dim() + static_cast<std::size_t>(abelian_rank); }
    std::size_t offset(std::size_t f) const;
    QMat coroot_span() const;      // ambient columns spanning the semisimple part
    QMat abelian_span() const;
    QMat ss_projection() const;    // p2 as an ambient endomorphism
    QMat ab_projection() const;    // p1
    Lattice coroot_lattice() const;
    Lattice coweight_lattice() const;
    Lattice root_lattice() const;  // Q(roots) placed in the semisimple block
};

struct DerivedParts {
    Lattice lambda_G, lambda_sc, lambda_D, lambda_ss, lambda_R, lambda_ab, lambda_ad;
    Lattice dual_G, dual_sc, dual_D, dual_ss, dual_R, dual_ab, dual_ad;
    FGAbGroup pi1, center_chars, dcenter_chars;
    QMat E, Einv;  // basis of Lambda(G^ab) in abelian coordinates and its inverse
    QMat R;        // basis of Lambda(R(G)) in abelian coordinates
};

DerivedParts derive_parts(const ReductiveDatum& d);
std::vector<std::string> validate_datum(const ReductiveDatum& d);

struct Pi1Element {
    QVec lift;
    QVec d_ss;        // semisimple coordinates of the lift
    QVec d_ab;        // abelian coordinates of the lift
    Int order;        // in pi1(G); 0 = infinite
    Int order_ss;     // order of delta^ss in pi1(G^ss)
    Int div_ab;       // divisibility of delta^ab in Lambda(G^ab); 0 when delta^ab = 0
};

Pi1Element pi1_class(const ReductiveDatum& d, const DerivedParts& p, const QVec& lift);

// A lift in Lambda(T_G) whose semisimple part is exactly v (v must lie in Lambda(T_{G^ss})).
QVec lift_with_ss_part(const ReductiveDatum& d, const QVec& v);

// ---------- group specs ----------

struct GroupSpec {
    enum class Kind { Atom, Product, Twist };
    Kind kind = Kind::Atom;
    std::string atom;      // canonical atom text, e.g. "SL:4/mu:2"
    int twist_order = 0;   // k in C[mu:k](...)
    std::string selector;  // optional twist selector
    std::vector<GroupSpec> children;

    std::string to_string() const;
    bool operator==(const GroupSpec& o) const;
};

GroupSpec parse_group_spec(const std::string& text);
ReductiveDatum build_datum(const GroupSpec& spec);
ReductiveDatum build_named(const std::string& text);

ReductiveDatum product_datum(const ReductiveDatum& a, const ReductiveDatum& b);
ReductiveDatum twist_datum(const ReductiveDatum& h, int k, const std::string& selector);
ReductiveDatum datum_from_generators(std::vector<SimpleFactorTable> factors, int abelian_rank,
                                     const std::vector<QVec>& extra);

// Custom datum text: "abelian_rank = a", "factors = [A:3, D:4]", "cochar = [[p/q, ...], ...]".
ReductiveDatum parse_datum_text(const std::string& text);

std::string type_name(TypeTag t);

}  // namespace piclat
