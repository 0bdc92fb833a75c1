#pragma once

#include <array>
#include <string>
#include <vector>

#include "piclat/rootdata.hpp"

namespace piclat {

enum class FormKind { FULL, FULL_EVEN, D_EVEN, PAIR_EVEN, PAIR_SC_EVEN, SC_EVEN };
constexpr std::size_t kFormKinds = 6;
std::string form_kind_name(FormKind k);
bool is_semisimple_kind(FormKind k);

// b(x,y) = b_ab(x', y') + sum_f alpha_f basic_f(x_f, y_f), x' = coordinates of p1(x) in the E basis
struct WInvForm {
    QMat b_ab;   // s x s symmetric
    QVec alpha;  // one multiplier per simple factor
    bool operator==(const WInvForm& o) const { return b_ab == o.b_ab && alpha == o.alpha; }
};

struct FormLattice {
    FormKind kind = FormKind::FULL;
    Lattice params;  // inside the parameter space (upper b_ab entries then alpha; alpha only for pair kinds)
    std::vector<WInvForm> basis;
    std::size_t rank() const { return basis.size(); }
};

// A datum with its derived lattices and all six form lattices.
struct Group {
    ReductiveDatum datum;
    DerivedParts parts;
    std::array<FormLattice, kFormKinds> forms;

    std::size_t s() const { return static_cast<std::size_t>(datum.abelian_rank); }
    std::size_t k() const { return datum.factors.size(); }
    const FormLattice& form(FormKind kind) const { return forms[static_cast<std::size_t>(kind)]; }
};

Group make_group(ReductiveDatum d);
Group make_group(const std::string& spec);

FormLattice form_lattice(const ReductiveDatum& d, const DerivedParts& p, FormKind kind);

std::size_t param_dim(std::size_t s, std::size_t k, bool semisimple_only);
QVec form_params(const WInvForm& f, bool semisimple_only);
WInvForm form_from_params(const QVec& p, std::size_t s, std::size_t k, bool semisimple_only);
bool form_in(const FormLattice& fl, const WInvForm& f);
// coefficients of the linear map params |-> b(x, y)
QVec form_functional(const Group& g, const QVec& x, const QVec& y, bool semisimple_only);

Rat evaluate_form(const Group& g, const WInvForm& f, const QVec& x, const QVec& y);
QMat full_gram(const Group& g, const WInvForm& f);  // ambient Gram matrix
QMat ss_gram(const Group& g, const WInvForm& f);    // semisimple blocks only

enum class EvVariant { EV, EV_TILDE };

struct EvResult {
    std::vector<QVec> images;  // functionals b(d^ss, -) in the semisimple block
    FGAbGroup image;
    FGAbGroup cokernel;
};

EvResult ev_hom(const Group& g, const Pi1Element& delta, EvVariant variant);
// functional b(d^ss, -) checked to be integral on Lambda(T_D)
QVec ev_functional(const Group& g, const WInvForm& f, const QVec& d_ss_ambient);

FGAbGroup coker_r_G(const Group& g);

// Multiplier of the basic form generating a rank-one pair lattice (single simple factor).
Rat multiplier(const FormLattice& fl);

// phi: target ambient x source ambient
WInvForm pullback_form(const QMat& phi, const WInvForm& f, const Group& source, const Group& target);

}  // namespace piclat
