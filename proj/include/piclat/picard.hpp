#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "piclat/invforms.hpp"

namespace piclat {

struct MarkedGenus {
    int g = 1;
    int n = 0;
    ZMat hhat_basis() const;  // columns in Z^{1+n} (g >= 2) or Z^n (g = 1)
    ZMat h_basis() const;     // columns inside the same ambient
    std::size_t hhat_rank() const;
    std::size_t h_rank() const;
};

MarkedGenus marked_genus(int g, int n);

struct NSClass {
    QVec chi;  // any lift of the class in Lambda*(T_G)/Lambda*(T_ad)
    WInvForm form;
};

struct ReportPiece {
    std::string label;
    FGAbGroup group;
    std::string tag;
};

struct PicardReport {
    std::string quantity;
    std::size_t free_rank = 0;
    FGAbGroup group;  // the main result
    std::vector<ReportPiece> pieces;
    std::vector<std::string> tags;
    std::vector<std::string> notes;
    std::vector<std::pair<std::string, bool>> checks;
    Int total_order = 0;    // product of piece orders when the result is an unresolved extension
    bool resolved = true;   // false: only the graded pieces are known
};

// ---- Neron-Severi lattices (coordinates: chi in the ambient, then D_EVEN parameters) ----
struct NSLattice {
    Lattice lattice;      // all lifts (chi, p) satisfying the compatibility
    Lattice chi_shift;    // Lambda*(T_ad) x 0, quotiented out
    bool rigidified = false;
    std::size_t rank() const { return lattice.rank() - chi_shift.rank(); }
};

NSLattice ns_lattice(const Group& g, const Pi1Element& delta, bool rigidified);
bool ns_membership(const Group& g, const Pi1Element& delta, const NSClass& cls, bool rigidified);
QMat ev_matrix(const Group& g, const QVec& d, FormKind kind);  // columns: b_j(d^ss, -) for unit params
QVec distinguished_lift(const Group& g, const Pi1Element& delta, const NSClass& cls);

PicardReport rpic_report(const Group& g, const MarkedGenus& mg, const Pi1Element& delta);

struct ImOmegaGamma {
    FGAbGroup factors;  // NS / image
    NSLattice ns;
    Lattice image;
};
ImOmegaGamma im_omega_gamma(const Group& g, const MarkedGenus& mg, const Pi1Element& delta, bool rigidified);
bool in_im_omega_gamma(const Group& g, const MarkedGenus& mg, const Pi1Element& delta, const NSClass& cls,
                       bool rigidified);

// component-independent data reused across many components of one group
struct WeightData {
    const Group* g = nullptr;
    int genus = 1;
    std::vector<QVec> ab_lifts;
    // filled only when NS(rig) does not depend on the component
    std::vector<QMat> rig_maps;    // x |-> (b_t(x, x~_j))_j
    std::vector<QVec> rig_consts;  // (1-g) b_t(x~_j, x~_j)
    QMat dual_G_inv;
    std::vector<QMat> full_even_coords;  // b_t(x, -) in Lambda*(T_G) coordinates
    std::vector<ZVec> dual_ad_coords;
    std::vector<QVec> u_coords;
};
WeightData weight_data(const Group& g, int genus);

FGAbGroup coker_gamma_bar(const Group& g, int genus, const Pi1Element& delta);
FGAbGroup coker_gamma_bar(const WeightData& w, const Pi1Element& delta);
FGAbGroup coker_omega_group(const Group& g, const MarkedGenus& mg, const Pi1Element& delta);
FGAbGroup coker_omega_group(const WeightData& w, int n, const Pi1Element& delta);
PicardReport coker_omega(const Group& g, const MarkedGenus& mg, const Pi1Element& delta);

// ---- curve Neron-Severi group, End(J_C) = Z ----
struct CurveTriple {
    QVec l_R;    // values on the basis of Lambda(R(G))
    QMat b_R;    // Gram on the same basis
    QVec alpha;  // multipliers of the basic forms
};
struct CurveNS {
    std::size_t rank = 0;
    Lattice params;  // l_R, upper b_R entries, alpha
};
CurveNS curve_ns(const Group& g, const Pi1Element& delta, int genus);
bool curve_membership(const Group& g, const Pi1Element& delta, const CurveTriple& t);
CurveTriple res_ns(const Group& g, const NSClass& cls);

PicardReport coker_res_bar(const Group& g, const MarkedGenus& mg, const Pi1Element& delta);
PicardReport genus0_report(const Group& g, int n, const Pi1Element& delta);

struct ClReport {
    bool applicable = false;
    std::string which;  // "torus", "positive-characteristic", "characteristic-zero" or ""
    bool caveat = false;
    std::vector<std::string> reasons;
    std::optional<PicardReport> relative;
};
ClReport cl_report(const Group& g, const MarkedGenus& mg, const Pi1Element& delta, int characteristic);

// phi: target ambient x source ambient, eps the source component, delta the target one
NSClass ns_pullback(const QMat& phi, const Group& source, const Group& target, const Pi1Element& eps,
                    const Pi1Element& delta, const NSClass& cls);
bool ns_equal(const Group& g, const NSClass& a, const NSClass& b);  // same class

}  // namespace piclat
