#include "piclat/picard.hpp"

#include <algorithm>

namespace piclat {

namespace {

void need_genus(int g) {
    if (g < 1) throw Error("GenusOutOfRange", "this quantity needs g >= 1");
}

FGAbGroup free_group(std::size_t r) { return FGAbGroup::from_cyclic(ZVec(r, Int(0))); }

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    const std::size_t m = a.ambient_dim() + b.ambient_dim();
    QMat g(m, a.rank() + b.rank());
    for (std::size_t j = 0; j < a.rank(); ++j)
        for (std::size_t i = 0; i < a.ambient_dim(); ++i) g(i, j) = a.basis()(i, j);
    for (std::size_t j = 0; j < b.rank(); ++j)
        for (std::size_t i = 0; i < b.ambient_dim(); ++i) g(a.ambient_dim() + i, a.rank() + j) = b.basis()(i, j);
    return Lattice::from_generators(g);
}

QVec concat(const QVec& a, const QVec& b) {
    QVec v = a;
    v.insert(v.end(), b.begin(), b.end());
    return v;
}

QVec ss_part(const Group& g, const QVec& x) {
    QVec v = x;
    for (std::size_t i = g.datum.ss_dim(); i < v.size(); ++i) v[i] = 0;
    return v;
}

QVec ab_part(const Group& g, const QVec& x) {
    QVec v = x;
    for (std::size_t i = 0; i < g.datum.ss_dim(); ++i) v[i] = 0;
    return v;
}

// integer lift in Lambda(T_G) of the j-th basis vector of Lambda(G^ab)
QVec ab_lift(const Group& g, std::size_t j) {
    const auto& d = g.datum;
    const QMat& b = d.cochar.basis();
    const std::size_t ss = d.ss_dim(), s = g.s();
    QMat pb = b.block(ss, 0, s, b.cols());
    QVec target = g.parts.E.col(j);
    Int den = lcm(denominator_lcm(pb), denominator_lcm(target));
    ZVec rhs(s);
    for (std::size_t i = 0; i < s; ++i) rhs[i] = Rat(target[i] * den).get_num();
    auto sol = solve_integer(scaled_to_int(pb, den), rhs);
    if (!sol) throw Error("InternalConsistency", "abelian basis vector has no integral lift");
    return b * to_rat(*sol);
}

QVec unit(std::size_t m, std::size_t t) {
    QVec e(m);
    e[t] = 1;
    return e;
}

Int ipow(const Int& b, std::size_t e) {
    Int r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

// N Z^s (or 0 when N = 0)
Lattice scaled_standard(std::size_t s, const Int& n) {
    if (n == 0) return Lattice::zero(s);
    QMat m(s, s);
    for (std::size_t i = 0; i < s; ++i) m(i, i) = Rat(n);
    return Lattice::from_generators(m);
}

ZVec to_int_vec(const QVec& v) {
    ZVec z(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].get_den() != 1) throw Error("InternalConsistency", "expected an integral vector");
        z[i] = v[i].get_num();
    }
    return z;
}

// Z^rank modulo the span of cols
FGAbGroup coker_of_columns(std::size_t rank, const std::vector<ZVec>& cols) {
    ZMat m(rank, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rank; ++i) m(i, j) = cols[j][i];
    ZVec orders(rank, Int(0));
    if (!cols.empty() && rank) {
        auto d = snf_factors(m);
        for (std::size_t i = 0; i < d.size(); ++i) orders[i] = d[i];
    }
    return FGAbGroup::from_cyclic(orders);
}

}  // namespace

// ---------- marked genus ----------

MarkedGenus marked_genus(int g, int n) {
    if (g < 0 || n < 0) throw Error("InvalidParams", "g and n must be non-negative");
    return {g, n};
}

std::size_t MarkedGenus::hhat_rank() const {
    if (g == 0) throw Error("Genus0NotHere", "H-hat is defined for g >= 1");
    return static_cast<std::size_t>(g >= 2 ? 1 + n : n);
}

std::size_t MarkedGenus::h_rank() const {
    if (g == 0) throw Error("Genus0NotHere", "H is defined for g >= 1");
    return static_cast<std::size_t>(g >= 2 ? n : std::max(n - 1, 0));
}

ZMat MarkedGenus::hhat_basis() const { return ZMat::identity(hhat_rank()); }

ZMat MarkedGenus::h_basis() const {
    const std::size_t m = hhat_rank();
    ZMat row(1, m);
    if (g >= 2) {
        row(0, 0) = 2 * g - 2;
        for (std::size_t i = 1; i < m; ++i) row(0, i) = 1;
    } else {
        for (std::size_t i = 0; i < m; ++i) row(0, i) = 1;
    }
    if (m == 0) return ZMat(0, 0);
    return integer_kernel(row);
}

// ---------- Neron-Severi ----------

QMat ev_matrix(const Group& g, const QVec& d, FormKind kind) {
    const bool ss = is_semisimple_kind(kind);
    const std::size_t m = param_dim(g.s(), g.k(), ss);
    QVec dss = ss_part(g, d);
    QMat out(g.datum.dim(), m);
    for (std::size_t t = 0; t < m; ++t) {
        WInvForm f = form_from_params(unit(m, t), g.s(), g.k(), ss);
        out.set_col(t, ss_gram(g, f) * dss);
    }
    return out;
}

NSLattice ns_lattice(const Group& g, const Pi1Element& delta, bool rigidified) {
    const auto& de = g.form(FormKind::D_EVEN);
    const std::size_t dim = g.datum.dim(), m = de.params.ambient_dim();
    QMat f = ev_matrix(g, delta.lift, FormKind::D_EVEN);
    NSLattice ns;
    ns.rigidified = rigidified;
    if (rigidified) {
        ns.lattice = lattice_preimage(de.params, f, g.parts.dual_ad);
        ns.chi_shift = Lattice::zero(m);
        return ns;
    }
    Lattice l0 = direct_sum(g.parts.dual_G, de.params);
    QMat map(dim, dim + m);
    for (std::size_t i = 0; i < g.datum.ss_dim(); ++i) map(i, i) = 1;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t t = 0; t < m; ++t) map(i, dim + t) = -f(i, t);
    ns.lattice = lattice_preimage(l0, map, g.parts.dual_ad);
    ns.chi_shift = direct_sum(g.parts.dual_ad, Lattice::zero(m));
    return ns;
}

bool ns_membership(const Group& g, const Pi1Element& delta, const NSClass& cls, bool rigidified) {
    if (!form_in(g.form(FormKind::D_EVEN), cls.form))
        throw Error("FormNotDEven", "the form is not in the D-even lattice");
    QVec fp = ss_gram(g, cls.form) * ss_part(g, delta.lift);
    if (rigidified) return g.parts.dual_ad.contains(fp);
    if (cls.chi.size() != g.datum.dim() || !g.parts.dual_G.contains(cls.chi)) return false;
    QVec diff = ss_part(g, cls.chi);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= fp[i];
    return g.parts.dual_ad.contains(diff);
}

QVec distinguished_lift(const Group& g, const Pi1Element& delta, const NSClass& cls) {
    QVec out = ss_gram(g, cls.form) * ss_part(g, delta.lift);
    for (std::size_t i = g.datum.ss_dim(); i < out.size(); ++i) out[i] = cls.chi.at(i);
    return out;
}

PicardReport rpic_report(const Group& g, const MarkedGenus& mg, const Pi1Element&) {
    need_genus(mg.g);
    const std::size_t s = g.s(), k = g.k();
    const std::size_t rd = g.form(FormKind::D_EVEN).rank();
    PicardReport r;
    r.quantity = "rpic";
    r.free_rank = s * mg.hhat_rank() + rd;
    r.group = free_group(r.free_rank);
    r.pieces.push_back({"Lambda*(G^ab) (x) H-hat", free_group(s * mg.hhat_rank()), "reductive-picard-sequence"});
    r.pieces.push_back({"D-even invariant forms", free_group(rd), "invariant-form-lattices"});
    r.pieces.push_back({"pair-even quotient", free_group(g.form(FormKind::PAIR_EVEN).rank()), "reductive-picard-corollary"});
    r.pieces.push_back({"rigidified RPic", free_group(s * mg.h_rank() + rd), "rigidified-picard"});
    r.tags = {"reductive-picard-sequence", "invariant-form-lattices", "rigidified-picard"};
    if (k == 0) r.tags.push_back("torus-picard-generation");
    r.checks.push_back({"rank D-even = C(s+1,2) + k", rd == s * (s + 1) / 2 + k});
    return r;
}

// ---------- image of omega + gamma ----------

namespace {

// linear maps on (chi, p) (or p alone when rigidified) giving the divisibility values on the Lambda(G^ab) basis
QMat omega_gamma_values(const Group& g, int genus, const Pi1Element& delta, bool rigidified) {
    const std::size_t s = g.s(), dim = g.datum.dim();
    const std::size_t m = g.form(FormKind::D_EVEN).params.ambient_dim();
    const std::size_t off = rigidified ? 0 : dim;
    QMat v(s, off + m);
    QVec dab = ab_part(g, delta.lift);
    for (std::size_t j = 0; j < s; ++j) {
        QVec x = ab_lift(g, j);
        QVec cross = form_functional(g, dab, x, false);
        QVec sq = form_functional(g, x, x, false);
        if (!rigidified)
            for (std::size_t i = g.datum.ss_dim(); i < dim; ++i) v(j, i) = x[i];
        for (std::size_t t = 0; t < m; ++t)
            v(j, off + t) = (rigidified ? cross[t] : Rat(-cross[t])) + Rat(genus - 1) * sq[t];
    }
    return v;
}

}  // namespace

ImOmegaGamma im_omega_gamma(const Group& g, const MarkedGenus& mg, const Pi1Element& delta, bool rigidified) {
    need_genus(mg.g);
    ImOmegaGamma out;
    out.ns = ns_lattice(g, delta, rigidified);
    if (mg.n >= 1 || g.s() == 0) {
        out.image = out.ns.lattice;
        return out;
    }
    QMat v = omega_gamma_values(g, mg.g, delta, rigidified);
    out.image = lattice_preimage(out.ns.lattice, v, scaled_standard(g.s(), Int(2 * mg.g - 2)));
    out.factors = quotient_group(out.ns.lattice, out.image, false);
    return out;
}

bool in_im_omega_gamma(const Group& g, const MarkedGenus& mg, const Pi1Element& delta, const NSClass& cls,
                       bool rigidified) {
    if (!ns_membership(g, delta, cls, rigidified)) return false;
    auto im = im_omega_gamma(g, mg, delta, rigidified);
    QVec p = form_params(cls.form, false);
    return im.image.contains(rigidified ? p : concat(cls.chi, p));
}

WeightData weight_data(const Group& g, int genus) {
    need_genus(genus);
    const std::size_t s = g.s(), dim = g.datum.dim(), ss = g.datum.ss_dim();
    WeightData w;
    w.g = &g;
    w.genus = genus;
    for (std::size_t j = 0; j < s; ++j) w.ab_lifts.push_back(ab_lift(g, j));
    QMat lifts = QMat::from_columns(w.ab_lifts, dim);
    if (g.k() == 0 && s) {
        // no semisimple part: NS(rig) is the whole D-even lattice for every component
        for (const auto& b : g.form(FormKind::D_EVEN).basis) {
            QMat gm = full_gram(g, b);
            QMat ml = gm * lifts;
            QVec q(s);
            for (std::size_t j = 0; j < s; ++j) q[j] = Rat(1 - genus) * dot(w.ab_lifts[j], ml.col(j));
            w.rig_maps.push_back(ml.transpose());
            w.rig_consts.push_back(q);
        }
    }
    w.dual_G_inv = rat_inverse(g.parts.dual_G.basis());
    for (const auto& b : g.form(FormKind::FULL_EVEN).basis) w.full_even_coords.push_back(w.dual_G_inv * full_gram(g, b));
    for (std::size_t j = 0; j < g.parts.dual_ad.rank(); ++j)
        w.dual_ad_coords.push_back(to_int_vec(w.dual_G_inv * g.parts.dual_ad.basis_vector(j)));
    for (std::size_t i = 0; i < s; ++i) {
        QVec u(dim);
        for (std::size_t c = 0; c < s; ++c) u[ss + c] = g.parts.Einv(i, c);
        w.u_coords.push_back(w.dual_G_inv * u);
    }
    return w;
}

FGAbGroup coker_gamma_bar(const WeightData& w, const Pi1Element& delta) {
    const Group& g = *w.g;
    const std::size_t s = g.s();
    if (s == 0) return FGAbGroup::trivial();
    const QVec x = ab_part(g, delta.lift);
    const Int n2 = 2 * w.genus - 2;
    // b |-> (x |-> b(delta^ab, x) + (1-g) b(x~, x~)) on a basis of NS(rig); the image of
    // this map in (Z/N)^s is L / N Z^s with L the span of the values and N Z^s, i.e. sum Z/(N/d_i)
    std::vector<ZVec> cols;
    if (!w.rig_maps.empty()) {
        for (std::size_t t = 0; t < w.rig_maps.size(); ++t) {
            QVec e = w.rig_maps[t] * x;
            for (std::size_t j = 0; j < s; ++j) e[j] += w.rig_consts[t][j];
            cols.push_back(to_int_vec(e));
        }
    } else {
        NSLattice rig = ns_lattice(g, delta, true);
        for (std::size_t t = 0; t < rig.lattice.rank(); ++t) {
            QMat gm = full_gram(g, form_from_params(rig.lattice.basis_vector(t), s, g.k(), false));
            QVec gx = gm * x;
            QVec e(s);
            for (std::size_t j = 0; j < s; ++j)
                e[j] = dot(gx, w.ab_lifts[j]) + Rat(1 - w.genus) * dot(w.ab_lifts[j], gm * w.ab_lifts[j]);
            cols.push_back(to_int_vec(e));
        }
    }
    for (std::size_t i = 0; i < s && n2 != 0; ++i) {
        ZVec e(s, Int(0));
        e[i] = n2;
        cols.push_back(e);
    }
    ZMat m(s, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < s; ++i) m(i, j) = cols[j][i];
    ZVec d(s, Int(0));
    if (!cols.empty()) {
        auto f = snf_factors(m);
        for (std::size_t i = 0; i < f.size() && i < s; ++i) d[i] = f[i];
    }
    ZVec orders;
    for (const auto& di : d) {
        if (n2 == 0) {
            if (di != 0) orders.push_back(0);
        } else {
            orders.push_back(n2 / di);
        }
    }
    return FGAbGroup::from_cyclic(orders);
}

FGAbGroup coker_gamma_bar(const Group& g, int genus, const Pi1Element& delta) {
    return coker_gamma_bar(weight_data(g, genus), delta);
}

FGAbGroup coker_omega_group(const WeightData& w, int n, const Pi1Element& delta) {
    const Group& g = *w.g;
    const std::size_t s = g.s(), dim = g.datum.dim(), ss = g.datum.ss_dim();
    std::vector<ZVec> cols = w.dual_ad_coords;
    for (const auto& c : w.full_even_coords) cols.push_back(to_int_vec(c * delta.lift));
    QVec dab(delta.lift.begin() + ss, delta.lift.end());
    QVec de = g.parts.Einv * dab;
    const auto& u = w.u_coords;
    auto comb = [&](const Rat& a, std::size_t i, const Rat& b, std::size_t k) {
        QVec v(dim);
        for (std::size_t c = 0; c < dim; ++c) v[c] = a * u[i][c] + b * u[k][c];
        return to_int_vec(v);
    };
    for (std::size_t i = 0; i < s; ++i) {
        if (n >= 1) cols.push_back(to_int_vec(u[i]));
        for (std::size_t k = i + 1; k < s; ++k) cols.push_back(comb(de[k], i, de[i], k));
        if (w.genus >= 2) cols.push_back(comb(2 * de[i], i, 0, i));
        cols.push_back(comb(de[i] + 1 - w.genus, i, 0, i));
    }
    return coker_of_columns(dim, cols);
}

FGAbGroup coker_omega_group(const Group& g, const MarkedGenus& mg, const Pi1Element& delta) {
    return coker_omega_group(weight_data(g, mg.g), mg.n, delta);
}

PicardReport coker_omega(const Group& g, const MarkedGenus& mg, const Pi1Element& delta) {
    const std::size_t s = g.s();
    PicardReport r;
    r.quantity = "coker-omega";
    r.group = coker_omega_group(g, mg, delta);
    FGAbGroup cev = ev_hom(g, delta, EvVariant::EV).cokernel;
    r.pieces.push_back({"coker(ev)", cev, "evaluation-homomorphism"});
    r.tags = {"weight-generators", "coker-omega-structure", "evaluation-homomorphism"};
    if (mg.n == 0) {
        FGAbGroup cg = coker_gamma_bar(g, mg.g, delta);
        const Int n2 = 2 * mg.g - 2;
        FGAbGroup hom = FGAbGroup::from_cyclic(ZVec(s, n2));
        r.pieces.push_back({"coker(gamma-bar)", cg, "coker-omega-structure"});
        r.pieces.push_back({"Hom(Lambda(G^ab), Z/(2g-2))", hom, "coker-omega-structure"});
        r.notes.push_back("extension in the n = 0 sequence is not resolved; pieces are reported separately");
        if (mg.g >= 2)
            r.checks.push_back({"|coker omega| |coker gamma-bar| = (2g-2)^s |coker ev|",
                                r.group.order() * cg.order() == ipow(n2, s) * cev.order()});
    } else {
        r.checks.push_back({"coker omega = coker ev", r.group == cev});
    }
    if (g.k() == 0) r.tags.push_back("tori-coker-closed-form");
    return r;
}

// ---------- curve NS ----------

namespace {

struct CurveFunctional {
    const Group& g;
    const QVec dss;
    QMat Rinv;
    std::size_t s, k, m;
    CurveFunctional(const Group& gr, const Pi1Element& delta)
        : g(gr), dss(ss_part(gr, delta.lift)), s(gr.s()), k(gr.k()) {
        Rinv = s ? rat_inverse(g.parts.R) : QMat(0, 0);
        m = s + s * (s + 1) / 2 + k;
    }
    QVec rcoords(const QVec& x) const {
        QVec xa(x.begin() + g.datum.ss_dim(), x.end());
        return Rinv * xa;
    }
    Rat basic(std::size_t f, const QVec& x, const QVec& y) const {
        const std::size_t o = g.datum.offset(f);
        const auto& bg = g.datum.factors[f].basic_gram;
        Rat v = 0;
        for (std::size_t i = 0; i < bg.rows(); ++i)
            for (std::size_t j = 0; j < bg.cols(); ++j) v += x[o + i] * Rat(bg(i, j)) * y[o + j];
        return v;
    }
    QVec cond_a(const QVec& x) const {
        QVec out(m);
        QVec xr = rcoords(x);
        for (std::size_t i = 0; i < s; ++i) out[i] = xr[i];
        for (std::size_t f = 0; f < k; ++f) out[m - k + f] = basic(f, dss, x);
        return out;
    }
    QVec cond_b(const QVec& x, const QVec& y) const {
        QVec out(m);
        QVec xr = rcoords(x), yr = rcoords(y);
        std::size_t t = s;
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = i; j < s; ++j, ++t)
                out[t] = i == j ? Rat(xr[i] * yr[i]) : Rat(xr[i] * yr[j] + xr[j] * yr[i]);
        for (std::size_t f = 0; f < k; ++f) out[m - k + f] = basic(f, x, y);
        return out;
    }
};

}  // namespace

CurveNS curve_ns(const Group& g, const Pi1Element& delta, int genus) {
    need_genus(genus);
    CurveFunctional cf(g, delta);
    std::vector<Congruence> conds;
    const auto& lt = g.parts.lambda_G;
    for (std::size_t i = 0; i < lt.rank(); ++i) {
        QVec x = lt.basis_vector(i);
        conds.push_back({cf.cond_a(x), Rat(1)});
        for (std::size_t j = i; j < lt.rank(); ++j) conds.push_back({cf.cond_b(x, lt.basis_vector(j)), Rat(1)});
    }
    CurveNS out;
    out.params = congruence_lattice(cf.m, conds, true);
    out.rank = out.params.rank();
    return out;
}

bool curve_membership(const Group& g, const Pi1Element& delta, const CurveTriple& t) {
    const std::size_t s = g.s();
    if (t.l_R.size() != s || t.b_R.rows() != s || t.b_R.cols() != s || t.alpha.size() != g.k()) return false;
    if (t.b_R != t.b_R.transpose()) return false;
    QVec p = t.l_R;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i; j < s; ++j) p.push_back(t.b_R(i, j));
    p.insert(p.end(), t.alpha.begin(), t.alpha.end());
    return curve_ns(g, delta, 1).params.contains(p);
}

CurveTriple res_ns(const Group& g, const NSClass& cls) {
    const std::size_t s = g.s(), ss = g.datum.ss_dim();
    CurveTriple t;
    for (std::size_t j = 0; j < s; ++j) {
        Rat v = 0;
        for (std::size_t i = 0; i < s; ++i) v += cls.chi.at(ss + i) * g.parts.R(i, j);
        t.l_R.push_back(v);
    }
    QMat gab = s ? g.parts.Einv.transpose() * cls.form.b_ab * g.parts.Einv : QMat(0, 0);
    t.b_R = s ? g.parts.R.transpose() * gab * g.parts.R : QMat(0, 0);
    t.alpha = cls.form.alpha;
    return t;
}

PicardReport coker_res_bar(const Group& g, const MarkedGenus& mg, const Pi1Element&) {
    need_genus(mg.g);
    PicardReport r;
    r.quantity = "coker-res-bar";
    FGAbGroup first = mg.n > 0 ? FGAbGroup::trivial() : FGAbGroup::from_cyclic(ZVec(g.s(), Int(2 * mg.g - 2)));
    FGAbGroup second = coker_r_G(g);
    r.pieces.push_back({"coker(omega + gamma) of G^ab", first, "restriction-coker-sequence"});
    r.pieces.push_back({"coker(r_G)", second, "sc-even-cokernel"});
    r.tags = {"restriction-coker-sequence", "sc-even-cokernel", "curve-neron-severi"};
    r.notes.push_back("assumes End(J_C) = Z");
    r.total_order = first.order() * second.order();
    if (first.is_trivial()) {
        r.group = second;
    } else if (second.is_trivial()) {
        r.group = first;
    } else {
        r.resolved = false;
        r.notes.push_back("extension of coker(r_G) by the abelian piece is not resolved");
    }
    return r;
}

PicardReport genus0_report(const Group& g, int n, const Pi1Element& delta) {
    if (n < 1) throw Error("NeedsMarkedPoint", "genus 0 needs at least one marked point");
    const auto& sc = g.form(FormKind::SC_EVEN);
    QMat f = ev_matrix(g, delta.lift, FormKind::SC_EVEN);
    Lattice c = lattice_preimage(sc.params, f, g.parts.dual_D);
    std::vector<QVec> imgs;
    for (std::size_t j = 0; j < c.rank(); ++j) imgs.push_back(f * c.basis_vector(j));
    PicardReport r;
    r.quantity = "genus0";
    r.free_rank = g.s() + g.k();
    r.group = image_in_finite_quotient(g.parts.dual_D, g.parts.dual_ad, imgs).cokernel;
    r.pieces.push_back({"RPic (genus 0)", free_group(r.free_rank), "genus-zero-restriction"});
    r.pieces.push_back({"coker(omega) (genus 0)", r.group, "genus-zero-weight"});
    r.tags = {"genus-zero-restriction", "genus-zero-weight"};
    return r;
}

ClReport cl_report(const Group& g, const MarkedGenus& mg, const Pi1Element& delta, int characteristic) {
    ClReport r;
    if (mg.g + mg.n < 3) {
        r.reasons.push_back("needs g + n >= 3");
        return r;
    }
    if (g.k() == 0) {
        r.applicable = true;
        r.which = "torus";
    } else if (characteristic > 0) {
        if (mg.g >= 4) {
            r.applicable = true;
            r.which = "positive-characteristic";
        } else {
            r.reasons.push_back("non-torus group in positive characteristic needs g >= 4");
        }
    } else {
        if (mg.g >= 2) {
            r.applicable = true;
            r.which = "characteristic-zero";
            if (mg.g == 2) {
                r.caveat = true;
                r.reasons.push_back("g = 2: excluded if G has a non-trivial homomorphism into PGL_2 (not decided)");
            }
        } else {
            r.reasons.push_back("non-torus group in characteristic 0 needs g >= 2");
        }
    }
    if (r.applicable && mg.g >= 1) {
        PicardReport rel = rpic_report(g, mg, delta);
        rel.quantity = "cl-relative-part";
        rel.free_rank = g.s() * mg.h_rank() + g.form(FormKind::D_EVEN).rank();
        rel.group = free_group(rel.free_rank);
        rel.notes.push_back("Cl(M^ss) = Pic(rigidification); the Pic(M_{g,n}) contribution is out of scope");
        rel.tags.push_back("class-group-comparison");
        r.relative = rel;
    }
    return r;
}

// ---------- functoriality ----------

NSClass ns_pullback(const QMat& phi, const Group& source, const Group& target, const Pi1Element& eps,
                    const Pi1Element& delta, const NSClass& cls) {
    if (phi.rows() != target.datum.dim() || phi.cols() != source.datum.dim())
        throw Error("AmbientMismatch", "pullback matrix has the wrong shape");
    for (std::size_t j = 0; j < source.datum.cochar.rank(); ++j)
        if (!target.datum.cochar.contains(phi * source.datum.cochar.basis_vector(j)))
            throw Error("NotInLattice", "the matrix does not map cocharacters to cocharacters");
    QVec d = phi * eps.lift;
    QVec diff = d;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= delta.lift.at(i);
    if (!target.parts.lambda_sc.contains(diff))
        throw Error("IncompatibleDelta", "phi(eps) and delta differ outside the coroot lattice");
    if (!ns_membership(target, delta, cls, false))
        throw Error("NotInLattice", "class is not in the Neron-Severi group of the target");
    Pi1Element dd = delta;
    dd.lift = d;
    QVec chi = distinguished_lift(target, dd, cls);
    NSClass out;
    out.chi = phi.transpose() * chi;
    out.form = pullback_form(phi, cls.form, source, target);
    return out;
}

bool ns_equal(const Group& g, const NSClass& a, const NSClass& b) {
    if (!(a.form == b.form)) return false;
    QVec d = a.chi;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b.chi.at(i);
    return g.parts.dual_ad.contains(d);
}

}  // namespace piclat
