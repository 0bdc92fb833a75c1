#include "piclat/invforms.hpp"

namespace piclat {

std::string form_kind_name(FormKind k) {
    switch (k) {
        case FormKind::FULL: return "FULL";
        case FormKind::FULL_EVEN: return "FULL_EVEN";
        case FormKind::D_EVEN: return "D_EVEN";
        case FormKind::PAIR_EVEN: return "PAIR_EVEN";
        case FormKind::PAIR_SC_EVEN: return "PAIR_SC_EVEN";
        case FormKind::SC_EVEN: return "SC_EVEN";
    }
    return "?";
}

bool is_semisimple_kind(FormKind k) {
    return k == FormKind::PAIR_EVEN || k == FormKind::PAIR_SC_EVEN || k == FormKind::SC_EVEN;
}

std::size_t param_dim(std::size_t s, std::size_t k, bool semisimple_only) {
    return (semisimple_only ? 0 : s * (s + 1) / 2) + k;
}

QVec form_params(const WInvForm& f, bool semisimple_only) {
    QVec p;
    if (!semisimple_only)
        for (std::size_t i = 0; i < f.b_ab.rows(); ++i)
            for (std::size_t j = i; j < f.b_ab.cols(); ++j) p.push_back(f.b_ab(i, j));
    p.insert(p.end(), f.alpha.begin(), f.alpha.end());
    return p;
}

WInvForm form_from_params(const QVec& p, std::size_t s, std::size_t k, bool semisimple_only) {
    WInvForm f;
    f.b_ab = QMat(s, s);
    std::size_t t = 0;
    if (!semisimple_only)
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = i; j < s; ++j, ++t) f.b_ab(i, j) = f.b_ab(j, i) = p.at(t);
    f.alpha.assign(p.begin() + t, p.begin() + t + k);
    return f;
}

bool form_in(const FormLattice& fl, const WInvForm& f) {
    return fl.params.contains(form_params(f, is_semisimple_kind(fl.kind)));
}

namespace {

// coefficient vector of p |-> b_p(x, y)
QVec pair_functional(const ReductiveDatum& d, const DerivedParts& pp, const QVec& x, const QVec& y,
                     bool semisimple_only) {
    const std::size_t s = static_cast<std::size_t>(d.abelian_rank), k = d.factors.size();
    QVec out;
    out.reserve(param_dim(s, k, semisimple_only));
    if (!semisimple_only && s) {
        QVec xa(x.begin() + d.ss_dim(), x.end()), ya(y.begin() + d.ss_dim(), y.end());
        QVec xe = pp.Einv * xa, ye = pp.Einv * ya;
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = i; j < s; ++j)
                out.push_back(i == j ? Rat(xe[i] * ye[i]) : Rat(xe[i] * ye[j] + xe[j] * ye[i]));
    }
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t o = d.offset(f);
        const auto& bg = d.factors[f].basic_gram;
        Rat v = 0;
        for (int i = 0; i < d.factors[f].rank; ++i) {
            if (x[o + i] == 0) continue;
            for (int j = 0; j < d.factors[f].rank; ++j) v += x[o + i] * Rat(bg(i, j)) * y[o + j];
        }
        out.push_back(v);
    }
    return out;
}

std::vector<QVec> cols(const Lattice& l) {
    std::vector<QVec> v;
    for (std::size_t j = 0; j < l.rank(); ++j) v.push_back(l.basis_vector(j));
    return v;
}

std::vector<QVec> coroots(const ReductiveDatum& d) {
    std::vector<QVec> v;
    for (std::size_t i = 0; i < d.ss_dim(); ++i) {
        QVec e(d.dim());
        e[i] = 1;
        v.push_back(e);
    }
    return v;
}

}  // namespace

FormLattice form_lattice(const ReductiveDatum& d, const DerivedParts& p, FormKind kind) {
    const bool ss = is_semisimple_kind(kind);
    const std::size_t s = static_cast<std::size_t>(d.abelian_rank), k = d.factors.size();
    const std::size_t m = param_dim(s, k, ss);
    std::vector<Congruence> conds;
    auto integral = [&](const std::vector<QVec>& xs, const std::vector<QVec>& ys, bool sym) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = sym ? i : 0; j < ys.size(); ++j)
                conds.push_back({pair_functional(d, p, xs[i], ys[j], ss), Rat(1)});
    };
    auto even = [&](const std::vector<QVec>& xs) {
        for (const auto& x : xs) conds.push_back({pair_functional(d, p, x, x, ss), Rat(2)});
    };
    const auto lt = cols(p.lambda_G);
    switch (kind) {
        case FormKind::FULL: integral(lt, lt, true); break;
        case FormKind::FULL_EVEN: integral(lt, lt, true); even(lt); break;
        case FormKind::D_EVEN: integral(lt, lt, true); even(cols(p.lambda_D)); break;
        case FormKind::PAIR_EVEN:
            integral(cols(p.lambda_D), cols(p.lambda_ss), false);
            even(cols(p.lambda_D));
            break;
        case FormKind::PAIR_SC_EVEN:
            integral(cols(p.lambda_D), cols(p.lambda_ss), false);
            even(coroots(d));
            break;
        case FormKind::SC_EVEN: {
            auto c = coroots(d);
            integral(c, c, true);
            even(c);
            break;
        }
    }
    FormLattice fl;
    fl.kind = kind;
    fl.params = m ? congruence_lattice(m, conds, false) : Lattice::zero(0);
    for (std::size_t j = 0; j < fl.params.rank(); ++j)
        fl.basis.push_back(form_from_params(fl.params.basis_vector(j), s, k, ss));
    return fl;
}

QVec form_functional(const Group& g, const QVec& x, const QVec& y, bool semisimple_only) {
    return pair_functional(g.datum, g.parts, x, y, semisimple_only);
}

Group make_group(ReductiveDatum d) {
    Group g;
    g.parts = derive_parts(d);
    g.datum = std::move(d);
    for (std::size_t i = 0; i < kFormKinds; ++i)
        g.forms[i] = form_lattice(g.datum, g.parts, static_cast<FormKind>(i));
    return g;
}

Group make_group(const std::string& spec) { return make_group(build_named(spec)); }

QMat ss_gram(const Group& g, const WInvForm& f) {
    const auto& d = g.datum;
    QMat m(d.dim(), d.dim());
    for (std::size_t k = 0; k < d.factors.size(); ++k) {
        const std::size_t o = d.offset(k);
        const auto& bg = d.factors[k].basic_gram;
        for (std::size_t i = 0; i < bg.rows(); ++i)
            for (std::size_t j = 0; j < bg.cols(); ++j) m(o + i, o + j) = f.alpha.at(k) * Rat(bg(i, j));
    }
    return m;
}

QMat full_gram(const Group& g, const WInvForm& f) {
    QMat m = ss_gram(g, f);
    const std::size_t s = g.s(), o = g.datum.ss_dim();
    if (s) {
        QMat ab = g.parts.Einv.transpose() * f.b_ab * g.parts.Einv;
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) m(o + i, o + j) = ab(i, j);
    }
    return m;
}

Rat evaluate_form(const Group& g, const WInvForm& f, const QVec& x, const QVec& y) {
    return dot(x, full_gram(g, f) * y);
}

QVec ev_functional(const Group& g, const WInvForm& f, const QVec& d_ss_ambient) {
    QVec v = ss_gram(g, f) * d_ss_ambient;
    if (!g.parts.dual_D.contains(v))
        throw Error("NonIntegralEvaluation", "b(d^ss, -) is not integral on the derived cocharacters");
    return v;
}

EvResult ev_hom(const Group& g, const Pi1Element& delta, EvVariant variant) {
    const FormLattice& fl = g.form(variant == EvVariant::EV ? FormKind::PAIR_EVEN : FormKind::PAIR_SC_EVEN);
    QVec d(g.datum.dim());
    std::copy(delta.d_ss.begin(), delta.d_ss.end(), d.begin());
    EvResult r;
    for (const auto& b : fl.basis) r.images.push_back(ev_functional(g, b, d));
    auto ic = image_in_finite_quotient(g.parts.dual_D, g.parts.dual_ad, r.images);
    r.image = ic.subgroup;
    r.cokernel = ic.cokernel;
    return r;
}

FGAbGroup coker_r_G(const Group& g) {
    return quotient_group(g.form(FormKind::PAIR_SC_EVEN).params, g.form(FormKind::PAIR_EVEN).params, false);
}

Rat multiplier(const FormLattice& fl) {
    if (fl.rank() != 1 || fl.basis[0].alpha.size() != 1 || !fl.basis[0].b_ab.is_zero())
        throw Error("InvalidParams", "multiplier needs a rank-one lattice on a single simple factor");
    Rat a = fl.basis[0].alpha[0];
    return a < 0 ? Rat(-a) : a;
}

WInvForm pullback_form(const QMat& phi, const WInvForm& f, const Group& source, const Group& target) {
    if (phi.rows() != target.datum.dim() || phi.cols() != source.datum.dim())
        throw Error("AmbientMismatch", "pullback matrix has the wrong shape");
    QMat gs = phi.transpose() * full_gram(target, f) * phi;
    const auto& sd = source.datum;
    const std::size_t ss = sd.ss_dim();
    auto fail = [] { throw Error("NotWInvariantPullback", "pulled-back form is not of split invariant shape"); };
    // which factor each semisimple coordinate belongs to
    std::vector<std::size_t> owner(ss);
    for (std::size_t k = 0; k < sd.factors.size(); ++k)
        for (int i = 0; i < sd.factors[k].rank; ++i) owner[sd.offset(k) + i] = k;
    for (std::size_t i = 0; i < sd.dim(); ++i)
        for (std::size_t j = 0; j < sd.dim(); ++j) {
            bool same = (i < ss && j < ss && owner[i] == owner[j]) || (i >= ss && j >= ss);
            if (!same && gs(i, j) != 0) fail();
        }
    WInvForm out;
    for (std::size_t k = 0; k < sd.factors.size(); ++k) {
        const std::size_t o = sd.offset(k);
        const auto& bg = sd.factors[k].basic_gram;
        Rat a = gs(o, o) / Rat(bg(0, 0));
        for (std::size_t i = 0; i < bg.rows(); ++i)
            for (std::size_t j = 0; j < bg.cols(); ++j)
                if (gs(o + i, o + j) != a * Rat(bg(i, j))) fail();
        out.alpha.push_back(a);
    }
    const std::size_t s = source.s();
    QMat ab = gs.block(ss, ss, s, s);
    out.b_ab = source.parts.E.transpose() * ab * source.parts.E;
    return out;
}

}  // namespace piclat
