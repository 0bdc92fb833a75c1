#include "piclat/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <queue>
#include <sstream>

namespace piclat {

std::string type_name(TypeTag t) {
    switch (t) {
        case TypeTag::A: return "A";
        case TypeTag::B: return "B";
        case TypeTag::C: return "C";
        case TypeTag::D: return "D";
        case TypeTag::E6: return "E6";
        case TypeTag::E7: return "E7";
        case TypeTag::E8: return "E8";
        case TypeTag::F4: return "F4";
        case TypeTag::G2: return "G2";
    }
    return "?";
}

std::string SimpleFactorTable::name() const {
    switch (tag) {
        case TypeTag::A:
        case TypeTag::B:
        case TypeTag::C:
        case TypeTag::D: return type_name(tag) + std::to_string(rank);
        default: return type_name(tag);
    }
}

QMat SimpleFactorTable::simple_reflection(int i) const {
    QMat s = to_rat(ZMat::identity(rank));
    for (int k = 0; k < rank; ++k) s(i, k) -= cartan(k, i);
    return s;
}

SimpleFactorTable simple_factor_table(TypeTag tag, int l) {
    switch (tag) {
        case TypeTag::A: if (l < 1) throw Error("UnsupportedType", "A_l needs l >= 1"); break;
        case TypeTag::B:
        case TypeTag::C: if (l < 2) throw Error("UnsupportedType", "B_l, C_l need l >= 2"); break;
        case TypeTag::D: if (l < 3) throw Error("UnsupportedType", "D_l needs l >= 3"); break;
        case TypeTag::E6: l = 6; break;
        case TypeTag::E7: l = 7; break;
        case TypeTag::E8: l = 8; break;
        case TypeTag::F4: l = 4; break;
        case TypeTag::G2: l = 2; break;
    }
    SimpleFactorTable t;
    t.tag = tag;
    t.rank = l;
    ZMat c(l, l);
    for (int i = 0; i < l; ++i) c(i, i) = 2;
    auto edge = [&](int i, int j) { c(i, j) = -1; c(j, i) = -1; };
    switch (tag) {
        case TypeTag::A:
        case TypeTag::B:
        case TypeTag::C:
            for (int i = 0; i + 1 < l; ++i) edge(i, i + 1);
            if (tag == TypeTag::B) c(l - 1, l - 2) = -2;
            if (tag == TypeTag::C) c(l - 2, l - 1) = -2;
            break;
        case TypeTag::D:
            for (int i = 0; i + 3 < l; ++i) edge(i, i + 1);
            edge(l - 3, l - 2);
            edge(l - 3, l - 1);
            break;
        case TypeTag::E6:
        case TypeTag::E7:
        case TypeTag::E8:
            // Bourbaki: 1-3-4-5-...-l with 2 attached to 4
            edge(0, 2);
            for (int i = 2; i + 1 < l; ++i) edge(i, i + 1);
            edge(1, 3);
            break;
        case TypeTag::F4:
            edge(0, 1); edge(1, 2); edge(2, 3);
            c(2, 1) = -2;
            break;
        case TypeTag::G2:
            edge(0, 1);
            c(0, 1) = -3;
            break;
    }
    t.cartan = c;

    // symmetrizer by walking the Dynkin graph: d_i c(k,i) = d_k c(i,k)
    std::vector<Rat> d(l, Rat(0));
    d[0] = 1;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        int i = q.front();
        q.pop();
        for (int k = 0; k < l; ++k)
            if (k != i && c(i, k) != 0 && d[k] == 0) {
                d[k] = d[i] * Rat(c(k, i)) / Rat(c(i, k));
                q.push(k);
            }
    }
    Int den = denominator_lcm(QVec(d.begin(), d.end()));
    Int g = 0;
    t.symmetrizer.resize(l);
    for (int i = 0; i < l; ++i) {
        t.symmetrizer[i] = Rat(d[i] * den).get_num();
        g = gcd(g, t.symmetrizer[i]);
    }
    for (auto& x : t.symmetrizer) x /= g;
    t.basic_gram = ZMat(l, l);
    for (int i = 0; i < l; ++i)
        for (int k = 0; k < l; ++k) t.basic_gram(i, k) = t.symmetrizer[i] * c(k, i);

    t.coweights = rat_inverse(to_rat(c)).transpose();
    t.fund_group = quotient_group(Lattice::from_generators(t.coweights), Lattice::standard(l));
    return t;
}

SimpleFactorTable simple_factor_table(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != ':' && ch != '_') s += ch;
    if (s.empty()) throw Error("UnsupportedType", "empty type tag");
    char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    std::string rest = s.substr(1);
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        throw Error("UnsupportedType", "bad type tag '" + raw + "'");
    int l = std::stoi(rest);
    switch (letter) {
        case 'A': return simple_factor_table(TypeTag::A, l);
        case 'B': return simple_factor_table(TypeTag::B, l);
        case 'C': return simple_factor_table(TypeTag::C, l);
        case 'D': return simple_factor_table(TypeTag::D, l);
        case 'E':
            if (l == 6) return simple_factor_table(TypeTag::E6, 6);
            if (l == 7) return simple_factor_table(TypeTag::E7, 7);
            if (l == 8) return simple_factor_table(TypeTag::E8, 8);
            break;
        case 'F':
            if (l == 4) return simple_factor_table(TypeTag::F4, 4);
            break;
        case 'G':
            if (l == 2) return simple_factor_table(TypeTag::G2, 2);
            break;
        default: break;
    }
    throw Error("UnsupportedType", "unknown type tag '" + raw + "'");
}

// ---------- datum geometry ----------

std::size_t ReductiveDatum::ss_dim() const {
    std::size_t s = 0;
    for (const auto& f : factors) s += static_cast<std::size_t>(f.rank);
    return s;
}

std::size_t ReductiveDatum::offset(std::size_t f) const {
    std::size_t o = 0;
    for (std::size_t i = 0; i < f; ++i) o += static_cast<std::size_t>(factors[i].rank);
    return o;
}

QMat ReductiveDatum::coroot_span() const {
    QMat m(dim(), ss_dim());
    for (std::size_t i = 0; i < ss_dim(); ++i) m(i, i) = 1;
    return m;
}

QMat ReductiveDatum::abelian_span() const {
    QMat m(dim(), static_cast<std::size_t>(abelian_rank));
    for (int i = 0; i < abelian_rank; ++i) m(ss_dim() + i, i) = 1;
    return m;
}

QMat ReductiveDatum::ss_projection() const {
    QMat m(dim(), dim());
    for (std::size_t i = 0; i < ss_dim(); ++i) m(i, i) = 1;
    return m;
}

QMat ReductiveDatum::ab_projection() const {
    QMat m(dim(), dim());
    for (std::size_t i = ss_dim(); i < dim(); ++i) m(i, i) = 1;
    return m;
}

Lattice ReductiveDatum::coroot_lattice() const { return Lattice::from_generators(coroot_span()); }

Lattice ReductiveDatum::coweight_lattice() const {
    QMat m(dim(), ss_dim());
    for (std::size_t f = 0; f < factors.size(); ++f) {
        std::size_t o = offset(f);
        const auto& w = factors[f].coweights;
        for (std::size_t i = 0; i < w.rows(); ++i)
            for (std::size_t j = 0; j < w.cols(); ++j) m(o + i, o + j) = w(i, j);
    }
    return Lattice::from_generators(m);
}

Lattice ReductiveDatum::root_lattice() const {
    QMat m(dim(), ss_dim());
    for (std::size_t f = 0; f < factors.size(); ++f) {
        std::size_t o = offset(f);
        const auto& c = factors[f].cartan;
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < c.cols(); ++j) m(o + i, o + j) = c(i, j);
    }
    return Lattice::from_generators(m);
}

DerivedParts derive_parts(const ReductiveDatum& d) {
    DerivedParts p;
    p.lambda_G = d.cochar;
    p.lambda_sc = d.coroot_lattice();
    p.lambda_ad = d.coweight_lattice();
    p.lambda_D = lattice_saturate(d.cochar, d.coroot_span());
    p.lambda_R = lattice_saturate(d.cochar, d.abelian_span());
    p.lambda_ss = lattice_image(d.ss_projection(), d.cochar);
    p.lambda_ab = lattice_image(d.ab_projection(), d.cochar);

    p.dual_G = lattice_dual(p.lambda_G);
    p.dual_sc = lattice_dual(p.lambda_sc);
    p.dual_D = lattice_dual(p.lambda_D);
    p.dual_ss = lattice_dual(p.lambda_ss);
    p.dual_R = lattice_dual(p.lambda_R);
    p.dual_ab = lattice_dual(p.lambda_ab);
    p.dual_ad = lattice_dual(p.lambda_ad);

    p.pi1 = quotient_group(p.lambda_G, p.lambda_sc);
    p.center_chars = quotient_group(p.dual_G, p.dual_ad);
    p.dcenter_chars = quotient_group(p.dual_D, p.dual_ad);

    std::size_t a = static_cast<std::size_t>(d.abelian_rank), s0 = d.ss_dim();
    p.E = p.lambda_ab.basis().block(s0, 0, a, p.lambda_ab.rank());
    p.R = p.lambda_R.basis().block(s0, 0, a, p.lambda_R.rank());
    if (p.E.cols() != a || p.R.cols() != a) throw Error("InvalidDatum", "abelian part is not of full rank");
    p.Einv = a ? rat_inverse(p.E) : QMat(0, 0);
    return p;
}

std::vector<std::string> validate_datum(const ReductiveDatum& d) {
    std::vector<std::string> out;
    if (d.cochar.ambient_dim() != d.dim()) {
        out.push_back("AmbientMismatch");
        return out;
    }
    if (d.cochar.rank() != d.dim()) out.push_back("RankDeficient");
    for (std::size_t i = 0; i < d.ss_dim(); ++i) {
        QVec e(d.dim());
        e[i] = 1;
        if (!d.cochar.contains(e)) {
            out.push_back("MissingCoroot");
            break;
        }
    }
    Lattice pw = d.coweight_lattice();
    QMat p2 = d.ss_projection();
    for (std::size_t j = 0; j < d.cochar.rank(); ++j)
        if (!pw.contains(p2 * d.cochar.basis().col(j))) {
            out.push_back("NotInCoweightLattice");
            break;
        }
    // reflection certificate: s x - x must be an integer combination of coroots
    bool stable = true;
    for (std::size_t f = 0; f < d.factors.size() && stable; ++f) {
        std::size_t o = d.offset(f);
        const auto& t = d.factors[f];
        for (int i = 0; i < t.rank && stable; ++i) {
            QMat s = t.simple_reflection(i);
            for (std::size_t j = 0; j < d.cochar.rank() && stable; ++j) {
                QVec x = d.cochar.basis().col(j);
                QVec blk(x.begin() + o, x.begin() + o + t.rank);
                QVec y = s * blk;
                for (int k = 0; k < t.rank; ++k)
                    if (Rat(y[k] - blk[k]).get_den() != 1) stable = false;
            }
        }
    }
    if (!stable) out.push_back("WeylInstability");
    return out;
}

Pi1Element pi1_class(const ReductiveDatum& d, const DerivedParts& p, const QVec& lift) {
    if (lift.size() != d.dim()) throw Error("NotInLattice", "lift has wrong dimension");
    if (!d.cochar.contains(lift)) throw Error("NotInLattice", "lift is not in the cocharacter lattice");
    Pi1Element e;
    e.lift = lift;
    e.d_ss.assign(lift.begin(), lift.begin() + d.ss_dim());
    e.d_ab.assign(lift.begin() + d.ss_dim(), lift.end());
    e.order_ss = denominator_lcm(e.d_ss);  // Q^vee is Z^ss in coroot coordinates
    e.order = is_zero(e.d_ab) ? e.order_ss : Int(0);
    e.div_ab = 0;
    if (!is_zero(e.d_ab)) {
        ZVec c = to_int(p.Einv * e.d_ab);
        for (const auto& x : c) e.div_ab = gcd(e.div_ab, x);
    }
    return e;
}

QVec lift_with_ss_part(const ReductiveDatum& d, const QVec& v) {
    const QMat& b = d.cochar.basis();
    QMat pb = b.block(0, 0, d.ss_dim(), b.cols());
    Int den = lcm(denominator_lcm(pb), denominator_lcm(v));
    ZVec rhs(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) rhs[i] = Rat(v[i] * den).get_num();
    auto sol = solve_integer(scaled_to_int(pb, den), rhs);
    if (!sol) throw Error("NotInLattice", "semisimple part is not a projection of the cocharacter lattice");
    return b * to_rat(*sol);
}

// ---------- builders ----------

ReductiveDatum datum_from_generators(std::vector<SimpleFactorTable> factors, int abelian_rank,
                                     const std::vector<QVec>& extra) {
    ReductiveDatum d;
    d.factors = std::move(factors);
    d.abelian_rank = abelian_rank;
    QMat gens = d.coroot_span();
    if (!extra.empty()) gens = gens.hcat(QMat::from_columns(extra, d.dim()));
    d.cochar = Lattice::from_generators(gens);
    return d;
}

namespace {

QVec coweight(const ReductiveDatum& d, std::size_t f, int i) {
    QVec v(d.dim());
    std::size_t o = d.offset(f);
    for (int k = 0; k < d.factors[f].rank; ++k) v[o + k] = d.factors[f].coweights(k, i);
    return v;
}

QVec scaled(QVec v, const Rat& s) {
    for (auto& x : v) x *= s;
    return v;
}

ReductiveDatum semisimple(TypeTag t, int l, const std::vector<int>& extra_coweights, const Rat& scale = 1) {
    ReductiveDatum d;
    d.factors = {simple_factor_table(t, l)};
    std::vector<QVec> extra;
    for (int i : extra_coweights) extra.push_back(scaled(coweight(d, 0, i), scale));
    return datum_from_generators(d.factors, 0, extra);
}

ReductiveDatum adjoint(TypeTag t, int l) {
    auto tab = simple_factor_table(t, l);
    std::vector<int> all(tab.rank);
    std::iota(all.begin(), all.end(), 0);
    return semisimple(t, tab.rank, all);
}

int parse_int(const std::string& s, const std::string& ctx) {
    if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        throw Error("ParseError", "expected a positive integer in '" + ctx + "'");
    return std::stoi(s);
}

ReductiveDatum build_atom(const std::string& atom) {
    auto colon = atom.find(':');
    std::string head = atom.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : atom.substr(colon + 1);
    auto need_arg = [&]() {
        if (colon == std::string::npos) throw Error("ParseError", "'" + atom + "' needs a size argument");
    };
    ReductiveDatum d;
    if (head == "torus") {
        need_arg();
        int a = parse_int(arg, atom);
        if (a < 1) throw Error("InvalidIsogeny", "torus rank must be positive");
        std::vector<QVec> e;
        for (int i = 0; i < a; ++i) {
            QVec v(a);
            v[i] = 1;
            e.push_back(v);
        }
        d = datum_from_generators({}, a, e);
        d.delta_unit = e[0];
    } else if (head == "GL") {
        need_arg();
        int n = parse_int(arg, atom);
        if (n < 1) throw Error("InvalidIsogeny", "GL:n needs n >= 1");
        if (n == 1) return build_atom("torus:1");
        ReductiveDatum base;
        base.factors = {simple_factor_table(TypeTag::A, n - 1)};
        base.abelian_rank = 1;
        QVec w = coweight(base, 0, 0);
        w[n - 1] = 1;
        QVec nz(n);
        nz[n - 1] = n;
        d = datum_from_generators(base.factors, 1, {w, nz});
        d.delta_unit = w;
    } else if (head == "SL") {
        need_arg();
        auto slash = arg.find("/mu:");
        int n = parse_int(arg.substr(0, slash), atom);
        int r = slash == std::string::npos ? 1 : parse_int(arg.substr(slash + 4), atom);
        if (n < 2) throw Error("InvalidIsogeny", "SL:n needs n >= 2");
        if (r < 1 || n % r != 0) throw Error("InvalidIsogeny", "SL:n/mu:r needs r | n");
        d = semisimple(TypeTag::A, n - 1, {0}, Rat(n / r));
        d.delta_unit = scaled(coweight(d, 0, 0), Rat(n / r));
    } else if (head == "PGL") {
        need_arg();
        int n = parse_int(arg, atom);
        if (n < 2) throw Error("InvalidIsogeny", "PGL:n needs n >= 2");
        d = adjoint(TypeTag::A, n - 1);
        d.delta_unit = coweight(d, 0, 0);
    } else if (head == "Sp" || head == "PSp") {
        need_arg();
        int m = parse_int(arg, atom);
        if (m < 2 || m % 2) throw Error("InvalidIsogeny", head + ":m needs m even and positive");
        int l = m / 2;
        TypeTag t = l == 1 ? TypeTag::A : TypeTag::C;
        if (head == "Sp") {
            d = semisimple(t, l, {});
        } else {
            d = adjoint(t, l);
            d.delta_unit = coweight(d, 0, l - 1);
        }
    } else if (head == "Spin" || head == "SO") {
        need_arg();
        int m = parse_int(arg, atom);
        if (m < 5) throw Error("InvalidIsogeny", head + ":m needs m >= 5");
        int l = m / 2;
        if (m % 2) {
            if (head == "Spin") {
                d = semisimple(TypeTag::B, l, {});
            } else {
                d = adjoint(TypeTag::B, l);
                d.delta_unit = coweight(d, 0, 0);
            }
        } else {
            if (head == "Spin") {
                d = semisimple(TypeTag::D, l, {});
            } else {
                d = semisimple(TypeTag::D, l, {0});
                d.delta_unit = coweight(d, 0, 0);
            }
        }
    } else if (head == "PSO") {
        need_arg();
        int m = parse_int(arg, atom);
        if (m < 6 || m % 2) throw Error("InvalidIsogeny", "PSO:2l needs l >= 3");
        int l = m / 2;
        d = adjoint(TypeTag::D, l);
        if (l % 2) d.delta_unit = coweight(d, 0, l - 1);
    } else if (head == "Omega+" || head == "Omega-") {
        need_arg();
        int m = parse_int(arg, atom);
        int l = m / 2;
        if (m % 2 || l < 4 || l % 2) throw Error("InvalidIsogeny", "Omega:2l needs l even and l >= 4");
        int idx = head == "Omega+" ? l - 1 : l - 2;
        d = semisimple(TypeTag::D, l, {idx});
        d.delta_unit = coweight(d, 0, idx);
    } else if (head == "E6sc" || head == "E7sc" || head == "E8" || head == "F4" || head == "G2") {
        if (colon != std::string::npos) throw Error("ParseError", "'" + atom + "' takes no argument");
        TypeTag t = head == "E6sc" ? TypeTag::E6 : head == "E7sc" ? TypeTag::E7 : head == "E8" ? TypeTag::E8
                  : head == "F4" ? TypeTag::F4 : TypeTag::G2;
        d = semisimple(t, 0, {});
    } else if (head == "E6ad" || head == "E7ad") {
        if (colon != std::string::npos) throw Error("ParseError", "'" + atom + "' takes no argument");
        bool six = head == "E6ad";
        d = adjoint(six ? TypeTag::E6 : TypeTag::E7, 0);
        d.delta_unit = coweight(d, 0, six ? 0 : 6);
    } else {
        throw Error("ParseError", "unknown group '" + atom + "'");
    }
    d.label = atom;
    return d;
}

}  // namespace

ReductiveDatum product_datum(const ReductiveDatum& a, const ReductiveDatum& b) {
    ReductiveDatum d;
    d.factors = a.factors;
    d.factors.insert(d.factors.end(), b.factors.begin(), b.factors.end());
    d.abelian_rank = a.abelian_rank + b.abelian_rank;
    const std::size_t sa = a.ss_dim(), sb = b.ss_dim();
    const std::size_t aa = static_cast<std::size_t>(a.abelian_rank);
    auto embed_a = [&](const QVec& v) {
        QVec w(d.dim());
        for (std::size_t i = 0; i < sa; ++i) w[i] = v[i];
        for (std::size_t i = 0; i < aa; ++i) w[sa + sb + i] = v[sa + i];
        return w;
    };
    auto embed_b = [&](const QVec& v) {
        QVec w(d.dim());
        for (std::size_t i = 0; i < sb; ++i) w[sa + i] = v[i];
        for (std::size_t i = 0; i < static_cast<std::size_t>(b.abelian_rank); ++i) w[sa + sb + aa + i] = v[sb + i];
        return w;
    };
    std::vector<QVec> gens;
    for (std::size_t j = 0; j < a.cochar.rank(); ++j) gens.push_back(embed_a(a.cochar.basis().col(j)));
    for (std::size_t j = 0; j < b.cochar.rank(); ++j) gens.push_back(embed_b(b.cochar.basis().col(j)));
    d.cochar = Lattice::from_generators(QMat::from_columns(gens, d.dim()));
    if (a.delta_unit && !b.delta_unit) d.delta_unit = embed_a(*a.delta_unit);
    if (b.delta_unit && !a.delta_unit) d.delta_unit = embed_b(*b.delta_unit);
    d.label = a.label + " x " + b.label;
    return d;
}

ReductiveDatum twist_datum(const ReductiveDatum& h, int k, const std::string& selector) {
    if (k < 1) throw Error("InvalidIsogeny", "twist order must be positive");
    DerivedParts hp = derive_parts(h);
    const std::size_t ss = h.ss_dim();
    QVec c(h.dim());
    std::string sel = selector;
    FGAbGroup a = quotient_group(h.coweight_lattice(), hp.lambda_ss);
    if (sel.empty() && a.factors.size() > 1) {
        bool has_d = std::any_of(h.factors.begin(), h.factors.end(), [](const auto& f) { return f.tag == TypeTag::D; });
        if (!has_d) throw Error("InvalidIsogeny", "non-cyclic centre: a twist selector is required");
        sel = "eps1";
    }
    if (sel.empty()) {
        if (a.factors.empty()) {
            if (k != 1) throw Error("InvalidIsogeny", "no central element of the requested order");
        } else {
            Int n = a.factors[0];
            if (n % k != 0) throw Error("InvalidIsogeny", "twist order does not divide the centre");
            c = scaled(a.generators->col(0), Rat(Int(n / k)));
        }
    } else if (sel == "eps1" || sel == "omega+" || sel == "omega-") {
        std::size_t f = 0;
        while (f < h.factors.size() && h.factors[f].tag != TypeTag::D) ++f;
        if (f == h.factors.size()) throw Error("InvalidIsogeny", "selector '" + sel + "' needs a D factor");
        int l = h.factors[f].rank;
        int idx = sel == "eps1" ? 0 : sel == "omega+" ? l - 1 : l - 2;
        c = coweight(h, f, idx);
    } else {
        std::vector<Rat> v;
        std::stringstream ss_in(sel);
        std::string tok;
        while (std::getline(ss_in, tok, ',')) v.push_back(parse_rat(tok));
        if (v.size() != ss && v.size() != h.dim())
            throw Error("ParseError", "twist vector must have the semisimple or ambient dimension");
        for (std::size_t i = 0; i < ss; ++i) c[i] = v[i];
    }
    for (std::size_t i = ss; i < h.dim(); ++i) c[i] = 0;
    if (!h.coweight_lattice().contains(c)) throw Error("InvalidIsogeny", "twist element is not a coweight");
    int ord = 1;
    while (!hp.lambda_ss.contains(scaled(c, Rat(ord)))) ++ord;
    if (ord != k) throw Error("InvalidIsogeny", "twist element has order " + std::to_string(ord) + ", expected " + std::to_string(k));

    ReductiveDatum d;
    d.factors = h.factors;
    d.abelian_rank = h.abelian_rank + 1;
    auto embed = [&](const QVec& v) {
        QVec w(d.dim());
        for (std::size_t i = 0; i < h.dim(); ++i) w[i] = v[i];
        return w;
    };
    std::vector<QVec> gens;
    for (std::size_t j = 0; j < h.cochar.rank(); ++j) gens.push_back(embed(h.cochar.basis().col(j)));
    QVec e(d.dim());
    e[h.dim()] = k;
    gens.push_back(e);
    QVec ce = embed(c);
    ce[h.dim()] = 1;
    gens.push_back(ce);
    d.cochar = Lattice::from_generators(QMat::from_columns(gens, d.dim()));
    d.delta_unit = ce;
    d.label = "C[mu:" + std::to_string(k) + (selector.empty() ? "" : ":" + selector) + "](" + h.label + ")";
    return d;
}

// ---------- group spec grammar ----------

namespace {

struct SpecParser {
    std::string s;
    std::size_t i = 0;

    bool at_end() const { return i >= s.size(); }
    char peek() const { return at_end() ? '\0' : s[i]; }
    void expect(char ch) {
        if (peek() != ch) throw Error("ParseError", std::string("expected '") + ch + "' at position " + std::to_string(i) + " in group spec");
        ++i;
    }

    GroupSpec product() {
        GroupSpec first = factor();
        if (peek() != 'x') return first;
        GroupSpec p;
        p.kind = GroupSpec::Kind::Product;
        p.children.push_back(first);
        while (peek() == 'x') {
            ++i;
            p.children.push_back(factor());
        }
        return p;
    }

    GroupSpec factor() {
        if (s.compare(i, 2, "C[") == 0) {
            i += 2;
            if (s.compare(i, 3, "mu:") != 0) throw Error("ParseError", "twist must read C[mu:k](...)");
            i += 3;
            std::size_t st = i;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++i;
            GroupSpec t;
            t.kind = GroupSpec::Kind::Twist;
            t.twist_order = parse_int(s.substr(st, i - st), s);
            if (peek() == ':') {
                ++i;
                st = i;
                while (!at_end() && peek() != ']') ++i;
                t.selector = s.substr(st, i - st);
                if (t.selector.empty()) throw Error("ParseError", "empty twist selector");
            }
            expect(']');
            expect('(');
            t.children.push_back(product());
            expect(')');
            return t;
        }
        std::size_t st = i;
        while (!at_end() && peek() != 'x' && peek() != ')' && peek() != '(') ++i;
        GroupSpec a;
        a.atom = s.substr(st, i - st);
        if (a.atom.empty()) throw Error("ParseError", "empty group name at position " + std::to_string(st));
        return a;
    }
};

}  // namespace

GroupSpec parse_group_spec(const std::string& text) {
    SpecParser p;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) p.s += ch;
    if (p.s.empty()) throw Error("ParseError", "empty group spec");
    GroupSpec g = p.product();
    if (!p.at_end()) throw Error("ParseError", "trailing characters in group spec at position " + std::to_string(p.i));
    build_datum(g);  // validates atoms and isogeny constraints
    return g;
}

std::string GroupSpec::to_string() const {
    switch (kind) {
        case Kind::Atom: return atom;
        case Kind::Product: {
            std::string out;
            for (std::size_t j = 0; j < children.size(); ++j) out += (j ? " x " : "") + children[j].to_string();
            return out;
        }
        case Kind::Twist:
            return "C[mu:" + std::to_string(twist_order) + (selector.empty() ? "" : ":" + selector) + "](" +
                   children[0].to_string() + ")";
    }
    return "";
}

bool GroupSpec::operator==(const GroupSpec& o) const {
    return kind == o.kind && atom == o.atom && twist_order == o.twist_order && selector == o.selector &&
           children == o.children;
}

ReductiveDatum build_datum(const GroupSpec& g) {
    switch (g.kind) {
        case GroupSpec::Kind::Atom: return build_atom(g.atom);
        case GroupSpec::Kind::Product: {
            ReductiveDatum d = build_datum(g.children[0]);
            for (std::size_t j = 1; j < g.children.size(); ++j) d = product_datum(d, build_datum(g.children[j]));
            return d;
        }
        case GroupSpec::Kind::Twist: return twist_datum(build_datum(g.children[0]), g.twist_order, g.selector);
    }
    throw Error("ParseError", "bad spec");
}

ReductiveDatum build_named(const std::string& text) {
    ReductiveDatum d = build_datum(parse_group_spec(text));
    d.label = parse_group_spec(text).to_string();
    return d;
}

// ---------- custom datum text ----------

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

std::string unbracket(const std::string& s) {
    std::string t = trim(s);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw Error("ParseError", "expected a bracketed list: " + t);
    return t.substr(1, t.size() - 2);
}

}  // namespace

ReductiveDatum parse_datum_text(const std::string& text) {
    std::string joined;
    std::vector<std::pair<std::string, std::string>> kv;
    std::stringstream in(text);
    std::string line, key, val;
    auto flush = [&]() {
        if (!key.empty()) kv.emplace_back(key, val);
        key.clear();
        val.clear();
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        auto eq = line.find('=');
        if (eq != std::string::npos) {
            flush();
            key = trim(line.substr(0, eq));
            val = trim(line.substr(eq + 1));
        } else {
            if (key.empty()) throw Error("ParseError", "datum line without key: " + line);
            val += " " + trim(line);
        }
    }
    flush();

    ReductiveDatum d;
    bool have_rank = false, have_cochar = false;
    std::vector<QVec> rows;
    for (const auto& [k, v] : kv) {
        if (k == "abelian_rank") {
            d.abelian_rank = parse_int(trim(v), v);
            have_rank = true;
        } else if (k == "factors") {
            for (const auto& tok : split_top(unbracket(v))) d.factors.push_back(simple_factor_table(tok));
        } else if (k == "cochar" || k == "cochar_generators") {
            for (const auto& r : split_top(unbracket(v))) {
                QVec row;
                for (const auto& x : split_top(unbracket(r))) row.push_back(parse_rat(x));
                rows.push_back(row);
            }
            have_cochar = true;
        } else {
            throw Error("ParseError", "unknown datum key '" + k + "'");
        }
    }
    if (!have_rank || !have_cochar) throw Error("ParseError", "datum needs abelian_rank and cochar");
    for (const auto& r : rows)
        if (r.size() != d.dim()) throw Error("ParseError", "cochar row length differs from the ambient dimension");
    d.cochar = Lattice::from_generators(QMat::from_columns(rows, d.dim()));
    d.label = "custom";
    return d;
}

}  // namespace piclat
