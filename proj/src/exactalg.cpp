#include "piclat/exactalg.hpp"

#include <algorithm>
#include <cctype>

namespace piclat {

QMat to_rat(const ZMat& m) {
    QMat q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j);
    return q;
}

QVec to_rat(const ZVec& v) { return QVec(v.begin(), v.end()); }

Int denominator_lcm(const QMat& m) {
    Int d = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d = lcm(d, Int(m(i, j).get_den()));
    return d;
}

Int denominator_lcm(const QVec& v) {
    Int d = 1;
    for (const auto& x : v) d = lcm(d, Int(x.get_den()));
    return d;
}

ZMat scaled_to_int(const QMat& m, const Int& scale) {
    ZMat z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rat x = m(i, j) * scale;
            if (x.get_den() != 1) throw Error("Internal", "scale does not clear denominators");
            z(i, j) = x.get_num();
        }
    return z;
}

bool is_integral(const QVec& v) {
    for (const auto& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

bool is_integral(const QMat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j).get_den() != 1) return false;
    return true;
}

ZVec to_int(const QVec& v) {
    ZVec z(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].get_den() != 1) throw Error("NotInLattice", "non-integral coordinate " + rat_str(v[i]));
        z[i] = v[i].get_num();
    }
    return z;
}

bool is_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

Rat dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw Error("AmbientMismatch", "dot product dimensions");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

Rat parse_rat(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    auto digits = [](const std::string& t, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false)) throw Error("ParseError", "bad rational '" + raw + "'");
    if (num[0] == '+') num = num.substr(1);
    Int n(num), d(den);
    if (d == 0) throw Error("ParseError", "zero denominator in '" + raw + "'");
    Rat q(n, d);
    q.canonicalize();
    return q;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMat& a) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        Rat inv = 1 / a(r, c);
        for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

std::size_t rat_rank(QMat a) { return rref(a).size(); }

QMat rat_inverse(const QMat& a) {
    std::size_t n = a.rows();
    if (a.cols() != n) throw Error("DegeneratePairing", "inverse of a non-square matrix");
    QMat aug = a.hcat(to_rat(ZMat::identity(n)));
    auto piv = rref(aug);
    if (piv.size() < n || (n && piv.back() >= n)) throw Error("DegeneratePairing", "singular matrix");
    return aug.block(0, n, n, n);
}

QMat rat_kernel(const QMat& a) {
    QMat r = a;
    auto piv = rref(r);
    std::vector<bool> is_piv(a.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<QVec> cols;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_piv[f]) continue;
        QVec v(a.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
        cols.push_back(v);
    }
    return QMat::from_columns(cols, a.cols());
}

std::optional<QVec> rat_solve(const QMat& a, const QVec& b) {
    QMat aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b.at(i);
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    QVec x(a.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, a.cols());
    return x;
}

// ---------- integer normal forms ----------

namespace {

SNFResult snf_impl(const ZMat& m, bool track) {
    const std::size_t r = m.rows(), c = m.cols();
    ZMat a = m, u = ZMat::identity(track ? r : 0), v = ZMat::identity(track ? c : 0);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < c; ++k) std::swap(a(i, k), a(j, k));
        if (track)
            for (std::size_t k = 0; k < r; ++k) std::swap(u(i, k), u(j, k));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < r; ++k) std::swap(a(k, i), a(k, j));
        if (track)
            for (std::size_t k = 0; k < c; ++k) std::swap(v(k, i), v(k, j));
    };
    // row_i += f * row_j
    auto add_row = [&](std::size_t i, std::size_t j, const Int& f) {
        for (std::size_t k = 0; k < c; ++k) a(i, k) += f * a(j, k);
        if (track)
            for (std::size_t k = 0; k < r; ++k) u(i, k) += f * u(j, k);
    };
    auto add_col = [&](std::size_t i, std::size_t j, const Int& f) {
        for (std::size_t k = 0; k < r; ++k) a(k, i) += f * a(k, j);
        if (track)
            for (std::size_t k = 0; k < c; ++k) v(k, i) += f * v(k, j);
    };

    const std::size_t n = std::min(r, c);
    for (std::size_t t = 0; t < n; ++t) {
        // smallest nonzero entry of the trailing block becomes the pivot
        bool found = false;
        std::size_t pi = t, pj = t;
        Int best;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j)
                if (a(i, j) != 0 && (!found || abs(a(i, j)) < best)) {
                    best = abs(a(i, j));
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        for (;;) {
            bool again = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a(i, t) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                add_row(i, t, -q);
                if (a(i, t) != 0) {
                    swap_rows(i, t);
                    again = true;
                }
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a(t, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                add_col(j, t, -q);
                if (a(t, j) != 0) {
                    swap_cols(j, t);
                    again = true;
                }
            }
            if (again) continue;
            // divisibility: fold an offending row into row t and retry
            bool bad = false;
            for (std::size_t i = t + 1; i < r && !bad; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        add_row(t, i, 1);
                        bad = true;
                        break;
                    }
            if (!bad) break;
        }
        if (a(t, t) < 0) {
            for (std::size_t k = 0; k < c; ++k) a(t, k) = -a(t, k);
            if (track)
                for (std::size_t k = 0; k < r; ++k) u(t, k) = -u(t, k);
        }
    }
    SNFResult res;
    res.factors.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.factors[i] = a(i, i);
    res.U = std::move(u);
    res.V = std::move(v);
    return res;
}

}  // namespace

SNFResult snf(const ZMat& m) { return snf_impl(m, true); }

ZVec snf_factors(const ZMat& m) { return snf_impl(m, false).factors; }

ZMat hnf_rows(ZMat a) {
    const std::size_t r = a.rows(), c = a.cols();
    std::vector<ZVec> rows(r);
    for (std::size_t i = 0; i < r; ++i) rows[i] = a.row(i);
    std::size_t p = 0;
    for (std::size_t j = 0; j < c && p < r; ++j) {
        for (;;) {
            std::size_t best = r;
            for (std::size_t i = p; i < r; ++i)
                if (rows[i][j] != 0 && (best == r || abs(rows[i][j]) < abs(rows[best][j]))) best = i;
            if (best == r) break;
            std::swap(rows[p], rows[best]);
            bool rest = false;
            for (std::size_t i = p + 1; i < r; ++i) {
                if (rows[i][j] == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), rows[i][j].get_mpz_t(), rows[p][j].get_mpz_t());
                if (q != 0)
                    for (std::size_t k = j; k < c; ++k) rows[i][k] -= q * rows[p][k];
                if (rows[i][j] != 0) rest = true;
            }
            if (!rest) break;
        }
        if (rows[p][j] == 0) continue;
        if (rows[p][j] < 0)
            for (std::size_t k = j; k < c; ++k) rows[p][k] = -rows[p][k];
        for (std::size_t i = 0; i < p; ++i) {
            if (rows[i][j] == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][j].get_mpz_t(), rows[p][j].get_mpz_t());
            if (q != 0)
                for (std::size_t k = j; k < c; ++k) rows[i][k] -= q * rows[p][k];
        }
        ++p;
    }
    ZMat h(p, c);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t k = 0; k < c; ++k) h(i, k) = rows[i][k];
    return h;
}

ZMat integer_kernel(const ZMat& a) {
    const std::size_t r = a.rows(), c = a.cols();
    if (c == 0) return ZMat(0, 0);
    ZMat aug(c, r + c);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < r; ++j) aug(i, j) = a(j, i);
        aug(i, r + i) = 1;
    }
    ZMat h = hnf_rows(aug);
    std::vector<ZVec> cols;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < r; ++j)
            if (h(i, j) != 0) {
                left_zero = false;
                break;
            }
        if (!left_zero) continue;
        ZVec v(c);
        for (std::size_t k = 0; k < c; ++k) v[k] = h(i, r + k);
        cols.push_back(v);
    }
    return ZMat::from_columns(cols, c);
}

std::optional<ZVec> solve_integer(const ZMat& a, const ZVec& b) {
    auto s = snf(a);
    ZVec cvec = s.U * b;
    ZVec y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Int d = i < s.factors.size() ? s.factors[i] : Int(0);
        if (d == 0) {
            if (cvec[i] != 0) return std::nullopt;
            continue;
        }
        if (cvec[i] % d != 0) return std::nullopt;
        y[i] = cvec[i] / d;
    }
    return s.V * y;
}

// ---------- lattices ----------

Lattice Lattice::zero(std::size_t m) {
    Lattice l;
    l.m_ = m;
    l.basis_ = QMat(m, 0);
    return l;
}

Lattice Lattice::standard(std::size_t m) { return from_generators(to_rat(ZMat::identity(m))); }

Lattice Lattice::from_generators(const QMat& gens) {
    Lattice l;
    l.m_ = gens.rows();
    if (gens.cols() == 0) {
        l.basis_ = QMat(l.m_, 0);
        return l;
    }
    Int d = denominator_lcm(gens);
    ZMat h = hnf_rows(scaled_to_int(gens, d).transpose());
    l.basis_ = QMat(l.m_, h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool seen = false;
        for (std::size_t k = 0; k < l.m_; ++k) {
            if (!seen && h(i, k) != 0) {
                l.pivots_.push_back(k);
                seen = true;
            }
            l.basis_(k, i) = Rat(h(i, k), d);
            l.basis_(k, i).canonicalize();
        }
    }
    return l;
}

std::optional<QVec> Lattice::coordinates(const QVec& v) const {
    if (v.size() != m_) throw Error("AmbientMismatch", "vector dimension differs from lattice ambient");
    QVec res = v;
    QVec x(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        std::size_t p = pivots_[i];
        if (res[p] == 0) continue;
        x[i] = res[p] / basis_(p, i);
        for (std::size_t k = 0; k < m_; ++k)
            if (basis_(k, i) != 0) res[k] -= x[i] * basis_(k, i);
    }
    if (!is_zero(res)) return std::nullopt;
    return x;
}

bool Lattice::contains(const QVec& v) const {
    auto c = coordinates(v);
    return c && is_integral(*c);
}

bool Lattice::contains(const Lattice& o) const {
    if (o.m_ != m_) throw Error("AmbientMismatch", "lattices in different ambients");
    for (std::size_t j = 0; j < o.rank(); ++j)
        if (!contains(o.basis_.col(j))) return false;
    return true;
}

ZVec Lattice::integer_coordinates(const QVec& v) const {
    auto c = coordinates(v);
    if (!c || !is_integral(*c)) throw Error("NotInLattice", "vector is not in the lattice");
    return to_int(*c);
}

Lattice lattice_dual(const Lattice& l, const QMat& pairing) {
    if (l.rank() == 0) return Lattice::zero(l.ambient_dim());
    const QMat& b = l.basis();
    QMat g = b.transpose() * pairing * b;
    QMat ginv;
    try {
        ginv = rat_inverse(g);
    } catch (const Error&) {
        throw Error("DegeneratePairing", "pairing is singular on the span of the lattice");
    }
    return Lattice::from_generators(b * ginv);
}

Lattice lattice_dual(const Lattice& l) {
    return lattice_dual(l, to_rat(ZMat::identity(l.ambient_dim())));
}

Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw Error("AmbientMismatch", "intersect");
    if (a.rank() == 0 || b.rank() == 0) return Lattice::zero(a.ambient_dim());
    Int d = lcm(denominator_lcm(a.basis()), denominator_lcm(b.basis()));
    ZMat za = scaled_to_int(a.basis(), d), zb = scaled_to_int(b.basis(), d);
    for (std::size_t i = 0; i < zb.rows(); ++i)
        for (std::size_t j = 0; j < zb.cols(); ++j) zb(i, j) = -zb(i, j);
    ZMat k = integer_kernel(za.hcat(zb));
    QMat top = to_rat(k.block(0, 0, a.rank(), k.cols()));
    return Lattice::from_generators(a.basis() * top);
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw Error("AmbientMismatch", "sum");
    return Lattice::from_generators(a.basis().hcat(b.basis()));
}

Lattice lattice_saturate(const Lattice& l, const QMat& subspace) {
    if (subspace.rows() != l.ambient_dim()) throw Error("AmbientMismatch", "saturate");
    if (l.rank() == 0) return l;
    QMat ann = rat_kernel(subspace.transpose()).transpose();  // rows vanish on the subspace
    if (ann.rows() == 0) return l;
    QMat m = ann * l.basis();
    ZMat k = integer_kernel(scaled_to_int(m, denominator_lcm(m)));
    return Lattice::from_generators(l.basis() * to_rat(k));
}

Lattice lattice_image(const QMat& map, const Lattice& l) {
    return Lattice::from_generators(map * l.basis());
}

Lattice lattice_preimage(const Lattice& l, const QMat& map, const Lattice& target) {
    if (map.cols() != l.ambient_dim() || map.rows() != target.ambient_dim())
        throw Error("AmbientMismatch", "preimage");
    if (l.rank() == 0) return l;
    QMat tb = map * l.basis();
    QMat s = target.basis();
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) = -s(i, j);
    QMat m = tb.hcat(s);
    if (m.rows() == 0) return l;
    ZMat k = integer_kernel(scaled_to_int(m, denominator_lcm(m)));
    return Lattice::from_generators(l.basis() * to_rat(k.block(0, 0, l.rank(), k.cols())));
}

Lattice lattice_add_vectors(const Lattice& l, const std::vector<QVec>& vs) {
    if (vs.empty()) return l;
    return Lattice::from_generators(l.basis().hcat(QMat::from_columns(vs, l.ambient_dim())));
}

// ---------- finitely generated abelian groups ----------

FGAbGroup FGAbGroup::from_cyclic(const ZVec& orders) {
    ZMat d(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) d(i, i) = abs(orders[i]);
    FGAbGroup g;
    for (const auto& f : snf_factors(d))
        if (f != 1) g.factors.push_back(f);
    return g;
}

std::size_t FGAbGroup::free_rank() const {
    return static_cast<std::size_t>(std::count(factors.begin(), factors.end(), Int(0)));
}

Int FGAbGroup::order() const {
    Int o = 1;
    for (const auto& f : factors) {
        if (f == 0) return 0;
        o *= f;
    }
    return o;
}

FGAbGroup FGAbGroup::torsion() const {
    FGAbGroup t;
    for (const auto& f : factors)
        if (f != 0) t.factors.push_back(f);
    return t;
}

std::string FGAbGroup::to_string() const {
    if (factors.empty()) return "0";
    std::string s;
    for (const auto& f : factors) {
        if (!s.empty()) s += " x ";
        s += f == 0 ? std::string("Z") : "Z/" + f.get_str();
    }
    return s;
}

bool operator==(const FGAbGroup& a, const FGAbGroup& b) { return a.factors == b.factors; }

FGAbGroup quotient_group(const Lattice& big, const Lattice& small, bool with_generators) {
    if (big.ambient_dim() != small.ambient_dim()) throw Error("AmbientMismatch", "quotient");
    const std::size_t rb = big.rank(), rs = small.rank();
    ZMat x(rb, rs);
    for (std::size_t j = 0; j < rs; ++j) {
        auto c = big.coordinates(small.basis().col(j));
        if (!c || !is_integral(*c)) throw Error("NotASublattice", "small lattice is not contained in big lattice");
        for (std::size_t i = 0; i < rb; ++i) x(i, j) = c->at(i).get_num();
    }
    auto s = snf(x);
    FGAbGroup g;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < rs; ++i)
        if (s.factors[i] != 1) {
            g.factors.push_back(s.factors[i]);
            keep.push_back(i);
        }
    for (std::size_t i = rs; i < rb; ++i) {
        g.factors.push_back(0);
        keep.push_back(i);
    }
    if (with_generators) {
        QMat gens = big.basis() * rat_inverse(to_rat(s.U));
        QMat sel(big.ambient_dim(), keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j) sel.set_col(j, gens.col(keep[j]));
        g.generators = sel;
    }
    return g;
}

ImageCoker image_in_finite_quotient(const Lattice& big, const Lattice& small,
                                    const std::vector<QVec>& elements) {
    for (const auto& e : elements)
        if (!big.contains(e)) throw Error("NotInBigLattice", "element is not in the big lattice");
    Lattice mid = lattice_add_vectors(small, elements);
    return {quotient_group(mid, small), quotient_group(big, mid)};
}

Lattice congruence_lattice(std::size_t m, const std::vector<Congruence>& conds, bool integral_domain) {
    if (m == 0) return Lattice::zero(0);
    std::vector<QVec> fs;
    for (const auto& c : conds) {
        if (c.form.size() != m) throw Error("AmbientMismatch", "condition dimension");
        if (c.modulus <= 0) throw Error("InvalidParams", "modulus must be positive");
        QVec f = c.form;
        for (auto& x : f) x /= c.modulus;
        fs.push_back(f);
    }
    QMat gens = integral_domain ? to_rat(ZMat::identity(m)) : QMat(m, 0);
    if (!fs.empty()) gens = gens.hcat(QMat::from_columns(fs, m));
    Lattice span = Lattice::from_generators(gens);
    if (span.rank() < m) throw Error("DegeneratePairing", "conditions leave a parameter unconstrained");
    return lattice_dual(span);
}

}  // namespace piclat
