#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace piclat {

using Int = mpz_class;
using Rat = mpq_class;
using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;

// Every failure carries a stable kind tag (e.g. "NotASublattice") that the CLI maps to exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t ncols = 0) {
        std::size_t c = rows.empty() ? ncols : rows[0].size();
        Matrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i].at(j);
        return m;
    }
    static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t nrows) {
        Matrix m(nrows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < nrows; ++i) m(i, j) = cols[j].at(i);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(r_);
        for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
    }
    void set_col(std::size_t j, const std::vector<T>& v) {
        for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v.at(i);
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    Matrix operator*(const Matrix& o) const {
        if (c_ != o.r_) throw Error("AmbientMismatch", "matrix product dimensions");
        Matrix p(r_, o.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const T& x = (*this)(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
            }
        return p;
    }
    std::vector<T> operator*(const std::vector<T>& v) const {
        if (c_ != v.size()) throw Error("AmbientMismatch", "matrix-vector dimensions");
        std::vector<T> out(r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }
    Matrix operator-(const Matrix& o) const {
        Matrix d = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) d.a_[i] -= o.a_.at(i);
        return d;
    }
    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix hcat(const Matrix& o) const {
        if (r_ != o.r_ && c_ && o.c_) throw Error("AmbientMismatch", "hcat row mismatch");
        std::size_t r = c_ ? r_ : o.r_;
        Matrix m(r, c_ + o.c_);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < o.c_; ++j) m(i, c_ + j) = o(i, j);
        }
        return m;
    }
    Matrix vcat(const Matrix& o) const {
        if (c_ != o.c_ && r_ && o.r_) throw Error("AmbientMismatch", "vcat column mismatch");
        std::size_t c = r_ ? c_ : o.c_;
        Matrix m(r_ + o.r_, c);
        for (std::size_t j = 0; j < c; ++j) {
            for (std::size_t i = 0; i < r_; ++i) m(i, j) = (*this)(i, j);
            for (std::size_t i = 0; i < o.r_; ++i) m(r_ + i, j) = o(i, j);
        }
        return m;
    }
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix m(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }
    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using ZMat = Matrix<Int>;
using QMat = Matrix<Rat>;

// conversions and small helpers
QMat to_rat(const ZMat& m);
QVec to_rat(const ZVec& v);
Int denominator_lcm(const QMat& m);
Int denominator_lcm(const QVec& v);
ZMat scaled_to_int(const QMat& m, const Int& scale);
bool is_integral(const QVec& v);
bool is_integral(const QMat& m);
ZVec to_int(const QVec& v);  // throws if not integral
bool is_zero(const QVec& v);
Rat dot(const QVec& a, const QVec& b);
std::string rat_str(const Rat& q);
Rat parse_rat(const std::string& s);

// rational linear algebra
std::size_t rat_rank(QMat a);
QMat rat_inverse(const QMat& a);      // throws DegeneratePairing when singular
QMat rat_kernel(const QMat& a);       // columns span {x : a x = 0}
std::optional<QVec> rat_solve(const QMat& a, const QVec& b);

// integer normal forms
struct SNFResult {
    ZVec factors;  // diagonal of U*M*V, length min(rows, cols)
    ZMat U, V;
};
SNFResult snf(const ZMat& m);
ZVec snf_factors(const ZMat& m);  // diagonal only, no transforms
ZMat hnf_rows(ZMat a);  // row-style HNF with zero rows dropped
ZMat integer_kernel(const ZMat& a);  // columns: basis of {x in Z^c : a x = 0}
std::optional<ZVec> solve_integer(const ZMat& a, const ZVec& b);

// Lattice spanned by rational columns inside Q^m, stored by its canonical HNF basis.
class Lattice {
public:
    Lattice() = default;
    static Lattice zero(std::size_t m);
    static Lattice standard(std::size_t m);
    static Lattice from_generators(const QMat& gens);  // columns, dependencies allowed

    std::size_t ambient_dim() const { return m_; }
    std::size_t rank() const { return basis_.cols(); }
    const QMat& basis() const { return basis_; }
    QVec basis_vector(std::size_t j) const { return basis_.col(j); }

    std::optional<QVec> coordinates(const QVec& v) const;  // rational coordinates, if v in span
    bool in_span(const QVec& v) const { return coordinates(v).has_value(); }
    bool contains(const QVec& v) const;
    bool contains(const Lattice& o) const;
    ZVec integer_coordinates(const QVec& v) const;  // throws NotInLattice

    bool operator==(const Lattice& o) const { return m_ == o.m_ && basis_ == o.basis_; }
    bool operator!=(const Lattice& o) const { return !(*this == o); }

private:
    std::size_t m_ = 0;
    QMat basis_;
    std::vector<std::size_t> pivots_;
};

Lattice lattice_dual(const Lattice& l, const QMat& pairing);
Lattice lattice_dual(const Lattice& l);  // identity pairing
Lattice lattice_intersect(const Lattice& a, const Lattice& b);
Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_saturate(const Lattice& l, const QMat& subspace);
Lattice lattice_image(const QMat& map, const Lattice& l);
// {x in l : map x in target}
Lattice lattice_preimage(const Lattice& l, const QMat& map, const Lattice& target);
Lattice lattice_add_vectors(const Lattice& l, const std::vector<QVec>& vs);

// Finitely generated abelian group as an invariant-factor chain; 0 marks a free factor.
struct FGAbGroup {
    ZVec factors;                    // d1 | d2 | ... , units dropped, zeros last
    std::optional<QMat> generators;  // one ambient column per factor

    static FGAbGroup trivial() { return {}; }
    // normalizes any list of cyclic orders (1 = trivial, 0 = Z)
    static FGAbGroup from_cyclic(const ZVec& orders);

    bool is_trivial() const { return factors.empty(); }
    std::size_t free_rank() const;
    bool is_finite() const { return free_rank() == 0; }
    Int order() const;  // 0 when infinite
    FGAbGroup torsion() const;
    bool same_type(const FGAbGroup& o) const { return factors == o.factors; }
    std::string to_string() const;
};

bool operator==(const FGAbGroup& a, const FGAbGroup& b);

FGAbGroup quotient_group(const Lattice& big, const Lattice& small, bool with_generators = true);

struct ImageCoker {
    FGAbGroup subgroup;
    FGAbGroup cokernel;
};
ImageCoker image_in_finite_quotient(const Lattice& big, const Lattice& small,
                                    const std::vector<QVec>& elements);

struct Congruence {
    QVec form;  // linear form on Q^m
    Rat modulus;
};
// {p : form(p) in modulus*Z for every condition}; over Z^m by default, over Q^m otherwise
Lattice congruence_lattice(std::size_t m, const std::vector<Congruence>& conds,
                           bool integral_domain = true);

}  // namespace piclat
