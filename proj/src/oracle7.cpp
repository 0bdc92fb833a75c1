#include "piclat/oracle7.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "piclat/exactalg.hpp"

namespace piclat::oracle {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error("InvalidParams", msg); }

long v2(long x) {
    long k = 0;
    for (x = std::labs(x); x && x % 2 == 0; x /= 2) ++k;
    return k;
}

Value mult(long num, long den = 1) {
    Value v;
    v.is_group = false;
    v.multiplier = mpq_class(num, den);
    v.multiplier.canonicalize();
    return v;
}

Value grp(const std::vector<long long>& orders) {
    Value v;
    v.invariants = normalize(orders);
    return v;
}

Value z2_if(bool c) { return grp(c ? std::vector<long long>{2} : std::vector<long long>{}); }

bool divides(long a, long b) { return a != 0 && b % a == 0; }

// ---- type A ----

Value family_a(const FamilyParams& p, Quantity q) {
    const long n = p.n, r = p.r, s = p.s;
    const long L = std::lcm(r * s, n);
    const long sc = L / n;
    const bool twice = n % 2 == 0 && v2(r) == v2(s) && v2(n) <= 2 * v2(r);
    const long delta = ((p.Delta % s) + s) % s;
    const long a = delta * (L / (r * s)), m = n / r;
    switch (q) {
        case Quantity::MULTIPLIER_SC_EVEN: return mult(sc);
        case Quantity::MULTIPLIER_EVEN: return mult(twice ? 2 * sc : sc);
        case Quantity::COKER_RG: return z2_if(twice);
        case Quantity::COKER_EV_TILDE: return grp({std::gcd(a, m)});
        case Quantity::COKER_EV: return grp({twice ? std::gcd(2 * a, m) : std::gcd(a, m)});
        default: bad("quantity not defined for family A");
    }
}

// ---- types B and C; multipliers relative to the basic form (half the trace form for C) ----

Value family_bc(const FamilyParams& p, Quantity q) {
    const int l = p.l;
    const bool type_c = p.derived == Iso::Sp || p.derived == Iso::PSp;
    long sc = 1, ev = 1;
    bool rg = false;
    switch (p.derived) {
        case Iso::Spin: sc = 1; ev = 1; break;
        case Iso::SO: sc = 1; ev = 2; rg = true; break;
        case Iso::Sp: sc = 2; ev = 2; break;
        case Iso::PSp:
            sc = l % 2 == 0 ? 2 : 4;
            ev = l % 4 == 0 ? 2 : (l % 2 == 0 ? 4 : 8);
            rg = l % 4 != 0;
            break;
        default: bad("not a B/C isogeny tag");
    }
    const long den = type_c ? 2 : 1;
    const bool zero = p.derived == Iso::SO || p.derived == Iso::PSp ||
                      (p.derived == Iso::Sp && p.ord != 1 && l % 2 == 1);
    switch (q) {
        case Quantity::MULTIPLIER_SC_EVEN: return mult(sc, den);
        case Quantity::MULTIPLIER_EVEN: return mult(ev, den);
        case Quantity::COKER_RG: return z2_if(rg);
        case Quantity::COKER_EV:
        case Quantity::COKER_EV_TILDE: return z2_if(!zero);
        default: bad("quantity not defined for family BC");
    }
}

// ---- type D ----

Value family_d(const FamilyParams& p, Quantity q) {
    const int l = p.l;
    const Iso D = p.derived, S = p.ss;
    const bool l4 = l % 4 == 0, l2 = l % 4 == 2, odd = l % 2 == 1;
    long sc = 0, ev = 0;
    if (D == Iso::Spin) sc = 1;
    else if (D == Iso::SO && S == Iso::SO) sc = 1;
    else if (D == Iso::Omega && S == Iso::Omega && l4) sc = 1;
    else if (D == Iso::SO && S == Iso::PSO) sc = 2;
    else if (D == Iso::PSO && !odd) sc = 2;
    else if (D == Iso::Omega && S == Iso::Omega && l2) sc = 2;
    else if (D == Iso::Omega && S == Iso::PSO) sc = 2;
    else if (D == Iso::PSO && odd) sc = 4;

    if (D == Iso::Spin) ev = 1;
    else if (D == Iso::SO) ev = 2;
    else if ((D == Iso::PSO || D == Iso::Omega) && l4) ev = 2;
    else if ((D == Iso::PSO || D == Iso::Omega) && l2) ev = 4;
    else if (D == Iso::PSO && odd) ev = 8;

    const bool rg = (D == Iso::SO && S == Iso::SO) || (D == Iso::Omega && S == Iso::Omega && l4) ||
                    (D == Iso::Omega && l2) || (D == Iso::PSO && !l4);

    const bool zero_ss = p.ord == 1;
    auto cok = [&](bool full) -> Value {
        if (D == Iso::Spin && zero_ss) return odd ? grp({4}) : grp({2, 2});
        bool two = (D == Iso::Spin && p.ord == 2) || (D == Iso::SO && S == Iso::PSO && p.ord != 4) ||
                   (D == Iso::Omega && S == Iso::PSO);
        if (D == Iso::SO && S == Iso::SO) two = two || full || zero_ss;
        if (D == Iso::Omega && S == Iso::Omega) two = two || full || zero_ss;
        return z2_if(two);
    };
    switch (q) {
        case Quantity::MULTIPLIER_SC_EVEN:
            if (!sc) bad("isogeny pair not covered");
            return mult(sc);
        case Quantity::MULTIPLIER_EVEN:
            if (!ev) bad("isogeny pair not covered");
            return mult(ev);
        case Quantity::COKER_RG: return z2_if(rg);
        case Quantity::COKER_EV_TILDE: return cok(false);
        case Quantity::COKER_EV: return cok(true);
        default: bad("quantity not defined for family D");
    }
}

// ---- E6, E7, E8 ----

Value family_e(const FamilyParams& p, Quantity q) {
    const bool ad = p.derived == Iso::AD;
    long sc = 1, ev = 1;
    if (ad && p.l == 7) sc = 2, ev = 4;
    if (ad && p.l == 6) sc = 3, ev = 3;
    const long c = p.l == 7 ? 2 : (p.l == 6 ? 3 : 1);
    const bool hit = c > 1 && (p.ss == Iso::SC || (!ad && p.ss == Iso::AD && p.ord == 1));
    switch (q) {
        case Quantity::MULTIPLIER_SC_EVEN: return mult(sc);
        case Quantity::MULTIPLIER_EVEN: return mult(ev);
        case Quantity::COKER_RG: return z2_if(ad && p.l == 7);
        case Quantity::COKER_EV:
        case Quantity::COKER_EV_TILDE: return grp(hit ? std::vector<long long>{c} : std::vector<long long>{});
        default: bad("quantity not defined for family E");
    }
}

Value family_fg(Quantity q) {
    switch (q) {
        case Quantity::MULTIPLIER_SC_EVEN:
        case Quantity::MULTIPLIER_EVEN: return mult(1);
        case Quantity::COKER_RG:
        case Quantity::COKER_EV:
        case Quantity::COKER_EV_TILDE: return grp({});
        default: bad("quantity not defined for F4/G2");
    }
}

// ---- tori ----

long long quot(long long a, long long b) {  // a / b with the convention 0 / x = free
    if (a == 0) return 0;
    return a / b;
}

Value family_torus(const FamilyParams& p, Quantity q) {
    const long long N = 2LL * p.g - 2;
    long long div = 0;
    for (long x : p.d) div = std::gcd(div, static_cast<long long>(std::labs(x)));
    const long long first = div + 1 - p.g;
    std::vector<long long> orders;
    if (q == Quantity::TORUS_COKER_GAMMA_BAR) {
        if (p.g == 1 && div == 0) return grp({});
        orders.push_back(quot(N, std::gcd(N, first)));
        for (int i = 1; i < p.dim; ++i) orders.push_back(quot(N, std::gcd(static_cast<long long>(p.g - 1), div)));
    } else if (q == Quantity::TORUS_COKER_OMEGA) {
        orders.push_back(std::gcd(N, first));
        for (int i = 1; i < p.dim; ++i) orders.push_back(std::gcd(static_cast<long long>(p.g - 1), div));
    } else {
        bad("quantity not defined for tori");
    }
    return grp(orders);
}

}  // namespace

std::string quantity_name(Quantity q) {
    switch (q) {
        case Quantity::MULTIPLIER_SC_EVEN: return "multiplier-sc-even";
        case Quantity::MULTIPLIER_EVEN: return "multiplier-even";
        case Quantity::COKER_RG: return "coker-rG";
        case Quantity::COKER_EV: return "coker-ev";
        case Quantity::COKER_EV_TILDE: return "coker-ev-tilde";
        case Quantity::TORUS_COKER_OMEGA: return "coker-omega";
        case Quantity::TORUS_COKER_GAMMA_BAR: return "coker-gamma-bar";
    }
    return "?";
}

std::string iso_name(Iso i) {
    switch (i) {
        case Iso::Spin: return "Spin";
        case Iso::SO: return "SO";
        case Iso::Sp: return "Sp";
        case Iso::PSp: return "PSp";
        case Iso::PSO: return "PSO";
        case Iso::Omega: return "Omega";
        case Iso::SC: return "sc";
        case Iso::AD: return "ad";
    }
    return "?";
}

std::vector<long long> normalize(const std::vector<long long>& orders) {
    std::map<long long, std::vector<long long>> powers;  // prime -> prime powers
    std::size_t free = 0;
    for (long long o : orders) {
        o = std::llabs(o);
        if (o == 0) {
            ++free;
            continue;
        }
        for (long long pr = 2; pr * pr <= o; ++pr) {
            long long pp = 1;
            while (o % pr == 0) o /= pr, pp *= pr;
            if (pp > 1) powers[pr].push_back(pp);
        }
        if (o > 1) powers[o].push_back(o);
    }
    std::size_t len = 0;
    for (auto& [pr, v] : powers) {
        std::sort(v.rbegin(), v.rend());
        len = std::max(len, v.size());
    }
    // k-th largest invariant factor collects the k-th largest power of every prime
    std::vector<long long> out(len, 1);
    for (const auto& [pr, v] : powers)
        for (std::size_t k = 0; k < v.size(); ++k) out[k] *= v[k];
    std::reverse(out.begin(), out.end());
    out.insert(out.end(), free, 0);
    return out;
}

bool order_ratio_guard(long a, long m) {
    const long g1 = std::gcd(a, m), g2 = std::gcd(2 * a, m);
    if (g1 == 0) return g2 == 0;
    return g2 == g1 || g2 == 2 * g1;
}

void check_params(const FamilyParams& p) {
    switch (p.family) {
        case Family::A:
            if (p.n < 2 || p.r < 1 || p.s < 1 || !divides(p.r, p.s) || !divides(p.s, p.n))
                bad("family A needs n >= 2 and r | s | n");
            break;
        case Family::BC:
            if (p.l < 2) bad("family BC needs l >= 2");
            if (p.derived == Iso::Spin || p.derived == Iso::SO) {
                if (!(p.ss == Iso::Spin || p.ss == Iso::SO)) bad("type B semisimple quotient must be Spin or SO");
            } else if (p.derived == Iso::Sp || p.derived == Iso::PSp) {
                if (!(p.ss == Iso::Sp || p.ss == Iso::PSp)) bad("type C semisimple quotient must be Sp or PSp");
            } else {
                bad("bad isogeny tag for family BC");
            }
            if (p.ord != 1 && p.ord != 2) bad("delta^ss has order 1 or 2 in family BC");
            break;
        case Family::D: {
            if (p.l < 3) bad("family D needs l >= 3");
            auto rank = [](Iso i) {
                switch (i) {
                    case Iso::Spin: return 0;
                    case Iso::SO:
                    case Iso::Omega: return 1;
                    case Iso::PSO: return 2;
                    default: return -1;
                }
            };
            if (rank(p.derived) < 0 || rank(p.ss) < 0 || rank(p.ss) < rank(p.derived))
                bad("bad isogeny pair for family D");
            if ((p.derived == Iso::Omega || p.ss == Iso::Omega) && p.l % 2) bad("Omega needs l even");
            if (p.derived == Iso::SO && p.ss == Iso::Omega) bad("SO does not cover Omega");
            if (p.derived == Iso::Omega && p.ss == Iso::SO) bad("Omega does not cover SO");
            if (p.ord != 1 && p.ord != 2 && p.ord != 4) bad("delta^ss has order 1, 2 or 4 in family D");
            break;
        }
        case Family::E:
            if (p.l < 6 || p.l > 8) bad("family E needs l in {6,7,8}");
            if (p.derived == Iso::AD && p.ss != Iso::AD) bad("adjoint derived group forces adjoint G^ss");
            break;
        case Family::FG:
            if (p.l != 4 && p.l != 2) bad("family FG needs l = 4 or 2");
            break;
        case Family::TORUS:
            if (p.dim < 1 || p.g < 1 || static_cast<int>(p.d.size()) != p.dim) bad("torus needs dim >= 1, g >= 1, |d| = dim");
            break;
    }
}

Value oracle(const FamilyParams& p, Quantity q) {
    check_params(p);
    switch (p.family) {
        case Family::A: return family_a(p, q);
        case Family::BC: return family_bc(p, q);
        case Family::D: return family_d(p, q);
        case Family::E: return family_e(p, q);
        case Family::FG: return family_fg(q);
        case Family::TORUS: return family_torus(p, q);
    }
    bad("unknown family");
}

// ---- brute-force invariant forms ----

namespace {

using Q = mpq_class;
using IMat = std::vector<std::vector<long>>;

// simple roots in an orthonormal basis (Bourbaki numbering)
std::vector<std::vector<long>> simple_roots(char t, int r) {
    std::vector<std::vector<long>> a;
    if (t == 'G') {
        a = {{1, -1, 0}, {-2, 1, 1}};
        return a;
    }
    const int amb = t == 'A' ? r + 1 : r;
    for (int i = 0; i + 1 < r || (t == 'A' && i < r); ++i) {
        std::vector<long> v(amb, 0);
        v[i] = 1;
        v[i + 1] = -1;
        a.push_back(v);
    }
    if (t == 'B' || t == 'C') {
        std::vector<long> v(amb, 0);
        v[r - 1] = t == 'B' ? 1 : 2;
        a.push_back(v);
    }
    return a;
}

long ip(const std::vector<long>& x, const std::vector<long>& y) {
    long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

IMat mul(const IMat& a, const IMat& b) {
    const std::size_t n = a.size();
    IMat c(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

}  // namespace

BruteForceForms bruteforce_invariant_forms(const std::string& tag) {
    if (tag.size() != 2) throw Error("ParseError", "type tag like A2 or G2 expected");
    const char t = tag[0];
    const int r = tag[1] - '0';
    if (std::string("ABCG").find(t) == std::string::npos || r < 1) throw Error("ParseError", "unknown type " + tag);
    if (r > 3) throw Error("RankTooLarge", "brute force is limited to rank 3");
    if ((t == 'B' || t == 'C') && r < 2) throw Error("ParseError", "B and C need rank >= 2");
    if (t == 'G' && r != 2) throw Error("ParseError", "G only in rank 2");

    const auto roots = simple_roots(t, r);
    // <alpha_j, alpha_i^vee> = 2 (alpha_j, alpha_i) / (alpha_i, alpha_i)
    IMat pair(r, std::vector<long>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) pair[i][j] = 2 * ip(roots[j], roots[i]) / ip(roots[i], roots[i]);

    // s_i on coroot coordinates: alpha_k^vee -> alpha_k^vee - <alpha_i, alpha_k^vee> alpha_i^vee
    std::vector<IMat> gens;
    for (int i = 0; i < r; ++i) {
        IMat m(r, std::vector<long>(r, 0));
        for (int k = 0; k < r; ++k) {
            m[k][k] = 1;
            m[i][k] -= pair[k][i];
        }
        gens.push_back(m);
    }
    IMat id(r, std::vector<long>(r, 0));
    for (int i = 0; i < r; ++i) id[i][i] = 1;
    std::set<IMat> W{id};
    std::vector<IMat> frontier{id};
    while (!frontier.empty()) {
        std::vector<IMat> next;
        for (const auto& w : frontier)
            for (const auto& s : gens) {
                IMat x = mul(s, w);
                if (W.insert(x).second) next.push_back(x);
            }
        frontier.swap(next);
        if (W.size() > 100) throw Error("InternalConsistency", "Weyl group closure did not terminate");
    }

    // unknowns: B(i,j), i <= j; equations w^T B w = B for every w
    std::vector<std::pair<int, int>> var;
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) var.push_back({i, j});
    auto idx = [&](int i, int j) {
        if (i > j) std::swap(i, j);
        for (std::size_t v = 0; v < var.size(); ++v)
            if (var[v] == std::make_pair(i, j)) return v;
        return var.size();
    };
    std::vector<std::vector<Q>> rows;
    for (const auto& w : W)
        for (int a = 0; a < r; ++a)
            for (int b = a; b < r; ++b) {
                std::vector<Q> row(var.size(), 0);
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j) row[idx(i, j)] += Q(w[i][a] * w[j][b]);
                row[idx(a, b)] -= 1;
                rows.push_back(row);
            }
    // Gaussian elimination
    const std::size_t nv = var.size();
    std::vector<int> pivcol;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < nv && pr < rows.size(); ++c) {
        std::size_t p = pr;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[pr]);
        Q inv = 1 / rows[pr][c];
        for (auto& x : rows[pr]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == pr || rows[i][c] == 0) continue;
            Q f = rows[i][c];
            for (std::size_t j = 0; j < nv; ++j) rows[i][j] -= f * rows[pr][j];
        }
        pivcol.push_back(static_cast<int>(c));
        ++pr;
    }
    BruteForceForms out;
    out.weyl_order = static_cast<int>(W.size());
    out.kernel_rank = static_cast<int>(nv - pivcol.size());
    if (out.kernel_rank != 1) return out;
    std::size_t fcol = 0;
    while (std::find(pivcol.begin(), pivcol.end(), static_cast<int>(fcol)) != pivcol.end()) ++fcol;
    std::vector<Q> sol(nv, 0);
    sol[fcol] = 1;
    for (std::size_t i = 0; i < pivcol.size(); ++i) sol[pivcol[i]] = -rows[i][fcol];
    // primitive integral vector, positive on the first coroot
    mpz_class den = 1, g = 0;
    for (const auto& x : sol) den = lcm(den, mpz_class(x.get_den()));
    std::vector<mpz_class> z;
    for (const auto& x : sol) {
        Q y = x * den;
        z.push_back(y.get_num());
        g = gcd(g, y.get_num());
    }
    for (auto& x : z) x /= g;
    if (z[idx(0, 0)] < 0)
        for (auto& x : z) x = -x;
    // smallest multiple with even diagonal
    bool even = true;
    for (int i = 0; i < r; ++i) even = even && z[idx(i, i)] % 2 == 0;
    if (!even)
        for (auto& x : z) x *= 2;
    out.gram.assign(r, std::vector<long long>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) out.gram[i][j] = z[idx(i, j)].get_si();
    return out;
}

}  // namespace piclat::oracle
