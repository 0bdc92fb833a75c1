#include "piclat/suites.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace piclat {

namespace O = oracle;

unsigned worker_threads() {
    if (const char* env = std::getenv("PICLAT_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex m;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next++;
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(m);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

namespace {

std::vector<long long> factors_of(const FGAbGroup& g) {
    std::vector<long long> v;
    for (const auto& f : g.factors) v.push_back(f.get_si());
    return v;
}

std::string inv_text(const std::vector<long long>& v) {
    if (v.empty()) return "0";
    std::string s;
    for (long long f : v) {
        if (!s.empty()) s += " x ";
        s += f == 0 ? std::string("Z") : "Z/" + std::to_string(f);
    }
    return s;
}

std::string vec_text(const QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

TableCell group_cell(const std::string& q, const FGAbGroup& engine, const O::Value& want) {
    TableCell c{q, engine.to_string(), inv_text(want.invariants), factors_of(engine) == want.invariants};
    return c;
}

TableCell mult_cell(const std::string& q, const Rat& engine, const O::Value& want) {
    return {q, engine.get_str(), want.multiplier.get_str(), engine == want.multiplier};
}

// semisimple block of lam equals the cocharacter lattice of the named group
bool same_ss_lattice(const Lattice& lam, std::size_t ss, const Lattice& named) {
    if (named.ambient_dim() != ss) return false;
    std::vector<QVec> cols;
    for (std::size_t j = 0; j < lam.rank(); ++j) {
        QVec v = lam.basis_vector(j);
        for (std::size_t i = ss; i < v.size(); ++i)
            if (v[i] != 0) return false;
        v.resize(ss);
        cols.push_back(v);
    }
    Lattice r = Lattice::from_generators(QMat::from_columns(cols, ss));
    for (std::size_t j = 0; j < named.rank(); ++j)
        if (!r.contains(named.basis_vector(j))) return false;
    for (const auto& v : cols)
        if (!named.contains(v)) return false;
    return true;
}

struct FamilyCase {
    std::string spec;
    std::string derived_named, ss_named;
    O::FamilyParams params;  // ord / Delta filled per row
};

std::vector<FamilyCase> family_cases(const TableOptions& opt) {
    std::vector<FamilyCase> out;
    const std::string f = opt.family;
    auto add = [&](std::string spec, std::string dn, std::string sn, O::FamilyParams p) {
        out.push_back({std::move(spec), std::move(dn), std::move(sn), p});
    };
    if (f == "A") {
        for (long n = std::max(2, opt.nmin); n <= opt.nmax; ++n)
            for (long r = 1; r <= n; ++r) {
                if (n % r) continue;
                for (long s = r; s <= n; s += r) {
                    if (n % s) continue;
                    auto sl = [&](long k) { return "SL:" + std::to_string(n) + "/mu:" + std::to_string(k); };
                    std::string spec = r == s ? sl(r) : "C[mu:" + std::to_string(s / r) + "](" + sl(r) + ")";
                    O::FamilyParams p;
                    p.family = O::Family::A;
                    p.n = n, p.r = r, p.s = s;
                    add(spec, sl(r), sl(s), p);
                }
            }
    } else if (f == "BC") {
        const int lo = opt.lmin ? opt.lmin : 2, hi = opt.lmax ? opt.lmax : 8;
        for (int l = lo; l <= hi; ++l) {
            const std::string b = std::to_string(2 * l + 1), c = std::to_string(2 * l);
            auto p = [&](O::Iso d, O::Iso s) {
                O::FamilyParams q;
                q.family = O::Family::BC;
                q.l = l, q.derived = d, q.ss = s;
                return q;
            };
            add("Spin:" + b, "Spin:" + b, "Spin:" + b, p(O::Iso::Spin, O::Iso::Spin));
            add("SO:" + b, "SO:" + b, "SO:" + b, p(O::Iso::SO, O::Iso::SO));
            add("C[mu:2](Spin:" + b + ")", "Spin:" + b, "SO:" + b, p(O::Iso::Spin, O::Iso::SO));
            add("Sp:" + c, "Sp:" + c, "Sp:" + c, p(O::Iso::Sp, O::Iso::Sp));
            add("PSp:" + c, "PSp:" + c, "PSp:" + c, p(O::Iso::PSp, O::Iso::PSp));
            add("C[mu:2](Sp:" + c + ")", "Sp:" + c, "PSp:" + c, p(O::Iso::Sp, O::Iso::PSp));
        }
    } else if (f == "D") {
        const int lo = opt.lmin ? opt.lmin : 3, hi = opt.lmax ? opt.lmax : 10;
        for (int l = lo; l <= hi; ++l) {
            const std::string m = std::to_string(2 * l);
            auto p = [&](O::Iso d, O::Iso s) {
                O::FamilyParams q;
                q.family = O::Family::D;
                q.l = l, q.derived = d, q.ss = s;
                return q;
            };
            const std::string spin = "Spin:" + m, so = "SO:" + m, pso = "PSO:" + m;
            add(spin, spin, spin, p(O::Iso::Spin, O::Iso::Spin));
            add(so, so, so, p(O::Iso::SO, O::Iso::SO));
            add(pso, pso, pso, p(O::Iso::PSO, O::Iso::PSO));
            add("C[mu:2:eps1](" + spin + ")", spin, so, p(O::Iso::Spin, O::Iso::SO));
            add("C[mu:2](" + so + ")", so, pso, p(O::Iso::SO, O::Iso::PSO));
            if (l % 2)
                add("C[mu:4](" + spin + ")", spin, pso, p(O::Iso::Spin, O::Iso::PSO));
            else
                add("C[mu:2](C[mu:2:eps1](" + spin + "))", spin, pso, p(O::Iso::Spin, O::Iso::PSO));
            if (l % 2 == 0)
                for (std::string sign : {"+", "-"}) {
                    const std::string om = "Omega" + sign + ":" + m;
                    add(om, om, om, p(O::Iso::Omega, O::Iso::Omega));
                    add("C[mu:2:omega" + sign + "](" + spin + ")", spin, om, p(O::Iso::Spin, O::Iso::Omega));
                    add("C[mu:2](" + om + ")", om, pso, p(O::Iso::Omega, O::Iso::PSO));
                }
        }
    } else if (f == "E") {
        auto p = [&](int l, O::Iso d, O::Iso s) {
            O::FamilyParams q;
            q.family = O::Family::E;
            q.l = l, q.derived = d, q.ss = s;
            return q;
        };
        add("E8", "E8", "E8", p(8, O::Iso::SC, O::Iso::SC));
        add("E7sc", "E7sc", "E7sc", p(7, O::Iso::SC, O::Iso::SC));
        add("E7ad", "E7ad", "E7ad", p(7, O::Iso::AD, O::Iso::AD));
        add("C[mu:2](E7sc)", "E7sc", "E7ad", p(7, O::Iso::SC, O::Iso::AD));
        add("E6sc", "E6sc", "E6sc", p(6, O::Iso::SC, O::Iso::SC));
        add("E6ad", "E6ad", "E6ad", p(6, O::Iso::AD, O::Iso::AD));
        add("C[mu:3](E6sc)", "E6sc", "E6ad", p(6, O::Iso::SC, O::Iso::AD));
    } else if (f == "FG") {
        O::FamilyParams q;
        q.family = O::Family::FG;
        q.l = 4;
        add("F4", "F4", "F4", q);
        q.l = 2;
        add("G2", "G2", "G2", q);
    } else {
        throw Error("InvalidParams", "unknown family '" + f + "'");
    }
    return out;
}

// all classes of pi1(G^ss) as semisimple coordinate vectors
std::vector<QVec> ss_classes(const Group& g) {
    const std::size_t ss = g.datum.ss_dim();
    FGAbGroup q = quotient_group(g.parts.lambda_ss, g.datum.coroot_lattice(), true);
    std::vector<QVec> out{QVec(ss)};
    for (std::size_t k = 0; k < q.factors.size(); ++k) {
        const long ord = q.factors[k].get_si();
        QVec gen = q.generators->col(k);
        std::vector<QVec> next;
        for (const auto& v : out)
            for (long c = 0; c < ord; ++c) {
                QVec w = v;
                for (std::size_t i = 0; i < ss; ++i) w[i] += Rat(c) * gen[i];
                next.push_back(w);
            }
        out.swap(next);
    }
    return out;
}

long ss_order(const QVec& v) {  // order modulo Q^vee = Z^ss in coroot coordinates
    Int d = 1;
    for (const auto& x : v) d = lcm(d, Int(x.get_den()));
    return d.get_si();
}

std::vector<TableRow> case_rows(const FamilyCase& fc) {
    Group g = make_group(fc.spec);
    const std::size_t ss = g.datum.ss_dim();
    const bool iso_ok = same_ss_lattice(g.parts.lambda_D, ss, build_named(fc.derived_named).cochar) &&
                        same_ss_lattice(g.parts.lambda_ss, ss, build_named(fc.ss_named).cochar);
    const Rat msc = multiplier(g.form(FormKind::PAIR_SC_EVEN));
    const Rat mev = multiplier(g.form(FormKind::PAIR_EVEN));
    const FGAbGroup rg = coker_r_G(g);

    std::vector<std::pair<QVec, O::FamilyParams>> deltas;
    if (fc.params.family == O::Family::A) {
        const auto& w1 = g.datum.factors[0].coweights;
        for (long D = 0; D < fc.params.s; ++D) {
            QVec v(ss);
            for (std::size_t i = 0; i < ss; ++i) v[i] = w1(i, 0) * Rat(D * (fc.params.n / fc.params.s));
            O::FamilyParams p = fc.params;
            p.Delta = D;
            deltas.push_back({v, p});
        }
    } else {
        for (const auto& v : ss_classes(g)) {
            O::FamilyParams p = fc.params;
            p.ord = ss_order(v);
            deltas.push_back({v, p});
        }
    }
    std::vector<TableRow> rows;
    for (const auto& [v, p] : deltas) {
        TableRow row;
        row.group = fc.spec;
        Pi1Element d = pi1_class(g.datum, g.parts, lift_with_ss_part(g.datum, v));
        row.delta = p.family == O::Family::A ? "Delta=" + std::to_string(p.Delta) : "dss=" + vec_text(d.d_ss);
        row.cells.push_back({"isogeny", fc.derived_named + " / " + fc.ss_named, iso_ok ? "match" : "MISMATCH", iso_ok});
        row.cells.push_back(mult_cell("multiplier-sc-even", msc, O::oracle(p, O::Quantity::MULTIPLIER_SC_EVEN)));
        row.cells.push_back(mult_cell("multiplier-even", mev, O::oracle(p, O::Quantity::MULTIPLIER_EVEN)));
        row.cells.push_back(group_cell("coker-rG", rg, O::oracle(p, O::Quantity::COKER_RG)));
        const FGAbGroup ev = ev_hom(g, d, EvVariant::EV).cokernel;
        const FGAbGroup evt = ev_hom(g, d, EvVariant::EV_TILDE).cokernel;
        row.cells.push_back(group_cell("coker-ev", ev, O::oracle(p, O::Quantity::COKER_EV)));
        row.cells.push_back(group_cell("coker-ev-tilde", evt, O::oracle(p, O::Quantity::COKER_EV_TILDE)));
        if (p.family == O::Family::A) {
            const long L = std::lcm(p.r * p.s, p.n);
            const bool guard = O::order_ratio_guard(p.Delta * (L / (p.r * p.s)), p.n / p.r);
            row.cells.push_back({"order-ratio-guard", guard ? "ok" : "violated", "ok", guard});
        }
        for (const auto& c : row.cells) row.ok = row.ok && c.ok;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<TableRow> torus_rows(int dim, int genus, int dmax) {
    Group g = make_group("torus:" + std::to_string(dim));
    WeightData w = weight_data(g, genus);
    std::vector<TableRow> rows;
    std::vector<long> d(dim, -dmax);
    for (;;) {
        QVec lift(d.begin(), d.end());
        Pi1Element p = pi1_class(g.datum, g.parts, lift);
        O::FamilyParams op;
        op.family = O::Family::TORUS;
        op.dim = dim, op.g = genus, op.d = d;
        TableRow row;
        row.group = g.datum.label + ", g=" + std::to_string(genus);
        row.delta = vec_text(lift);
        row.cells.push_back(group_cell("coker-omega", coker_omega_group(w, 0, p), O::oracle(op, O::Quantity::TORUS_COKER_OMEGA)));
        row.cells.push_back(
            group_cell("coker-gamma-bar", coker_gamma_bar(w, p), O::oracle(op, O::Quantity::TORUS_COKER_GAMMA_BAR)));
        for (const auto& c : row.cells) row.ok = row.ok && c.ok;
        rows.push_back(std::move(row));
        int i = 0;
        while (i < dim && d[i] == dmax) d[i++] = -dmax;
        if (i == dim) break;
        ++d[i];
    }
    return rows;
}

}  // namespace

std::vector<TableRow> family_table(const TableOptions& opt, unsigned threads) {
    if (opt.family == "tori") {
        if (opt.dim < 1 || opt.g < 1 || opt.dmax < 0) throw Error("InvalidParams", "tori need dim >= 1, g >= 1, dmax >= 0");
        return torus_rows(opt.dim, opt.g, opt.dmax);
    }
    auto cases = family_cases(opt);
    std::vector<std::vector<TableRow>> parts(cases.size());
    parallel_for(cases.size(), threads, [&](std::size_t i) { parts[i] = case_rows(cases[i]); });
    std::vector<TableRow> rows;
    for (auto& p : parts)
        for (auto& r : p) rows.push_back(std::move(r));
    return rows;
}

Json table_json(const std::string& family, const std::vector<TableRow>& rows) {
    Json j;
    j["family"] = family;
    Json rs = Json::array();
    bool all = true;
    for (const auto& r : rows) {
        Json row;
        row["group"] = r.group;
        row["delta"] = r.delta;
        Json cells;
        for (const auto& c : r.cells) cells[c.quantity] = {{"engine", c.engine}, {"oracle", c.oracle}, {"ok", c.ok}};
        row["values"] = cells;
        row["ok"] = r.ok;
        all = all && r.ok;
        rs.push_back(row);
    }
    j["rows"] = rs;
    j["all_agree"] = all;
    return j;
}

std::string table_markdown(const std::string& family, const std::vector<TableRow>& rows) {
    std::ostringstream o;
    o << "### family " << family << "\n\n";
    if (rows.empty()) return o.str() + "(no rows)\n";
    o << "| group | delta |";
    for (const auto& c : rows[0].cells) o << ' ' << c.quantity << " |";
    o << "\n|---|---|";
    for (std::size_t i = 0; i < rows[0].cells.size(); ++i) o << "---|";
    o << "\n";
    for (const auto& r : rows) {
        o << "| " << r.group << " | " << r.delta << " |";
        for (const auto& c : r.cells) {
            if (c.ok)
                o << ' ' << c.engine << " |";
            else
                o << " **ERROR** engine " << c.engine << " vs oracle " << c.oracle << " |";
        }
        o << "\n";
    }
    return o.str();
}

SweepCount torus_sweep(int dim_max, int g_min, int g_max, int dmax, unsigned threads) {
    struct Task {
        int dim, g;
    };
    std::vector<Task> tasks;
    for (int dim = 1; dim <= dim_max; ++dim)
        for (int g = g_min; g <= g_max; ++g) tasks.push_back({dim, g});
    std::vector<SweepCount> parts(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t t) {
        const int dim = tasks[t].dim, genus = tasks[t].g;
        Group g = make_group("torus:" + std::to_string(dim));
        WeightData w = weight_data(g, genus);
        O::FamilyParams op;
        op.family = O::Family::TORUS;
        op.dim = dim, op.g = genus;
        SweepCount& sc = parts[t];
        std::vector<long> d(dim, -dmax);
        for (;;) {
            QVec lift(d.begin(), d.end());
            Pi1Element p = pi1_class(g.datum, g.parts, lift);
            op.d = d;
            auto om = factors_of(coker_omega_group(w, 0, p));
            auto gb = factors_of(coker_gamma_bar(w, p));
            auto want_om = O::oracle(op, O::Quantity::TORUS_COKER_OMEGA).invariants;
            auto want_gb = O::oracle(op, O::Quantity::TORUS_COKER_GAMMA_BAR).invariants;
            ++sc.rows;
            if (om != want_om || gb != want_gb) {
                ++sc.failed;
                if (sc.failures.size() < 5)
                    sc.failures.push_back("torus:" + std::to_string(dim) + " g=" + std::to_string(genus) + " d=" +
                                          vec_text(lift) + ": omega " + inv_text(om) + " vs " + inv_text(want_om) +
                                          ", gamma-bar " + inv_text(gb) + " vs " + inv_text(want_gb));
            }
            int i = 0;
            while (i < dim && d[i] == dmax) d[i++] = -dmax;
            if (i == dim) break;
            ++d[i];
        }
    });
    SweepCount total;
    for (auto& p : parts) {
        total.rows += p.rows;
        total.failed += p.failed;
        for (auto& f : p.failures)
            if (total.failures.size() < 10) total.failures.push_back(f);
    }
    return total;
}

const std::vector<MixedDatum>& mixed_data() {
    static const std::vector<MixedDatum> data = {
        {"GL:2", 1},
        {"GL:3", 2},
        {"GL:4", 0},
        {"GL:6", 3},
        {"torus:1 x SL:2", 3},
        {"torus:2 x SL:3", 1},
        {"torus:1 x PGL:2", 0},
        {"C[mu:2](SL:4)", 1},
        {"C[mu:2](Sp:4)", 1},
        {"torus:1 x Sp:4", 2},
        {"C[mu:2](Spin:7)", 1},
        {"torus:2 x SO:5", 0},
        {"C[mu:2:eps1](Spin:8)", 1},
        {"C[mu:2](SO:8)", 1},
        {"torus:1 x G2", 5},
        {"C[mu:3](E6sc)", 1},
        {"torus:1 x PSO:8", 0},
        {"C[mu:4](Spin:10)", 1},
        {"GL:2 x SL:2", 1},
        {"C[mu:2](SL:2) x SL:2", 1},
    };
    return data;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "type-A",           "type-BC",          "type-D",          "exceptional",   "tori",
        "invariant-factors", "order-identities", "rank-bookkeeping", "weyl-bruteforce", "functoriality",
        "gl-sanity",        "type-sweeps",      "all"};
    return names;
}

namespace {

struct Tally {
    SuiteResult& r;
    void check(bool ok, const std::string& what) {
        if (ok) {
            ++r.passed;
        } else {
            ++r.failed;
            if (r.failures.size() < 10) r.failures.push_back(what);
        }
    }
};

void family_suite(SuiteResult& r, const TableOptions& opt, unsigned threads) {
    Tally t{r};
    for (const auto& row : family_table(opt, threads)) {
        std::string bad;
        for (const auto& c : row.cells)
            if (!c.ok) bad += " " + c.quantity + ": engine " + c.engine + " vs oracle " + c.oracle + ";";
        t.check(row.ok, row.group + " " + row.delta + bad);
    }
}

struct MixedGroup {
    Group g;
    Pi1Element delta;
};

std::vector<MixedGroup> mixed_groups(unsigned threads) {
    const auto& data = mixed_data();
    std::vector<MixedGroup> out(data.size());
    parallel_for(data.size(), threads, [&](std::size_t i) {
        out[i].g = make_group(data[i].spec);
        const Group& g = out[i].g;
        if (g.datum.delta_unit || data[i].delta == 0) {
            out[i].delta = resolve_delta(g, data[i].delta, "");
            return;
        }
        // no shorthand: delta times the sum of the pi1 generators
        FGAbGroup pi = quotient_group(g.datum.cochar, g.datum.coroot_lattice(), true);
        QVec lift(g.datum.dim());
        for (std::size_t k = 0; k < pi.factors.size(); ++k)
            for (std::size_t j = 0; j < lift.size(); ++j) lift[j] += Rat(data[i].delta) * (*pi.generators)(j, k);
        out[i].delta = pi1_class(g.datum, g.parts, lift);
    });
    return out;
}

Int ipow(Int b, std::size_t e) {
    Int r = 1;
    while (e--) r *= b;
    return r;
}

void invariant_factor_suite(SuiteResult& r, unsigned threads) {
    Tally t{r};
    auto gs = mixed_groups(threads);
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (int genus : {2, 3, 5}) {
            const auto& [g, delta] = gs[i];
            auto im = im_omega_gamma(g, {genus, 0}, delta, false);
            // (2g-2) repeated dim G^ab times, then units
            std::vector<long long> want = O::normalize(std::vector<long long>(g.s(), 2 * genus - 2));
            t.check(factors_of(im.factors) == want, mixed_data()[i].spec + " g=" + std::to_string(genus) + ": " +
                                                         im.factors.to_string() + " vs " + inv_text(want));
        }
}

void order_identity_suite(SuiteResult& r, unsigned threads) {
    Tally t{r};
    auto gs = mixed_groups(threads);
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const auto& [g, delta] = gs[i];
        const std::string name = mixed_data()[i].spec;
        const FGAbGroup cev = ev_hom(g, delta, EvVariant::EV).cokernel;
        for (int genus : {2, 3, 5}) {
            WeightData w = weight_data(g, genus);
            const FGAbGroup om = coker_omega_group(w, 0, delta);
            const FGAbGroup gb = coker_gamma_bar(w, delta);
            const Int lhs = om.order() * gb.order();
            const Int rhs = ipow(Int(2 * genus - 2), g.s()) * cev.order();
            t.check(om.is_finite() && lhs == rhs, name + " g=" + std::to_string(genus) + ": |omega| |gamma-bar| = " +
                                                      lhs.get_str() + " vs " + rhs.get_str());
            for (int n : {1, 2}) {
                const FGAbGroup omn = coker_omega_group(w, n, delta);
                t.check(omn == cev, name + " g=" + std::to_string(genus) + " n=" + std::to_string(n) + ": " +
                                        omn.to_string() + " vs coker(ev) " + cev.to_string());
            }
        }
    }
}

long hhat_rank_formula(int g, int n) { return g >= 2 ? n + 1 : n; }
long h_rank_formula(int g, int n) { return g >= 2 ? n : std::max(n - 1, 0); }

void rank_suite(SuiteResult& r, unsigned threads) {
    Tally t{r};
    std::vector<std::string> specs;
    for (const auto& m : mixed_data()) specs.push_back(m.spec);
    for (const char* s : {"torus:1", "torus:3", "SL:3", "PGL:4", "Spin:9", "PSO:10", "E7ad", "F4", "G2",
                          "C[mu:2](E7sc)", "C[mu:3](SL:6/mu:2)", "Omega+:8"})
        specs.push_back(s);
    std::vector<Group> gs(specs.size());
    parallel_for(specs.size(), threads, [&](std::size_t i) { gs[i] = make_group(specs[i]); });
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const Group& g = gs[i];
        const long s = static_cast<long>(g.s()), k = static_cast<long>(g.k());
        Pi1Element zero = pi1_class(g.datum, g.parts, QVec(g.datum.dim()));
        for (int genus : {1, 2, 3})
            for (int n : {0, 1, 2}) {
                const auto rep = rpic_report(g, {genus, n}, zero);
                const long want = s * hhat_rank_formula(genus, n) + s * (s + 1) / 2 + k;
                t.check(static_cast<long>(rep.free_rank) == want,
                        specs[i] + " g=" + std::to_string(genus) + " n=" + std::to_string(n) + ": rank RPic " +
                            std::to_string(rep.free_rank) + " vs " + std::to_string(want));
                (void)h_rank_formula;
            }
        for (const auto& v : ss_classes(g)) {
            Pi1Element d = pi1_class(g.datum, g.parts, lift_with_ss_part(g.datum, v));
            const long diff = static_cast<long>(ns_lattice(g, d, false).rank()) -
                              static_cast<long>(ns_lattice(g, d, true).rank());
            t.check(diff == s, specs[i] + " dss=" + vec_text(v) + ": rank NS - rank NS(rig) = " +
                                   std::to_string(diff) + " vs " + std::to_string(s));
        }
    }
}

void weyl_suite(SuiteResult& r) {
    Tally t{r};
    const std::map<std::string, int> orders = {{"A1", 2}, {"A2", 6}, {"B2", 8}, {"C2", 8},
                                               {"G2", 12}, {"A3", 24}, {"B3", 48}, {"C3", 48}};
    for (const auto& [tag, wo] : orders) {
        auto bf = O::bruteforce_invariant_forms(tag);
        auto tab = simple_factor_table(tag);
        bool same = bf.kernel_rank == 1 && static_cast<int>(bf.gram.size()) == tab.rank && bf.weyl_order == wo;
        for (int i = 0; same && i < tab.rank; ++i)
            for (int j = 0; j < tab.rank; ++j) same = same && tab.basic_gram(i, j) == static_cast<long>(bf.gram[i][j]);
        t.check(same, tag + ": brute force (|W| = " + std::to_string(bf.weyl_order) + ", kernel rank " +
                          std::to_string(bf.kernel_rank) + ") disagrees with the stored basic form");
    }
}

QMat mat(std::size_t r, std::size_t c, std::initializer_list<long> vals) {
    QMat m(r, c);
    auto it = vals.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Rat(*it++);
    return m;
}

NSClass random_class(const Group& g, const Pi1Element& delta, std::mt19937& rng) {
    NSLattice ns = ns_lattice(g, delta, false);
    std::uniform_int_distribution<long> coef(-4, 4);
    QVec v(ns.lattice.ambient_dim());
    for (std::size_t j = 0; j < ns.lattice.rank(); ++j) {
        const Rat c(coef(rng));
        QVec b = ns.lattice.basis_vector(j);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * b[i];
    }
    const std::size_t dim = g.datum.dim();
    NSClass cls;
    cls.chi.assign(v.begin(), v.begin() + dim);
    cls.form = form_from_params(QVec(v.begin() + dim, v.end()), g.s(), g.k(), false);
    return cls;
}

void functoriality_suite(SuiteResult& r) {
    Tally t{r};
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<long> small(-5, 5);
    {
        // torus:1 -> SL:2 -> GL:2
        Group T = make_group("torus:1"), SL = make_group("SL:2"), GL = make_group("GL:2");
        const QMat psi = mat(1, 1, {1});
        QMat phi(GL.datum.dim(), 1);
        phi(0, 0) = 1;  // the coroot of SL_2 is the coroot of GL_2
        const QMat comp = phi * psi;
        for (int trial = 0; trial < 25; ++trial) {
            const Pi1Element eps = pi1_class(T.datum, T.parts, {Rat(small(rng))});
            const Pi1Element dsl = pi1_class(SL.datum, SL.parts, psi * eps.lift);
            const Pi1Element dgl = pi1_class(GL.datum, GL.parts, comp * eps.lift);
            const NSClass cls = random_class(GL, dgl, rng);
            const NSClass direct = ns_pullback(comp, T, GL, eps, dgl, cls);
            const NSClass twostep = ns_pullback(psi, T, SL, eps, dsl, ns_pullback(phi, SL, GL, dsl, dgl, cls));
            t.check(ns_equal(T, direct, twostep), "torus -> SL2 -> GL2 trial " + std::to_string(trial));
        }
    }
    {
        // torus:1 -> torus:2 (maximal torus) -> Sp:4
        Group T1 = make_group("torus:1"), T2 = make_group("torus:2"), SP = make_group("Sp:4");
        const QMat phi = mat(2, 2, {1, 0, 0, 1});
        for (int trial = 0; trial < 25; ++trial) {
            long a = small(rng), b = small(rng);
            if (a == 0 && b == 0) a = 1;
            const QMat psi = mat(2, 1, {a, b});
            const QMat comp = phi * psi;
            const Pi1Element eps = pi1_class(T1.datum, T1.parts, {Rat(small(rng))});
            const Pi1Element d2 = pi1_class(T2.datum, T2.parts, psi * eps.lift);
            const Pi1Element dsp = pi1_class(SP.datum, SP.parts, comp * eps.lift);
            const NSClass cls = random_class(SP, dsp, rng);
            const NSClass direct = ns_pullback(comp, T1, SP, eps, dsp, cls);
            const NSClass twostep = ns_pullback(psi, T1, T2, eps, d2, ns_pullback(phi, T2, SP, d2, dsp, cls));
            t.check(ns_equal(T1, direct, twostep), "torus -> torus^2 -> Sp4 trial " + std::to_string(trial));
        }
    }
    {
        // lift independence of ev_hom
        const std::vector<std::string> specs = {"SL:6/mu:3", "C[mu:2](SL:4)", "PSO:8",     "C[mu:4](Spin:10)",
                                                "E7ad",      "PSp:6",         "GL:5",      "C[mu:2](Omega+:8)",
                                                "E6ad",      "torus:1 x PGL:3"};
        std::vector<Group> gs;
        for (const auto& s : specs) gs.push_back(make_group(s));
        for (int trial = 0; trial < 100; ++trial) {
            const Group& g = gs[trial % gs.size()];
            auto classes = ss_classes(g);
            const QVec& v = classes[static_cast<std::size_t>(trial / gs.size()) % classes.size()];
            QVec lift = lift_with_ss_part(g.datum, v);
            // shift by a random cocharacter
            QVec extra(g.datum.dim());
            for (std::size_t j = 0; j < g.datum.cochar.rank(); ++j) {
                const Rat c(small(rng));
                QVec b = g.datum.cochar.basis_vector(j);
                for (std::size_t i = 0; i < extra.size(); ++i) extra[i] += c * b[i];
            }
            for (std::size_t i = 0; i < lift.size(); ++i) lift[i] += extra[i];
            QVec moved = lift;
            for (std::size_t i = 0; i < g.datum.ss_dim(); ++i) moved[i] += Rat(small(rng));
            const Pi1Element a = pi1_class(g.datum, g.parts, lift), b = pi1_class(g.datum, g.parts, moved);
            bool same = true;
            for (auto var : {EvVariant::EV, EvVariant::EV_TILDE}) {
                auto ea = ev_hom(g, a, var), eb = ev_hom(g, b, var);
                same = same && ea.cokernel == eb.cokernel && ea.image == eb.image;
                for (std::size_t j = 0; j < ea.images.size(); ++j) {
                    QVec diff = ea.images[j];
                    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= eb.images[j][i];
                    same = same && g.parts.dual_ad.contains(diff);
                }
            }
            t.check(same, specs[trial % gs.size()] + " lift " + vec_text(lift) + " vs " + vec_text(moved));
        }
    }
}

void gl_suite(SuiteResult& r) {
    Tally t{r};
    for (int n = 2; n <= 8; ++n) {
        Group g = make_group("GL:" + std::to_string(n));
        for (long d = -8; d <= 8; ++d) {
            Pi1Element delta = resolve_delta(g, d, "");
            auto got = factors_of(ev_hom(g, delta, EvVariant::EV_TILDE).cokernel);
            long gg = std::gcd(static_cast<long>(n), std::labs(d));
            std::vector<long long> want;
            if (gg > 1) want.push_back(gg);
            t.check(got == want, "GL:" + std::to_string(n) + " d=" + std::to_string(d) + ": " + inv_text(got) +
                                     " vs Z/" + std::to_string(gg));
        }
    }
}

}  // namespace

SuiteResult run_suite(const std::string& name, unsigned threads) {
    SuiteResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    auto fam = [&](const std::string& f, int lo, int hi) {
        TableOptions o;
        o.family = f;
        if (f == "A") o.nmin = lo, o.nmax = hi;
        else o.lmin = lo, o.lmax = hi;
        family_suite(r, o, threads);
    };
    if (name == "type-A") {
        fam("A", 2, 12);
    } else if (name == "type-BC") {
        fam("BC", 2, 8);
    } else if (name == "type-D") {
        fam("D", 3, 10);
    } else if (name == "exceptional") {
        fam("E", 0, 0);
        fam("FG", 0, 0);
    } else if (name == "tori") {
        auto s = torus_sweep(3, 1, 6, 20, threads);
        r.passed = s.rows - s.failed;
        r.failed = s.failed;
        r.failures = s.failures;
    } else if (name == "invariant-factors") {
        invariant_factor_suite(r, threads);
    } else if (name == "order-identities") {
        order_identity_suite(r, threads);
    } else if (name == "rank-bookkeeping") {
        rank_suite(r, threads);
    } else if (name == "weyl-bruteforce") {
        weyl_suite(r);
    } else if (name == "functoriality") {
        functoriality_suite(r);
    } else if (name == "gl-sanity") {
        gl_suite(r);
    } else if (name == "type-sweeps" || name == "all") {
        std::vector<std::string> parts = {"type-A", "type-BC", "type-D", "exceptional"};
        if (name == "all")
            parts.insert(parts.end(), {"tori", "invariant-factors", "order-identities", "rank-bookkeeping",
                                       "weyl-bruteforce", "functoriality", "gl-sanity"});
        for (const auto& p : parts) {
            SuiteResult s = run_suite(p, threads);
            r.passed += s.passed;
            r.failed += s.failed;
            for (auto& f : s.failures)
                if (r.failures.size() < 10) r.failures.push_back(p + ": " + f);
        }
    } else {
        throw Error("InvalidParams", "unknown suite '" + name + "'");
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace piclat
