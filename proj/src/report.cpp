#include "piclat/report.hpp"

#include <algorithm>
#include <sstream>

namespace piclat {

namespace {

Json int_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

Json vec_json(const QVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rat_json(x));
    return a;
}

Json form_json(const WInvForm& f) {
    Json j;
    Json ab = Json::array();
    for (std::size_t i = 0; i < f.b_ab.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < f.b_ab.cols(); ++k) row.push_back(rat_json(f.b_ab(i, k)));
        ab.push_back(row);
    }
    j["b_ab"] = ab;
    j["alpha"] = vec_json(f.alpha);
    return j;
}

QVec parse_vec(const std::string& text) {
    QVec v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_rat(item));
    return v;
}

}  // namespace

const std::vector<std::string>& compute_quantities() {
    static const std::vector<std::string> q = {
        "pi1",          "validate",      "forms",           "multiplier-sc-even", "multiplier-even",
        "coker-rG",     "coker-ev",      "coker-ev-tilde",  "rpic",               "ns",
        "im-omega-gamma", "coker-omega", "coker-gamma-bar", "curve-ns",           "coker-res-bar",
        "genus0",       "cl"};
    return q;
}

Json rat_json(const Rat& q) {
    if (q.get_den() == 1) return int_json(q.get_num());
    return q.get_str();
}

Json group_json(const FGAbGroup& g) {
    Json j;
    Json inv = Json::array();
    for (const auto& f : g.factors)
        if (f != 0) inv.push_back(int_json(f));
    j["invariant_factors"] = inv;
    j["free_rank"] = g.free_rank();
    j["order"] = g.is_finite() ? int_json(g.order()) : Json(nullptr);
    j["text"] = g.to_string();
    return j;
}

Json report_json(const PicardReport& r) {
    Json j;
    j["group"] = group_json(r.group);
    j["free_rank"] = r.free_rank;
    j["resolved"] = r.resolved;
    if (!r.resolved) j["total_order"] = int_json(r.total_order);
    Json pieces = Json::array();
    for (const auto& p : r.pieces) {
        Json pj;
        pj["label"] = p.label;
        pj["group"] = group_json(p.group);
        pj["tag"] = p.tag;
        pieces.push_back(pj);
    }
    j["pieces"] = pieces;
    return j;
}

Group group_for(const ComputeRequest& req) {
    if (!req.datum_text.empty()) return make_group(parse_datum_text(req.datum_text));
    if (req.group.empty()) throw Error("ParseError", "no group given");
    return make_group(req.group);
}

Pi1Element resolve_delta(const Group& g, std::optional<long> delta, const std::string& delta_vec) {
    QVec lift(g.datum.dim());
    if (!delta_vec.empty()) {
        lift = parse_vec(delta_vec);
        if (lift.size() != g.datum.dim())
            throw Error("IncompatibleDelta", "lift has " + std::to_string(lift.size()) + " coordinates, expected " +
                                                 std::to_string(g.datum.dim()));
        if (!g.datum.cochar.contains(lift)) throw Error("NotInLattice", "lift is not a cocharacter of the group");
    } else if (delta && *delta != 0) {
        if (!g.datum.delta_unit)
            throw Error("IncompatibleDelta", "integer delta needs a group with a cyclic shorthand; use --delta-vec");
        for (std::size_t i = 0; i < lift.size(); ++i) lift[i] = (*g.datum.delta_unit)[i] * Rat(*delta);
    }
    return pi1_class(g.datum, g.parts, lift);
}

Json compute(const ComputeRequest& req) {
    const auto& qs = compute_quantities();
    if (std::find(qs.begin(), qs.end(), req.quantity) == qs.end())
        throw Error("ParseError", "unknown quantity '" + req.quantity + "'");
    if (req.g < 0 || req.n < 0) throw Error("InvalidParams", "g and n must be non-negative");
    Group g = group_for(req);
    Pi1Element delta = resolve_delta(g, req.delta, req.delta_vec);
    const MarkedGenus mg{req.g, req.n};
    const std::string& q = req.quantity;

    Json env;
    Json in;
    in["group"] = req.datum_text.empty() ? g.datum.label : std::string("custom");
    in["g"] = req.g;
    in["n"] = req.n;
    in["delta_lift"] = vec_json(delta.lift);
    in["rigidified"] = req.rigidified;
    in["characteristic"] = req.characteristic;
    env["input"] = in;
    env["quantity"] = q;
    Json result;
    Json assumptions = Json::array();
    Json tags = Json::array();
    Json checks = Json::array();
    Json notes = Json::array();
    auto add_report = [&](const PicardReport& r) {
        result = report_json(r);
        for (const auto& t : r.tags) tags.push_back(t);
        for (const auto& n : r.notes) notes.push_back(n);
        for (const auto& [name, ok] : r.checks) checks.push_back({{"name", name}, {"ok", ok}});
    };

    if (q == "pi1") {
        result["pi1"] = group_json(g.parts.pi1);
        result["center_characters"] = group_json(g.parts.center_chars);
        result["derived_center_characters"] = group_json(g.parts.dcenter_chars);
        result["abelian_rank"] = g.s();
        result["simple_factors"] = g.k();
        result["delta_order"] = int_json(delta.order);
        result["delta_ss_order"] = int_json(delta.order_ss);
        result["delta_ab_divisibility"] = int_json(delta.div_ab);
        tags.push_back("fundamental-group-sequence");
    } else if (q == "validate") {
        Json v = Json::array();
        for (const auto& s : validate_datum(g.datum)) v.push_back(s);
        result["violations"] = v;
        result["valid"] = v.empty();
    } else if (q == "forms") {
        for (std::size_t i = 0; i < kFormKinds; ++i) {
            const auto& fl = g.forms[i];
            Json b = Json::array();
            for (const auto& f : fl.basis) b.push_back(form_json(f));
            result[form_kind_name(fl.kind)] = {{"rank", fl.rank()}, {"basis", b}};
        }
        tags.push_back("invariant-form-lattices");
        tags.push_back("invariant-form-ranks");
    } else if (q == "multiplier-sc-even" || q == "multiplier-even") {
        const auto& fl = g.form(q == "multiplier-even" ? FormKind::PAIR_EVEN : FormKind::PAIR_SC_EVEN);
        if (g.k() != 1) throw Error("UnsupportedType", "multipliers need exactly one simple factor");
        result["multiplier"] = rat_json(multiplier(fl));
        result["relative_to"] = "basic form";
        tags.push_back("invariant-form-lattices");
    } else if (q == "coker-rG") {
        result["group"] = group_json(coker_r_G(g));
        tags.push_back("sc-even-cokernel");
    } else if (q == "coker-ev" || q == "coker-ev-tilde") {
        auto ev = ev_hom(g, delta, q == "coker-ev" ? EvVariant::EV : EvVariant::EV_TILDE);
        result["group"] = group_json(ev.cokernel);
        result["image"] = group_json(ev.image);
        tags.push_back(q == "coker-ev" ? "evaluation-homomorphism" : "sc-evaluation-homomorphism");
    } else if (q == "rpic") {
        add_report(rpic_report(g, mg, delta));
    } else if (q == "ns") {
        if (req.g < 1) throw Error("GenusOutOfRange", q + " needs g >= 1");
        NSLattice ns = ns_lattice(g, delta, req.rigidified);
        result["rank"] = ns.rank();
        result["rigidified"] = req.rigidified;
        tags.push_back(req.rigidified ? "rigidified-neron-severi" : "neron-severi-sequence");
    } else if (q == "im-omega-gamma") {
        auto im = im_omega_gamma(g, mg, delta, req.rigidified);
        result["quotient"] = group_json(im.factors);
        result["ns_rank"] = im.ns.rank();
        tags.push_back("omega-gamma-image");
    } else if (q == "coker-omega") {
        add_report(coker_omega(g, mg, delta));
    } else if (q == "coker-gamma-bar") {
        result["group"] = group_json(coker_gamma_bar(g, req.g, delta));
        tags.push_back("rigidified-picard");
        if (g.k() == 0) tags.push_back("tori-coker-closed-form");
    } else if (q == "curve-ns") {
        if (req.g < 1) throw Error("GenusOutOfRange", q + " needs g >= 1");
        result["rank"] = curve_ns(g, delta, req.g).rank;
        assumptions.push_back("End(J_C) = Z");
        tags.push_back("curve-neron-severi");
    } else if (q == "coker-res-bar") {
        add_report(coker_res_bar(g, mg, delta));
        assumptions.push_back("End(J_C) = Z");
    } else if (q == "genus0") {
        if (req.g != 0) throw Error("GenusOutOfRange", "genus0 needs --g 0");
        add_report(genus0_report(g, req.n, delta));
    } else if (q == "cl") {
        ClReport c = cl_report(g, mg, delta, req.characteristic);
        result["applicable"] = c.applicable;
        result["which"] = c.which;
        result["caveat"] = c.caveat;
        Json rs = Json::array();
        for (const auto& s : c.reasons) rs.push_back(s);
        result["reasons"] = rs;
        if (c.relative) result["relative"] = report_json(*c.relative);
        tags.push_back("class-group-comparison");
    }
    env["result"] = result;
    env["assumptions"] = assumptions;
    env["theorems"] = tags;
    env["checks"] = checks;
    env["notes"] = notes;
    return env;
}

namespace {

std::string cell(const Json& j) {
    if (j.is_object() && j.contains("text")) return j["text"].get<std::string>();
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

}  // namespace

std::string envelope_markdown(const Json& env) {
    std::ostringstream o;
    const auto& in = env["input"];
    o << "## " << env["quantity"].get<std::string>() << " for " << in["group"].get<std::string>() << "\n\n";
    o << "g = " << in["g"].dump() << ", n = " << in["n"].dump() << ", delta lift = " << in["delta_lift"].dump() << "\n\n";
    o << "| field | value |\n|---|---|\n";
    for (const auto& [k, v] : env["result"].items()) {
        if (k == "pieces") continue;
        o << "| " << k << " | " << cell(v) << " |\n";
    }
    if (env["result"].contains("pieces")) {
        o << "\n| piece | group | tag |\n|---|---|---|\n";
        for (const auto& p : env["result"]["pieces"])
            o << "| " << p["label"].get<std::string>() << " | " << cell(p["group"]) << " | "
              << p["tag"].get<std::string>() << " |\n";
    }
    for (const auto& c : env["checks"]) o << "\ncheck " << c["name"].get<std::string>() << ": " << (c["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
    for (const auto& a : env["assumptions"]) o << "\nassumes " << a.get<std::string>() << "\n";
    for (const auto& n : env["notes"]) o << "\nnote: " << n.get<std::string>() << "\n";
    o << "\ntheorems: ";
    bool first = true;
    for (const auto& t : env["theorems"]) {
        o << (first ? "" : ", ") << t.get<std::string>();
        first = false;
    }
    o << "\n";
    return o.str();
}

int exit_code_for(const std::string& kind) {
    static const std::vector<std::string> input = {
        "ParseError",      "InvalidIsogeny", "UnsupportedType",   "NotInLattice",           "IncompatibleDelta",
        "FormNotDEven",    "InvalidParams",  "InvalidDatum",      "AmbientMismatch",        "RankTooLarge",
        "NotWInvariantPullback", "NonIntegralEvaluation"};
    static const std::vector<std::string> applicability = {"GenusOutOfRange", "Genus0NotHere", "NeedsMarkedPoint"};
    if (std::find(input.begin(), input.end(), kind) != input.end()) return 2;
    if (std::find(applicability.begin(), applicability.end(), kind) != applicability.end()) return 3;
    return 1;
}

}  // namespace piclat
