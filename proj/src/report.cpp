#include "paracr/report.hpp"

#include <sstream>

namespace paracr {

using nlohmann::json;

PointAssignments parse_point_spec(const std::string& spec) {
    PointAssignments out;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        std::string item = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        pos = comma == std::string::npos ? spec.size() : comma + 1;
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw Error("point spec: expected name=value in '" + item + "'");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        out.emplace_back(trim(item.substr(0, eq)),
                         Rational::from_string(trim(item.substr(eq + 1))));
    }
    return out;
}

Submanifold build_model(const ModelFile& mf, int degree_override) {
    ModelFile m = mf;
    if (degree_override > 0) m.trunc = degree_override;
    Series s = m.parse();
    switch (m.side) {
        case ModelSide::q_graph: return from_Q(s, m.n, m.m);
        case ModelSide::p_graph: return from_P(s, m.n, m.m);
        default: return from_R(s, m.n, m.m);
    }
}

bool InvariantReport::any_failure() const {
    for (const auto& [name, v] : identity_verdicts)
        if (v.failed()) return true;
    if (integrability && integrability->failed()) return true;
    return false;
}

InvariantReport analyze(const ModelFile& mf, const AnalyzeOptions& opts) {
    InvariantReport rep;
    rep.model_echo = mf.expr;
    rep.n = mf.n;
    rep.m = mf.m;

    Submanifold M = build_model(mf, opts.degree);
    rep.truncation = M.trunc();
    rep.reliable_degree = M.Q.reliable();

    if (opts.normalize) {
        M = normalize_coordinates(M).first;
        rep.normalized_applied = true;
    }

    rep.identity_verdicts.emplace_back("functional relations", check_functional_relations(M));

    LeviData L = levi(M);
    rep.levi_rank_at_origin = L.rank0;
    rep.levi_generic_rank = L.generic_rank;
    rep.identity_verdicts.emplace_back("levi transpose", check_levi_transpose(M));

    if (M.n == 2 && M.m == 2) {
        auto [d, b] = delta_and_box(M);
        rep.delta0 = d.at_origin();
        rep.box0 = b.at_origin();
    }

    rep.k_max_searched = opts.k_max;
    try {
        NondegReport nr = nondeg_report(M, opts.k_max, opts.point);
        rep.k_par = nr.k_par;
        rep.l_var = nr.l_var;
        rep.case_label = nr.case_label;
    } catch (const OrderTooHighForTruncation& e) {
        rep.notes.push_back(std::string("nondegeneracy search skipped: ") + e.what());
    }

    // beta / beta_underline want the Q = c + xa + O(3) position.
    if (M.n == 2 && M.m == 2 && L.rank0 == 1) {
        try {
            Submanifold Mn = M;
            if (!is_normalized(Mn)) Mn = normalize_coordinates(Mn).first;
            auto [r, M1] = levi_rank_normal_form(Mn);
            if (r == 1) {
                NormalForm22 nf = normal_form_22(M1, opts.scale);
                rep.beta = nf.beta;
                rep.beta_underline = nf.beta_underline;
            }
        } catch (const Error& e) {
            rep.notes.push_back(std::string("normal form skipped: ") + e.what());
        }
    }

    if (M.n == 2 && M.m == 2) {
        if (rep.delta0 && !rep.delta0->is_zero()) {
            PdeSystem S = derive_pde(M);
            IdentityReport ir = structural_identities(M, S);
            for (auto& item : ir.items) rep.identity_verdicts.push_back(item);
            if (ir.hachtroudi_branch)
                rep.notes.push_back(
                    "F_zxx does not vanish identically: second-order (Hachtroudi) branch; "
                    "coframe emission skipped");
            try {
                rep.integrability = check_integrability(S);
            } catch (const InconclusiveTruncation& e) {
                rep.notes.push_back(e.what());
            }
            if (!ir.hachtroudi_branch) {
                rep.coframe = initial_coframe(M, S);
                ContactTransferReport ct = check_contact_transfer(M, &S);
                for (auto& item : ct.items)
                    rep.identity_verdicts.emplace_back("contact transfer: " + item.first,
                                                       item.second);
            }
            rep.pde = std::move(S);
        } else {
            rep.notes.push_back("Delta(Q)(0) = 0: direct PDE system not derivable");
        }
        if (L.rank0 == 1 && L.generic_rank == 1) {
            try {
                BracketReport br = check_kernel_brackets(M);
                for (auto& item : br.items) rep.identity_verdicts.emplace_back(item);
            } catch (const NonUnitDenominator& e) {
                rep.notes.push_back(std::string("kernel brackets skipped: ") + e.what());
            }
        } else {
            rep.notes.push_back("kernel brackets skipped: Levi rank is not 1");
        }
    }
    return rep;
}

// --- JSON ---

static std::string mono_key(const Mono& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e[i]);
    }
    return s;
}

json series_to_json(const Series& s) {
    json coeffs = json::object();
    for (const auto& [e, c] : s.terms()) coeffs[mono_key(e)] = c.str();
    return json{{"vars", s.space()->names()},
                {"trunc", s.trunc()},
                {"reliable", s.reliable()},
                {"coeffs", coeffs}};
}

json verdict_to_json(const Verdict& v) {
    json j{{"status", v.status_str()}, {"checked_degree", v.checked_degree}};
    if (!v.detail.empty()) j["detail"] = v.detail;
    return j;
}

json levi_to_json(const LeviData& L) {
    auto mat = [](const SeriesMatrix& m) {
        json rows = json::array();
        for (const auto& r : m) {
            json row = json::array();
            for (const auto& s : r) row.push_back(series_to_json(s));
            rows.push_back(row);
        }
        return rows;
    };
    return json{{"levi_par", mat(L.levi_par)},
                {"levi_var", mat(L.levi_var)},
                {"rank_at_origin", L.rank0},
                {"generic_rank", L.generic_rank}};
}

json pde_to_json(const PdeSystem& S) {
    return json{{"dual", S.dual},
                {"vars", S.jspace->names()},
                {"F", series_to_json(S.F)},
                {"H", series_to_json(S.H)},
                {"base", {S.base[0].str(), S.base[1].str(), S.base[2].str()}}};
}

json coframe_to_json(const CoframeData& cd) {
    json contact = json::array();
    for (const auto& row : cd.contact_forms) {
        json r = json::array();
        for (const auto& s : row) r.push_back(series_to_json(s));
        contact.push_back(r);
    }
    json pattern = json::array();
    for (const auto& row : cd.group_pattern) {
        json r = json::array();
        for (const auto& cell : row) r.push_back(cell);
        pattern.push_back(r);
    }
    return json{{"k", series_to_json(cd.k)},
                {"l", series_to_json(cd.l)},
                {"contact_forms", contact},
                {"nu1_dy_coeff", series_to_json(cd.nu1_dy_coeff)},
                {"triangular", cd.triangular},
                {"group_pattern", pattern}};
}

json nondeg_to_json(const NondegReport& r) {
    json j{{"k_max_searched", r.k_max_searched}};
    j["k_par"] = r.k_par ? json(*r.k_par) : json(nullptr);
    j["l_var"] = r.l_var ? json(*r.l_var) : json(nullptr);
    if (r.delta0) j["delta0"] = r.delta0->str();
    if (r.box0) j["box0"] = r.box0->str();
    if (r.case_label) j["case"] = case_label_str(*r.case_label);
    return j;
}

json report_to_json(const InvariantReport& r) {
    json verdicts = json::object();
    for (const auto& [name, v] : r.identity_verdicts) verdicts[name] = verdict_to_json(v);
    json j{{"model", r.model_echo},
           {"n", r.n},
           {"m", r.m},
           {"truncation", r.truncation},
           {"reliable_degree", r.reliable_degree},
           {"normalized", r.normalized_applied},
           {"levi_rank_at_origin", r.levi_rank_at_origin},
           {"levi_generic_rank", r.levi_generic_rank},
           {"k_max_searched", r.k_max_searched},
           {"identity_verdicts", verdicts},
           {"notes", r.notes}};
    j["delta0"] = r.delta0 ? json(r.delta0->str()) : json(nullptr);
    j["box0"] = r.box0 ? json(r.box0->str()) : json(nullptr);
    j["beta"] = r.beta ? json(r.beta->str()) : json(nullptr);
    j["beta_underline"] = r.beta_underline ? json(r.beta_underline->str()) : json(nullptr);
    j["k_par"] = r.k_par ? json(*r.k_par) : json(nullptr);
    j["l_var"] = r.l_var ? json(*r.l_var) : json(nullptr);
    j["case"] = r.case_label ? json(case_label_str(*r.case_label)) : json(nullptr);
    j["pde"] = r.pde ? pde_to_json(*r.pde) : json(nullptr);
    j["integrability"] = r.integrability ? verdict_to_json(*r.integrability) : json(nullptr);
    j["coframe"] = r.coframe ? coframe_to_json(*r.coframe) : json(nullptr);
    return j;
}

std::string report_to_text(const InvariantReport& r) {
    std::ostringstream out;
    out << "model: " << r.model_echo << "\n";
    out << "dimensions: n = " << r.n << ", m = " << r.m << "; truncation " << r.truncation
        << ", reliable degree " << r.reliable_degree << "\n";
    if (r.normalized_applied) out << "coordinates normalized\n";
    out << "Levi rank at origin: " << r.levi_rank_at_origin
        << ", generic rank: " << r.levi_generic_rank << "\n";
    if (r.delta0) out << "Delta(Q)(0) = " << r.delta0->str() << "\n";
    if (r.box0) out << "Box(P)(0)   = " << r.box0->str() << "\n";
    if (r.beta) out << "beta = " << r.beta->str() << ", beta_underline = " << r.beta_underline->str()
                    << "\n";
    out << "k_par = " << (r.k_par ? std::to_string(*r.k_par) : "none") << ", l_var = "
        << (r.l_var ? std::to_string(*r.l_var) : "none") << " (searched to "
        << r.k_max_searched << ")\n";
    if (r.case_label) out << "case: " << case_label_str(*r.case_label) << "\n";
    if (r.pde) {
        out << (r.pde->dual ? "dual PDE system:" : "PDE system:") << "\n";
        out << "  " << (r.pde->dual ? "c_b   = " : "z_y   = ") << r.pde->F.str() << "\n";
        out << "  " << (r.pde->dual ? "c_aaa = " : "z_xxx = ") << r.pde->H.str() << "\n";
    }
    for (const auto& [name, v] : r.identity_verdicts) {
        out << "  [" << v.status_str() << "] " << name;
        if (!v.detail.empty()) out << " -- " << v.detail;
        out << "\n";
    }
    if (r.integrability)
        out << "integrability D_x^3 F = D_y H: " << r.integrability->status_str() << "\n";
    if (r.coframe)
        out << "initial coframe: " << (r.coframe->triangular ? "triangular" : "non-triangular")
            << " group pattern; nu1 = dx + (" << r.coframe->nu1_dy_coeff.str() << ") dy\n";
    for (const auto& n : r.notes) out << "note: " << n << "\n";
    return out.str();
}

}  // namespace paracr
