#include "higgsteich/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

namespace higgsteich {

Json tagged_exact(Json value) {
    return Json{{"value", std::move(value)}, {"provenance", "exact"}};
}

Json tagged_numeric(Json value, double tolerance) {
    std::ostringstream os;
    os << "numeric(" << tolerance << ")";
    return Json{{"value", std::move(value)}, {"provenance", os.str()}};
}

Json to_json(const LineBundleClass& b) {
    return Json{{"l_exp", b.l_exp()}, {"xi_exp", b.xi_exp()}, {"degree", degree(b)}};
}

Json to_json(const ParabolicBundle& pb) {
    Json summands = Json::array();
    for (const auto& s : pb.summands()) summands.push_back(to_json(s));
    return Json{{"summands", std::move(summands)},
                {"weight", to_string(pb.weight())},
                {"rank", pb.rank()},
                {"par_degree", to_string(par_degree(pb))}};
}

Json to_json(const std::vector<std::vector<long long>>& m) {
    Json rows = Json::array();
    for (const auto& row : m) rows.push_back(row);
    return rows;
}

Json to_json(const StabilityVerdict& v) {
    Json witnesses = Json::array();
    for (const auto& w : v.witnesses)
        witnesses.push_back(Json{{"summands", w.summands},
                                 {"par_degree", to_string(w.par_degree)}});
    return Json{{"stable", v.stable},
                {"by_scaling_argument", v.by_scaling},
                {"witnesses", std::move(witnesses)}};
}

Json to_json(const DimensionReport& rep) {
    Json per_j = Json::array();
    for (const auto& [j, d] : rep.per_j_terms)
        per_j.push_back(Json{{"j", j}, {"real_dim", d}});
    return Json{{"g", rep.g},
                {"n", rep.n},
                {"k", rep.k},
                {"hitchin_base_real_dim", rep.hitchin_base_real_dim},
                {"closed_form_dim", rep.closed_form_dim},
                {"rep_variety_dim", rep.rep_variety_dim},
                {"agree", rep.agree},
                {"per_j_terms", std::move(per_j)}};
}

Json to_json(const RadialSolution& sol) {
    Json q;
    switch (sol.q_model.kind) {
        case CoefficientModel::Kind::Zero: q = Json{{"kind", "zero"}}; break;
        case CoefficientModel::Kind::Constant:
            q = Json{{"kind", "const"},
                     {"c_re", sol.q_model.c.real()},
                     {"c_im", sol.q_model.c.imag()}};
            break;
        case CoefficientModel::Kind::SimplePole:
            q = Json{{"kind", "pole"},
                     {"c_re", sol.q_model.c.real()},
                     {"c_im", sol.q_model.c.imag()}};
            break;
    }
    return Json{{"grid",
                 Json{{"s_min", sol.grid.s_min},
                      {"s_max", sol.grid.s_max},
                      {"node_count", sol.grid.node_count}}},
                {"u", sol.u},
                {"residual", sol.final_residual},
                {"iterations", sol.newton_iterations},
                {"q_model", std::move(q)}};
}

std::string dims_csv(const std::vector<DimensionReport>& rows) {
    std::ostringstream os;
    os << "k,hitchin_base_real_dim,closed_form_dim,rep_variety_dim,agreement\n";
    for (const auto& r : rows)
        os << r.k << "," << r.hitchin_base_real_dim << "," << r.closed_form_dim
           << "," << r.rep_variety_dim << "," << (r.agree ? "agree" : "DISAGREE")
           << "\n";
    return os.str();
}

Json report_envelope(const std::string& command, const std::string& timestamp,
                     Json config, Json results) {
    Json out{{"artifact", "higgsteich"}, {"version", "0.1.0"}, {"command", command}};
    if (!timestamp.empty()) out["timestamp"] = timestamp;
    out["config"] = std::move(config);
    out["results"] = std::move(results);
    return out;
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace higgsteich
