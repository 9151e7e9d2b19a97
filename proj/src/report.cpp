#include "qst/report.hpp"

#include <cstdio>
#include <cstdlib>

namespace qst {

double round15(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    const double out = std::strtod(buf, nullptr);
    return out == 0.0 ? 0.0 : out;  // drop negative zero
}

namespace {

Json complex_json(Complex z) {
    return Json{{"re", round15(z.real())}, {"im", round15(z.imag())}};
}

Json entries_json(const std::vector<SupportEntry>& xs) {
    Json out = Json::array();
    for (const auto& e : xs) {
        Json j{{"value", round15(e.value)}};
        if (e.exact) {
            j["exact"] = to_json(*e.exact);
        }
        out.push_back(std::move(j));
    }
    return out;
}

Json member_json(const QSupportMember& x) {
    Json j{{"branch", to_string(x.branch)}};
    if (x.source) {
        j["source_eigenvalue"] = *x.source;
    }
    j["value"] = to_json(x.value);
    return j;
}

}  // namespace

Json to_json(const Tolerances& tol) {
    return Json{{"eigen", tol.eigen},
                {"support", tol.support},
                {"validation", tol.validation},
                {"integrality", tol.integrality}};
}

Json to_json(const QuadraticNumber& q) {
    return Json{{"a", q.a()},
                {"b", q.b()},
                {"D", q.radicand()},
                {"text", q.to_string()},
                {"approx", round15(q.to_double())}};
}

Json to_json(const PSTCertificate& cert) {
    Json j;
    j["kind"] = "pst_certificate";
    j["verdict"] = to_string(cert.verdict);
    j["u"] = cert.u;
    j["v"] = cert.v;
    j["exact_spectrum"] = cert.exact_spectrum;
    j["support"] = entries_json(cert.support);
    j["s_plus"] = entries_json(cert.s_plus);
    j["s_minus"] = entries_json(cert.s_minus);
    Json conditions;
    conditions["strongly_cospectral"] =
        !(cert.violated && *cert.violated == Violation::not_strongly_cospectral);
    if (cert.violated == Violation::not_strongly_cospectral) {
        conditions["support_quadratic"] = nullptr;
        conditions["parity"] = nullptr;
    } else {
        conditions["support_quadratic"] = cert.violated != Violation::support_not_quadratic;
        conditions["parity"] = cert.violated == Violation::support_not_quadratic
                                   ? Json(nullptr)
                                   : Json(cert.violated != Violation::parity_mismatch);
    }
    j["conditions"] = std::move(conditions);
    if (cert.verdict == Verdict::pst) {
        j["delta"] = cert.delta;
        j["a"] = cert.a;
        j["g"] = cert.g;
        j["tau0"] = round15(cert.tau0);
        j["pst_times"] = "odd multiples of tau0";
        j["phase"] = complex_json(cert.phase);
        j["amplitude_at_tau0"] = complex_json(cert.confirmed_amplitude);
    } else {
        Json violated;
        violated["tag"] = to_string(*cert.violated);
        violated["witness"] = cert.witness;
        Json values = Json::array();
        for (double x : cert.witness_values) {
            values.push_back(round15(x));
        }
        violated["witness_values"] = std::move(values);
        j["violated_condition"] = std::move(violated);
    }
    j["tolerances"] = to_json(cert.tol);
    return j;
}

Json to_json(const PeriodicityReport& rep) {
    Json j{{"vertex", rep.vertex}, {"periodic", rep.periodic}, {"mode", to_string(rep.mode)}};
    if (rep.mode == PeriodicMode::single_surd) {
        j["delta"] = rep.delta;
        j["a"] = rep.a;
    }
    if (rep.witness) {
        j["reason"] = rep.reason;
        j["witness"] = Json::array({to_json(rep.witness->first), to_json(rep.witness->second)});
    }
    return j;
}

Json to_json(const QGraphNoPSTCertificate& cert) {
    Json j;
    j["kind"] = "qgraph_no_pst_certificate";
    j["verdict"] = cert.applicable ? to_string(cert.verdict) : "not_applicable";
    Json pre{{"n", cert.n},
             {"m", cert.m},
             {"r", cert.r},
             {"connected", cert.connected},
             {"bipartite", cert.bipartite},
             {"order_above_two", cert.n > 2}};
    if (!cert.applicable) {
        j["reason"] = cert.reason;
        j["preamble"] = std::move(pre);
        return j;
    }
    Json spectrum = Json::array();
    for (std::size_t i = 0; i < cert.spectrum.size(); ++i) {
        spectrum.push_back(Json{{"eigenvalue", cert.spectrum[i]}, {"multiplicity", cert.multiplicities[i]}});
    }
    pre["integral_spectrum"] = spectrum;
    j["preamble"] = std::move(pre);
    Json vertices = Json::array();
    for (const auto& vc : cert.vertices) {
        Json x;
        x["z"] = vc.z;
        x["kind"] = vc.edge_vertex ? "edge" : "original";
        if (vc.edge) {
            x["edge"] = Json::array({vc.edge->first, vc.edge->second});
        }
        Json support = Json::array();
        for (const auto& mbr : vc.support) {
            support.push_back(member_json(mbr));
        }
        x["support"] = std::move(support);
        x["not_all_integer"] = Json{{"member", member_json(vc.irrational_member)},
                                    {"delta_squared", vc.irrational_delta_sq},
                                    {"perfect_square", false}};
        if (vc.edge_witness_eigenvalue) {
            x["edge_witness_eigenvalue"] = *vc.edge_witness_eigenvalue;
        }
        x["periodicity"] = to_json(vc.periodicity);
        x["verdict"] = "no_pst";
        vertices.push_back(std::move(x));
    }
    j["vertices"] = std::move(vertices);
    return j;
}

Json to_json(const PGSTWitness& w) {
    Json j;
    j["kind"] = "pgst_witness";
    j["u"] = w.u;
    j["v"] = w.v;
    j["epsilon"] = round15(w.epsilon);
    j["alpha_max"] = w.alpha_max;
    j["r"] = w.r;
    j["g"] = w.g;
    j["bipartite"] = w.bipartite;
    j["status"] = w.target_reached ? "target_reached" : "target_not_reached";
    j["alpha"] = w.alpha;
    j["t0"] = round15(w.t0);
    j["t0_formula"] = "(4*alpha + 2/g)*pi";
    j["fidelity"] = round15(w.fidelity);
    j["reduced_fidelity"] = round15(w.reduced_fidelity);
    j["fidelity_lower_bound"] = round15(w.fidelity_lower_bound);
    j["max_residual"] = round15(w.max_residual);
    Json table = Json::array();
    for (const auto& row : w.table) {
        table.push_back(Json{{"lambda", row.lambda},
                             {"delta_squared", row.delta_sq},
                             {"sigma", row.sigma},
                             {"theta", row.theta},
                             {"p", row.p},
                             {"residual", round15(row.residual)},
                             {"weight", round15(row.weight)}});
    }
    j["theta_sigma"] = std::move(table);
    return j;
}

Json spectrum_json(const Graph& g, const SpectralDecomposition& dec) {
    Json j;
    j["kind"] = "spectrum";
    j["mode"] = "numeric";
    j["n"] = g.order();
    j["m"] = g.size();
    j["exact"] = dec.exact();
    Json values = Json::array();
    for (std::size_t i = 0; i < dec.count(); ++i) {
        Json e;
        if (dec.exact()) {
            e["eigenvalue"] = dec.integer_eigenvalues[i];
        } else {
            e["eigenvalue"] = round15(dec.eigenvalues[i]);
        }
        e["multiplicity"] = dec.multiplicities[i];
        values.push_back(std::move(e));
    }
    j["eigenvalues"] = std::move(values);
    j["tolerances"] = to_json(dec.tol);
    return j;
}

Json closed_form_json(const QGraphBase& base, const SpectralDecomposition& dec,
                      const std::vector<QGraphEigenpair>& pairs, double numeric_deviation) {
    Json j;
    j["kind"] = "spectrum";
    j["mode"] = "closed_form";
    j["base"] = Json{{"n", base.graph.order()},
                     {"m", base.graph.size()},
                     {"r", base.r},
                     {"bipartite", base.bipartite},
                     {"exact", dec.exact()}};
    Json values = Json::array();
    for (const auto& p : pairs) {
        Json e;
        e["branch"] = to_string(p.branch);
        if (p.source_eigenvalue) {
            e["source_eigenvalue"] = dec.exact() ? Json(dec.integer_eigenvalues[*p.source_index])
                                                 : Json(round15(*p.source_eigenvalue));
        }
        e["value"] = round15(p.value);
        if (p.exact) {
            e["exact"] = to_json(*p.exact);
        }
        e["multiplicity"] = p.multiplicity;
        values.push_back(std::move(e));
    }
    j["eigenvalues"] = std::move(values);
    j["numeric_check_max_deviation"] = round15(numeric_deviation);
    if (!base.warnings.empty()) {
        j["warnings"] = base.warnings;
    }
    j["tolerances"] = to_json(dec.tol);
    return j;
}

}  // namespace qst
