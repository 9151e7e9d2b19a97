// qst: command-line front end for Q-graph construction, spectra and state
// transfer analysis.
//
// Exit codes: 0 analysis completed (whatever the verdict), 2 input or
// hypothesis error, 3 internal invariant violation.

#include "qst/edge_list.hpp"
#include "qst/errors.hpp"
#include "qst/graph.hpp"
#include "qst/qgraph_spectra.hpp"
#include "qst/report.hpp"
#include "qst/spectral.hpp"
#include "qst/transfer.hpp"
#include "qst/walk.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kInputError = 2;
constexpr int kInvariantError = 3;

struct RunConfig {
    qst::Tolerances tol;
    std::string out;
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw qst::InputError("cannot write '" + path + "'");
    }
    file << text;
}

void emit(const qst::Json& doc, const std::string& path) {
    emit(doc.dump(2) + "\n", path);
}

void check_tolerances(const qst::Tolerances& tol) {
    if (!(tol.eigen > 0.0 && tol.support > 0.0 && tol.validation > 0.0)) {
        throw qst::InputError("tolerances must be positive");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Q-graph spectra and quantum state transfer analysis"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--tol-eigen", cfg.tol.eigen, "eigenvalue grouping tolerance")->capture_default_str();
    app.add_option("--tol-support", cfg.tol.support, "eigenvalue support tolerance")->capture_default_str();
    app.add_option("--tol-validation", cfg.tol.validation, "dynamic PST confirmation tolerance")
        ->capture_default_str();

    // family
    auto* family = app.add_subcommand("family", "write a named graph family as an edge list");
    std::string family_name;
    std::vector<int> family_params;
    family->add_option("name", family_name,
                       "hypercube | cocktail | halved_hypercube | cycle | complete | path | petersen")
        ->required();
    family->add_option("params", family_params, "integer parameters");
    family->add_option("-o,--out", cfg.out, "output path (default stdout)");

    // qgraph
    auto* qgraph = app.add_subcommand("qgraph", "write the Q-graph of an edge-list graph");
    std::string in_path;
    qgraph->add_option("input", in_path, "edge-list file")->required();
    qgraph->add_option("-o,--out", cfg.out, "output path (default stdout)");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "adjacency spectrum as JSON");
    bool closed_form = false;
    spectrum->add_option("input", in_path, "edge-list file")->required();
    spectrum->add_flag("--closed-form", closed_form,
                       "treat the input as a base graph G and report the closed-form spectrum of Q(G)");
    spectrum->add_option("-o,--out", cfg.out, "output path (default stdout)");

    // pst
    auto* pst = app.add_subcommand("pst", "perfect state transfer certificate between u and v");
    qst::Vertex u = 0;
    qst::Vertex v = 0;
    pst->add_option("input", in_path, "edge-list file")->required();
    pst->add_option("u", u)->required();
    pst->add_option("v", v)->required();
    pst->add_option("-o,--out", cfg.out, "output path (default stdout)");

    // no-pst-qgraph
    auto* no_pst = app.add_subcommand("no-pst-qgraph", "no-PST certificate for Q(G), G integral regular");
    no_pst->add_option("base", in_path, "edge-list file of G")->required();
    no_pst->add_option("-o,--out", cfg.out, "output path (default stdout)");

    // pgst
    auto* pgst = app.add_subcommand("pgst", "search a pretty good state transfer time in Q(G)");
    qst::PGSTOptions pgst_opts;
    pgst->add_option("base", in_path, "edge-list file of G")->required();
    pgst->add_option("u", u)->required();
    pgst->add_option("v", v)->required();
    pgst->add_option("--eps", pgst_opts.epsilon, "target gap epsilon")->capture_default_str();
    pgst->add_option("--alpha-max", pgst_opts.alpha_max, "largest alpha scanned")->capture_default_str();
    pgst->add_option("--jobs", pgst_opts.jobs, "parallel workers")->capture_default_str();
    pgst->add_option("-o,--out", cfg.out, "output path (default stdout)");

    // fidelity
    auto* fidelity = app.add_subcommand("fidelity", "fidelity |H(t)_vu| on a uniform time grid as CSV");
    double t0 = 0.0;
    double t1 = 10.0;
    int steps = 1001;
    bool via_base = false;
    fidelity->add_option("input", in_path, "edge-list file")->required();
    fidelity->add_option("u", u)->required();
    fidelity->add_option("v", v)->required();
    fidelity->add_option("--t0", t0, "start time")->capture_default_str();
    fidelity->add_option("--t1", t1, "end time")->capture_default_str();
    fidelity->add_option("--steps", steps, "grid points")->capture_default_str();
    fidelity->add_flag("--qgraph", via_base,
                       "treat the input as a base graph G and scan Q(G) between original vertices");
    fidelity->add_option("-o,--out", cfg.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        check_tolerances(cfg.tol);

        if (family->parsed()) {
            emit(qst::write_edge_list(qst::make_family(family_name, family_params)), cfg.out);
        } else if (qgraph->parsed()) {
            emit(qst::write_edge_list(qst::q_graph(qst::read_edge_list_file(in_path))), cfg.out);
        } else if (spectrum->parsed()) {
            const auto g = qst::read_edge_list_file(in_path);
            if (!closed_form) {
                emit(qst::spectrum_json(g, qst::decompose(g, cfg.tol)), cfg.out);
            } else {
                const auto base = qst::prepare_base(g);
                for (const auto& w : base.warnings) {
                    std::cerr << "warning: " << w << "\n";
                }
                const auto dec = qst::decompose(g, cfg.tol);
                const auto pairs = qst::closed_form_spectrum(base, dec);
                const auto numeric = qst::eigendecompose(qst::q_graph(g).adjacency().cast<double>(), cfg.tol);
                const double deviation =
                    qst::multiset_deviation(qst::expanded_values(pairs), qst::expanded_values(numeric));
                if (deviation > 1e-8) {
                    throw qst::InvariantViolation("closed-form spectrum deviates from numeric by " +
                                                  std::to_string(deviation));
                }
                emit(qst::closed_form_json(base, dec, pairs, deviation), cfg.out);
            }
        } else if (pst->parsed()) {
            const auto g = qst::read_edge_list_file(in_path);
            if (u < 0 || v < 0 || u >= g.order() || v >= g.order() || u == v) {
                throw qst::InputError("u and v must be distinct vertices of the graph");
            }
            if (!qst::classify(g).is_connected) {
                throw qst::HypothesisError("pst requires a connected graph");
            }
            emit(qst::to_json(qst::pst_check(qst::decompose(g, cfg.tol), u, v)), cfg.out);
        } else if (no_pst->parsed()) {
            const auto cert = qst::qgraph_no_pst_certificate(qst::read_edge_list_file(in_path), cfg.tol);
            emit(qst::to_json(cert), cfg.out);
            if (!cert.applicable) {
                std::cerr << "not applicable: " << cert.reason << "\n";
                return kInputError;
            }
        } else if (pgst->parsed()) {
            const auto g = qst::read_edge_list_file(in_path);
            emit(qst::to_json(qst::pgst_witness_search(g, u, v, pgst_opts, cfg.tol)), cfg.out);
        } else if (fidelity->parsed()) {
            const auto g = qst::read_edge_list_file(in_path);
            const auto dec = qst::decompose(g, cfg.tol);
            qst::FidelitySeries series;
            if (via_base) {
                const auto base = qst::prepare_base(g);
                series = qst::fidelity_scan(
                    [&](double t, qst::Vertex a, qst::Vertex b) {
                        return qst::qgraph_amplitude(dec, base.r, base.bipartite, t, a, b);
                    },
                    u, v, t0, t1, steps);
            } else {
                if (u < 0 || v < 0 || u >= g.order() || v >= g.order()) {
                    throw qst::InputError("u and v must be vertices of the graph");
                }
                series = qst::fidelity_scan(
                    [&](double t, qst::Vertex a, qst::Vertex b) { return qst::amplitude(dec, t, a, b); }, u,
                    v, t0, t1, steps);
            }
            emit(qst::to_csv(series), cfg.out);
        }
    } catch (const qst::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const qst::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kInvariantError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInvariantError;
    }
    return 0;
}
