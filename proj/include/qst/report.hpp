#pragma once

#include "qst/qgraph_spectra.hpp"
#include "qst/spectral.hpp"
#include "qst/transfer.hpp"

#include <json.hpp>

namespace qst {

using Json = nlohmann::ordered_json;

/// Rounds to 15 significant digits so documents are byte-stable.
double round15(double x);

Json to_json(const Tolerances& tol);
Json to_json(const QuadraticNumber& q);
Json to_json(const PSTCertificate& cert);
Json to_json(const PeriodicityReport& rep);
Json to_json(const QGraphNoPSTCertificate& cert);
Json to_json(const PGSTWitness& w);

/// Numeric spectrum of a graph: eigenvalue / multiplicity list.
Json spectrum_json(const Graph& g, const SpectralDecomposition& dec);

/// Closed-form Q-graph spectrum of a base graph, with the largest deviation
/// from the numeric spectrum of q_graph(base) as a cross-check.
Json closed_form_json(const QGraphBase& base, const SpectralDecomposition& dec,
                      const std::vector<QGraphEigenpair>& pairs, double numeric_deviation);

}  // namespace qst
