#pragma once

#include "qst/graph.hpp"
#include "qst/qgraph_spectra.hpp"
#include "qst/quadratic.hpp"
#include "qst/spectral.hpp"
#include "qst/walk.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qst {

// ---------------------------------------------------------------------------
// Quadratic forms of an eigenvalue support

/// A support written over one square-free radicand as (a + b_l sqrt(delta))/2
/// with a shared integer a; members aligned with the input order.
struct QuadraticSupport {
    std::int64_t delta = 1;
    std::int64_t a = 0;
    std::vector<QuadraticNumber> members;
};

/// Recovers exact forms for numeric support eigenvalues (first entry must be
/// the largest). Returns nullopt and fills `witness` with the offending
/// member index when no common radicand and rational part exist.
std::optional<QuadraticSupport> identify_quadratic_support(std::span<const double> values,
                                                           double tolerance,
                                                           std::size_t* witness = nullptr);

/// gcd of the normalized gaps (lambda0 - lambda) / sqrt(delta) over the
/// support. Throws InputError when some gap is not a nonnegative integer
/// multiple of sqrt(delta).
std::int64_t compute_g(std::span<const QuadraticNumber> support, const QuadraticNumber& lambda0,
                       std::int64_t delta);

/// The normalized gap (lambda0 - lambda) / sqrt(delta) as an integer, or
/// nullopt when it is not one.
std::optional<std::int64_t> normalized_gap(const QuadraticNumber& lambda0,
                                           const QuadraticNumber& lambda, std::int64_t delta);

// ---------------------------------------------------------------------------
// Perfect state transfer

enum class Verdict { pst, no_pst };
enum class Violation { not_strongly_cospectral, support_not_quadratic, parity_mismatch };

std::string to_string(Verdict v);
std::string to_string(Violation v);

struct SupportEntry {
    double value = 0.0;
    std::optional<QuadraticNumber> exact;
};

struct PSTCertificate {
    Verdict verdict = Verdict::no_pst;
    Vertex u = 0;
    Vertex v = 0;
    bool exact_spectrum = false;
    std::vector<SupportEntry> support;  // decreasing
    std::vector<SupportEntry> s_plus;
    std::vector<SupportEntry> s_minus;

    // Set when the support has a quadratic form.
    std::int64_t delta = 1;
    std::int64_t a = 0;
    std::int64_t g = 0;

    // Set when verdict == pst.
    double tau0 = 0.0;          // pi / (g sqrt(delta)); PST at odd multiples only
    Complex phase{0.0, 0.0};    // exp(-i tau0 lambda0)
    Complex confirmed_amplitude{0.0, 0.0};

    std::optional<Violation> violated;
    std::string witness;
    std::vector<double> witness_values;

    Tolerances tol;
};

/// Decides PST between u and v from the three support conditions
/// (strong cospectrality, common quadratic form, gap parity). A pst verdict
/// is confirmed dynamically; a failed confirmation throws InvariantViolation.
PSTCertificate pst_check(const SpectralDecomposition& dec, Vertex u, Vertex v);

// ---------------------------------------------------------------------------
// Periodicity

enum class PeriodicMode { all_integer, single_surd, none };
std::string to_string(PeriodicMode m);

struct PeriodicityReport {
    Vertex vertex = 0;
    bool periodic = false;
    PeriodicMode mode = PeriodicMode::none;
    std::int64_t delta = 1;  // common radicand when single_surd
    std::int64_t a = 0;      // common rational part when single_surd
    /// Offending pair when not periodic.
    std::optional<std::pair<QuadraticNumber, QuadraticNumber>> witness;
    std::string reason;  // "distinct_radicands" or "distinct_rational_parts"
};

PeriodicityReport periodicity_check(std::span<const QuadraticNumber> support, Vertex vertex);

// ---------------------------------------------------------------------------
// No-PST certificate for Q(G), G integral and regular

struct QSupportMember {
    Branch branch = Branch::plus;
    std::optional<std::int64_t> source;  // lambda_i for the +- branches
    QuadraticNumber value;
};

struct VertexCertificate {
    Vertex z = 0;
    bool edge_vertex = false;
    std::optional<Edge> edge;
    std::vector<QSupportMember> support;
    /// A support member lambda_{i+-} whose (lambda_i + r)^2 + 4 is not a
    /// perfect square, so the support is not all integers.
    QSupportMember irrational_member;
    std::int64_t irrational_delta_sq = 0;
    /// Edge-vertices: a non-principal eigenvalue lambda_{i0} of G with
    /// E_{i0} R e_k != 0.
    std::optional<std::int64_t> edge_witness_eigenvalue;
    PeriodicityReport periodicity;
};

struct QGraphNoPSTCertificate {
    bool applicable = false;
    std::string reason;  // why not applicable
    Verdict verdict = Verdict::no_pst;
    int n = 0;
    int m = 0;
    int r = 0;
    bool connected = false;
    bool bipartite = false;
    std::vector<std::int64_t> spectrum;
    std::vector<int> multiplicities;
    std::vector<VertexCertificate> vertices;
};

/// Per-vertex no-PST argument for every vertex of Q(G), computed from exact
/// data of G. When G is not connected, regular of degree >= 2, of order > 2
/// and integral, returns applicable == false with the reason.
QGraphNoPSTCertificate qgraph_no_pst_certificate(const Graph& g, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Pretty good state transfer witness search

struct PGSTRow {
    std::int64_t lambda = 0;
    std::int64_t delta_sq = 0;  // (lambda + r)^2 + 4 = sigma^2 theta
    std::int64_t sigma = 1;
    std::int64_t theta = 1;
    std::int64_t p = 0;          // nearest integer to (alpha + 1/(2g)) sqrt(theta)
    double residual = 0.0;       // (alpha + 1/(2g)) sqrt(theta) - p
    double weight = 0.0;         // E_lambda(v, u)
};

struct PGSTWitness {
    Vertex u = 0;
    Vertex v = 0;
    double epsilon = 0.0;
    std::int64_t alpha_max = 0;
    std::int64_t g = 0;
    int r = 0;
    bool bipartite = false;
    bool target_reached = false;
    std::int64_t alpha = 0;
    double t0 = 0.0;               // (4 alpha + 2/g) pi
    double fidelity = 0.0;         // |Q-graph amplitude| at t0
    double reduced_fidelity = 0.0; // same, with phases reduced exactly mod 2 pi
    double fidelity_lower_bound = 0.0;
    double max_residual = 0.0;
    std::vector<PGSTRow> table;
};

struct PGSTOptions {
    double epsilon = 0.01;
    std::int64_t alpha_max = 1'000'000;
    int jobs = 1;
};

/// Scans alpha = 1..alpha_max for the smallest alpha whose time
/// t0 = (4 alpha + 2/g) pi gives Q-graph fidelity > 1 - epsilon between
/// original vertices u and v. Requires PST in G between u and v at pi/g over
/// an integral support, and r/g even when G is bipartite; otherwise throws
/// HypothesisError. Exhausting alpha_max returns the best witness seen with
/// target_reached == false.
PGSTWitness pgst_witness_search(const Graph& g, Vertex u, Vertex v, const PGSTOptions& options,
                                const Tolerances& tol = {});

}  // namespace qst
