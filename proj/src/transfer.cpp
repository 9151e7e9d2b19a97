#include "qst/transfer.hpp"

#include "qst/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

namespace qst {

std::string to_string(Verdict v) {
    return v == Verdict::pst ? "pst" : "no_pst";
}

std::string to_string(Violation v) {
    switch (v) {
        case Violation::not_strongly_cospectral: return "not_strongly_cospectral";
        case Violation::support_not_quadratic: return "support_not_quadratic";
        case Violation::parity_mismatch: return "parity_mismatch";
    }
    return "?";
}

std::string to_string(PeriodicMode m) {
    switch (m) {
        case PeriodicMode::all_integer: return "all_integer";
        case PeriodicMode::single_surd: return "single_surd";
        case PeriodicMode::none: return "none";
    }
    return "?";
}

// ---------------------------------------------------------------------------

std::optional<QuadraticSupport> identify_quadratic_support(std::span<const double> values,
                                                           double tolerance,
                                                           std::size_t* witness) {
    const auto fail = [witness](std::size_t j) -> std::optional<QuadraticSupport> {
        if (witness != nullptr) {
            *witness = j;
        }
        return std::nullopt;
    };
    if (values.empty()) {
        return fail(0);
    }
    const double top = values[0];
    const auto near = [tolerance](double x, double y) {
        return std::abs(x - y) <= tolerance * std::max(1.0, std::abs(y));
    };

    // 4 (lambda0 - lambda_j)^2 = sigma_j^2 delta for every j.
    std::vector<std::int64_t> sigma(values.size(), 0);
    std::int64_t delta = 1;
    for (std::size_t j = 1; j < values.size(); ++j) {
        const double gap = top - values[j];
        const double k = 4.0 * gap * gap;
        const double kr = std::round(k);
        if (gap <= 0.0 || kr < 1.0 || !near(k, kr)) {
            return fail(j);
        }
        const auto split = square_free_part(static_cast<std::int64_t>(kr));
        if (j == 1) {
            delta = split.theta;
        } else if (split.theta != delta) {
            return fail(j);
        }
        sigma[j] = split.sigma;
    }

    QuadraticSupport out;
    out.delta = delta;
    if (delta == 1) {
        const double twice = std::round(2.0 * top);
        if (!near(2.0 * top, twice)) {
            return fail(0);
        }
        for (std::size_t j = 0; j < values.size(); ++j) {
            out.members.push_back(QuadraticNumber::make(static_cast<std::int64_t>(twice) - sigma[j], 0, 1));
        }
    } else {
        // Galois conjugates are eigenvalues too, so |a| and |b0 sqrt(delta)|
        // are at most twice the spectral radius; the bound below is generous.
        const double root = std::sqrt(double(delta));
        double radius = 0.0;
        for (double x : values) {
            radius = std::max(radius, std::abs(x));
        }
        const auto bound = static_cast<std::int64_t>(std::ceil(4.0 * (radius + 2.0) / root));
        std::optional<std::int64_t> b0;
        for (std::int64_t b = -bound; b <= bound && !b0; ++b) {
            const double a = 2.0 * top - double(b) * root;
            if (near(a, std::round(a))) {
                b0 = b;
                out.a = static_cast<std::int64_t>(std::round(a));
            }
        }
        if (!b0) {
            return fail(0);
        }
        for (std::size_t j = 0; j < values.size(); ++j) {
            out.members.push_back(QuadraticNumber::make(out.a, *b0 - sigma[j], delta));
        }
    }
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!near(out.members[j].to_double(), values[j])) {
            return fail(j);
        }
    }
    return out;
}

std::optional<std::int64_t> normalized_gap(const QuadraticNumber& lambda0,
                                           const QuadraticNumber& lambda, std::int64_t delta) {
    QuadraticNumber diff;
    try {
        diff = lambda0 - lambda;
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
    std::int64_t twice = 0;
    if (delta == 1) {
        if (!diff.is_rational()) {
            return std::nullopt;
        }
        twice = diff.a();
    } else {
        if (diff.a() != 0 || (!diff.is_rational() && diff.radicand() != delta)) {
            return std::nullopt;
        }
        twice = diff.b();
    }
    if (twice < 0 || twice % 2 != 0) {
        return std::nullopt;
    }
    return twice / 2;
}

std::int64_t compute_g(std::span<const QuadraticNumber> support, const QuadraticNumber& lambda0,
                       std::int64_t delta) {
    std::int64_t g = 0;
    for (const auto& lambda : support) {
        const auto gap = normalized_gap(lambda0, lambda, delta);
        if (!gap) {
            throw InputError("compute_g: (" + lambda0.to_string() + " - " + lambda.to_string() +
                             ") / sqrt(" + std::to_string(delta) +
                             ") is not a nonnegative integer");
        }
        g = std::gcd(g, *gap);
    }
    if (g == 0) {
        throw InputError("compute_g: support has no nonzero gap");
    }
    return g;
}

// ---------------------------------------------------------------------------

namespace {

std::string join_values(const std::vector<double>& xs) {
    std::ostringstream os;
    os.precision(15);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        os << (i ? ", " : "") << xs[i];
    }
    return os.str();
}

}  // namespace

PSTCertificate pst_check(const SpectralDecomposition& dec, Vertex u, Vertex v) {
    if (u == v) {
        throw InputError("pst_check requires distinct vertices");
    }
    PSTCertificate cert;
    cert.u = u;
    cert.v = v;
    cert.tol = dec.tol;
    cert.exact_spectrum = dec.exact();

    const auto sup = eigenvalue_support(dec, u);
    const auto cos = strong_cospectrality(dec, u, v);

    std::vector<double> values;
    for (std::size_t i : sup.members) {
        values.push_back(dec.eigenvalues[i]);
    }
    const auto entry_for = [&](std::size_t index,
                               const std::optional<QuadraticSupport>& form) -> SupportEntry {
        SupportEntry e{dec.eigenvalues[index], std::nullopt};
        const auto pos = std::find(sup.members.begin(), sup.members.end(), index);
        if (form && pos != sup.members.end()) {
            e.exact = form->members[std::size_t(pos - sup.members.begin())];
        }
        return e;
    };
    const auto fill_entries = [&](const std::optional<QuadraticSupport>& form) {
        cert.support.clear();
        cert.s_plus.clear();
        cert.s_minus.clear();
        for (std::size_t i : sup.members) {
            cert.support.push_back(entry_for(i, form));
        }
        for (std::size_t i : cos.s_plus) {
            cert.s_plus.push_back(entry_for(i, form));
        }
        for (std::size_t i : cos.s_minus) {
            cert.s_minus.push_back(entry_for(i, form));
        }
    };
    fill_entries(std::nullopt);

    if (!cos.strongly_cospectral) {
        cert.violated = Violation::not_strongly_cospectral;
        for (std::size_t i : cos.neither) {
            cert.witness_values.push_back(dec.eigenvalues[i]);
        }
        cert.witness = "E_l e_u != +-E_l e_v for l in {" + join_values(cert.witness_values) + "}";
        return cert;
    }

    std::optional<QuadraticSupport> form;
    if (dec.exact()) {
        form = QuadraticSupport{};
        for (std::size_t i : sup.members) {
            form->members.push_back(QuadraticNumber::integer(dec.integer_eigenvalues[i]));
        }
    } else {
        std::size_t bad = 0;
        form = identify_quadratic_support(values, dec.tol.integrality, &bad);
        if (!form) {
            cert.violated = Violation::support_not_quadratic;
            cert.witness_values = {values[0], values[bad]};
            cert.witness = "no common square-free radicand and rational part for support members {" +
                           join_values(cert.witness_values) + "}";
            return cert;
        }
    }
    fill_entries(form);
    cert.delta = form->delta;
    cert.a = form->a;
    for (std::size_t j = 0; j < form->members.size(); ++j) {
        if (!is_quadratic_integer(form->members[j])) {
            cert.violated = Violation::support_not_quadratic;
            cert.witness_values = {values[j]};
            cert.witness = form->members[j].to_string() + " is not a quadratic integer";
            return cert;
        }
    }

    const QuadraticNumber& lambda0 = form->members.front();
    cert.g = compute_g(form->members, lambda0, cert.delta);

    for (std::size_t j = 0; j < sup.members.size(); ++j) {
        const std::int64_t gap = *normalized_gap(lambda0, form->members[j], cert.delta);
        const bool even = (gap / cert.g) % 2 == 0;
        const std::size_t index = sup.members[j];
        const auto& expected = even ? cos.s_plus : cos.s_minus;
        if (std::find(expected.begin(), expected.end(), index) == expected.end()) {
            cert.violated = Violation::parity_mismatch;
            cert.witness_values = {values[j]};
            cert.witness = form->members[j].to_string() + " has " + (even ? "even" : "odd") +
                           " normalized gap " + std::to_string(gap / cert.g) + " but lies in " +
                           (even ? "S-" : "S+");
            return cert;
        }
    }

    cert.verdict = Verdict::pst;
    cert.tau0 = std::numbers::pi / (double(cert.g) * std::sqrt(double(cert.delta)));
    const double top = lambda0.to_double();
    cert.phase = Complex(std::cos(cert.tau0 * top), -std::sin(cert.tau0 * top));
    cert.confirmed_amplitude = amplitude(dec, cert.tau0, u, v).value;
    if (std::abs(cert.confirmed_amplitude) <= 1.0 - dec.tol.validation ||
        std::abs(cert.confirmed_amplitude - cert.phase) > dec.tol.validation) {
        throw InvariantViolation("pst_check: dynamic confirmation failed, |H(tau0)_vu| = " +
                                 std::to_string(std::abs(cert.confirmed_amplitude)));
    }
    return cert;
}

// ---------------------------------------------------------------------------

PeriodicityReport periodicity_check(std::span<const QuadraticNumber> support, Vertex vertex) {
    if (support.empty()) {
        throw InputError("periodicity_check: empty support");
    }
    PeriodicityReport rep;
    rep.vertex = vertex;

    const QuadraticNumber* surd = nullptr;
    for (const auto& x : support) {
        if (x.is_rational()) {
            continue;
        }
        if (surd == nullptr) {
            surd = &x;
        } else if (x.radicand() != surd->radicand()) {
            rep.witness = std::pair{*surd, x};
            rep.reason = "distinct_radicands";
            return rep;
        }
    }
    if (surd == nullptr) {
        // (a + b)/2 with a single shared a covers every half-integer, so
        // rational supports are periodic; name them by integrality.
        rep.periodic = true;
        const bool integers = std::all_of(support.begin(), support.end(),
                                          [](const QuadraticNumber& x) { return x.is_integer(); });
        rep.mode = integers ? PeriodicMode::all_integer : PeriodicMode::single_surd;
        return rep;
    }
    for (const auto& x : support) {
        if (x.a() != surd->a()) {
            rep.witness = std::pair{*surd, x};
            rep.reason = "distinct_rational_parts";
            return rep;
        }
    }
    rep.periodic = true;
    rep.mode = PeriodicMode::single_surd;
    rep.delta = surd->radicand();
    rep.a = surd->a();
    return rep;
}

// ---------------------------------------------------------------------------

QGraphNoPSTCertificate qgraph_no_pst_certificate(const Graph& g, const Tolerances& tol) {
    QGraphNoPSTCertificate cert;
    cert.n = g.order();
    cert.m = g.size();
    const auto cls = classify(g);
    cert.connected = cls.is_connected;
    cert.bipartite = cls.is_bipartite;
    cert.r = cls.regularity.value_or(-1);

    const auto not_applicable = [&cert](std::string why) {
        cert.applicable = false;
        cert.reason = std::move(why);
        return cert;
    };
    if (!cls.is_connected) {
        return not_applicable("G is not connected");
    }
    if (!cls.regularity) {
        return not_applicable("G is not regular");
    }
    if (cert.r < 2) {
        return not_applicable("G has degree r < 2");
    }
    if (cert.n <= 2) {
        return not_applicable("G has order n <= 2");
    }
    const auto dec = decompose(g, tol);
    if (!dec.exact()) {
        return not_applicable("spectrum of G is not integral");
    }
    cert.applicable = true;
    cert.spectrum = dec.integer_eigenvalues;
    cert.multiplicities = dec.multiplicities;

    const int n = cert.n;
    const int m = cert.m;
    const std::int64_t r = cert.r;
    const auto& edges = g.edges();
    const std::size_t count = dec.count();
    const auto bottom = [&](std::size_t i) {
        return cert.bipartite && dec.integer_eigenvalues[i] == -r;
    };

    // Bottom-right block of the -2 projector: by completeness of the
    // projector set it equals I_m - sum_i R^T E_i R / (lambda_i + r) over the
    // non-degenerate eigenvalues.
    RationalMatrix minus_two(m, m);
    for (int k = 0; k < m; ++k) {
        minus_two(k, k) = 1;
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (bottom(i)) {
            continue;
        }
        const auto& e = dec.exact_projectors[i];
        const Rational s = dec.integer_eigenvalues[i] + r;
        for (int k = 0; k < m; ++k) {
            for (int l = 0; l < m; ++l) {
                const auto [a, b] = edges[k];
                const auto [c, d] = edges[l];
                minus_two(k, l) -= (e(a, c) + e(a, d) + e(b, c) + e(b, d)) / s;
            }
        }
    }

    const auto edge_sees = [&](std::size_t i, int k) {
        const auto& e = dec.exact_projectors[i];
        const auto [a, b] = edges[k];
        for (int x = 0; x < n; ++x) {
            if (e(x, a) + e(x, b) != 0) {
                return true;
            }
        }
        return false;
    };

    for (int z = 0; z < n + m; ++z) {
        VertexCertificate vc;
        vc.z = z;
        vc.edge_vertex = z >= n;
        if (vc.edge_vertex) {
            vc.edge = edges[z - n];
        }
        for (std::size_t i = 0; i < count; ++i) {
            const std::int64_t lambda = dec.integer_eigenvalues[i];
            const bool sees = vc.edge_vertex ? (!bottom(i) && edge_sees(i, z - n))
                                             : !dec.exact_projectors[i].column_is_zero(z);
            if (!sees) {
                continue;
            }
            if (bottom(i)) {
                vc.support.push_back({Branch::zero, std::nullopt, QuadraticNumber::integer(0)});
                continue;
            }
            const auto c = branch_coefficients(lambda, r);
            vc.support.push_back({Branch::plus, lambda, c.lambda_plus});
            vc.support.push_back({Branch::minus, lambda, c.lambda_minus});
            if (vc.edge_vertex && i != 0 && !vc.edge_witness_eigenvalue) {
                vc.edge_witness_eigenvalue = lambda;
            }
        }
        if (vc.edge_vertex && !minus_two.column_is_zero(z - n)) {
            vc.support.push_back({Branch::minus_two, std::nullopt, QuadraticNumber::integer(-2)});
        }
        if (vc.edge_vertex && !vc.edge_witness_eigenvalue) {
            throw InvariantViolation("edge-vertex " + std::to_string(z) +
                                     " is orthogonal to every non-principal eigenspace");
        }

        const auto irrational = std::find_if(vc.support.begin(), vc.support.end(),
                                             [](const QSupportMember& x) { return x.source.has_value(); });
        if (irrational == vc.support.end()) {
            throw InvariantViolation("vertex " + std::to_string(z) + " has no +- branch in its support");
        }
        vc.irrational_member = *irrational;
        const std::int64_t s = *irrational->source + r;
        vc.irrational_delta_sq = s * s + 4;
        if (square_free_part(vc.irrational_delta_sq).theta == 1) {
            throw InvariantViolation("(lambda + r)^2 + 4 is a perfect square for lambda = " +
                                     std::to_string(*irrational->source));
        }

        std::vector<QuadraticNumber> values;
        for (const auto& x : vc.support) {
            values.push_back(x.value);
        }
        vc.periodicity = periodicity_check(values, z);
        if (vc.periodicity.periodic) {
            throw InvariantViolation("Q-graph vertex " + std::to_string(z) +
                                     " is periodic although G is integral");
        }
        cert.vertices.push_back(std::move(vc));
    }
    cert.verdict = Verdict::no_pst;
    return cert;
}

// ---------------------------------------------------------------------------

namespace {

struct SearchRow {
    PGSTRow row;
    long double sqrt_theta = 0.0L;
    Complex coefficient;  // exp(-i pi lambda / g) E_lambda(v, u)
    double skew = 0.0;    // (lambda + r - 2) / Delta
};

struct Evaluation {
    double fidelity = 0.0;
    double max_residual = 0.0;
    double loss_bound = 0.0;
};

struct SearchModel {
    std::vector<SearchRow> rows;
    Complex prefactor;  // exp(-i t0 (r - 2) / 2) reduced mod 2 pi
    double constant = 0.0;
    std::int64_t g = 1;

    // Q-graph amplitude at t0 = (4 alpha + 2/g) pi with every phase reduced
    // exactly: exp(-i t0 lambda / 2) = exp(-i pi lambda / g) for integer
    // lambda, and Delta t0 / 2 = 2 pi sigma (alpha + 1/(2g)) sqrt(theta).
    Evaluation evaluate(std::int64_t alpha, std::vector<PGSTRow>* table = nullptr) const {
        Evaluation ev;
        Complex sum = 0.0;
        const long double offset = 1.0L / (2.0L * static_cast<long double>(g));
        for (const auto& sr : rows) {
            const long double x = static_cast<long double>(alpha) * sr.sqrt_theta + offset * sr.sqrt_theta;
            const long double p = std::nearbyint(x);
            const double residual = static_cast<double>(x - p);
            const double angle = 2.0 * std::numbers::pi * double(sr.row.sigma) * residual;
            sum += sr.coefficient * Complex(std::cos(angle), sr.skew * std::sin(angle));
            ev.max_residual = std::max(ev.max_residual, std::abs(residual));
            ev.loss_bound += std::abs(sr.row.weight) * std::abs(angle);
            if (table != nullptr) {
                PGSTRow row = sr.row;
                row.p = static_cast<std::int64_t>(p);
                row.residual = residual;
                table->push_back(row);
            }
        }
        ev.fidelity = std::abs(prefactor * sum + constant);
        return ev;
    }
};

struct ChunkResult {
    std::optional<std::int64_t> first;
    std::int64_t best_alpha = 0;
    double best_fidelity = -1.0;
};

}  // namespace

PGSTWitness pgst_witness_search(const Graph& g, Vertex u, Vertex v, const PGSTOptions& options,
                                const Tolerances& tol) {
    if (!(options.epsilon > 0.0 && options.epsilon < 1.0)) {
        throw InputError("epsilon must lie in (0, 1)");
    }
    if (options.alpha_max < 1 || options.jobs < 1) {
        throw InputError("alpha_max and jobs must be >= 1");
    }
    const QGraphBase base = prepare_base(g);
    if (base.r < 2) {
        throw HypothesisError("hypotheses unmet: PGST construction needs degree r >= 2");
    }
    if (u < 0 || v < 0 || u >= g.order() || v >= g.order() || u == v) {
        throw InputError("u and v must be distinct vertices of G");
    }
    const auto dec = decompose(g, tol);
    const auto pst = pst_check(dec, u, v);
    if (pst.verdict != Verdict::pst) {
        throw HypothesisError("hypotheses unmet: G has no PST between " + std::to_string(u) +
                              " and " + std::to_string(v) + " (" + to_string(*pst.violated) + ")");
    }
    if (pst.delta != 1) {
        throw HypothesisError("hypotheses unmet: PST in G is not at time pi/g over an integral support");
    }
    const std::int64_t gg = pst.g;
    if (base.bipartite && (base.r % gg != 0 || (base.r / gg) % 2 != 0)) {
        throw HypothesisError("hypotheses unmet: G is bipartite and r/g = " + std::to_string(base.r) +
                              "/" + std::to_string(gg) + " is not an even integer");
    }

    SearchModel model;
    model.g = gg;
    const double pi = std::numbers::pi;
    model.prefactor = Complex(std::cos(pi * (base.r - 2) / double(gg)),
                              -std::sin(pi * (base.r - 2) / double(gg)));
    const auto sup = eigenvalue_support(dec, u);
    for (std::size_t j = 0; j < sup.members.size(); ++j) {
        const std::size_t index = sup.members[j];
        const std::int64_t lambda = pst.support[j].exact->a() / 2;
        const double weight = dec.projectors[index](v, u);
        if (base.bipartite && lambda == -base.r) {
            model.constant = weight;
            continue;
        }
        const std::int64_t s = lambda + base.r;
        SearchRow sr;
        sr.row.lambda = lambda;
        sr.row.delta_sq = s * s + 4;
        const auto split = square_free_part(sr.row.delta_sq);
        sr.row.sigma = split.sigma;
        sr.row.theta = split.theta;
        sr.row.weight = weight;
        sr.sqrt_theta = std::sqrt(static_cast<long double>(split.theta));
        const double turn = pi * double(lambda) / double(gg);
        sr.coefficient = Complex(std::cos(turn), -std::sin(turn)) * weight;
        sr.skew = double(s - 2) / std::sqrt(double(sr.row.delta_sq));
        model.rows.push_back(sr);
    }

    const double target = 1.0 - options.epsilon;
    const auto time_of = [gg, pi](std::int64_t alpha) {
        return (4.0 * double(alpha) + 2.0 / double(gg)) * pi;
    };
    const auto direct = [&](std::int64_t alpha) {
        return qgraph_amplitude(dec, base.r, base.bipartite, time_of(alpha), u, v).fidelity();
    };
    const auto scan = [&](std::int64_t lo, std::int64_t hi) {
        ChunkResult res;
        for (std::int64_t alpha = lo; alpha <= hi; ++alpha) {
            const double f = model.evaluate(alpha).fidelity;
            if (f > res.best_fidelity) {
                res.best_fidelity = f;
                res.best_alpha = alpha;
            }
            if (f > target && direct(alpha) > target) {
                res.first = alpha;
                break;
            }
        }
        return res;
    };

    constexpr std::int64_t chunk = 1 << 16;
    std::optional<std::int64_t> found;
    std::int64_t best_alpha = 1;
    double best_fidelity = -1.0;
    for (std::int64_t start = 1; start <= options.alpha_max && !found;) {
        std::vector<ChunkResult> results(static_cast<std::size_t>(options.jobs));
        std::vector<std::thread> workers;
        std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
        for (int job = 0; job < options.jobs && start <= options.alpha_max; ++job) {
            const std::int64_t hi = std::min(options.alpha_max, start + chunk - 1);
            ranges.emplace_back(start, hi);
            start = hi + 1;
        }
        for (std::size_t k = 1; k < ranges.size(); ++k) {
            workers.emplace_back([&, k] { results[k] = scan(ranges[k].first, ranges[k].second); });
        }
        results[0] = scan(ranges[0].first, ranges[0].second);
        for (auto& w : workers) {
            w.join();
        }
        // Ranges are increasing, so the first hit in range order is the
        // smallest qualifying alpha regardless of the job count.
        for (std::size_t k = 0; k < ranges.size(); ++k) {
            if (results[k].best_fidelity > best_fidelity) {
                best_fidelity = results[k].best_fidelity;
                best_alpha = results[k].best_alpha;
            }
            if (results[k].first) {
                found = results[k].first;
                break;
            }
        }
    }

    PGSTWitness w;
    w.u = u;
    w.v = v;
    w.epsilon = options.epsilon;
    w.alpha_max = options.alpha_max;
    w.g = gg;
    w.r = base.r;
    w.bipartite = base.bipartite;
    w.target_reached = found.has_value();
    w.alpha = found.value_or(best_alpha);
    w.t0 = time_of(w.alpha);
    const auto ev = model.evaluate(w.alpha, &w.table);
    w.reduced_fidelity = ev.fidelity;
    w.max_residual = ev.max_residual;
    w.fidelity_lower_bound = 1.0 - ev.loss_bound;
    w.fidelity = direct(w.alpha);
    if (w.target_reached && !(w.fidelity > target)) {
        throw InvariantViolation("pgst_witness_search: witness fidelity below target");
    }
    return w;
}

}  // namespace qst
