// concave-field: samplers, integrals, and statistical checks for random
// concave functions on the unit simplex, with reproducible seeded output.
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "concave_field/coefficient_model.hpp"
#include "concave_field/concave_fn.hpp"
#include "concave_field/duality.hpp"
#include "concave_field/errors.hpp"
#include "concave_field/io.hpp"
#include "concave_field/parallel.hpp"
#include "concave_field/portfolio.hpp"
#include "concave_field/rng.hpp"
#include "concave_field/samplers.hpp"
#include "concave_field/stokes.hpp"
#include "concave_field/verification.hpp"

using namespace concave_field;

namespace {

Vec parse_number_list(const std::string& text) {
    Vec out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

SimplexPoint parse_point(const std::string& text) {
    return SimplexPoint::interior_renormalized(parse_number_list(text));
}

// anchors grammar: "p1,p2:a" joined with ';', e.g. "0.5,0.5:1;0.3,0.7:0.4"
RegionSpec parse_anchors(const std::string& text) {
    std::vector<SimplexPoint> pts;
    Vec levels;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        const auto colon = part.rfind(':');
        if (colon == std::string::npos) throw ParseError("anchors: expected point:level");
        pts.push_back(parse_point(part.substr(0, colon)));
        levels.push_back(std::stod(part.substr(colon + 1)));
    }
    return RegionSpec(std::move(pts), std::move(levels));
}

// psi grammar for `tail`: envelope:<anchors> | geomean:a=<v> | parabola | zero
ConcaveFn parse_psi(const std::string& text, std::size_t n) {
    if (text == "zero") return constant_fn(n, 0.0);
    if (text == "parabola") {
        if (n != 2) throw ParseError("psi: parabola is two-dimensional");
        return c2_as_concave_fn(c2_parabola());
    }
    if (text.rfind("geomean", 0) == 0) {
        double a = 1.0;
        const auto eq = text.find("a=");
        if (eq != std::string::npos) a = std::stod(text.substr(eq + 2));
        Vec w(n, 1.0 / static_cast<double>(n));
        if (a == 1.0) return geometric_mean_fn(w);
        Analytic an;
        an.label = "scaled-geomean";
        an.nonneg = true;
        an.eval = [w, a](const Vec& p) {
            double acc = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) acc += w[i] * std::log(p[i]);
            return a * std::exp(acc);
        };
        return ConcaveFn(std::move(an));
    }
    if (text.rfind("envelope:", 0) == 0)
        return envelope_from_constraints(parse_anchors(text.substr(9)));
    throw ParseError("psi: unknown generator '" + text + "'");
}

DiagonalSpec parse_regime(const std::string& text, const CoefficientModel& model, std::size_t K) {
    if (text == "superlog") return DiagonalSpec(model, DiagonalRegime::SuperLog, 1.0, K);
    if (text.rfind("logshift:", 0) == 0)
        return DiagonalSpec(model, DiagonalRegime::LogShift, std::stod(text.substr(9)), K);
    if (text.rfind("linear:", 0) == 0)
        return DiagonalSpec(model, DiagonalRegime::Linear, std::stod(text.substr(7)), K);
    throw ParseError("regime: expected superlog | logshift:c | linear:c");
}

struct CommonOpts {
    std::size_t n = 2;
    std::string model = "uniform:scale=1.0";
    std::size_t K = 1000;
    double lambda = 10.0;
    std::string regime = "logshift:1.0";
    std::size_t replicas = 1000;
    std::string at = "0.5,0.5";
    std::size_t grid = 33;
    std::uint64_t seed = 7;
    double box_max = 1e6;
    std::string out = "csv";
    std::string output_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool wants_model = true) {
    cmd->add_option("--n", o.n, "simplex dimension");
    if (wants_model) cmd->add_option("--model", o.model, "coefficient model spec");
    cmd->add_option("--seed", o.seed, "seed for the counter-based generator");
    cmd->add_option("--out", o.out, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output-path", o.output_path, "file path (stdout when omitted)");
}

void emit(const CommonOpts& o, RunManifest manifest, const Table& table) {
    manifest.output_path = o.output_path;
    write_output(o.output_path,
                 o.out == "json" ? to_json(manifest, table) : to_csv(manifest, table));
}

RunManifest base_manifest(const std::string& command, const CommonOpts& o) {
    RunManifest m;
    m.command = command;
    m.model_spec = o.model;
    m.n = o.n;
    m.K = o.K;
    m.replicas = o.replicas;
    m.seed = o.seed;
    m.grid_spec = std::to_string(o.grid);
    return m;
}

int run_replica_values(const std::string& command, const CommonOpts& o,
                       const std::function<double(std::uint64_t)>& one_value,
                       const std::string& lambda_or_regime) {
    std::vector<double> values(o.replicas);
    parallel_for_index(o.replicas, [&](std::size_t r) { values[r] = one_value(r); });
    Table t;
    t.columns = {"replica", "value"};
    for (std::size_t r = 0; r < o.replicas; ++r) t.add_row({static_cast<double>(r), values[r]});
    RunManifest m = base_manifest(command, o);
    m.lambda_or_regime = lambda_or_regime;
    emit(o, std::move(m), t);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random concave functions on the simplex: samplers and checks"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* hardmin = app.add_subcommand("sample-hardmin", "scaled minimum of K random planes");
    add_common(hardmin, o);
    hardmin->add_option("--K", o.K, "number of planes");
    hardmin->add_option("--replicas", o.replicas, "independent replicas");
    hardmin->add_option("--at", o.at, "evaluation point p1,p2,...");

    auto* softmin_cmd = app.add_subcommand("sample-softmin", "fixed-lambda softmin of K planes");
    add_common(softmin_cmd, o);
    softmin_cmd->add_option("--K", o.K, "number of planes");
    softmin_cmd->add_option("--lambda", o.lambda, "softmin parameter");
    softmin_cmd->add_option("--replicas", o.replicas, "independent replicas");
    softmin_cmd->add_option("--at", o.at, "evaluation point");

    auto* poisson = app.add_subcommand("sample-poisson", "point-process envelope values");
    add_common(poisson, o);
    poisson->add_option("--replicas", o.replicas, "independent replicas");
    poisson->add_option("--at", o.at, "evaluation point");
    poisson->add_option("--box-max", o.box_max, "truncation growth cap");

    auto* diagonal = app.add_subcommand("sample-diagonal", "joint lambda-with-K regimes");
    add_common(diagonal, o);
    diagonal->add_option("--K", o.K, "number of planes");
    diagonal->add_option("--regime", o.regime, "superlog | logshift:c | linear:c");
    diagonal->add_option("--replicas", o.replicas, "independent replicas");
    diagonal->add_option("--at", o.at, "evaluation point");

    auto* limit = app.add_subcommand("limit-softmin", "sample vs deterministic limit on a grid");
    add_common(limit, o);
    limit->add_option("--K", o.K, "number of planes");
    limit->add_option("--lambda", o.lambda, "softmin parameter");
    limit->add_option("--grid", o.grid, "lattice points across the k=10 slice");

    std::string psi_spec = "envelope:0.5,0.5:1";
    std::size_t mc_points = 50000;
    auto* tail = app.add_subcommand("tail", "tail probability of dominating a generator");
    add_common(tail, o);
    tail->add_option("--psi", psi_spec, "generator: envelope:<anchors> | geomean[:a=] | parabola | zero");
    tail->add_option("--mc-points", mc_points, "importance-sampling points");

    std::string anchors = "0.5,0.5:1";
    auto* envelope = app.add_subcommand("envelope", "minimal concave function through anchors");
    add_common(envelope, o, false);
    envelope->add_option("--anchors", anchors, "point:level pairs joined with ';'");
    envelope->add_option("--at", o.at, "evaluation point (omit for a grid)")->capture_default_str();
    envelope->add_option("--grid", o.grid, "lattice points when no --at given");

    std::string fn_name = "parabola";
    std::size_t order = 48;
    auto* volume = app.add_subcommand("volume-stokes", "chart volume formula for C2 generators");
    add_common(volume, o, false);
    volume->add_option("--fn", fn_name, "parabola | geomean:a=<v> | sine | inverse-sum");
    volume->add_option("--order", order, "quadrature order");

    std::string phi_spec = "geomean:0.5,0.5";
    auto* portfolio_cmd = app.add_subcommand("portfolio", "weights generated by a concave function");
    add_common(portfolio_cmd, o, false);
    portfolio_cmd->add_option("--phi", phi_spec, "geomean:w1,w2,... | plane:x1,x2,...");
    portfolio_cmd->add_option("--at", o.at, "market weight p");

    auto* weight_dist = app.add_subcommand("weight-dist", "samples of the limiting portfolio weight");
    add_common(weight_dist, o);
    weight_dist->add_option("--replicas", o.replicas, "draws");
    weight_dist->add_option("--at", o.at, "market weight p");
    weight_dist->add_option("--box-max", o.box_max, "truncation growth cap");

    auto* transport = app.add_subcommand("transport", "transport map built from the portfolio");
    add_common(transport, o, false);
    transport->add_option("--phi", phi_spec, "geomean:w1,w2,... | plane:x1,x2,...");
    transport->add_option("--at", o.at, "source point p");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    add_common(verify, o, false);
    verify->add_option("--suite", suite, "all or comma-separated criterion ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*hardmin) {
            const auto model = CoefficientModel::parse(o.model, o.n);
            const HardminSampleSpec spec(model, o.K);
            const std::vector<SimplexPoint> at{parse_point(o.at)};
            return run_replica_values("sample-hardmin", o,
                                      [&](std::uint64_t r) {
                                          SplitRng rng(o.seed, r);
                                          return hardmin_values_at(spec, at, rng)[0];
                                      },
                                      "inf");
        }
        if (*softmin_cmd) {
            const auto model = CoefficientModel::parse(o.model, o.n);
            const std::vector<SimplexPoint> at{parse_point(o.at)};
            return run_replica_values("sample-softmin", o,
                                      [&](std::uint64_t r) {
                                          SplitRng rng(o.seed, r);
                                          return softmin_values_at(model, o.K, o.lambda, at,
                                                                   rng)[0];
                                      },
                                      format_double(o.lambda));
        }
        if (*poisson) {
            const auto model = CoefficientModel::parse(o.model, o.n);
            const std::vector<SimplexPoint> at{parse_point(o.at)};
            PoissonOptions opts;
            opts.max_box = o.box_max;
            std::vector<double> values(o.replicas), npoints(o.replicas), boxes(o.replicas);
            parallel_for_index(o.replicas, [&](std::size_t r) {
                SplitRng rng(o.seed, r);
                const PoissonEnvelope env = sample_poisson_envelope_at(model, at, rng, opts);
                double vmin = std::numeric_limits<double>::infinity();
                for (const Vec& x : env.points) vmin = std::min(vmin, dot(at[0].coords(), x));
                values[r] = vmin;
                npoints[r] = static_cast<double>(env.points.size());
                boxes[r] = env.box;
            });
            Table t;
            t.columns = {"replica", "value", "points", "box"};
            for (std::size_t r = 0; r < o.replicas; ++r)
                t.add_row({static_cast<double>(r), values[r], npoints[r], boxes[r]});
            RunManifest m = base_manifest("sample-poisson", o);
            m.lambda_or_regime = "poisson";
            emit(o, std::move(m), t);
            return 0;
        }
        if (*diagonal) {
            const auto model = CoefficientModel::parse(o.model, o.n);
            const DiagonalSpec spec = parse_regime(o.regime, model, o.K);
            const std::vector<SimplexPoint> at{parse_point(o.at)};
            std::vector<double> values(o.replicas);
            parallel_for_index(o.replicas, [&](std::size_t r) {
                SplitRng rng(o.seed, r);
                values[r] = diagonal_values_at(spec, at, rng)[0];
            });
            Table t;
            t.columns = {"replica", "value", "offset"};
            for (std::size_t r = 0; r < o.replicas; ++r)
                t.add_row({static_cast<double>(r), values[r], spec.offset()});
            RunManifest m = base_manifest("sample-diagonal", o);
            m.lambda_or_regime = o.regime;
            emit(o, std::move(m), t);
            return 0;
        }
        if (*limit) {
            const auto model = CoefficientModel::parse(o.model, o.n);
            const auto grid = slice_grid(CompactSlice(o.n, 10, o.grid));
            SplitRng rng(o.seed, 0);
            const Vec sampled = softmin_values_at(model, o.K, o.lambda, grid, rng);
            Table t;
            t.columns.clear();
            for (std::size_t i = 0; i < o.n; ++i) t.columns.push_back("p_" + std::to_string(i + 1));
            t.columns.insert(t.columns.end(), {"psi_K", "psi_inf", "abs_err"});
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const double inf_val = eval_deterministic_limit(model, o.lambda, grid[j]);
                std::vector<double> row(grid[j].coords());
                row.insert(row.end(), {sampled[j], inf_val, std::abs(sampled[j] - inf_val)});
                t.add_row(row);
            }
            RunManifest m = base_manifest("limit-softmin", o);
            m.lambda_or_regime = format_double(o.lambda);
            emit(o, std::move(m), t);
            return 0;
        }
        if (*tail) {
            const auto model = CoefficientModel::parse(o.model, o.n);
            const ConcaveFn psi = parse_psi(psi_spec, o.n);
            SplitRng rng(o.seed, 0);
            const TailResult res = tail_probability(model, psi, mc_points, rng);
            Table t;
            t.columns = {"integral", "stderr_integral", "tail", "stderr_tail", "diverged"};
            t.add_row({res.integral, res.stderr_integral, res.tail, res.stderr_tail,
                       res.diverged ? 1.0 : 0.0});
            RunManifest m = base_manifest("tail", o);
            m.lambda_or_regime = psi_spec;
            emit(o, std::move(m), t);
            return 0;
        }
        if (*envelope) {
            const RegionSpec spec = parse_anchors(anchors);
            const ConcaveFn psi = envelope_from_constraints(spec);
            Table t;
            const std::size_t n = spec.n();
            for (std::size_t i = 0; i < n; ++i) t.columns.push_back("q_" + std::to_string(i + 1));
            t.columns.push_back("value");
            std::vector<SimplexPoint> where;
            if (envelope->count("--at")) {
                where.push_back(parse_point(o.at));
            } else {
                where = slice_grid(CompactSlice(n, 10, o.grid));
            }
            for (const SimplexPoint& q : where) {
                std::vector<double> row(q.coords());
                row.push_back(eval(psi, q));
                t.add_row(row);
            }
            RunManifest m = base_manifest("envelope", o);
            m.n = n;
            m.lambda_or_regime = anchors;
            emit(o, std::move(m), t);
            return 0;
        }
        if (*volume) {
            C2Generator g;
            if (fn_name == "parabola") {
                g = c2_parabola();
            } else if (fn_name == "sine") {
                g = c2_sine();
            } else if (fn_name == "inverse-sum") {
                g = c2_inverse_sum(o.n);
            } else if (fn_name.rfind("geomean", 0) == 0) {
                double a = 1.0;
                const auto eq = fn_name.find("a=");
                if (eq != std::string::npos) a = std::stod(fn_name.substr(eq + 2));
                g = c2_geometric_mean(a);
            } else {
                throw ParseError("volume-stokes: unknown --fn " + fn_name);
            }
            const StokesResult res = stokes_volume(g, order);
            Table t;
            t.columns = {"volume", "diverged"};
            t.add_row({res.volume, res.diverged ? 1.0 : 0.0});
            RunManifest m = base_manifest("volume-stokes", o);
            m.lambda_or_regime = fn_name;
            emit(o, std::move(m), t);
            return 0;
        }
        if (*portfolio_cmd || *transport) {
            ConcaveFn phi = [&]() -> ConcaveFn {
                if (phi_spec.rfind("geomean:", 0) == 0) {
                    Vec w = parse_number_list(phi_spec.substr(8));
                    double s = 0.0;
                    for (double wi : w) s += wi;
                    for (double& wi : w) wi /= s;
                    return geometric_mean_fn(w);
                }
                if (phi_spec.rfind("plane:", 0) == 0)
                    return ConcaveFn(PolyhedralMin{{Hyperplane(parse_number_list(phi_spec.substr(6)))}});
                throw ParseError("phi: expected geomean:... or plane:...");
            }();
            const SimplexPoint p = parse_point(o.at);
            Table t;
            if (*portfolio_cmd) {
                const PortfolioWeight w = fgp_map(phi, p);
                for (std::size_t i = 0; i < w.weights.size(); ++i)
                    t.columns.push_back("pi_" + std::to_string(i + 1));
                t.columns.push_back("tie");
                std::vector<double> row(w.weights);
                row.push_back(w.tie ? 1.0 : 0.0);
                t.add_row(row);
            } else {
                const SimplexPoint q = dirichlet_transport(phi, p);
                for (std::size_t i = 0; i < q.dim(); ++i)
                    t.columns.push_back("q_" + std::to_string(i + 1));
                t.add_row(q.coords());
            }
            RunManifest m = base_manifest(*portfolio_cmd ? "portfolio" : "transport", o);
            m.lambda_or_regime = phi_spec;
            emit(o, std::move(m), t);
            return 0;
        }
        if (*weight_dist) {
            const auto model = CoefficientModel::parse(o.model, o.n);
            const SimplexPoint p = parse_point(o.at);
            PoissonOptions opts;
            opts.max_box = o.box_max;
            std::vector<Vec> weights(o.replicas);
            parallel_for_index(o.replicas, [&](std::size_t r) {
                SplitRng rng(o.seed, r);
                weights[r] = portfolio_weight_sample(model, p, rng, opts).weights;
            });
            Table t;
            t.columns = {"replica"};
            for (std::size_t i = 0; i < o.n; ++i) t.columns.push_back("w_" + std::to_string(i + 1));
            for (std::size_t r = 0; r < o.replicas; ++r) {
                std::vector<double> row{static_cast<double>(r)};
                row.insert(row.end(), weights[r].begin(), weights[r].end());
                t.add_row(row);
            }
            RunManifest m = base_manifest("weight-dist", o);
            m.lambda_or_regime = "poisson";
            emit(o, std::move(m), t);
            return 0;
        }
        if (*verify) {
            std::vector<int> which;
            if (suite != "all") {
                std::stringstream ss(suite);
                std::string item;
                while (std::getline(ss, item, ',')) which.push_back(std::stoi(item));
            }
            const auto results = run_acceptance(o.seed, which);
            std::vector<TestReport> reports;
            bool all_pass = true;
            for (const auto& r : results) {
                std::cerr << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name
                          << "\n";
                all_pass = all_pass && r.pass;
                for (const auto& t : r.reports) reports.push_back(t);
            }
            RunManifest m = base_manifest("verify", o);
            m.lambda_or_regime = suite;
            m.output_path = o.output_path;
            write_output(o.output_path, reports_to_json(m, reports));
            return all_pass ? 0 : 2;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
