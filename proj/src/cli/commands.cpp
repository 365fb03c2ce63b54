#include "kronlift/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "kronlift/lift.hpp"
#include "kronlift/mwr_frontend.hpp"
#include "kronlift/recovery.hpp"
#include "kronlift/solvers.hpp"

namespace kronlift::cli {

using io::json;

namespace {

constexpr double kRootConsistency = 1e-8;
constexpr double kRootDistance = 1e-6;

double root_tolerance(const PolynomialSystem& sys)
{
    return 1e-8 * (1.0 + sys.b.norm());
}

json vec(const Vector& v)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(v(i));
    return out;
}

json finite_or_string(double v)
{
    if (std::isfinite(v))
        return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

// Residuals are recomputed here rather than trusted from the candidate.
json candidate_json(const PolynomialSystem& sys, const CandidateSolution& c)
{
    return {{"x", vec(c.x)},
            {"consistency", finite_or_string(c.consistency)},
            {"nonlinear_residual", finite_or_string(eval_residual(sys, c.x).norm)},
            {"source", std::string(to_string(c.source))}};
}

json svd_json(const SvdReport& r)
{
    return {{"singular_values", vec(r.singular_values)},
            {"numerical_rank", r.numerical_rank},
            {"nullity", r.nullity},
            {"rank_tolerance", r.rank_tolerance},
            {"condition_estimate", finite_or_string(r.condition_estimate)}};
}

json lift_json(const LiftedSystem& lift)
{
    json blocks = json::array();
    for (const auto& blk : lift.blocks)
        blocks.push_back({{"degree", blk.degree}, {"offset", blk.offset}, {"length", blk.length}});
    return {{"n", lift.n()}, {"m", lift.m()}, {"blocks", blocks}};
}

void add_unique(std::vector<Vector>& roots, const Vector& x)
{
    for (const auto& r : roots)
        if ((r - x).norm() < kRootDistance)
            return;
    roots.push_back(x);
}

std::vector<Vector> sorted_roots(std::vector<Vector> roots)
{
    std::sort(roots.begin(), roots.end(), [](const Vector& a, const Vector& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    return roots;
}

json roots_json(const std::vector<Vector>& roots)
{
    json out = json::array();
    for (const auto& r : sorted_roots(roots))
        out.push_back(vec(r));
    return out;
}

} // namespace

int exit_code_for(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Usage:
        return kExitUsage;
    case ErrorKind::Io:
    case ErrorKind::Parse:
    case ErrorKind::Dimension:
    case ErrorKind::Domain:
        return kExitInput;
    case ErrorKind::Numerical:
    case ErrorKind::Singularity:
    case ErrorKind::DegenerateLift:
    case ErrorKind::Capacity:
        return kExitNumerical;
    }
    return kExitNumerical;
}

PolynomialSystem generate(const json& descriptor, std::uint64_t default_seed)
{
    if (!descriptor.is_object())
        throw ParseError("descriptor: expected an object with a 'random' or 'mwr' entry");

    if (descriptor.contains("random")) {
        const json& r = descriptor["random"];
        if (!r.is_object() || !r.contains("n") || !r["n"].is_number_integer() || r["n"].get<std::int64_t>() < 1)
            throw ParseError("field 'random.n': expected a positive integer");
        const auto n = r["n"].get<std::size_t>();
        const json degree = r.value("degree", json(2));
        if (!degree.is_number_integer() || (degree != 2 && degree != 3))
            throw ParseError("field 'random.degree': expected 2 or 3");
        std::uint64_t seed = default_seed;
        if (r.contains("seed")) {
            if (!r["seed"].is_number_unsigned())
                throw ParseError("field 'random.seed': expected a non-negative integer");
            seed = r["seed"].get<std::uint64_t>();
        }
        std::optional<Vector> root;
        const json plant = r.value("plant_root", json(false));
        if (plant.is_boolean()) {
            if (plant.get<bool>())
                root = draw_root(n, seed);
        } else if (plant.is_array()) {
            if (plant.size() != n)
                throw ParseError("field 'random.plant_root': expected " + std::to_string(n) + " entries");
            root = Vector(static_cast<Eigen::Index>(n));
            for (std::size_t i = 0; i < n; ++i) {
                if (!plant[i].is_number())
                    throw ParseError("field 'random.plant_root[" + std::to_string(i) + "]': expected a number");
                (*root)(static_cast<Eigen::Index>(i)) = plant[i].get<double>();
            }
        } else {
            throw ParseError("field 'random.plant_root': expected a boolean or an array");
        }
        PolynomialSystem sys = random_system(n, degree.get<int>(), seed, root);
        if (root)
            sys.meta += " root=" + vec(*root).dump();
        return sys;
    }
    if (descriptor.contains("mwr")) {
        const MwrProblem problem = io::problem_from_json(descriptor["mwr"]);
        return build_collocation_system(problem);
    }
    throw ParseError("descriptor: expected a 'random' or 'mwr' entry");
}

json analyze_report(const PolynomialSystem& sys, const Options& opts, Pipeline& pipe)
{
    const LiftedSystem lift = pipe.run("lift", [&] { return build_lifted(sys); });
    const SvdReport svd = pipe.run("svd", [&] { return svd_analyze(lift.P, opts.rank_rtol); });
    json report;
    report["command"] = "analyze";
    report["lift"] = lift_json(lift);
    report["svd"] = svd_json(svd);
    report["timings_ms"] = pipe.timings();
    return report;
}

json solve_report(const PolynomialSystem& sys, const Options& opts, Pipeline& pipe)
{
    const LiftedSystem lift = pipe.run("lift", [&] { return build_lifted(sys); });
    const SvdReport svd = pipe.run("svd", [&] { return svd_analyze(lift.P, opts.rank_rtol); });

    json solve = {{"method", opts.method}, {"rank_rtol", opts.rank_rtol}};
    std::vector<CandidateSolution> candidates = pipe.run("solve", [&] {
        if (opts.method == "nullsearch") {
            solve["starts"] = opts.starts;
            solve["seed"] = opts.seed;
            NullSearchOptions ns;
            ns.starts = opts.starts;
            ns.seed = opts.seed;
            ns.rank_rtol = opts.rank_rtol;
            return nullspace_search(lift, ns);
        }
        Vector y;
        if (opts.method == "pinv") {
            const PinvSolution sol = pinv_solve(lift, opts.rank_rtol);
            y = sol.y;
        } else {
            solve["ridge"] = opts.ridge;
            y = normal_eq_solve(lift, opts.ridge);
        }
        solve["lifted_residual"] = (lift.P * y - lift.b).norm();
        solve["lifted_consistency"] = consistency_score(lift, y);
        solve["y"] = vec(y);
        auto c = extract_candidates(lift, y);
        std::stable_sort(c.begin(), c.end(), candidate_less);
        return c;
    });

    std::vector<CandidateSolution> polished = pipe.run("polish", [&] {
        std::vector<CandidateSolution> out;
        for (const auto& c : candidates) {
            CandidateSolution p = polish(sys, c);
            if (p.source == CandidateSource::Polished)
                out.push_back(std::move(p));
        }
        return rank_and_deduplicate(std::move(out), kRootDistance);
    });

    const double tol = root_tolerance(sys);
    std::vector<Vector> roots;
    for (const auto* list : {&polished, &candidates})
        for (const auto& c : *list)
            if (eval_residual(sys, c.x).norm <= tol)
                add_unique(roots, c.x);

    json report;
    report["command"] = "solve";
    report["lift"] = lift_json(lift);
    report["svd"] = svd_json(svd);
    report["solve"] = solve;
    report["candidates"] = json::array();
    for (const auto& c : candidates)
        report["candidates"].push_back(candidate_json(sys, c));
    report["polished"] = json::array();
    for (const auto& c : polished)
        report["polished"].push_back(candidate_json(sys, c));
    report["root_tolerance"] = tol;
    report["roots"] = roots_json(roots);
    report["timings_ms"] = pipe.timings();
    return report;
}

json compare_report(const PolynomialSystem& sys, const Options& opts, Pipeline& pipe)
{
    const double tol = root_tolerance(sys);
    const LiftedSystem lift = pipe.run("lift", [&] { return build_lifted(sys); });
    const SvdReport svd = pipe.run("svd", [&] { return svd_analyze(lift.P, opts.rank_rtol); });

    std::vector<Vector> newton_roots;
    json runs = json::array();
    pipe.run("newton", [&] {
        std::mt19937_64 rng(opts.seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (std::size_t s = 0; s < opts.starts; ++s) {
            Vector x0(static_cast<Eigen::Index>(sys.n));
            for (Eigen::Index i = 0; i < x0.size(); ++i)
                x0(i) = normal(rng);
            json run = {{"x0", vec(x0)}};
            try {
                const NewtonTrace trace = newton_solve(sys, x0);
                const Vector& x = trace.iterates.back().x;
                run["converged"] = trace.converged;
                run["iterations"] = trace.iterations;
                run["x"] = vec(x);
                run["residual_norm"] = eval_residual(sys, x).norm;
                if (trace.converged)
                    add_unique(newton_roots, x);
            } catch (const NumericalFailure& e) {
                run["converged"] = false;
                run["failure"] = e.what();
            }
            runs.push_back(std::move(run));
        }
    });

    std::vector<Vector> search_roots;
    std::vector<CandidateSolution> candidates = pipe.run("nullsearch", [&] {
        NullSearchOptions ns;
        ns.starts = opts.starts;
        ns.seed = opts.seed;
        ns.rank_rtol = opts.rank_rtol;
        return nullspace_search(lift, ns);
    });
    double best_consistency = std::numeric_limits<double>::infinity();
    pipe.run("polish", [&] {
        for (const auto& c : candidates) {
            best_consistency = std::min(best_consistency, c.consistency);
            if (c.consistency > kRootConsistency)
                continue;
            const CandidateSolution p = polish(sys, c);
            if (eval_residual(sys, p.x).norm <= tol)
                add_unique(search_roots, p.x);
        }
    });

    std::vector<Vector> overlap;
    for (const auto& a : newton_roots)
        for (const auto& b : search_roots)
            if ((a - b).norm() < kRootDistance)
                add_unique(overlap, a);

    json report;
    report["command"] = "compare";
    report["lift"] = lift_json(lift);
    report["svd"] = svd_json(svd);
    report["starts"] = opts.starts;
    report["seed"] = opts.seed;
    report["root_tolerance"] = tol;
    report["newton"] = {{"runs", runs}, {"roots", roots_json(newton_roots)}};
    json ns_candidates = json::array();
    for (const auto& c : candidates)
        ns_candidates.push_back(candidate_json(sys, c));
    report["nullsearch"] = {{"candidates", ns_candidates},
                            {"best_consistency", finite_or_string(best_consistency)},
                            {"consistency_threshold", kRootConsistency},
                            {"roots", roots_json(search_roots)}};
    report["overlap"] = roots_json(overlap);
    report["timings_ms"] = pipe.timings();
    return report;
}

namespace {

std::string fmt_vec(const json& v)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            os << ", ";
        os << std::setprecision(10) << v[i].get<double>();
    }
    os << ")";
    return os.str();
}

std::string fmt_num(const json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    std::ostringstream os;
    os << std::setprecision(6) << v.get<double>();
    return os.str();
}

void render_candidates(std::ostringstream& os, const char* title, const json& list)
{
    os << title << " (" << list.size() << ")\n";
    os << "  " << std::left << std::setw(12) << "source" << std::setw(14) << "residual" << std::setw(14)
       << "consistency" << "x\n";
    for (const auto& c : list)
        os << "  " << std::left << std::setw(12) << c["source"].get<std::string>() << std::setw(14)
           << fmt_num(c["nonlinear_residual"]) << std::setw(14) << fmt_num(c["consistency"]) << fmt_vec(c["x"])
           << "\n";
}

} // namespace

std::string render_pretty(const json& report)
{
    std::ostringstream os;
    const std::string command = report.value("command", std::string("?"));
    if (report.contains("lift"))
        os << "lifted system: n = " << report["lift"]["n"] << ", m = " << report["lift"]["m"] << "\n";
    if (report.contains("svd")) {
        const json& s = report["svd"];
        os << "singular values:";
        for (const auto& v : s["singular_values"])
            os << " " << fmt_num(v);
        os << "\nrank " << s["numerical_rank"] << ", nullity " << s["nullity"] << ", tolerance "
           << fmt_num(s["rank_tolerance"]) << ", condition " << fmt_num(s["condition_estimate"]) << "\n";
    }
    if (command == "solve") {
        os << "method: " << report["solve"]["method"].get<std::string>() << "\n";
        render_candidates(os, "candidates", report["candidates"]);
        render_candidates(os, "polished", report["polished"]);
        os << "roots (" << report["roots"].size() << ")\n";
        for (const auto& r : report["roots"])
            os << "  " << fmt_vec(r) << "\n";
    } else if (command == "compare") {
        const json& nw = report["newton"];
        std::size_t converged = 0;
        for (const auto& r : nw["runs"])
            converged += r.value("converged", false) ? 1 : 0;
        os << "newton: " << converged << "/" << nw["runs"].size() << " starts converged, "
           << nw["roots"].size() << " distinct roots\n";
        for (const auto& r : nw["roots"])
            os << "  " << fmt_vec(r) << "\n";
        const json& ns = report["nullsearch"];
        os << "nullsearch: best consistency " << fmt_num(ns["best_consistency"]) << ", " << ns["roots"].size()
           << " distinct roots\n";
        for (const auto& r : ns["roots"])
            os << "  " << fmt_vec(r) << "\n";
        os << "overlap (" << report["overlap"].size() << ")\n";
        for (const auto& r : report["overlap"])
            os << "  " << fmt_vec(r) << "\n";
    }
    if (report.contains("timings_ms")) {
        os << "timings (ms):";
        for (const auto& [stage, ms] : report["timings_ms"].items())
            os << " " << stage << "=" << fmt_num(ms);
        os << "\n";
    }
    return os.str();
}

} // namespace kronlift::cli
