#include <algorithm>
#include <cstdlib>
#include <ostream>

#include "CLI11.hpp"

#include "kronlift/cli.hpp"

namespace kronlift::cli {

namespace {

void emit_error(std::ostream& err, const char* code, const std::string& stage, const std::string& message)
{
    const io::json line = {{"error", {{"code", code}, {"stage", stage}, {"message", message}}}};
    err << line.dump() << "\n";
}

std::uint64_t seed_from_env()
{
    const char* raw = std::getenv("KRONLIFT_SEED");
    if (raw == nullptr || *raw == '\0')
        return 0;
    try {
        std::size_t used = 0;
        const std::string text(raw);
        if (text.front() == '-')
            throw std::invalid_argument("negative");
        const auto v = std::stoull(text, &used);
        if (used != text.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("KRONLIFT_SEED must be a non-negative integer, got '") + raw + "'");
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Lift quadratic/cubic algebraic systems into underdetermined linear systems and solve them",
                 "kronlift"};
    app.require_subcommand(1);

    Options opts;
    std::string file;
    std::string output;
    std::optional<std::uint64_t> seed;

    auto* gen = app.add_subcommand("gen", "Generate a system file from a random or collocation descriptor");
    auto* analyze = app.add_subcommand("analyze", "Lift a system and report its singular value structure");
    auto* solve = app.add_subcommand("solve", "Solve the lifted system and recover candidate roots");
    auto* compare = app.add_subcommand("compare", "Compare Newton from random starts with the null-space search");

    gen->add_option("-o,--output", output, "Write the system file here instead of stdout");
    for (auto* sub : {gen, analyze, solve, compare}) {
        sub->add_option("file", file, "Input file")->required();
        sub->add_option("--seed", seed, "Random seed (default: $KRONLIFT_SEED or 0)");
    }
    for (auto* sub : {analyze, solve, compare}) {
        sub->add_option("--rank-rtol", opts.rank_rtol, "Relative singular value cutoff")
            ->check(CLI::NonNegativeNumber);
        sub->add_flag("--pretty", opts.pretty, "Print a human-readable table instead of JSON");
    }
    for (auto* sub : {solve, compare})
        sub->add_option("--starts", opts.starts, "Number of search starts")->check(CLI::PositiveNumber);
    solve->add_option("--method", opts.method, "pinv | ridge | nullsearch")
        ->check(CLI::IsMember({"pinv", "ridge", "nullsearch"}));
    solve->add_option("--ridge", opts.ridge, "Ridge parameter for the normal equations");

    Pipeline pipe;
    try {
        try {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return kExitOk;
        } catch (const CLI::ParseError& e) {
            throw UsageError(e.what());
        }
        opts.seed = seed ? *seed : seed_from_env();
        if (solve->parsed() && opts.method == "ridge" && !(opts.ridge > 0.0))
            throw UsageError("--ridge must be positive for the ridge method");

        if (gen->parsed()) {
            const io::json descriptor = pipe.run("load", [&] { return io::parse_json(io::read_file(file), file); });
            const PolynomialSystem sys = pipe.run("gen", [&] { return generate(descriptor, opts.seed); });
            const std::string text = io::format_system(sys);
            if (output.empty())
                out << text;
            else
                pipe.run("write", [&] { io::write_file(output, text); });
            err << "generated n=" << sys.n << " D " << sys.D.rows() << "x" << sys.D.cols();
            if (sys.G)
                err << " G " << sys.G->rows() << "x" << sys.G->cols();
            if (sys.R)
                err << " R " << sys.R->rows() << "x" << sys.R->cols();
            err << " (" << sys.meta << ")\n";
            return kExitOk;
        }

        const PolynomialSystem sys = pipe.run("load", [&] {
            PolynomialSystem s = io::load_system(file);
            s.validate();
            return s;
        });
        io::json report;
        if (analyze->parsed())
            report = analyze_report(sys, opts, pipe);
        else if (solve->parsed())
            report = solve_report(sys, opts, pipe);
        else
            report = compare_report(sys, opts, pipe);

        if (opts.pretty)
            out << render_pretty(report);
        else
            out << report.dump(2) << "\n";
        return kExitOk;
    } catch (const Error& e) {
        emit_error(err, e.code(), pipe.stage(), e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        emit_error(err, "internal_error", pipe.stage(), e.what());
        return kExitNumerical;
    }
}

} // namespace kronlift::cli
