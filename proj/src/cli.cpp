#include "paperfold/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "paperfold/cohomology.hpp"
#include "paperfold/complexity.hpp"
#include "paperfold/errors.hpp"
#include "paperfold/json_io.hpp"
#include "paperfold/render.hpp"
#include "paperfold/spectral.hpp"
#include "paperfold/substitution.hpp"

namespace paperfold {

namespace {

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    file << content;
}

std::string read_input(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

int default_equivalence_steps(int d) {
    switch (d) {
        case 1: return 8;
        case 2: return 5;
        case 3: return 3;
        default: return 2;
    }
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"d-dimensional paperfolding structures: generation, checks, "
                 "complexity, cohomology, rendering"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "generate a crease pattern");
    int gen_d = 1, gen_n = 1;
    std::string gen_method = "recursion", gen_out;
    generate->add_option("-d,--dimension", gen_d, "dimension")->required();
    generate->add_option("-n,--generation", gen_n, "generation")->required();
    generate->add_option("--method", gen_method, "recursion|substitution")
        ->check(CLI::IsMember({"recursion", "substitution"}));
    generate->add_option("-o,--output", gen_out, "output file (default stdout)");

    // check
    auto* check = app.add_subcommand("check", "verify a structural property");
    std::string check_what;
    int check_d = 1;
    int check_k = -1;
    check->add_option("property", check_what, "equivalence|primitivity|coincidence")
        ->required()
        ->check(CLI::IsMember({"equivalence", "primitivity", "coincidence"}));
    check->add_option("-d,--dimension", check_d, "dimension")->required();
    check->add_option("-k,--steps", check_k, "steps / search bound");

    // complexity
    auto* complexity = app.add_subcommand("complexity", "subpattern complexity table");
    int cx_d = 1, cx_n_max = 8;
    std::string cx_out;
    complexity->add_option("-d,--dimension", cx_d, "dimension")->required();
    complexity->add_option("--n-max", cx_n_max, "largest window size")->required();
    complexity->add_option("-o,--output", cx_out, "output CSV file (default stdout)");

    // cohomology
    auto* cohomology = app.add_subcommand("cohomology", "Cech cohomology of the hull");
    int coh_d = 1;
    cohomology->add_option("-d,--dimension", coh_d, "dimension (1 or 2)")->required();

    // render
    auto* render = app.add_subcommand("render", "render a crease pattern to SVG");
    std::string render_in, render_out;
    RenderStyle style;
    render->add_option("-i,--input", render_in, "crease pattern JSON")->required();
    render->add_option("-o,--output", render_out, "output SVG file (default stdout)");
    render->add_option("--cell-size", style.cell_size, "pixels per cell");
    render->add_option("--margin", style.margin, "margin in pixels");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (generate->parsed()) {
            CreasePattern p;
            if (gen_method == "recursion") {
                p = generate_recursive(gen_d, gen_n);
            } else {
                if (gen_n < 2) {
                    err << "usage error: substitution method needs -n >= 2\n";
                    return 2;
                }
                const BlockSubstitution rule = BlockSubstitution::derive_rule(gen_d);
                SymbolicPattern sp = seed(gen_d);
                for (int i = 2; i < gen_n; ++i) sp = substitute(sp, rule);
                p = to_creases(sp);
            }
            write_output(gen_out, to_json(p), out);
            return 0;
        }

        if (check->parsed()) {
            if (check_what == "equivalence") {
                const int k = check_k >= 0 ? check_k : default_equivalence_steps(check_d);
                const EquivalenceReport r = equivalence_check(check_d, k);
                out << to_json(r);
                return r.equal ? 0 : 1;
            }
            if (check_what == "primitivity") {
                const int k_max = check_k >= 0 ? check_k : 8;
                const BlockSubstitution rule = BlockSubstitution::derive_rule(check_d);
                const PrimitivityResult r = is_primitive(rule.as_block_rule(), k_max);
                out << to_json(r);
                return r.primitive ? 0 : 1;
            }
            const int k_max = check_k >= 0 ? check_k : 6;
            const BlockSubstitution rule = BlockSubstitution::derive_rule(check_d);
            const CoincidenceReport r = find_coincidence(rule.as_block_rule(), k_max);
            out << to_json(r);
            return r.found ? 0 : 1;
        }

        if (complexity->parsed()) {
            const ComplexityTable table = complexity_table(cx_d, cx_n_max);
            write_output(cx_out, table.to_csv(), out);
            for (const auto& row : table.rows)
                if (!row.stabilized) {
                    err << "warning: count for n=" << row.n << " did not stabilize\n";
                    return 1;
                }
            return 0;
        }

        if (cohomology->parsed()) {
            const auto groups = paperfolding_cohomology(coh_d);
            bool conclusive = true;
            for (std::size_t q = 0; q < groups.size(); ++q) {
                out << "H^" << q << " = " << groups[q].to_string() << "\n";
                if (!groups[q].conclusive) {
                    conclusive = false;
                    err << "H^" << q << " inconclusive: " << groups[q].note << "\n";
                }
            }
            return conclusive ? 0 : 1;
        }

        if (render->parsed()) {
            const CreasePattern p = crease_pattern_from_json(read_input(render_in));
            write_output(render_out, render_svg(p, style), out);
            return 0;
        }
    } catch (const BudgetError& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace paperfold
