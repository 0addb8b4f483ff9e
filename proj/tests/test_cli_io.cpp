#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include <json.hpp>

#include "paperfold/cli.hpp"
#include "paperfold/json_io.hpp"
#include "paperfold/render.hpp"

using namespace paperfold;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli_dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string signs_of(const CreasePattern& p) {
    std::string s;
    for (const auto& [id, sign] : p.faces) s += sign_char(sign);
    return s;
}

}  // namespace

TEST_SUITE("cli_io") {
    TEST_CASE("crease patterns round-trip through JSON") {
        std::mt19937 rng(21);
        for (int iter = 0; iter < 20; ++iter) {
            const int d = 1 + static_cast<int>(rng() % 2);
            const CreasePattern p = generate_recursive(d, 2 + static_cast<int>(rng() % 2));
            CHECK(crease_pattern_from_json(to_json(p)) == p);
        }
    }

    TEST_CASE("symbolic patterns round-trip through JSON") {
        const SymbolicPattern p = seed(2);
        CHECK(symbolic_pattern_from_json(to_json(p)) == p);
    }

    TEST_CASE("faces are serialized sorted by axis then corner") {
        const std::string text = to_json(generate_recursive(2, 1));
        const auto j = nlohmann::json::parse(text);
        const auto& faces = j.at("faces");
        REQUIRE(faces.size() == 4);
        std::pair<int, Coords> prev{0, {}};
        for (const auto& f : faces) {
            std::pair<int, Coords> cur{f.at("axis").get<int>(), f.at("corner").get<Coords>()};
            CHECK(prev < cur);
            prev = cur;
        }
    }

    TEST_CASE("generate emits the third strip generation") {
        const auto r = run_cli({"generate", "-d", "1", "-n", "3"});
        REQUIRE(r.exit_code == 0);
        const CreasePattern p = crease_pattern_from_json(r.out);
        CHECK(p.face_count() == 7);
        CHECK(signs_of(p) == "--++-++");
    }

    TEST_CASE("generate is deterministic byte for byte") {
        const auto a = run_cli({"generate", "-d", "2", "-n", "3"});
        const auto b = run_cli({"generate", "-d", "2", "-n", "3"});
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
    }

    TEST_CASE("the substitution method emits the owned central window") {
        const auto r = run_cli({"generate", "-d", "2", "-n", "4", "--method", "substitution"});
        REQUIRE(r.exit_code == 0);
        const CreasePattern window = crease_pattern_from_json(r.out);
        const CreasePattern whole = generate_recursive(2, 4);
        CHECK(window.face_count() == 2u * 8 * 8);  // d * side^2 owned faces
        for (const auto& [id, sign] : window.faces) CHECK(whole.faces.at(id) == sign);

        CHECK(run_cli({"generate", "-d", "1", "-n", "1", "--method", "substitution"}).exit_code ==
              2);
    }

    TEST_CASE("check subcommands verify and set exit codes") {
        const auto eq = run_cli({"check", "equivalence", "-d", "1", "-k", "4"});
        CHECK(eq.exit_code == 0);
        CHECK(eq.out.find("\"equal\":true") != std::string::npos);

        const auto pr = run_cli({"check", "primitivity", "-d", "2"});
        CHECK(pr.exit_code == 0);
        const auto j = nlohmann::json::parse(pr.out);
        CHECK(j.at("primitive").get<bool>());
        CHECK(j.at("k").get<int>() <= 4);

        const auto co = run_cli({"check", "coincidence", "-d", "2"});
        CHECK(co.exit_code == 0);
        const auto cj = nlohmann::json::parse(co.out);
        CHECK(cj.at("coincidence").at("k").get<int>() == 2);
        const auto all = cj.at("coincidence").at("all_positions");
        CHECK(std::find(all.begin(), all.end(), nlohmann::json::array({3, 3})) != all.end());
    }

    TEST_CASE("complexity emits CSV with formula comparison") {
        const auto r = run_cli({"complexity", "-d", "1", "--n-max", "8"});
        REQUIRE(r.exit_code == 0);
        CHECK(r.out.find("d,n,count,formula_value,match\n") == 0);
        CHECK(r.out.find("1,7,28,28,yes\n") != std::string::npos);
        CHECK(r.out.find("1,8,32,32,yes\n") != std::string::npos);
    }

    TEST_CASE("cohomology prints the hull groups") {
        const auto r = run_cli({"cohomology", "-d", "1"});
        CHECK(r.exit_code == 0);
        CHECK(r.out == "H^0 = Z\nH^1 = Z[1/2] + Z\n");
    }

    TEST_CASE("rendering produces one segment per face") {
        CreasePattern empty;
        empty.d = 2;
        empty.extent = 0;
        const std::string none = render_svg(empty);
        CHECK(none.find("<svg") != std::string::npos);
        CHECK(none.find("<line") == std::string::npos);

        const std::string svg = render_svg(build_s1(2));
        std::size_t lines = 0;
        for (std::size_t pos = 0; (pos = svg.find("<line", pos)) != std::string::npos; ++pos)
            ++lines;
        CHECK(lines == 4);

        // Strips render as one tick per crease.
        const std::string strip = render_svg(generate_recursive(1, 2));
        lines = 0;
        for (std::size_t pos = 0; (pos = strip.find("<line", pos)) != std::string::npos; ++pos)
            ++lines;
        CHECK(lines == 3);

        // Byte-identical across runs, one segment per face at generation 3.
        const CreasePattern s23 = generate_recursive(2, 3);
        const std::string first = render_svg(s23);
        CHECK(first == render_svg(s23));
        lines = 0;
        for (std::size_t pos = 0; (pos = first.find("<line", pos)) != std::string::npos; ++pos)
            ++lines;
        CHECK(lines == s23.face_count());

        CreasePattern solid;
        solid.d = 3;
        solid.extent = 1;
        CHECK_THROWS_AS(render_svg(solid), std::invalid_argument);

        RenderStyle bad;
        bad.cell_size = 0;
        CHECK_THROWS_AS(render_svg(build_s1(1), bad), std::invalid_argument);
    }

    TEST_CASE("usage errors exit with code two") {
        CHECK(run_cli({"frobnicate"}).exit_code == 2);
        CHECK(run_cli({"generate", "--bogus"}).exit_code == 2);
        CHECK(run_cli({"generate", "-d", "1"}).exit_code == 2);  // missing -n
        CHECK(run_cli({"check", "nonsense", "-d", "1"}).exit_code == 2);
        CHECK(run_cli({}).exit_code == 2);
    }

    TEST_CASE("budget overruns exit with code two") {
        const auto r = run_cli({"generate", "-d", "2", "-n", "14"});
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("budget") != std::string::npos);
    }

    TEST_CASE("malformed JSON input exits with code two") {
        const auto r = run_cli({"render", "-i", "/nonexistent/file.json"});
        CHECK(r.exit_code == 2);
    }
}
