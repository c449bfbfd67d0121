// stmodkit: command-line access to the module calculus, the cohomology
// engine and the filtration solver. All reports are JSON; diagrams are DOT
// or plain text. Exit codes: 0 success, 1 invalid input, 2 a violated
// internal invariant.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stmodkit/acceptance.hpp"
#include "stmodkit/diagram.hpp"
#include "stmodkit/io.hpp"

using namespace stmodkit;

namespace {

struct WindowSpec {
    int lo = -6, hi = 6;
};

// Width-W window centered at zero: W=13 gives [-6,6].
WindowSpec window_from_width(int w) {
    if (w < 1) w = 1;
    WindowSpec out;
    out.hi = (w - 1) / 2;
    out.lo = out.hi - (w - 1);
    return out;
}

WindowSpec default_window(int cli_width) {
    if (cli_width > 0) return window_from_width(cli_width);
    if (const char* env = std::getenv("STMODKIT_WINDOW")) {
        try {
            return window_from_width(std::stoi(env));
        } catch (...) {
            fail(ErrorKind::BadInput, "STMODKIT_WINDOW must be an integer width");
        }
    }
    return WindowSpec{};
}

std::pair<int, int> parse_range(const std::string& s) {
    auto pos = s.find("..");
    require(pos != std::string::npos, ErrorKind::BadInput, "range must look like A..B");
    try {
        int lo = std::stoi(s.substr(0, pos));
        int hi = std::stoi(s.substr(pos + 2));
        require(lo <= hi, ErrorKind::BadInput, "empty range");
        return {lo, hi};
    } catch (const Error&) {
        throw;
    } catch (...) {
        fail(ErrorKind::BadInput, "range must look like A..B");
    }
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

AlgebraRef algebra_from_flags(const std::string& case_name, unsigned r) {
    if (case_name == "A") return AlgebraPresentation::case_a(r);
    if (case_name == "B") return AlgebraPresentation::case_b();
    fail(ErrorKind::BadInput, "--case must be A or B");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"module calculus, Tate cohomology and filtration toolkit"};
    app.require_subcommand(1);

    std::string in_path, in2_path, out_path, range_str, construction = "submodule", format = "dot";
    std::string case_name = "A", pieces_str;
    unsigned r_param = 1;
    std::uint64_t seed = 1;
    std::size_t copies = 1, dim_bound = 24;
    int window_width = 0;

    auto add_io = [&](CLI::App* cmd, bool needs_in = true) {
        if (needs_in) cmd->add_option("--in", in_path, "input module file")->required();
        cmd->add_option("--out", out_path, "output file (default stdout)");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "socle/radical/Loewy report");
    add_io(analyze);

    CLI::App* filtrate = app.add_subcommand("filtrate", "run the filtration solver");
    add_io(filtrate);
    filtrate->add_option("--window", window_width, "verification window width (default 13)");

    CLI::App* cohomology = app.add_subcommand("cohomology", "Tate cohomology table");
    add_io(cohomology);
    cohomology->add_option("--range", range_str, "degree range A..B (default the window)");
    cohomology->add_option("--window", window_width, "window width when no range given");

    CLI::App* decompose = app.add_subcommand("decompose", "restriction decomposition report");
    add_io(decompose);

    CLI::App* duality = app.add_subcommand("duality", "two-sided duality dimension check");
    add_io(duality);
    duality->add_option("--in2", in2_path, "second module (default: trivial module)");
    duality->add_option("--range", range_str, "degree range A..B (default -4..4)");

    CLI::App* randomgen = app.add_subcommand("randomgen", "write a reproducible random module");
    add_io(randomgen, false);
    randomgen->add_option("--case", case_name, "algebra case: A or B");
    randomgen->add_option("--r", r_param, "tower parameter for case A (default 1)");
    randomgen->add_option("--seed", seed, "seed (default 1)");
    randomgen
        ->add_option("--construction", construction,
                     "submodule | quotient | extension (default submodule)")
        ->check(CLI::IsMember({"submodule", "quotient", "extension"}));
    randomgen->add_option("--copies", copies, "free-module copies (default 1)");
    randomgen->add_option("--dim-bound", dim_bound, "dimension bound (default 24)");
    randomgen->add_option("--pieces", pieces_str, "comma-separated fixture names for extension");

    CLI::App* selftest = app.add_subcommand("selftest", "run the full acceptance suite");
    (void)selftest;

    CLI::App* diagram = app.add_subcommand("diagram", "Loewy diagram of a module");
    add_io(diagram);
    diagram->add_option("--format", format, "dot | ascii (default dot)")
        ->check(CLI::IsMember({"dot", "ascii"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            ModuleRep m = read_module_file(in_path);
            emit(out_path, dump_json(analyze_to_json(m)));
        } else if (filtrate->parsed()) {
            ModuleRep m = read_module_file(in_path);
            FiltrationResult res = solve_filtration(m);
            WindowSpec w = default_window(window_width);
            CohomologyEngine engine(m.algebra);
            VerificationReport ver = verify_filtration(m, res, engine, w.lo, w.hi);
            Json j = filtration_to_json(res);
            j["verification"] = verification_to_json(ver);
            emit(out_path, dump_json(j));
            if (!ver.ok()) return 2;
        } else if (cohomology->parsed()) {
            ModuleRep m = read_module_file(in_path);
            WindowSpec w = default_window(window_width);
            if (!range_str.empty()) std::tie(w.lo, w.hi) = parse_range(range_str);
            TateTable t = tate_cohomology(m, w.lo, w.hi);
            emit(out_path, dump_json(tate_to_json(t)));
        } else if (decompose->parsed()) {
            ModuleRep m = read_module_file(in_path);
            DecompositionReport rep = decompose_restriction(restrict_module(m));
            Json j = decomposition_to_json(rep);
            j["subalgebra"] = m.algebra->algebra_case() == AlgebraCase::A ? "D" : "A";
            emit(out_path, dump_json(j));
        } else if (duality->parsed()) {
            ModuleRep m = read_module_file(in_path);
            ModuleRep n =
                in2_path.empty() ? trivial_module(m.algebra) : read_module_file(in2_path);
            require_same_algebra(m.algebra, n.algebra);
            int lo = -4, hi = 4;
            if (!range_str.empty()) std::tie(lo, hi) = parse_range(range_str);
            DualityReport rep = duality_check(m, n, lo, hi);
            emit(out_path, dump_json(duality_to_json(rep)));
        } else if (randomgen->parsed()) {
            AlgebraRef a = algebra_from_flags(case_name, r_param);
            RandomSpec sp;
            sp.seed = seed;
            sp.free_copies = copies;
            sp.dim_bound = dim_bound;
            if (construction == "submodule")
                sp.construction = RandomSpec::Construction::submodule_of_free;
            else if (construction == "quotient")
                sp.construction = RandomSpec::Construction::quotient_of_free;
            else {
                sp.construction = RandomSpec::Construction::extension;
                std::size_t pos = 0;
                while (pos <= pieces_str.size() && !pieces_str.empty()) {
                    std::size_t comma = pieces_str.find(',', pos);
                    sp.pieces.push_back(pieces_str.substr(
                        pos, comma == std::string::npos ? std::string::npos : comma - pos));
                    if (comma == std::string::npos) break;
                    pos = comma + 1;
                }
                require(!sp.pieces.empty(), ErrorKind::BadInput,
                        "extension needs --pieces name,name,...");
            }
            ModuleRep m = random_module(a, sp);
            emit(out_path, dump_json(module_to_json(m)));
        } else if (selftest->parsed()) {
            auto results = run_acceptance();
            bool all = true;
            for (const auto& res : results) {
                std::cout << criterion_line(res) << "\n";
                all &= res.pass;
            }
            return all ? 0 : 1;
        } else if (diagram->parsed()) {
            ModuleRep m = read_module_file(in_path);
            LoewyDiagram d = loewy_diagram(m);
            emit(out_path, format == "dot"
                               ? diagram_to_dot(d, m.label.empty() ? "module" : m.label)
                               : diagram_to_ascii(d));
        }
    } catch (const InvariantViolation& e) {
        Json err;
        err["error"] = "InvariantViolation";
        err["step"] = e.step();
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const Error& e) {
        Json err;
        err["error"] = error_kind_name(e.kind());
        err["message"] = e.detail();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        Json err;
        err["error"] = "Unexpected";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
