#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lfpc/script.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw lfpc::Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Exhaustive lattice and character laws on a chosen field, to the given
// index depth q^window.
int selfcheck(const lfpc::Field& f, int window) {
    using namespace lfpc;
    unsigned long long count = 1;
    for (int i = 0; i < window; ++i) count *= f.q();
    unsigned long long failures = 0;

    for (unsigned long long n = 0; n < count; ++n) {
        const LaurentNumber u = u_of_index(f, n);
        if (u.is_zero() != (n == 0)) ++failures;
        if (n > 0) {
            int k = 1;
            unsigned long long qk = f.q();
            while (n >= qk) {
                qk *= f.q();
                ++k;
            }
            if (u.abs() != QPower{false, k}) ++failures;
        }
        if (index_of_u(u).to_integer() != n) ++failures;
    }
    std::cerr << "lattice enumeration laws: " << (failures ? "FAIL" : "ok") << " (" << count
              << " indices)\n";

    std::vector<bool> seen(count, false);
    unsigned long long neg_fail = 0;
    for (unsigned long long n = 0; n < count; ++n) {
        const auto m = u_neg(f, TransIndex::from_integer(n, f.q())).to_integer();
        if (m >= count || seen[m]) ++neg_fail;
        else seen[m] = true;
    }
    std::cerr << "negation permutes the lattice: " << (neg_fail ? "FAIL" : "ok") << "\n";
    failures += neg_fail;

    unsigned long long split_fail = 0;
    for (unsigned long long r = 0; r <= 3; ++r)
        for (int k = 0; k <= 3; ++k) {
            unsigned long long qk = 1;
            for (int i = 0; i < k; ++i) qk *= f.q();
            for (unsigned long long s = 0; s < qk; ++s) {
                const LaurentNumber lhs = u_of_index(f, r * qk + s);
                const LaurentNumber rhs = u_of_index(f, r).shifted(-k) + u_of_index(f, s);
                if (!(lhs == rhs)) ++split_fail;
            }
        }
    std::cerr << "base-q splitting law: " << (split_fail ? "FAIL" : "ok") << "\n";
    failures += split_fail;

    unsigned long long chi_fail = 0;
    unsigned long long chi_count = 1;
    for (int i = 0; i < std::min(window, 3); ++i) chi_count *= f.q();
    for (unsigned long long k = 0; k < chi_count; ++k)
        for (unsigned long long l = 0; l < chi_count; ++l)
            if (!chi(u_of_index(f, k) * u_of_index(f, l)).is_one()) ++chi_fail;
    std::cerr << "character trivial on lattice products: " << (chi_fail ? "FAIL" : "ok") << "\n";
    failures += chi_fail;

    return failures ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact harmonic analysis on the local field GF(q)((t))"};
    app.require_subcommand(1);

    std::string run_path = "-";
    std::string mode = "report";
    lfpc::RunOptions options;
    auto* run = app.add_subcommand("run", "execute a script (JSON records on stdout)");
    run->add_option("script", run_path, "script file, or - for stdin");
    run->add_option("--window", options.window, "enumeration depth for report windows")
        ->capture_default_str();
    run->add_option("--mode", mode, "strict stops at the first failed check")
        ->check(CLI::IsMember({"strict", "report"}))
        ->capture_default_str();
    run->add_flag("--approx", options.approx,
                  "add non-authoritative decimal renderings to reports");

    std::string fmt_path;
    auto* fmt = app.add_subcommand("fmt", "print the canonical form of a script");
    fmt->add_option("script", fmt_path, "script file, or - for stdin")->required();

    int p = 2, c = 1, window = 4;
    std::vector<int> poly;
    auto* sc = app.add_subcommand("selfcheck", "run the exhaustive lattice/character laws");
    sc->add_option("--p", p, "characteristic")->capture_default_str();
    sc->add_option("--c", c, "extension degree")->capture_default_str();
    sc->add_option("--poly", poly, "modulus coefficients, low degree first");
    sc->add_option("--window", window, "index depth exponent")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            options.strict = (mode == "strict");
            const lfpc::Script script = lfpc::parse_script(read_input(run_path));
            return lfpc::run_script(script, std::cout, std::cerr, options);
        }
        if (fmt->parsed()) {
            const lfpc::Script script = lfpc::parse_script(read_input(fmt_path));
            std::cout << lfpc::print_script(script);
            return 0;
        }
        const lfpc::Field field =
            poly.empty() ? lfpc::Field(p, c) : lfpc::Field(p, c, poly);
        return selfcheck(field, window);
    } catch (const lfpc::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const lfpc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
