// Command-line front end: parse a defining polynomial, run the subfield
// search (or the group simulation), and emit the results as text or as a
// stable JSON document.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "subfields/field_search.hpp"
#include "subfields/group_specs.hpp"
#include "subfields/json_io.hpp"
#include "subfields/poly_parse.hpp"

using namespace subfields;

namespace {

struct PhaseClock {
    using clock = std::chrono::steady_clock;
    clock::time_point start = clock::now();
    std::vector<std::pair<std::string, double>> phases;

    void mark(const std::string& name) {
        auto now = clock::now();
        phases.emplace_back(name, std::chrono::duration<double>(now - start).count());
        start = now;
    }
};

/// Cheap reducibility certificate: a rational root among the small
/// divisors of the constant term.  Anything else is trusted.
bool has_certified_rational_root(const IntPoly& f) {
    if (f[0] == 0) return true;  // x divides f
    Int c = abs(f[0]);
    for (long d = 1; d <= 1000000 && Int(d) * d <= c * 2; ++d) {
        if (c % d != 0) continue;
        std::vector<Int> candidates{Int(d), Int(-d), Int(c / d), Int(-(c / d))};
        for (const Int& cand : candidates) {
            if (cand == 0 || abs(cand) > 1000000) continue;
            if (f.eval(cand) == 0) return true;
        }
    }
    return false;
}

std::string h_as_fraction_string(const RatPoly& h) {
    return h.to_string();
}

void print_text_report(const IntPoly& f, const FieldSearchResult& result) {
    std::cout << "polynomial: " << f.to_string() << "\n";
    if (result.inspection.has_value()) {
        const auto& insp = *result.inspection;
        std::cout << "possible block sizes:";
        for (long k : insp.possible_block_sizes) std::cout << " " << k;
        std::cout << "\norder divisor: " << insp.order_divisor_found.get_str()
                  << "\ngroup is even: "
                  << (insp.group_is_even == Evenness::kYes ? "yes" : "unknown")
                  << "\nlll prime: " << insp.lll_prime.get_str()
                  << "\nsplitting prime: " << insp.splitting_prime.get_str() << "\n";
    }
    if (result.no_subfields) {
        std::cout << "no subfields\n";
    } else {
        std::cout << "nontrivial subfields: " << result.records.size() << "\n";
        for (const auto& rec : result.records) {
            std::cout << "  degree " << rec.degree() << ": g = " << rec.g.to_string()
                      << "\n    h = " << h_as_fraction_string(rec.h) << "\n    blocks:";
            for (const auto& blk : rec.blocks.blocks) {
                std::cout << " {";
                for (std::size_t i = 0; i < blk.size(); ++i)
                    std::cout << (i ? "," : "") << blk[i] + 1;
                std::cout << "}";
            }
            std::cout << (rec.principal_proven ? "  [proven principal]" : "") << "\n";
        }
    }
    std::cout << "lll calls: " << result.lll_calls << "\n"
              << "group order: " << result.group.order().get_str() << "\n"
              << "group generators:\n";
    for (const auto& g : result.group.generators())
        std::cout << "  " << g.to_cycle_string() << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"subfield lattice and Galois starting group computation"};
    std::string poly_text, poly_file, mode = "subfields", format = "text", group_spec;
    long max_prime = 0, precision_cap = 0;
    std::uint64_t seed = 0;
    bool verbose = false;

    app.add_option("--poly", poly_text, "defining polynomial, e.g. \"x^18+9*x^9+27\"");
    app.add_option("--poly-file", poly_file, "file containing the polynomial");
    app.add_option("--mode", mode, "subfields | generating-only | starting-group | simulate")
        ->check(CLI::IsMember({"subfields", "generating-only", "starting-group", "simulate"}));
    app.add_option("--max-prime", max_prime, "prime sampling budget");
    app.add_option("--precision-cap", precision_cap, "p-adic precision exponent ceiling");
    app.add_option("--seed", seed, "rng seed (default 0)");
    app.add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--group-spec", group_spec, "group for simulate mode, e.g. c2^3-regular");
    app.add_flag("--verbose", verbose, "extra diagnostics on stderr");
    CLI11_PARSE(app, argc, argv);

    PhaseClock clock;

    if (mode == "simulate") {
        if (group_spec.empty()) {
            std::cerr << "error: --mode simulate requires --group-spec\n";
            return 1;
        }
        PermGroup g = parse_group_spec(group_spec);
        SimulationConfig cfg;
        cfg.seed = seed;
        SimulationResult sim = simulate_from_group(g, cfg);
        clock.mark("simulate");
        json sizes = json::array();
        for (long k : sim.possible_block_sizes) sizes.push_back(k);
        json systems = json::array();
        for (const auto& b : sim.systems) systems.push_back(to_json(b));
        json doc{{"group_spec", group_spec},
                 {"degree", g.degree()},
                 {"group_order", g.order().get_str()},
                 {"sieve_emptied", sim.sieve_emptied},
                 {"possible_block_sizes", sizes},
                 {"order_divisor", sim.order_divisor.get_str()},
                 {"oracle_calls", sim.oracle_calls},
                 {"oracle_calls_after_pq", sim.oracle_calls_after_pq},
                 {"final_order", sim.final_order.get_str()},
                 {"systems", systems}};
        if (format == "json") {
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << "group " << group_spec << " of order " << g.order().get_str()
                      << " on " << g.degree() << " points\n"
                      << "oracle calls: " << sim.oracle_calls << "\n"
                      << "block systems found: " << sim.systems.size() << "\n"
                      << "final group order: " << sim.final_order.get_str() << "\n";
            for (const auto& [name, secs] : clock.phases)
                std::cout << "time " << name << ": " << secs << " s\n";
        }
        return 0;
    }

    if (poly_text.empty() == poly_file.empty()) {
        std::cerr << "error: provide exactly one of --poly and --poly-file\n";
        return 1;
    }
    if (!poly_file.empty()) {
        std::ifstream in(poly_file);
        if (!in) {
            std::cerr << "error: cannot read " << poly_file << "\n";
            return 1;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        poly_text = buf.str();
    }

    IntPoly f;
    try {
        f = parse_polynomial(poly_text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (f.degree() < 2) {
        std::cerr << "error: degree must be at least 2\n";
        return 1;
    }
    bool monicized = false;
    if (!f.is_monic()) {
        // switch to the monic defining polynomial of lc*beta
        const Int lc = f.leading();
        std::vector<Int> c(f.degree() + 1);
        Int scale = 1;
        for (long i = f.degree(); i >= 0; --i) {
            c[i] = f[i] * scale;
            if (i > 0) scale *= lc;
        }
        c[f.degree()] = 1;
        f = IntPoly(std::move(c));
        monicized = true;
    }
    if (has_certified_rational_root(f)) {
        std::cerr << "error: input is reducible (certified rational root)\n";
        return 1;
    }
    clock.mark("parse");

    SearchConfig cfg;
    cfg.seed = seed;
    if (max_prime > 0) cfg.inspection.linear_budget = max_prime;
    if (precision_cap > 0) {
        cfg.principal.pr_l_cap = precision_cap;
        cfg.principal.confirm.precision_exponent_cap = precision_cap;
    }

    try {
        FieldSearchResult result = field_search(f, cfg);
        clock.mark("search");
        json doc = to_json(result, f);
        if (monicized) doc["monicized"] = true;
        if (mode == "generating-only") {
            json gen = json::array();
            for (const auto& rec : result.records)
                if (rec.principal_proven) gen.push_back(to_json(rec));
            doc["subfields"] = gen;
        }
        if (mode == "starting-group") {
            StartingGroupResult sg = starting_group(f, cfg);
            clock.mark("starting-group");
            json refinements = json::array();
            for (const auto& ref : sg.refinements) {
                json subset = json::array();
                for (std::size_t i : ref.subset) subset.push_back(i);
                refinements.push_back(json{{"subfields", subset},
                                           {"order_before", ref.order_before.get_str()},
                                           {"order_after", ref.order_after.get_str()}});
            }
            json plan = json::array();
            for (const auto& item : sg.descent_plan)
                plan.push_back(json{{"subfield_degree", item.subfield_degree},
                                    {"projected_order", item.projected_order.get_str()},
                                    {"divisor_bound", item.divisor_bound.get_str()}});
            doc["starting_group"] = json{
                {"initial_order", sg.initial_group.order().get_str()},
                {"refined", to_json(sg.refined_group)},
                {"square_class_refinements", refinements},
                {"descent_plan", plan},
                {"relative_disc_trigger", sg.relative_disc_trigger},
                {"relative_disc_subfield_degree", sg.relative_disc_subfield_degree}};
        }
        if (format == "json") {
            std::cout << doc.dump(2) << "\n";
        } else {
            print_text_report(f, result);
            if (mode == "starting-group")
                std::cout << "starting group order: "
                          << doc["starting_group"]["refined"]["order"].get<std::string>() << "\n";
            for (const auto& [name, secs] : clock.phases)
                std::cout << "time " << name << ": " << secs << " s\n";
        }
        return 0;
    } catch (const std::runtime_error& e) {
        std::cerr << "abort: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
