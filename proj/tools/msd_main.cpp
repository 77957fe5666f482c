// Command-line front end: verify-codes, oracle, search, size, fit.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "msd/cli.hpp"

namespace {

msd::Emit parse_emit(const std::string& s) {
    if (s == "text") return msd::Emit::Text;
    if (s == "json") return msd::Emit::Json;
    if (s == "csv") return msd::Emit::Csv;
    throw CLI::ValidationError("--emit must be text, json or csv");
}

// "6" or "6x6" etc.
std::vector<int> parse_dims(const std::string& s) {
    std::vector<int> dims;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t x = s.find('x', pos);
        std::string part = s.substr(pos, x == std::string::npos ? std::string::npos : x - pos);
        dims.push_back(std::stoi(part));
        if (x == std::string::npos) break;
        pos = x + 1;
    }
    return dims;
}

// "6..24" or a single value.
std::pair<int, int> parse_range(const std::string& s) {
    size_t dots = s.find("..");
    if (dots == std::string::npos) {
        int v = std::stoi(s);
        return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"H-code family construction, distillation error models, brute-force validation, "
                 "and optimal multi-round protocol search"};
    app.require_subcommand(1);

    msd::RunConfig cfg;
    std::string emit = "text";
    std::string dims = "6";
    std::string n_range = "6..24";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--emit", emit, "output format: text, json or csv");
        sub->add_option("-o,--output", cfg.output_path, "write the artifact to this path (atomic)");
        sub->add_option("--threads", cfg.threads, "worker threads (output is identical for any value)");
    };

    CLI::App* verify = app.add_subcommand("verify-codes", "check code-family invariants");
    verify->add_option("--n", n_range, "range of code sizes, e.g. 6..24");
    verify->add_flag("!--no-grids", cfg.verify_grids, "skip the grid checks");
    add_common(verify);

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force error enumeration vs closed forms");
    oracle->add_option("--dims", dims, "grid dimensions, e.g. 6 or 6x6");
    oracle->add_option("--max-weight", cfg.max_weight, "truncation weight for large grids");
    oracle->add_option("--eps-l", cfg.eps_l, "logical input infidelity for evaluation");
    oracle->add_option("--eps-p", cfg.eps_p, "physical input infidelity for evaluation");
    add_common(oracle);

    CLI::App* search = app.add_subcommand("search", "optimal multi-round protocol search");
    search->add_option("--eps0", cfg.eps0, "source infidelity");
    search->add_option("--target", cfg.target, "target output infidelity (omit for the full curve)");
    search->add_option("--max-rounds", cfg.max_rounds, "round limit");
    search->add_option("--max-k", cfg.max_k, "largest k for one- and multilevel blocks");
    search->add_option("--bh-max-k", cfg.bh_max_k, "largest k for triorthogonal blocks");
    search->add_option("--families", cfg.families, "comma list of bk,mek,bh,h1,ml");
    search->add_option("--min-exp", cfg.min_exp, "first target exponent for the curve");
    search->add_option("--max-exp", cfg.max_exp, "last target exponent for the curve");
    search->add_flag("--full-prior-polys", cfg.full_prior_polys,
                     "use all retained terms of the prior-protocol error functions");
    add_common(search);

    CLI::App* size = app.add_subcommand("size", "total input count of the square r-round chain");
    size->add_option("--rounds", cfg.rounds, "rounds r")->required();
    size->add_option("--k", cfg.size_k, "encoded qubits per dimension")->required();
    add_common(size);

    CLI::App* fit = app.add_subcommand("fit", "cost-curve fit and scaling exponent");
    fit->add_option("--eps0", cfg.eps0, "source infidelity");
    fit->add_option("--max-rounds", cfg.max_rounds, "round limit");
    fit->add_option("--max-k", cfg.max_k, "largest k for one- and multilevel blocks");
    fit->add_option("--families", cfg.families, "comma list of bk,mek,bh,h1,ml");
    fit->add_option("--min-exp", cfg.min_exp, "first target exponent");
    fit->add_option("--max-exp", cfg.max_exp, "last target exponent");
    add_common(fit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.emit = parse_emit(emit);
        cfg.dims = parse_dims(dims);
        auto [lo, hi] = parse_range(n_range);
        cfg.n_lo = lo;
        cfg.n_hi = hi;
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    if (verify->parsed()) cfg.command = msd::Command::VerifyCodes;
    if (oracle->parsed()) cfg.command = msd::Command::Oracle;
    if (search->parsed()) cfg.command = msd::Command::Search;
    if (size->parsed()) cfg.command = msd::Command::Size;
    if (fit->parsed()) cfg.command = msd::Command::Fit;

    return msd::run_config(cfg, std::cout, std::cerr);
}
