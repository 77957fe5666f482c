#include "msd/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "msd/hcode.hpp"
#include "msd/oracle.hpp"
#include "msd/search.hpp"

namespace msd {

using nlohmann::ordered_json;

void write_atomic(const std::string& path, const std::string& content) {
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string());
        f << content;
        if (!f.good()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

namespace {

void deliver(const RunConfig& cfg, const std::string& content, std::ostream& out) {
    if (cfg.output_path.empty())
        out << content;
    else
        write_atomic(cfg.output_path, content);
}

ordered_json pauli_json(const PauliString& p) {
    ordered_json j;
    j["x"] = p.x.indices();
    j["z"] = p.z.indices();
    return j;
}

std::set<ProtocolKind> parse_families(const std::string& text) {
    std::set<ProtocolKind> all = {ProtocolKind::BK, ProtocolKind::MEK, ProtocolKind::BH,
                                  ProtocolKind::H1, ProtocolKind::ML};
    if (text.empty()) return all;
    std::set<ProtocolKind> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token == "bk") out.insert(ProtocolKind::BK);
        else if (token == "mek") out.insert(ProtocolKind::MEK);
        else if (token == "bh") out.insert(ProtocolKind::BH);
        else if (token == "h1") out.insert(ProtocolKind::H1);
        else if (token == "ml") out.insert(ProtocolKind::ML);
        else throw std::invalid_argument("unknown protocol family: " + token);
    }
    return out;
}

SearchOptions search_options(const RunConfig& cfg) {
    SearchOptions opts;
    opts.eps0 = cfg.eps0;
    opts.max_rounds = cfg.max_rounds;
    opts.max_k = cfg.max_k;
    opts.bh_max_k = cfg.bh_max_k;
    opts.families = parse_families(cfg.families);
    opts.threads = cfg.threads;
    opts.full_prior_polys = cfg.full_prior_polys;
    return opts;
}

int run_verify_codes(const RunConfig& cfg, std::ostream& out) {
    bool all_pass = true;
    ordered_json codes = ordered_json::array();
    std::string text = "n   k   built  transversal_h  pair_weight2  distance\n";

    for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
        if (n % 2 != 0) continue;
        ordered_json row;
        row["n"] = n;
        bool built = false, trans = false, pair_w2 = false;
        int distance = -1;
        try {
            StabilizerCode code = build_hcode(n);
            built = true;
            row["k"] = code.k;
            trans = verify_transversal_hadamard(code);
            // Products of same-type logicals for distinct qubits sit at coset
            // weight two, as does the product over all logical qubits.
            PauliString pair_prod = multiply(code.logical_x[0], code.logical_x[1]);
            PauliString all_prod(n);
            for (const PauliString& lx : code.logical_x) all_prod = multiply(all_prod, lx);
            pair_w2 = min_coset_weight(pair_prod, code.stabilizers) == 2 &&
                      min_coset_weight(all_prod, code.stabilizers) == 2;
            if (n <= 10) distance = code_distance_exhaustive(code);
            ordered_json stabs = ordered_json::array();
            for (const PauliString& s : code.stabilizers) stabs.push_back(pauli_json(s));
            ordered_json lx = ordered_json::array(), lz = ordered_json::array();
            for (const PauliString& p : code.logical_x) lx.push_back(pauli_json(p));
            for (const PauliString& p : code.logical_z) lz.push_back(pauli_json(p));
            row["stabilizers"] = stabs;
            row["logical_x"] = lx;
            row["logical_z"] = lz;
        } catch (const std::exception& e) {
            row["error"] = e.what();
        }
        bool pass = built && trans && pair_w2 && (distance == -1 || distance == 2);
        all_pass = all_pass && pass;
        row["built"] = built;
        row["transversal_hadamard"] = trans;
        row["pair_product_weight2"] = pair_w2;
        if (distance >= 0) row["distance"] = distance;
        row["pass"] = pass;
        codes.push_back(row);

        char line[128];
        std::snprintf(line, sizeof(line), "%-3d %-3d %-6s %-13s %-13s %s\n", n, n - 4,
                      built ? "ok" : "FAIL", trans ? "ok" : "FAIL", pair_w2 ? "ok" : "FAIL",
                      distance >= 0 ? std::to_string(distance).c_str() : "-");
        text += line;
    }

    ordered_json grids = ordered_json::array();
    if (cfg.verify_grids) {
        for (const std::vector<int>& dims : {std::vector<int>{6, 6}, std::vector<int>{6, 8}}) {
            ordered_json row;
            row["dims"] = dims;
            bool ok = false;
            int d = -1;
            try {
                GridCode grid = build_grid_code(dims);
                d = y_distance(grid, 4);
                ok = (d == 4);
                row["encoded"] = grid.encoded_count;
                row["sites"] = grid.site_count;
            } catch (const std::exception& e) {
                row["error"] = e.what();
            }
            row["y_distance"] = d;
            row["pass"] = ok;
            all_pass = all_pass && ok;
            grids.push_back(row);
            text += "grid " + std::to_string(dims[0]) + "x" + std::to_string(dims[1]) +
                    "  y_distance=" + std::to_string(d) + (ok ? "  ok\n" : "  FAIL\n");
        }
    }

    if (cfg.emit == Emit::Json) {
        ordered_json doc;
        doc["codes"] = codes;
        doc["grids"] = grids;
        doc["all_pass"] = all_pass;
        deliver(cfg, doc.dump(2) + "\n", out);
    } else {
        text += all_pass ? "all checks passed\n" : "CHECKS FAILED\n";
        deliver(cfg, text, out);
    }
    return all_pass ? 0 : 1;
}

int run_oracle(const RunConfig& cfg, std::ostream& out) {
    GridCode grid = build_grid_code(cfg.dims);
    OracleResult result;
    if (grid.encoded_count + 2 * grid.site_count <= 26)
        result = enumerate_exact(grid);
    else
        result = enumerate_truncated(grid, cfg.max_weight, cfg.threads);

    ComparisonReport report = compare_with_closed_form(result);
    double accept = result.accept_prob.eval(cfg.eps_l, cfg.eps_p);
    double marginal = result.marginal_error.at(0).eval(cfg.eps_l, cfg.eps_p);
    double conditional = conditional_error(result, cfg.eps_l, cfg.eps_p);
    double tail = result.tail_bound(std::max(cfg.eps_l, cfg.eps_p));
    int degree_cap = result.truncation_weight ? *result.truncation_weight : 6;

    if (cfg.emit == Emit::Json) {
        ordered_json doc;
        doc["dims"] = result.dims;
        doc["t"] = result.t;
        doc["k"] = report.k;
        doc["sites"] = result.sites;
        doc["encoded"] = result.k_encoded;
        doc["bits"] = result.total_bits;
        if (result.truncation_weight)
            doc["truncation_weight"] = *result.truncation_weight;
        else
            doc["truncation_weight"] = nullptr;
        doc["eps_l"] = cfg.eps_l;
        doc["eps_p"] = cfg.eps_p;
        doc["accept"] = accept;
        doc["marginal"] = marginal;
        doc["conditional_error"] = conditional;
        doc["tail_bound"] = tail;
        ErrorPoly2 marginal_poly = result.marginal_error.at(0).to_error_poly(degree_cap);
        ordered_json terms = ordered_json::array();
        for (const auto& [key, coeff] : marginal_poly.terms())
            terms.push_back({key.first, key.second, coeff});
        doc["marginal_terms"] = terms;
        ordered_json checks = ordered_json::array();
        for (const CoeffCheck& c : report.checks) {
            ordered_json jc;
            jc["i"] = c.i;
            jc["j"] = c.j;
            jc["oracle"] = c.oracle_value;
            jc["closed_form"] = c.closed_form;
            jc["required"] = c.required;
            jc["match"] = c.match;
            checks.push_back(jc);
        }
        doc["comparison"] = {{"checks", checks}, {"all_required_match", report.all_required_match}};
        deliver(cfg, doc.dump(2) + "\n", out);
    } else {
        std::string text;
        text += "dims:";
        for (int d : result.dims) text += " " + std::to_string(d);
        text += "  sites=" + std::to_string(result.sites) + "  bits=" + std::to_string(result.total_bits);
        text += result.truncation_weight
                    ? "  truncated at weight " + std::to_string(*result.truncation_weight) + "\n"
                    : "  exact\n";
        text += "coefficient  oracle        closed-form   status\n";
        for (const CoeffCheck& c : report.checks) {
            char line[160];
            std::snprintf(line, sizeof(line), "el^%d ep^%d    %-13lld %-13.10g %s%s\n", c.i, c.j,
                          static_cast<long long>(c.oracle_value), c.closed_form,
                          c.match ? "match" : "MISMATCH", c.required ? "" : " (reported only)");
            text += line;
        }
        text += "accept(" + format_double(cfg.eps_l) + "," + format_double(cfg.eps_p) +
                ") = " + format_double(accept) + "\n";
        text += "marginal = " + format_double(marginal) + "\n";
        text += "conditional_error = " + format_double(conditional) + "\n";
        text += "tail_bound = " + format_double(tail) + "\n";
        text += report.all_required_match ? "all required coefficients match\n"
                                          : "REQUIRED COEFFICIENT MISMATCH\n";
        deliver(cfg, text, out);
    }
    return report.all_required_match ? 0 : 1;
}

int run_search(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    ParetoSet set = pareto_search(search_options(cfg));

    if (cfg.target > 0) {
        const ParetoEntry* entry = try_query(set, cfg.target);
        if (!entry) {
            if (cfg.emit == Emit::Json) {
                ordered_json doc;
                doc["error"] = "target not reachable within bounds";
                doc["target"] = cfg.target;
                deliver(cfg, doc.dump(2) + "\n", out);
            } else {
                err << "target not reachable within bounds\n";
            }
            return 1;
        }
        if (cfg.emit == Emit::Json) {
            ordered_json doc;
            doc["eps0"] = set.eps0;
            doc["target"] = cfg.target;
            doc["protocol"] = entry->serialized;
            doc["eps_out"] = entry->eps_out;
            doc["neg_log10_eps_out"] = -std::log10(entry->eps_out);
            doc["cost"] = entry->cost;
            doc["accept"] = entry->accept;
            doc["rounds"] = entry->depth;
            deliver(cfg, doc.dump(2) + "\n", out);
        } else {
            std::string text = "protocol: " + entry->serialized + "\n";
            text += "eps_out = " + format_double(entry->eps_out) +
                    "  (-log10 = " + format_double(-std::log10(entry->eps_out)) + ")\n";
            text += "cost = " + format_double(entry->cost) + "\n";
            text += "rounds = " + std::to_string(entry->depth) + "\n";
            deliver(cfg, text, out);
        }
        return 0;
    }

    if (cfg.emit == Emit::Json) {
        ordered_json rows = ordered_json::array();
        for (int e = cfg.min_exp; e <= cfg.max_exp; ++e) {
            const ParetoEntry* entry = try_query(set, std::pow(10.0, -e));
            if (!entry) continue;
            ordered_json row;
            row["target_exponent"] = e;
            row["achieved_neg_log10_eps"] = -std::log10(entry->eps_out);
            row["cost"] = entry->cost;
            row["accept"] = entry->accept;
            row["rounds"] = entry->depth;
            row["protocol"] = entry->serialized;
            rows.push_back(row);
        }
        ordered_json doc;
        doc["eps0"] = set.eps0;
        doc["entries"] = rows;
        deliver(cfg, doc.dump(2) + "\n", out);
    } else {
        deliver(cfg, pareto_csv(set, cfg.min_exp, cfg.max_exp), out);
    }
    return 0;
}

int run_size(const RunConfig& cfg, std::ostream& out) {
    __int128 total = total_input_count(cfg.rounds, cfg.size_k);
    std::string digits = int128_to_string(total);
    if (cfg.emit == Emit::Json) {
        ordered_json doc;
        doc["rounds"] = cfg.rounds;
        doc["k"] = cfg.size_k;
        if (total <= static_cast<__int128>(INT64_MAX))
            doc["total_inputs"] = static_cast<int64_t>(total);
        else
            doc["total_inputs"] = digits;
        deliver(cfg, doc.dump(2) + "\n", out);
    } else {
        deliver(cfg, digits + "\n", out);
    }
    return 0;
}

int run_fit(const RunConfig& cfg, std::ostream& out) {
    ParetoSet set = pareto_search(search_options(cfg));
    FitResult fit = fit_cost_curve(set, cfg.min_exp, cfg.max_exp);
    if (cfg.emit == Emit::Json) {
        ordered_json doc;
        doc["eps0"] = set.eps0;
        doc["slope"] = fit.slope;
        doc["intercept"] = fit.intercept;
        doc["gamma"] = fit.gamma;
        doc["points"] = fit.points;
        deliver(cfg, doc.dump(2) + "\n", out);
    } else if (cfg.emit == Emit::Csv) {
        deliver(cfg, plot_csv(set, fit, cfg.min_exp, cfg.max_exp), out);
    } else {
        std::string text = "slope = " + format_double(fit.slope) + "\n";
        text += "intercept = " + format_double(fit.intercept) + "\n";
        text += "gamma = " + format_double(fit.gamma) + "\n";
        text += "points = " + std::to_string(fit.points) + "\n";
        deliver(cfg, text, out);
    }
    return 0;
}

}  // namespace

int run_config(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
            case Command::VerifyCodes: return run_verify_codes(cfg, out);
            case Command::Oracle: return run_oracle(cfg, out);
            case Command::Search: return run_search(cfg, out, err);
            case Command::Size: return run_size(cfg, out);
            case Command::Fit: return run_fit(cfg, out);
        }
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace msd
