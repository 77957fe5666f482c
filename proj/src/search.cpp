#include "msd/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace msd {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

// One protocol application with its output-error polynomial flattened into
// (i, j, coeff) triples in term order. Evaluating here must match
// ErrorPoly2::eval and acceptance_probability bit for bit so that stored
// evals are reproduced exactly by evaluate() on the materialized expression.
struct Op {
    ProtocolSpec spec;
    bool dual = false;
    std::vector<std::tuple<int, int, double>> terms;
};

std::vector<std::tuple<int, int, double>> flatten(const ErrorPoly2& poly) {
    std::vector<std::tuple<int, int, double>> out;
    for (const auto& [key, coeff] : poly.terms()) out.emplace_back(key.first, key.second, coeff);
    return out;
}

std::vector<Op> build_ops(const SearchOptions& opts) {
    std::vector<Op> ops;
    auto has = [&](ProtocolKind kind) { return opts.families.count(kind) > 0; };
    if (has(ProtocolKind::BK))
        ops.push_back({{ProtocolKind::BK, 0, 0}, false, flatten(bk_error_poly(opts.full_prior_polys))});
    if (has(ProtocolKind::MEK))
        ops.push_back({{ProtocolKind::MEK, 0, 0}, false, flatten(mek_error_poly(opts.full_prior_polys))});
    if (has(ProtocolKind::BH))
        for (int k = 2; k <= opts.bh_max_k; k += 2)
            ops.push_back({{ProtocolKind::BH, k, 0}, false, flatten(bh_error_poly(k))});
    if (has(ProtocolKind::H1))
        for (int k = 2; k <= opts.max_k; k += 2)
            ops.push_back({{ProtocolKind::H1, k, 1}, true, flatten(level1_error_poly(k))});
    if (has(ProtocolKind::ML))
        for (int t = 2; t <= 4; ++t)
            for (int k = 2; k <= opts.max_k; k += 2)
                ops.push_back({{ProtocolKind::ML, k, t}, true, flatten(multilevel_error_poly(k, t))});
    return ops;
}

struct Cand {
    double eps = 0, cost = 0, accept = 0;
    int32_t op = -1;   // -1: carried-over front entry (index in `self`)
    int32_t pa = -1, pb = -1;
    int32_t self = -1;
    int32_t depth = 0;
};

// Same arithmetic as evaluate_node, inlined over flattened terms.
bool apply_op(const Op& op, const ParetoEntry& a, const ParetoEntry& b, Cand& out) {
    double el = a.eps_out;
    double ep = b.eps_out;
    double eps_out = 0;
    for (const auto& [i, j, coeff] : op.terms) {
        double v = coeff;
        for (int q = 0; q < i; ++q) v *= el;
        for (int q = 0; q < j; ++q) v *= ep;
        eps_out += v;
    }
    double accept = std::pow(1.0 - el, static_cast<double>(op.spec.inputs_logical())) *
                    std::pow(1.0 - (op.dual ? ep : 0.0),
                             static_cast<double>(op.spec.inputs_physical()));
    double cost = (static_cast<double>(op.spec.inputs_logical()) * a.cost +
                   static_cast<double>(op.spec.inputs_physical()) * b.cost) /
                  (static_cast<double>(op.spec.outputs()) * accept);
    out.eps = eps_out;
    out.cost = cost;
    out.accept = accept;
    return true;
}

std::string op_serial(const Op& op, const std::string& a, const std::string& b) {
    switch (op.spec.kind) {
        case ProtocolKind::BK: return "BK(" + a + ")";
        case ProtocolKind::MEK: return "MEK(" + a + ")";
        case ProtocolKind::BH: return "BH[" + std::to_string(op.spec.k) + "](" + a + ")";
        case ProtocolKind::H1: return "H1[" + std::to_string(op.spec.k) + "](" + a + "," + b + ")";
        case ProtocolKind::ML:
            return "ML[" + std::to_string(op.spec.t) + "][" + std::to_string(op.spec.k + 4) + "](" +
                   a + "," + b + ")";
        default: return a;
    }
}

class Search {
public:
    explicit Search(const SearchOptions& opts) : opts_(opts), ops_(build_ops(opts)) {}

    ParetoSet run() {
        if (!(opts_.eps0 > 0) || opts_.eps0 > 0.05)
            throw std::domain_error("pareto_search: eps0 outside (0, 0.05]");
        ParetoEntry source{opts_.eps0, 1.0, 1.0, 0, ProtocolExpr::source(), "eps0"};
        front_ = {source};
        for (int round = 0; round < opts_.max_rounds; ++round) iterate();
        ParetoSet set;
        set.eps0 = opts_.eps0;
        set.entries = front_;
        return set;
    }

private:
    SearchOptions opts_;
    std::vector<Op> ops_;
    std::vector<ParetoEntry> front_;

    std::string cand_serial(const Cand& c) const {
        if (c.op < 0) return front_[static_cast<size_t>(c.self)].serialized;
        const Op& op = ops_[static_cast<size_t>(c.op)];
        return op_serial(op, front_[static_cast<size_t>(c.pa)].serialized,
                         c.pb >= 0 ? front_[static_cast<size_t>(c.pb)].serialized : std::string());
    }

    // Total order: eps, cost, then shorter/lexicographically smaller
    // serialization, then construction indices.
    bool cand_less(const Cand& x, const Cand& y) const {
        if (x.eps != y.eps) return x.eps < y.eps;
        if (x.cost != y.cost) return x.cost < y.cost;
        std::string sx = cand_serial(x), sy = cand_serial(y);
        if (sx.size() != sy.size()) return sx.size() < sy.size();
        if (sx != sy) return sx < sy;
        if (x.op != y.op) return x.op < y.op;
        if (x.pa != y.pa) return x.pa < y.pa;
        if (x.pb != y.pb) return x.pb < y.pb;
        return x.self < y.self;
    }

    // Keep the non-dominated candidates under relative tolerance; input is
    // consumed. The sweep depends only on the candidate set, never on
    // generation order; chunk boundaries are fixed, so pre-pruning per chunk
    // stays deterministic for any worker count.
    std::vector<Cand> sweep(std::vector<Cand> cands) const {
        std::sort(cands.begin(), cands.end(), [&](const Cand& x, const Cand& y) { return cand_less(x, y); });
        std::vector<Cand> kept;
        double min_cost = std::numeric_limits<double>::infinity();
        for (const Cand& c : cands) {
            if (c.cost * (1.0 + opts_.dominance_tol) < min_cost) {
                kept.push_back(c);
                min_cost = c.cost;
            }
        }
        return kept;
    }

    void iterate() {
        const int64_t fsize = static_cast<int64_t>(front_.size());
        std::vector<int32_t> single_ops, dual_ops;
        for (size_t i = 0; i < ops_.size(); ++i)
            (ops_[i].dual ? dual_ops : single_ops).push_back(static_cast<int32_t>(i));

        const int64_t n_single = static_cast<int64_t>(single_ops.size()) * fsize;
        const int64_t n_dual = static_cast<int64_t>(dual_ops.size()) * fsize * fsize;
        const int64_t total = n_single + n_dual;

        // Fixed-size chunks keep the chunk-level pruning independent of the
        // worker count.
        const int64_t chunk = 65536;
        const int64_t n_chunks = (total + chunk - 1) / chunk;
        std::vector<std::vector<Cand>> chunk_out(static_cast<size_t>(n_chunks));

        auto eval_range = [&](int64_t lo, int64_t hi, std::vector<Cand>& out) {
            std::vector<Cand> local;
            for (int64_t idx = lo; idx < hi; ++idx) {
                int32_t op_id, pa, pb;
                if (idx < n_single) {
                    op_id = single_ops[static_cast<size_t>(idx / fsize)];
                    pa = static_cast<int32_t>(idx % fsize);
                    pb = -1;
                } else {
                    int64_t r = idx - n_single;
                    op_id = dual_ops[static_cast<size_t>(r / (fsize * fsize))];
                    int64_t rem = r % (fsize * fsize);
                    pa = static_cast<int32_t>(rem / fsize);
                    pb = static_cast<int32_t>(rem % fsize);
                }
                const ParetoEntry& a = front_[static_cast<size_t>(pa)];
                const ParetoEntry& b = front_[static_cast<size_t>(pb >= 0 ? pb : pa)];
                int depth = 1 + std::max(a.depth, pb >= 0 ? b.depth : 0);
                if (depth > opts_.max_rounds) continue;
                Cand c;
                c.op = op_id;
                c.pa = pa;
                c.pb = pb;
                c.depth = depth;
                apply_op(ops_[static_cast<size_t>(op_id)], a, pb >= 0 ? b : a, c);
                if (!std::isfinite(c.eps) || !std::isfinite(c.cost)) continue;
                if (c.eps < opts_.eps_floor) continue;
                local.push_back(c);
            }
            out = sweep(std::move(local));
        };

        if (opts_.threads <= 1) {
            for (int64_t ci = 0; ci < n_chunks; ++ci)
                eval_range(ci * chunk, std::min(total, (ci + 1) * chunk),
                           chunk_out[static_cast<size_t>(ci)]);
        } else {
            std::atomic<int64_t> next{0};
            std::vector<std::thread> pool;
            for (int w = 0; w < opts_.threads; ++w) {
                pool.emplace_back([&] {
                    for (;;) {
                        int64_t ci = next.fetch_add(1);
                        if (ci >= n_chunks) break;
                        eval_range(ci * chunk, std::min(total, (ci + 1) * chunk),
                                   chunk_out[static_cast<size_t>(ci)]);
                    }
                });
            }
            for (auto& th : pool) th.join();
        }

        std::vector<Cand> all;
        for (size_t i = 0; i < front_.size(); ++i) {
            Cand c;
            c.op = -1;
            c.self = static_cast<int32_t>(i);
            c.eps = front_[i].eps_out;
            c.cost = front_[i].cost;
            c.accept = front_[i].accept;
            c.depth = front_[i].depth;
            all.push_back(c);
        }
        for (auto& part : chunk_out)
            all.insert(all.end(), part.begin(), part.end());

        std::vector<Cand> kept = sweep(std::move(all));
        cap_by_density(kept);

        std::vector<ParetoEntry> next_front;
        next_front.reserve(kept.size());
        for (const Cand& c : kept) {
            if (c.op < 0) {
                next_front.push_back(front_[static_cast<size_t>(c.self)]);
                continue;
            }
            const Op& op = ops_[static_cast<size_t>(c.op)];
            const ParetoEntry& a = front_[static_cast<size_t>(c.pa)];
            ExprPtr expr;
            switch (op.spec.kind) {
                case ProtocolKind::BK: expr = ProtocolExpr::bk(a.expr); break;
                case ProtocolKind::MEK: expr = ProtocolExpr::mek(a.expr); break;
                case ProtocolKind::BH: expr = ProtocolExpr::bh(op.spec.k, a.expr); break;
                case ProtocolKind::H1:
                    expr = ProtocolExpr::h1(op.spec.k, a.expr,
                                            front_[static_cast<size_t>(c.pb)].expr);
                    break;
                case ProtocolKind::ML:
                    expr = ProtocolExpr::ml(op.spec.t, op.spec.k, a.expr,
                                            front_[static_cast<size_t>(c.pb)].expr);
                    break;
                default: break;
            }
            ParetoEntry e;
            e.eps_out = c.eps;
            e.cost = c.cost;
            e.accept = c.accept;
            e.depth = c.depth;
            e.expr = std::move(expr);
            e.serialized = cand_serial(c);
            next_front.push_back(std::move(e));
        }
        front_ = std::move(next_front);
    }

    // Over-cap fronts shed interior entries with the least log-cost gap to
    // their lower-eps neighbor; queries between the survivors degrade by at
    // most that gap.
    void cap_by_density(std::vector<Cand>& kept) const {
        while (static_cast<int>(kept.size()) > opts_.max_entries) {
            size_t drop = 0;
            double best_gap = std::numeric_limits<double>::infinity();
            for (size_t i = 1; i + 1 < kept.size(); ++i) {
                double gap = std::log(kept[i - 1].cost) - std::log(kept[i].cost);
                if (gap <= best_gap) {
                    best_gap = gap;
                    drop = i;
                }
            }
            if (drop == 0) break;
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(drop));
        }
    }
};

}  // namespace

ParetoSet pareto_search(const SearchOptions& opts) { return Search(opts).run(); }

const ParetoEntry* try_query(const ParetoSet& set, double target_eps) {
    const ParetoEntry* best = nullptr;
    for (const ParetoEntry& e : set.entries) {
        if (e.eps_out <= target_eps) best = &e;  // entries sorted by eps asc, cost desc
    }
    return best;
}

const ParetoEntry& query(const ParetoSet& set, double target_eps) {
    const ParetoEntry* e = try_query(set, target_eps);
    if (!e) throw std::runtime_error("query: target not reachable within bounds");
    return *e;
}

__int128 total_input_count(int r, int k) {
    if (r < 1 || r > 5) throw std::invalid_argument("total_input_count: r must be in [1,5]");
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("total_input_count: k must be even >= 2");
    int big = r * (r + 1) / 2;
    auto pow128 = [](int64_t base, int e) {
        __int128 v = 1;
        for (int i = 0; i < e; ++i) v *= base;
        return v;
    };
    // [1 + (k+4)/k + sum_q 2^(q-1) ((k+4)/k)^q] * k^(r(r+1)/2), cleared of
    // denominators: every term is an integer because big >= r.
    __int128 total = pow128(k, big) + pow128(k, big - 1) * (k + 4);
    for (int q = 1; q <= r; ++q)
        total += pow128(2, q - 1) * pow128(k + 4, q) * pow128(k, big - q);
    return total;
}

std::string int128_to_string(__int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (u) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    return neg ? "-" + s : s;
}

FitResult fit_cost_curve(const ParetoSet& set, int min_exp, int max_exp) {
    if (min_exp > max_exp) throw std::invalid_argument("fit_cost_curve: empty exponent range");
    std::vector<double> xs, ys, gxs, gys;
    for (int e = min_exp; e <= max_exp; ++e) {
        const ParetoEntry* entry = try_query(set, std::pow(10.0, -e));
        if (!entry) continue;
        double x = -std::log10(entry->eps_out);
        xs.push_back(x);
        ys.push_back(entry->cost);
        if (e >= 10) {
            gxs.push_back(std::log(std::log(set.eps0 / entry->eps_out)));
            gys.push_back(std::log(entry->cost));
        }
    }
    if (xs.size() < 2) throw std::invalid_argument("fit_cost_curve: insufficient points");

    auto lsq_slope = [](const std::vector<double>& x, const std::vector<double>& y, double* icpt) {
        double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            sx += x[i];
            sy += y[i];
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        if (icpt) *icpt = (sy - slope * sx) / n;
        return slope;
    };

    FitResult fit;
    fit.points = static_cast<int>(xs.size());
    fit.slope = lsq_slope(xs, ys, &fit.intercept);
    if (gxs.size() >= 2) fit.gamma = lsq_slope(gxs, gys, nullptr);
    return fit;
}

std::vector<double> asymptotic_ratio_check(int64_t k, double eps, int r_max) {
    if (k < 1000 || k % 2 != 0)
        throw std::invalid_argument("asymptotic_ratio_check: k must be even and >= 1000");
    if (!(eps > 0) || eps > 1e-8)
        throw std::invalid_argument("asymptotic_ratio_check: eps must be in (0, 1e-8]");
    if (r_max < 1 || r_max > 4) throw std::invalid_argument("asymptotic_ratio_check: r_max in [1,4]");

    std::vector<double> out;
    double ratio = static_cast<double>(k + 4) / static_cast<double>(k);
    double c = 1.0 + 2.0 * ratio;  // one-level block: k logical + 2(k+4) physical per k outputs
    double eps_cur = level1_error_poly(static_cast<int>(k)).eval(eps, eps);
    out.push_back(c);
    for (int q = 2; q <= r_max; ++q) {
        c += std::pow(2.0, q - 1) * std::pow(ratio, q);
        eps_cur = multilevel_error_poly(static_cast<int>(k), q).eval(eps_cur, eps);
        out.push_back(c);
    }
    return out;
}

std::string pareto_csv(const ParetoSet& set, int min_exp, int max_exp) {
    if (min_exp > max_exp) throw std::invalid_argument("pareto_csv: empty exponent range");
    std::string out = "target_exponent,achieved_neg_log10_eps,cost,protocol\n";
    for (int e = min_exp; e <= max_exp; ++e) {
        const ParetoEntry* entry = try_query(set, std::pow(10.0, -e));
        if (!entry) continue;
        out += std::to_string(e) + "," + format_double(-std::log10(entry->eps_out)) + "," +
               format_double(entry->cost) + "," + entry->serialized + "\n";
    }
    return out;
}

std::string plot_csv(const ParetoSet& set, const FitResult& fit, int min_exp, int max_exp) {
    if (min_exp > max_exp) throw std::invalid_argument("plot_csv: empty exponent range");
    std::string out = "# fit: cost = " + format_double(fit.slope) + " * log10(1/eps_out) + (" +
                      format_double(fit.intercept) + "); gamma = " + format_double(fit.gamma) + "\n";
    out += "neg_log10_eps,cost\n";
    for (int e = min_exp; e <= max_exp; ++e) {
        const ParetoEntry* entry = try_query(set, std::pow(10.0, -e));
        if (!entry) continue;
        out += format_double(-std::log10(entry->eps_out)) + "," + format_double(entry->cost) + "\n";
    }
    return out;
}

}  // namespace msd
