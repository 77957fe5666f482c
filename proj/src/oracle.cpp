#include "msd/oracle.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "msd/error_models.hpp"

namespace msd {

namespace {

inline int parity64(uint64_t v) { return std::popcount(v) & 1; }

// Grid structure flattened to single-word masks. Valid whenever every level's
// entity space fits in 64 bits, which covers everything the enumeration
// budget allows.
struct FastBlock {
    uint64_t c1 = 0, c2 = 0;
    std::vector<std::pair<uint64_t, int>> logical;  // mask, output bit
};

struct FastGrid {
    int t = 0;
    std::vector<std::vector<FastBlock>> levels;

    explicit FastGrid(const GridCode& grid) : t(grid.t) {
        if (grid.site_count > 64 || grid.encoded_count > 64)
            throw std::invalid_argument("oracle: grid too large for enumeration");
        for (const GridLevel& level : grid.levels) {
            if (level.entity_count > 64)
                throw std::invalid_argument("oracle: grid too large for enumeration");
            std::vector<FastBlock> fb;
            for (const GridBlock& b : level.blocks) {
                FastBlock f;
                f.c1 = b.check1.word0();
                f.c2 = b.check2.word0();
                for (size_t j = 0; j < b.logical_masks.size(); ++j)
                    f.logical.emplace_back(b.logical_masks[j].word0(), b.out_entities[j]);
                fb.push_back(std::move(f));
            }
            levels.push_back(std::move(fb));
        }
    }

    // Returns (detected, surviving logical-Y bits).
    std::pair<bool, uint64_t> syndrome(uint64_t residual) const {
        uint64_t cur = residual;
        for (const auto& level : levels) {
            uint64_t next = 0;
            for (const FastBlock& b : level) {
                if (parity64(cur & b.c1) || parity64(cur & b.c2)) return {true, 0};
                for (const auto& [mask, bit] : b.logical)
                    next |= static_cast<uint64_t>(parity64(cur & mask)) << bit;
            }
            cur = next;
        }
        return {false, cur};
    }
};

struct Tables {
    WeightPoly accept;
    std::vector<WeightPoly> marginal;
    WeightPoly joint_correct;

    Tables(int kb, int gb)
        : accept(kb, gb), marginal(static_cast<size_t>(kb), WeightPoly(kb, gb)), joint_correct(kb, gb) {}

    void merge(const Tables& o) {
        accept.merge(o.accept);
        for (size_t i = 0; i < marginal.size(); ++i) marginal[i].merge(o.marginal[i]);
        joint_correct.merge(o.joint_correct);
    }
};

void record(Tables& tbl, const FastGrid& fg, uint64_t logical, uint64_t first, uint64_t second,
            int wl, int wp) {
    if ((std::popcount(logical) + std::popcount(first)) & 1) return;
    auto [detected, syn] = fg.syndrome(first ^ second);
    if (detected) return;
    tbl.accept.add(wl, wp);
    uint64_t out = logical ^ syn;
    if (out == 0) {
        tbl.joint_correct.add(wl, wp);
    } else {
        while (out) {
            int i = std::countr_zero(out);
            tbl.marginal[static_cast<size_t>(i)].add(wl, wp);
            out &= out - 1;
        }
    }
}

double binomial_sum(int n, int max_w) {
    double total = 0, c = 1;
    for (int w = 0; w <= max_w; ++w) {
        total += c;
        c = c * (n - w) / (w + 1);
    }
    return total;
}

// Combinations of `weight` error bits drawn from [start, bits); position p
// maps to a logical bit (p < kb) or to gate (p - kb): even offsets are
// first-gate errors, odd offsets second-gate.
void enumerate_combos(const FastGrid& fg, Tables& tbl, int kb, int bits, int start, int weight,
                      uint64_t logical, uint64_t first, uint64_t second, int wl, int wp) {
    if (weight == 0) {
        record(tbl, fg, logical, first, second, wl, wp);
        return;
    }
    for (int p = start; p <= bits - weight; ++p) {
        uint64_t l = logical, a = first, b = second;
        int nwl = wl, nwp = wp;
        if (p < kb) {
            l |= uint64_t(1) << p;
            ++nwl;
        } else {
            int g = p - kb;
            if (g & 1)
                b |= uint64_t(1) << (g >> 1);
            else
                a |= uint64_t(1) << (g >> 1);
            ++nwp;
        }
        enumerate_combos(fg, tbl, kb, bits, p + 1, weight - 1, l, a, b, nwl, nwp);
    }
}

}  // namespace

ClassifyResult classify_config(const GridCode& grid, const ErrorConfig& cfg) {
    if (grid.t > 2)
        throw std::invalid_argument(
            "classify_config: levels above 2 need repeated Hadamard measurements (unsupported)");
    if (cfg.logical_bits.size() != grid.encoded_count ||
        cfg.first_gate_bits.size() != grid.site_count ||
        cfg.second_gate_bits.size() != grid.site_count)
        throw std::invalid_argument("classify_config: configuration lengths do not match grid");

    int flag = (cfg.logical_bits.popcount() + cfg.first_gate_bits.popcount()) & 1;
    if (flag) return {false, Bits()};

    Bits residual = cfg.first_gate_bits ^ cfg.second_gate_bits;
    HierarchicalSyndrome syn = hierarchical_syndrome(grid, residual);
    if (syn.detected) return {false, Bits()};
    return {true, cfg.logical_bits ^ syn.logical_y_bits};
}

WeightPoly::WeightPoly(int logical_bits, int gate_bits)
    : lb_(logical_bits), gb_(gate_bits),
      n_(static_cast<size_t>(logical_bits + 1) * (gate_bits + 1), 0) {}

void WeightPoly::add(int wl, int wp, int64_t count) {
    n_[static_cast<size_t>(wl) * (gb_ + 1) + wp] += count;
}

void WeightPoly::merge(const WeightPoly& o) {
    if (o.lb_ != lb_ || o.gb_ != gb_) throw std::invalid_argument("WeightPoly::merge: shape mismatch");
    for (size_t i = 0; i < n_.size(); ++i) n_[i] += o.n_[i];
}

int64_t WeightPoly::count_at(int wl, int wp) const {
    if (wl < 0 || wl > lb_ || wp < 0 || wp > gb_) return 0;
    return n_[static_cast<size_t>(wl) * (gb_ + 1) + wp];
}

int64_t WeightPoly::total_count() const {
    int64_t s = 0;
    for (int64_t v : n_) s += v;
    return s;
}

double WeightPoly::eval(double el, double ep) const {
    std::vector<double> pl(static_cast<size_t>(lb_) + 1), ql(static_cast<size_t>(lb_) + 1);
    std::vector<double> pp(static_cast<size_t>(gb_) + 1), qp(static_cast<size_t>(gb_) + 1);
    pl[0] = 1;
    for (int a = 1; a <= lb_; ++a) pl[static_cast<size_t>(a)] = pl[static_cast<size_t>(a) - 1] * el;
    ql[0] = 1;
    for (int a = 1; a <= lb_; ++a) ql[static_cast<size_t>(a)] = ql[static_cast<size_t>(a) - 1] * (1 - el);
    pp[0] = 1;
    for (int b = 1; b <= gb_; ++b) pp[static_cast<size_t>(b)] = pp[static_cast<size_t>(b) - 1] * ep;
    qp[0] = 1;
    for (int b = 1; b <= gb_; ++b) qp[static_cast<size_t>(b)] = qp[static_cast<size_t>(b) - 1] * (1 - ep);

    double sum = 0;
    for (int a = 0; a <= lb_; ++a) {
        for (int b = 0; b <= gb_; ++b) {
            int64_t c = n_[static_cast<size_t>(a) * (gb_ + 1) + b];
            if (c)
                sum += static_cast<double>(c) * pl[static_cast<size_t>(a)] *
                       ql[static_cast<size_t>(lb_ - a)] * pp[static_cast<size_t>(b)] *
                       qp[static_cast<size_t>(gb_ - b)];
        }
    }
    return sum;
}

namespace {

__int128 binom128(int n, int r) {
    if (r < 0 || r > n) return 0;
    __int128 v = 1;
    for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
    return v;
}

}  // namespace

int64_t WeightPoly::coefficient(int i, int j) const {
    // coeff of el^i ep^j in sum N[a][b] el^a (1-el)^(L-a) ep^b (1-ep)^(G-b)
    __int128 acc = 0;
    for (int a = 0; a <= std::min(i, lb_); ++a) {
        for (int b = 0; b <= std::min(j, gb_); ++b) {
            int64_t c = n_[static_cast<size_t>(a) * (gb_ + 1) + b];
            if (!c) continue;
            __int128 term = static_cast<__int128>(c) * binom128(lb_ - a, i - a) * binom128(gb_ - b, j - b);
            if ((i - a) & 1) term = -term;
            if ((j - b) & 1) term = -term;
            acc += term;
        }
    }
    if (acc > INT64_MAX || acc < INT64_MIN)
        throw std::overflow_error("WeightPoly::coefficient: overflow");
    return static_cast<int64_t>(acc);
}

ErrorPoly2 WeightPoly::to_error_poly(int max_total_degree) const {
    ErrorPoly2 p;
    for (int i = 0; i <= std::min(max_total_degree, lb_ + gb_); ++i)
        for (int j = 0; i + j <= max_total_degree && j <= gb_; ++j)
            if (i <= lb_ + gb_) {
                int64_t c = coefficient(i, j);
                if (c) p.set_term(i, j, static_cast<double>(c));
            }
    return p;
}

double OracleResult::tail_bound(double eps_max) const {
    if (!truncation_weight) return 0.0;
    double bound = 0;
    double c = 1;
    double epow = 1;
    for (int w = 0; w <= total_bits; ++w) {
        if (w > *truncation_weight) bound += c * epow;
        c = c * (total_bits - w) / (w + 1);
        epow *= eps_max;
    }
    return bound;
}

OracleResult enumerate_exact(const GridCode& grid) {
    if (grid.t > 2) throw std::invalid_argument("enumerate_exact: t must be <= 2");
    const int kb = grid.encoded_count;
    const int s = grid.site_count;
    const int bits = kb + 2 * s;
    if (bits > 26)
        throw std::invalid_argument(
            "enumerate_exact: more than 26 error bits; use enumerate_truncated");

    FastGrid fg(grid);
    Tables tbl(kb, 2 * s);

    const uint64_t lmax = uint64_t(1) << kb;
    const uint64_t gmax = uint64_t(1) << s;
    for (uint64_t l = 0; l < lmax; ++l) {
        int wl = std::popcount(l);
        for (uint64_t a = 0; a < gmax; ++a) {
            if ((wl + std::popcount(a)) & 1) continue;  // Hadamard flag rejects all of these
            int wa = std::popcount(a);
            for (uint64_t b = 0; b < gmax; ++b)
                record(tbl, fg, l, a, b, wl, wa + std::popcount(b));
        }
    }

    OracleResult res;
    res.t = grid.t;
    res.dims = grid.dims;
    res.k_encoded = kb;
    res.sites = s;
    res.total_bits = bits;
    res.truncation_weight = std::nullopt;
    res.accept_prob = std::move(tbl.accept);
    res.marginal_error = std::move(tbl.marginal);
    res.joint_all_correct = std::move(tbl.joint_correct);
    return res;
}

OracleResult enumerate_truncated(const GridCode& grid, int max_weight, int threads,
                                 int64_t budget) {
    if (grid.t > 2) throw std::invalid_argument("enumerate_truncated: t must be <= 2");
    const int kb = grid.encoded_count;
    const int s = grid.site_count;
    const int bits = kb + 2 * s;
    if (max_weight < 0 || max_weight > bits)
        throw std::invalid_argument("enumerate_truncated: bad max_weight");
    if (binomial_sum(bits, max_weight) > static_cast<double>(budget))
        throw std::invalid_argument("enumerate_truncated: enumeration budget exceeded");

    FastGrid fg(grid);

    // Tasks: (weight, first error-bit position). Partial tables merge by
    // integer addition, so the result is independent of sharding.
    struct Task {
        int w, p;
    };
    std::vector<Task> tasks;
    for (int w = 1; w <= max_weight; ++w)
        for (int p = 0; p <= bits - w; ++p) tasks.push_back({w, p});

    Tables tbl(kb, 2 * s);
    record(tbl, fg, 0, 0, 0, 0, 0);  // weight-0 configuration

    auto run_task = [&](const Task& task, Tables& out) {
        uint64_t l = 0, a = 0, b = 0;
        int wl = 0, wp = 0;
        if (task.p < kb) {
            l = uint64_t(1) << task.p;
            wl = 1;
        } else {
            int g = task.p - kb;
            if (g & 1)
                b = uint64_t(1) << (g >> 1);
            else
                a = uint64_t(1) << (g >> 1);
            wp = 1;
        }
        enumerate_combos(fg, out, kb, bits, task.p + 1, task.w - 1, l, a, b, wl, wp);
    };

    if (threads <= 1) {
        for (const Task& task : tasks) run_task(task, tbl);
    } else {
        std::vector<Tables> partial(static_cast<size_t>(threads), Tables(kb, 2 * s));
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) break;
                    run_task(tasks[i], partial[static_cast<size_t>(w)]);
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const Tables& part : partial) tbl.merge(part);
    }

    OracleResult res;
    res.t = grid.t;
    res.dims = grid.dims;
    res.k_encoded = kb;
    res.sites = s;
    res.total_bits = bits;
    res.truncation_weight = max_weight;
    res.accept_prob = std::move(tbl.accept);
    res.marginal_error = std::move(tbl.marginal);
    res.joint_all_correct = std::move(tbl.joint_correct);
    return res;
}

double conditional_error(const OracleResult& result, double eps_l, double eps_p) {
    double accept = result.accept_prob.eval(eps_l, eps_p);
    if (accept <= 0) throw std::domain_error("conditional_error: acceptance probability is zero");
    return result.marginal_error.at(0).eval(eps_l, eps_p) / accept;
}

ComparisonReport compare_with_closed_form(const OracleResult& result) {
    ComparisonReport report;
    report.t = result.t;

    struct Probe {
        int i, j;
        bool required;
    };
    std::vector<Probe> probes;
    ErrorPoly2 closed;
    if (result.t == 1) {
        report.k = result.dims.at(0) - 4;
        closed = level1_error_poly(report.k);
        probes = {{2, 0, true}, {0, 2, true}, {1, 2, true},
                  {0, 3, false}, {1, 3, false}, {4, 0, false}};
    } else if (result.t == 2) {
        if (result.dims.at(0) != result.dims.at(1))
            throw std::invalid_argument(
                "compare_with_closed_form: two-level comparison needs a square grid");
        report.k = result.dims.at(0) - 4;
        closed = level2_error_poly(report.k);
        probes = {{2, 0, true}, {1, 2, true}, {0, 4, true},
                  {0, 2, false}, {1, 1, false}, {0, 3, false}};
    } else {
        throw std::invalid_argument("compare_with_closed_form: t must be 1 or 2");
    }

    int degree_cap = result.truncation_weight ? *result.truncation_weight
                                              : result.total_bits;
    for (const Probe& probe : probes) {
        if (probe.i + probe.j > degree_cap) continue;
        CoeffCheck check;
        check.i = probe.i;
        check.j = probe.j;
        check.required = probe.required;
        check.oracle_value = result.marginal_error.at(0).count_at(probe.i, probe.j);
        check.closed_form = closed.coefficient(probe.i, probe.j);
        check.match = check.oracle_value == static_cast<int64_t>(std::llround(check.closed_form));
        if (probe.required && !check.match) report.all_required_match = false;
        report.checks.push_back(check);
    }
    return report;
}

}  // namespace msd
