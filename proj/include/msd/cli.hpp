#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msd {

enum class Command { VerifyCodes, Oracle, Search, Size, Fit };
enum class Emit { Text, Json, Csv };

// One reproducible run. All computations are deterministic; there is no seed.
struct RunConfig {
    Command command = Command::Search;
    Emit emit = Emit::Text;
    std::string output_path;  // empty: write to the output stream

    double eps0 = 0.01;

    // verify-codes
    int n_lo = 6, n_hi = 24;
    bool verify_grids = true;

    // oracle
    std::vector<int> dims = {6};
    int max_weight = 4;
    double eps_l = 1e-3, eps_p = 1e-3;

    // search / fit
    double target = 0;  // 0: emit the whole curve
    int max_rounds = 5;
    int max_k = 20;
    int bh_max_k = 40;
    std::string families;  // comma list of bk,mek,bh,h1,ml; empty: all
    int min_exp = 5, max_exp = 40;
    bool full_prior_polys = false;

    // size
    int rounds = 2;
    int size_k = 2;

    int threads = 1;
};

// Exit status: 0 success and all checks passed, 1 check failure,
// 2 usage error. Artifacts are written atomically.
int run_config(const RunConfig& cfg, std::ostream& out, std::ostream& err);

void write_atomic(const std::string& path, const std::string& content);

}  // namespace msd
