#pragma once

// Empirical experiments: the moment sweep over odd square-free d, the
// Poisson-summation identity check (sum over odd d of (d|n) Phi(d/Z) against
// the Gauss-sum side), and the Cauchy-Schwarz lower-bound check.

#include <optional>
#include <string>
#include <vector>

#include "qdl/characters.hpp"
#include "qdl/smooth.hpp"

namespace qdl {

struct MomentRecord {
    i64 X = 0;
    int k = 0;                // moment order, 1..4
    double sharp_sum = 0.0;   // sum* over odd square-free d <= X of L(1/2)^k
    double smooth_sum = 0.0;  // same with Phi(d/X) weight
    double predicted = 0.0;   // a4/(302400 pi^2) X log^10 X for k = 4; 0 otherwise
    double ratio = 0.0;       // sharp_sum / predicted for k = 4; 0 otherwise
    i64 warnings = 0;         // count of clamped tiny-negative 2A(d)
};

struct SweepConfig {
    i64 X_max = 10000;
    bool dyadic = true;        // emit records at X_max, X_max/2, ... (>= 16)
    BumpProfile profile{};     // weight for smooth_sum
    double afe_tol = 1e-7;     // certified AFE tail target per d
    int threads = 4;
    double oracle_sample = 0.01;  // fraction of d <= 10^4 cross-checked
    double oracle_rtol = 1e-4;
    i64 X_cap = 200000;        // guard: each L-value costs O(d)
};

struct SweepResult {
    std::vector<MomentRecord> records;  // sorted by (k, X)
    i64 oracle_checked = 0;
    double oracle_worst = 0.0;  // worst relative AFE residual among samples
    i64 warnings = 0;
};

// Deterministic block-ordered sweep; throws on config errors, on AFE
// truncation-cap overflow, and on 2A(d) < -1e-6 (accuracy fault).
SweepResult sweep_moments(const SweepConfig& cfg);

// Poisson-summation residual:
//   | sum_{d odd > 0} (d|n) Phi(d/Z)
//     - (Z/2n)(2|n) sum_{|k| <= Kmax} (-1)^k G_k(n) Phi^(kZ/2n) |.
// Throws ConvergenceError if the derivative-norm decay bound admits a tail
// above 1e-12 beyond Kmax.
double poisson_check(i64 n, double Z, const BumpProfile& profile, int Kmax);

struct CauchyCheck {
    double lhs = 0.0;  // sum* L^4 Phi(d/X)
    double rhs = 0.0;  // (sum* A_U L^2 Phi)^2 / (sum* A_U^2 Phi)
};

// Throws std::domain_error when the denominator sum is empty/zero.
CauchyCheck cauchy_lower_check(i64 X, double U, const BumpProfile& profile);

// Bit-stable emitters (17 significant digits, shortest-round-trip safe).
// CSV columns: X,k,sharp_sum,smooth_sum,predicted,ratio,warnings.
std::string records_to_csv(const std::vector<MomentRecord>& records);
std::string records_to_json(const std::vector<MomentRecord>& records,
                            const SweepConfig& cfg);
std::vector<MomentRecord> records_from_json(const std::string& text);

enum class EmitFormat { csv, json };
void emit_results(const std::vector<MomentRecord>& records, const SweepConfig& cfg,
                  EmitFormat format, const std::string& path);

}  // namespace qdl
