#include "qdl/moments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "qdl/euler.hpp"
#include "qdl/gauss.hpp"

namespace qdl {

namespace {

constexpr double PI = 3.14159265358979323846264338327950288;

double a4_cached() {
    static double a4 = a4_simplified(100000).value.real();
    return a4;
}

// Shared tau(n)/sqrt(n) and log(n) streams over odd n <= N (index (n-1)/2).
struct AfeStream {
    i64 N = 0;
    std::vector<double> w;    // tau(n)/sqrt(n)
    std::vector<double> lnn;  // log n
    std::vector<i64> spf_d;   // smallest prime factors up to the d-range

    AfeStream(i64 n_max, i64 d_max) : N(n_max) {
        MultTables tab(N, std::size_t(2) << 30);
        std::size_t m = static_cast<std::size_t>((N + 1) / 2);
        w.resize(m);
        lnn.resize(m);
        for (i64 n = 1; n <= N; n += 2) {
            std::size_t i = static_cast<std::size_t>((n - 1) / 2);
            w[i] = static_cast<double>(tab.tau(n)) / std::sqrt(static_cast<double>(n));
            lnn[i] = std::log(static_cast<double>(n));
        }
        spf_d.assign(d_max + 1, 0);
        for (i64 i = 2; i <= d_max; ++i) {
            if (spf_d[i]) continue;
            for (i64 j = i; j <= d_max; j += i)
                if (!spf_d[j]) spf_d[j] = i;
        }
    }

    // (r|d) for r in [0, d): completely multiplicative sieve over the period.
    void jacobi_row(i64 d, std::vector<std::int8_t>& T) const {
        T.assign(static_cast<std::size_t>(d), 0);
        if (d == 1) {
            T[0] = 1;  // (n|1) = 1 for all n
            return;
        }
        T[1] = 1;
        for (i64 r = 2; r < d; ++r) {
            if (spf_d[r] == r) {
                T[r] = static_cast<std::int8_t>(kronecker(r, d));
            } else {
                T[r] = static_cast<std::int8_t>(T[spf_d[r]] * T[r / spf_d[r]]);
            }
        }
    }

    // 2 A(d) = A_{8d}(1/2; 8d) truncated at N_d terms.
    // chi_{8d}(n) = (2|n)(d|n) for odd n, with (d|n) = eps (n mod d | d) by
    // reciprocity; the period table T makes the n-loop division-free.
    double two_A(i64 d, i64 N_d, std::vector<std::int8_t>& T) const {
        const OmegaTable& omega = OmegaTable::instance();
        const double log_lam = std::log(PI / (8.0 * static_cast<double>(d)));
        const double u_cut = omega.log_hi();
        jacobi_row(d, T);
        const bool d1mod4 = (d & 3) == 1;
        double sum = 0.0;
        i64 r = 1 % d;  // n mod d; for d >= 3 a single subtraction keeps r < d
        for (i64 n = 1; n <= N_d; n += 2) {
            std::size_t i = static_cast<std::size_t>((n - 1) / 2);
            double u = lnn[i] + log_lam;
            if (u >= u_cut) break;
            int c = (d == 1) ? 1 : T[r];
            r += 2;
            if (r >= d) r -= d;
            if (r >= d) r -= d;
            if (c) {
                int two = ((n & 7) == 1 || (n & 7) == 7) ? 1 : -1;  // (2|n)
                if (!d1mod4 && (n & 3) == 3) c = -c;                // reciprocity sign
                sum += static_cast<double>(c * two) * w[i] * omega.eval_log(u);
            }
        }
        return 2.0 * sum;
    }
};

i64 afe_truncation(double t, double tol) {
    i64 lo = 16, hi = 16;
    while (afe_tail_bound(t, static_cast<double>(hi)) >= tol) {
        lo = hi;
        hi *= 2;
        if (hi > (i64(1) << 40)) throw ConvergenceError("sweep: AFE truncation diverges");
    }
    while (lo + 1 < hi) {
        i64 mid = lo + (hi - lo) / 2;
        if (afe_tail_bound(t, static_cast<double>(mid)) < tol) hi = mid;
        else lo = mid;
    }
    return hi;
}

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

SweepResult sweep_moments(const SweepConfig& cfg) {
    if (cfg.X_max < 2) throw std::domain_error("sweep_moments: X_max must be >= 2");
    if (cfg.X_max > cfg.X_cap) throw std::domain_error("sweep_moments: X_max exceeds X_cap");
    if (cfg.threads < 1) throw std::domain_error("sweep_moments: threads must be >= 1");

    // d-range covering the smooth weight's support at the top dyadic level.
    const i64 D = static_cast<i64>(std::ceil(cfg.profile.support_hi() * cfg.X_max)) + 1;
    MultTables tab(D);
    std::vector<i64> ds;  // odd square-free d <= D
    for (i64 d = 1; d <= D; d += 2)
        if (tab.squarefree(d)) ds.push_back(d);

    const i64 N_max = afe_truncation(8.0 * static_cast<double>(D), cfg.afe_tol);
    AfeStream stream(N_max, D);

    // Per-d truncations shrink with d; two_A stops at table cutoff anyway.
    std::vector<double> L2(ds.size());
    const i64 oracle_stride =
        cfg.oracle_sample > 0 ? std::max<i64>(1, static_cast<i64>(1.0 / cfg.oracle_sample)) : 0;

    const std::size_t BLOCK = 512;
    const std::size_t nblocks = (ds.size() + BLOCK - 1) / BLOCK;
    std::atomic<std::size_t> next{0};
    std::atomic<i64> warnings{0}, oracle_checked{0};
    std::atomic<bool> fault{false};
    std::vector<double> oracle_worst_per_block(nblocks, 0.0);
    std::string fault_msg;
    std::mutex fault_mu;

    auto worker = [&] {
        std::vector<std::int8_t> T;  // per-thread period table buffer
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= nblocks || fault.load()) return;
            std::size_t i0 = b * BLOCK, i1 = std::min(ds.size(), i0 + BLOCK);
            double worst = 0.0;
            for (std::size_t i = i0; i < i1; ++i) {
                i64 d = ds[i];
                double t = 8.0 * static_cast<double>(d);
                i64 Nd = afe_truncation(t, cfg.afe_tol);
                double v = stream.two_A(d, std::min(Nd, stream.N), T);
                if (v < 0.0) {
                    if (v < -1e-6) {
                        std::lock_guard<std::mutex> lk(fault_mu);
                        fault_msg = "sweep_moments: 2A(d) < -1e-6 at d = " + std::to_string(d);
                        fault.store(true);
                        return;
                    }
                    v = 0.0;
                    warnings.fetch_add(1);
                }
                L2[i] = v;
                if (oracle_stride && d <= 10000 && (i % oracle_stride) == 0) {
                    QuadChar q(d);
                    double L = lvalue_oracle(cplx(0.5, 0.0), q).real();
                    double ref = L * L;
                    double rel = std::abs(ref - v) / std::max(std::abs(ref), 1e-12);
                    worst = std::max(worst, rel);
                    oracle_checked.fetch_add(1);
                    if (rel > cfg.oracle_rtol) {
                        std::lock_guard<std::mutex> lk(fault_mu);
                        fault_msg = "sweep_moments: oracle mismatch at d = " + std::to_string(d) +
                                    " rel = " + fmt17(rel);
                        fault.store(true);
                        return;
                    }
                }
            }
            oracle_worst_per_block[b] = worst;
        }
    };
    {
        std::vector<std::thread> pool;
        for (int t = 0; t < cfg.threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (fault.load()) throw std::runtime_error(fault_msg);

    SweepResult out;
    out.warnings = warnings.load();
    out.oracle_checked = oracle_checked.load();
    for (double w : oracle_worst_per_block) out.oracle_worst = std::max(out.oracle_worst, w);

    // Dyadic ladder X_max, X_max/2, ... >= 16 (or just X_max).
    std::vector<i64> ladder;
    if (cfg.dyadic) {
        for (i64 x = cfg.X_max; x >= 16; x /= 2) ladder.push_back(x);
        if (ladder.empty()) ladder.push_back(cfg.X_max);
        std::reverse(ladder.begin(), ladder.end());
    } else {
        ladder.push_back(cfg.X_max);
    }

    const double a4 = a4_cached();
    for (int k = 1; k <= 4; ++k) {
        for (i64 X : ladder) {
            MomentRecord r;
            r.X = X;
            r.k = k;
            r.warnings = out.warnings;
            double sharp = 0.0, smooth = 0.0;
            double inv_X = 1.0 / static_cast<double>(X);
            for (std::size_t i = 0; i < ds.size(); ++i) {
                i64 d = ds[i];
                double v = L2[i];
                double Lk;
                switch (k) {
                    case 1: Lk = std::sqrt(v); break;
                    case 2: Lk = v; break;
                    case 3: Lk = v * std::sqrt(v); break;
                    default: Lk = v * v; break;
                }
                if (d <= X) sharp += Lk;
                double w = phi_eval(cfg.profile, static_cast<double>(d) * inv_X);
                if (w > 0.0) smooth += Lk * w;
            }
            r.sharp_sum = sharp;
            r.smooth_sum = smooth;
            if (k == 4) {
                double lx = std::log(static_cast<double>(X));
                r.predicted = a4 / (302400.0 * PI * PI) * static_cast<double>(X) * std::pow(lx, 10);
                r.ratio = (r.predicted > 0.0) ? sharp / r.predicted : 0.0;
            }
            out.records.push_back(r);
        }
    }
    return out;
}

double poisson_check(i64 n, double Z, const BumpProfile& profile, int Kmax) {
    if (n < 1 || (n & 1) == 0) throw std::domain_error("poisson_check: n must be odd positive");
    if (!(Z > 0.0)) throw std::domain_error("poisson_check: Z must be > 0");

    // Tail bound beyond K from |Phi^(y)| <= sqrt(2) Phi_(nu) / (2 pi |y|)^nu
    // and |G_k(n)| <= n:  sum_{|k|>K} (Z/2n) n sqrt2 Phi_nu (n/(pi k Z))^nu.
    auto tail_beyond = [&](i64 K) {
        double best = 1e300;
        for (int nu = 2; nu <= 8; ++nu) {
            double pn = phi_norm(profile, nu);
            double base = static_cast<double>(n) / (PI * Z);
            double tail = Z * std::sqrt(2.0) * pn * std::pow(base, nu) *
                          std::pow(static_cast<double>(K), 1.0 - nu) / (nu - 1.0);
            best = std::min(best, tail);
        }
        return best;
    };
    if (tail_beyond(Kmax) > 1e-12)
        throw ConvergenceError("poisson_check: Kmax insufficient for the decay bound");
    // smallest sufficient cutoff (the bound is monotone in K)
    int Kuse = Kmax;
    {
        int lo = 1, hi = Kmax;
        while (lo < hi) {
            int mid = lo + (hi - lo) / 2;
            if (tail_beyond(mid) <= 1e-12) hi = mid;
            else lo = mid + 1;
        }
        Kuse = lo;
    }

    // LHS over odd positive d in the support of Phi(d/Z).
    double lhs = 0.0;
    i64 dlo = static_cast<i64>(std::floor(profile.support_lo() * Z));
    i64 dhi = static_cast<i64>(std::ceil(profile.support_hi() * Z));
    if (dlo < 1) dlo = 1;
    if ((dlo & 1) == 0) ++dlo;
    for (i64 d = dlo; d <= dhi; d += 2) {
        double w = phi_eval(profile, static_cast<double>(d) / Z);
        if (w != 0.0) lhs += kronecker(d, n) * w;
    }

    // RHS: (Z/2n)(2|n) sum_k (-1)^k G_k(n) Phi^(k Z / 2n).
    double rhs = gauss_closed(0, n).value * fourier_hat(profile, 0.0).value.real();
    for (int k = 1; k <= Kuse; ++k) {
        double y = static_cast<double>(k) * Z / (2.0 * static_cast<double>(n));
        double sign = (k & 1) ? -1.0 : 1.0;
        rhs += sign * (gauss_closed(k, n).value * fourier_hat(profile, y).value.real() +
                       gauss_closed(-k, n).value * fourier_hat(profile, -y).value.real());
    }
    rhs *= Z / (2.0 * static_cast<double>(n)) * kronecker(2, n);

    return std::abs(lhs - rhs);
}

CauchyCheck cauchy_lower_check(i64 X, double U, const BumpProfile& profile) {
    if (X < 1) throw std::domain_error("cauchy_lower_check: X must be >= 1");
    if (!(U > 0.0)) throw std::domain_error("cauchy_lower_check: U must be > 0");

    const double Xd = static_cast<double>(X);
    i64 dlo = static_cast<i64>(std::floor(profile.support_lo() * Xd));
    i64 dhi = static_cast<i64>(std::ceil(profile.support_hi() * Xd));
    if (dlo < 1) dlo = 1;

    MultTables tab(std::max<i64>(dhi, 2));
    CauchyCheck out;
    double num = 0.0, den = 0.0;
    for (i64 d = dlo | 1; d <= dhi; d += 2) {
        if (!tab.squarefree(d)) continue;
        double w = phi_eval(profile, static_cast<double>(d) / Xd);
        if (w == 0.0) continue;
        QuadChar q(d);
        double L2 = afe_A(8.0 * static_cast<double>(d), q, 1e-9).A_value;  // = L(1/2)^2
        double AU = afe_A(U, q, 1e-9).A_value;
        out.lhs += L2 * L2 * w;
        num += AU * L2 * w;
        den += AU * AU * w;
    }
    if (den == 0.0) throw std::domain_error("cauchy_lower_check: empty support (zero denominator)");
    out.rhs = num * num / den;
    return out;
}

// ---------------------------------------------------------------------------
// Emitters
// ---------------------------------------------------------------------------

std::string records_to_csv(const std::vector<MomentRecord>& records) {
    std::string s = "X,k,sharp_sum,smooth_sum,predicted,ratio,warnings\n";
    for (const MomentRecord& r : records) {
        s += std::to_string(r.X) + "," + std::to_string(r.k) + "," + fmt17(r.sharp_sum) + "," +
             fmt17(r.smooth_sum) + ",";
        if (r.k == 4) s += fmt17(r.predicted) + "," + fmt17(r.ratio);
        else s += ",";
        s += "," + std::to_string(r.warnings) + "\n";
    }
    return s;
}

std::string records_to_json(const std::vector<MomentRecord>& records, const SweepConfig& cfg) {
    nlohmann::json j;
    j["config"] = {
        {"X_max", cfg.X_max},
        {"dyadic", cfg.dyadic},
        {"afe_tol", cfg.afe_tol},
        {"threads", cfg.threads},
        {"profile", cfg.profile.kind == ProfileKind::reference ? "reference"
                    : cfg.profile.kind == ProfileKind::plateau_inner ? "plateau-inner"
                                                                     : "plateau-outer"},
        {"Z", cfg.profile.Z},
    };
    j["records"] = nlohmann::json::array();
    for (const MomentRecord& r : records) {
        nlohmann::json jr = {
            {"X", r.X},         {"k", r.k},
            {"sharp_sum", r.sharp_sum}, {"smooth_sum", r.smooth_sum},
            {"warnings", r.warnings},
        };
        if (r.k == 4) {
            jr["predicted"] = r.predicted;
            jr["ratio"] = r.ratio;
        } else {
            jr["predicted"] = nullptr;
            jr["ratio"] = nullptr;
        }
        j["records"].push_back(jr);
    }
    return j.dump(2) + "\n";
}

std::vector<MomentRecord> records_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<MomentRecord> out;
    for (const auto& jr : j.at("records")) {
        MomentRecord r;
        r.X = jr.at("X").get<i64>();
        r.k = jr.at("k").get<int>();
        r.sharp_sum = jr.at("sharp_sum").get<double>();
        r.smooth_sum = jr.at("smooth_sum").get<double>();
        r.warnings = jr.at("warnings").get<i64>();
        if (!jr.at("predicted").is_null()) r.predicted = jr.at("predicted").get<double>();
        if (!jr.at("ratio").is_null()) r.ratio = jr.at("ratio").get<double>();
        out.push_back(r);
    }
    return out;
}

void emit_results(const std::vector<MomentRecord>& records, const SweepConfig& cfg,
                  EmitFormat format, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_results: cannot open " + path);
    f << (format == EmitFormat::csv ? records_to_csv(records) : records_to_json(records, cfg));
    if (!f.good()) throw std::runtime_error("emit_results: write failed for " + path);
}

}  // namespace qdl
