// Command-line front end. Subcommands:
//   exact-table  exact loss probabilities P(X_k < 0), k = 1..max-k
//   cond-table   conditional loss probabilities (closed forms)
//   simulate     stopped Monte Carlo ensemble -> report
//   approx       normal-approximation figures at a given k
//   bounds       analytic bounds at a given k
//   path         one path's full trajectory
//
// Common options live on the main app so `--config FILE` stays a flat
// key=value file (# comments); command-line flags override config values.
// Exit codes: 0 ok, 2 bad input, 3 runtime failure.

#include <cstdio>
#include <mutex>
#include <string>

#include <CLI11.hpp>

#include <cpdo/cpdo.hpp>

namespace {

using cpdo::io::json;

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    cpdo::io::write_file_atomic(out_path, content);
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// 4 significant digits for every approximation we print
double sig4(double v) { return std::stod(cpdo::io::format_sig4(v)); }

json rational_cell(const cpdo::rational& r) { return cpdo::io::rational_json(r); }

std::string csv_cells(const cpdo::rational& r) {
    return cpdo::io::format_rational(r) + ',' +
           cpdo::io::format_fixed6(cpdo::io::rational_to_double(r));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coin-toss capital model: exact probabilities, "
                 "approximations, bounds, and simulation"};
    app.fallthrough();  // inherited: subcommand args may match these options

    double gamma = 0.1, delta = 0.01, p_heads = 0.5;
    double cash_in_level = -1.0;  // sentinel: default to 1 - gamma
    std::size_t n_paths = 1000;
    long max_tosses = 50000;
    std::uint64_t seed = 1;
    int parallelism = 1;
    std::string format = "json", out_path;

    app.add_option("--gamma", gamma, "cash-out level (stop at X <= -gamma)")
        ->group("Model");
    app.add_option("--delta", delta, "wager fraction per toss")->group("Model");
    app.add_option("--p-heads", p_heads, "probability of heads")->group("Model");
    app.add_option("--cash-in-level", cash_in_level,
                   "stop at X >= this (default 1 - gamma)")
        ->group("Model");
    app.add_option("--n-paths", n_paths, "ensemble size")->group("Simulation");
    app.add_option("--max-tosses", max_tosses, "toss budget per path")
        ->group("Simulation");
    app.add_option("--seed", seed, "RNG seed")->group("Simulation");
    app.add_option("--parallelism", parallelism,
                   "worker threads (never changes results)")
        ->group("Simulation");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->group("Output");
    app.add_option("--out", out_path,
                   "write output to this file (atomically) instead of stdout")
        ->group("Output");
    app.set_config("--config", "", "flat key=value config file; flags override")
        ->group("Output");

    auto* cmd_exact = app.add_subcommand(
        "exact-table", "exact loss probabilities P(X_k < 0) for k = 1..max-k");
    long exact_max_k = 12;
    cmd_exact->add_option("--max-k", exact_max_k, "largest k in the table")
        ->check(CLI::Range(1L, 100000L));

    auto* cmd_cond = app.add_subcommand(
        "cond-table",
        "P(X_k < 0 | X_1 < 0), P(X_k < 0 | X_2 < 0), and "
        "P(X_{k+1} < 0 | X_k < 0) for k = 1..max-k");
    long cond_max_k = 12;
    cmd_cond->add_option("--max-k", cond_max_k, "largest k in the table")
        ->check(CLI::Range(1L, 197L));

    auto* cmd_sim = app.add_subcommand(
        "simulate", "run a stopped ensemble and report outcome statistics");
    std::string records_out;
    cmd_sim->add_option("--records-out", records_out,
                        "also write per-path records to this file");

    auto* cmd_approx = app.add_subcommand(
        "approx", "normal-approximation probabilities, peak, and horizon");
    long approx_k = 1906;
    double approx_t = 0.9, approx_confidence = 0.95;
    cmd_approx->add_option("--k", approx_k, "toss count to evaluate at")
        ->check(CLI::Range(1L, 10000000000L));
    cmd_approx->add_option("--t", approx_t,
                           "capital target in (0,1) for the reach probability");
    cmd_approx->add_option("--confidence", approx_confidence,
                           "confidence level for the reach horizon");

    auto* cmd_bounds = app.add_subcommand(
        "bounds", "analytic bounds (even k required for the k-dependent ones)");
    long bounds_k = 50000;
    cmd_bounds->add_option("--k", bounds_k, "toss count for k-dependent bounds");

    auto* cmd_path = app.add_subcommand("path", "one path's full trajectory");
    std::uint64_t path_id = 0;
    cmd_path->add_option("--path-id", path_id, "path index within the stream");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);

        cpdo::ModelParams params{gamma, delta, p_heads,
                                 cash_in_level < 0.0 ? 1.0 - gamma
                                                     : cash_in_level};
        params.validate();
        const bool csv = format == "csv";

        if (*cmd_exact) {
            const cpdo::rational prob_delta(
                static_cast<long long>(std::llround(delta * 1e9)), 1000000000);
            const cpdo::rational prob_heads(
                static_cast<long long>(std::llround(p_heads * 1e9)), 1000000000);
            std::string text;
            if (csv) {
                text = "k,fraction,decimal\n";
                for (long k = 1; k <= exact_max_k; ++k)
                    text += std::to_string(k) + ',' +
                            csv_cells(cpdo::tail_prob(k, prob_delta,
                                                      cpdo::rational(1), true,
                                                      prob_heads)) +
                            '\n';
            } else {
                json rows = json::array();
                for (long k = 1; k <= exact_max_k; ++k)
                    rows.push_back(
                        {{"k", k},
                         {"prob_loss",
                          rational_cell(cpdo::tail_prob(k, prob_delta,
                                                        cpdo::rational(1), true,
                                                        prob_heads))}});
                text = json_text(rows);
            }
            emit(text, out_path);
            return 0;
        }

        if (*cmd_cond) {
            std::string text;
            if (csv) {
                text = "k,given_loss_at_1_fraction,given_loss_at_1_decimal,"
                       "given_loss_at_2_fraction,given_loss_at_2_decimal,"
                       "successive_fraction,successive_decimal\n";
                for (long k = 1; k <= cond_max_k; ++k) {
                    text += std::to_string(k) + ',' +
                            csv_cells(cpdo::cond_prob_given_loss_at_1(k)) + ',';
                    text += k >= 2
                                ? csv_cells(cpdo::cond_prob_given_loss_at_2(k))
                                : std::string(",");
                    text += ',' + csv_cells(cpdo::cond_prob_successive(k)) + '\n';
                }
            } else {
                json rows = json::array();
                for (long k = 1; k <= cond_max_k; ++k) {
                    json row{{"k", k},
                             {"given_loss_at_1",
                              rational_cell(cpdo::cond_prob_given_loss_at_1(k))}};
                    row["given_loss_at_2"] =
                        k >= 2 ? rational_cell(cpdo::cond_prob_given_loss_at_2(k))
                               : json(nullptr);
                    row["successive"] =
                        rational_cell(cpdo::cond_prob_successive(k));
                    rows.push_back(std::move(row));
                }
                text = json_text(rows);
            }
            emit(text, out_path);
            return 0;
        }

        if (*cmd_sim) {
            cpdo::SimOptions opts;
            opts.n_paths = n_paths;
            opts.max_tosses = max_tosses;
            opts.seed = seed;
            opts.parallelism = parallelism;
            std::mutex progress_mutex;
            std::size_t next_decile = 1;
            opts.progress = [&](std::size_t done, std::size_t total) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                while (next_decile <= 10 &&
                       done * 10 >= next_decile * total) {
                    std::fprintf(stderr, "progress: %zu%% (%zu/%zu paths)\n",
                                 next_decile * 10, done, total);
                    ++next_decile;
                }
            };
            const cpdo::EnsembleResult res = cpdo::run_ensemble(params, opts);
            emit(csv ? cpdo::io::report_to_csv(res.report)
                     : json_text(cpdo::io::report_to_json(res.report)),
                 out_path);
            if (!records_out.empty())
                cpdo::io::write_file_atomic(
                    records_out,
                    csv ? cpdo::io::paths_to_csv(res.records)
                        : json_text(cpdo::io::paths_to_json(res.records)));
            return 0;
        }

        if (*cmd_approx) {
            const cpdo::DriftParams dp = cpdo::drift_params(delta);
            const cpdo::ApproxResult cash =
                cpdo::prob_cashout_approx(approx_k, gamma, delta);
            const cpdo::ApproxResult reach =
                cpdo::prob_reach_approx(approx_k, approx_t, delta);
            const cpdo::CashoutPeak peak = cpdo::cashout_peak(gamma, delta);
            const long horizon =
                cpdo::horizon_for_confidence(approx_t, approx_confidence, delta);
            if (csv) {
                std::string text = "field,value\n";
                auto row = [&](const char* name, const std::string& v) {
                    text += std::string(name) + ',' + v + '\n';
                };
                row("k", std::to_string(approx_k));
                row("mu", cpdo::io::format_sig4(dp.mu));
                row("sigma2", cpdo::io::format_sig4(dp.sigma2));
                row("prob_cashout", cpdo::io::format_sig4(cash.probability));
                row("z_cashout", cpdo::io::format_sig4(cash.z_argument));
                row("t", cpdo::io::format_sig4(approx_t));
                row("prob_reach", cpdo::io::format_sig4(reach.probability));
                row("z_reach", cpdo::io::format_sig4(reach.z_argument));
                row("peak_k", std::to_string(peak.k_star));
                row("peak_prob", cpdo::io::format_sig4(peak.p_star));
                row("confidence", cpdo::io::format_sig4(approx_confidence));
                row("horizon_k", std::to_string(horizon));
                emit(text, out_path);
            } else {
                json j{{"k", approx_k},
                       {"mu", sig4(dp.mu)},
                       {"sigma2", sig4(dp.sigma2)},
                       {"prob_cashout", sig4(cash.probability)},
                       {"z_cashout", sig4(cash.z_argument)},
                       {"t", sig4(approx_t)},
                       {"prob_reach", sig4(reach.probability)},
                       {"z_reach", sig4(reach.z_argument)},
                       {"peak_k", peak.k_star},
                       {"peak_prob", sig4(peak.p_star)},
                       {"confidence", sig4(approx_confidence)},
                       {"horizon_k", horizon}};
                emit(json_text(j), out_path);
            }
            return 0;
        }

        if (*cmd_bounds) {
            const double cash_in = cpdo::cash_in_upper_bound(gamma, delta);
            const double beta = cpdo::corridor_width_beta(gamma, delta);
            const cpdo::BoundReport bmax = cpdo::binomial_max_bound(bounds_k);
            const double surv =
                cpdo::survival_upper_bound(bounds_k, gamma, delta);
            if (csv) {
                std::string text = "name,value,k,log_scale,assumptions\n";
                text += "cash_in_upper_bound," +
                        cpdo::io::format_double(cash_in) + ",,0,\n";
                text += "corridor_width_beta," +
                        cpdo::io::format_double(beta) + ",,0,\n";
                text += bmax.name + ',' + cpdo::io::format_double(bmax.value) +
                        ',' + std::to_string(bmax.k) + ',' +
                        (bmax.log_scale ? "1" : "0") + ',' + bmax.assumptions +
                        '\n';
                text += "survival_upper_bound," +
                        cpdo::io::format_double(surv) + ',' +
                        std::to_string(bounds_k) + ",0,k even\n";
                emit(text, out_path);
            } else {
                json rows = json::array();
                rows.push_back({{"name", "cash_in_upper_bound"},
                                {"value", cash_in}});
                rows.push_back({{"name", "corridor_width_beta"},
                                {"value", beta}});
                rows.push_back({{"name", bmax.name},
                                {"value", bmax.value},
                                {"k", bmax.k},
                                {"log_scale", bmax.log_scale},
                                {"assumptions", bmax.assumptions}});
                rows.push_back({{"name", "survival_upper_bound"},
                                {"value", surv},
                                {"k", bounds_k},
                                {"log_scale", false},
                                {"assumptions", "k even"}});
                emit(json_text(rows), out_path);
            }
            return 0;
        }

        if (*cmd_path) {
            const cpdo::PathRecord rec =
                cpdo::run_path(params, seed, path_id, max_tosses, true);
            emit(csv ? cpdo::io::trajectory_to_csv(rec)
                     : json_text(cpdo::io::trajectory_to_json(rec)),
                 out_path);
            return 0;
        }
        return 2;  // unreachable: a subcommand is required
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const cpdo::validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const cpdo::budget_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
