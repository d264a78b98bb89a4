#include "papr_pts/cli.hpp"

#include "papr_pts/csv.hpp"
#include "papr_pts/errors.hpp"

#include <CLI11.hpp>

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace papr::cli {

namespace {

std::string shortest(double value)
{
    std::array<char, 64> buffer{};
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), result.ptr);
}

const char* boolean(bool value)
{
    return value ? "true" : "false";
}

std::vector<std::string> split_commas(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        parts.push_back(item);
    }
    return parts;
}

std::string default_optimizer(Subcommand subcommand)
{
    switch (subcommand) {
    case Subcommand::Convergence:
        return "abc";
    case Subcommand::Compare:
        return "ipts,gd,rs,abc";
    default:
        return "none";
    }
}

} // namespace

std::string_view to_string(Subcommand subcommand) noexcept
{
    switch (subcommand) {
    case Subcommand::Ccdf:
        return "ccdf";
    case Subcommand::Convergence:
        return "convergence";
    case Subcommand::Compare:
        return "compare";
    case Subcommand::OracleCheck:
        return "oracle-check";
    }
    return "unknown";
}

std::string CliInvocation::canonical() const
{
    const ExperimentConfig& c = config;
    std::ostringstream s;
    s << to_string(subcommand);
    if (subcommand == Subcommand::OracleCheck) {
        s << " --n " << c.n << " --m " << c.m << " --w " << c.w << " --l " << c.oversampling << " --seeds " << seeds
          << " --seed " << c.master_seed;
        return s.str();
    }
    s << " --n " << c.n << " --mod " << to_string(c.modulation) << " --l " << c.oversampling << " --m " << c.m
      << " --w " << c.w << " --partition " << to_string(c.partition) << " --per-symbol-partition "
      << boolean(c.per_symbol_partition) << " --optimizer ";
    if (subcommand == Subcommand::Compare) {
        for (std::size_t i = 0; i < optimizers.size(); ++i) {
            s << (i == 0 ? "" : ",") << to_string(optimizers[i]);
        }
    } else {
        s << to_string(c.optimizer);
    }
    s << " --s " << c.abc.population << " --limit " << c.abc.limit << " --k " << c.abc.max_iterations
      << " --perturb " << (c.abc.perturbation == Perturbation::SingleCoordinate ? "one" : "all") << " --trials " << c.rs_trials << " --r " << c.gd_radius << " --iters " << c.gd_iterations << " --fix-first "
      << boolean(c.fix_first) << " --cap " << c.exhaustive_cap << " --symbols " << c.symbol_count << " --seed "
      << c.master_seed << " --grid-min " << shortest(grid_min) << " --grid-max " << shortest(grid_max)
      << " --grid-step " << shortest(grid_step);
    if (subcommand == Subcommand::Compare) {
        s << " --target-ccdf " << shortest(target_ccdf);
    }
    if (subcommand == Subcommand::Convergence) {
        s << " --runs " << runs;
    }
    return s.str();
}

std::vector<ExperimentConfig> CliInvocation::compare_configs() const
{
    std::vector<ExperimentConfig> configs;
    for (OptimizerKind kind : optimizers) {
        ExperimentConfig c = config;
        c.optimizer = kind;
        configs.push_back(std::move(c));
    }
    return configs;
}

CliInvocation parse_args(std::span<const std::string> args)
{
    CliInvocation inv;
    ExperimentConfig& c = inv.config;

    CLI::App app{"Partial transmit sequence PAPR reduction simulator", "papr-pts"};
    app.require_subcommand(1, 1);
    auto* ccdf = app.add_subcommand("ccdf", "CCDF of the per-symbol PAPR after phase optimization")->fallthrough();
    auto* convergence =
        app.add_subcommand("convergence", "Mean best PAPR per iteration over repeated runs on one symbol")->fallthrough();
    auto* compare =
        app.add_subcommand("compare", "Evaluations and PAPR at a target CCDF level for several optimizers")->fallthrough();
    auto* oracle =
        app.add_subcommand("oracle-check", "Exhaustive search against a direct-summation brute force")->fallthrough();

    std::string modulation = "16qam";
    std::string partition = "random";
    std::string optimizer;
    std::string perturb = "all";

    auto* n_opt = app.add_option("--n", c.n, "Subcarrier count N (default 256; oracle-check 16)");
    app.add_option("--mod", modulation, "Constellation (default 16qam)")->check(CLI::IsMember({"qpsk", "16qam"}));
    app.add_option("--l", c.oversampling, "Oversampling factor L (default 4)");
    auto* m_opt = app.add_option("--m", c.m, "Subblock count M (default 16; oracle-check 4)");
    app.add_option("--w", c.w, "Allowed phase count W (default 2)");
    app.add_option("--partition", partition, "Partition scheme (default random)")
        ->check(CLI::IsMember({"random", "adjacent", "interleaved"}));
    app.add_option("--per-symbol-partition", c.per_symbol_partition,
                   "Draw a new partition for every symbol (default false)");
    app.add_option("--optimizer", optimizer,
                   "none|abc|ipts|rs|gd|opts; compare takes a comma list (default: ccdf none, convergence abc, "
                   "compare ipts,gd,rs,abc)");
    app.add_option("--s", c.abc.population, "ABC population S (default 30)");
    app.add_option("--limit", c.abc.limit, "ABC scout limit (default 5)");
    app.add_option("--k", c.abc.max_iterations, "ABC iterations K (default 30)");
    app.add_option("--perturb", perturb, "ABC neighbour move: all free coordinates or one (default all)")
        ->check(CLI::IsMember({"all", "one"}));
    app.add_option("--trials", c.rs_trials, "Random-search trials (default 900)");
    app.add_option("--r", c.gd_radius, "GD neighbourhood radius (default 2)");
    app.add_option("--iters", c.gd_iterations, "GD rounds (default 3)");
    app.add_option("--fix-first", c.fix_first, "Pin the first phase factor to 1 (default true)");
    app.add_option("--cap", c.exhaustive_cap, "Exhaustive search cap on W^(M-1) (default 1048576)");
    app.add_option("--symbols", c.symbol_count, "OFDM symbols per experiment (default 100000)");
    app.add_option("--seed", c.master_seed, "Master seed (default 0)");
    app.add_option("--grid-min", inv.grid_min, "First CCDF threshold in dB (default 5)");
    app.add_option("--grid-max", inv.grid_max, "Last CCDF threshold in dB (default 13)");
    app.add_option("--grid-step", inv.grid_step, "CCDF threshold step in dB (default 0.05)");
    app.add_option("--target-ccdf", inv.target_ccdf, "compare: CCDF level for the PAPR column (default 1e-3)");
    app.add_option("--runs", inv.runs, "convergence: repeated runs (default 100)");
    app.add_option("--seeds", inv.seeds, "oracle-check: number of seeds (default 50)");
    app.add_option("--workers", inv.workers, "Worker threads, 0 = all cores (default 0); output does not depend on it");
    app.add_option("--out", inv.out, "CSV output path (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (*ccdf) {
        inv.subcommand = Subcommand::Ccdf;
    } else if (*convergence) {
        inv.subcommand = Subcommand::Convergence;
    } else if (*compare) {
        inv.subcommand = Subcommand::Compare;
    } else if (*oracle) {
        inv.subcommand = Subcommand::OracleCheck;
    }

    c.modulation = modulation == "qpsk" ? Modulation::Qpsk : Modulation::Qam16;
    c.partition = partition == "adjacent"      ? PartitionScheme::Adjacent
                  : partition == "interleaved" ? PartitionScheme::Interleaved
                                               : PartitionScheme::Random;
    c.abc.perturbation = perturb == "one" ? Perturbation::SingleCoordinate : Perturbation::AllCoordinates;
    if (optimizer.empty()) {
        optimizer = default_optimizer(inv.subcommand);
    }

    try {
        c.thresholds_db = threshold_grid(inv.grid_min, inv.grid_max, inv.grid_step);

        if (inv.subcommand == Subcommand::OracleCheck) {
            if (n_opt->count() == 0) {
                c.n = 16;
            }
            if (m_opt->count() == 0) {
                c.m = 4;
            }
            const auto size = exhaustive_size(c.m, c.w);
            if (c.n < 1 || (c.n & (c.n - 1)) != 0 || c.m < 1 || c.m > c.n || c.w < 2 || c.oversampling < 1 ||
                !size || *size > 4096) {
                throw InvalidInput("oracle-check needs N a power of two, 1 <= M <= N, W >= 2, L >= 1 and "
                                   "W^(M-1) <= 4096");
            }
            if (inv.seeds < 1) {
                throw InvalidInput("--seeds must be >= 1");
            }
            return inv;
        }

        if (inv.subcommand == Subcommand::Compare) {
            for (const auto& name : split_commas(optimizer)) {
                const auto kind = parse_optimizer(name);
                if (!kind) {
                    throw InvalidInput("unknown optimizer '" + name + "'");
                }
                inv.optimizers.push_back(*kind);
            }
            if (inv.optimizers.empty()) {
                throw InvalidInput("--optimizer needs at least one entry");
            }
            if (!(inv.target_ccdf > 0.0) || inv.target_ccdf > 1.0) {
                throw InvalidInput("--target-ccdf must lie in (0, 1]");
            }
            for (const auto& cfg : inv.compare_configs()) {
                cfg.validate();
            }
            c.optimizer = inv.optimizers.front();
            return inv;
        }

        const auto kind = parse_optimizer(optimizer);
        if (!kind) {
            throw InvalidInput("unknown optimizer '" + optimizer + "'");
        }
        c.optimizer = *kind;
        c.validate();
        if (inv.subcommand == Subcommand::Convergence) {
            if (!has_trajectory(c.optimizer)) {
                throw InvalidInput("convergence needs an optimizer with a trajectory (abc or gd)");
            }
            if (inv.runs < 1) {
                throw InvalidInput("--runs must be >= 1");
            }
        }
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    return inv;
}

namespace {

struct Outcome {
    std::string body;
    bool checks_failed = false;
};

Outcome execute(const CliInvocation& inv, std::ostream& err)
{
    std::ostringstream body;
    bool checks_failed = false;
    const std::string config = inv.canonical();
    switch (inv.subcommand) {
    case Subcommand::Ccdf: {
        const CcdfCurve curve = run_ccdf(inv.config, inv.workers);
        write_ccdf_csv(body, config, curve);
        err << "ccdf: " << curve.sample_count << " symbols, optimizer " << to_string(inv.config.optimizer);
        try {
            err << ", PAPR at CCDF 1e-3 = " << format_fixed6(ccdf_crossing(curve, 1e-3)) << " dB";
        } catch (const std::exception&) {
        }
        err << '\n';
        break;
    }
    case Subcommand::Convergence: {
        const ConvergenceStat stat = run_convergence(inv.config, inv.runs, inv.workers);
        write_convergence_csv(body, config, stat);
        err << "convergence: " << stat.run_count << " runs, final mean best "
            << format_fixed6(stat.mean_best_db.empty() ? 0.0 : stat.mean_best_db.back()) << " dB\n";
        break;
    }
    case Subcommand::Compare: {
        const auto configs = inv.compare_configs();
        const auto rows = run_compare(configs, inv.target_ccdf, inv.workers);
        write_compare_csv(body, config, rows);
        for (const auto& row : rows) {
            err << row.optimizer << ": " << format_fixed6(row.evaluations) << " evaluations/symbol, "
                << format_fixed6(row.papr_db) << " dB\n";
        }
        break;
    }
    case Subcommand::OracleCheck: {
        std::vector<std::uint64_t> seeds(inv.seeds);
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            seeds[i] = inv.config.master_seed + i;
        }
        const OracleReport report = oracle_check(inv.config.n, inv.config.m, inv.config.w, seeds,
                                                 inv.config.oversampling);
        write_oracle_csv(body, config, report);
        err << "oracle-check: " << report.pass_count() << "/" << report.entries.size() << " passed\n";
        checks_failed = !report.all_passed();
        break;
    }
    }
    return {body.str(), checks_failed};
}

} // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CliInvocation inv;
    try {
        inv = parse_args(args);
    } catch (const HelpRequested& help) {
        out << help.what();
        return exit_code::kOk;
    } catch (const UsageError& e) {
        err << "papr-pts: " << e.what() << "\nRun with --help for usage.\n";
        return exit_code::kUsage;
    }

    Outcome outcome;
    try {
        outcome = execute(inv, err);
    } catch (const Refusal& e) {
        err << "papr-pts: refused: " << e.what() << '\n';
        return exit_code::kRefused;
    } catch (const InvalidInput& e) {
        err << "papr-pts: " << e.what() << '\n';
        return exit_code::kUsage;
    } catch (const std::exception& e) {
        err << "papr-pts: error: " << e.what() << '\n';
        return exit_code::kFailure;
    }

    if (inv.out.empty()) {
        out << outcome.body;
        out.flush();
        if (!out) {
            err << "papr-pts: failed to write output\n";
            return exit_code::kIo;
        }
    } else {
        std::ofstream file(inv.out, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "papr-pts: cannot open '" << inv.out << "' for writing\n";
            return exit_code::kIo;
        }
        file << outcome.body;
        file.close();
        if (!file) {
            err << "papr-pts: failed writing '" << inv.out << "'\n";
            return exit_code::kIo;
        }
    }

    return outcome.checks_failed ? exit_code::kFailure : exit_code::kOk;
}

} // namespace papr::cli
