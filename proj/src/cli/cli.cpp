#include "quench/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "quench/analysis.hpp"
#include "quench/errors.hpp"
#include "quench/freefermion.hpp"
#include "quench/io.hpp"
#include "quench/lz.hpp"
#include "quench/parallel.hpp"

namespace quench::cli {

namespace fs = std::filesystem;

namespace {

enum class Command { Lz, Chain, Sweep, Fit };

std::optional<Command> parse_command(std::string_view s) {
    if (s == "lz") return Command::Lz;
    if (s == "chain") return Command::Chain;
    if (s == "sweep") return Command::Sweep;
    if (s == "fit") return Command::Fit;
    return std::nullopt;
}

const char* command_name(Command c) {
    switch (c) {
        case Command::Lz: return "lz";
        case Command::Chain: return "chain";
        case Command::Sweep: return "sweep";
        case Command::Fit: return "fit";
    }
    return "?";
}

constexpr const char* kUsage =
    "usage: quench <command> [flags]\n"
    "\n"
    "commands:\n"
    "  lz     Landau-Zener sweep, writes trajectory.csv\n"
    "  chain  XY/Ising chain at one strategy, writes defects.csv and modes_<i>.csv\n"
    "  sweep  chain over strategies x regimes x kick counts x pulse widths, writes sweep.csv\n"
    "  fit    power-law fit of n_defect against rate, writes fit.csv\n"
    "\n"
    "`quench <command> --help` lists the flags of a command.\n";

// Raw flag values. Every flag is also a config-file key (without the dashes).
struct Options {
    std::vector<std::string> strategy;
    std::vector<std::string> regime;
    double T = 1.0;
    double eps = 0.1;
    std::vector<double> x{-10.0, 10.0};
    double dt = 1e-4;
    std::vector<int> kicks;
    std::vector<double> pulse_width;
    int stride = 0;
    int spins = 250;
    std::vector<double> gamma;
    std::vector<double> h;
    std::vector<std::string> rates;
    std::string evolver = "stepwise";
    std::string workers = "auto";
    std::string out = ".";
    std::string config;
    std::string in;
    std::vector<double> window;
};

void add_options(CLI::App& app, Command cmd, Options& o) {
    const bool multi = cmd == Command::Sweep;
    app.set_help_flag("--help", "Print this help and exit");  // -h would clash with --h
    if (cmd != Command::Fit) {
        auto* s = app.add_option("--strategy", o.strategy, "lin | geo | geojump")->required();
        if (multi) s->expected(1, -1); else s->expected(1);
        app.add_option("--dt", o.dt, "time step")->capture_default_str();
        auto* k = app.add_option("--kicks", o.kicks, "number of pulses (geojump)");
        if (multi) k->expected(1, -1); else k->expected(1);
        auto* w = app.add_option("--pulse-width", o.pulse_width, "pulse width (default: dt)");
        if (multi) w->expected(1, -1); else w->expected(1);
    }
    if (cmd == Command::Lz) {
        app.add_option("--T", o.T, "total time")->capture_default_str();
        app.add_option("--eps", o.eps, "gap parameter")->capture_default_str();
        app.add_option("--x", o.x, "x_i x_f")->expected(2);
        app.add_option("--stride", o.stride, "record every n-th step (default: about 10^4 rows)");
    }
    if (cmd == Command::Chain || cmd == Command::Sweep) {
        auto* r = app.add_option("--regime", o.regime, "anisotropy | gapless | ising")->required();
        if (multi) r->expected(1, -1); else r->expected(1);
        app.add_option("--spins", o.spins, "chain length N (even)")->capture_default_str();
        app.add_option("--gamma", o.gamma, "gamma_i gamma_f (gamma-swept regimes)")->expected(2);
        app.add_option("--h", o.h, "fixed h, or h_i h_f on the Ising line")->expected(1, 2);
        app.add_option("--rates", o.rates, "`log MIN MAX COUNT` or an explicit list")
            ->expected(1, -1)
            ->required();
        app.add_option("--evolver", o.evolver, "stepwise | exact (geojump only)")->capture_default_str();
        app.add_option("--workers", o.workers, "worker threads or `auto`")->capture_default_str();
    }
    if (cmd == Command::Fit) {
        app.add_option("--in", o.in, "defects.csv or sweep.csv")->required();
        app.add_option("--window", o.window, "rate_min rate_max (default: all rates)")->expected(2);
    }
    app.add_option("--out", o.out, "output directory")->capture_default_str();
    app.add_option("--config", o.config, "file of `key = value` lines; flags override it");
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string tok; is >> tok;) out.push_back(tok);
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::set<std::string> given_keys(const CLI::App& app) {
    std::set<std::string> keys;
    for (const CLI::Option* opt : app.get_options())
        if (opt->count() > 0 && !opt->get_lnames().empty()) keys.insert(opt->get_lnames().front());
    return keys;
}

// Arguments taken from a config file, skipping keys already on the command line.
std::vector<std::string> config_args(const fs::path& path, Command cmd,
                                     const std::set<std::string>& overridden) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot read config file " + path.string());
    std::vector<std::string> args;
    std::set<std::string> seen;
    std::string line;
    for (int lineno = 1; std::getline(is, line); ++lineno) {
        const auto where = [&] { return path.string() + ":" + std::to_string(lineno) + ": "; };
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ValidationError(where() + "expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const auto values = split_ws(line.substr(eq + 1));
        if (key == "config") throw ValidationError(where() + "config files cannot include other config files");
        if (!seen.insert(key).second) throw ValidationError(where() + "duplicate key '" + key + "'");

        std::vector<std::string> piece{"--" + key};
        piece.insert(piece.end(), values.begin(), values.end());
        Options scratch;
        CLI::App probe;
        add_options(probe, cmd, scratch);
        for (CLI::Option* opt : probe.get_options()) opt->required(false);
        try {
            std::vector<std::string> rev(piece.rbegin(), piece.rend());
            probe.parse(rev);
        } catch (const CLI::ParseError& e) {
            throw ValidationError(where() + e.what());
        }
        if (!overridden.contains(key)) args.insert(args.end(), piece.begin(), piece.end());
    }
    return args;
}

Strategy one_strategy(const Options& o) { return parse_strategy(o.strategy.front()); }

int resolve_workers(const std::string& w) {
    if (w == "auto") return hardware_workers();
    int n = 0;
    const auto res = std::from_chars(w.data(), w.data() + w.size(), n);
    if (res.ec != std::errc{} || res.ptr != w.data() + w.size() || n < 1)
        throw ValidationError("--workers must be a positive integer or `auto`, got '" + w + "'");
    return n;
}

double parse_number(const std::string& s, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ValidationError(std::string(what) + ": '" + s + "' is not a number");
    return v;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
    return s;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i];
    return s;
}

struct Manifest {
    Command cmd;
    std::vector<std::pair<std::string, std::string>> entries;

    void add(std::string key, std::string value) { entries.emplace_back(std::move(key), std::move(value)); }

    void write(std::ostream& os) const {
        os << "# quench " << kVersion << "\n# command: " << command_name(cmd) << "\n";
        for (const auto& [k, v] : entries) os << k << " = " << v << "\n";
    }
};

struct Output {
    std::string name;
    std::string text;
};

void write_outputs(const fs::path& dir, const std::vector<Output>& files) {
    fs::create_directories(dir);
    for (const auto& f : files)
        write_file_atomic(dir / f.name, [&](std::ostream& os) { os << f.text; });
}

// ---------------------------------------------------------------- lz

std::vector<Output> run_lz(const Options& o, Manifest& m, std::ostream& out) {
    LZConfig cfg;
    cfg.eps = o.eps;
    cfg.x_i = o.x.at(0);
    cfg.x_f = o.x.at(1);
    cfg.T = o.T;
    cfg.dt = o.dt;
    cfg.strategy = one_strategy(o);
    double width = 0.0;
    if (cfg.strategy == Strategy::GeoJump) {
        if (o.kicks.empty()) throw ValidationError("--strategy geojump needs --kicks");
        width = o.pulse_width.empty() ? o.dt : o.pulse_width.front();
        cfg.kicks = KickTrain(o.kicks.front(), o.T, width);
    } else if (!o.kicks.empty() || !o.pulse_width.empty()) {
        throw ValidationError("--kicks and --pulse-width apply to --strategy geojump only");
    }
    if (o.stride < 0) throw ValidationError("--stride must be positive");
    cfg.trace_stride = o.stride;
    if (cfg.trace_stride == 0) {
        cfg.trace_stride = 1;
        if (!cfg.kicks && o.dt > 0.0 && o.T > 0.0)
            cfg.trace_stride = static_cast<int>(std::max<std::int64_t>(1, step_count(o.T, o.dt) / 10000));
    }
    cfg.validate();

    const Trajectory tr = evolve_lz(cfg);

    m.add("strategy", std::string(to_string(cfg.strategy)));
    m.add("T", format_double(cfg.T));
    m.add("eps", format_double(cfg.eps));
    m.add("x", format_double(cfg.x_i) + " " + format_double(cfg.x_f));
    m.add("dt", format_double(cfg.dt));
    if (cfg.kicks) {
        m.add("kicks", std::to_string(cfg.kicks->n_kicks()));
        m.add("pulse-width", format_double(width));
    }
    m.add("stride", std::to_string(cfg.trace_stride));

    out << "final fidelity " << format_double(tr.final_fidelity()) << "\n"
        << "adiabatic error " << format_double(tr.final_error()) << "\n";
    std::ostringstream csv;
    tr.write_csv(csv);
    return {{"trajectory.csv", csv.str()}};
}

// ---------------------------------------------------------------- chain / sweep

ChainConfig chain_config(const Options& o, Regime regime, Strategy strategy, int kicks,
                         double width, double first_T) {
    ChainConfig c = ChainConfig::defaults(regime);
    c.n_spins = o.spins;
    c.dt = o.dt;
    c.strategy = strategy;
    const std::string rname(to_string(regime));
    if (regime == Regime::IsingLine) {
        if (!o.gamma.empty())
            throw ValidationError("--gamma conflicts with --regime ising (gamma is fixed to 1 there)");
        if (!o.h.empty()) {
            if (o.h.size() != 2) throw ValidationError("--regime ising sweeps h and needs --h H_I H_F");
            c.h_i = o.h[0];
            c.h_f = o.h[1];
        }
    } else {
        if (!o.gamma.empty()) {
            c.gamma_i = o.gamma[0];
            c.gamma_f = o.gamma[1];
        }
        if (!o.h.empty()) {
            if (o.h.size() != 1)
                throw ValidationError("--regime " + rname + " holds h fixed; --h takes one value");
            c.h_i = c.h_f = o.h[0];
        }
    }
    if (strategy == Strategy::GeoJump) c.kicks = KickTrain(kicks, first_T, width);
    c.T = first_T;
    c.validate();
    return c;
}

Evolver parse_evolver(const std::string& s) {
    if (s == "stepwise") return Evolver::Stepwise;
    if (s == "exact") return Evolver::ExactKicks;
    throw ValidationError("--evolver must be stepwise or exact, got '" + s + "'");
}

void add_chain_manifest(Manifest& m, const Options& o, const ChainConfig& c, const std::vector<double>& rates,
                        bool include_model) {
    if (include_model) {
        if (c.sweeps_gamma()) {
            m.add("gamma", format_double(c.gamma_i) + " " + format_double(c.gamma_f));
            m.add("h", format_double(c.h_i));
        } else {
            m.add("h", format_double(c.h_i) + " " + format_double(c.h_f));
        }
    }
    m.add("spins", std::to_string(c.n_spins));
    m.add("dt", format_double(c.dt));
    m.add("rates", join(rates));
    m.add("evolver", o.evolver);
    m.add("workers", o.workers);
}

std::vector<Output> run_chain_cmd(const Options& o, Manifest& m, std::ostream& out) {
    const Regime regime = parse_regime(o.regime.front());
    const Strategy strategy = one_strategy(o);
    const Evolver evolver = parse_evolver(o.evolver);
    const auto rates = parse_rates(o.rates);
    const int workers = resolve_workers(o.workers);
    double width = 0.0;
    int kicks = 0;
    if (strategy == Strategy::GeoJump) {
        if (o.kicks.empty()) throw ValidationError("--strategy geojump needs --kicks");
        kicks = o.kicks.front();
        width = o.pulse_width.empty() ? o.dt : o.pulse_width.front();
    } else if (!o.kicks.empty() || !o.pulse_width.empty()) {
        throw ValidationError("--kicks and --pulse-width apply to --strategy geojump only");
    }
    const ChainConfig base = chain_config(o, regime, strategy, kicks, width, 1.0 / rates.front());

    m.add("regime", std::string(to_string(regime)));
    m.add("strategy", std::string(to_string(strategy)));
    if (strategy == Strategy::GeoJump) {
        m.add("kicks", std::to_string(kicks));
        m.add("pulse-width", format_double(width));
    }
    add_chain_manifest(m, o, base, rates, true);

    const auto results = run_chain(base, rates, evolver, workers);

    std::vector<Output> files;
    std::ostringstream defects;
    defects << "rate,strategy,regime,n_defect\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        defects << format_double(r.rate) << ',' << to_string(strategy) << ',' << to_string(regime) << ','
                << format_double(r.n_defect) << '\n';
        out << "rate " << format_double(r.rate) << "  n_defect " << format_double(r.n_defect) << "\n";
        std::ostringstream modes;
        modes << "k,p_k,err_k\n";
        for (const auto& md : r.modes)
            modes << format_double(md.k) << ',' << format_double(md.p_k) << ',' << format_double(md.err_k)
                  << '\n';
        files.push_back({"modes_" + std::to_string(i) + ".csv", modes.str()});
    }
    files.insert(files.begin(), Output{"defects.csv", defects.str()});
    return files;
}

std::vector<Output> run_sweep(const Options& o, Manifest& m, std::ostream& out) {
    const Evolver evolver = parse_evolver(o.evolver);
    const auto rates = parse_rates(o.rates);
    const int workers = resolve_workers(o.workers);
    std::vector<Regime> regimes;
    for (const auto& r : o.regime) regimes.push_back(parse_regime(r));
    std::vector<Strategy> strategies;
    for (const auto& s : o.strategy) strategies.push_back(parse_strategy(s));
    const bool any_jump =
        std::find(strategies.begin(), strategies.end(), Strategy::GeoJump) != strategies.end();
    if (any_jump && o.kicks.empty()) throw ValidationError("--strategy geojump needs --kicks");
    if (!any_jump && (!o.kicks.empty() || !o.pulse_width.empty()))
        throw ValidationError("--kicks and --pulse-width apply to --strategy geojump only");
    if (evolver == Evolver::ExactKicks && (strategies.size() != 1 || !any_jump))
        throw ValidationError("--evolver exact applies to --strategy geojump only");
    std::vector<double> widths = o.pulse_width;
    if (widths.empty()) widths.push_back(o.dt);

    std::ostringstream csv;
    csv << "rate,strategy,regime,kicks,pulse_width,n_defect\n";
    std::vector<std::string> model_lines;
    for (Regime regime : regimes) {
        for (Strategy strategy : strategies) {
            std::vector<std::pair<int, double>> combos;
            if (strategy == Strategy::GeoJump) {
                for (int k : o.kicks)
                    for (double w : widths) combos.emplace_back(k, w);
            } else {
                combos.emplace_back(0, 0.0);
            }
            for (const auto& [kicks, width] : combos) {
                const ChainConfig base = chain_config(o, regime, strategy, kicks, width, 1.0 / rates.front());
                const auto results = run_chain(base, rates, evolver, workers);
                for (const auto& r : results) {
                    csv << format_double(r.rate) << ',' << to_string(strategy) << ',' << to_string(regime) << ','
                        << kicks << ',' << format_double(width) << ',' << format_double(r.n_defect) << '\n';
                }
                out << to_string(regime) << ' ' << to_string(strategy);
                if (strategy == Strategy::GeoJump) out << " kicks " << kicks << " width " << format_double(width);
                out << ": " << results.size() << " rates\n";
            }
        }
    }

    m.add("regime", join(o.regime));
    m.add("strategy", join(o.strategy));
    if (any_jump) {
        std::string ks;
        for (std::size_t i = 0; i < o.kicks.size(); ++i) ks += (i ? " " : "") + std::to_string(o.kicks[i]);
        m.add("kicks", ks);
        m.add("pulse-width", join(widths));
    }
    if (!o.gamma.empty()) m.add("gamma", join(o.gamma));
    if (!o.h.empty()) m.add("h", join(o.h));
    ChainConfig shown = ChainConfig::defaults(regimes.front());
    shown.n_spins = o.spins;
    shown.dt = o.dt;
    add_chain_manifest(m, o, shown, rates, false);
    return {{"sweep.csv", csv.str()}};
}

// ---------------------------------------------------------------- fit

std::vector<Output> run_fit(const Options& o, Manifest& m, std::ostream& out) {
    const CsvTable table = read_csv(o.in);
    const int c_rate = table.column("rate");
    const int c_n = table.column("n_defect");
    const int c_s = table.column("strategy");
    const int c_r = table.column("regime");
    if (c_rate < 0 || c_n < 0 || c_s < 0 || c_r < 0)
        throw ValidationError(o.in + ": needs columns rate, n_defect, strategy, regime");

    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, std::vector<std::pair<double, double>>> groups;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::string where = o.in + ":" + std::to_string(i + 2);
        const auto key = std::make_pair(row.at(c_r), row.at(c_s));
        const double rate = parse_number(row.at(c_rate), where.c_str());
        const double n = parse_number(row.at(c_n), where.c_str());
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) order.push_back(key);
        for (const auto& p : it->second)
            if (p.first == rate)
                throw ValidationError(where + ": rate " + row.at(c_rate) + " repeats for " + key.first + "/" +
                                      key.second + "; fit one kick setting at a time");
        it->second.emplace_back(rate, n);
    }
    if (order.empty()) throw ValidationError(o.in + ": no data rows");

    std::ostringstream csv;
    csv << "regime,strategy,exponent,r_squared,window_min,window_max\n";
    for (const auto& key : order) {
        const auto& pts = groups[key];
        double lo = pts.front().first, hi = lo;
        for (const auto& p : pts) lo = std::min(lo, p.first), hi = std::max(hi, p.first);
        if (o.window.size() == 2) lo = o.window[0], hi = o.window[1];
        const ScalingFit fit = fit_power_law(pts, lo, hi);
        csv << key.first << ',' << key.second << ',' << format_double(fit.exponent) << ','
            << format_double(fit.r_squared) << ',' << format_double(fit.window_min) << ','
            << format_double(fit.window_max) << '\n';
        out << key.first << ' ' << key.second << ": exponent " << format_double(fit.exponent) << "  r^2 "
            << format_double(fit.r_squared) << "  (" << fit.points << " points)\n";
    }
    m.add("in", o.in);
    if (o.window.size() == 2) m.add("window", join(o.window));
    return {{"fit.csv", csv.str()}};
}

}  // namespace

std::vector<double> parse_rates(const std::vector<std::string>& tokens) {
    if (tokens.empty()) throw ValidationError("--rates: no values");
    std::vector<double> rates;
    if (tokens.front() == "log") {
        if (tokens.size() != 4) throw ValidationError("--rates log takes MIN MAX COUNT");
        const double lo = parse_number(tokens[1], "--rates");
        const double hi = parse_number(tokens[2], "--rates");
        const double cnt = parse_number(tokens[3], "--rates");
        if (!(lo > 0.0) || !(hi > 0.0)) throw ValidationError("--rates log needs MIN > 0 and MAX > 0");
        if (!(cnt >= 1.0) || cnt != std::floor(cnt)) throw ValidationError("--rates log: COUNT must be a positive integer");
        const int n = static_cast<int>(cnt);
        if (n == 1) {
            if (lo != hi) throw ValidationError("--rates log with COUNT 1 needs MIN == MAX");
            return {lo};
        }
        const double l0 = std::log10(lo), l1 = std::log10(hi);
        for (int i = 0; i < n; ++i) {
            if (i == 0) rates.push_back(lo);
            else if (i == n - 1) rates.push_back(hi);
            else rates.push_back(std::pow(10.0, l0 + (l1 - l0) * i / (n - 1)));
        }
        return rates;
    }
    for (const auto& t : tokens) {
        const double v = parse_number(t, "--rates");
        if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("--rates: values must be positive, got " + t);
        rates.push_back(v);
    }
    return rates;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        err << kUsage;
        return kValidation;
    }
    if (args.front() == "--help" || args.front() == "-h") {
        out << kUsage;
        return kOk;
    }
    if (args.front() == "--version") {
        out << "quench " << kVersion << "\n";
        return kOk;
    }
    const auto cmd = parse_command(args.front());
    if (!cmd) {
        err << "unknown command '" << args.front() << "'\n\n" << kUsage;
        return kValidation;
    }

    try {
        const std::vector<std::string> rest(args.begin() + 1, args.end());

        // Pass 1: command line alone, to find --config and the keys it overrides.
        Options cli_opts;
        CLI::App first(std::string("quench ") + command_name(*cmd), std::string("quench ") + command_name(*cmd));
        add_options(first, *cmd, cli_opts);
        for (CLI::Option* opt : first.get_options()) opt->required(false);
        try {
            std::vector<std::string> rev(rest.rbegin(), rest.rend());
            first.parse(rev);
        } catch (const CLI::CallForHelp&) {
            out << first.help();
            return kOk;
        } catch (const CLI::ParseError& e) {
            throw ValidationError(e.what());
        }

        std::vector<std::string> merged;
        if (!cli_opts.config.empty()) merged = config_args(cli_opts.config, *cmd, given_keys(first));
        merged.insert(merged.end(), rest.begin(), rest.end());

        Options opts;
        CLI::App app(std::string("quench ") + command_name(*cmd));
        add_options(app, *cmd, opts);
        try {
            std::vector<std::string> rev(merged.rbegin(), merged.rend());
            app.parse(rev);
        } catch (const CLI::ParseError& e) {
            throw ValidationError(e.what());
        }

        Manifest manifest{*cmd, {}};
        std::vector<Output> files;
        switch (*cmd) {
            case Command::Lz: files = run_lz(opts, manifest, out); break;
            case Command::Chain: files = run_chain_cmd(opts, manifest, out); break;
            case Command::Sweep: files = run_sweep(opts, manifest, out); break;
            case Command::Fit: files = run_fit(opts, manifest, out); break;
        }
        std::ostringstream mtext;
        manifest.write(mtext);
        files.push_back({"manifest.txt", mtext.str()});
        write_outputs(opts.out, files);
        return kOk;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    }
}

}  // namespace quench::cli
