#include "gradwalk/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace gradwalk {
namespace {

std::string trim(std::string_view s) {
    auto const b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto const e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_real(std::string const& text, std::string const& what) {
    double v = 0.0;
    auto const* first = text.data();
    auto const* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty())
        throw ConfigError("bad number for " + what + ": '" + text + "'");
    return v;
}

std::uint64_t parse_uint(std::string const& text, std::string const& what) {
    std::uint64_t v = 0;
    auto const* first = text.data();
    auto const* last = text.data() + text.size();
    // accept "1e5"-style sample counts
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc{} && ptr == last && !text.empty()) return v;
    double const d = parse_real(text, what);
    if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19)
        throw ConfigError("bad integer for " + what + ": '" + text + "'");
    return static_cast<std::uint64_t>(d);
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(std::string const& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

/// Point where the expansion residual is well defined: the origin if the
/// gradient does not vanish there, else the first such grid point.
std::optional<Point> residual_point(TestFunction const& fn) {
    Point const origin = Point::zero(fn.dim());
    if (fn.gradient(origin).norm() > 1e-6) return origin;
    for (Point const& x : default_grid(fn.dim()))
        if (fn.gradient(x).norm() > 1e-6) return x;
    return std::nullopt;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (n < 2 || n > kMaxDim) throw ConfigError("n must lie in [2, " + std::to_string(kMaxDim) + "]");
    if (eps.empty()) throw ConfigError("eps list is empty");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0 && eps[i] < 0.25)) throw ConfigError("eps values must lie in (0, 0.25)");
        if (i > 0 && !(eps[i] < eps[i - 1])) throw ConfigError("eps values must be strictly decreasing");
    }
    if (samples < 100) throw ConfigError("samples must be at least 100");
    if (!(p >= 2.0)) throw ConfigError("the discrete walk needs p >= 2");
    try {
        (void)TestFunction::from_id(fn_id, n, p);
    } catch (ParameterError const& e) {
        throw ConfigError(e.what());
    }
    switch (regime) {
    case Regime::EtaCut:
        if (!eta || !(*eta > 0.0)) throw ConfigError("regime eta needs eta > 0");
        if (a_prime) throw ConfigError("regime eta does not take a-prime");
        break;
    case Regime::RateCut:
        if (a_prime && !(*a_prime > 0.0 && *a_prime < 1.0))
            throw ConfigError("regime rate needs a-prime in (0, 1)");
        if (eta) throw ConfigError("regime rate does not take eta");
        break;
    case Regime::ZeroSetUniform:
        if (eta || a_prime) throw ConfigError("regime zeroset takes neither eta nor a-prime");
        if (!(grad_zero_tol >= 0.0)) throw ConfigError("grad-zero-tol must be nonnegative");
        break;
    }
}

RegimeConfig ExperimentConfig::regime_for(double epsilon) const {
    double const beta = beta_weight(p, static_cast<int>(n));
    switch (regime) {
    case Regime::EtaCut: return RegimeConfig::eta_cut(epsilon, beta, eta.value_or(0.0));
    case Regime::RateCut: return RegimeConfig::rate_cut(epsilon, beta, a_prime.value_or(kDefaultAPrime));
    case Regime::ZeroSetUniform: return RegimeConfig::zero_set_uniform(epsilon, beta, grad_zero_tol);
    }
    throw ConfigError("unknown regime");
}

std::vector<double> parse_real_list(std::string const& text) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    for (auto const& tok : split(text, ',')) out.push_back(parse_real(trim(tok), "list entry"));
    return out;
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto const hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string const body = trim(line);
        if (body.empty()) continue;
        auto const eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string const key = trim(std::string_view(body).substr(0, eq));
        std::string const value = trim(std::string_view(body).substr(eq + 1));
        if (!seen.insert(key).second) throw ConfigError("line " + std::to_string(lineno) + ": repeated key " + key);

        if (key == "fn") cfg.fn_id = value;
        else if (key == "p") cfg.p = parse_real(value, key);
        else if (key == "n") cfg.n = parse_uint(value, key);
        else if (key == "eps") cfg.eps = parse_real_list(value);
        else if (key == "eta") cfg.eta = parse_real(value, key);
        else if (key == "a-prime") cfg.a_prime = parse_real(value, key);
        else if (key == "regime") {
            try {
                cfg.regime = parse_regime(value);
            } catch (ParameterError const& e) {
                throw ConfigError(e.what());
            }
        } else if (key == "samples") cfg.samples = parse_uint(value, key);
        else if (key == "seed") cfg.seed = parse_uint(value, key);
        else if (key == "workers") cfg.workers = static_cast<unsigned>(parse_uint(value, key));
        else if (key == "out") cfg.out = value;
        else if (key == "grad-zero-tol") cfg.grad_zero_tol = parse_real(value, key);
        else if (key == "step-cap") cfg.step_cap = parse_uint(value, key);
        else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(std::string const& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse_config(in);
}

void write_csv(std::ostream& out, std::vector<CsvRecord> const& rows) {
    out << kCsvHeader << '\n';
    for (auto const& r : rows) {
        std::string x0;
        for (std::size_t i = 0; i < r.x0.size(); ++i) {
            if (i) x0 += ';';
            x0 += fmt_real(r.x0[i]);
        }
        out << r.fn_id << ',' << r.regime << ',' << fmt_real(r.p) << ',' << r.n << ',' << fmt_real(r.epsilon)
            << ',' << x0 << ',' << fmt_real(r.estimate) << ',' << fmt_real(r.std_error) << ','
            << fmt_real(r.abs_error) << ',' << r.n_samples << ',' << fmt_real(r.mean_steps) << ',' << r.seed
            << '\n';
    }
}

std::vector<CsvRecord> read_csv(std::istream& in) {
    std::vector<CsvRecord> rows;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header) {
            if (line != kCsvHeader) throw ConfigError("unexpected CSV header: " + line);
            header = true;
            continue;
        }
        auto const f = split(line, ',');
        if (f.size() != 12) throw ConfigError("CSV row has " + std::to_string(f.size()) + " fields");
        CsvRecord r;
        r.fn_id = f[0];
        r.regime = f[1];
        r.p = parse_real(f[2], "p");
        r.n = parse_uint(f[3], "n");
        r.epsilon = parse_real(f[4], "epsilon");
        for (auto const& c : split(f[5], ';')) r.x0.push_back(parse_real(c, "x0"));
        r.estimate = parse_real(f[6], "estimate");
        r.std_error = parse_real(f[7], "stderr");
        r.abs_error = parse_real(f[8], "abs_error");
        r.n_samples = parse_uint(f[9], "n_samples");
        r.mean_steps = parse_real(f[10], "mean_steps");
        r.seed = parse_uint(f[11], "seed");
        rows.push_back(std::move(r));
    }
    if (!header) throw ConfigError("CSV has no header");
    return rows;
}

ResidualSummary residual_order_check(TestFunction const& fn, Point const& x, double p,
                                     std::vector<double> const& eps) {
    constexpr double kFloor = 1e-13;
    ResidualSummary s;
    s.ran = true;
    s.x = x;
    s.eps = eps;
    for (double e : eps) s.residuals.push_back(dpp_residual(fn, x, e, p));
    for (std::size_t i = 1; i < s.residuals.size(); ++i) {
        double const prev = s.residuals[i - 1], cur = s.residuals[i];
        if (prev < kFloor && cur < kFloor) {
            s.ratios.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        double const ratio = cur > 0.0 ? prev / cur : std::numeric_limits<double>::infinity();
        s.ratios.push_back(ratio);
        if (!(ratio >= 7.0)) s.passed = false;
    }
    return s;
}

std::string ExperimentReport::summary_line() const {
    double worst_err = 0.0;
    for (auto const& s : sweep) worst_err = std::max(worst_err, s.sup_error);
    std::ostringstream os;
    os << (passed ? "PASS" : "FAIL") << " worst_margin=" << fmt_real(drift.worst_margin)
       << " max_sup_error=" << fmt_real(worst_err);
    if (fitted_rate) os << " rate=" << fmt_real(*fitted_rate);
    return os.str();
}

ExperimentReport run_experiment(ExperimentConfig const& cfg) {
    cfg.validate();
    TestFunction const fn = TestFunction::from_id(cfg.fn_id, cfg.n, cfg.p);
    std::vector<Point> const grid = default_grid(cfg.n);
    EstimateOptions const opts{cfg.workers, cfg.step_cap};

    ExperimentReport rep;
    for (std::size_t k = 0; k < cfg.eps.size(); ++k) {
        double const eps = cfg.eps[k];
        std::uint64_t const cell_seed = mix_seed(cfg.seed, 1000 + k);
        SupErrorResult sup;
        try {
            sup = sup_error(fn, cfg.regime_for(eps), grid, cfg.samples, cell_seed, opts);
        } catch (std::exception const& e) {
            throw std::runtime_error("sweep cell eps=" + fmt_real(eps) + ": " + e.what());
        }
        rep.sweep.push_back({eps, sup.sup_error, sup.max_std_error, cfg.regime, cfg.fn_id, cfg.p, cfg.n,
                             cfg.samples, cell_seed});
        for (std::size_t i = 0; i < grid.size(); ++i) {
            auto const& est = sup.estimates[i];
            auto const c = grid[i].coords();
            rep.rows.push_back({cfg.fn_id, to_string(cfg.regime), cfg.p, cfg.n, eps,
                                std::vector<double>(c.begin(), c.end()), est.mean, est.std_error,
                                std::abs(est.mean - fn.eval(grid[i])), est.n_samples, est.mean_steps, est.seed});
        }
    }

    std::vector<double> fit_eps, fit_err;
    for (auto const& s : rep.sweep) {
        if (s.sup_error > kSignalToNoise * s.max_std_error && s.sup_error > 0.0) {
            fit_eps.push_back(s.epsilon);
            fit_err.push_back(s.sup_error);
        }
    }
    if (fit_eps.size() >= 3) rep.fitted_rate = fit_rate(fit_eps, fit_err);

    int const dims[] = {static_cast<int>(cfg.n)};
    rep.drift = run_drift_suite(dims, 200, cfg.seed);

    if (cfg.n > 4) {
        rep.residual.note = "skipped: no deterministic ball rule for n > 4";
    } else if (auto x = residual_point(fn)) {
        rep.residual = residual_order_check(fn, *x, cfg.p, {0.1, 0.05, 0.025, 0.0125});
    } else {
        rep.residual.note = "skipped: gradient vanishes at every grid point";
    }

    rep.passed = rep.drift.violations == 0 && rep.residual.passed;

    if (!cfg.out.empty()) {
        std::ofstream out(cfg.out);
        if (!out) throw ConfigError("cannot write " + cfg.out);
        write_csv(out, rep.rows);
        for (auto const& s : rep.sweep)
            out << "# sweep eps=" << fmt_real(s.epsilon) << " sup_error=" << fmt_real(s.sup_error)
                << " max_stderr=" << fmt_real(s.max_std_error) << '\n';
        out << "# rate " << (rep.fitted_rate ? fmt_real(*rep.fitted_rate) : std::string("not-fitted")) << '\n';
        out << "# drift count=" << rep.drift.count << " violations=" << rep.drift.violations
            << " worst_margin=" << fmt_real(rep.drift.worst_margin) << '\n';
        out << "# residual " << (rep.residual.ran ? (rep.residual.passed ? "pass" : "fail") : rep.residual.note);
        for (double r : rep.residual.ratios) out << ' ' << fmt_real(r);
        out << '\n';
        out << "# " << rep.summary_line() << '\n';
    }
    return rep;
}

}  // namespace gradwalk
