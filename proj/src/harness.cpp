#include "catsys/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

namespace catsys {

namespace {

using nlohmann::json;

Rational rat_from_json(const json& j, const char* where) {
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument(std::string("config: ") + where +
                                " must be an integer or a rational string");
}

GridSpec grid_from_json(const json& j, const char* where) {
    GridSpec g;
    if (j.contains("values")) {
        for (const auto& v : j.at("values")) g.explicit_values.push_back(rat_from_json(v, where));
        if (g.explicit_values.empty())
            throw std::invalid_argument(std::string("config: empty values list for ") + where);
        return g;
    }
    g.start = rat_from_json(j.at("start"), where);
    g.stop = rat_from_json(j.at("stop"), where);
    if (j.contains("step")) g.step = rat_from_json(j.at("step"), where);
    if (j.contains("count")) g.count = j.at("count").get<long>();
    return g;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

json rat_json(const Rational& x) {
    json j;
    const mpz_class& num = x.get_num();
    const mpz_class& den = x.get_den();
    if (num.fits_slong_p())
        j["num"] = num.get_si();
    else
        j["num"] = num.get_str();
    if (den.fits_slong_p())
        j["den"] = den.get_si();
    else
        j["den"] = den.get_str();
    return j;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct CheckLog {
    std::ostream& log;
    int failures = 0;

    void operator()(const std::string& name, const std::string& observed,
                    const std::string& bound, const std::string& margin, bool ok) {
        log << "CHECK " << name << ": observed=" << observed << " bound=" << bound
            << " margin=" << margin << " -> " << (ok ? "PASS" : "FAIL") << "\n";
        if (!ok) ++failures;
    }
};

GridSpec deepen(GridSpec g) {
    Rational floor = make_rational(1, 100);
    if (!g.explicit_values.empty()) return g;
    if (g.start && *g.start > floor) g.start = floor;
    return g;
}

double dmat_det(std::vector<std::vector<double>> a) {
    const int n = static_cast<int>(a.size());
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (a[piv][k] == 0) return 0.0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (int i = k + 1; i < n; ++i) {
            double f = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

}  // namespace

GridSpec GridSpec::counted(Rational start, Rational stop, long count) {
    GridSpec g;
    g.start = std::move(start);
    g.stop = std::move(stop);
    g.count = count;
    return g;
}

GridSpec GridSpec::list(std::vector<Rational> values) {
    GridSpec g;
    g.explicit_values = std::move(values);
    return g;
}

std::vector<Rational> GridSpec::points() const {
    if (!explicit_values.empty()) return explicit_values;
    if (!start || !stop) throw std::invalid_argument("grid: start/stop required");
    if (step && count) throw std::invalid_argument("grid: give step or count, not both");
    std::vector<Rational> pts;
    if (step) {
        if (*step <= 0) throw std::invalid_argument("grid: step must be positive");
        if (*stop < *start) throw std::invalid_argument("grid: stop < start");
        for (Rational x = *start; x <= *stop; x += *step) {
            pts.push_back(x);
            if (pts.size() > 2000000) throw std::invalid_argument("grid: too many points");
        }
        return pts;
    }
    if (!count) throw std::invalid_argument("grid: step or count required");
    if (*count < 1) throw std::invalid_argument("grid: count must be >= 1");
    if (*count == 1) {
        pts.push_back(*start);
        return pts;
    }
    Rational h = (*stop - *start) / Rational(*count - 1);
    for (long i = 0; i < *count; ++i) pts.push_back(*start + h * i);
    return pts;
}

NSLattice LatticeSpec::build() const {
    if (n && gram) throw std::invalid_argument("lattice: give n or gram, not both");
    if (gram) return NSLattice(*gram);
    if (n) return NSLattice::rank_one(*n);
    throw std::invalid_argument("lattice: missing n or gram");
}

int LatticeSpec::rank() const {
    if (gram) return static_cast<int>(gram->size());
    return 1;
}

SweepConfig::SweepConfig() {
    lattice.n = 1;
    beta_grid = GridSpec::counted(Rational(-2), Rational(2), 50);
    omega_grid = GridSpec::counted(make_rational(1, 20), Rational(3), 50);
    beta_dir = IVec{Integer(1)};
    omega_dir = IVec{Integer(1)};
    minkowski_grams = {{{Integer(2)}},
                       {{Integer(2), Integer(1)}, {Integer(1), Integer(-2)}}};
    sph_omegas = GridSpec::list({Rational(2), Rational(5), Rational(10)});
}

SweepConfig parse_config(const json& j) {
    SweepConfig cfg;
    if (j.contains("lattice")) {
        const auto& l = j.at("lattice");
        cfg.lattice = LatticeSpec{};
        cfg.lattice_explicit = true;
        if (l.contains("n")) cfg.lattice.n = l.at("n").get<long>();
        if (l.contains("gram")) {
            std::vector<IVec> g;
            for (const auto& row : l.at("gram")) {
                IVec r;
                for (const auto& x : row) r.push_back(Integer(std::to_string(x.get<long long>())));
                g.push_back(std::move(r));
            }
            cfg.lattice.gram = std::move(g);
        }
        cfg.lattice.build();  // validate early
        const int rho = cfg.lattice.rank();
        cfg.beta_dir.assign(rho, Integer(0));
        cfg.omega_dir.assign(rho, Integer(0));
        cfg.beta_dir[0] = 1;
        cfg.omega_dir[0] = 1;
    }
    auto parse_dir = [&](const char* key, IVec& dir) {
        if (!j.contains(key)) return;
        dir.clear();
        for (const auto& x : j.at(key)) dir.push_back(Integer(std::to_string(x.get<long long>())));
        if (static_cast<int>(dir.size()) != cfg.lattice.rank())
            throw std::invalid_argument(std::string("config: ") + key + " length != rank");
    };
    parse_dir("beta_dir", cfg.beta_dir);
    parse_dir("omega_dir", cfg.omega_dir);
    if (j.contains("beta")) cfg.beta_grid = grid_from_json(j.at("beta"), "beta");
    if (j.contains("omega")) cfg.omega_grid = grid_from_json(j.at("omega"), "omega");
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<long>();
    if (j.contains("minkowski_trials")) cfg.minkowski_trials = j.at("minkowski_trials").get<long>();
    if (j.contains("chamber")) cfg.chamber = j.at("chamber").get<bool>();
    if (j.contains("chamber_radius")) {
        cfg.chamber_radius = rat_from_json(j.at("chamber_radius"), "chamber_radius");
        if (cfg.chamber_radius < 0)
            throw std::invalid_argument("config: chamber_radius must be >= 0");
    }
    if (j.contains("ns")) {
        cfg.ns.clear();
        for (const auto& x : j.at("ns")) cfg.ns.push_back(x.get<long>());
        if (cfg.ns.empty()) throw std::invalid_argument("config: ns must be nonempty");
    }
    if (j.contains("sph")) {
        const auto& s = j.at("sph");
        if (s.contains("n")) cfg.sph_n = s.at("n").get<long>();
        if (s.contains("beta")) cfg.sph_beta = rat_from_json(s.at("beta"), "sph.beta");
        if (s.contains("omegas")) cfg.sph_omegas = grid_from_json(s.at("omegas"), "sph.omegas");
    }
    if (j.contains("hermite")) {
        const auto& h = j.at("hermite");
        if (h.contains("beta_steps")) cfg.hermite.beta_steps = h.at("beta_steps").get<int>();
        if (h.contains("omega_steps")) cfg.hermite.omega_steps = h.at("omega_steps").get<int>();
        if (h.contains("omega_max"))
            cfg.hermite.omega_max = rat_from_json(h.at("omega_max"), "hermite.omega_max");
        if (h.contains("boundary_scale"))
            cfg.hermite.boundary_scale = h.at("boundary_scale").get<long>();
    }
    return cfg;
}

SweepConfig load_config(const std::string& path) {
    if (path.empty()) return SweepConfig{};
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j = json::parse(in);
    return parse_config(j);
}

Rational scan_bound(const NSLattice& L) {
    if (L.rank() == 1) {
        // gram = (2n): the rank-one bound 4(n+1)
        Integer n2 = L.gram(0, 0);
        return Rational(2 * n2 + 4);
    }
    return theorem_constants(L.rank(), L.discriminant()).k3_general;
}

std::vector<SweepRow> run_scan(const SweepConfig& cfg, int threads, bool oracle,
                               const std::optional<Rational>& bound_override) {
    NSLattice L = cfg.lattice.build();
    const int rho = L.rank();
    if (static_cast<int>(cfg.beta_dir.size()) != rho ||
        static_cast<int>(cfg.omega_dir.size()) != rho)
        throw std::invalid_argument("run_scan: direction vectors must match rank");
    {
        QVec wd(rho);
        for (int i = 0; i < rho; ++i) wd[i] = Rational(cfg.omega_dir[i]);
        if (L.ns_pairing(wd, wd) <= 0)
            throw std::invalid_argument("run_scan: omega_dir must have positive square");
    }
    Rational bound = bound_override ? *bound_override : scan_bound(L);

    std::vector<Rational> betas = cfg.beta_grid.points();
    std::vector<Rational> omegas = cfg.omega_grid.points();
    for (const auto& w : omegas)
        if (w <= 0) throw std::invalid_argument("run_scan: omega grid values must be positive");

    const std::size_t nrows = betas.size() * omegas.size();
    std::vector<SweepRow> rows(nrows);

    int nth = threads > 0 ? threads
                          : std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 8);
    nth = std::max(1, std::min<int>(nth, static_cast<int>(nrows)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;

    auto worker = [&]() {
        try {
            for (;;) {
                std::size_t idx = next.fetch_add(1);
                if (idx >= nrows) return;
                const Rational& bt = betas[idx / omegas.size()];
                const Rational& wt = omegas[idx % omegas.size()];
                QVec beta(rho), omega(rho);
                for (int i = 0; i < rho; ++i) {
                    beta[i] = Rational(cfg.beta_dir[i]) * bt;
                    omega[i] = Rational(cfg.omega_dir[i]) * wt;
                }
                StabilityPoint p(L, beta, omega);
                SystoleCertificate cert = systole(p);
                SweepRow& row = rows[idx];
                row.beta_t = bt;
                row.omega_t = wt;
                row.sys_sq = cert.sys_sq;
                row.vol = volume_k3_closed(p);
                row.ratio = row.sys_sq / row.vol;
                row.argmin = cert.argmin;
                row.bound = bound;
                row.pass = row.ratio <= bound;
                if (cfg.chamber) row.chamber = chamber_violator(p, cfg.chamber_radius);
                if (oracle) {
                    IVec box = q_sigma(p).ball_box(cert.q_bound);
                    Rational bf = systole_bruteforce(p, box);
                    if (bf != cert.sys_sq)
                        throw std::logic_error("run_scan: oracle disagrees with certificate at "
                                               "beta=" + rational_str(bt) +
                                               " omega=" + rational_str(wt));
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(err_mutex);
            if (!first_error) first_error = std::current_exception();
            next.store(nrows);  // stop other workers
        }
    };

    if (nth == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nth);
        for (int i = 0; i < nth; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

void write_rows_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    bool with_chamber = false;
    for (const auto& r : rows)
        if (r.chamber) with_chamber = true;
    out << "beta,omega,sys_sq,vol,ratio,ratio_float,argmin,bound,pass";
    if (with_chamber) out << ",chamber";
    out << '\n';
    for (const auto& r : rows) {
        out << rational_str(r.beta_t) << ',' << rational_str(r.omega_t) << ','
            << rational_str(r.sys_sq) << ',' << rational_str(r.vol) << ','
            << rational_str(r.ratio) << ',' << format_double(to_double(r.ratio)) << ',';
        out << '"';
        IVec c = r.argmin.coords();
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) out << ',';
            out << c[i].get_str();
        }
        out << '"';
        out << ',' << rational_str(r.bound) << ',' << (r.pass ? "true" : "false");
        if (with_chamber) {
            if (!r.chamber) {
                out << ',';
            } else if (!r.chamber->has_value()) {
                out << ",inconclusive";
            } else {
                out << ",\"violator:";
                IVec d = (*r.chamber)->coords();
                for (std::size_t i = 0; i < d.size(); ++i) {
                    if (i) out << ',';
                    out << d[i].get_str();
                }
                out << '"';
            }
        }
        out << '\n';
    }
}

void write_rows_jsonl(std::ostream& out, const std::vector<SweepRow>& rows) {
    for (const auto& r : rows) {
        json j;
        j["beta"] = rat_json(r.beta_t);
        j["omega"] = rat_json(r.omega_t);
        j["sys_sq"] = rat_json(r.sys_sq);
        j["vol"] = rat_json(r.vol);
        j["ratio"] = rat_json(r.ratio);
        j["ratio_float"] = to_double(r.ratio);
        json am = json::array();
        for (const auto& x : r.argmin.coords()) {
            if (x.fits_slong_p())
                am.push_back(x.get_si());
            else
                am.push_back(x.get_str());
        }
        j["argmin"] = am;
        j["bound"] = rat_json(r.bound);
        j["pass"] = r.pass;
        if (r.chamber) {
            if (!r.chamber->has_value()) {
                j["chamber"] = "inconclusive";
            } else {
                json cls = json::array();
                for (const auto& x : (*r.chamber)->coords()) cls.push_back(x.get_si());
                j["chamber"] = {{"verdict", "violator"}, {"class", cls}};
            }
        }
        out << j.dump() << '\n';
    }
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index)));
}

Rational random_rational(std::mt19937_64& g, const Rational& lo, const Rational& hi,
                         long max_den) {
    if (hi < lo) throw std::invalid_argument("random_rational: hi < lo");
    if (max_den < 1) throw std::invalid_argument("random_rational: max_den < 1");
    std::uniform_int_distribution<long> den_dist(1, max_den);
    long q = den_dist(g);
    Integer pmin = ceil_q(lo * q);
    Integer pmax = floor_q(hi * q);
    if (pmax < pmin) return lo;  // interval too narrow for this q; degrade gracefully
    std::uniform_int_distribution<long> num_dist(static_cast<long>(pmin.get_si()),
                                                 static_cast<long>(pmax.get_si()));
    return make_rational(Integer(num_dist(g)), Integer(q));
}

int cmd_scan(const CommandOptions& opt, std::ostream& data, std::ostream& log) {
    SweepConfig cfg = opt.config;
    if (opt.deep) cfg.omega_grid = deepen(cfg.omega_grid);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<SweepRow> rows = run_scan(cfg, opt.threads, opt.oracle, opt.bound_override);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (opt.format == "jsonl")
        write_rows_jsonl(data, rows);
    else
        write_rows_csv(data, rows);

    std::size_t failures = 0, violators = 0;
    Rational max_ratio(-1);
    for (const auto& r : rows) {
        if (!r.pass) ++failures;
        if (r.ratio > max_ratio) max_ratio = r.ratio;
        if (r.chamber && r.chamber->has_value()) ++violators;
    }
    log << "scan: " << rows.size() << " rows, " << failures << " bound failures, max ratio "
        << rational_str(max_ratio) << " (" << format_double(to_double(max_ratio)) << "), "
        << format_double(dt) << " s" << (opt.oracle ? ", oracle on" : "");
    if (cfg.chamber)
        log << ", chamber: " << violators << " violators / "
            << rows.size() - violators << " inconclusive";
    log << "\n";
    return failures == 0 ? 0 : 1;
}

int cmd_verify(const CommandOptions& opt, std::ostream& log) {
    CheckLog check{log};
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);

    {
        SweepConfig cfg = opt.config;
        HermiteScanResult hs = hermite_scan(cfg.hermite);
        double observed = hs.max_ratio_d();
        if (opt.bound_override) {
            bool ok = hs.max_ratio < *opt.bound_override;
            check("elliptic.max_ratio", rational_str(hs.max_ratio),
                  rational_str(*opt.bound_override),
                  rational_str(*opt.bound_override - hs.max_ratio), ok);
        } else {
            double bound = inv_sqrt3 + 1e-12;
            check("elliptic.max_ratio", format_double(observed), format_double(bound),
                  format_double(bound - observed), observed <= bound);
            double lower = inv_sqrt3 - 1e-3;
            check("elliptic.max_ratio_attained", format_double(observed), format_double(lower),
                  format_double(observed - lower), observed >= lower);
        }
    }

    auto k3_suite = [&](const SweepConfig& cfg, const std::string& tag) {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<SweepRow> rows = run_scan(cfg, opt.threads, opt.oracle, opt.bound_override);
        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        Rational max_ratio(-1);
        std::size_t failures = 0;
        for (const auto& r : rows) {
            if (!r.pass) ++failures;
            if (r.ratio > max_ratio) max_ratio = r.ratio;
        }
        Rational bound = rows.empty() ? Rational(0) : rows.front().bound;
        check("k3." + tag + ".ratio_below_bound", rational_str(max_ratio), rational_str(bound),
              rational_str(bound - max_ratio), failures == 0);
        log << "  (" << tag << ": " << rows.size() << " points, " << format_double(dt) << " s)\n";
    };

    if (opt.config.lattice_explicit) {
        SweepConfig cfg = opt.config;
        if (opt.deep) cfg.omega_grid = deepen(cfg.omega_grid);
        k3_suite(cfg, cfg.lattice.gram ? "gram" : "n=" + std::to_string(*cfg.lattice.n));
    } else {
        for (long n : {1L, 2L, 3L}) {
            SweepConfig cfg = opt.config;
            if (opt.deep) cfg.omega_grid = deepen(cfg.omega_grid);
            cfg.lattice.n = n;
            cfg.lattice.gram.reset();
            k3_suite(cfg, "n=" + std::to_string(n));
        }
    }

    log << "verify: " << check.failures << " failed checks\n";
    return check.failures == 0 ? 0 : 1;
}

int cmd_sph(const CommandOptions& opt, std::ostream& data, std::ostream& log) {
    const SweepConfig& cfg = opt.config;
    std::vector<Rational> omegas = cfg.sph_omegas.points();
    std::vector<Rational> ratios;
    ratios.reserve(omegas.size());
    for (const auto& w : omegas) {
        auto r = spherical_systole_rank_one(cfg.sph_n, cfg.sph_beta, w);
        if (!r) throw std::logic_error("cmd_sph: unreachable, default search always succeeds");
        ratios.push_back(*r);
    }

    if (opt.format == "jsonl") {
        for (std::size_t i = 0; i < omegas.size(); ++i) {
            json j;
            j["omega"] = rat_json(omegas[i]);
            j["ratio"] = rat_json(ratios[i]);
            j["ratio_float"] = to_double(ratios[i]);
            data << j.dump() << '\n';
        }
    } else {
        data << "omega,ratio,ratio_float\n";
        for (std::size_t i = 0; i < omegas.size(); ++i)
            data << rational_str(omegas[i]) << ',' << rational_str(ratios[i]) << ','
                 << format_double(to_double(ratios[i])) << '\n';
    }

    CheckLog check{log};
    bool monotone = true;
    for (std::size_t i = 1; i < ratios.size(); ++i)
        if (!(ratios[i] > ratios[i - 1])) monotone = false;
    check("sph.monotone_growth", monotone ? "strict" : "violated", "strict", "-", monotone);
    Rational wall(4 * (cfg.sph_n + 1));
    if (!ratios.empty()) {
        const Rational& last = ratios.back();
        check("sph.exceeds_rank_one_bound", rational_str(last), rational_str(wall),
              rational_str(last - wall), last > wall);
    }
    return check.failures == 0 ? 0 : 1;
}

int cmd_constructions(const CommandOptions& opt, std::ostream& log) {
    const SweepConfig& cfg = opt.config;
    CheckLog check{log};

    long dirichlet_branch = 0, skyscraper_branch = 0, failures = 0;
    for (long t = 0; t < cfg.trials; ++t) {
        std::mt19937_64 g = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
        long n = cfg.ns[static_cast<std::size_t>(t) % cfg.ns.size()];
        Rational beta = random_rational(g, Rational(-5), Rational(5), 100);
        Rational omega = random_rational(g, make_rational(1, 100), Rational(2), 100);
        try {
            RankOneWitness w = rank_one_witness(n, beta, omega);
            if (w.skyscraper)
                ++skyscraper_branch;
            else
                ++dirichlet_branch;
            if (!(w.ratio < Rational(n + 1)))
                throw std::logic_error("witness ratio not below n+1");
        } catch (const std::exception& e) {
            ++failures;
            if (failures <= 5)
                log << "  trial " << t << " (n=" << n << ", beta=" << rational_str(beta)
                    << ", omega=" << rational_str(omega) << "): " << e.what() << "\n";
        }
    }
    check("constructions.rank_one_witness",
          std::to_string(cfg.trials - failures) + "/" + std::to_string(cfg.trials),
          std::to_string(cfg.trials) + "/" + std::to_string(cfg.trials), "-", failures == 0);
    log << "  (dirichlet branch " << dirichlet_branch << ", skyscraper branch "
        << skyscraper_branch << ")\n";

    long mk_fail = 0, mk_total = 0;
    for (std::size_t li = 0; li < cfg.minkowski_grams.size(); ++li) {
        NSLattice L(cfg.minkowski_grams[li]);
        const int rho = L.rank();
        for (long t = 0; t < cfg.minkowski_trials; ++t) {
            ++mk_total;
            std::mt19937_64 g =
                trial_rng(cfg.seed ^ 0x6d696e6bULL, li * 1000 + static_cast<std::uint64_t>(t));
            try {
                QVec beta(rho), omega(rho);
                for (int i = 0; i < rho; ++i)
                    beta[i] = random_rational(g, Rational(-2), Rational(2), 20);
                for (int tries = 0;; ++tries) {
                    omega[0] = random_rational(g, make_rational(1, 2), Rational(2), 20);
                    for (int i = 1; i < rho; ++i)
                        omega[i] = random_rational(g, Rational(-1), Rational(1), 20);
                    if (L.ns_pairing(omega, omega) >= 1) break;
                    if (tries > 256)
                        throw std::logic_error("could not sample omega with omega^2 >= 1");
                }
                StabilityPoint p(L, beta, omega);
                MinkowskiWitness wit = minkowski_witness(p);

                // independent exact re-check of the witness conditions
                ComplexRational Z = central_charge(p, wit.v);
                if (Z.im * Z.im > wit.body.c_sq * p.omega_sq())
                    throw std::logic_error("witness violates the Im bound");
                if (Z.re * Z.re > 2 * p.omega_sq())
                    throw std::logic_error("witness violates the Re bound");
                if (mukai_square(L, wit.v) < -2)
                    throw std::logic_error("witness violates v^2 >= -2");

                // determinant: numeric |det M| against the exact formula
                std::vector<std::vector<double>> M(rho + 2, std::vector<double>(rho + 2));
                for (int i = 0; i < rho + 2; ++i)
                    for (int k = 0; k < rho + 2; ++k) M[i][k] = wit.body.columns[k][i];
                double det = std::abs(dmat_det(M));
                double expect = std::sqrt(to_double(wit.body.det_sq));
                if (std::abs(det - expect) > 1e-6 * expect)
                    throw std::logic_error("numeric det disagrees with exact formula");
                double fact = 1;
                for (int i = 2; i <= rho + 2; ++i) fact *= i;
                if (!(det > fact)) throw std::logic_error("det(M) not above (rho+2)!");
            } catch (const std::exception& e) {
                ++mk_fail;
                if (mk_fail <= 5)
                    log << "  minkowski lattice " << li << " trial " << t << ": " << e.what()
                        << "\n";
            }
        }
    }
    check("constructions.minkowski_witness",
          std::to_string(mk_total - mk_fail) + "/" + std::to_string(mk_total),
          std::to_string(mk_total) + "/" + std::to_string(mk_total), "-", mk_fail == 0);

    return check.failures == 0 ? 0 : 1;
}

int cmd_hermite(const CommandOptions& opt, std::ostream& data, std::ostream& log) {
    const HermiteGrid& grid = opt.config.hermite;
    HermiteScanResult global = hermite_scan(grid);

    // per-beta row maxima, written as a compact profile of the domain
    bool csv = opt.format != "jsonl";
    if (csv) data << "beta,omega,max_ratio,max_ratio_float\n";
    Rational seen_max(-1);
    for (int i = 0; i < grid.beta_steps; ++i) {
        Rational beta = make_rational(Integer(2 * i - (grid.beta_steps - 1)),
                                      Integer(2 * (grid.beta_steps - 1)));
        Rational omega_lo = hermite_omega_floor(beta, grid.boundary_scale);
        Rational step = (grid.omega_max - omega_lo) / (grid.omega_steps - 1);
        Rational row_max(-1), row_arg(0);
        for (int jj = 0; jj < grid.omega_steps; ++jj) {
            Rational w = omega_lo + step * jj;
            Rational ratio = elliptic_ratio(TauPoint{beta, w});
            if (ratio > row_max) {
                row_max = ratio;
                row_arg = w;
            }
        }
        if (row_max > seen_max) seen_max = row_max;
        if (csv) {
            data << rational_str(beta) << ',' << rational_str(row_arg) << ','
                 << rational_str(row_max) << ',' << format_double(to_double(row_max)) << '\n';
        } else {
            json j;
            j["beta"] = rat_json(beta);
            j["omega"] = rat_json(row_arg);
            j["max_ratio"] = rat_json(row_max);
            j["max_ratio_float"] = to_double(row_max);
            data << j.dump() << '\n';
        }
    }

    CheckLog check{log};
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    double observed = global.max_ratio_d();
    if (opt.bound_override) {
        check("hermite.max_ratio", rational_str(global.max_ratio),
              rational_str(*opt.bound_override),
              rational_str(*opt.bound_override - global.max_ratio),
              global.max_ratio < *opt.bound_override);
    } else {
        double bound = inv_sqrt3 + 1e-12;
        check("hermite.max_ratio", format_double(observed), format_double(bound),
              format_double(bound - observed), observed <= bound);
        double lower = inv_sqrt3 - 1e-3;
        check("hermite.max_ratio_attained", format_double(observed), format_double(lower),
              format_double(observed - lower), observed >= lower);
    }
    check("hermite.rows_consistent", rational_str(seen_max), rational_str(global.max_ratio),
          "0", seen_max == global.max_ratio);
    log << "hermite: argmax tau = " << rational_str(global.argmax.beta) << " + "
        << rational_str(global.argmax.omega) << " i over " << global.points << " points\n";
    return check.failures == 0 ? 0 : 1;
}

}  // namespace catsys
