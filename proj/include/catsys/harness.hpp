#pragma once

#include "catsys/constructions.hpp"
#include "catsys/elliptic.hpp"
#include "catsys/systole.hpp"
#include "catsys/volume.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <random>

namespace catsys {

// One-dimensional parameter grid: either an arithmetic progression
// start..stop (by step or by count, endpoints included) or an explicit
// list of values.
struct GridSpec {
    std::optional<Rational> start, stop, step;
    std::optional<long> count;
    std::vector<Rational> explicit_values;

    static GridSpec counted(Rational start, Rational stop, long count);
    static GridSpec list(std::vector<Rational> values);
    std::vector<Rational> points() const;
};

struct LatticeSpec {
    std::optional<long> n;                   // rank one (2n)
    std::optional<std::vector<IVec>> gram;   // explicit Gram matrix
    NSLattice build() const;
    int rank() const;
};

struct SweepConfig {
    LatticeSpec lattice;                   // default: n = 1
    bool lattice_explicit = false;         // set when the config named a lattice
    GridSpec beta_grid;                    // default: -2..2, 50 points
    GridSpec omega_grid;                   // default: 1/20..3, 50 points
    IVec beta_dir, omega_dir;              // default: e_1
    std::uint64_t seed = 1;
    long trials = 1000;
    long minkowski_trials = 20;
    bool chamber = false;                  // run the bounded chamber heuristic per row
    Rational chamber_radius = 64;          // Q-ball radius of that search
    std::vector<long> ns{1, 2, 5};         // constructions suite
    std::vector<std::vector<IVec>> minkowski_grams;  // default: (2) and [[2,1],[1,-2]]
    // sph command
    long sph_n = 1;
    Rational sph_beta = 0;
    GridSpec sph_omegas;                   // default: {2, 5, 10}
    // hermite command
    HermiteGrid hermite;

    SweepConfig();
};

SweepConfig parse_config(const nlohmann::json& j);
SweepConfig load_config(const std::string& path);

struct SweepRow {
    Rational beta_t, omega_t;
    Rational sys_sq, vol, ratio, bound;
    MukaiVector argmin;
    bool pass = false;
    // chamber heuristic verdict: unset = not run, nullopt inside = inconclusive
    std::optional<std::optional<MukaiVector>> chamber;
};

// Systole/volume sweep over the (beta, omega) grid, row-major, one
// certificate per point.  With oracle set, every certificate is replayed
// against the brute-force box scan (throws std::logic_error on mismatch).
// threads = 0 picks a default; output order is independent of threading.
std::vector<SweepRow> run_scan(const SweepConfig& cfg, int threads, bool oracle,
                               const std::optional<Rational>& bound_override = {});

// Ratio bound the sweep is checked against: 4(n+1) on a rank-one lattice,
// the general ((rho+2)!)^2 |disc| / 2^rho + 4 otherwise.
Rational scan_bound(const NSLattice& L);

void write_rows_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_rows_jsonl(std::ostream& out, const std::vector<SweepRow>& rows);

// Deterministic per-trial RNG: mt19937_64 seeded from splitmix64(seed, index).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);
// Bounded random rational in [lo, hi]: denominator q uniform in [1, max_den],
// then numerator uniform among p with lo <= p/q <= hi.
Rational random_rational(std::mt19937_64& g, const Rational& lo, const Rational& hi,
                         long max_den);

struct CommandOptions {
    SweepConfig config;
    std::string format = "csv";  // "csv" | "jsonl"
    bool oracle = false;
    bool deep = false;           // extend omega grid down to 1/100
    std::optional<Rational> bound_override;
    int threads = 0;
};

// Exit-status contract for all commands: 0 iff every check passed.
int cmd_scan(const CommandOptions& opt, std::ostream& data, std::ostream& log);
int cmd_verify(const CommandOptions& opt, std::ostream& log);
int cmd_sph(const CommandOptions& opt, std::ostream& data, std::ostream& log);
int cmd_constructions(const CommandOptions& opt, std::ostream& log);
int cmd_hermite(const CommandOptions& opt, std::ostream& data, std::ostream& log);

}  // namespace catsys
