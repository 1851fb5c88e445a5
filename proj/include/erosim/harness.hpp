#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "erosim/state.hpp"

namespace erosim {

// Two-sample Kolmogorov-Smirnov distance. Throws on empty input.
double ks_statistic(std::vector<double> a, std::vector<double> b);
// 5% two-sample band, 1.36 sqrt((na + nb) / (na nb)).
double ks_band(std::size_t na, std::size_t nb);

enum class ExperimentKind { Support, Microstep, Killed, Oracle };

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Support;
    std::vector<std::int64_t> budgets; // particle counts (Support) or microsteps (Microstep); rows per budget
    std::uint64_t trials = 1;
    std::uint64_t masterSeed = 0;
    Mode mode = Mode::Exact;
    std::size_t runs = 2;              // E(1..k), W(1..k) columns; oracle k
    std::int64_t L = 1;                // Killed
    std::size_t mSteps = 1'000'000;    // Oracle
    unsigned workers = 0;              // 0: worker_count()
    std::string checkpointPrefix;      // Support/Microstep, single trial only
    std::int64_t checkpointEvery = 0;

    void validate() const;
    std::string describe() const;
};

// Header plus rows of numbers; column names follow the experiment kind.
struct Table {
    std::string comment;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows; // cells as written, so 64-bit seeds survive

    std::size_t column(const std::string& name) const;
    std::vector<double> values(const std::string& name) const;
    void write_csv(std::ostream& os) const;
    static Table read_csv(std::istream& is);
};

// Rows are ordered by trial, then budget; the result does not depend on the
// worker count.
Table run_experiment(const ExperimentConfig& cfg);

struct Comparison {
    std::string empirical, limit;
    double D = 0;
    std::size_t nEmpirical = 0, nLimit = 0;
    double tolerance = 0;
    double baseline = 0; // split-half KS of the limit column
    bool pass = false;
};

// Pairs of (empirical column, limit column), each checked against `tolerance`.
std::vector<Comparison> compare_to_limit(const Table& empirical, const Table& limit,
                                         const std::vector<std::pair<std::string, std::string>>& pairs,
                                         double tolerance);

// Full state checkpoint: "EROSIM-CKPT v1" header, crc32 and length, then a
// text payload. Hooks (trajectory, sink) are not saved.
void write_checkpoint(std::ostream& os, const ErosionState& s);
ErosionState read_checkpoint(std::istream& is);
void save_checkpoint(const std::string& path, const ErosionState& s);
ErosionState load_checkpoint(const std::string& path);

} // namespace erosim
