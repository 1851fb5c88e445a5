#include "erosim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <zlib.h>

#include "erosim/killed.hpp"
#include "erosim/oracle.hpp"
#include "erosim/parallel.hpp"
#include "erosim/stats.hpp"

namespace erosim {

double ks_statistic(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x)
            ++i;
        while (j < b.size() && b[j] == x)
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_band(std::size_t na, std::size_t nb)
{
    double a = static_cast<double>(na), b = static_cast<double>(nb);
    return 1.36 * std::sqrt((a + b) / (a * b));
}

void ExperimentConfig::validate() const
{
    if (trials == 0)
        throw std::invalid_argument("trials must be positive");
    if (kind == ExperimentKind::Support || kind == ExperimentKind::Microstep) {
        if (budgets.empty())
            throw std::invalid_argument("need at least one budget");
        for (std::size_t i = 0; i < budgets.size(); ++i)
            if (budgets[i] <= 0 || (i > 0 && budgets[i] <= budgets[i - 1]))
                throw std::invalid_argument("budgets must be positive and increasing");
        if (checkpointEvery < 0)
            throw std::invalid_argument("checkpoint interval must be non-negative");
    }
    if (kind == ExperimentKind::Killed && L < 1)
        throw std::invalid_argument("L must be positive");
    if (kind == ExperimentKind::Oracle && mSteps == 0)
        throw std::invalid_argument("mSteps must be positive");
}

namespace {

const char* kind_name(ExperimentKind k)
{
    switch (k) {
    case ExperimentKind::Support:
        return "support";
    case ExperimentKind::Microstep:
        return "microstep";
    case ExperimentKind::Killed:
        return "killed";
    case ExperimentKind::Oracle:
        return "oracle";
    }
    return "?";
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

void state_row(std::vector<std::string>& row, const ErosionState& s, std::size_t k, double scaleBy)
{
    auto rl = run_lengths(s.coloring, k);
    row.push_back(num(rl.supportE));
    row.push_back(num(rl.supportW));
    row.push_back(num(rl.support()));
    for (std::size_t j = 0; j < k; ++j)
        row.push_back(num(j < rl.east.size() ? rl.east[j] : std::int64_t{0}));
    for (std::size_t j = 0; j < k; ++j)
        row.push_back(num(j < rl.west.size() ? rl.west[j] : std::int64_t{0}));
    row.push_back(num(s.martingale));
    double q = std::pow(scaleBy, 0.25);
    row.push_back(num(static_cast<double>(rl.support()) / q));
    row.push_back(num(static_cast<double>(rl.supportE) / q));
    for (std::size_t j = 0; j < k; ++j)
        row.push_back(num(static_cast<double>(j < rl.east.size() ? rl.east[j] : 0) / q));
}

std::string trial_checkpoint(const ExperimentConfig& cfg, std::size_t i)
{
    return cfg.checkpointPrefix + ".trial" + std::to_string(i) + ".ckpt";
}

std::vector<std::vector<std::string>> run_trial(const ExperimentConfig& cfg, std::size_t i)
{
    std::uint64_t seed = trial_seed(cfg.masterSeed, i);
    std::vector<std::vector<std::string>> rows;
    std::size_t k = cfg.runs;
    if (cfg.kind == ExperimentKind::Killed) {
        auto o = run_killed(cfg.L, Color::Blue, Color::Blue, seed);
        rows.push_back({num(std::uint64_t{i}), num(seed), num(cfg.L), num(o.particles), num(o.microsteps)});
        return rows;
    }
    if (cfg.kind == ExperimentKind::Oracle) {
        Rng rng(seed);
        auto s = sample_one(rng, cfg.mSteps, k);
        double C = C_constant(1e-12).value;
        std::vector<std::string> row{num(std::uint64_t{i}), num(seed)};
        for (double x : s.x)
            row.push_back(num(x));
        row.push_back(s.carrier == Carrier::G ? "1" : "0");
        row.push_back(num(s.Tf));
        row.push_back(num(s.Tg));
        row.push_back(s.tie ? "1" : "0");
        row.push_back(s.degenerate ? "1" : "0");
        row.push_back(num(s.scaled_support(C)));
        for (std::size_t j = 1; j <= k; ++j)
            row.push_back(num(s.scaled_run(j, C)));
        row.push_back(num(s.scaled_support(std::sqrt(2.0))));
        for (std::size_t j = 1; j <= k; ++j)
            row.push_back(num(s.scaled_run(j, 2 * std::sqrt(2.0))));
        rows.push_back(std::move(row));
        return rows;
    }

    bool micro = cfg.kind == ExperimentKind::Microstep;
    bool ckpt = !cfg.checkpointPrefix.empty() && cfg.checkpointEvery > 0;
    ErosionState s = new_state(seed, {false, false, false});
    std::size_t done = 0; // budgets already reported (kept in the checkpoint sidecar)
    if (ckpt && std::filesystem::exists(trial_checkpoint(cfg, i))) {
        s = load_checkpoint(trial_checkpoint(cfg, i));
        std::ifstream side(trial_checkpoint(cfg, i) + ".rows");
        std::string line;
        while (std::getline(side, line)) {
            rows.push_back(split(line));
            ++done;
        }
    }
    auto progress = [&] { return micro ? s.microsteps : static_cast<std::int64_t>(s.particles); };
    auto advance_to = [&](std::int64_t target) {
        if (micro)
            run_until_microsteps(s, target);
        else
            run_until_particles(s, static_cast<std::uint64_t>(target), cfg.mode);
    };
    for (std::size_t b = done; b < cfg.budgets.size(); ++b) {
        std::int64_t target = cfg.budgets[b];
        while (ckpt && progress() + cfg.checkpointEvery < target) {
            advance_to(progress() + cfg.checkpointEvery);
            save_checkpoint(trial_checkpoint(cfg, i), s);
        }
        advance_to(target);
        std::vector<std::string> row{num(std::uint64_t{i}), num(seed)};
        if (micro) {
            row.push_back(num(s.microsteps));
            row.push_back(num(s.particles));
        } else {
            row.push_back(num(s.particles));
            row.push_back(num(s.microsteps));
        }
        state_row(row, s, k, static_cast<double>(target));
        row.push_back(cfg.mode == Mode::Fast && !micro ? "1" : "0");
        rows.push_back(row);
        if (ckpt) {
            // rows first: a crash between the two writes then resumes past this budget
            std::ofstream side(trial_checkpoint(cfg, i) + ".rows", std::ios::app);
            for (std::size_t c = 0; c < row.size(); ++c)
                side << (c ? "," : "") << row[c];
            side << '\n';
            side.close();
            save_checkpoint(trial_checkpoint(cfg, i), s);
        }
    }
    return rows;
}

std::vector<std::string> columns_for(const ExperimentConfig& cfg)
{
    std::size_t k = cfg.runs;
    std::vector<std::string> c{"trial", "seed"};
    switch (cfg.kind) {
    case ExperimentKind::Killed:
        c.insert(c.end(), {"L", "R", "Q"});
        return c;
    case ExperimentKind::Oracle:
        for (std::size_t j = 1; j <= k + 1; ++j)
            c.push_back("X" + std::to_string(j));
        c.insert(c.end(), {"carrierG", "Tf", "Tg", "tie", "degenerate", "support_limit"});
        for (std::size_t j = 1; j <= k; ++j)
            c.push_back("run" + std::to_string(j) + "_limit");
        c.push_back("micro_support_limit");
        for (std::size_t j = 1; j <= k; ++j)
            c.push_back("micro_run" + std::to_string(j) + "_limit");
        return c;
    case ExperimentKind::Support:
        c.insert(c.end(), {"n", "t"});
        break;
    case ExperimentKind::Microstep:
        c.insert(c.end(), {"t", "n"});
        break;
    }
    c.insert(c.end(), {"S_E", "S_W", "S"});
    for (std::size_t j = 1; j <= k; ++j)
        c.push_back("E" + std::to_string(j));
    for (std::size_t j = 1; j <= k; ++j)
        c.push_back("W" + std::to_string(j));
    c.insert(c.end(), {"M", "S_scaled", "S_E_scaled"});
    for (std::size_t j = 1; j <= k; ++j)
        c.push_back("E" + std::to_string(j) + "_scaled");
    c.push_back("fast");
    return c;
}

} // namespace

std::string ExperimentConfig::describe() const
{
    std::ostringstream os;
    os << "erosim " << kind_name(kind) << " seed=" << masterSeed << " trials=" << trials;
    if (kind == ExperimentKind::Support || kind == ExperimentKind::Microstep) {
        os << (kind == ExperimentKind::Support ? " particles=" : " microsteps=");
        for (std::size_t i = 0; i < budgets.size(); ++i)
            os << (i ? ";" : "") << budgets[i];
        os << " mode=" << (mode == Mode::Fast ? "fast" : "exact");
    }
    if (kind == ExperimentKind::Killed)
        os << " L=" << L;
    if (kind == ExperimentKind::Oracle)
        os << " steps=" << mSteps;
    os << " runs=" << runs << " seeds=splitmix64(master,trial)";
    return os.str();
}

std::size_t Table::column(const std::string& name) const
{
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end())
        throw std::invalid_argument("no column named " + name);
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Table::values(const std::string& name) const
{
    std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        if (c >= r.size())
            throw std::runtime_error("short row in table");
        out.push_back(std::stod(r[c]));
    }
    return out;
}

void Table::write_csv(std::ostream& os) const
{
    if (!comment.empty())
        os << "# " << comment << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            os << (i ? "," : "") << r[i];
        os << '\n';
    }
    if (!os)
        throw std::runtime_error("write failed");
}

Table Table::read_csv(std::istream& is)
{
    Table t;
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            if (t.comment.empty())
                t.comment = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
            continue;
        }
        auto cells = split(line);
        if (!header) {
            t.columns = cells;
            header = true;
        } else {
            if (cells.size() != t.columns.size())
                throw std::runtime_error("csv row width does not match header");
            t.rows.push_back(std::move(cells));
        }
    }
    if (!header)
        throw std::runtime_error("csv has no header");
    return t;
}

Table run_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    std::vector<std::vector<std::vector<std::string>>> perTrial(cfg.trials);
    unsigned w = cfg.workers == 0 ? worker_count() : cfg.workers;
    parallel_for(cfg.trials, [&](std::size_t i) { perTrial[i] = run_trial(cfg, i); }, w);
    Table t;
    t.comment = cfg.describe();
    t.columns = columns_for(cfg);
    for (auto& rows : perTrial)
        for (auto& r : rows)
            t.rows.push_back(std::move(r));
    return t;
}

std::vector<Comparison> compare_to_limit(const Table& empirical, const Table& limit,
                                         const std::vector<std::pair<std::string, std::string>>& pairs,
                                         double tolerance)
{
    std::vector<Comparison> out;
    for (const auto& [e, l] : pairs) {
        auto a = empirical.values(e);
        auto b = limit.values(l);
        Comparison c;
        c.empirical = e;
        c.limit = l;
        c.D = ks_statistic(a, b);
        c.nEmpirical = a.size();
        c.nLimit = b.size();
        c.tolerance = tolerance;
        if (b.size() >= 2) {
            std::vector<double> h1(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(b.size() / 2));
            std::vector<double> h2(b.begin() + static_cast<std::ptrdiff_t>(b.size() / 2), b.end());
            c.baseline = ks_statistic(h1, h2);
        }
        c.pass = c.D <= tolerance;
        out.push_back(c);
    }
    return out;
}

// ---- checkpoints ----

namespace {

constexpr const char* kCkptHeader = "EROSIM-CKPT v1";

void put_coloring(std::ostream& os, const SiteColoring& c)
{
    for (Side s : {Side::East, Side::West}) {
        const auto& v = c.runs(s);
        os << v.size();
        for (const auto& r : v)
            os << ' ' << static_cast<int>(r.color) << ' ' << r.len;
        os << '\n';
    }
}

SiteColoring get_coloring(std::istream& is)
{
    SiteColoring c;
    for (Side s : {Side::East, Side::West}) {
        std::size_t n;
        is >> n;
        if (!is || n > (std::size_t{1} << 40))
            throw std::runtime_error("checkpoint: bad coloring");
        auto& v = c.raw(s);
        for (std::size_t i = 0; i < n; ++i) {
            int col;
            std::int64_t len;
            is >> col >> len;
            if (!is || col < 1 || col > 2 || len < 1)
                throw std::runtime_error("checkpoint: bad run");
            v.push_back({static_cast<Color>(col), len});
        }
    }
    c.recount();
    c.check();
    return c;
}

} // namespace

void write_checkpoint(std::ostream& os, const ErosionState& s)
{
    std::ostringstream p;
    p << "state " << s.particles << ' ' << s.microsteps << ' ' << s.martingale << ' ' << s.redCount << ' '
      << s.blueCount << ' ' << static_cast<int>(s.nextColor) << ' ' << s.fromEmpty << '\n';
    p << "options " << s.options.layers << ' ' << s.options.goodness << ' ' << s.options.checks << '\n';
    p << "active " << s.active.has_value();
    if (s.active)
        p << ' ' << s.active->position << ' ' << static_cast<int>(s.active->color) << ' ' << s.westStop << ' '
          << s.eastStop << ' ' << static_cast<int>(s.label.side) << ' ' << s.label.L;
    p << '\n';
    s.rng.save(p);
    put_coloring(p, s.coloring);
    const auto& layers = s.layers.layers();
    p << layers.size();
    for (const auto& l : layers)
        p << ' ' << l.east << ' ' << l.west << ' ' << static_cast<int>(l.eastColor);
    p << '\n' << s.goodness.byL.size();
    for (const auto& [L, g] : s.goodness.byL)
        p << ' ' << L << ' ' << g.east << ' ' << g.west;
    p << '\n' << s.explorations.size();
    for (const auto& e : s.explorations)
        p << ' ' << static_cast<int>(e.transition) << ' ' << e.k << ' ' << e.particle << ' ' << e.microstep << ' '
          << e.martingale << ' ' << e.site;
    const auto& t = s.tally;
    p << "\ntally " << t.settles << ' ' << t.explorations << ' ' << t.supportGap << ' ' << t.redBlue << ' '
      << t.parity << ' ' << t.monochrome << ' ' << t.martingale << ' ' << t.boundary << ' ' << t.layers << ' '
      << t.layerStrict << ' ' << t.maxModifiedGap << "\nend\n";
    std::string payload = p.str();
    auto crc = crc32(0L, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size()));
    char head[64];
    std::snprintf(head, sizeof head, "crc32 %08lx bytes %zu\n", static_cast<unsigned long>(crc), payload.size());
    os << kCkptHeader << '\n' << head << payload;
    if (!os)
        throw std::runtime_error("checkpoint: write failed");
}

ErosionState read_checkpoint(std::istream& is)
{
    std::string header;
    if (!std::getline(is, header) || header != kCkptHeader)
        throw std::runtime_error("checkpoint: bad header or version");
    std::string word1, word2;
    std::string crcHex;
    std::size_t bytes = 0;
    if (!(is >> word1 >> crcHex >> word2 >> bytes) || word1 != "crc32" || word2 != "bytes")
        throw std::runtime_error("checkpoint: corrupted preamble");
    is.get();
    std::string payload(bytes, '\0');
    is.read(payload.data(), static_cast<std::streamsize>(bytes));
    if (static_cast<std::size_t>(is.gcount()) != bytes)
        throw std::runtime_error("checkpoint: truncated");
    auto crc = crc32(0L, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size()));
    if (std::stoul(crcHex, nullptr, 16) != crc)
        throw std::runtime_error("checkpoint: checksum mismatch");

    std::istringstream p(payload);
    ErosionState s;
    std::string tag;
    int next = 0;
    p >> tag >> s.particles >> s.microsteps >> s.martingale >> s.redCount >> s.blueCount >> next >> s.fromEmpty;
    if (tag != "state")
        throw std::runtime_error("checkpoint: bad state record");
    s.nextColor = static_cast<Color>(next);
    p >> tag >> s.options.layers >> s.options.goodness >> s.options.checks;
    bool act = false;
    p >> tag >> act;
    if (act) {
        ActiveParticle a;
        int col = 0, side = 0;
        p >> a.position >> col >> s.westStop >> s.eastStop >> side >> s.label.L;
        a.color = static_cast<Color>(col);
        s.label.side = static_cast<Side>(side);
        s.active = a;
    }
    s.rng.load(p);
    s.coloring = get_coloring(p);
    std::size_t n = 0;
    p >> n;
    for (std::size_t i = 0; i < n && p; ++i) {
        Layer l;
        int col = 0;
        p >> l.east >> l.west >> col;
        l.eastColor = static_cast<Color>(col);
        s.layers.raw().push_back(l);
    }
    p >> n;
    for (std::size_t i = 0; i < n && p; ++i) {
        std::int64_t L;
        GoodnessCount g;
        p >> L >> g.east >> g.west;
        s.goodness.byL[L] = g;
    }
    p >> n;
    for (std::size_t i = 0; i < n && p; ++i) {
        ExplorationRecord e{};
        int tr = 0;
        p >> tr >> e.k >> e.particle >> e.microstep >> e.martingale >> e.site;
        e.transition = static_cast<ExplorationRecord::Transition>(tr);
        s.explorations.push_back(e);
    }
    auto& t = s.tally;
    p >> tag >> t.settles >> t.explorations >> t.supportGap >> t.redBlue >> t.parity >> t.monochrome >>
        t.martingale >> t.boundary >> t.layers >> t.layerStrict >> t.maxModifiedGap;
    std::string end;
    p >> end;
    if (!p || end != "end")
        throw std::runtime_error("checkpoint: malformed payload");
    return s;
}

void save_checkpoint(const std::string& path, const ErosionState& s)
{
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open " + tmp);
        write_checkpoint(os, s);
    }
    std::filesystem::rename(tmp, path);
}

ErosionState load_checkpoint(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open " + path);
    return read_checkpoint(is);
}

} // namespace erosim
