#include "cdfmr/scenario.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cdfmr {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::vector<double> SweepRange::grid() const
{
    std::vector<double> g;
    const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i)
        g.push_back(start + i * step);
    return g;
}

LinkBudget Scenario::budget_at(double gamma_d_linear) const
{
    const int n = static_cast<int>(clusters.size());
    switch (budget_model) {
    case BudgetModel::balanced:
        return balanced_budget(n, delta, gamma_d_linear);
    case BudgetModel::unbalanced:
        return unbalanced_budget(n, delta, gamma_d_linear);
    case BudgetModel::explicit_gammas: {
        std::vector<double> hops;
        for (double g_db : *explicit_gammas_db)
            hops.push_back(gamma_d_linear * db_to_linear(g_db));
        return LinkBudget(std::move(hops), gamma_d_linear);
    }
    }
    throw std::logic_error("Scenario::budget_at: bad budget model");
}

ModulationParams Scenario::modulation() const
{
    return modulation_from_name(modulation_name, modulation_order);
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg)
{
    throw std::invalid_argument("scenario line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& v)
{
    std::vector<std::string> parts;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        parts.push_back(trim(item));
    return parts;
}

double parse_double(const std::string& v, int line, const std::string& key)
{
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument("");
        return d;
    } catch (...) {
        fail(line, "key '" + key + "': '" + v + "' is not a number");
    }
}

std::uint64_t parse_u64(const std::string& v, int line, const std::string& key)
{
    try {
        std::size_t pos = 0;
        const unsigned long long u = std::stoull(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument("");
        return u;
    } catch (...) {
        fail(line, "key '" + key + "': '" + v + "' is not a nonnegative integer");
    }
}

SweepRange parse_range(const std::string& v, int line, const std::string& key)
{
    const auto parts = split_commas(v);
    if (parts.size() != 3)
        fail(line, "key '" + key + "': expected start,stop,step");
    SweepRange r{parse_double(parts[0], line, key), parse_double(parts[1], line, key),
                 parse_double(parts[2], line, key)};
    if (!(r.step > 0.0))
        fail(line, "key '" + key + "': step must be positive");
    if (r.stop < r.start)
        fail(line, "key '" + key + "': stop must be >= start");
    return r;
}

Metric parse_metric(const std::string& v, int line)
{
    if (v == "outage") return Metric::outage;
    if (v == "capacity") return Metric::capacity;
    if (v == "ser") return Metric::ser;
    if (v == "snr_gain") return Metric::snr_gain;
    fail(line, "unknown metric '" + v + "'");
}

const std::set<std::string> kKnownKeys = {
    "clusters", "budget_model", "delta", "explicit_gammas_db", "gamma_d_sweep_db",
    "rate_threshold", "modulation", "mu_sweep", "samples", "seed", "outputs"};

} // namespace

Scenario parse_scenario(const std::string& text)
{
    Scenario s;
    std::map<std::string, int> seen; // key -> first line number
    bool have_clusters = false;

    std::stringstream ss(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (!kKnownKeys.count(key))
            fail(line_no, "unknown key '" + key + "'");
        if (auto it = seen.find(key); it != seen.end())
            fail(line_no, "duplicate key '" + key + "' (first on line " +
                              std::to_string(it->second) + ")");
        seen[key] = line_no;
        if (value.empty())
            fail(line_no, "key '" + key + "' has an empty value");

        if (key == "clusters") {
            s.clusters.clear();
            for (const auto& p : split_commas(value)) {
                const double d = parse_double(p, line_no, key);
                if (d < 1 || d != std::floor(d))
                    fail(line_no, "cluster sizes must be positive integers");
                s.clusters.push_back(static_cast<int>(d));
            }
            have_clusters = true;
        } else if (key == "budget_model") {
            if (value == "balanced") s.budget_model = BudgetModel::balanced;
            else if (value == "unbalanced") s.budget_model = BudgetModel::unbalanced;
            else if (value == "explicit") s.budget_model = BudgetModel::explicit_gammas;
            else fail(line_no, "budget_model must be balanced, unbalanced or explicit");
        } else if (key == "delta") {
            s.delta = parse_double(value, line_no, key);
            if (!(s.delta >= 0.0))
                fail(line_no, "delta must be nonnegative");
        } else if (key == "explicit_gammas_db") {
            std::vector<double> g;
            for (const auto& p : split_commas(value))
                g.push_back(parse_double(p, line_no, key));
            s.explicit_gammas_db = std::move(g);
        } else if (key == "gamma_d_sweep_db") {
            s.gamma_d_sweep_db = parse_range(value, line_no, key);
        } else if (key == "rate_threshold") {
            s.rate_threshold = parse_double(value, line_no, key);
            if (!(s.rate_threshold >= 0.0))
                fail(line_no, "rate_threshold must be nonnegative");
        } else if (key == "modulation") {
            std::stringstream ms(value);
            std::string name, order_str, extra;
            ms >> name;
            int order = 0;
            if (ms >> order_str) {
                try {
                    std::size_t pos = 0;
                    order = std::stoi(order_str, &pos);
                    if (pos != order_str.size() || order < 2)
                        throw std::invalid_argument("");
                } catch (...) {
                    fail(line_no, "modulation: order must be an integer >= 2");
                }
                if (ms >> extra)
                    fail(line_no, "modulation: expected 'NAME [order]'");
            }
            s.modulation_name = name;
            s.modulation_order = order;
        } else if (key == "mu_sweep") {
            s.mu_sweep = parse_range(value, line_no, key);
        } else if (key == "samples") {
            s.samples = parse_u64(value, line_no, key);
            if (s.samples < 1)
                fail(line_no, "samples must be >= 1");
        } else if (key == "seed") {
            s.seed = parse_u64(value, line_no, key);
        } else if (key == "outputs") {
            s.outputs.clear();
            for (const auto& p : split_commas(value))
                s.outputs.insert(parse_metric(p, line_no));
            if (s.outputs.empty())
                fail(line_no, "outputs must name at least one metric");
        }
    }

    if (!have_clusters)
        throw std::invalid_argument("scenario: missing required key 'clusters'");
    if (s.budget_model == BudgetModel::explicit_gammas) {
        if (!s.explicit_gammas_db)
            throw std::invalid_argument(
                "scenario: budget_model = explicit requires explicit_gammas_db");
        if (s.explicit_gammas_db->size() != s.clusters.size() + 1)
            throw std::invalid_argument(
                "scenario: explicit_gammas_db must list N+1 hop values");
    } else if (s.explicit_gammas_db) {
        throw std::invalid_argument(
            "scenario: explicit_gammas_db requires budget_model = explicit");
    }
    // Validate cluster sizes and modulation eagerly so errors surface at
    // parse time, not mid-sweep.
    (void)s.topology();
    (void)s.modulation();
    return s;
}

namespace {

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace

std::string serialize_scenario(const Scenario& s)
{
    std::ostringstream out;
    out << "clusters = ";
    for (std::size_t i = 0; i < s.clusters.size(); ++i)
        out << (i ? "," : "") << s.clusters[i];
    out << "\n";
    out << "budget_model = "
        << (s.budget_model == BudgetModel::balanced     ? "balanced"
            : s.budget_model == BudgetModel::unbalanced ? "unbalanced"
                                                        : "explicit")
        << "\n";
    out << "delta = " << format_number(s.delta) << "\n";
    if (s.explicit_gammas_db) {
        out << "explicit_gammas_db = ";
        for (std::size_t i = 0; i < s.explicit_gammas_db->size(); ++i)
            out << (i ? "," : "") << format_number((*s.explicit_gammas_db)[i]);
        out << "\n";
    }
    const auto put_range = [&](const char* key, const SweepRange& r) {
        out << key << " = " << format_number(r.start) << "," << format_number(r.stop)
            << "," << format_number(r.step) << "\n";
    };
    put_range("gamma_d_sweep_db", s.gamma_d_sweep_db);
    out << "rate_threshold = " << format_number(s.rate_threshold) << "\n";
    out << "modulation = " << s.modulation_name;
    if (s.modulation_order > 0)
        out << " " << s.modulation_order;
    out << "\n";
    if (s.mu_sweep)
        put_range("mu_sweep", *s.mu_sweep);
    out << "samples = " << s.samples << "\n";
    out << "seed = " << s.seed << "\n";
    out << "outputs = ";
    bool first = true;
    for (Metric m : s.outputs) {
        out << (first ? "" : ",") << metric_name(m);
        first = false;
    }
    out << "\n";
    return out.str();
}

} // namespace cdfmr
