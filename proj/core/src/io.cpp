#include "qifrow/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qifrow {

namespace {

std::string location(const std::string& path, std::size_t line) {
    std::ostringstream os;
    os << path << ":" << line;
    return os.str();
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw IoError(where + ": expected a number, got '" + text + "'");
    }
}

ObsId parse_observable(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        if (v <= 0) throw IoError(where + ": observables must be positive integers");
        return v;
    } catch (const IoError&) {
        throw;
    } catch (const std::exception&) {
        throw IoError(where + ": expected an integer observable, got '" + text + "'");
    }
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return in;
}

}  // namespace

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Channel load_channel(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw IoError(path + ": empty file");
    ++lineno;
    if (strip(line) != "secret,observable,probability")
        throw IoError(location(path, lineno) + ": expected header secret,observable,probability");

    std::vector<std::string> secrets;                    // first-appearance order
    std::map<std::string, std::size_t> secret_pos;
    std::set<ObsId> observables;
    std::map<std::pair<std::string, ObsId>, double> cells;

    while (std::getline(in, line)) {
        ++lineno;
        std::string t = strip(line);
        if (t.empty()) continue;
        auto fields = split_csv(t);
        if (fields.size() != 3)
            throw IoError(location(path, lineno) + ": expected 3 fields");
        std::string secret = strip(fields[0]);
        if (secret.empty()) throw IoError(location(path, lineno) + ": empty secret id");
        ObsId obs = parse_observable(strip(fields[1]), location(path, lineno));
        double p = parse_double(strip(fields[2]), location(path, lineno));
        if (p < 0.0 || p > 1.0 + kStochasticTol)
            throw IoError(location(path, lineno) + ": probability " + fields[2] +
                          " out of range for secret " + secret);
        if (!secret_pos.count(secret)) {
            secret_pos[secret] = secrets.size();
            secrets.push_back(secret);
        }
        auto key = std::make_pair(secret, obs);
        if (cells.count(key))
            throw IoError(location(path, lineno) + ": duplicate cell for secret " + secret);
        cells[key] = p;
        observables.insert(obs);
    }
    if (secrets.empty()) throw IoError(path + ": no channel rows");

    std::vector<ObsId> obs_ids(observables.begin(), observables.end());
    std::vector<Vec> rows(secrets.size(), Vec(obs_ids.size(), 0.0));
    for (const auto& [key, p] : cells) {
        std::size_t si = secret_pos[key.first];
        std::size_t oi = static_cast<std::size_t>(
            std::lower_bound(obs_ids.begin(), obs_ids.end(), key.second) - obs_ids.begin());
        rows[si][oi] = p;
    }
    try {
        return Channel(std::move(secrets), std::move(obs_ids), std::move(rows));
    } catch (const ValidationError& e) {
        throw IoError(path + ": " + e.what());
    }
}

void save_channel(const Channel& channel, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "secret,observable,probability\n";
    for (std::size_t s = 0; s < channel.num_secrets(); ++s)
        for (std::size_t o = 0; o < channel.num_observables(); ++o)
            if (channel.at(s, o) != 0.0)
                out << channel.secret_ids()[s] << ',' << channel.observable_ids()[o] << ','
                    << format_g12(channel.at(s, o)) << '\n';
}

Prior load_prior(const std::string& path, const Channel& align, bool from_visits) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t lineno = 0;
    Vec values(align.num_secrets(), 0.0);
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw IoError(location(path, lineno) + ": expected secret=value");
        std::string name = strip(t.substr(0, eq));
        double v = parse_double(strip(t.substr(eq + 1)), location(path, lineno));
        if (v < 0.0) throw IoError(location(path, lineno) + ": negative value");
        if (!seen.insert(name).second)
            throw IoError(location(path, lineno) + ": duplicate secret " + name);
        try {
            values[align.secret_index(name)] = v;
        } catch (const ValidationError&) {
            throw IoError(location(path, lineno) + ": secret '" + name +
                          "' is not in the channel");
        }
    }
    if (from_visits) {
        double total = 0.0;
        for (double v : values) total += v;
        if (total <= 0.0) throw IoError(path + ": visits sum to zero");
        for (double& v : values) v /= total;
    }
    try {
        return Prior(std::move(values));
    } catch (const ValidationError& e) {
        throw IoError(path + ": " + e.what());
    }
}

Vec load_row(const std::string& path, const Channel& align) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw IoError(path + ": empty file");
    ++lineno;
    if (strip(line) != "observable,probability")
        throw IoError(location(path, lineno) + ": expected header observable,probability");
    Vec q(align.num_observables(), 0.0);
    const auto& obs = align.observable_ids();
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = strip(line);
        if (t.empty()) continue;
        auto fields = split_csv(t);
        if (fields.size() != 2) throw IoError(location(path, lineno) + ": expected 2 fields");
        ObsId id = parse_observable(strip(fields[0]), location(path, lineno));
        double p = parse_double(strip(fields[1]), location(path, lineno));
        auto it = std::find(obs.begin(), obs.end(), id);
        if (it == obs.end())
            throw IoError(location(path, lineno) + ": observable not in the channel");
        q[static_cast<std::size_t>(it - obs.begin())] = p;
    }
    return q;
}

void save_row(const Vec& q, const Channel& align, const std::string& path) {
    if (q.size() != align.num_observables())
        throw ValidationError("save_row: arity mismatch");
    std::ofstream out = open_out(path);
    out << "observable,probability\n";
    for (std::size_t o = 0; o < q.size(); ++o)
        if (q[o] != 0.0)
            out << align.observable_ids()[o] << ',' << format_g12(q[o]) << '\n';
}

std::vector<RowConstraint> load_constraints(const std::string& path, const Channel& align) {
    std::ifstream in = open_in(path);
    const auto& obs = align.observable_ids();
    std::vector<RowConstraint> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = strip(line);
        if (auto hash = t.find('#'); hash != std::string::npos) t = strip(t.substr(0, hash));
        if (t.empty()) continue;
        std::istringstream is(t);
        std::vector<std::string> tokens;
        std::string token;
        while (is >> token) tokens.push_back(token);
        if (tokens.size() < 3)
            throw IoError(location(path, lineno) + ": expected terms, relation, rhs");

        RowConstraint c;
        c.coefs.assign(obs.size(), 0.0);
        c.rhs = parse_double(tokens.back(), location(path, lineno));
        const std::string& rel = tokens[tokens.size() - 2];
        if (rel == "le") c.rel = lp::Relation::Le;
        else if (rel == "ge") c.rel = lp::Relation::Ge;
        else if (rel == "eq") c.rel = lp::Relation::Eq;
        else throw IoError(location(path, lineno) + ": relation must be le, ge or eq");

        for (std::size_t k = 0; k + 2 < tokens.size(); ++k) {
            std::size_t colon = tokens[k].find(':');
            if (colon == std::string::npos)
                throw IoError(location(path, lineno) + ": term '" + tokens[k] +
                              "' is not observable:coef");
            ObsId id = parse_observable(tokens[k].substr(0, colon), location(path, lineno));
            double coef = parse_double(tokens[k].substr(colon + 1), location(path, lineno));
            auto it = std::find(obs.begin(), obs.end(), id);
            if (it == obs.end())
                throw IoError(location(path, lineno) + ": observable " + std::to_string(id) +
                              " is not in the channel");
            c.coefs[static_cast<std::size_t>(it - obs.begin())] += coef;
        }
        out.push_back(std::move(c));
    }
    if (out.empty()) throw IoError(path + ": no constraints");
    return out;
}

void save_strategy(const PaddingStrategy& strategy, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "size_in,size_out,probability\n";
    Vec base = strategy.base();
    for (std::size_t o = 0; o < strategy.observables.size(); ++o) {
        if (base[o] <= 0.0) continue;
        Vec row = strategy.row_distribution(o);
        for (std::size_t o2 = 0; o2 < row.size(); ++o2)
            if (row[o2] != 0.0)
                out << strategy.observables[o] << ',' << strategy.observables[o2] << ','
                    << format_g12(row[o2]) << '\n';
    }
}

PaddingStrategy load_strategy(const std::string& path, const Channel& align, std::size_t s) {
    if (s >= align.num_secrets()) throw ValidationError("load_strategy: secret out of range");
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw IoError(path + ": empty file");
    ++lineno;
    if (strip(line) != "size_in,size_out,probability")
        throw IoError(location(path, lineno) + ": expected header size_in,size_out,probability");

    const auto& obs = align.observable_ids();
    auto index_of = [&](ObsId id, const std::string& where) {
        auto it = std::find(obs.begin(), obs.end(), id);
        if (it == obs.end())
            throw IoError(where + ": size not among the channel observables");
        return static_cast<std::size_t>(it - obs.begin());
    };

    std::vector<Vec> normalized(obs.size(), Vec(obs.size(), 0.0));
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = strip(line);
        if (t.empty()) continue;
        auto fields = split_csv(t);
        if (fields.size() != 3) throw IoError(location(path, lineno) + ": expected 3 fields");
        std::size_t o = index_of(parse_observable(strip(fields[0]), location(path, lineno)),
                                 location(path, lineno));
        std::size_t o2 = index_of(parse_observable(strip(fields[1]), location(path, lineno)),
                                  location(path, lineno));
        if (o2 < o) throw IoError(location(path, lineno) + ": downward padding entry");
        double p = parse_double(strip(fields[2]), location(path, lineno));
        if (p < 0.0 || p > 1.0 + kStochasticTol)
            throw IoError(location(path, lineno) + ": probability out of range");
        normalized[o][o2] = p;
    }

    // Rescale rows by the site's original distribution to recover the raw
    // coupling this strategy encodes for the aligned channel.
    PaddingStrategy strategy;
    strategy.observables = obs;
    strategy.transport.assign(obs.size(), Vec(obs.size(), 0.0));
    const Vec& q_hat = align.row(s);
    for (std::size_t o = 0; o < obs.size(); ++o) {
        if (q_hat[o] == 0.0) continue;
        double sum = 0.0;
        for (double v : normalized[o]) sum += v;
        if (std::abs(sum - 1.0) > 1e-6)
            throw IoError(path + ": strategy row for size " +
                          std::to_string(obs[o]) + " does not sum to 1");
        for (std::size_t o2 = 0; o2 < obs.size(); ++o2)
            strategy.transport[o][o2] = normalized[o][o2] * q_hat[o];
    }
    return strategy;
}

void save_results(const std::vector<EvalRow>& rows, bool capacity_mode,
                  const std::string& path) {
    std::ofstream out = open_out(path);
    if (capacity_mode) {
        out << "method,capacity\n";
        for (const EvalRow& r : rows) {
            if (r.status != lp::Status::Optimal) continue;
            out << r.method << ',' << format_g12(r.capacity) << '\n';
        }
    } else {
        out << "method,prior,leakage,posterior_vulnerability\n";
        for (const EvalRow& r : rows) {
            if (r.status != lp::Status::Optimal) continue;
            out << r.method << ',' << r.prior << ',' << format_g12(r.leakage) << ','
                << format_g12(r.posterior_vulnerability) << '\n';
        }
    }
}

void save_attack(const std::string& method_label, const AttackReport& report,
                 const std::string& path) {
    std::ofstream out = open_out(path);
    out << "method,accuracy,recall,f1,n_train,n_test,seed\n";
    out << method_label << ',' << format_g12(report.accuracy) << ','
        << format_g12(report.recall) << ',' << format_g12(report.f1) << ','
        << report.n_train << ',' << report.n_test << ',' << report.seed << '\n';
}

}  // namespace qifrow
