#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qifrow::testing {

double brute_prior_value(const Vec& prior, const std::vector<Vec>& gain) {
    double best = -1e300;
    for (const Vec& action : gain) {
        double v = 0.0;
        for (std::size_t s = 0; s < prior.size(); ++s) v += prior[s] * action[s];
        best = std::max(best, v);
    }
    return best;
}

double brute_posterior_value(const Vec& prior, const std::vector<Vec>& rows,
                             const std::vector<Vec>& gain) {
    const std::size_t m = rows.at(0).size();
    double total = 0.0;
    for (std::size_t o = 0; o < m; ++o) {
        double best = -1e300;
        for (const Vec& action : gain) {
            double v = 0.0;
            for (std::size_t s = 0; s < prior.size(); ++s)
                v += prior[s] * rows[s][o] * action[s];
            best = std::max(best, v);
        }
        total += best;
    }
    return total;
}

std::vector<Vec> gain_exact(std::size_t n) {
    std::vector<Vec> g(n, Vec(n, 0.0));
    for (std::size_t s = 0; s < n; ++s) g[s][s] = 1.0;
    return g;
}

std::vector<Vec> gain_predicate(const std::vector<std::size_t>& subset, std::size_t n) {
    std::vector<Vec> g(2, Vec(n, 0.0));
    std::vector<bool> in_p(n, false);
    for (std::size_t s : subset) in_p[s] = true;
    for (std::size_t s = 0; s < n; ++s) g[in_p[s] ? 0 : 1][s] = 1.0;
    return g;
}

std::vector<Vec> loss_to_gain(const std::vector<Vec>& gain) {
    std::vector<Vec> out = gain;
    for (Vec& row : out)
        for (double& v : row) v = 1.0 - v;
    return out;
}

double brute_leakage(const Vec& prior, const std::vector<Vec>& rows,
                     const std::vector<Vec>& gain, bool loss_mode) {
    if (!loss_mode) {
        return brute_posterior_value(prior, rows, gain) / brute_prior_value(prior, gain);
    }
    // Risk of loss l = 1 - g equals 1 - vulnerability of g; use min over
    // actions directly to stay independent of that identity.
    std::vector<Vec> loss = loss_to_gain(gain);
    double prior_risk = 1e300;
    for (const Vec& action : loss) {
        double v = 0.0;
        for (std::size_t s = 0; s < prior.size(); ++s) v += prior[s] * action[s];
        prior_risk = std::min(prior_risk, v);
    }
    double post_risk = 0.0;
    for (std::size_t o = 0; o < rows[0].size(); ++o) {
        double best = 1e300;
        for (const Vec& action : loss) {
            double v = 0.0;
            for (std::size_t s = 0; s < prior.size(); ++s)
                v += prior[s] * rows[s][o] * action[s];
            best = std::min(best, v);
        }
        post_risk += best;
    }
    if (post_risk <= 0.0) throw std::runtime_error("brute_leakage: zero posterior risk");
    return prior_risk / post_risk;
}

Vec random_distribution(Rng& rng, std::size_t n) {
    Vec v(n);
    double sum = 0.0;
    for (double& x : v) {
        x = -std::log(1.0 - rng.next_double());
        x = std::max(x, 1e-12);
        sum += x;
    }
    for (double& x : v) x /= sum;
    return v;
}

Vec random_sparse_distribution(Rng& rng, std::size_t n) {
    Vec v(n, 0.0);
    double sum = 0.0;
    for (double& x : v) {
        if (rng.next_double() < 0.35) continue;
        x = -std::log(1.0 - rng.next_double());
        sum += x;
    }
    if (sum == 0.0) {
        v[static_cast<std::size_t>(rng.next_int(0, static_cast<std::int64_t>(n) - 1))] = 1.0;
        return v;
    }
    for (double& x : v) x /= sum;
    return v;
}

std::vector<Vec> random_rows(Rng& rng, std::size_t n, std::size_t m) {
    std::vector<Vec> rows(n);
    for (Vec& row : rows) row = random_distribution(rng, m);
    return rows;
}

namespace {
void compositions(std::size_t parts, std::size_t remaining, Vec& current,
                  std::size_t denominator, std::vector<Vec>& out) {
    if (parts == 1) {
        current.push_back(static_cast<double>(remaining) / static_cast<double>(denominator));
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (std::size_t k = 0; k <= remaining; ++k) {
        current.push_back(static_cast<double>(k) / static_cast<double>(denominator));
        compositions(parts - 1, remaining - k, current, denominator, out);
        current.pop_back();
    }
}
}  // namespace

std::vector<Vec> rational_grid(std::size_t parts, std::size_t denominator) {
    std::vector<Vec> out;
    Vec current;
    compositions(parts, denominator, current, denominator, out);
    return out;
}

std::vector<Vec> one_simplex_grid(double step) {
    std::vector<Vec> out;
    for (double t = 0.0; t <= 1.0 + 1e-12; t += step)
        out.push_back({std::min(t, 1.0), 1.0 - std::min(t, 1.0)});
    return out;
}

}  // namespace qifrow::testing
