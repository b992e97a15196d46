#include "qifrow/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qifrow {

namespace {

void check_distribution(const Vec& v, const char* what) {
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]) || v[i] < 0.0) {
            std::ostringstream os;
            os << what << ": entry " << i << " is " << v[i] << ", expected >= 0";
            throw ValidationError(os.str());
        }
        sum += v[i];
    }
    if (std::abs(sum - 1.0) > kStochasticTol) {
        std::ostringstream os;
        os << what << ": sums to " << sum << ", expected 1 within " << kStochasticTol;
        throw ValidationError(os.str());
    }
}

}  // namespace

Prior::Prior(Vec probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw ValidationError("Prior: empty distribution");
    check_distribution(probs_, "Prior");
}

Prior Prior::uniform(std::size_t n) {
    if (n == 0) throw ValidationError("Prior::uniform: n must be positive");
    return Prior(Vec(n, 1.0 / static_cast<double>(n)));
}

Prior Prior::two_point(std::size_t n, std::size_t s, std::size_t t) {
    if (s >= n || t >= n) throw ValidationError("Prior::two_point: index out of range");
    if (s == t) throw ValidationError("Prior::two_point: secrets must differ");
    Vec p(n, 0.0);
    p[s] = 0.5;
    p[t] = 0.5;
    return Prior(std::move(p));
}

Channel::Channel(std::vector<std::string> secret_ids,
                 std::vector<ObsId> observable_ids,
                 std::vector<Vec> rows)
    : secret_ids_(std::move(secret_ids)),
      observable_ids_(std::move(observable_ids)),
      rows_(std::move(rows)) {
    if (rows_.empty()) throw ValidationError("Channel: no rows");
    if (secret_ids_.size() != rows_.size())
        throw ValidationError("Channel: secret_ids/rows size mismatch");
    if (observable_ids_.empty()) throw ValidationError("Channel: no observables");

    std::set<std::string> sids(secret_ids_.begin(), secret_ids_.end());
    if (sids.size() != secret_ids_.size())
        throw ValidationError("Channel: duplicate secret ids");
    std::set<ObsId> oids(observable_ids_.begin(), observable_ids_.end());
    if (oids.size() != observable_ids_.size())
        throw ValidationError("Channel: duplicate observable ids");

    for (std::size_t s = 0; s < rows_.size(); ++s) {
        if (rows_[s].size() != observable_ids_.size()) {
            std::ostringstream os;
            os << "Channel: row " << secret_ids_[s] << " has " << rows_[s].size()
               << " entries, expected " << observable_ids_.size();
            throw ValidationError(os.str());
        }
        std::ostringstream what;
        what << "Channel row " << secret_ids_[s];
        check_distribution(rows_[s], what.str().c_str());
    }
}

std::size_t Channel::secret_index(const std::string& id) const {
    auto it = std::find(secret_ids_.begin(), secret_ids_.end(), id);
    if (it == secret_ids_.end())
        throw ValidationError("Channel: unknown secret id '" + id + "'");
    return static_cast<std::size_t>(it - secret_ids_.begin());
}

Channel Channel::with_row(std::size_t s, Vec q) const {
    if (s >= rows_.size()) throw ValidationError("Channel::with_row: index out of range");
    std::vector<Vec> rows = rows_;
    rows[s] = std::move(q);
    return Channel(secret_ids_, observable_ids_, std::move(rows));
}

std::vector<Vec> Channel::rows_except(std::size_t s) const {
    if (s >= rows_.size()) throw ValidationError("Channel::rows_except: index out of range");
    std::vector<Vec> out;
    out.reserve(rows_.size() - 1);
    for (std::size_t t = 0; t < rows_.size(); ++t)
        if (t != s) out.push_back(rows_[t]);
    if (out.empty()) throw ValidationError("Channel::rows_except: no other rows");
    return out;
}

Channel Channel::with_observables(std::vector<ObsId> superset) const {
    std::vector<std::size_t> pos(observable_ids_.size());
    for (std::size_t o = 0; o < observable_ids_.size(); ++o) {
        auto it = std::find(superset.begin(), superset.end(), observable_ids_[o]);
        if (it == superset.end())
            throw ValidationError("Channel::with_observables: superset drops an observable");
        pos[o] = static_cast<std::size_t>(it - superset.begin());
    }
    std::vector<Vec> rows(rows_.size(), Vec(superset.size(), 0.0));
    for (std::size_t s = 0; s < rows_.size(); ++s)
        for (std::size_t o = 0; o < observable_ids_.size(); ++o)
            rows[s][pos[o]] = rows_[s][o];
    return Channel(secret_ids_, std::move(superset), std::move(rows));
}

void validate_adversary(const Adversary& adv, std::size_t num_secrets) {
    if (const auto* p = std::get_if<PGuess>(&adv.goal)) {
        if (p->subset.empty()) throw ValidationError("PGuess: empty subset");
        std::set<std::size_t> uniq(p->subset.begin(), p->subset.end());
        if (uniq.size() != p->subset.size())
            throw ValidationError("PGuess: duplicate secrets in subset");
        for (std::size_t s : p->subset)
            if (s >= num_secrets) throw ValidationError("PGuess: secret out of range");
        if (uniq.size() >= num_secrets)
            throw ValidationError("PGuess: subset must be a proper subset");
    } else if (const auto* d = std::get_if<SDistinguish>(&adv.goal)) {
        if (d->secret >= num_secrets)
            throw ValidationError("SDistinguish: secret out of range");
        if (num_secrets < 2)
            throw ValidationError("SDistinguish: needs at least two secrets");
    }
}

std::vector<std::size_t> adversary_subset(const Adversary& adv) {
    if (const auto* p = std::get_if<PGuess>(&adv.goal)) {
        std::vector<std::size_t> out = p->subset;
        std::sort(out.begin(), out.end());
        return out;
    }
    if (const auto* d = std::get_if<SDistinguish>(&adv.goal)) return {d->secret};
    throw ValidationError("adversary_subset: exact-guessing adversary has no predicate");
}

}  // namespace qifrow
