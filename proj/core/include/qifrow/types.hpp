#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qifrow/errors.hpp"

namespace qifrow {

using Vec = std::vector<double>;

/// Sum/stochasticity tolerance for distributions and channel rows.
inline constexpr double kStochasticTol = 1e-9;
/// Feasibility certification tolerance for LP-produced solutions.
inline constexpr double kFeasibilityTol = 1e-8;
/// Tolerance for optimality comparisons across independent solution routes.
inline constexpr double kOptimalityTol = 1e-7;

/// Probability distribution over the secret space.
class Prior {
public:
    explicit Prior(Vec probs);

    static Prior uniform(std::size_t n);
    /// The prior u^{s,t} that is uniform among two secrets.
    static Prior two_point(std::size_t n, std::size_t s, std::size_t t);

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const Vec& probs() const { return probs_; }

private:
    Vec probs_;
};

/// Observable labels. Positive page sizes in KB for the fingerprinting use
/// case, but any duplicate-free integer labels are accepted.
using ObsId = std::int64_t;

/// Row-stochastic matrix from secrets to observables. Immutable after
/// construction; violations of row-stochasticity are rejected, never
/// silently normalized.
class Channel {
public:
    Channel(std::vector<std::string> secret_ids,
            std::vector<ObsId> observable_ids,
            std::vector<Vec> rows);

    std::size_t num_secrets() const { return rows_.size(); }
    std::size_t num_observables() const { return observable_ids_.size(); }
    const Vec& row(std::size_t s) const { return rows_.at(s); }
    const std::vector<Vec>& rows() const { return rows_; }
    double at(std::size_t s, std::size_t o) const { return rows_[s][o]; }

    const std::vector<std::string>& secret_ids() const { return secret_ids_; }
    const std::vector<ObsId>& observable_ids() const { return observable_ids_; }
    std::size_t secret_index(const std::string& id) const;

    /// C^q: the channel with row s replaced by q.
    Channel with_row(std::size_t s, Vec q) const;
    /// The rows C_{\neg s} in secret order, s removed.
    std::vector<Vec> rows_except(std::size_t s) const;
    /// Channel over a superset of observables; new columns are zero.
    /// The superset must contain every current observable.
    Channel with_observables(std::vector<ObsId> superset) const;

private:
    std::vector<std::string> secret_ids_;
    std::vector<ObsId> observable_ids_;
    std::vector<Vec> rows_;
};

enum class Mode { Gain, Loss };

struct ExactGuess {};
struct PGuess {
    std::vector<std::size_t> subset;  // secrets satisfying the predicate
};
struct SDistinguish {
    std::size_t secret;
};

/// Adversary model: what is being guessed, and whether success is scored as
/// gain or failure as loss.
struct Adversary {
    std::variant<ExactGuess, PGuess, SDistinguish> goal;
    Mode mode = Mode::Gain;

    static Adversary exact_guess(Mode m = Mode::Gain) { return {ExactGuess{}, m}; }
    static Adversary p_guess(std::vector<std::size_t> subset, Mode m = Mode::Gain) {
        return {PGuess{std::move(subset)}, m};
    }
    static Adversary s_distinguish(std::size_t secret, Mode m = Mode::Gain) {
        return {SDistinguish{secret}, m};
    }

    bool is_exact() const { return std::holds_alternative<ExactGuess>(goal); }
    bool is_predicate() const { return !is_exact(); }
};

/// Checks the adversary against a secret-space size: a PGuess subset must be
/// a non-empty proper subset without duplicates, an SDistinguish target must
/// exist. Throws ValidationError.
void validate_adversary(const Adversary& adv, std::size_t num_secrets);

/// The predicate subset P for PGuess/SDistinguish goals (sorted). Throws for
/// ExactGuess.
std::vector<std::size_t> adversary_subset(const Adversary& adv);

}  // namespace qifrow
