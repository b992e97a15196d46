#pragma once

#include <utility>
#include <vector>

#include "qifrow/types.hpp"

namespace qifrow {

/// Factorization of a prior against a binary predicate P: a marginal over
/// {P, notP} and a conditional 2-row channel from classes back to secrets.
/// A class with zero marginal gets a uniform conditional row over it, which
/// keeps the factorization deterministic (the choice is otherwise free).
struct PredicateFactorization {
    Vec marginal;                  // {P, notP}
    std::vector<Vec> conditional;  // 2 x |S|; row w supported on secrets in w
};

PredicateFactorization factorize(const Prior& prior, const std::vector<std::size_t>& p);

/// Reduces predicate guessing on (prior, channel) to exact guessing on the
/// returned (marginal prior, composed 2-row channel): leakage coincides in
/// both gain and loss modes.
std::pair<Prior, Channel> reduce_and_compose(const Prior& prior,
                                             const std::vector<std::size_t>& p,
                                             const Channel& channel);

/// The behavior of an average secret other than s: the convex combination of
/// rows C_t (t != s) with coefficients prior_t / (1 - prior_s).
/// Requires prior_s < 1.
Vec average_other_row(const Prior& prior, const Channel& channel, std::size_t s);

}  // namespace qifrow
