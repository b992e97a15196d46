#pragma once

#include "qifrow/metric.hpp"
#include "qifrow/types.hpp"

namespace qifrow {

/// Prior vulnerability (Gain) or risk (Loss) of the adversary's best action
/// before observing the channel.
double prior_value(const Prior& prior, const Adversary& adv);

/// Posterior vulnerability/risk: the expected value of the best action after
/// each observation. Predicate goals are computed through the factorization
/// reduction to exact guessing.
double posterior_value(const Prior& prior, const Channel& channel, const Adversary& adv);

/// Multiplicative leakage: posterior/prior vulnerability in gain mode,
/// prior/posterior risk in loss mode. Always >= 1 up to rounding. Throws
/// InfiniteLeakageError when the loss-mode denominator is zero.
double leakage(const Prior& prior, const Channel& channel, const Adversary& adv);

struct CapacityResult {
    double value = 1.0;
    Prior witness;  // a prior attaining the capacity
};

/// Worst-case leakage over all priors, with a witness prior attaining it.
///
/// Exact guessing: gain capacity is the sum of column maxima (uniform
/// witness); loss capacity is 1/(1 - Diam/2) on the diameter-realizing
/// two-point prior. Predicate goals use the max cross distance between the
/// rows inside and outside the predicate. Throws InfiniteLeakageError when a
/// loss capacity is unbounded (relevant distance equals 2).
CapacityResult capacity(const Channel& channel, const Adversary& adv);

}  // namespace qifrow
