#pragma once

#include <string>
#include <vector>

#include "qifrow/feasible.hpp"
#include "qifrow/types.hpp"
#include "qifrow/wf.hpp"

namespace qifrow {

/// Canonical float rendering used by every CSV writer: 12 significant digits.
std::string format_g12(double v);

/// Long-form channel CSV with header `secret,observable,probability`; omitted
/// cells are zero. Secrets keep first-appearance order, observables are
/// sorted ascending. Parse errors carry the offending line.
Channel load_channel(const std::string& path);
void save_channel(const Channel& channel, const std::string& path);

/// Key-value prior file (`secret=probability` per line, `#` comments). With
/// from_visits, values are visit counts normalized to a distribution.
/// Secrets missing from the file get zero mass.
Prior load_prior(const std::string& path, const Channel& align, bool from_visits);

/// A row over the channel's observables: `observable,probability` CSV.
Vec load_row(const std::string& path, const Channel& align);
void save_row(const Vec& q, const Channel& align, const std::string& path);

/// Linear constraints on a row, one per line:
///   <observable>:<coef> [<observable>:<coef> ...] <le|ge|eq> <rhs>
/// Observables not mentioned have coefficient zero; `#` starts a comment.
std::vector<RowConstraint> load_constraints(const std::string& path, const Channel& align);

/// Padding strategy CSV `size_in,size_out,probability` with normalized rows.
void save_strategy(const PaddingStrategy& strategy, const std::string& path);
PaddingStrategy load_strategy(const std::string& path, const Channel& align, std::size_t s);

/// Evaluation results: `method,prior,leakage,posterior_vulnerability` or
/// `method,capacity` in capacity mode.
void save_results(const std::vector<EvalRow>& rows, bool capacity_mode,
                  const std::string& path);

/// Attack results: `method,accuracy,recall,f1,n_train,n_test,seed`.
void save_attack(const std::string& method_label, const AttackReport& report,
                 const std::string& path);

}  // namespace qifrow
