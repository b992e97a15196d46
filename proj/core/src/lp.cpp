#include "qifrow/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

#include "qifrow/types.hpp"

namespace qifrow::lp {

const char* to_string(Status s) {
    switch (s) {
        case Status::Optimal: return "optimal";
        case Status::Infeasible: return "infeasible";
        case Status::Unbounded: return "unbounded";
        case Status::Failed: return "failed";
    }
    return "unknown";
}

int Problem::add_variable(std::string name, double lower, double upper) {
    if (std::isnan(lower) || std::isnan(upper) || lower == kInfinity || upper == -kInfinity)
        throw ValidationError("lp: invalid bounds for variable " + name);
    names_.push_back(std::move(name));
    lower_.push_back(lower);
    upper_.push_back(upper);
    return static_cast<int>(names_.size()) - 1;
}

void Problem::check_terms(const std::vector<Term>& terms) const {
    for (const Term& t : terms) {
        if (t.var < 0 || t.var >= static_cast<int>(names_.size()))
            throw ValidationError("lp: term references undeclared variable");
        if (!std::isfinite(t.coef))
            throw ValidationError("lp: non-finite coefficient");
    }
}

void Problem::add_constraint(std::vector<Term> terms, Relation rel, double rhs) {
    check_terms(terms);
    if (!std::isfinite(rhs)) throw ValidationError("lp: non-finite rhs");
    constraints_.push_back({std::move(terms), rel, rhs});
}

void Problem::set_objective(std::vector<Term> terms, double constant) {
    check_terms(terms);
    if (!std::isfinite(constant)) throw ValidationError("lp: non-finite objective constant");
    objective_ = std::move(terms);
    objective_constant_ = constant;
}

std::string Problem::to_lp_format() const {
    std::ostringstream os;
    auto coef = [](double c) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", c);
        return std::string(buf);
    };
    auto emit_terms = [&](const std::vector<Term>& ts) {
        if (ts.empty()) {
            os << " 0 " << (names_.empty() ? "x" : names_[0]);
            return;
        }
        bool first = true;
        for (const Term& t : ts) {
            double c = t.coef;
            if (first) {
                os << ' ' << coef(c) << ' ' << names_[t.var];
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ") << coef(std::abs(c)) << ' ' << names_[t.var];
            }
        }
    };
    os << "Minimize\n obj:";
    emit_terms(objective_);
    os << "\nSubject To\n";
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
        os << " c" << i << ":";
        emit_terms(constraints_[i].terms);
        switch (constraints_[i].rel) {
            case Relation::Le: os << " <= "; break;
            case Relation::Ge: os << " >= "; break;
            case Relation::Eq: os << " = "; break;
        }
        os << coef(constraints_[i].rhs) << "\n";
    }
    os << "Bounds\n";
    for (std::size_t v = 0; v < names_.size(); ++v) {
        double lo = lower_[v], hi = upper_[v];
        if (lo == 0.0 && hi == kInfinity) continue;  // LP-format default
        if (lo == -kInfinity && hi == kInfinity) {
            os << ' ' << names_[v] << " free\n";
        } else if (lo == -kInfinity) {
            os << " -inf <= " << names_[v] << " <= " << coef(hi) << "\n";
        } else if (hi == kInfinity) {
            os << ' ' << names_[v] << " >= " << coef(lo) << "\n";
        } else {
            os << ' ' << coef(lo) << " <= " << names_[v] << " <= " << coef(hi) << "\n";
        }
    }
    os << "End\n";
    return os.str();
}

namespace {

// Condensed-tableau two-phase simplex over
//   maximize c'y  s.t.  Ay <= b, y >= 0.
// Tableau layout and pivot follow the classic compact scheme: one column per
// structural variable plus one auxiliary column used to restore feasibility,
// with slack variables tracked only through the basis labels.
class DenseSimplex {
public:
    DenseSimplex(std::size_t rows, std::size_t cols, const SolveOptions& opts)
        : m_(rows), n_(cols), opts_(opts),
          tab_((rows + 2) * (cols + 2), 0.0),
          basic_(rows), nonbasic_(cols + 1) {
        for (std::size_t j = 0; j < n_; ++j) nonbasic_[j] = static_cast<int>(j);
        nonbasic_[n_] = kAux;
        for (std::size_t i = 0; i < m_; ++i) basic_[i] = static_cast<int>(n_ + i);
        for (std::size_t i = 0; i < m_; ++i) at(i, n_) = -1.0;
        at(m_ + 1, n_) = 1.0;
    }

    double& at(std::size_t i, std::size_t j) { return tab_[i * (n_ + 2) + j]; }
    double at(std::size_t i, std::size_t j) const { return tab_[i * (n_ + 2) + j]; }
    void set_coef(std::size_t row, std::size_t col, double v) { at(row, col) = v; }
    void set_rhs(std::size_t row, double v) { at(row, n_ + 1) = v; }
    void set_cost(std::size_t col, double c) { at(m_, col) = -c; }  // maximize c'y

    enum class Result { Optimal, Infeasible, Unbounded, PivotLimit };

    Result run() {
        max_pivots_ = opts_.max_pivots
            ? opts_.max_pivots
            : std::max<std::size_t>(50 * (m_ + n_) + 10000, 100000);

        std::size_t worst = 0;
        for (std::size_t i = 1; i < m_; ++i)
            if (at(i, n_ + 1) < at(worst, n_ + 1)) worst = i;
        if (m_ > 0 && at(worst, n_ + 1) < -opts_.eps) {
            pivot(worst, n_);
            Result r = iterate(2);
            if (r == Result::PivotLimit) return r;
            if (r != Result::Optimal || at(m_ + 1, n_ + 1) < -opts_.eps)
                return Result::Infeasible;
            for (std::size_t i = 0; i < m_; ++i) {
                if (basic_[i] != kAux) continue;
                std::size_t s = n_ + 1;
                for (std::size_t j = 0; j <= n_; ++j) {
                    if (std::abs(at(i, j)) <= opts_.eps) continue;
                    if (s == n_ + 1 ||
                        std::make_pair(at(i, j), nonbasic_[j]) <
                            std::make_pair(at(i, s), nonbasic_[s]))
                        s = j;
                }
                if (s <= n_) pivot(i, s);
            }
        }
        return iterate(1);
    }

    // Value of structural column j in the current basic solution.
    std::vector<double> column_values() const {
        std::vector<double> y(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            int label = basic_[i];
            if (label >= 0 && label < static_cast<int>(n_))
                y[static_cast<std::size_t>(label)] = at(i, n_ + 1);
        }
        return y;
    }

    std::size_t pivots() const { return pivot_count_; }

private:
    static constexpr int kAux = -1;

    void pivot(std::size_t r, std::size_t s) {
        double* prow = &tab_[r * (n_ + 2)];
        double inv = 1.0 / prow[s];
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i == r) continue;
            double* row = &tab_[i * (n_ + 2)];
            if (std::abs(row[s]) <= 1e-14) continue;
            double factor = row[s] * inv;
            for (std::size_t j = 0; j < n_ + 2; ++j) row[j] -= prow[j] * factor;
            row[s] = prow[s] * factor;
        }
        for (std::size_t j = 0; j < n_ + 2; ++j)
            if (j != s) prow[j] *= inv;
        for (std::size_t i = 0; i < m_ + 2; ++i)
            if (i != r) tab_[i * (n_ + 2) + s] *= -inv;
        prow[s] = inv;
        std::swap(basic_[r], nonbasic_[s]);
        ++pivot_count_;
    }

    // phase 2 drives the auxiliary objective (row m+1) to zero; phase 1
    // optimizes the real objective (row m) with the auxiliary column barred.
    Result iterate(int phase) {
        const std::size_t obj = m_ + static_cast<std::size_t>(phase) - 1;
        const int barred = -phase;  // label excluded from entering
        bool bland = false;
        std::size_t stall = 0;
        double last = at(obj, n_ + 1);
        for (;;) {
            if (pivot_count_ > max_pivots_) return Result::PivotLimit;
            std::size_t s = n_ + 1;
            if (!bland) {
                for (std::size_t j = 0; j <= n_; ++j) {
                    if (nonbasic_[j] == barred) continue;
                    if (s == n_ + 1 ||
                        std::make_pair(at(obj, j), nonbasic_[j]) <
                            std::make_pair(at(obj, s), nonbasic_[s]))
                        s = j;
                }
            } else {
                int best_label = 0;
                for (std::size_t j = 0; j <= n_; ++j) {
                    if (nonbasic_[j] == barred || at(obj, j) >= -opts_.eps) continue;
                    if (s == n_ + 1 || nonbasic_[j] < best_label) {
                        s = j;
                        best_label = nonbasic_[j];
                    }
                }
            }
            if (s == n_ + 1 || at(obj, s) >= -opts_.eps) return Result::Optimal;

            std::size_t r = m_;
            for (std::size_t i = 0; i < m_; ++i) {
                if (at(i, s) <= opts_.eps) continue;
                double ratio = at(i, n_ + 1) / at(i, s);
                if (r == m_ ||
                    std::make_pair(ratio, basic_[i]) <
                        std::make_pair(at(r, n_ + 1) / at(r, s), basic_[r]))
                    r = i;
            }
            if (r == m_) return Result::Unbounded;
            pivot(r, s);

            double now = at(obj, n_ + 1);
            if (now > last + 1e-12 * (1.0 + std::abs(last))) {
                stall = 0;
                bland = false;
            } else if (++stall >= opts_.stall_limit) {
                bland = true;
            }
            last = now;
        }
    }

    std::size_t m_, n_;
    SolveOptions opts_;
    std::vector<double> tab_;
    std::vector<int> basic_, nonbasic_;
    std::size_t pivot_count_ = 0;
    std::size_t max_pivots_ = 0;
};

// One declared variable maps to one or two non-negative columns.
struct ColumnMap {
    int pos = -1;        // column index, or -1
    int neg = -1;        // second column for free variables
    double shift = 0.0;  // x = shift + y_pos - y_neg
};

}  // namespace

Solution solve(const Problem& p, const SolveOptions& opts) {
    const std::size_t nv = p.num_variables();

    // Column mapping: finite lower bounds are shifted away, free variables
    // split into a difference of two non-negative columns.
    std::vector<ColumnMap> cols(nv);
    std::size_t ncols = 0;
    for (std::size_t v = 0; v < nv; ++v) {
        double lo = p.lower_bound(v), hi = p.upper_bound(v);
        if (hi < lo) {
            Solution sol;
            sol.status = Status::Infeasible;
            sol.message = "empty bound interval on " + p.variable_name(v);
            return sol;
        }
        if (lo == -kInfinity) {
            cols[v].pos = static_cast<int>(ncols++);
            cols[v].neg = static_cast<int>(ncols++);
        } else {
            cols[v].pos = static_cast<int>(ncols++);
            cols[v].shift = lo;
        }
    }

    // Rows: every constraint in <= form; equalities as two rows; finite upper
    // bounds as extra rows.
    struct Row {
        std::vector<Term> terms;  // in column space
        double rhs;
    };
    std::vector<Row> rows;
    rows.reserve(p.num_constraints() * 2);

    auto to_columns = [&](const std::vector<Term>& terms, double rhs, double sign) {
        Row row;
        row.rhs = sign * rhs;
        for (const Term& t : terms) {
            const ColumnMap& c = cols[t.var];
            double a = sign * t.coef;
            if (a == 0.0) continue;
            row.terms.push_back({c.pos, a});
            if (c.neg >= 0) row.terms.push_back({c.neg, -a});
            row.rhs -= a * c.shift;
        }
        rows.push_back(std::move(row));
    };

    for (const Constraint& c : p.constraints()) {
        switch (c.rel) {
            case Relation::Le: to_columns(c.terms, c.rhs, 1.0); break;
            case Relation::Ge: to_columns(c.terms, c.rhs, -1.0); break;
            case Relation::Eq:
                to_columns(c.terms, c.rhs, 1.0);
                to_columns(c.terms, c.rhs, -1.0);
                break;
        }
    }
    for (std::size_t v = 0; v < nv; ++v) {
        if (p.upper_bound(v) < kInfinity)
            to_columns({{static_cast<int>(v), 1.0}}, p.upper_bound(v), 1.0);
    }

    const std::size_t nrows = rows.size();
    if ((nrows + 2) * (ncols + 2) > opts.max_tableau_entries) {
        Solution sol;
        sol.status = Status::Failed;
        std::ostringstream os;
        os << "tableau of " << nrows << "x" << ncols
           << " exceeds the dense solver limit";
        sol.message = os.str();
        return sol;
    }

    DenseSimplex simplex(nrows, ncols, opts);
    for (std::size_t i = 0; i < nrows; ++i) {
        for (const Term& t : rows[i].terms)
            simplex.at(i, static_cast<std::size_t>(t.var)) += t.coef;
        simplex.set_rhs(i, rows[i].rhs);
    }
    // Internal objective: maximize -(objective terms) over columns.
    {
        std::vector<double> cost(ncols, 0.0);
        for (const Term& t : p.objective()) {
            const ColumnMap& c = cols[t.var];
            cost[static_cast<std::size_t>(c.pos)] += t.coef;
            if (c.neg >= 0) cost[static_cast<std::size_t>(c.neg)] -= t.coef;
        }
        for (std::size_t j = 0; j < ncols; ++j) simplex.set_cost(j, -cost[j]);
    }

    Solution sol;
    switch (simplex.run()) {
        case DenseSimplex::Result::Infeasible:
            sol.status = Status::Infeasible;
            return sol;
        case DenseSimplex::Result::Unbounded:
            sol.status = Status::Unbounded;
            return sol;
        case DenseSimplex::Result::PivotLimit:
            sol.status = Status::Failed;
            sol.message = "pivot limit exceeded";
            return sol;
        case DenseSimplex::Result::Optimal:
            break;
    }

    std::vector<double> y = simplex.column_values();
    sol.values.assign(nv, 0.0);
    for (std::size_t v = 0; v < nv; ++v) {
        const ColumnMap& c = cols[v];
        double x = c.shift + y[static_cast<std::size_t>(c.pos)];
        if (c.neg >= 0) x -= y[static_cast<std::size_t>(c.neg)];
        sol.values[v] = x;
    }

    // Certify feasibility and the objective against the original problem; a
    // violation is reported as Failed rather than a wrong Optimal.
    for (std::size_t i = 0; i < p.num_constraints(); ++i) {
        const Constraint& c = p.constraints()[i];
        double lhs = 0.0;
        for (const Term& t : c.terms) lhs += t.coef * sol.values[t.var];
        double tol = kFeasibilityTol * std::max(1.0, std::abs(c.rhs));
        bool ok = true;
        switch (c.rel) {
            case Relation::Le: ok = lhs <= c.rhs + tol; break;
            case Relation::Ge: ok = lhs >= c.rhs - tol; break;
            case Relation::Eq: ok = std::abs(lhs - c.rhs) <= tol; break;
        }
        if (!ok) {
            sol.status = Status::Failed;
            std::ostringstream os;
            os << "certification failed on constraint " << i << " (lhs " << lhs
               << ", rhs " << c.rhs << ")";
            sol.message = os.str();
            sol.values.clear();
            return sol;
        }
    }
    for (std::size_t v = 0; v < nv; ++v) {
        double x = sol.values[v];
        if (x < p.lower_bound(v) - kFeasibilityTol ||
            x > p.upper_bound(v) + kFeasibilityTol) {
            sol.status = Status::Failed;
            sol.message = "certification failed on bounds of " + p.variable_name(v);
            sol.values.clear();
            return sol;
        }
    }

    double obj = p.objective_constant();
    for (const Term& t : p.objective()) obj += t.coef * sol.values[t.var];
    sol.objective = obj;
    sol.status = Status::Optimal;
    return sol;
}

}  // namespace qifrow::lp
