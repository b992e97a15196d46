#include "qifrow/seb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "qifrow/metric.hpp"

namespace qifrow {

namespace {

constexpr std::size_t kEmbedCapPhi = 20;
constexpr std::size_t kEmbedCapLp = 12;

void check_points(const std::vector<Vec>& points) {
    if (points.empty()) throw ValidationError("seb: empty point set");
    for (const Vec& p : points)
        if (p.size() != points[0].size())
            throw ValidationError("seb: points of mixed dimension");
}

Vec snap_to_simplex(Vec q) {
    double sum = 0.0;
    for (double& v : q) {
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    if (sum <= 0.0) throw ValidationError("seb: degenerate center");
    for (double& v : q) v /= sum;
    return q;
}

struct Realized {
    double radius = 0.0;
    std::size_t farthest = 0;
};

Realized realized_radius(const Vec& center, const std::vector<Vec>& points) {
    Realized r;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double d = l1_distance(center, points[i]);
        if (d > r.radius) {
            r.radius = d;
            r.farthest = i;
        }
    }
    return r;
}

SebSolution failed_solution(SebMethod method, lp::Status status, std::string note) {
    SebSolution out;
    out.method = method;
    out.status = status;
    out.note = std::move(note);
    return out;
}

// Direct build of the auxiliary-variable program: one |x_i - y_i| variable per
// point and coordinate, one max row per point.
SebSolution seb_exact_direct(const std::vector<Vec>& points, const FeasibleSet& feasible) {
    const std::size_t n = points.size();
    const std::size_t m = points[0].size();

    lp::Problem p;
    std::vector<int> x_vars(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::ostringstream name;
        name << "x" << i;
        x_vars[i] = p.add_variable(name.str(), 0.0);
    }
    int z = p.add_variable("z", 0.0);
    feasible.emit(p, x_vars);

    for (std::size_t y = 0; y < n; ++y) {
        std::vector<lp::Term> row{{z, 1.0}};
        for (std::size_t i = 0; i < m; ++i) {
            std::ostringstream name;
            name << "w_" << y << "_" << i;
            int w = p.add_variable(name.str(), 0.0);
            p.add_constraint({{w, 1.0}, {x_vars[i], -1.0}}, lp::Relation::Ge, -points[y][i]);
            p.add_constraint({{w, 1.0}, {x_vars[i], 1.0}}, lp::Relation::Ge, points[y][i]);
            row.push_back({w, -1.0});
        }
        p.add_constraint(std::move(row), lp::Relation::Ge, 0.0);
    }
    p.set_objective({{z, 1.0}});

    lp::Solution sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal)
        return failed_solution(SebMethod::ExactLp, sol.status, sol.message);

    SebSolution out;
    out.method = SebMethod::ExactLp;
    out.status = lp::Status::Optimal;
    Vec center(m);
    for (std::size_t i = 0; i < m; ++i)
        center[i] = sol.values[static_cast<std::size_t>(x_vars[i])];
    out.center = snap_to_simplex(std::move(center));
    Realized r = realized_radius(out.center, points);
    out.radius = r.radius;
    out.farthest_index = r.farthest;
    if (std::abs(r.radius - sol.objective) > 1e-6) {
        out.status = lp::Status::Failed;
        out.note = "realized radius drifted from the LP objective";
    }
    return out;
}

// The same optimum by lazily generated supporting hyperplanes of the distance
// function: each round adds, for every point farther than the current bound,
// the cut matching the sign pattern of (x - y). Terminates because the pool
// of (point, sign pattern) pairs is finite; the result is certified by the
// realized max distance closing on the LP lower bound.
SebSolution seb_exact_cuts(const std::vector<Vec>& points, const FeasibleSet& feasible) {
    const std::size_t n = points.size();
    const std::size_t m = points[0].size();

    struct Cut {
        std::size_t point;
        std::vector<bool> negative;  // sign pattern per coordinate
    };
    std::vector<Cut> cuts;
    std::set<std::pair<std::size_t, std::vector<bool>>> seen;

    const std::size_t max_rounds = 20000;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        lp::Problem p;
        std::vector<int> x_vars(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::ostringstream name;
            name << "x" << i;
            x_vars[i] = p.add_variable(name.str(), 0.0);
        }
        int z = p.add_variable("z", 0.0);
        feasible.emit(p, x_vars);
        for (const Cut& cut : cuts) {
            std::vector<lp::Term> terms{{z, 1.0}};
            double rhs = 0.0;
            const Vec& y = points[cut.point];
            for (std::size_t i = 0; i < m; ++i) {
                double sign = cut.negative[i] ? -1.0 : 1.0;
                terms.push_back({x_vars[i], -sign});
                rhs -= sign * y[i];
            }
            p.add_constraint(std::move(terms), lp::Relation::Ge, rhs);
        }
        p.set_objective({{z, 1.0}});

        lp::Solution sol = lp::solve(p);
        if (sol.status != lp::Status::Optimal)
            return failed_solution(SebMethod::ExactLp, sol.status, sol.message);

        Vec center(m);
        for (std::size_t i = 0; i < m; ++i)
            center[i] = sol.values[static_cast<std::size_t>(x_vars[i])];
        center = snap_to_simplex(std::move(center));
        Realized r = realized_radius(center, points);

        auto finish = [&](const char* note) {
            SebSolution out;
            out.method = SebMethod::ExactLp;
            out.status = lp::Status::Optimal;
            out.center = std::move(center);
            out.radius = r.radius;
            out.farthest_index = r.farthest;
            out.note = note;
            return out;
        };
        // z is a lower bound on the optimum, so closing the gap certifies
        // the center
        if (r.radius <= sol.objective + 1e-9 * std::max(1.0, r.radius))
            return finish("cut generation");

        bool added = false;
        for (std::size_t y = 0; y < n; ++y) {
            if (l1_distance(center, points[y]) <= sol.objective + 1e-9) continue;
            Cut cut;
            cut.point = y;
            cut.negative.resize(m);
            for (std::size_t i = 0; i < m; ++i)
                cut.negative[i] = center[i] < points[y][i];
            auto key = std::make_pair(cut.point, cut.negative);
            if (seen.insert(key).second) {
                cuts.push_back(std::move(cut));
                added = true;
            }
        }
        if (!added) {
            // every remaining violation sits inside the feasibility slack of
            // an existing cut, which still bounds the gap to the optimum
            if (r.radius <= sol.objective + 10.0 * kFeasibilityTol)
                return finish("cut generation, tolerance-limited");
            return failed_solution(SebMethod::ExactLp, lp::Status::Failed,
                                   "cut generation stalled");
        }
    }
    return failed_solution(SebMethod::ExactLp, lp::Status::Failed,
                           "cut generation round limit");
}

// Rough dense-tableau footprint of the direct program, used by Auto.
std::size_t direct_tableau_estimate(std::size_t n, std::size_t m, const FeasibleSet& feasible) {
    std::size_t extra_vars = 0, extra_rows = 2;
    if (feasible.kind() == FeasibleSet::Kind::NonNegativePadding) {
        extra_vars = m * (m + 1) / 2;
        extra_rows += 4 * m;
    } else if (feasible.kind() == FeasibleSet::Kind::LinearSystem) {
        extra_rows += 2 * feasible.constraints().size();
    }
    std::size_t rows = 2 * n * m + n + extra_rows;
    std::size_t cols = n * m + m + 1 + extra_vars;
    return (rows + 2) * (cols + 2);
}

}  // namespace

std::pair<Vec, double> seb_linf_direct(const std::vector<Vec>& points) {
    check_points(points);
    const std::size_t d = points[0].size();
    Vec top = points[0], bottom = points[0];
    for (const Vec& p : points)
        for (std::size_t i = 0; i < d; ++i) {
            top[i] = std::max(top[i], p[i]);
            bottom[i] = std::min(bottom[i], p[i]);
        }
    Vec center(d);
    double radius = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        center[i] = 0.5 * (top[i] + bottom[i]);
        radius = std::max(radius, 0.5 * (top[i] - bottom[i]));
    }
    return {std::move(center), radius};
}

Vec embed_phi(std::span<const double> x) {
    const std::size_t m = x.size();
    if (m == 0) throw ValidationError("embed_phi: empty vector");
    if (m > kEmbedCapPhi)
        throw ValidationError("embed_phi: dimension above the 2^m cap");
    Vec out{0.0};
    out.reserve(std::size_t{1} << m);
    for (std::size_t i = 0; i < m; ++i) {
        Vec next(out.size() * 2);
        for (std::size_t k = 0; k < out.size(); ++k) {
            next[2 * k] = out[k] + x[i];
            next[2 * k + 1] = out[k] - x[i];
        }
        out = std::move(next);
    }
    return out;
}

EmbeddingBounds embedding_bounds(const std::vector<Vec>& points) {
    check_points(points);
    EmbeddingBounds b;
    b.top = embed_phi(points[0]);
    b.bottom = b.top;
    for (std::size_t k = 1; k < points.size(); ++k) {
        Vec e = embed_phi(points[k]);
        for (std::size_t j = 0; j < e.size(); ++j) {
            b.top[j] = std::max(b.top[j], e[j]);
            b.bottom[j] = std::min(b.bottom[j], e[j]);
        }
    }
    return b;
}

SebSolution seb_l1_embedding(const std::vector<Vec>& points, const FeasibleSet& feasible) {
    check_points(points);
    const std::size_t m = points[0].size();
    if (m > kEmbedCapLp)
        throw ValidationError("seb_l1_embedding: dimension above the 2^m LP cap");
    EmbeddingBounds bounds = embedding_bounds(points);
    const std::size_t cells = bounds.top.size();

    lp::Problem p;
    std::vector<int> x_vars(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::ostringstream name;
        name << "x" << i;
        x_vars[i] = p.add_variable(name.str(), 0.0);
    }
    int z = p.add_variable("z", 0.0);
    feasible.emit(p, x_vars);

    for (std::size_t b = 0; b < cells; ++b) {
        // (x Phi)_b with the first coordinate as the most significant bit.
        std::vector<lp::Term> plus{{z, 1.0}}, minus{{z, 1.0}};
        for (std::size_t i = 0; i < m; ++i) {
            bool neg = (b >> (m - 1 - i)) & 1u;
            double sign = neg ? -1.0 : 1.0;
            plus.push_back({x_vars[i], sign});
            minus.push_back({x_vars[i], -sign});
        }
        p.add_constraint(std::move(plus), lp::Relation::Ge, bounds.top[b]);
        p.add_constraint(std::move(minus), lp::Relation::Ge, -bounds.bottom[b]);
    }
    p.set_objective({{z, 1.0}});

    lp::Solution sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal)
        return failed_solution(SebMethod::EmbeddingLp, sol.status, sol.message);

    SebSolution out;
    out.method = SebMethod::EmbeddingLp;
    out.status = lp::Status::Optimal;
    Vec center(m);
    for (std::size_t i = 0; i < m; ++i)
        center[i] = sol.values[static_cast<std::size_t>(x_vars[i])];
    out.center = snap_to_simplex(std::move(center));
    Realized r = realized_radius(out.center, points);
    out.radius = r.radius;
    out.farthest_index = r.farthest;
    if (std::abs(r.radius - sol.objective) > 1e-6) {
        out.status = lp::Status::Failed;
        out.note = "realized radius drifted from the LP objective";
    }
    return out;
}

SebSolution seb_l1_exact(const std::vector<Vec>& points, const FeasibleSet& feasible,
                         const SebOptions& options) {
    check_points(points);
    switch (options.exact_strategy) {
        case SebOptions::ExactStrategy::DirectLp:
            return seb_exact_direct(points, feasible);
        case SebOptions::ExactStrategy::RowGeneration:
            return seb_exact_cuts(points, feasible);
        case SebOptions::ExactStrategy::Auto:
            break;
    }
    if (direct_tableau_estimate(points.size(), points[0].size(), feasible) <=
        options.direct_tableau_cap)
        return seb_exact_direct(points, feasible);
    return seb_exact_cuts(points, feasible);
}

std::pair<Vec, double> seb_l2_approx(const std::vector<Vec>& points, double epsilon) {
    check_points(points);
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw ValidationError("seb_l2_approx: epsilon must be in (0, 1]");
    const std::size_t m = points[0].size();
    Vec center = points[0];
    const std::size_t rounds =
        static_cast<std::size_t>(std::ceil(1.0 / (epsilon * epsilon)));
    for (std::size_t k = 1; k <= rounds; ++k) {
        std::size_t far = 0;
        double far_d2 = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double d2 = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                double diff = center[j] - points[i][j];
                d2 += diff * diff;
            }
            if (d2 > far_d2) {
                far_d2 = d2;
                far = i;
            }
        }
        double step = 1.0 / static_cast<double>(k + 1);
        for (std::size_t j = 0; j < m; ++j)
            center[j] += (points[far][j] - center[j]) * step;
    }
    Realized r = realized_radius(center, points);
    return {std::move(center), r.radius};
}

Vec project_to_feasible(const Vec& point, const FeasibleSet& feasible) {
    const std::size_t m = point.size();
    if (m == 0) throw ValidationError("project_to_feasible: empty point");

    lp::Problem p;
    std::vector<int> x_vars(m), d_vars(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::ostringstream xn, dn;
        xn << "x" << i;
        dn << "d" << i;
        x_vars[i] = p.add_variable(xn.str(), 0.0);
        d_vars[i] = p.add_variable(dn.str(), 0.0);
    }
    feasible.emit(p, x_vars);
    for (std::size_t i = 0; i < m; ++i) {
        p.add_constraint({{d_vars[i], 1.0}, {x_vars[i], -1.0}}, lp::Relation::Ge, -point[i]);
        p.add_constraint({{d_vars[i], 1.0}, {x_vars[i], 1.0}}, lp::Relation::Ge, point[i]);
    }
    std::vector<lp::Term> obj;
    for (int d : d_vars) obj.push_back({d, 1.0});
    p.set_objective(std::move(obj));

    lp::Solution sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal)
        throw ValidationError(std::string("project_to_feasible: solver ") +
                              lp::to_string(sol.status));
    Vec x(m);
    for (std::size_t i = 0; i < m; ++i)
        x[i] = sol.values[static_cast<std::size_t>(x_vars[i])];
    return snap_to_simplex(std::move(x));
}

SebSolution seb_for_channel(const Channel& channel, std::size_t s,
                            const FeasibleSet& feasible, SebMethod method,
                            double epsilon, const SebOptions& options) {
    std::vector<Vec> points = channel.rows_except(s);
    switch (method) {
        case SebMethod::ExactLp:
            return seb_l1_exact(points, feasible, options);
        case SebMethod::EmbeddingLp:
            return seb_l1_embedding(points, feasible);
        case SebMethod::Approx: {
            auto [center, radius] = seb_l2_approx(points, epsilon);
            SebSolution out;
            out.method = SebMethod::Approx;
            out.epsilon = epsilon;
            if (!feasible.contains(center)) {
                center = project_to_feasible(center, feasible);
                out.note = "projected onto the feasible set";
            }
            out.center = snap_to_simplex(std::move(center));
            Realized r = realized_radius(out.center, points);
            out.radius = r.radius;
            out.farthest_index = r.farthest;
            out.status = lp::Status::Optimal;
            return out;
        }
    }
    throw ValidationError("seb_for_channel: unknown method");
}

RowStrategy capacity_optimal_sdist(const Channel& channel, std::size_t s,
                                   const FeasibleSet& feasible, SebMethod method,
                                   double epsilon, const SebOptions& options) {
    SebSolution seb = seb_for_channel(channel, s, feasible, method, epsilon, options);
    RowStrategy out;
    out.method = MethodSpec{method == SebMethod::Approx ? MethodSpec::Kind::SebApprox
                                                        : MethodSpec::Kind::SebExact};
    out.method.epsilon = epsilon;
    out.diag.status = seb.status;
    if (seb.status != lp::Status::Optimal) {
        out.diag.objective = std::numeric_limits<double>::quiet_NaN();
        out.diag.note = seb.note;
        return out;
    }
    out.q = std::move(seb.center);
    out.diag.objective = 1.0 + 0.5 * seb.radius;  // s-distinguishing gain capacity
    out.diag.note = seb.note;
    if (method == SebMethod::EmbeddingLp) {
        if (!out.diag.note.empty()) out.diag.note += "; ";
        out.diag.note += "embedding route";
    }
    return out;
}

}  // namespace qifrow
